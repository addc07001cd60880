// covdist: distances between covariance matrices and spectral measures.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "covdist/commands.hpp"
#include "covdist/errors.hpp"

namespace {

using namespace covdist::cli;

void add_solver_flags(CLI::App* cmd, covdist::SolverOptions& opts) {
  cmd->add_option("--tol", opts.tol, "ADMM stopping tolerance (relative)")->capture_default_str();
  cmd->add_option("--max-iters", opts.max_iters, "ADMM iteration cap")->capture_default_str();
}

int emit(const CommandResult& res, const std::string& out_path) {
  if (!res.report.is_null()) {
    if (out_path.empty()) {
      std::cout << dump(res.report);
    } else {
      std::ofstream out(out_path);
      if (!out) {
        std::cerr << "covdist: cannot write " << out_path << '\n';
        return kInvalidInput;
      }
      out << dump(res.report);
    }
  }
  if (!res.error.empty()) std::cerr << "covdist: " << res.error << '\n';
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace-minimization distances between covariances and spectra"};
  app.require_subcommand(1);
  std::string out_path;

  DeltaArgs delta;
  std::string a_path, b_path;
  auto* cmd_delta = app.add_subcommand("delta", "distance between two covariance matrices (CSV)");
  cmd_delta->add_option("matrix_a", a_path)->required();
  cmd_delta->add_option("matrix_b", b_path)->required();
  cmd_delta->add_flag("--toeplitz", delta.toeplitz, "constrain the dominating matrix to be Toeplitz");
  cmd_delta->add_option("--out", out_path, "write the report here instead of stdout");
  add_solver_flags(cmd_delta, delta.solver);

  ApproxArgs approx;
  std::string approx_path;
  auto* cmd_approx = app.add_subcommand("approx", "structured approximant of a covariance matrix");
  cmd_approx->add_option("matrix", approx_path)->required();
  cmd_approx->add_option("--structure", approx.structure, "toeplitz | ma:q | ls")->capture_default_str();
  cmd_approx->add_option("--metric", approx.metric, "delta | vn")->capture_default_str();
  cmd_approx->add_flag("--match-trace", approx.match_trace, "require trace(R) == trace(A)");
  cmd_approx->add_option("--out", out_path);
  add_solver_flags(cmd_approx, approx.solver);

  SpectralArgs spectral;
  std::string f_path, g_path;
  int cov_n = 0;
  auto* cmd_spectral = app.add_subcommand("spectral", "L1 distance, ratios and covariances of spectral measures");
  cmd_spectral->add_option("f_json", f_path)->required();
  cmd_spectral->add_option("g_json", g_path);
  cmd_spectral->add_flag("--l1", spectral.l1);
  cmd_spectral->add_flag("--ratios", spectral.ratios);
  auto* cov_opt = cmd_spectral->add_option("--cov", cov_n, "emit r_0..r_{n-1}")->check(CLI::PositiveNumber);
  cmd_spectral->add_option("--out", out_path);

  ConvergenceArgs conv;
  std::string conv_f, conv_g, n_list = "4,8,16,32,48";
  auto* cmd_conv = app.add_subcommand("convergence", "Toeplitz distance versus n against the L1 limit");
  cmd_conv->add_option("f_json", conv_f)->required();
  cmd_conv->add_option("g_json", conv_g)->required();
  cmd_conv->add_option("--n", n_list, "comma-separated sizes")->capture_default_str();
  cmd_conv->add_option("--out", out_path);
  add_solver_flags(cmd_conv, conv.solver);

  SimulateArgs sim;
  std::string coeffs = "1", input_path;
  auto* cmd_sim = app.add_subcommand("simulate", "simulate an MA process and its sample covariance");
  cmd_sim->add_option("--coeffs", coeffs, "b0,b1,...")->capture_default_str();
  cmd_sim->add_option("--length", sim.length)->capture_default_str();
  cmd_sim->add_option("--seed", sim.seed)->capture_default_str();
  cmd_sim->add_option("--dim", sim.dim)->capture_default_str();
  cmd_sim->add_option("--input", input_path, "read the series from a file instead");
  cmd_sim->add_option("--out", out_path);

  ReproduceArgs repro;
  std::string repro_dir;
  auto* cmd_repro = app.add_subcommand("reproduce", "re-run the reference examples and compare");
  cmd_repro->alias("paper");
  cmd_repro->add_option("--out", repro_dir, "directory for one JSON per check");
  cmd_repro->add_option("--tol-scale", repro.tol_scale, "multiply every tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInvalidInput;
  }

  try {
    if (*cmd_delta) {
      delta.a = a_path;
      delta.b = b_path;
      return emit(run_delta(delta), out_path);
    }
    if (*cmd_approx) {
      approx.matrix = approx_path;
      return emit(run_approx(approx), out_path);
    }
    if (*cmd_spectral) {
      spectral.f = f_path;
      if (!g_path.empty()) spectral.g = g_path;
      if (*cov_opt) spectral.cov = cov_n;
      return emit(run_spectral(spectral), out_path);
    }
    if (*cmd_conv) {
      conv.f = conv_f;
      conv.g = conv_g;
      conv.n_list = parse_int_list(n_list);
      return emit(run_convergence(conv), out_path);
    }
    if (*cmd_sim) {
      sim.coeffs = parse_double_list(coeffs);
      if (!input_path.empty()) sim.input = input_path;
      return emit(run_simulate(sim), out_path);
    }
    if (*cmd_repro) {
      if (!repro_dir.empty()) repro.out_dir = repro_dir;
      const auto res = run_reproduce(repro);
      std::cout << dump(res.report);
      if (!res.error.empty()) std::cerr << "covdist: " << res.error << '\n';
      return res.exit_code;
    }
  } catch (const covdist::InputError& e) {
    std::cerr << "covdist: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}
