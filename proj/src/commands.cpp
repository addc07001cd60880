#include "covdist/commands.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "covdist/approx.hpp"
#include "covdist/io.hpp"
#include "covdist/metrics.hpp"
#include "covdist/reproduce.hpp"
#include "covdist/spectra.hpp"

namespace covdist::cli {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

template <typename Body>
CommandResult guarded(const std::string& command, Body&& body) {
  const auto start = Clock::now();
  CommandResult res;
  try {
    res = body();
  } catch (const InputError& e) {
    return {kInvalidInput, json(), command + ": " + e.what()};
  } catch (const DomainError& e) {
    return {kNotPsd, json(), command + ": " + e.what()};
  } catch (const std::exception& e) {
    return {kInvalidInput, json(), command + ": " + e.what()};
  }
  if (!res.report.is_null()) {
    res.report["command"] = command;
    res.report["wall_time"] = std::chrono::duration<double>(Clock::now() - start).count();
  }
  return res;
}

json solver_json(SolveStatus status, int iterations, double primal, double dual, const SolverOptions& opts) {
  return {{"status", to_string(status)},
          {"iterations", iterations},
          {"primal_residual", io::round12(primal)},
          {"dual_residual", io::round12(dual)},
          {"tol", opts.tol},
          {"max_iters", opts.max_iters}};
}

int status_exit(SolveStatus status) { return status == SolveStatus::Converged ? kOk : kNotConverged; }

}  // namespace

std::string dump(const json& report) { return report.dump(2) + "\n"; }

StructureSpec parse_structure(const std::string& text) {
  if (text == "toeplitz") return {StructureSpec::Kind::Toeplitz, 0};
  if (text == "ls") return {StructureSpec::Kind::LeastSquares, 0};
  if (text.rfind("ma:", 0) == 0) {
    const std::string digits = text.substr(3);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw InputError("invalid structure '" + text + "'");
    }
    return {StructureSpec::Kind::Ma, std::stoi(digits)};
  }
  throw InputError("invalid structure '" + text + "' (expected toeplitz, ls or ma:q)");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (double v : io::parse_series(text)) {
    if (v != std::floor(v) || v < 1) throw InputError("expected positive integers in '" + text + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) { return io::parse_series(text); }

CommandResult run_delta(const DeltaArgs& args) {
  return guarded("delta", [&]() -> CommandResult {
    const SymMatrixd a = io::read_symmetric_csv(args.a);
    const SymMatrixd b = io::read_symmetric_csv(args.b);
    const auto structure = args.toeplitz ? StructureTag::toeplitz() : StructureTag::full();
    const DeltaReport rep = delta(a, b, structure, args.solver);
    json report;
    report["inputs"] = {{args.a.string(), io::file_sha256(args.a)}, {args.b.string(), io::file_sha256(args.b)}};
    report["result"] = {{"structure", to_string(structure)},
                        {"tau", io::round12(rep.tau)},
                        {"delta", io::round12(rep.delta)},
                        {"m_star", io::matrix_json(rep.m_star)},
                        {"q_a", io::matrix_json(rep.q_a)},
                        {"q_b", io::matrix_json(rep.q_b)}};
    report["solver"] = solver_json(rep.status, rep.iterations, rep.primal_residual, rep.dual_residual, args.solver);
    return {status_exit(rep.status), report, rep.converged() ? "" : "delta: solver did not converge"};
  });
}

CommandResult run_approx(const ApproxArgs& args) {
  return guarded("approx", [&]() -> CommandResult {
    const StructureSpec spec = parse_structure(args.structure);
    if (args.metric != "delta" && args.metric != "vn") {
      throw InputError("invalid metric '" + args.metric + "' (expected delta or vn)");
    }
    if (args.metric == "vn" && spec.kind != StructureSpec::Kind::Toeplitz) {
      throw InputError("--metric vn is only available with --structure toeplitz");
    }
    const SymMatrixd a = io::read_symmetric_csv(args.matrix);

    ApproxResult res;
    DeltaApproxOptions dopts;
    dopts.match_trace = args.match_trace;
    dopts.solver = args.solver;
    switch (spec.kind) {
      case StructureSpec::Kind::LeastSquares:
        res = nearest_toeplitz_ls(a);
        break;
      case StructureSpec::Kind::Toeplitz:
        res = args.metric == "vn" ? vn_nearest_toeplitz(a) : nearest_toeplitz_delta(a, dopts);
        break;
      case StructureSpec::Kind::Ma:
        res = nearest_ma_delta(a, spec.q, dopts);
        break;
    }

    json result = {{"structure", args.structure},
                   {"metric", spec.kind == StructureSpec::Kind::LeastSquares ? "frobenius" : args.metric},
                   {"match_trace", args.match_trace},
                   {"approximant", io::matrix_json(res.r)},
                   {"distance", io::round12(res.distance)},
                   {"min_eig", io::round12(res.diagnostics.min_eig)}};
    if (res.certificate) result["gram_certificate"] = io::matrix_json(res.certificate->gram);
    if (!res.diagnostics.note.empty()) result["note"] = res.diagnostics.note;

    json report;
    report["inputs"] = {{args.matrix.string(), io::file_sha256(args.matrix)}};
    report["result"] = result;
    report["solver"] = solver_json(res.diagnostics.status, res.diagnostics.iterations,
                                   res.diagnostics.primal_residual, res.diagnostics.dual_residual, args.solver);
    if (args.metric == "vn") report["solver"]["gradient_norm"] = io::round12(res.diagnostics.gradient_norm);
    return {status_exit(res.diagnostics.status), report,
            res.diagnostics.status == SolveStatus::Converged ? "" : "approx: solver did not converge"};
  });
}

CommandResult run_spectral(const SpectralArgs& args) {
  return guarded("spectral", [&]() -> CommandResult {
    if (!args.l1 && !args.ratios && !args.cov) throw InputError("choose at least one of --l1, --ratios, --cov");
    if ((args.l1 || args.ratios) && !args.g) throw InputError("--l1 and --ratios need two measures");
    const SpectralMeasure f = io::read_spectral_json(args.f);
    std::optional<SpectralMeasure> g;
    json inputs = {{args.f.string(), io::file_sha256(args.f)}};
    if (args.g) {
      g = io::read_spectral_json(*args.g);
      inputs[args.g->string()] = io::file_sha256(*args.g);
    }
    json result = json::object();
    if (args.l1) result["l1"] = io::round12(l1_distance(f, *g));
    if (args.ratios) {
      const auto r = normalized_ratios(f, *g);
      result["ratio_total"] = io::round12(r.total);
      result["ratio_pointwise"] = io::round12(r.pointwise);
    }
    if (args.cov) {
      result["cov_f"] = io::vector_json(cov_sequence(f, *args.cov).r);
      if (g) result["cov_g"] = io::vector_json(cov_sequence(*g, *args.cov).r);
    }
    return {kOk, {{"inputs", inputs}, {"result", result}}, ""};
  });
}

CommandResult run_convergence(const ConvergenceArgs& args) {
  return guarded("convergence", [&]() -> CommandResult {
    const SpectralMeasure f = io::read_spectral_json(args.f);
    const SpectralMeasure g = io::read_spectral_json(args.g);
    const auto rows = convergence_experiment(f, g, args.n_list, args.solver);
    json table = json::array();
    for (const auto& r : rows) {
      json row = {{"n", r.n},
                  {"delta_t", io::round12(r.delta_t)},
                  {"l1", io::round12(r.l1)},
                  {"gap", io::round12(r.l1 - r.delta_t)},
                  {"status", to_string(r.status)},
                  {"iterations", r.iterations}};
      if (r.error) row["error"] = *r.error;
      table.push_back(row);
    }
    json report;
    report["inputs"] = {{args.f.string(), io::file_sha256(args.f)}, {args.g.string(), io::file_sha256(args.g)}};
    report["result"] = {{"rows", table}, {"monotone", convergence_is_monotone(rows)}};
    report["solver"] = {{"tol", args.solver.tol}, {"max_iters", args.solver.max_iters}};
    return {kOk, report, ""};
  });
}

CommandResult run_simulate(const SimulateArgs& args) {
  return guarded("simulate", [&]() -> CommandResult {
    TimeSeries y;
    json inputs = json::object();
    if (args.input) {
      y.samples = io::read_series(*args.input);
      inputs[args.input->string()] = io::file_sha256(*args.input);
    } else {
      y = simulate_ma({args.coeffs}, args.length, args.seed);
    }
    if (static_cast<int>(y.samples.size()) < args.dim) {
      throw InputError("series length must be at least --dim");
    }
    const SymMatrixd cov = sample_covariance(y, args.dim);
    json series = json::array();
    for (double v : y.samples) series.push_back(io::round12(v));
    json report;
    report["inputs"] = inputs;
    report["result"] = {{"coeffs", args.input ? json(nullptr) : json(args.coeffs)},
                        {"seed", args.input ? json(nullptr) : json(args.seed)},
                        {"series", series},
                        {"sample_covariance", io::matrix_json(cov)},
                        {"is_toeplitz", is_toeplitz(cov, 1e-8)},
                        {"min_eig", io::round12(min_eig(cov))}};
    return {kOk, report, ""};
  });
}

CommandResult run_reproduce(const ReproduceArgs& args) {
  return guarded("reproduce", [&]() -> CommandResult {
    const auto checks = run_reference_checks(args.tol_scale);
    if (args.out_dir) {
      std::filesystem::create_directories(*args.out_dir);
      for (const auto& c : checks) {
        std::ofstream out(*args.out_dir / (c.name + ".json"));
        if (!out) throw InputError("cannot write to " + args.out_dir->string());
        out << dump(to_json(c));
      }
    }
    json list = json::array();
    int failed = 0;
    std::ostringstream failures;
    for (const auto& c : checks) {
      list.push_back(to_json(c));
      if (!c.passed) {
        ++failed;
        failures << "\n  FAIL " << c.name << ": expected " << c.expected.dump() << ", got " << c.actual.dump();
      }
    }
    json report = {{"inputs", json::object()},
                   {"result",
                    {{"checks", list},
                     {"passed", static_cast<int>(checks.size()) - failed},
                     {"failed", failed},
                     {"tol_scale", args.tol_scale}}}};
    return {failed == 0 ? kOk : kCheckFailed, report,
            failed == 0 ? "" : "reproduce: " + std::to_string(failed) + " check(s) failed" + failures.str()};
  });
}

}  // namespace covdist::cli
