#pragma once

// Subcommand implementations behind the covdist executable. Each returns the
// JSON run report and the process exit code instead of touching stdout, so
// the same code paths are exercised by the tests.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "covdist/conesolver.hpp"

namespace covdist::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInvalidInput = 2,
  kNotConverged = 3,
  kNotPsd = 4,
};

struct CommandResult {
  int exit_code = kOk;
  nlohmann::json report;  // empty on hard errors
  std::string error;      // message for stderr
};

struct DeltaArgs {
  std::filesystem::path a;
  std::filesystem::path b;
  bool toeplitz = false;
  SolverOptions solver{};
};

struct ApproxArgs {
  std::filesystem::path matrix;
  std::string structure = "toeplitz";  // toeplitz | ma:q | ls
  std::string metric = "delta";        // delta | vn
  bool match_trace = false;
  SolverOptions solver{};
};

struct SpectralArgs {
  std::filesystem::path f;
  std::optional<std::filesystem::path> g;
  bool l1 = false;
  bool ratios = false;
  std::optional<int> cov;
};

struct ConvergenceArgs {
  std::filesystem::path f;
  std::filesystem::path g;
  std::vector<int> n_list{4, 8, 16, 32, 48};
  SolverOptions solver{};
};

struct SimulateArgs {
  std::vector<double> coeffs{1.0};
  int length = 101;
  std::uint64_t seed = 0;
  int dim = 5;
  std::optional<std::filesystem::path> input;  // use this series instead of simulating
};

struct ReproduceArgs {
  std::optional<std::filesystem::path> out_dir;
  double tol_scale = 1.0;  // multiplies every check tolerance
};

CommandResult run_delta(const DeltaArgs& args);
CommandResult run_approx(const ApproxArgs& args);
CommandResult run_spectral(const SpectralArgs& args);
CommandResult run_convergence(const ConvergenceArgs& args);
CommandResult run_simulate(const SimulateArgs& args);
CommandResult run_reproduce(const ReproduceArgs& args);

/// Parses "toeplitz", "ls" or "ma:q"; throws InputError otherwise.
struct StructureSpec {
  enum class Kind { Toeplitz, Ma, LeastSquares } kind;
  int q = 0;
};
StructureSpec parse_structure(const std::string& text);

/// Parses "4,8,16".
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

/// Serializes a report (two-space indent, trailing newline).
std::string dump(const nlohmann::json& report);

}  // namespace covdist::cli
