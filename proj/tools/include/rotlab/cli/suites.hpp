#pragma once

// Verification suites behind the `rotlab` command: run cases concurrently,
// assemble deterministic JSON reports, and write convergence tables.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "rotlab/cohomology.hpp"
#include "rotlab/linalg.hpp"

namespace rotlab::cli {

using cohomology::Integer;

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitInput = 2 };

struct Tolerances {
  double sympl = 1e-9;
  double diff_mod1 = 1e-3;
  double sigma_residual = 0.1;
  double eigen_agreement = 1e-6;  // added to the combined error radii
};

struct RunConfig {
  std::uint64_t seed = 0;
  Integer window = cohomology::kDefaultCocycleWindow;
  Integer N = cohomology::kDefaultExtractionN;
  Integer k_max = 64;
  Integer n_iter_circle = 100'000;
  Tolerances tol;
  std::string output_dir = ".";
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Throws InvalidArgument naming the offending field.
void validate(const RunConfig& config);

struct MatrixCase {
  std::string source;  // file name, or "random:<seed>"
  linalg::Matrix matrix;
};

struct SuiteResult {
  nlohmann::json report;  // {"cases", "config", "summary", "timing"}
  bool all_pass = false;
};

/// Lift specs are parsed up front; a malformed one throws InvalidArgument.
SuiteResult run_ghys(const RunConfig& config, const std::vector<std::string>& specs);

/// Cases must already be symplectic at config.tol.sympl.
SuiteResult run_symplectic(const RunConfig& config, const std::vector<MatrixCase>& cases);

/// n x n random cases with seeds config.seed + index.
std::vector<MatrixCase> random_cases(const RunConfig& config, int n, int count);

/// Reads and checks matrix files; throws InvalidArgument("not symplectic: <file>").
std::vector<MatrixCase> file_cases(const RunConfig& config, const std::vector<std::string>& files);

struct ConvergenceRow {
  Integer k = 0;
  double estimate = 0.0;     // estimate with the smallest bound so far
  double error_bound = 0.0;  // nonincreasing in k
  double raw_estimate = 0.0;
  double raw_bound = 0.0;
};

/// Rows for k = 1, 2, 4, ... <= k_max.
std::vector<ConvergenceRow> converge_circle(const std::string& spec, Integer k_max);
std::vector<ConvergenceRow> converge_symplectic(const linalg::Matrix& g, Integer k_max);
void write_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);

/// The report without its "timing" member, serialized.
std::string deterministic_dump(const nlohmann::json& report);

/// Entry point of the executable; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace rotlab::cli
