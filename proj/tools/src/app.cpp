#include <filesystem>
#include <fstream>
#include <ostream>
#include <regex>

#include <CLI11.hpp>

#include "rotlab/circle.hpp"
#include "rotlab/cli/suites.hpp"
#include "rotlab/error.hpp"
#include "rotlab/symplectic.hpp"

namespace rotlab::cli {

namespace {

void write_file(const std::string& dir, const std::string& name, const std::string& text) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot write " + path.string());
  f << text;
}

void print_cases(std::ostream& out, const nlohmann::json& report, const char* key) {
  for (const auto& c : report.at("cases")) {
    out << (c.at("pass").get<bool>() ? "PASS " : "FAIL ") << c.at(key).get<std::string>();
    if (c.contains("error")) {
      out << "  error: " << c.at("error").get<std::string>();
    } else {
      out << "  class=" << c.at("class").get<double>() << " rho=" << c.at("rho").get<double>()
          << " diff=" << c.at("diff_mod1").get<double>();
    }
    out << '\n';
  }
  const auto& s = report.at("summary");
  out << s.at("pass_count").get<Integer>() << " passed, " << s.at("fail_count").get<Integer>()
      << " failed\n";
}

std::pair<int, int> parse_random(const std::string& text) {
  static const std::regex re(R"(n=(\d+),count=(\d+))");
  std::smatch m;
  if (!std::regex_match(text, m, re)) {
    throw InvalidArgument("--random expects n=<N>,count=<C>, got '" + text + "'");
  }
  return {std::stoi(m[1]), std::stoi(m[2])};
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotation numbers and bounded Euler classes: verification suites"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI config file; command-line flags override it");

  RunConfig config;
  app.add_option("--seed", config.seed, "Base seed; case i uses seed + i");
  app.add_option("--tol-diff", config.tol.diff_mod1, "Pass tolerance on the class/rho difference");
  app.add_option("--tol-sympl", config.tol.sympl, "Symplecticity tolerance for input matrices");
  app.add_option("--tol-sigma", config.tol.sigma_residual, "Rounding tolerance for sigma");
  app.add_option("--out", config.output_dir, "Output directory for reports");
  app.add_option("--window", config.window, "Cocycle check window");
  app.add_option("--N", config.N, "Extraction length");
  app.add_option("--kmax", config.k_max, "Homogenization depth");
  app.add_option("--n-iter", config.n_iter_circle, "Iterations for the circle rotation number");
  app.add_option("--threads", config.threads, "Worker threads (0: all cores)");

  std::vector<std::string> ghys_specs;
  auto* ghys = app.add_subcommand("ghys", "Circle suite: Euler class vs Poincare rotation number");
  ghys->add_option("--spec", ghys_specs, "rigid:<a> | arnold:<w>:<K> | pl:<file>")->required();
  ghys->fallthrough();

  std::string random_spec;
  std::vector<std::string> matrix_files;
  auto* spc = app.add_subcommand("sp", "Symplectic suite: Euler class vs rotation number");
  auto* rnd = spc->add_option("--random", random_spec, "n=<N>,count=<C>");
  auto* mat = spc->add_option("--matrix", matrix_files, "Matrix files (one row per line)");
  rnd->excludes(mat);
  spc->require_option(1);
  spc->fallthrough();

  std::string conv_spec;
  std::string conv_matrix;
  auto* conv = app.add_subcommand("converge", "Convergence table of the translation number");
  auto* cs = conv->add_option("--spec", conv_spec, "Lift spec");
  auto* cm = conv->add_option("--matrix", conv_matrix, "Matrix file");
  cs->excludes(cm);
  conv->require_option(1);
  conv->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  try {
    validate(config);
    if (ghys->parsed()) {
      const auto result = run_ghys(config, ghys_specs);
      write_file(config.output_dir, "ghys_report.json", result.report.dump(2) + "\n");
      print_cases(out, result.report, "spec");
      return result.all_pass ? kExitPass : kExitFail;
    }
    if (spc->parsed()) {
      std::vector<MatrixCase> cases;
      if (!random_spec.empty()) {
        const auto [n, count] = parse_random(random_spec);
        cases = random_cases(config, n, count);
      } else {
        cases = file_cases(config, matrix_files);
      }
      const auto result = run_symplectic(config, cases);
      write_file(config.output_dir, "sp_report.json", result.report.dump(2) + "\n");
      print_cases(out, result.report, "source");
      return result.all_pass ? kExitPass : kExitFail;
    }
    std::vector<ConvergenceRow> rows;
    if (!conv_spec.empty()) {
      rows = converge_circle(conv_spec, config.k_max);
    } else {
      const auto m = sp::read_matrix_file(conv_matrix);
      if (!sp::check_symplectic(m, config.tol.sympl)) {
        throw InvalidArgument("not symplectic: " + conv_matrix);
      }
      rows = converge_symplectic(m, config.k_max);
    }
    std::ostringstream csv;
    write_csv(csv, rows);
    write_file(config.output_dir, "converge.csv", csv.str());
    out << csv.str();
    return kExitPass;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  }
}

}  // namespace rotlab::cli
