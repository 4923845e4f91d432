#include "rotlab/cli/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <thread>

#include "rotlab/circle.hpp"
#include "rotlab/error.hpp"
#include "rotlab/rational.hpp"
#include "rotlab/theorem.hpp"

namespace rotlab::cli {

using nlohmann::json;

namespace {

template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

json config_json(const RunConfig& c) {
  return json{{"seed", c.seed},
              {"window", c.window},
              {"N", c.N},
              {"k_max", c.k_max},
              {"n_iter_circle", c.n_iter_circle},
              {"tolerances",
               {{"sympl", c.tol.sympl},
                {"diff_mod1", c.tol.diff_mod1},
                {"sigma_residual", c.tol.sigma_residual},
                {"eigen_agreement", c.tol.eigen_agreement}}}};
}

SuiteResult assemble(const RunConfig& config, std::vector<json> cases,
                     std::chrono::steady_clock::time_point start) {
  Integer pass_count = 0;
  double max_diff = 0.0;
  Integer max_sigma = 0;
  for (const auto& c : cases) {
    if (c.at("pass").get<bool>()) ++pass_count;
    if (c.contains("diff_mod1")) max_diff = std::max(max_diff, c.at("diff_mod1").get<double>());
    if (c.contains("sigma_max_abs")) {
      max_sigma = std::max(max_sigma, c.at("sigma_max_abs").get<Integer>());
    }
  }
  const auto n = static_cast<Integer>(cases.size());
  SuiteResult result;
  result.all_pass = pass_count == n;
  result.report = json{
      {"config", config_json(config)},
      {"cases", std::move(cases)},
      {"summary",
       {{"pass_count", pass_count},
        {"fail_count", n - pass_count},
        {"max_diff_mod1", max_diff},
        {"max_sigma_abs", max_sigma}}},
      {"timing",
       {{"wall_time_s",
         std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}}}};
  return result;
}

json ghys_case(const RunConfig& config, const std::string& spec, const circle::CircleLift& lift) {
  json out{{"spec", spec}};
  try {
    circle::GhysOptions opts;
    opts.window = config.window;
    opts.N = config.N;
    opts.n_iter = config.n_iter_circle;
    const auto rep = circle::ghys_check(circle::CircleCoverElement(lift), opts);
    out["class"] = rep.cls.value;
    out["class_error"] = rep.cls.error_radius;
    out["rho"] = rep.rho.value;
    out["rho_error"] = rep.rho.error_radius;
    out["diff_mod1"] = rep.difference_mod1;
    out["chi_min"] = rep.chi_min;
    out["chi_max"] = rep.chi_max;
    out["chi_max_abs"] = rep.chi_max_abs;
    out["rigid_mismatches"] = rep.rigid_mismatches ? json(*rep.rigid_mismatches) : json(nullptr);
    const bool chi_ok = rep.chi_min >= 0 && rep.chi_max <= 1;
    const bool rigid_ok = !rep.rigid_mismatches || *rep.rigid_mismatches == 0;
    out["pass"] = rep.difference_mod1 <= config.tol.diff_mod1 && chi_ok && rigid_ok;
  } catch (const Error& e) {
    out["error"] = e.what();
    out["pass"] = false;
  }
  return out;
}

json sp_case(const RunConfig& config, const MatrixCase& mc) {
  json out{{"source", mc.source},
           {"n", mc.matrix.rows() / 2},
           {"matrix_hash", sp::matrix_hash(mc.matrix)},
           {"k_max", config.k_max},
           {"window", config.window},
           {"N", config.N}};
  try {
    const sp::SymplecticMatrix g(mc.matrix, config.tol.sympl);
    sp::TheoremOptions opts;
    opts.window = config.window;
    opts.N = config.N;
    opts.k_max = config.k_max;
    const auto rep = sp::main_theorem_check(g, opts);
    out["rho"] = rep.rho.value;
    out["rho_error"] = rep.rho.error_radius;
    out["class"] = rep.cls.value;
    out["class_error"] = rep.cls.error_radius;
    out["diff_mod1"] = rep.difference_mod1;
    out["sigma_max_abs"] = rep.sigma_max_abs;
    out["r_hat"] = rep.r_hat;
    out["cocycle_ok"] = rep.cocycle_ok;
    out["flagged"] = rep.flagged;
    out["unexplained"] = rep.unexplained;
    out["defect"] = rep.defect;
    out["bounded"] = rep.bounded;
    out["section_near_boundary"] = rep.section_near_boundary;

    const auto sigma = sp::sigma_sp(g, g, config.k_max);
    out["sigma_gg"] = {{"value", sigma.value}, {"residual", sigma.residual}};

    bool eigen_ok = true;
    if (g.half_dim() <= 4) {
      try {
        const auto eig = sp::eigenvalue_rotation_number(g);
        const double d = circle_distance(eig.value, rep.rho.value);
        eigen_ok = d <= config.tol.eigen_agreement + eig.error_radius + rep.rho.error_radius;
        out["eigen"] = {{"rho", eig.value}, {"rho_error", eig.error_radius}, {"diff", d},
                        {"agrees", eigen_ok}};
      } catch (const NumericalError& e) {
        out["eigen"] = {{"skipped", e.what()}};
      }
    } else {
      out["eigen"] = {{"skipped", "dimension above 8"}};
    }
    out["pass"] = rep.difference_mod1 <= config.tol.diff_mod1 && rep.cocycle_ok &&
                  rep.unexplained == 0 && rep.bounded && eigen_ok &&
                  sigma.residual <= config.tol.sigma_residual;
  } catch (const Error& e) {
    out["error"] = e.what();
    out["pass"] = false;
  }
  return out;
}

template <class Estimator>
std::vector<ConvergenceRow> converge_rows(Integer k_max, Estimator estimate) {
  if (k_max < 1) throw InvalidArgument("converge: k_max must be >= 1");
  std::vector<ConvergenceRow> rows;
  ConvergenceRow best;
  for (Integer k = 1; k <= k_max; k *= 2) {
    const cohomology::Estimate e = estimate(k);
    ConvergenceRow row{k, e.value, e.error_radius, e.value, e.error_radius};
    if (!rows.empty() && best.error_bound < e.error_radius) {
      row.estimate = best.estimate;
      row.error_bound = best.error_bound;
    }
    best = row;
    rows.push_back(row);
    if (k > k_max / 2) break;
  }
  return rows;
}

}  // namespace

void validate(const RunConfig& c) {
  if (c.window < 1) throw InvalidArgument("window must be positive");
  if (c.N < 1) throw InvalidArgument("N must be positive");
  if (c.k_max < 1) throw InvalidArgument("k_max must be positive");
  if (c.n_iter_circle < 1) throw InvalidArgument("n_iter_circle must be positive");
  if (!(c.tol.sympl > 0) || !(c.tol.diff_mod1 > 0) || !(c.tol.sigma_residual > 0) ||
      !(c.tol.eigen_agreement > 0)) {
    throw InvalidArgument("tolerances must be positive");
  }
}

SuiteResult run_ghys(const RunConfig& config, const std::vector<std::string>& specs) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  std::vector<circle::CircleLift> lifts;
  lifts.reserve(specs.size());
  for (const auto& s : specs) lifts.push_back(circle::parse_lift_spec(s));
  std::vector<json> cases(specs.size());
  parallel_for(specs.size(), config.threads,
               [&](std::size_t i) { cases[i] = ghys_case(config, specs[i], lifts[i]); });
  return assemble(config, std::move(cases), start);
}

SuiteResult run_symplectic(const RunConfig& config, const std::vector<MatrixCase>& cases) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  std::vector<json> out(cases.size());
  parallel_for(cases.size(), config.threads,
               [&](std::size_t i) { out[i] = sp_case(config, cases[i]); });
  return assemble(config, std::move(out), start);
}

std::vector<MatrixCase> random_cases(const RunConfig& config, int n, int count) {
  if (n < 1 || count < 1) throw InvalidArgument("--random needs n >= 1 and count >= 1");
  std::vector<MatrixCase> out;
  for (int i = 0; i < count; ++i) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(i);
    out.push_back({"random:" + std::to_string(seed), sp::random_symplectic(n, seed, 0.5).matrix()});
  }
  return out;
}

std::vector<MatrixCase> file_cases(const RunConfig& config, const std::vector<std::string>& files) {
  std::vector<MatrixCase> out;
  for (const auto& f : files) {
    linalg::Matrix m = sp::read_matrix_file(f);
    if (m.rows() != m.cols() || m.rows() % 2 != 0 || !sp::check_symplectic(m, config.tol.sympl)) {
      throw InvalidArgument("not symplectic: " + f);
    }
    out.push_back({f, std::move(m)});
  }
  return out;
}

std::vector<ConvergenceRow> converge_circle(const std::string& spec, Integer k_max) {
  const circle::CircleCoverElement f(circle::parse_lift_spec(spec));
  return converge_rows(k_max, [&](Integer k) { return circle::translation_number_circle(f, k); });
}

std::vector<ConvergenceRow> converge_symplectic(const linalg::Matrix& g, Integer k_max) {
  sp::PowerSequence powers(sp::canonical_path(sp::SymplecticMatrix(g)));
  return converge_rows(k_max, [&](Integer k) {
    const auto e = sp::translation_number_sp(powers, 1, k);
    return cohomology::Estimate{e.value, e.error_radius};
  });
}

void write_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
  out << "k,estimate,error_bound,raw_estimate,raw_bound\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%lld,%.15g,%.15g,%.15g,%.15g\n", static_cast<long long>(r.k),
                  r.estimate, r.error_bound, r.raw_estimate, r.raw_bound);
    out << buf;
  }
}

std::string deterministic_dump(const json& report) {
  json copy = report;
  copy.erase("timing");
  return copy.dump(2);
}

}  // namespace rotlab::cli
