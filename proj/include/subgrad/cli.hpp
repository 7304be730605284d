// Command implementations behind the CLI front end. Each returns a process
// exit code: 0 success, 1 usage/configuration/runtime error, 2 completed with
// bound violations.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "subgrad/analysis.hpp"
#include "subgrad/descent.hpp"
#include "subgrad/harness.hpp"
#include "subgrad/io.hpp"
#include "subgrad/problems.hpp"

namespace subgrad {

inline Point parse_point(const std::string& csv) {
  Point p;
  std::stringstream ss(csv);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell.empty()) throw invalid_input_error("bad --x0: empty coordinate in '" + csv + "'");
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != cell.size()) throw invalid_input_error("bad --x0: cannot parse '" + cell + "'");
    p.push_back(v);
  }
  if (p.empty()) throw invalid_input_error("bad --x0: no coordinates");
  return p;
}

namespace detail {

inline std::optional<ProblemInstance> lookup_or_complain(const std::string& name) {
  std::optional<ProblemInstance> p = find_problem(name);
  if (!p) {
    std::cerr << "unknown problem '" << name << "'; registered problems:";
    for (const std::string& n : registered_names()) std::cerr << " " << n;
    std::cerr << "\n";
  }
  return p;
}

inline void require_emitted(const std::vector<std::filesystem::path>& files) {
  for (const auto& f : files) {
    std::error_code ec;
    const auto size = std::filesystem::file_size(f, ec);
    if (ec || size == 0) throw numeric_failure_error("emitted file missing or empty: " + f.string());
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// run

struct RunOptions {
  std::string problem;
  std::optional<std::string> x0;       // comma-separated decimals
  std::string schedule = "geometric-exact";
  std::string r = "auto";              // "auto" or a decimal
  double beta = 0.5;
  std::optional<double> R;             // default: mid-band 0.5 * dist0
  std::optional<double> eta;
  std::size_t max_iters = 1000;
  double grad_tol = 1e-12;
  std::string out = ".";
};

inline int cmd_run(const RunOptions& opt) {
  try {
    const std::optional<ProblemInstance> maybe = detail::lookup_or_complain(opt.problem);
    if (!maybe) return 1;
    const ProblemInstance& problem = *maybe;
    const Point x0 = opt.x0 ? parse_point(*opt.x0) : problem.default_x0;
    if (x0.size() != problem.dim) {
      std::cerr << "--x0 has dimension " << x0.size() << " but " << problem.name << " has dimension "
                << problem.dim << "\n";
      return 1;
    }
    const double dist0 = dist_to_minimizers(x0, problem.minimizers);
    const double mu = problem.certified ? problem.certified->mu_bar : 1.0;

    auto resolve_r = [&](double cap) {
      if (opt.r == "auto") return cap;
      std::size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(opt.r, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != opt.r.size()) throw configuration_error("bad --r: '" + opt.r + "'");
      return v;
    };

    DescentConfig cfg;
    cfg.max_iters = opt.max_iters;
    cfg.grad_tol = opt.grad_tol;
    if (opt.schedule == "geometric-exact") {
      cfg.schedule = GeometricExact{resolve_r(std::min(mu, kInvSqrt2)), dist0};
    } else if (opt.schedule == "geometric-banded") {
      cfg.schedule = GeometricBanded{resolve_r(mu), opt.beta, opt.R ? *opt.R : 0.5 * dist0};
    } else if (opt.schedule == "polyak") {
      cfg.schedule = Polyak{problem.min_value()};
    } else if (opt.schedule == "constant") {
      if (!opt.eta) throw configuration_error("--schedule constant requires --eta");
      cfg.schedule = Constant{*opt.eta};
    } else {
      throw configuration_error("unknown --schedule '" + opt.schedule + "'");
    }
    validate_config(cfg, problem);

    const Trace trace = run(problem, x0, cfg);

    const std::filesystem::path dir(opt.out);
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> emitted;
    write_text_file(dir / "trace.csv", trace_to_csv(trace));
    emitted.push_back(dir / "trace.csv");

    bool bounds_ok = true;
    if (is_geometric(cfg.schedule)) {
      const BoundReport report = verify_bound(trace, cfg, dist0);
      bounds_ok = report.all_satisfied();
      write_text_file(dir / "bound_report.json", to_json(report).dump(2) + "\n");
      emitted.push_back(dir / "bound_report.json");
      std::cout << "theoretical_rate=" << fmt17(report.theoretical_rate)
                << " fitted_rate=" << fmt17(report.fitted_rate)
                << " worst_slack=" << fmt17(report.worst_slack)
                << " all_satisfied=" << (bounds_ok ? "true" : "false") << "\n";
    }

    json manifest{{"problem_name", problem.name},
                  {"x0", x0},
                  {"schedule", schedule_to_json(cfg.schedule)},
                  {"seeds", json::array()},
                  {"output_dir", dir.string()}};
    json files = json::array();
    for (const auto& f : emitted) files.push_back(f.filename().string());
    files.push_back("manifest.json");
    manifest["emitted_files"] = files;
    write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
    emitted.push_back(dir / "manifest.json");
    detail::require_emitted(emitted);

    std::cout << "iterates=" << trace.iterates.size() << " stop_reason=" << to_string(trace.stop_reason)
              << " final_dist=" << fmt17(trace.distances.back()) << "\n";
    return bounds_ok ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return 1;
  }
}

// ---------------------------------------------------------------------------
// estimate

struct EstimateOptions {
  std::string problem;
  std::optional<std::string> x0;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  std::optional<double> exclusion_radius;  // default 1e-6 * radius
  double rho_max = 1e3;
  std::string out = ".";
};

inline int cmd_estimate(const EstimateOptions& opt) {
  try {
    const std::optional<ProblemInstance> maybe = detail::lookup_or_complain(opt.problem);
    if (!maybe) return 1;
    const ProblemInstance& problem = *maybe;
    const Point x0 = opt.x0 ? parse_point(*opt.x0) : problem.default_x0;
    const double radius = dist_to_minimizers(x0, problem.minimizers);
    const double exclusion = opt.exclusion_radius.value_or(default_exclusion_radius(radius));

    const ConditionSpec spec =
        estimate_condition_number(problem, x0, opt.samples, exclusion, opt.seed);
    std::vector<PropertyReport> reports;
    reports.push_back(check_sharpness(problem, x0, opt.samples, opt.seed));
    reports.push_back(check_weak_convexity(problem, x0, opt.rho_max, opt.samples, opt.seed));
    reports.push_back(check_quasar_convexity(problem, x0, opt.samples, opt.seed));
    reports.push_back(check_lipschitz(problem, x0, opt.samples, opt.seed));
    const LemmaBounds lemmas = verify_lemma_bounds(problem, spec, reports);

    const std::filesystem::path dir(opt.out);
    std::filesystem::create_directories(dir);
    write_text_file(dir / "condition_spec.json", to_json(spec).dump(2) + "\n");
    write_text_file(dir / "property_reports.json", to_json(reports, lemmas).dump(2) + "\n");
    detail::require_emitted({dir / "condition_spec.json", dir / "property_reports.json"});

    std::cout << "mu_hat=" << fmt17(spec.mu_hat) << "\n";
    for (const PropertyReport& r : reports) {
      std::cout << to_string(r.property) << ": " << constant_field_name(r.property) << "="
                << fmt17(r.constant) << " holds=" << (r.holds ? "true" : "false") << "\n";
    }
    auto verdict = [](const std::optional<bool>& v) {
      return !v ? std::string("n/a") : (*v ? std::string("true") : std::string("false"));
    };
    std::cout << "lemma2_ok=" << verdict(lemmas.lemma2_ok) << " lemma3_ok=" << verdict(lemmas.lemma3_ok)
              << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "estimate failed: " << e.what() << "\n";
    return 1;
  }
}

// ---------------------------------------------------------------------------
// suite

struct SuiteOptions {
  std::string out = ".";
  std::optional<std::string> problem;  // restrict to one problem
  std::optional<double> r_override;    // replaces the r grid
  std::size_t max_iters = 1000;
  double grad_tol = 1e-12;
};

inline std::vector<std::string> suite_problem_names() {
  return {"example1", "example2", "example3", "example4", "abs_norm_d1", "abs_norm_d2"};
}

inline int cmd_suite(const SuiteOptions& opt) {
  try {
    std::vector<ProblemInstance> problems;
    for (const std::string& name : suite_problem_names()) {
      if (opt.problem && *opt.problem != name) continue;
      problems.push_back(*find_problem(name));
    }
    if (problems.empty()) {
      std::cerr << "no suite problem matches '" << (opt.problem ? *opt.problem : "") << "'\n";
      return 1;
    }
    if (opt.r_override) {
      // The override replaces every r in the matrix, so it must be admissible
      // for the exact schedule up front.
      if (!(*opt.r_override > 0.0) || *opt.r_override > kInvSqrt2) {
        throw configuration_error("--r-override " + std::to_string(*opt.r_override) +
                                  " violates 0 < r <= 1/sqrt(2) required by geometric-exact");
      }
    }

    std::vector<SuiteCell> cells;
    bool all_ok = true;
    for (const ProblemInstance& p : problems) {
      const double mu = p.certified->mu_bar;
      const double dist0 = dist_to_minimizers(p.default_x0, p.minimizers);
      std::vector<DescentConfig> configs;
      std::vector<std::optional<double>> betas, Rs;

      const std::vector<double> r_grid =
          opt.r_override ? std::vector<double>{*opt.r_override}
                         : std::vector<double>{0.1, 0.3, 0.5, std::min(mu, kInvSqrt2)};
      for (double r : r_grid) {
        configs.push_back({GeometricExact{r, dist0}, opt.max_iters, opt.grad_tol});
        betas.push_back(std::nullopt);
        Rs.push_back(std::nullopt);
      }
      const double rb = opt.r_override ? *opt.r_override : mu;
      for (double beta : {0.1, 0.3, 0.5}) {
        for (double Rfrac : {beta, 0.5, 1.0 - beta}) {
          configs.push_back({GeometricBanded{rb, beta, Rfrac * dist0}, opt.max_iters, opt.grad_tol});
          betas.push_back(beta);
          Rs.push_back(Rfrac * dist0);
        }
      }

      for (std::size_t i = 0; i < configs.size(); ++i) {
        SuiteCell cell;
        cell.problem = p.name;
        cell.schedule = schedule_name(configs[i].schedule);
        cell.r = std::holds_alternative<GeometricExact>(configs[i].schedule)
                     ? std::get<GeometricExact>(configs[i].schedule).r
                     : std::get<GeometricBanded>(configs[i].schedule).r;
        cell.beta = betas[i];
        cell.R = Rs[i];
        cell.dist0 = dist0;
        try {
          validate_config(configs[i], p);
          const Trace trace = run(p, p.default_x0, configs[i]);
          const BoundReport report = verify_bound(trace, configs[i], dist0);
          cell.iterations = trace.step_sizes.size();
          cell.stop_reason = to_string(trace.stop_reason);
          cell.all_satisfied = report.all_satisfied();
          cell.worst_slack = report.worst_slack;
          cell.theoretical_rate = report.theoretical_rate;
          cell.fitted_rate = report.fitted_rate;
        } catch (const std::exception& e) {
          cell.error = e.what();
          cell.all_satisfied = false;
        }
        all_ok = all_ok && cell.all_satisfied && cell.error.empty();
        cells.push_back(std::move(cell));
      }
    }

    const std::filesystem::path dir(opt.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    write_text_file(dir / "suite_summary.csv", suite_summary_csv(cells));
    std::cout << "suite cells=" << cells.size() << " all_satisfied=" << (all_ok ? "true" : "false")
              << " summary=" << (dir / "suite_summary.csv").string() << "\n";
    return all_ok ? 0 : 2;
  } catch (const configuration_error& e) {
    std::cerr << "suite configuration rejected: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "suite failed: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace subgrad
