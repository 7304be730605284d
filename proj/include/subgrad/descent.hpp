// Subgradient descent with pluggable step-size schedules.
//
// The loop is the generalized descent iteration x_{t+1} = x_t - eta_t g_t with
// a membership-flag stopping rule: it halts as soon as the oracle reports
// 0 in the Clarke subdifferential, or the selected subgradient norm falls to
// grad_tol, or the iteration cap is reached.
#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "subgrad/errors.hpp"
#include "subgrad/problem.hpp"

namespace subgrad {

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

// ---------------------------------------------------------------------------
// Schedules

/// eta_t = r (1 - r^2)^{t/2} dist0 / ||g_t||, valid for 0 < r <= min(mu_bar, 1/sqrt(2)).
/// dist0 is meant to be the exact initial distance to the minimizer set.
struct GeometricExact {
  double r;
  double dist0;
};

/// eta_t = r (1 + (beta^2 - 2 beta) r^2)^{t/2} R / ||g_t||, valid for
/// 0 < r <= mu_bar and 0 < beta <= 1/2, with R inside the band
/// [beta, 1 - beta] * dist0. The band is a caller-asserted precondition;
/// run() cannot check it because the true initial distance is unknown to it.
struct GeometricBanded {
  double r;
  double beta;
  double R;
};

/// eta_t = (f(x_t) - f_star) / ||g_t||^2. Requires the minimum value.
struct Polyak {
  double f_star;
};

struct Constant {
  double eta;
};

using Schedule = std::variant<GeometricExact, GeometricBanded, Polyak, Constant>;

inline bool is_geometric(const Schedule& s) {
  return std::holds_alternative<GeometricExact>(s) || std::holds_alternative<GeometricBanded>(s);
}

inline std::string schedule_name(const Schedule& s) {
  if (std::holds_alternative<GeometricExact>(s)) return "geometric-exact";
  if (std::holds_alternative<GeometricBanded>(s)) return "geometric-banded";
  if (std::holds_alternative<Polyak>(s)) return "polyak";
  return "constant";
}

struct DescentConfig {
  Schedule schedule;
  std::size_t max_iters = 1000;
  double grad_tol = 1e-12;
};

/// Parameter-range checks that do not depend on the starting point.
/// dist0 > 0 and R > 0 are deferred to the first step computation so that a
/// run started exactly on a minimizer can return its one-iterate trace without
/// ever touching the schedule.
inline void validate_config(const DescentConfig& cfg) {
  if (cfg.max_iters == 0) throw configuration_error("max_iters must be >= 1");
  if (!(cfg.grad_tol >= 0.0)) throw configuration_error("grad_tol must be >= 0");
  if (const auto* g = std::get_if<GeometricExact>(&cfg.schedule)) {
    if (!(g->r > 0.0) || g->r > kInvSqrt2) {
      throw configuration_error("geometric-exact requires 0 < r <= 1/sqrt(2)");
    }
    if (!std::isfinite(g->dist0)) throw configuration_error("geometric-exact: dist0 must be finite");
  } else if (const auto* b = std::get_if<GeometricBanded>(&cfg.schedule)) {
    if (!(b->r > 0.0) || b->r > 1.0) throw configuration_error("geometric-banded requires 0 < r <= 1");
    if (!(b->beta > 0.0) || b->beta > 0.5) {
      throw configuration_error("geometric-banded requires 0 < beta <= 0.5");
    }
    if (!std::isfinite(b->R)) throw configuration_error("geometric-banded: R must be finite");
  } else if (const auto* p = std::get_if<Polyak>(&cfg.schedule)) {
    if (!std::isfinite(p->f_star)) throw configuration_error("polyak: f_star must be finite");
  } else if (const auto* c = std::get_if<Constant>(&cfg.schedule)) {
    if (!(c->eta > 0.0)) throw configuration_error("constant: eta must be > 0");
  }
}

/// Adds the certified condition-number cap: geometric schedules must not use
/// r above the problem's mu_bar.
inline void validate_config(const DescentConfig& cfg, const ProblemInstance& problem) {
  validate_config(cfg);
  if (!problem.certified || !is_geometric(cfg.schedule)) return;
  const double mu = problem.certified->mu_bar;
  const double r = std::holds_alternative<GeometricExact>(cfg.schedule)
                       ? std::get<GeometricExact>(cfg.schedule).r
                       : std::get<GeometricBanded>(cfg.schedule).r;
  if (r > mu) {
    throw configuration_error(problem.name + ": r = " + std::to_string(r) +
                              " exceeds certified mu_bar = " + std::to_string(mu));
  }
}

/// Step size at iteration t. grad_norm must be positive (the loop stops before
/// a zero subgradient can reach this point). Polyak needs the current value.
inline double step_size(const Schedule& schedule, std::size_t t, double grad_norm,
                        std::optional<double> current_value = std::nullopt) {
  if (!(grad_norm > 0.0)) {
    throw invalid_input_error("step_size: grad_norm must be > 0 (stop before stepping)");
  }
  if (const auto* g = std::get_if<GeometricExact>(&schedule)) {
    if (!(g->dist0 > 0.0)) throw configuration_error("geometric-exact: dist0 must be > 0");
    const double decay = std::pow(1.0 - g->r * g->r, 0.5 * static_cast<double>(t));
    return g->r * decay * g->dist0 / grad_norm;
  }
  if (const auto* b = std::get_if<GeometricBanded>(&schedule)) {
    if (!(b->R > 0.0)) throw configuration_error("geometric-banded: R must be > 0");
    const double q = 1.0 + (b->beta * b->beta - 2.0 * b->beta) * b->r * b->r;
    return b->r * std::pow(q, 0.5 * static_cast<double>(t)) * b->R / grad_norm;
  }
  if (const auto* p = std::get_if<Polyak>(&schedule)) {
    if (!current_value) throw invalid_input_error("step_size: polyak needs the current value");
    const double gap = *current_value - p->f_star;
    if (gap < 0.0) throw invalid_input_error("step_size: polyak current value below f_star");
    return gap / (grad_norm * grad_norm);
  }
  return std::get<Constant>(schedule).eta;
}

// ---------------------------------------------------------------------------
// Trace

enum class StopReason { zero_subgradient, grad_tol_reached, max_iters };

inline std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::zero_subgradient: return "zero_subgradient";
    case StopReason::grad_tol_reached: return "grad_tol_reached";
    default: return "max_iters";
  }
}

/// Per-iteration record. iterates has exactly one more entry than step_sizes;
/// grad_norms and distances align with iterates.
struct Trace {
  std::vector<Point> iterates;
  std::vector<double> step_sizes;
  std::vector<double> grad_norms;
  std::vector<double> distances;
  StopReason stop_reason = StopReason::max_iters;
};

/// Numeric failure inside the descent loop, carrying whatever was recorded.
struct descent_numeric_failure : numeric_failure_error {
  descent_numeric_failure(const std::string& what, Trace partial)
      : numeric_failure_error(what), partial_trace(std::move(partial)) {}
  Trace partial_trace;
};

// ---------------------------------------------------------------------------
// The loop

inline Trace run(const ProblemInstance& problem, const Point& x0, const DescentConfig& config) {
  validate_config(config, problem);
  if (x0.size() != problem.dim) throw invalid_input_error("run: x0 dimension mismatch");
  if (!all_finite(x0)) throw invalid_input_error("run: x0 must be finite");

  Trace trace;
  Point x = x0;
  for (std::size_t t = 0;; ++t) {
    const SubgradientSample sample = problem.subgrad_select(x);
    const double grad_norm = norm(sample.subgrad);
    const double dist = dist_to_minimizers(x, problem.minimizers);
    trace.iterates.push_back(x);
    trace.grad_norms.push_back(grad_norm);
    trace.distances.push_back(dist);

    if (!std::isfinite(grad_norm) || !std::isfinite(dist)) {
      throw descent_numeric_failure("run: non-finite oracle output at iteration " + std::to_string(t),
                                    trace);
    }
    // Divergence guard: keeps misconfigured runs (e.g. r above the true
    // condition number on an uncertified problem) finite.
    if (trace.distances.front() > 0.0 && dist > 1e6 * trace.distances.front()) {
      throw descent_numeric_failure("run: diverged past 1e6 x initial distance at iteration " +
                                        std::to_string(t),
                                    trace);
    }
    if (sample.is_zero_subgrad_member) {
      trace.stop_reason = StopReason::zero_subgradient;
      break;
    }
    if (grad_norm <= config.grad_tol) {
      trace.stop_reason = StopReason::grad_tol_reached;
      break;
    }
    if (t == config.max_iters) {
      trace.stop_reason = StopReason::max_iters;
      break;
    }

    const double eta = step_size(config.schedule, t, grad_norm, sample.value);
    trace.step_sizes.push_back(eta);
    x = axpy(x, eta, sample.subgrad);
    if (!all_finite(x)) {
      trace.step_sizes.pop_back();  // keep the partial trace internally consistent
      throw descent_numeric_failure("run: non-finite iterate after step " + std::to_string(t), trace);
    }
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Suite runner

/// Template for running one schedule family across several problems.
/// r is clamped to the certified admissible range per problem; dist0 is set to
/// the exact initial distance; a banded R outside the admissible band is
/// rejected (the suite runner knows the minimizer set, so it can check).
struct SuiteTemplate {
  enum class Kind { geometric_exact, geometric_banded, polyak, constant };
  Kind kind = Kind::geometric_exact;
  std::optional<double> r;        // geometric: desired r before clamping
  double beta = 0.5;              // banded
  std::optional<double> R;        // banded: default 0.5 * dist0 (mid-band)
  std::optional<double> eta;      // constant
  std::optional<double> f_star;   // polyak: default = problem minimum value
  std::size_t max_iters = 1000;
  double grad_tol = 1e-12;
};

inline DescentConfig instantiate_template(const SuiteTemplate& tmpl, const ProblemInstance& problem,
                                          const Point& x0) {
  DescentConfig cfg;
  cfg.max_iters = tmpl.max_iters;
  cfg.grad_tol = tmpl.grad_tol;
  switch (tmpl.kind) {
    case SuiteTemplate::Kind::geometric_exact: {
      if (!problem.certified) {
        throw configuration_error(problem.name + ": geometric-exact template needs certified mu_bar");
      }
      const double cap = std::min(problem.certified->mu_bar, kInvSqrt2);
      const double r = tmpl.r ? std::min(*tmpl.r, cap) : cap;
      cfg.schedule = GeometricExact{r, dist_to_minimizers(x0, problem.minimizers)};
      break;
    }
    case SuiteTemplate::Kind::geometric_banded: {
      if (!problem.certified) {
        throw configuration_error(problem.name + ": geometric-banded template needs certified mu_bar");
      }
      const double cap = problem.certified->mu_bar;
      const double r = tmpl.r ? std::min(*tmpl.r, cap) : cap;
      const double dist0 = dist_to_minimizers(x0, problem.minimizers);
      const double R = tmpl.R ? *tmpl.R : 0.5 * dist0;
      const double slack = 1e-12 * dist0;
      if (R < tmpl.beta * dist0 - slack || R > (1.0 - tmpl.beta) * dist0 + slack) {
        throw configuration_error(problem.name + ": R = " + std::to_string(R) +
                                  " outside the admissible band [" + std::to_string(tmpl.beta * dist0) +
                                  ", " + std::to_string((1.0 - tmpl.beta) * dist0) + "]");
      }
      cfg.schedule = GeometricBanded{r, tmpl.beta, R};
      break;
    }
    case SuiteTemplate::Kind::polyak:
      cfg.schedule = Polyak{tmpl.f_star ? *tmpl.f_star : problem.min_value()};
      break;
    case SuiteTemplate::Kind::constant:
      if (!tmpl.eta) throw configuration_error("constant template needs eta");
      cfg.schedule = Constant{*tmpl.eta};
      break;
  }
  return cfg;
}

inline std::vector<Trace> run_suite(const std::vector<ProblemInstance>& problems,
                                    const SuiteTemplate& tmpl) {
  std::vector<Trace> traces;
  traces.reserve(problems.size());
  for (const ProblemInstance& p : problems) {
    const DescentConfig cfg = instantiate_template(tmpl, p, p.default_x0);
    traces.push_back(run(p, p.default_x0, cfg));
  }
  return traces;
}

}  // namespace subgrad
