// Turns traces into bound-verification reports: the per-iteration theoretical
// envelope, the worst slack against it, and a least-squares estimate of the
// empirical linear rate.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "subgrad/descent.hpp"
#include "subgrad/errors.hpp"
#include "subgrad/problem.hpp"

namespace subgrad {

enum class Theorem { thm1, thm2 };

inline std::string to_string(Theorem t) { return t == Theorem::thm1 ? "thm1" : "thm2"; }

/// Squared per-iteration contraction factor of a geometric schedule:
/// 1 - r^2 for the exact variant, 1 + (beta^2 - 2 beta) r^2 for the banded one.
inline double contraction_sq(const Schedule& s) {
  if (const auto* g = std::get_if<GeometricExact>(&s)) return 1.0 - g->r * g->r;
  if (const auto* b = std::get_if<GeometricBanded>(&s)) {
    return 1.0 + (b->beta * b->beta - 2.0 * b->beta) * b->r * b->r;
  }
  throw invalid_input_error("contraction_sq: schedule is not geometric");
}

inline double theoretical_rate(const Schedule& s) { return std::sqrt(contraction_sq(s)); }

struct BoundEntry {
  std::size_t t = 0;
  double observed_dist = 0.0;
  double bound_value = 0.0;
  bool satisfied = true;
};

struct BoundReport {
  Theorem theorem = Theorem::thm1;
  std::vector<BoundEntry> per_iter;
  double worst_slack = 0.0;       // min over t of bound_value - observed_dist
  double fitted_rate = 1.0;       // in (0, 1]
  double theoretical_rate = 1.0;

  bool all_satisfied() const {
    for (const BoundEntry& e : per_iter) {
      if (!e.satisfied) return false;
    }
    return true;
  }
};

/// Ordinary least squares on (t, ln d_t), restricted to distances above the
/// 1e-13 floating-point floor (which also drops the terminal iterate of a
/// zero-subgradient stop, whose distance is exactly 0). Fewer than two usable
/// points give the degenerate rate 1.
inline double fit_rate(const std::vector<double>& distances) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::size_t t = 0; t < distances.size(); ++t) {
    if (!(distances[t] > 1e-13)) continue;
    const double x = static_cast<double>(t);
    const double y = std::log(distances[t]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return 1.0;
  const double denom = static_cast<double>(n) * sxx - sx * sx;
  if (denom == 0.0) return 1.0;
  const double slope = (static_cast<double>(n) * sxy - sx * sy) / denom;
  const double rate = std::exp(slope);
  return std::clamp(rate, std::numeric_limits<double>::min(), 1.0);
}

/// Checks a geometric-schedule trace against its theorem envelope
/// bound_value[t] = rate^t * dist0, with relative slack 1e-9 * dist0 to absorb
/// rounding accumulated over long runs.
inline BoundReport verify_bound(const Trace& trace, const DescentConfig& config, double dist0) {
  if (!is_geometric(config.schedule)) {
    throw invalid_input_error("verify_bound: trace was not produced by a geometric schedule");
  }
  BoundReport report;
  report.theorem =
      std::holds_alternative<GeometricExact>(config.schedule) ? Theorem::thm1 : Theorem::thm2;
  const double rate_sq = contraction_sq(config.schedule);
  report.theoretical_rate = std::sqrt(rate_sq);
  const double tol = 1e-9 * dist0;
  report.worst_slack = std::numeric_limits<double>::infinity();
  report.per_iter.reserve(trace.distances.size());
  for (std::size_t t = 0; t < trace.distances.size(); ++t) {
    BoundEntry e;
    e.t = t;
    e.observed_dist = trace.distances[t];
    e.bound_value = std::pow(rate_sq, 0.5 * static_cast<double>(t)) * dist0;
    e.satisfied = e.observed_dist <= e.bound_value + tol;
    report.worst_slack = std::min(report.worst_slack, e.bound_value - e.observed_dist);
    report.per_iter.push_back(e);
  }
  if (report.per_iter.empty()) report.worst_slack = 0.0;
  report.fitted_rate = fit_rate(trace.distances);
  return report;
}

// ---------------------------------------------------------------------------
// Schedule comparison

struct ScheduleComparisonRow {
  std::string schedule_name;
  std::optional<std::size_t> iterations_to_target;  // absent: never reached the cap marker applies
  double fitted_rate = 1.0;
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
};

/// Runs each config once and tabulates how fast the distance fell below
/// 1e-9 * dist0. Failures are recorded per row; the table is always returned.
inline std::vector<ScheduleComparisonRow> compare_schedules(const ProblemInstance& problem,
                                                            const Point& x0,
                                                            const std::vector<DescentConfig>& configs) {
  std::vector<ScheduleComparisonRow> rows;
  rows.reserve(configs.size());
  for (const DescentConfig& cfg : configs) {
    ScheduleComparisonRow row;
    row.schedule_name = schedule_name(cfg.schedule);
    try {
      const Trace trace = run(problem, x0, cfg);
      const double target = 1e-9 * trace.distances.front();
      for (std::size_t t = 0; t < trace.distances.size(); ++t) {
        if (trace.distances[t] <= target) {
          row.iterations_to_target = t;
          break;
        }
      }
      row.fitted_rate = fit_rate(trace.distances);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace subgrad
