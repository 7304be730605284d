// Sampled estimation of the condition number and of the regularity properties
// (sharpness, weak convexity, quasar convexity, subgradient norm bound) that
// lower-bound it, plus the two lemma-bound verdicts.
//
// All operations are deterministic given the seed: samples are generated by a
// counter-based RNG, and reductions run in fixed sample order.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "subgrad/errors.hpp"
#include "subgrad/problem.hpp"
#include "subgrad/rng.hpp"
#include "subgrad/vec.hpp"

namespace subgrad {

// ---------------------------------------------------------------------------
// Sampling over S = {x : dist(x; X*) <= dist(x0; X*)}

/// Random points uniform in the ball of radius `radius` around each minimizer
/// (round-robin over members), followed by a deterministic probe ladder:
/// for each minimizer, points along +-e_i and along the x0 direction at radii
/// radius * 10^{-k}, k = 0..15. The ladder pins down behaviour arbitrarily
/// close to the minimizer set, where uniform sampling is too sparse to tell a
/// vanishing ratio from a small one.
inline std::vector<Point> sample_points(const ProblemInstance& problem, const Point& x0,
                                        std::size_t n_samples, std::uint64_t seed) {
  if (x0.size() != problem.dim) throw invalid_input_error("sample_points: x0 dimension mismatch");
  const double radius = dist_to_minimizers(x0, problem.minimizers);
  if (!(radius > 0.0)) throw invalid_input_error("sample_points: x0 must lie outside the minimizer set");

  const CounterRng rng(seed);
  const std::size_t dim = problem.dim;
  const auto& members = problem.minimizers.members();
  std::vector<Point> out;
  out.reserve(n_samples + members.size() * (2 * dim + 1) * 16);

  for (std::size_t i = 0; i < n_samples; ++i) {
    const Point& center = members[i % members.size()];
    Point dir(dim);
    for (std::size_t j = 0; j < dim; ++j) dir[j] = rng.gaussian(i, j);
    double n = norm(dir);
    if (n < 1e-300) {
      dir.assign(dim, 0.0);
      dir[0] = 1.0;
      n = 1.0;
    }
    const double u = rng.uniform01(i, 2 * dim);
    const double mag = radius * std::pow(u, 1.0 / static_cast<double>(dim));
    Point p(dim);
    for (std::size_t j = 0; j < dim; ++j) p[j] = center[j] + mag * dir[j] / n;
    out.push_back(std::move(p));
  }

  for (const Point& center : members) {
    std::vector<Point> dirs;
    for (std::size_t j = 0; j < dim; ++j) {
      Point e(dim, 0.0);
      e[j] = 1.0;
      dirs.push_back(e);
      e[j] = -1.0;
      dirs.push_back(e);
    }
    Point toward = sub(x0, center);
    const double tn = norm(toward);
    if (tn > 0.0) {
      for (double& v : toward) v /= tn;
      dirs.push_back(toward);
    }
    for (const Point& d : dirs) {
      double rad = radius;
      for (int k = 0; k <= 15; ++k, rad *= 0.1) {
        Point p(dim);
        for (std::size_t j = 0; j < dim; ++j) p[j] = center[j] + rad * d[j];
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Condition-number estimation

/// Sampled infimum of the ratio <u, x - x*> / (||u|| ||x - x*||).
struct ConditionSpec {
  double mu_hat = 1.0;
  std::size_t n_samples = 0;
  double exclusion_radius = 0.0;
  double radius = 0.0;
};

inline double default_exclusion_radius(double radius) { return 1e-6 * radius; }

/// Estimates the condition number by sampling S and taking the minimum ratio
/// against every minimizer, using the oracle's selected subgradient. Samples
/// closer than exclusion_radius to the minimizer set are skipped, as are the
/// (necessarily non-contributing) samples whose selected subgradient is zero.
inline ConditionSpec estimate_condition_number(const ProblemInstance& problem, const Point& x0,
                                               std::size_t n_samples, double exclusion_radius,
                                               std::uint64_t seed) {
  if (n_samples < 1) throw invalid_input_error("estimate_condition_number: n_samples must be >= 1");
  const double radius = dist_to_minimizers(x0, problem.minimizers);
  if (!(radius > 0.0)) {
    throw invalid_input_error("estimate_condition_number: x0 must lie outside the minimizer set");
  }
  if (!(exclusion_radius > 0.0) || exclusion_radius >= radius) {
    throw invalid_input_error("estimate_condition_number: need 0 < exclusion_radius < dist(x0; X*)");
  }

  const std::vector<Point> pts = sample_points(problem, x0, n_samples, seed);
  double mu = std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  for (const Point& x : pts) {
    if (dist_to_minimizers(x, problem.minimizers) < exclusion_radius) continue;
    const SubgradientSample s = problem.subgrad_select(x);
    const double gn = norm(s.subgrad);
    if (s.is_zero_subgrad_member || gn == 0.0) continue;
    for (const Point& m : problem.minimizers.members()) {
      const double d = distance(x, m);
      if (d == 0.0) continue;
      mu = std::min(mu, dot(s.subgrad, sub(x, m)) / (gn * d));
    }
    ++used;
  }
  if (used == 0) {
    throw invalid_input_error("estimate_condition_number: every sample excluded (exclusion_radius too large)");
  }
  // Cauchy-Schwarz caps the true ratio at 1; anything above is rounding.
  return ConditionSpec{std::min(mu, 1.0), n_samples, exclusion_radius, radius};
}

// ---------------------------------------------------------------------------
// Property checks

enum class PropertyKind { sharpness, weak_convexity, quasar_convexity, lipschitz };

inline const char* to_string(PropertyKind k) {
  switch (k) {
    case PropertyKind::sharpness: return "sharpness";
    case PropertyKind::weak_convexity: return "weak_convexity";
    case PropertyKind::quasar_convexity: return "quasar_convexity";
    default: return "lipschitz";
  }
}

struct PropertyReport {
  PropertyKind property = PropertyKind::sharpness;
  double constant = 0.0;  // m_hat / rho_hat / gamma_hat / M_hat per kind
  bool holds = false;
  std::optional<Point> witness;  // a violating sample whenever holds is false
  std::size_t samples_checked = 0;
};

/// Values below this report holds = false: they are indistinguishable from a
/// vanishing constant at sampling resolution.
inline constexpr double kPropertyFloor = 1e-8;

/// Finite-difference half-width used by the weak-convexity pair probes and by
/// the corroborating second-difference quotient.
inline constexpr double kCurvatureProbeStep = 1e-3;

/// m_hat = min over samples of (f(x) - f*) / dist(x; X*).
inline PropertyReport check_sharpness(const ProblemInstance& problem, const Point& x0,
                                      std::size_t n_samples, std::uint64_t seed) {
  const std::vector<Point> pts = sample_points(problem, x0, n_samples, seed);
  const double f_star = problem.min_value();
  PropertyReport rep;
  rep.property = PropertyKind::sharpness;
  double m_hat = std::numeric_limits<double>::infinity();
  Point argmin;
  for (const Point& x : pts) {
    const double d = dist_to_minimizers(x, problem.minimizers);
    if (d == 0.0) continue;
    const double ratio = (problem.eval(x) - f_star) / d;
    if (ratio < m_hat) {
      m_hat = ratio;
      argmin = x;
    }
    ++rep.samples_checked;
  }
  if (rep.samples_checked == 0) throw invalid_input_error("check_sharpness: no usable samples");
  rep.constant = m_hat;
  rep.holds = m_hat > kPropertyFloor;
  if (!rep.holds) rep.witness = argmin;
  return rep;
}

/// gamma_hat = min over samples of <u, x - x*> / (f(x) - f*), clipped to 1.
/// Samples at the minimum value outside X* are skipped (the ratio is undefined
/// there); if every sample is skipped the input is unusable.
inline PropertyReport check_quasar_convexity(const ProblemInstance& problem, const Point& x0,
                                             std::size_t n_samples, std::uint64_t seed) {
  const std::vector<Point> pts = sample_points(problem, x0, n_samples, seed);
  const double f_star = problem.min_value();
  PropertyReport rep;
  rep.property = PropertyKind::quasar_convexity;
  double gamma_hat = std::numeric_limits<double>::infinity();
  Point argmin;
  for (const Point& x : pts) {
    if (dist_to_minimizers(x, problem.minimizers) == 0.0) continue;
    const SubgradientSample s = problem.subgrad_select(x);
    const double gap = s.value - f_star;
    if (!(gap > 0.0)) continue;
    double ratio = std::numeric_limits<double>::infinity();
    for (const Point& m : problem.minimizers.members()) {
      ratio = std::min(ratio, dot(s.subgrad, sub(x, m)) / gap);
    }
    ratio = std::min(ratio, 1.0);
    if (ratio < gamma_hat) {
      gamma_hat = ratio;
      argmin = x;
    }
    ++rep.samples_checked;
  }
  if (rep.samples_checked == 0) {
    throw invalid_input_error("check_quasar_convexity: every sample sits at the minimum value");
  }
  rep.constant = gamma_hat;
  rep.holds = gamma_hat > kPropertyFloor;
  if (!rep.holds) rep.witness = argmin;
  return rep;
}

/// Smallest rho on a logarithmic grid in [0, rho_max] for which the
/// subgradient inequality
///   f(y) >= f(x) + <u, y - x> - (rho/2) ||y - x||^2
/// holds at every sample x, both against every minimizer y = x* and against
/// the close pair probes y = x +- h e_i. The pair probes make short-range
/// negative curvature visible; testing only against x* would average it away.
inline PropertyReport check_weak_convexity(const ProblemInstance& problem, const Point& x0,
                                           double rho_max, std::size_t n_samples,
                                           std::uint64_t seed) {
  if (!(rho_max > 0.0)) throw invalid_input_error("check_weak_convexity: rho_max must be > 0");
  const std::vector<Point> pts = sample_points(problem, x0, n_samples, seed);
  const double f_star = problem.min_value();
  const double h = kCurvatureProbeStep;

  PropertyReport rep;
  rep.property = PropertyKind::weak_convexity;
  double rho_needed = 0.0;       // max over samples of the per-inequality requirement
  double worst_quotient = 0.0;   // most negative axis second-difference quotient
  Point worst_point;
  bool have_worst = false;

  for (const Point& x : pts) {
    if (dist_to_minimizers(x, problem.minimizers) == 0.0) continue;
    const SubgradientSample s = problem.subgrad_select(x);
    const double fx = s.value;
    // Requirement from y: rho >= 2 (f(x) + <u, y-x> - f(y) - tol) / ||y-x||^2.
    const auto requirement = [&](const Point& y, double fy) {
      const Point step = sub(y, x);
      const double sq = dot(step, step);
      if (sq == 0.0) return 0.0;
      const double tol = 1e-9 * (1.0 + std::abs(fx) + std::abs(fy));
      return 2.0 * (fx + dot(s.subgrad, step) - fy - tol) / sq;
    };
    for (const Point& m : problem.minimizers.members()) {
      rho_needed = std::max(rho_needed, requirement(m, f_star));
    }
    double min_axis_quotient = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < problem.dim; ++j) {
      Point up = x, dn = x;
      up[j] += h;
      dn[j] -= h;
      const double fup = problem.eval(up);
      const double fdn = problem.eval(dn);
      rho_needed = std::max(rho_needed, requirement(up, fup));
      rho_needed = std::max(rho_needed, requirement(dn, fdn));
      min_axis_quotient = std::min(min_axis_quotient, (fup - 2.0 * fx + fdn) / (h * h));
    }
    if (min_axis_quotient < worst_quotient) {
      worst_quotient = min_axis_quotient;
      worst_point = x;
      have_worst = true;
    }
    ++rep.samples_checked;
  }
  if (rep.samples_checked == 0) throw invalid_input_error("check_weak_convexity: no usable samples");

  if (rho_needed <= 0.0) {
    rep.constant = 0.0;
    rep.holds = true;
    return rep;
  }
  // Logarithmic grid: rho_max * 10^{-j/4}, twelve decades, plus 0 handled above.
  double rho_hat = std::numeric_limits<double>::infinity();
  for (int j = 48; j >= 0; --j) {
    const double rho = rho_max * std::pow(10.0, -static_cast<double>(j) / 4.0);
    if (rho >= rho_needed) {
      rho_hat = rho;
      break;
    }
  }
  if (std::isfinite(rho_hat)) {
    rep.constant = rho_hat;
    rep.holds = true;
    return rep;
  }
  rep.constant = rho_max;
  rep.holds = false;
  // Prefer the sample with the most negative curvature quotient: it both
  // violates the inequality at rho_max and reproduces the violation through
  // the plain second-difference computation.
  rep.witness = have_worst ? worst_point : pts.front();
  return rep;
}

/// M_hat = max over samples of the selected subgradient norm.
inline PropertyReport check_lipschitz(const ProblemInstance& problem, const Point& x0,
                                      std::size_t n_samples, std::uint64_t seed) {
  const std::vector<Point> pts = sample_points(problem, x0, n_samples, seed);
  PropertyReport rep;
  rep.property = PropertyKind::lipschitz;
  double m = 0.0;
  Point argmax;
  bool finite = true;
  for (const Point& x : pts) {
    const SubgradientSample s = problem.subgrad_select(x);
    const double gn = norm(s.subgrad);
    if (!std::isfinite(gn)) {
      finite = false;
      argmax = x;
      break;
    }
    m = std::max(m, gn);
    ++rep.samples_checked;
  }
  rep.constant = m;
  rep.holds = finite;
  if (!finite) rep.witness = argmax;
  return rep;
}

// ---------------------------------------------------------------------------
// Lemma-bound verification

/// Each verdict is absent when its lemma's preconditions fail on the sampled
/// reports (the bound is then vacuous, not violated).
struct LemmaBounds {
  std::optional<bool> lemma2_ok;  // mu_hat >= m_hat / (2 M_hat)
  std::optional<bool> lemma3_ok;  // mu_hat >= gamma_hat m_hat / M_hat
};

inline const PropertyReport* find_report(const std::vector<PropertyReport>& reports,
                                         PropertyKind kind) {
  for (const PropertyReport& r : reports) {
    if (r.property == kind) return &r;
  }
  return nullptr;
}

inline LemmaBounds verify_lemma_bounds(const ProblemInstance& problem, const ConditionSpec& spec,
                                       const std::vector<PropertyReport>& reports) {
  (void)problem;
  LemmaBounds out;
  const PropertyReport* sharp = find_report(reports, PropertyKind::sharpness);
  const PropertyReport* weak = find_report(reports, PropertyKind::weak_convexity);
  const PropertyReport* quasar = find_report(reports, PropertyKind::quasar_convexity);
  const PropertyReport* lip = find_report(reports, PropertyKind::lipschitz);
  const bool have_M = lip && lip->holds && lip->constant > 0.0;

  if (sharp && sharp->holds && weak && weak->holds && have_M) {
    const double m = sharp->constant;
    const double rho = weak->constant;
    // The lemma needs dist(x0; X*) <= m / rho; vacuously satisfied at rho = 0.
    if (rho == 0.0 || spec.radius <= m / rho) {
      out.lemma2_ok = spec.mu_hat >= m / (2.0 * lip->constant) - 1e-6;
    }
  }
  if (sharp && sharp->holds && quasar && quasar->holds && have_M) {
    out.lemma3_ok = spec.mu_hat >= quasar->constant * sharp->constant / lip->constant - 1e-6;
  }
  return out;
}

}  // namespace subgrad
