// Built-in problem suite and the name registry.
//
// All built-ins attain their minimum on a single point where the Clarke
// subdifferential contains 0; off the minimizer they are differentiable, so
// the selected subgradient is the gradient itself.
#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "subgrad/problem.hpp"
#include "subgrad/quadrature.hpp"

namespace subgrad {

namespace detail {

inline SubgradientSample zero_membership_sample(const Point& x, double value, std::size_t dim) {
  SubgradientSample s;
  s.point = x;
  s.value = value;
  s.subgrad = Point(dim, 0.0);
  s.is_zero_subgrad_member = true;
  return s;
}

/// Shared cumulative integral of cos(s^3), one instance per tolerance.
/// Covers |x| <= 64, which is beyond every built-in use; larger arguments
/// fall back to direct quadrature inside CachedCumulativeIntegral.
inline std::shared_ptr<const CachedCumulativeIntegral> cos_cubed_cumulative(double quad_tol) {
  static std::mutex mu;
  static std::map<double, std::shared_ptr<const CachedCumulativeIntegral>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(quad_tol);
  if (it != cache.end()) return it->second;
  auto made = std::make_shared<const CachedCumulativeIntegral>(
      [](double s) { return std::cos(s * s * s); }, /*x_max=*/64.0, /*step=*/1.0 / 64.0, quad_tol);
  cache.emplace(quad_tol, made);
  return made;
}

}  // namespace detail

/// f(x) = |3x| + sin(|x|), minimized at 0. Nonconvex, condition number 1.
inline ProblemInstance make_example1() {
  ProblemInstance p;
  p.name = "example1";
  p.dim = 1;
  p.eval = [](const Point& x) { return std::abs(3.0 * x[0]) + std::sin(std::abs(x[0])); };
  p.subgrad_select = [eval = p.eval](const Point& x) {
    if (x[0] == 0.0) return detail::zero_membership_sample(x, 0.0, 1);
    SubgradientSample s;
    s.point = x;
    s.value = eval(x);
    const double sign = x[0] > 0.0 ? 1.0 : -1.0;
    s.subgrad = {sign * (3.0 + std::cos(x[0]))};
    return s;
  };
  p.minimizers = MinimizerSet::single({0.0});
  p.certified = CertifiedConstants{1.0, {}, {}, {}, {}};
  p.default_x0 = {5.0};
  validate_problem(p);
  return p;
}

/// f(x) = int_0^{|x|} (3 + cos(s^3)) ds, minimized at 0.
/// Values use adaptive Simpson quadrature (absolute error <= quad_tol); the
/// subgradient sign(x) (3 + cos(x^3)) is closed-form, so quadrature error
/// never enters the descent direction.
inline ProblemInstance make_example2(double quad_tol = 1e-10) {
  if (!(quad_tol > 0.0)) throw invalid_input_error("make_example2: quad_tol must be > 0");
  ProblemInstance p;
  p.name = "example2";
  p.dim = 1;
  auto cumulative = detail::cos_cubed_cumulative(quad_tol);
  // The linear part integrates exactly; only cos(s^3) needs quadrature.
  p.eval = [cumulative](const Point& x) {
    const double a = std::abs(x[0]);
    return 3.0 * a + (*cumulative)(a);
  };
  p.subgrad_select = [eval = p.eval](const Point& x) {
    if (x[0] == 0.0) return detail::zero_membership_sample(x, 0.0, 1);
    SubgradientSample s;
    s.point = x;
    s.value = eval(x);
    const double sign = x[0] > 0.0 ? 1.0 : -1.0;
    s.subgrad = {sign * (3.0 + std::cos(x[0] * x[0] * x[0]))};
    return s;
  };
  p.minimizers = MinimizerSet::single({0.0});
  p.certified = CertifiedConstants{1.0, {}, {}, {}, {}};
  p.default_x0 = {10.0};
  validate_problem(p);
  return p;
}

/// f(x) = exp(-1/x^4) for x != 0 and f(0) = 0, minimized at 0.
/// For |x| < 1e-2 the exponential underflows to exact 0 in double precision;
/// eval and subgrad return 0 there and an iterate in that region counts as
/// numerically converged (the gradient-norm stopping rule fires).
inline ProblemInstance make_example3() {
  constexpr double kUnderflowRadius = 1e-2;
  ProblemInstance p;
  p.name = "example3";
  p.dim = 1;
  p.eval = [](const Point& x) {
    const double a = std::abs(x[0]);
    if (a < kUnderflowRadius) return 0.0;
    const double x2 = a * a;
    return std::exp(-1.0 / (x2 * x2));
  };
  p.subgrad_select = [eval = p.eval](const Point& x) {
    if (x[0] == 0.0) return detail::zero_membership_sample(x, 0.0, 1);
    SubgradientSample s;
    s.point = x;
    const double a = std::abs(x[0]);
    if (a < kUnderflowRadius) {
      s.value = 0.0;
      s.subgrad = {0.0};
      return s;
    }
    const double v = eval(x);
    s.value = v;
    s.subgrad = {4.0 / (x[0] * x[0] * x[0] * x[0] * x[0]) * v};
    return s;
  };
  p.minimizers = MinimizerSet::single({0.0});
  p.certified = CertifiedConstants{1.0, {}, {}, {}, {}};
  p.default_x0 = {2.0};
  validate_problem(p);
  return p;
}

/// f(x1, x2) = x1^2 + x2^2: smooth, not sharp, condition number 1.
inline ProblemInstance make_example4() {
  ProblemInstance p;
  p.name = "example4";
  p.dim = 2;
  p.eval = [](const Point& x) { return x[0] * x[0] + x[1] * x[1]; };
  p.subgrad_select = [eval = p.eval](const Point& x) {
    if (x[0] == 0.0 && x[1] == 0.0) return detail::zero_membership_sample(x, 0.0, 2);
    SubgradientSample s;
    s.point = x;
    s.value = eval(x);
    s.subgrad = {2.0 * x[0], 2.0 * x[1]};
    return s;
  };
  p.minimizers = MinimizerSet::single({0.0, 0.0});
  p.certified = CertifiedConstants{1.0, {}, {}, {}, {}};
  p.default_x0 = {3.0, 4.0};
  validate_problem(p);
  return p;
}

/// f(x) = ||x||: the canonical sharp convex instance, m = M = gamma = 1 and
/// rho = 0 certified.
inline ProblemInstance make_sharp_abs(std::size_t dim) {
  if (dim < 1) throw invalid_input_error("make_sharp_abs: dim must be >= 1");
  ProblemInstance p;
  p.name = "abs_norm_d" + std::to_string(dim);
  p.dim = dim;
  p.eval = [](const Point& x) { return norm(x); };
  p.subgrad_select = [dim](const Point& x) {
    const double n = norm(x);
    if (n == 0.0) return detail::zero_membership_sample(x, 0.0, dim);
    SubgradientSample s;
    s.point = x;
    s.value = n;
    s.subgrad.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) s.subgrad[i] = x[i] / n;
    return s;
  };
  p.minimizers = MinimizerSet::single(Point(dim, 0.0));
  p.certified = CertifiedConstants{1.0, 1.0, 1.0, 0.0, 1.0};
  p.default_x0 = Point(dim, 1.0);
  validate_problem(p);
  return p;
}

/// Name registry: example1..example4 and abs_norm_d<dim>.
inline std::optional<ProblemInstance> find_problem(const std::string& name) {
  if (name == "example1") return make_example1();
  if (name == "example2") return make_example2();
  if (name == "example3") return make_example3();
  if (name == "example4") return make_example4();
  constexpr const char* kAbsPrefix = "abs_norm_d";
  if (name.rfind(kAbsPrefix, 0) == 0) {
    const std::string digits = name.substr(std::string(kAbsPrefix).size());
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos &&
        digits.size() <= 4) {
      const std::size_t dim = std::stoul(digits);
      if (dim >= 1) return make_sharp_abs(dim);
    }
  }
  return std::nullopt;
}

inline std::vector<std::string> registered_names() {
  return {"example1", "example2", "example3", "example4", "abs_norm_d<dim>"};
}

}  // namespace subgrad
