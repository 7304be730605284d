// Adaptive Simpson quadrature, plus a cached cumulative antiderivative for
// integrands that get evaluated at many nearby upper limits.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "subgrad/errors.hpp"

namespace subgrad {

namespace detail {

struct SimpsonBudget {
  std::size_t evals = 0;
  std::size_t max_evals = 50'000'000;

  void spend(std::size_t n) {
    evals += n;
    if (evals > max_evals) {
      throw numeric_failure_error("adaptive Simpson: evaluation budget exceeded before reaching tolerance");
    }
  }
};

template <class F>
double simpson_rec(const F& f, double a, double fa, double b, double fb, double m, double fm,
                   double whole, double tol, int depth, SimpsonBudget& budget) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  budget.spend(2);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0) {
    throw numeric_failure_error("adaptive Simpson: max recursion depth reached before tolerance");
  }
  // Standard Richardson acceptance: |S2 - S1| <= 15 tol.
  if (std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, budget) +
         simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, budget);
}

}  // namespace detail

/// Integral of f over [a, b] with absolute error <= abs_tol.
/// Throws numeric_failure_error if the refinement budget is exhausted.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double abs_tol, int max_depth = 60) {
  if (!(abs_tol > 0.0)) throw invalid_input_error("adaptive_simpson: abs_tol must be > 0");
  if (a == b) return 0.0;
  detail::SimpsonBudget budget;
  budget.spend(3);
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_rec(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth, budget);
}

/// Cumulative integral F(x) = int_0^x f(s) ds for x in [0, x_max], backed by
/// checkpoints every `step` so a lookup only integrates the short tail.
/// Immutable after construction, hence safe to share across threads.
class CachedCumulativeIntegral {
 public:
  CachedCumulativeIntegral(std::function<double(double)> f, double x_max, double step,
                           double total_abs_tol)
      : f_(std::move(f)), step_(step), total_tol_(total_abs_tol) {
    const std::size_t cells = static_cast<std::size_t>(std::ceil(x_max / step_));
    // Half the budget goes to the checkpoint table, half to the per-query tail.
    const double cell_tol = 0.5 * total_tol_ / static_cast<double>(cells);
    prefix_.reserve(cells + 1);
    prefix_.push_back(0.0);
    double sum = 0.0, comp = 0.0;  // Kahan compensation keeps the prefix sums tight
    for (std::size_t i = 0; i < cells; ++i) {
      const double a = static_cast<double>(i) * step_;
      const double b = a + step_;
      const double cell = adaptive_simpson(f_, a, b, cell_tol);
      const double y = cell - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
      prefix_.push_back(sum);
    }
  }

  double x_max() const { return static_cast<double>(prefix_.size() - 1) * step_; }

  double operator()(double x) const {
    if (!(x >= 0.0)) throw invalid_input_error("CachedCumulativeIntegral: x must be >= 0");
    const double tail_tol = 0.5 * total_tol_;
    if (x > x_max()) {
      // Off the cached range: integrate the remainder directly.
      return prefix_.back() + adaptive_simpson(f_, x_max(), x, tail_tol);
    }
    std::size_t k = static_cast<std::size_t>(x / step_);
    if (k >= prefix_.size() - 1) k = prefix_.size() - 2;
    const double a = static_cast<double>(k) * step_;
    if (x == a) return prefix_[k];
    return prefix_[k] + adaptive_simpson(f_, a, x, tail_tol);
  }

 private:
  std::function<double(double)> f_;
  double step_;
  double total_tol_;
  std::vector<double> prefix_;
};

}  // namespace subgrad
