// Problem abstraction: objective value, one selected Clarke subgradient, and
// the (finite) minimizer set against which distances are measured.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subgrad/errors.hpp"
#include "subgrad/vec.hpp"

namespace subgrad {

/// Finite set of minimizers. Continuum minimizer sets are out of scope.
class MinimizerSet {
 public:
  static MinimizerSet single(Point p) { return MinimizerSet({std::move(p)}); }

  static MinimizerSet finite(std::vector<Point> pts) { return MinimizerSet(std::move(pts)); }

  const std::vector<Point>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  std::size_t dim() const { return members_.front().size(); }

 private:
  explicit MinimizerSet(std::vector<Point> pts) : members_(std::move(pts)) {
    if (members_.empty()) throw invalid_input_error("MinimizerSet: empty");
    const std::size_t d = members_.front().size();
    if (d == 0) throw invalid_input_error("MinimizerSet: zero-dimensional member");
    for (const Point& p : members_) {
      if (p.size() != d) throw invalid_input_error("MinimizerSet: members differ in dimension");
      if (!all_finite(p)) throw invalid_input_error("MinimizerSet: non-finite member");
    }
  }

  std::vector<Point> members_;
};

/// dist(x; X) = min over members of the Euclidean distance. Exactly 0 iff x
/// coincides with a member.
inline double dist_to_minimizers(const Point& x, const MinimizerSet& X) {
  if (x.size() != X.dim()) throw invalid_input_error("dist_to_minimizers: dimension mismatch");
  double best = std::numeric_limits<double>::infinity();
  for (const Point& m : X.members()) best = std::min(best, distance(x, m));
  return best;
}

/// One evaluated point: value plus a single selected element of the Clarke
/// subdifferential. The set itself is never materialized; the descent loop
/// consumes one element per step and the stopping rule only needs to know
/// whether 0 belongs to the set.
struct SubgradientSample {
  Point point;
  double value = 0.0;
  Point subgrad;
  bool is_zero_subgrad_member = false;
};

/// Constants certified analytically for a built-in problem.
struct CertifiedConstants {
  double mu_bar = 1.0;                 // condition number, in (0, 1]
  std::optional<double> m;             // sharpness constant
  std::optional<double> M;             // subgradient norm bound on S
  std::optional<double> rho;           // weak-convexity constant
  std::optional<double> gamma;         // quasar-convexity constant, in (0, 1]
};

struct ProblemInstance {
  std::string name;
  std::size_t dim = 1;
  std::function<double(const Point&)> eval;
  std::function<SubgradientSample(const Point&)> subgrad_select;
  MinimizerSet minimizers = MinimizerSet::single({0.0});
  std::optional<CertifiedConstants> certified;
  Point default_x0;

  /// Minimum objective value (objective evaluated at the first minimizer).
  double min_value() const { return eval(minimizers.members().front()); }
};

/// Construction-time checks shared by all factories: certified mu_bar is in
/// (0, 1], and the objective agrees across minimizers to 1e-12.
inline void validate_problem(const ProblemInstance& p) {
  if (p.dim == 0) throw invalid_input_error(p.name + ": dim must be >= 1");
  if (p.minimizers.dim() != p.dim) throw invalid_input_error(p.name + ": minimizer dimension mismatch");
  if (p.default_x0.size() != p.dim || !all_finite(p.default_x0)) {
    throw invalid_input_error(p.name + ": bad default_x0");
  }
  if (p.certified) {
    const CertifiedConstants& c = *p.certified;
    if (!(c.mu_bar > 0.0) || c.mu_bar > 1.0) {
      throw invalid_input_error(p.name + ": certified mu_bar must lie in (0, 1]");
    }
    if (c.m && !(*c.m > 0.0)) throw invalid_input_error(p.name + ": certified m must be > 0");
    if (c.M && !(*c.M > 0.0)) throw invalid_input_error(p.name + ": certified M must be > 0");
    if (c.rho && *c.rho < 0.0) throw invalid_input_error(p.name + ": certified rho must be >= 0");
    if (c.gamma && (!(*c.gamma > 0.0) || *c.gamma > 1.0)) {
      throw invalid_input_error(p.name + ": certified gamma must lie in (0, 1]");
    }
  }
  const double f0 = p.eval(p.minimizers.members().front());
  for (const Point& m : p.minimizers.members()) {
    if (std::abs(p.eval(m) - f0) > 1e-12) {
      throw invalid_input_error(p.name + ": objective differs across minimizers");
    }
  }
}

}  // namespace subgrad
