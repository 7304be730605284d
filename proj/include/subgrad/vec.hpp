// Small dense-vector helpers. Points are plain std::vector<double>; all
// problems in this library are low-dimensional, so no linear-algebra
// dependency is warranted.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "subgrad/errors.hpp"

namespace subgrad {

using Point = std::vector<double>;

inline bool all_finite(const Point& x) {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

inline void require_same_dim(const Point& a, const Point& b, const char* where) {
  if (a.size() != b.size()) {
    throw invalid_input_error(std::string(where) + ": dimension mismatch (" +
                              std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
}

inline double dot(const Point& a, const Point& b) {
  require_same_dim(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Euclidean norm, scaled by the largest coordinate so that squaring cannot
/// underflow into subnormals (or overflow) and wreck the result.
inline double norm(const Point& a) {
  double m = 0.0;
  for (double v : a) {
    const double av = std::abs(v);
    if (std::isnan(av)) return av;
    m = std::max(m, av);
  }
  if (m == 0.0 || std::isinf(m)) return m;
  double s = 0.0;
  for (double v : a) {
    const double t = v / m;
    s += t * t;
  }
  return m * std::sqrt(s);
}

inline double distance(const Point& a, const Point& b) {
  require_same_dim(a, b, "distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

/// a - t*b
inline Point axpy(const Point& a, double t, const Point& b) {
  require_same_dim(a, b, "axpy");
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - t * b[i];
  return out;
}

inline Point sub(const Point& a, const Point& b) {
  require_same_dim(a, b, "sub");
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

}  // namespace subgrad
