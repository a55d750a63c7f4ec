#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>

namespace monowave {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// A point of R^n for n <= 3. Two-dimensional code leaves the last slot 0.
using Point = std::array<double, 3>;

inline double dot(const Point& a, const Point& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Point& a) { return std::sqrt(dot(a, a)); }
inline Point operator+(const Point& a, const Point& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Point operator-(const Point& a, const Point& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Point operator*(double s, const Point& a) {
  return {s * a[0], s * a[1], s * a[2]};
}
inline Point cross(const Point& a, const Point& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

/// Axis-aligned window [lo, hi] in R^dim.
struct Box {
  int dim = 2;
  Point lo{};
  Point hi{};

  /// Window of the given side lengths centred at the origin.
  static Box centered(int dim, const Point& sides);
  static Box cube(int dim, double half_width);

  double volume() const;
  bool contains(const Point& p) const;
};

inline Box Box::centered(int dim, const Point& sides) {
  Box b;
  b.dim = dim;
  for (int a = 0; a < dim; ++a) {
    b.lo[a] = -0.5 * sides[a];
    b.hi[a] = 0.5 * sides[a];
  }
  return b;
}

inline Box Box::cube(int dim, double half_width) {
  return centered(dim, {2 * half_width, 2 * half_width, 2 * half_width});
}

inline double Box::volume() const {
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= hi[a] - lo[a];
  return v;
}

inline bool Box::contains(const Point& p) const {
  for (int a = 0; a < dim; ++a) {
    if (p[a] < lo[a] || p[a] > hi[a]) return false;
  }
  return true;
}

/// Scalar field on R^dim (or on S^2 embedded in R^3 when dim == 2 and the
/// caller says so). Any callable works; evaluation must be pure.
struct Field {
  int dim = 2;
  std::function<double(const Point&)> value;

  double operator()(const Point& x) const { return value(x); }
};

}  // namespace monowave
