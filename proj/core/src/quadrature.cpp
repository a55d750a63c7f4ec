#include "monowave/quadrature.hpp"

#include <cmath>
#include <utility>

#include "monowave/error.hpp"

namespace monowave::quadrature {

namespace {

// P_count(x) and its derivative by the three-term recurrence.
std::pair<double, double> legendre(int count, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= count; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  if (count == 1) p0 = 1.0;
  return {p1, count * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

Rule1d gauss_legendre(int count) {
  if (count < 1) {
    throw Error(ErrorKind::kDomain, "Gauss-Legendre needs >= 1 node");
  }
  Rule1d rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  for (int i = 0; i < (count + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (count + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(count, x);
      const double dx = p / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    const double dp = legendre(count, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[count - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[count - 1 - i] = w;
  }
  if (count % 2 == 1) rule.nodes[count / 2] = 0.0;
  return rule;
}

namespace {

const Rule1d& panel_rule() {
  static const Rule1d rule = gauss_legendre(20);
  return rule;
}

double panel(const std::function<double(double)>& f, double a, double b) {
  const Rule1d& rule = panel_rule();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double whole, double tolerance, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = panel(f, a, mid);
  const double right = panel(f, mid, b);
  if (std::fabs(left + right - whole) <= tolerance || depth >= 40) {
    return left + right;
  }
  return adapt(f, a, mid, left, 0.5 * tolerance, depth + 1) +
         adapt(f, mid, b, right, 0.5 * tolerance, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tolerance) {
  if (a == b) return 0.0;
  return adapt(f, a, b, panel(f, a, b), tolerance, 0);
}

SphereRule circle_rule(int count) {
  SphereRule rule;
  rule.dim_sphere = 1;
  rule.nodes.resize(count);
  rule.weights.assign(count, kTwoPi / count);
  for (int i = 0; i < count; ++i) {
    const double theta = kTwoPi * i / count;
    rule.nodes[i] = {std::cos(theta), std::sin(theta), 0.0};
  }
  return rule;
}

SphereRule sphere_product_rule(int n_theta) {
  const Rule1d gl = gauss_legendre(n_theta);
  const int n_phi = 2 * n_theta;
  SphereRule rule;
  rule.dim_sphere = 2;
  rule.nodes.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  rule.weights.reserve(rule.nodes.capacity());
  for (int i = 0; i < n_theta; ++i) {
    const double z = gl.nodes[i];
    const double s = std::sqrt((1.0 - z) * (1.0 + z));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = kTwoPi * j / n_phi;
      rule.nodes.push_back({s * std::cos(phi), s * std::sin(phi), z});
      rule.weights.push_back(gl.weights[i] * kTwoPi / n_phi);
    }
  }
  return rule;
}

SphereRule rule_for_band(int dim_sphere, int degree) {
  const int base = degree + 24;
  if (dim_sphere == 1) return circle_rule(2 * base + 2);
  if (dim_sphere == 2) return sphere_product_rule(base);
  throw Error(ErrorKind::kUnsupportedDimension, "sphere rule dimension");
}

std::complex<double> ft_sph_harm_by_quadrature(
    const specfun::HarmonicIndex& idx, const Point& x, const SphereRule& rule) {
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const Point& xi = rule.nodes[i];
    const double phase = dot(x, xi);
    sum += rule.weights[i] * specfun::real_sph_harm(idx, xi) *
           std::complex<double>(std::cos(phase), -std::sin(phase));
  }
  return sum;
}

std::complex<double> spherical_transform(
    const std::function<std::complex<double>(double)>& h, int ell, int n,
    int nodes) {
  const Rule1d gl = gauss_legendre(nodes);
  std::complex<double> sum = 0.0;
  if (n == 2) {
    // t = cos(theta) removes the (1 - t^2)^{-1/2} endpoint singularity.
    for (int i = 0; i < nodes; ++i) {
      const double theta = 0.5 * kPi * (gl.nodes[i] + 1.0);
      const double t = std::cos(theta);
      sum += gl.weights[i] * 0.5 * kPi * h(t) * specfun::zonal(ell, 2, t);
    }
    return specfun::sphere_volume(0) * sum;
  }
  const double nu = 0.5 * (n - 2);
  for (int i = 0; i < nodes; ++i) {
    const double t = gl.nodes[i];
    sum += gl.weights[i] * h(t) * specfun::zonal(ell, n, t) *
           std::pow(1.0 - t * t, nu - 0.5);
  }
  return specfun::sphere_volume(n - 2) * sum;
}

}  // namespace monowave::quadrature
