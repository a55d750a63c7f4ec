#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "monowave/geometry.hpp"
#include "monowave/specfun.hpp"

namespace monowave::quadrature {

struct Rule1d {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with `count` nodes on [-1, 1].
Rule1d gauss_legendre(int count);

/// Adaptive Gauss-Legendre integration of a smooth function on [a, b].
/// Panels are bisected until a 20-point and two 20-point half-panel estimates
/// agree to `tolerance` (absolute).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tolerance = 1e-13);

/// Quadrature rule on S^1 or S^2 for the unnormalized surface measure.
struct SphereRule {
  int dim_sphere = 2;
  std::vector<Point> nodes;
  std::vector<double> weights;
};

/// Trapezoid rule with `count` equally spaced nodes on S^1.
SphereRule circle_rule(int count);
/// Gauss-Legendre in cos(theta) times trapezoid in phi, 2 * n_theta columns.
SphereRule sphere_product_rule(int n_theta);
/// circle_rule or sphere_product_rule sized to resolve band limit `degree`.
SphereRule rule_for_band(int dim_sphere, int degree);

/// Direct quadrature of int Y(xi) exp(-i <x, xi>) dsigma(xi).
std::complex<double> ft_sph_harm_by_quadrature(
    const specfun::HarmonicIndex& idx, const Point& x, const SphereRule& rule);

/// Spherical transform lambda_h(l) = int h(<x, y>) Z^l_x(y) dsigma(y), reduced
/// to the one-dimensional integral
///   vol(S^{n-2}) int_{-1}^{1} h(t) Z_l(t) (1 - t^2)^{nu - 1/2} dt.
std::complex<double> spherical_transform(
    const std::function<std::complex<double>(double)>& h, int ell, int n,
    int nodes = 256);

}  // namespace monowave::quadrature
