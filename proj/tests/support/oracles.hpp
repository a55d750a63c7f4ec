#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "monowave/geometry.hpp"
#include "monowave/nodal.hpp"

// Reference implementations that share no code with the library.
namespace oracle {

using monowave::Point;

/// std::cyl_bessel_j.
double bessel_j(double nu, double x);
/// Power series in long double; accurate for x up to about 20.
long double bessel_series(long double nu, long double x);
/// Smallest positive zero of J_nu by bisection on the series.
double first_bessel_zero(double nu);

/// Real spherical harmonics with the library's index convention, built from
/// std::assoc_legendre (no Condon-Shortley phase) and explicit factorials.
double real_sph_harm(int dim_sphere, int ell, int m, const Point& unit);

/// Gauss-Legendre nodes and weights on [-1, 1] from the eigenvalues of the
/// Jacobi matrix (Golub-Welsch).
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Rule golub_welsch(int count);

/// int_{S^{n-1}} Y(xi) exp(-i <x, xi>) dsigma by tensor-product quadrature
/// (Gauss-Legendre in cos theta, trapezoid in phi) on S^2 or trapezoid on S^1.
std::complex<double> ft_by_quadrature(int n, int ell, int m, const Point& x, int nodes);

/// Integer-valued measures on labels 0..k-1.
struct CountMeasure {
  std::vector<std::int64_t> counts;
  std::int64_t total() const;
};

/// max over all subsets F of |mu(F) - nu(F)|, evaluated exactly as
/// max_F |sum_F (a_t B - b_t A)| / (A B) and rounded once.
double brute_force_discrepancy(const CountMeasure& mu, const CountMeasure& nu);

/// Regular octahedron, outward oriented.
monowave::TriangleMesh octahedron();
/// Torus from an m x k grid of the parameter square, outward oriented.
monowave::TriangleMesh torus_grid(int m, int k);
/// Closed surface of genus g built by gluing g tori: a g-holed grid.
monowave::TriangleMesh multi_torus(int genus);

/// Maxima of sin(x) sin(y) with value 1, i.e. (pi/2 + a pi, pi/2 + b pi) with
/// a + b even, lying strictly inside the box.
int sine_lattice_maxima(const monowave::Box& box);

}  // namespace oracle
