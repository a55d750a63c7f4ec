#pragma once

#include <complex>
#include <vector>

#include "monowave/geometry.hpp"

/// Special functions for monochromatic waves on R^2 and R^3.
///
/// Conventions used throughout the library:
///  * nu = (n - 2) / 2 for waves on R^n, so nu = 0 (n = 2) or 1/2 (n = 3).
///  * Real spherical harmonics are orthonormal for the unnormalized surface
///    measure of S^{n-1} (total mass 2 pi on S^1, 4 pi on S^2).
///  * On S^1 the degree-l basis is 1/sqrt(2 pi) for l = 0 and, for l >= 1,
///    m = 1 -> cos(l theta)/sqrt(pi), m = 2 -> sin(l theta)/sqrt(pi).
///  * On S^2, m = 1..2l+1 maps to the signed order mu = m - l - 1:
///      mu > 0 : sqrt(2) N P_l^mu(cos theta) cos(mu phi)
///      mu = 0 : N P_l^0(cos theta)
///      mu < 0 : sqrt(2) N P_l^|mu|(cos theta) sin(|mu| phi)
///    with N = sqrt((2l+1)/(4 pi) (l-|mu|)!/(l+|mu|)!) and no Condon-Shortley
///    phase, so every function is positive near phi = 0 for small theta.
namespace monowave::specfun {

/// Order of a Bessel function of the first kind. Always nonnegative.
class BesselOrder {
 public:
  explicit BesselOrder(double nu);
  double value() const noexcept { return nu_; }

 private:
  double nu_;
};

/// nu = (n - 2) / 2 for the ambient dimension n.
BesselOrder order_for_dimension(int n);

struct HarmonicIndex {
  int dim_sphere = 2;  // 1 for S^1, 2 for S^2
  int ell = 0;
  int m = 1;  // 1..d_l
};

/// d_l = dim E_l(S^{dim_sphere}); only S^1 and S^2 are supported.
int harmonic_dimension(int dim_sphere, int ell);
/// Position of (ell, m = 1) in the flat (l, m) ordering used for coefficients.
int harmonic_offset(int dim_sphere, int ell);
/// Number of harmonics with degree <= max_degree.
int harmonic_count(int dim_sphere, int max_degree);
void validate(const HarmonicIndex& idx);

/// Surface measure of the unit sphere S^k in R^{k+1} (S^0 counts 2 points).
double sphere_volume(int k);

double bessel_j(BesselOrder order, double x);
/// J_{nu+k}(x) for k = 0..count-1.
std::vector<double> bessel_j_sequence(BesselOrder first, int count, double x);
/// J_nu(r) / r^nu, equal to 1 / (2^nu Gamma(nu+1)) at r = 0.
double bessel_j_scaled(BesselOrder order, double r);
/// J_{nu+l}(r) / r^nu for l = 0..count-1 (the radial factors of P_1).
std::vector<double> bessel_radial_sequence(BesselOrder base, int count,
                                           double r);

/// Gegenbauer C_l^nu(t). For nu = 0 the value is the limit of C_l^nu / nu as
/// nu -> 0, i.e. (2/l) T_l(t) for l >= 1 and 1 for l = 0.
double gegenbauer(int ell, double nu, double t);
/// Zonal harmonic of degree l on S^{n-1} normalized to 1 at its pole.
double zonal(int ell, int n, double t);

/// Y^l_m at a unit vector (x, y) for S^1 or (x, y, z) for S^2.
double real_sph_harm(const HarmonicIndex& idx, const Point& unit);
/// All Y^l_m with l <= max_degree at `unit`, in flat (l, m) order.
void real_sph_harm_all(int dim_sphere, int max_degree, const Point& unit,
                       std::vector<double>& out);

/// Fourier transform of Y^l_m for the unnormalized surface measure:
///   int_{S^{n-1}} Y(xi) exp(-i <x, xi>) dsigma(xi)
///     = (2 pi)^{n/2} (-i)^l Y(x/|x|) J_{l+nu}(|x|) / |x|^nu.
std::complex<double> ft_sph_harm(const HarmonicIndex& idx, const Point& x);

/// (2 pi)^{n/2} Y(x/|x|) J_{l+nu}(|x|) / |x|^nu, the real profile of the
/// transform (ft_sph_harm times i^l).
double ft_sph_harm_profile(const HarmonicIndex& idx, const Point& x);

}  // namespace monowave::specfun
