#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "monowave/directions.hpp"
#include "monowave/geometry.hpp"

/// Gaussian ensembles of monochromatic waves.
///
/// Every flat ensemble is normalized to unit variance, so its covariance is
///   C(r) = 2^nu Gamma(nu+1) J_nu(r) / r^nu      (alpha = 1),
/// i.e. J_0(r) on R^2 and sin(r)/r on R^3. The classical normalization with
/// covariance (2 pi)^{-n/2} J_nu(r)/r^nu differs only by a constant factor.
namespace monowave {

enum class FieldKind {
  kP1Truncated,  // sum_{l <= L} b_{l,m} Y^l_m(x/|x|) J_{l+nu}(|x|)/|x|^nu
  kPlaneWave,    // N antipodal pairs of plane waves, band [alpha, 1]
  kSphere,       // degree-l random spherical harmonic on S^2
};

struct FieldSpec {
  int dim = 2;  // ambient n for flat kinds; 2 (the sphere S^2) for kSphere
  FieldKind kind = FieldKind::kPlaneWave;
  int max_degree = 0;       // L, kP1Truncated
  int direction_count = 1;  // N, kPlaneWave
  double alpha = 1.0;       // kPlaneWave
  DirectionScheme directions = DirectionScheme::kEquidistributed;
  int degree = 0;  // l, kSphere
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  bool operator==(const FieldSpec&) const = default;
};

/// Throws kInvalidSpec when the spec violates its invariants.
void validate(const FieldSpec& spec);

/// Truncation degree for a P_1 field on a window of radius R:
/// ceil(R + 10 R^{1/3}) + 5.
int truncation_degree(double radius);

/// A realization. For kPlaneWave, `directions` holds one frequency vector per
/// antipodal pair and `coefficients` the interleaved (a_j, b_j); for the other
/// kinds `coefficients` are b_{l,m} in flat (l, m) order.
struct WaveSample {
  FieldSpec spec;
  std::vector<double> coefficients;
  std::vector<Point> directions;

  bool operator==(const WaveSample&) const = default;
};

/// Draws coefficients from the Philox stream (spec.seed, spec.stream).
/// Draw order: random directions (if any), band radii (alpha < 1), then
/// coefficients.
WaveSample sample(const FieldSpec& spec);

/// Checks that a sample is internally consistent (sizes, unit directions).
void validate(const WaveSample& sample);

/// Field value. Flat kinds take x in R^n; kSphere takes a unit vector of R^3.
double evaluate(const WaveSample& sample, const Point& x);

/// Copies the sample into a Field closure.
Field as_field(const WaveSample& sample);

/// (2 pi)^{n/2} / sqrt(vol S^{n-1}): scales the P_1 expansion to unit
/// variance.
double unit_variance_constant(int n);

/// Unit-variance covariance of H_{n,alpha} at distance r.
double covariance_exact(int n, double r, double alpha);

struct CovarianceEstimate {
  double r = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo estimate of E[f(x0) f(x0 + r e_1)]; trial t uses stream t.
std::vector<CovarianceEstimate> covariance_empirical(
    const FieldSpec& spec, std::span<const double> r_values, int trials,
    const Point& base = {}, int threads = 0);

}  // namespace monowave
