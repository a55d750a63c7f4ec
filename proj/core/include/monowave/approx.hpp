#pragma once

#include <algorithm>
#include <complex>
#include <limits>
#include <span>
#include <vector>

#include "monowave/ensemble.hpp"
#include "monowave/geometry.hpp"
#include "monowave/grid.hpp"
#include "monowave/nodal.hpp"
#include "monowave/specfun.hpp"

/// Explicit elements of the Bessel span P_1 and the plane-wave span T_1, and
/// the constructions linking them.
namespace monowave {

/// f(x) = sum_{l,m} c_{l,m} Y^l_m(x/|x|) J_{l+nu}(|x|) / |x|^nu, coefficients
/// in flat (l, m) order. No variance normalization is applied.
struct P1Element {
  int dim = 2;
  std::vector<double> coefficients;

  /// Largest l with a slot in `coefficients` (-1 when empty).
  int max_degree() const;
};

/// Throws kInvalidSpec unless dim is 2 or 3 and the coefficient count fills
/// whole degrees.
void validate(const P1Element& f);
double evaluate(const P1Element& f, const Point& x);

/// f(x) = sum_j 2 Re(w_j exp(i <x, xi_j>)): each stored direction stands for
/// the pair {xi_j, -xi_j} with weights w_j and conj(w_j), so f is real.
struct T1Element {
  int dim = 2;
  std::vector<Point> directions;
  std::vector<std::complex<double>> weights;
};

double evaluate(const T1Element& f, const Point& x);
Point gradient(const T1Element& f, const Point& x);
Field as_field(const T1Element& f);

/// The same function as a plane-wave sample (alpha = 1), so it can be
/// serialized and fed to the nodal pipeline. Directions must be unit vectors.
WaveSample to_wave_sample(const T1Element& f);
T1Element from_wave_sample(const WaveSample& sample);

struct Truncation {
  P1Element truncated;
  double error_bound = 0.0;
};

/// Keeps degrees l <= L and bounds the discarded tail on |x| <= K in C^0
/// (t_order 0) or C^1 (t_order 1, the max of the value and gradient bounds).
/// Per degree the bound is ||c_l|| sqrt(d_l / vol S^{n-1}) times an envelope
/// of the radial factor: min(C_n, K^l / (2^mu Gamma(mu + 1))) with mu = l + nu,
/// C_2 = 1 and C_3 = sqrt(2 / pi), and for the gradient the power-series
/// envelopes of R'(r) and R(r)/r with the angular factor l (l + n - 2).
/// Throws kCutoffTooSmall if the bound exceeds `epsilon`.
Truncation truncate_p1(const P1Element& full, int L, double K, int t_order,
                       double epsilon = std::numeric_limits<double>::infinity());

struct T1Approximation {
  T1Element element;
  double measured_error = 0.0;  // sup over the sample points in |x| <= K
};

/// Riemann sum of int Y(xi) exp(-i <x, xi>) dsigma over the 2N equidistributed
/// directions (N antipodal pairs), multiplied by i^l so the result is the real
/// profile (2 pi)^{n/2} Y(x/|x|) J_{l+nu}(|x|)/|x|^nu. The weights are
///   w_j = (-i)^l vol(S^{n-1}) Y(xi_j) / (2N).
/// The error is measured on the lattice of step K / samples_per_radius
/// restricted to the closed ball of radius K.
T1Approximation p1_to_t1(const specfun::HarmonicIndex& idx, int N, double K,
                         int samples_per_radius = 20);

/// First Dirichlet eigenfunction of the ball: h(x) = J_nu(|x|)/|x|^nu, which
/// vanishes on |x| = lambda, the first positive zero of J_nu.
struct BallEigenfunction {
  int dim = 2;
  P1Element element;  // l = 0 coefficient sqrt(vol S^{n-1})
  double lambda = 0.0;
};

BallEigenfunction ball_eigenfunction(int n);
/// h and its radial derivative -J_{nu+1}(r)/r^nu.
double ball_profile(int n, double r);
double ball_profile_derivative(int n, double r);

struct WitnessReport {
  int dim = 2;
  int directions = 0;  // N antipodal pairs
  double lambda = 0.0;
  Box window;             // |x|_inf <= lambda + 1
  double spacing = 0.0;   // extraction step
  double value_error = 0.0;     // sup |f - h| on |x| <= lambda + 1
  double gradient_error = 0.0;  // sup |grad f - grad h| on the same ball
  double value_margin = 0.0;    // min |h| off the tube | |x| - lambda | <= 1/2
  double gradient_margin = 0.0; // min |grad h| on the tube
  int closed_components = 0;
  int boundary_components = 0;
  int unclassified = 0;
  std::vector<TopologyType> types;
  bool verified = false;

  double approximation_error() const { return std::max(value_error, gradient_error); }
  double isotopy_margin() const { return std::min(value_margin, gradient_margin); }
};

struct Witness {
  T1Element element;
  WitnessReport report;
};

inline constexpr double kWitnessSpacing = kTwoPi / 32.0;

/// T_1 approximation of the ball eigenfunction with N direction pairs,
/// checked two ways: the C^1 error against h must be below the isotopy
/// margin, and the extracted zero set in the window must hold exactly one
/// closed component, a Circle (n = 2) or a genus-0 surface (n = 3).
/// Never throws on failure; see report.verified.
Witness build_witness(int n, int N, double spacing = kWitnessSpacing, int threads = 1);
/// build_witness, throwing kInsufficientDirections (with the measured error
/// and margin) unless verified.
Witness t1_witness_for_sphere(int n, int N, double spacing = kWitnessSpacing,
                              int threads = 1);

struct StabilityReport {
  std::vector<TopologyType> base_types;  // sorted
  std::vector<double> eps;               // ascending
  std::vector<char> preserved;
  std::vector<std::vector<TopologyType>> types;  // per eps, sorted
  double max_stable_eps = 0.0;  // last eps of the preserved prefix, 0 if none
  bool monotone = true;  // preserved entries form a prefix of the schedule
  double gradient_margin = 0.0;  // min |grad base| at the base zero set
};

/// Compares the multiset of interior topology types of base + eps * perturbation
/// with that of base for every eps of the schedule. Throws kNoComponent if
/// base has no closed interior component in the window.
StabilityReport isotopy_stability(const Field& base, const Field& perturbation,
                                  const Box& window, std::span<const double> eps_schedule,
                                  double spacing = kWitnessSpacing, int threads = 1);

}  // namespace monowave
