#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "monowave/approx.hpp"
#include "monowave/error.hpp"
#include "oracles.hpp"

using namespace monowave;

namespace {

Point random_point(std::mt19937_64& rng, int n, double half) {
  std::uniform_real_distribution<double> u(-half, half);
  return {u(rng), u(rng), n == 3 ? u(rng) : 0.0};
}

double helmholtz_residual(const std::function<double(const Point&)>& f, int n, const Point& x) {
  constexpr double h = 1e-2;
  double lap = -2.0 * n * f(x);
  for (int a = 0; a < n; ++a) {
    Point p = x, m = x;
    p[a] += h;
    m[a] -= h;
    lap += f(p) + f(m);
  }
  lap /= h * h;
  return std::abs(lap + f(x)) / std::max(1.0, std::abs(f(x)));
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no monowave::Error thrown";
  return ErrorKind::kValidation;
}

}  // namespace

TEST(P1, EvaluatesSingleHarmonicTerms) {
  for (int n : {2, 3}) {
    const double nu = 0.5 * n - 1.0;
    const int ds = n - 1;
    for (int l = 0; l <= 3; ++l) {
      for (int m = 1; m <= specfun::harmonic_dimension(ds, l); ++m) {
        P1Element f{n, std::vector<double>(static_cast<std::size_t>(specfun::harmonic_count(ds, l)), 0.0)};
        f.coefficients[static_cast<std::size_t>(specfun::harmonic_offset(ds, l) + m - 1)] = 1.0;
        EXPECT_EQ(f.max_degree(), l);
        const Point x{1.1, -0.7, n == 3 ? 2.3 : 0.0};
        const double r = norm(x);
        const double want = oracle::real_sph_harm(ds, l, m, (1.0 / r) * x) *
                            oracle::bessel_j(l + nu, r) / std::pow(r, nu);
        EXPECT_NEAR(evaluate(f, x), want, 1e-12);
      }
    }
  }
}

TEST(P1, Validation) {
  EXPECT_EQ(kind_of([] { validate(P1Element{2, {1.0, 2.0}}); }), ErrorKind::kInvalidSpec);
  EXPECT_EQ(kind_of([] { validate(P1Element{4, {1.0}}); }), ErrorKind::kInvalidSpec);
  validate(P1Element{3, std::vector<double>(9, 0.5)});
}

TEST(T1, EvaluationAndGradient) {
  T1Element f{2, {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}}, {{0.5, 0.0}, {0.0, -0.5}}};
  std::mt19937_64 rng(4);
  for (int k = 0; k < 20; ++k) {
    const Point x = random_point(rng, 2, 5.0);
    EXPECT_NEAR(evaluate(f, x), std::cos(x[0]) + std::sin(x[1]), 1e-14);
    const Point g = gradient(f, x);
    EXPECT_NEAR(g[0], -std::sin(x[0]), 1e-14);
    EXPECT_NEAR(g[1], std::cos(x[1]), 1e-14);
  }
}

TEST(T1, WaveSampleRoundTrip) {
  const auto approx = p1_to_t1({2, 3, 2}, 40, 0.0, 0);
  const WaveSample s = to_wave_sample(approx.element);
  validate(s);
  EXPECT_EQ(s.spec.kind, FieldKind::kPlaneWave);
  EXPECT_EQ(s.spec.direction_count, 40);
  const T1Element back = from_wave_sample(s);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    const Point x = random_point(rng, 3, 6.0);
    EXPECT_NEAR(evaluate(s, x), evaluate(approx.element, x), 1e-12);
    EXPECT_NEAR(evaluate(back, x), evaluate(approx.element, x), 1e-12);
  }
  FieldSpec sphere;
  sphere.kind = FieldKind::kSphere;
  sphere.degree = 2;
  EXPECT_EQ(kind_of([&] { from_wave_sample(sample(sphere)); }), ErrorKind::kInvalidSpec);
}

TEST(PlaneWaveApprox, ZonalTwoDimensional) {
  const auto a = p1_to_t1({1, 0, 1}, 256, 10.0);
  EXPECT_LT(a.measured_error, 1e-3);
  EXPECT_EQ(a.element.directions.size(), 256u);
}

TEST(PlaneWaveApprox, OddDegreeGivesOddFunction) {
  const auto a = p1_to_t1({1, 1, 2}, 64, 0.0, 0);
  std::mt19937_64 rng(6);
  for (int k = 0; k < 20; ++k) {
    const Point x = random_point(rng, 2, 8.0);
    EXPECT_NEAR(evaluate(a.element, x), -evaluate(a.element, -1.0 * x), 1e-12);
  }
}

TEST(PlaneWaveApprox, ThreeDimensionalErrorDecreases) {
  double previous = INFINITY;
  for (int N = 16; N <= 512; N *= 2) {
    const double err = p1_to_t1({2, 2, 3}, N, 10.0, 10).measured_error;
    EXPECT_LT(err, previous) << "N = " << N;
    previous = err;
  }
  EXPECT_LT(previous, 1e-2);
}

TEST(PlaneWaveApprox, SatisfiesHelmholtz) {
  std::mt19937_64 rng(8);
  for (int n : {2, 3}) {
    const auto a = p1_to_t1({n - 1, 2, 1}, 64, 0.0, 0);
    for (int k = 0; k < 20; ++k) {
      const Point x = random_point(rng, n, 10.0);
      EXPECT_LT(helmholtz_residual([&](const Point& y) { return evaluate(a.element, y); }, n, x),
                1e-4);
    }
  }
  EXPECT_EQ(kind_of([] { p1_to_t1({1, 0, 1}, 0, 1.0); }), ErrorKind::kInvalidSpec);
}

TEST(Truncation, BoundCoversMeasuredError) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (int n : {2, 3}) {
    P1Element full{n, {}};
    for (int k = 0; k < specfun::harmonic_count(n - 1, 20); ++k) full.coefficients.push_back(g(rng));
    constexpr double K = 3.0;
    const Truncation t0 = truncate_p1(full, 10, K, 0);
    const Truncation t1 = truncate_p1(full, 10, K, 1);
    EXPECT_EQ(t0.truncated.max_degree(), 10);
    EXPECT_GE(t1.error_bound, t0.error_bound);
    EXPECT_LT(t0.error_bound, 1e-3);
    double measured = 0.0;
    for (int k = 0; k < 500; ++k) {
      Point x = random_point(rng, n, K);
      if (norm(x) > K) continue;
      measured = std::max(measured, std::abs(evaluate(full, x) - evaluate(t0.truncated, x)));
    }
    EXPECT_GE(t0.error_bound, measured);
    EXPECT_EQ(kind_of([&] { truncate_p1(full, 2, K, 0, 1e-6); }), ErrorKind::kCutoffTooSmall);
  }
}

TEST(Ball, EigenvalueAndProfile) {
  const auto b2 = ball_eigenfunction(2);
  EXPECT_NEAR(b2.lambda, oracle::first_bessel_zero(0.0), 1e-12);
  EXPECT_NEAR(b2.lambda, 2.404825557695773, 1e-12);
  const auto b3 = ball_eigenfunction(3);
  EXPECT_NEAR(b3.lambda, kPi, 1e-12);
  EXPECT_NEAR(evaluate(b2.element, {b2.lambda, 0.0, 0.0}), 0.0, 1e-12);
  EXPECT_NEAR(evaluate(b3.element, {0.0, 0.0, b3.lambda}), 0.0, 1e-12);
  for (int n : {2, 3}) {
    for (double r : {0.3, 1.0, 2.5, 3.7}) {
      const double fd = (ball_profile(n, r + 1e-6) - ball_profile(n, r - 1e-6)) / 2e-6;
      EXPECT_NEAR(ball_profile_derivative(n, r), fd, 1e-8);
    }
  }
  EXPECT_NEAR(ball_profile(3, 1.0), std::sqrt(2.0 / kPi) * std::sin(1.0), 1e-14);
  EXPECT_EQ(kind_of([] { ball_eigenfunction(4); }), ErrorKind::kUnsupportedDimension);
}

TEST(Witness, TwoDimensionalCircle) {
  const Witness w = t1_witness_for_sphere(2, 256);
  const WitnessReport& r = w.report;
  EXPECT_TRUE(r.verified);
  EXPECT_EQ(r.closed_components, 1);
  ASSERT_EQ(r.types.size(), 1u);
  EXPECT_EQ(r.types[0], TopologyType::circle());
  EXPECT_LT(r.approximation_error(), r.isotopy_margin());
  EXPECT_EQ(r.window.hi[0], r.lambda + 1.0);
}

TEST(Witness, TooFewDirectionsIsReported) {
  const Witness w = build_witness(2, 1);
  EXPECT_FALSE(w.report.verified);
  EXPECT_EQ(kind_of([] { t1_witness_for_sphere(2, 1); }), ErrorKind::kInsufficientDirections);
}

TEST(Stability, ShrinkingCircleLosesItsComponent) {
  const Field base{2, [](const Point& x) { return x[0] * x[0] + x[1] * x[1] - 1.0; }};
  const Field one{2, [](const Point&) { return 1.0; }};
  const std::vector<double> eps = {2.0, 0.1, 0.5};
  const StabilityReport r = isotopy_stability(base, one, Box::cube(2, 2.0), eps);
  EXPECT_EQ(r.base_types, std::vector<TopologyType>{TopologyType::circle()});
  EXPECT_EQ(r.eps, (std::vector<double>{0.1, 0.5, 2.0}));
  EXPECT_EQ(r.preserved, (std::vector<char>{1, 1, 0}));
  EXPECT_EQ(r.max_stable_eps, 0.5);
  EXPECT_TRUE(r.monotone);
  EXPECT_NEAR(r.gradient_margin, 2.0, 0.02);
  EXPECT_TRUE(r.types[2].empty());
}

TEST(Stability, NeedsABaseComponent) {
  const Field lin{2, [](const Point& x) { return x[0]; }};
  const std::vector<double> eps = {0.1};
  EXPECT_EQ(kind_of([&] { isotopy_stability(lin, lin, Box::cube(2, 2.0), eps); }),
            ErrorKind::kNoComponent);
}

TEST(Ensemble, SamplesSatisfyHelmholtz) {
  std::mt19937_64 rng(10);
  for (int n : {2, 3}) {
    for (FieldKind kind : {FieldKind::kPlaneWave, FieldKind::kP1Truncated}) {
      FieldSpec s;
      s.dim = n;
      s.kind = kind;
      s.direction_count = 64;
      s.max_degree = 20;
      s.seed = 11;
      const WaveSample w = sample(s);
      for (int k = 0; k < 10; ++k) {
        const Point x = random_point(rng, n, 5.0);
        EXPECT_LT(helmholtz_residual([&](const Point& y) { return evaluate(w, y); }, n, x), 1e-4);
      }
    }
  }
}
