#include "monowave/ensemble.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "monowave/error.hpp"
#include "monowave/parallel.hpp"
#include "monowave/quadrature.hpp"
#include "monowave/rng.hpp"
#include "monowave/specfun.hpp"

namespace monowave {
namespace {

void invalid(const std::string& message) {
  throw Error(ErrorKind::kInvalidSpec, message);
}

double evaluate_plane_wave(const WaveSample& s, const Point& x) {
  const bool flat2 = s.spec.dim == 2;
  double sum = 0.0;
  for (std::size_t j = 0; j < s.directions.size(); ++j) {
    const Point& xi = s.directions[j];
    const double phase =
        flat2 ? x[0] * xi[0] + x[1] * xi[1] : dot(x, xi);
    sum += s.coefficients[2 * j] * std::cos(phase) +
           s.coefficients[2 * j + 1] * std::sin(phase);
  }
  return sum / std::sqrt(static_cast<double>(s.directions.size()));
}

double evaluate_p1(const WaveSample& s, const Point& x) {
  const int n = s.spec.dim;
  const int L = s.spec.max_degree;
  const double r = n == 2 ? std::hypot(x[0], x[1]) : norm(x);
  Point u{1.0, 0.0, 0.0};
  if (r > 0.0) {
    u = (1.0 / r) * x;
    if (n == 2) u[2] = 0.0;
  }
  thread_local std::vector<double> harmonics;
  specfun::real_sph_harm_all(n - 1, L, u, harmonics);
  const auto radial =
      specfun::bessel_radial_sequence(specfun::order_for_dimension(n), L + 1, r);
  double sum = 0.0;
  for (int l = 0; l <= L; ++l) {
    const int offset = specfun::harmonic_offset(n - 1, l);
    const int d = specfun::harmonic_dimension(n - 1, l);
    double shell = 0.0;
    for (int m = 0; m < d; ++m) {
      shell += s.coefficients[offset + m] * harmonics[offset + m];
    }
    sum += shell * radial[l];
  }
  return unit_variance_constant(n) * sum;
}

double evaluate_sphere(const WaveSample& s, const Point& x) {
  const int l = s.spec.degree;
  thread_local std::vector<double> harmonics;
  specfun::real_sph_harm_all(2, l, x, harmonics);
  double sum = 0.0;
  const int offset = specfun::harmonic_offset(2, l);
  for (int m = 0; m < 2 * l + 1; ++m) {
    sum += s.coefficients[m] * harmonics[offset + m];
  }
  return std::sqrt(4.0 * kPi / (2 * l + 1)) * sum;
}

}  // namespace

void validate(const FieldSpec& spec) {
  if (spec.kind == FieldKind::kSphere) {
    if (spec.dim != 2) invalid("sphere ensemble is implemented on S^2 only");
    if (spec.degree < 0) invalid("sphere degree must be >= 0");
    return;
  }
  if (spec.dim != 2 && spec.dim != 3) {
    invalid("flat ensembles need dim in {2, 3}, got " + std::to_string(spec.dim));
  }
  if (spec.kind == FieldKind::kP1Truncated && spec.max_degree < 0) {
    invalid("P1 truncation degree L must be >= 0");
  }
  if (spec.kind == FieldKind::kPlaneWave) {
    if (spec.direction_count < 1) invalid("direction count N must be >= 1");
    if (!(spec.alpha >= 0.0 && spec.alpha <= 1.0)) {
      invalid("alpha must lie in [0, 1], got " + std::to_string(spec.alpha));
    }
  }
}

int truncation_degree(double radius) {
  return static_cast<int>(std::ceil(radius + 10.0 * std::cbrt(radius))) + 5;
}

WaveSample sample(const FieldSpec& spec) {
  validate(spec);
  WaveSample out;
  out.spec = spec;
  RandomStream stream(spec.seed, spec.stream);
  std::size_t count = 0;
  switch (spec.kind) {
    case FieldKind::kPlaneWave: {
      out.directions =
          spec.directions == DirectionScheme::kEquidistributed
              ? equidistributed_directions(spec.dim, spec.direction_count)
              : random_directions(spec.dim, spec.direction_count, stream);
      if (spec.alpha < 1.0) {
        // Radius density proportional to s^{n-1} on [alpha, 1].
        const double lo = std::pow(spec.alpha, spec.dim);
        for (Point& xi : out.directions) {
          const double u = stream.uniform();
          xi = std::pow(lo + u * (1.0 - lo), 1.0 / spec.dim) * xi;
        }
      }
      count = 2 * out.directions.size();
      break;
    }
    case FieldKind::kP1Truncated:
      count = specfun::harmonic_count(spec.dim - 1, spec.max_degree);
      break;
    case FieldKind::kSphere:
      count = 2 * spec.degree + 1;
      break;
  }
  out.coefficients.resize(count);
  for (double& c : out.coefficients) c = stream.gaussian();
  return out;
}

void validate(const WaveSample& s) {
  validate(s.spec);
  std::size_t expected = 0;
  switch (s.spec.kind) {
    case FieldKind::kPlaneWave:
      if (s.directions.empty()) invalid("plane-wave sample has no directions");
      expected = 2 * s.directions.size();
      for (const Point& xi : s.directions) {
        const double len = norm(xi);
        if (!(len <= 1.0 + 1e-12) || !(len >= s.spec.alpha - 1e-12)) {
          invalid("frequency vector outside the band [alpha, 1]");
        }
      }
      break;
    case FieldKind::kP1Truncated:
      expected = specfun::harmonic_count(s.spec.dim - 1, s.spec.max_degree);
      break;
    case FieldKind::kSphere:
      expected = 2 * s.spec.degree + 1;
      break;
  }
  if (s.coefficients.size() != expected) {
    invalid("sample has " + std::to_string(s.coefficients.size()) +
            " coefficients, expected " + std::to_string(expected));
  }
}

double evaluate(const WaveSample& s, const Point& x) {
  switch (s.spec.kind) {
    case FieldKind::kPlaneWave: return evaluate_plane_wave(s, x);
    case FieldKind::kP1Truncated: return evaluate_p1(s, x);
    case FieldKind::kSphere: return evaluate_sphere(s, x);
  }
  return 0.0;
}

Field as_field(const WaveSample& s) {
  auto shared = std::make_shared<const WaveSample>(s);
  return Field{s.spec.dim,
               [shared](const Point& x) { return evaluate(*shared, x); }};
}

double unit_variance_constant(int n) {
  return std::pow(kTwoPi, 0.5 * n) / std::sqrt(specfun::sphere_volume(n - 1));
}

double covariance_exact(int n, double r, double alpha) {
  if (!(r >= 0.0)) throw Error(ErrorKind::kDomain, "distance must be >= 0");
  const specfun::BesselOrder nu = specfun::order_for_dimension(n);
  const double at_zero = specfun::bessel_j_scaled(nu, 0.0);
  auto kernel = [&](double t) { return specfun::bessel_j_scaled(nu, t) / at_zero; };
  if (alpha >= 1.0 || r == 0.0) return kernel(r);
  const double shell = (1.0 - std::pow(alpha, n)) / n;
  const double integral = quadrature::integrate(
      [&](double s) { return std::pow(s, n - 1) * kernel(s * r); }, alpha, 1.0);
  return integral / shell;
}

std::vector<CovarianceEstimate> covariance_empirical(
    const FieldSpec& spec, std::span<const double> r_values, int trials,
    const Point& base, int threads) {
  validate(spec);
  if (spec.kind == FieldKind::kSphere) {
    invalid("covariance_empirical applies to flat ensembles");
  }
  if (trials < 2) invalid("covariance_empirical needs at least 2 trials");
  const std::size_t k = r_values.size();
  std::vector<double> products(static_cast<std::size_t>(trials) * k);
  parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
    FieldSpec trial = spec;
    trial.stream = t;
    const WaveSample s = sample(trial);
    const double f0 = evaluate(s, base);
    for (std::size_t i = 0; i < k; ++i) {
      Point x = base;
      x[0] += r_values[i];
      products[t * k + i] = f0 * evaluate(s, x);
    }
  });
  std::vector<CovarianceEstimate> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    double mean = 0.0;
    for (int t = 0; t < trials; ++t) mean += products[t * k + i];
    mean /= trials;
    double var = 0.0;
    for (int t = 0; t < trials; ++t) {
      const double d = products[t * k + i] - mean;
      var += d * d;
    }
    var /= (trials - 1);
    out[i] = {r_values[i], mean, std::sqrt(var / trials)};
  }
  return out;
}

}  // namespace monowave
