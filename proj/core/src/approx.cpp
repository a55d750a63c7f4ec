#include "monowave/approx.hpp"

#include <cmath>
#include <memory>
#include <sstream>
#include <string>

#include "monowave/directions.hpp"
#include "monowave/error.hpp"
#include "monowave/parallel.hpp"
#include "monowave/pipeline.hpp"

namespace monowave {
namespace {

constexpr std::complex<double> kMinusIPower[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};

void check_dim(int n) {
  if (n != 2 && n != 3) {
    throw Error(ErrorKind::kUnsupportedDimension,
                "expected dimension 2 or 3, got " + std::to_string(n));
  }
}

// Lattice points of step radius / steps inside the closed ball of that radius.
std::vector<Point> ball_lattice(int n, double radius, int steps) {
  std::vector<Point> points;
  const double h = radius / steps;
  const int kz = n == 3 ? steps : 0;
  for (int k = -kz; k <= kz; ++k) {
    for (int j = -steps; j <= steps; ++j) {
      for (int i = -steps; i <= steps; ++i) {
        if (i * i + j * j + k * k > steps * steps) continue;
        points.push_back({h * i, h * j, h * k});
      }
    }
  }
  return points;
}

// log of r^p / (2^mu Gamma(mu + 1)).
double log_envelope(double r, double p, double mu) {
  return p * std::log(r) - mu * std::log(2.0) - std::lgamma(mu + 1.0);
}

Point fd_gradient(const Field& f, const Point& x, double h) {
  Point g{};
  for (int a = 0; a < f.dim; ++a) {
    Point xp = x;
    Point xm = x;
    xp[a] += h;
    xm[a] -= h;
    g[a] = (f(xp) - f(xm)) / (2 * h);
  }
  return g;
}

std::vector<TopologyType> sorted(std::vector<TopologyType> types) {
  std::sort(types.begin(), types.end());
  return types;
}

}  // namespace

int P1Element::max_degree() const {
  if (coefficients.empty()) return -1;
  const auto count = static_cast<int>(coefficients.size());
  if (dim == 2) return (count - 1) / 2;
  return static_cast<int>(std::lround(std::sqrt(static_cast<double>(count)))) - 1;
}

void validate(const P1Element& f) {
  if (f.dim != 2 && f.dim != 3) {
    throw Error(ErrorKind::kInvalidSpec, "P1 element dimension must be 2 or 3");
  }
  const int L = f.max_degree();
  if (L >= 0 && specfun::harmonic_count(f.dim - 1, L) != static_cast<int>(f.coefficients.size())) {
    throw Error(ErrorKind::kInvalidSpec, "P1 coefficient count does not fill whole degrees");
  }
}

double evaluate(const P1Element& f, const Point& x) {
  const int n = f.dim;
  const int L = f.max_degree();
  if (L < 0) return 0.0;
  const double r = n == 2 ? std::hypot(x[0], x[1]) : norm(x);
  Point u{1.0, 0.0, 0.0};
  if (r > 0.0) {
    u = (1.0 / r) * x;
    if (n == 2) u[2] = 0.0;
  }
  thread_local std::vector<double> harmonics;
  specfun::real_sph_harm_all(n - 1, L, u, harmonics);
  const auto radial = specfun::bessel_radial_sequence(specfun::order_for_dimension(n), L + 1, r);
  double sum = 0.0;
  for (int l = 0; l <= L; ++l) {
    const int offset = specfun::harmonic_offset(n - 1, l);
    const int d = specfun::harmonic_dimension(n - 1, l);
    double shell = 0.0;
    for (int m = 0; m < d; ++m) shell += f.coefficients[offset + m] * harmonics[offset + m];
    sum += shell * radial[l];
  }
  return sum;
}

double evaluate(const T1Element& f, const Point& x) {
  double sum = 0.0;
  for (std::size_t j = 0; j < f.directions.size(); ++j) {
    const double phase = dot(x, f.directions[j]);
    sum += f.weights[j].real() * std::cos(phase) - f.weights[j].imag() * std::sin(phase);
  }
  return 2.0 * sum;
}

Point gradient(const T1Element& f, const Point& x) {
  Point g{};
  for (std::size_t j = 0; j < f.directions.size(); ++j) {
    const double phase = dot(x, f.directions[j]);
    // d/dx 2 Re(w e^{i phase}) = -2 Im(w e^{i phase}) xi.
    const double im =
        f.weights[j].real() * std::sin(phase) + f.weights[j].imag() * std::cos(phase);
    g = g + (-2.0 * im) * f.directions[j];
  }
  return g;
}

Field as_field(const T1Element& f) {
  auto shared = std::make_shared<const T1Element>(f);
  return Field{f.dim, [shared](const Point& x) { return evaluate(*shared, x); }};
}

WaveSample to_wave_sample(const T1Element& f) {
  check_dim(f.dim);
  WaveSample s;
  s.spec.dim = f.dim;
  s.spec.kind = FieldKind::kPlaneWave;
  s.spec.direction_count = static_cast<int>(f.directions.size());
  s.spec.alpha = 1.0;
  s.spec.directions = DirectionScheme::kEquidistributed;
  s.directions = f.directions;
  const double root = std::sqrt(static_cast<double>(f.directions.size()));
  s.coefficients.reserve(2 * f.directions.size());
  for (const auto& w : f.weights) {
    s.coefficients.push_back(2.0 * root * w.real());
    s.coefficients.push_back(-2.0 * root * w.imag());
  }
  validate(s);
  return s;
}

T1Element from_wave_sample(const WaveSample& s) {
  validate(s);
  if (s.spec.kind != FieldKind::kPlaneWave) {
    throw Error(ErrorKind::kInvalidSpec, "only plane-wave samples are T1 elements");
  }
  T1Element f;
  f.dim = s.spec.dim;
  f.directions = s.directions;
  const double scale = 0.5 / std::sqrt(static_cast<double>(s.directions.size()));
  for (std::size_t j = 0; j < s.directions.size(); ++j) {
    f.weights.emplace_back(scale * s.coefficients[2 * j], -scale * s.coefficients[2 * j + 1]);
  }
  return f;
}

Truncation truncate_p1(const P1Element& full, int L, double K, int t_order, double epsilon) {
  validate(full);
  if (L < 0) throw Error(ErrorKind::kDomain, "cutoff degree must be >= 0");
  if (!(K >= 0.0)) throw Error(ErrorKind::kDomain, "radius must be >= 0");
  if (t_order != 0 && t_order != 1) {
    throw Error(ErrorKind::kDomain, "only C^0 and C^1 bounds are implemented");
  }
  const int n = full.dim;
  const double nu = specfun::order_for_dimension(n).value();
  const double vol = specfun::sphere_volume(n - 1);
  const double global = n == 2 ? 1.0 : std::sqrt(2.0 / kPi);
  Truncation out;
  out.truncated.dim = n;
  const int keep = std::min(L, full.max_degree());
  if (keep >= 0) {
    const int count = specfun::harmonic_count(n - 1, keep);
    out.truncated.coefficients.assign(full.coefficients.begin(),
                                      full.coefficients.begin() + count);
  }
  double value_bound = 0.0;
  double gradient_bound = 0.0;
  for (int l = L + 1; l <= full.max_degree(); ++l) {
    const int offset = specfun::harmonic_offset(n - 1, l);
    const int d = specfun::harmonic_dimension(n - 1, l);
    double norm2 = 0.0;
    for (int m = 0; m < d; ++m) norm2 += full.coefficients[offset + m] * full.coefficients[offset + m];
    if (norm2 == 0.0) continue;
    const double c = std::sqrt(norm2) * std::sqrt(d / vol);
    const double mu = l + nu;
    if (K == 0.0) continue;  // l >= 1 terms vanish at the origin with their gradients
    value_bound += c * std::min(global, std::exp(log_envelope(K, l, mu)));
    if (t_order == 1) {
      const double r_over = std::exp(log_envelope(K, l - 1, mu));
      const double r_prime = l * r_over + std::exp(log_envelope(K, l + 1, mu + 1.0));
      const double angular = std::sqrt(static_cast<double>(l) * (l + n - 2));
      gradient_bound += c * (r_prime + angular * r_over);
    }
  }
  out.error_bound = t_order == 0 ? value_bound : std::max(value_bound, gradient_bound);
  if (out.error_bound > epsilon) {
    std::ostringstream msg;
    msg << "tail bound " << out.error_bound << " exceeds epsilon " << epsilon
        << " at cutoff L = " << L;
    throw Error(ErrorKind::kCutoffTooSmall, msg.str());
  }
  return out;
}

T1Approximation p1_to_t1(const specfun::HarmonicIndex& idx, int N, double K,
                         int samples_per_radius) {
  specfun::validate(idx);
  if (N < 1) throw Error(ErrorKind::kInvalidSpec, "direction count N must be >= 1");
  const int n = idx.dim_sphere + 1;
  const double vol = specfun::sphere_volume(idx.dim_sphere);
  T1Approximation out;
  T1Element& f = out.element;
  f.dim = n;
  f.directions = equidistributed_directions(n, N);
  const std::complex<double> phase = kMinusIPower[idx.ell % 4];
  for (const Point& xi : f.directions) {
    f.weights.push_back(phase * (vol * specfun::real_sph_harm(idx, xi) / (2.0 * N)));
  }
  if (K > 0.0 && samples_per_radius > 0) {
    for (const Point& x : ball_lattice(n, K, samples_per_radius)) {
      const double err = std::abs(evaluate(f, x) - specfun::ft_sph_harm_profile(idx, x));
      out.measured_error = std::max(out.measured_error, err);
    }
  }
  return out;
}

double ball_profile(int n, double r) {
  return specfun::bessel_j_scaled(specfun::order_for_dimension(n), r);
}

double ball_profile_derivative(int n, double r) {
  const double nu = specfun::order_for_dimension(n).value();
  return -r * specfun::bessel_j_scaled(specfun::BesselOrder(nu + 1.0), r);
}

BallEigenfunction ball_eigenfunction(int n) {
  check_dim(n);
  const specfun::BesselOrder nu = specfun::order_for_dimension(n);
  BallEigenfunction out;
  out.dim = n;
  out.element.dim = n;
  out.element.coefficients = {std::sqrt(specfun::sphere_volume(n - 1))};
  double lo = 0.5;
  double hi = lo;
  while (specfun::bessel_j(nu, hi) > 0.0) {
    lo = hi;
    hi += 0.05;
  }
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (specfun::bessel_j(nu, mid) > 0.0 ? lo : hi) = mid;
  }
  out.lambda = 0.5 * (lo + hi);
  return out;
}

Witness build_witness(int n, int N, double spacing, int threads) {
  check_dim(n);
  const BallEigenfunction ball = ball_eigenfunction(n);
  const double lambda = ball.lambda;
  const double radius = lambda + 1.0;

  Witness out;
  const specfun::HarmonicIndex idx{n - 1, 0, 1};
  out.element = p1_to_t1(idx, N, 0.0, 0).element;
  // p1_to_t1 targets (2 pi)^{n/2} Y_0 h with Y_0 = 1/sqrt(vol).
  const double scale =
      std::sqrt(specfun::sphere_volume(n - 1)) / std::pow(kTwoPi, 0.5 * n);
  for (auto& w : out.element.weights) w *= scale;

  WitnessReport& rep = out.report;
  rep.dim = n;
  rep.directions = N;
  rep.lambda = lambda;
  rep.window = Box::cube(n, radius);
  rep.spacing = spacing;

  const auto lattice = ball_lattice(n, radius, 40);
  std::vector<double> value_err(lattice.size());
  std::vector<double> grad_err(lattice.size());
  parallel_for(lattice.size(), threads, [&](std::size_t p) {
    const Point& x = lattice[p];
    const double r = norm(x);
    value_err[p] = std::abs(evaluate(out.element, x) - ball_profile(n, r));
    Point exact{};
    if (r > 0.0) exact = (ball_profile_derivative(n, r) / r) * x;
    grad_err[p] = norm(gradient(out.element, x) - exact);
  });
  for (std::size_t p = 0; p < lattice.size(); ++p) {
    rep.value_error = std::max(rep.value_error, value_err[p]);
    rep.gradient_error = std::max(rep.gradient_error, grad_err[p]);
  }

  constexpr int kRadial = 4000;
  rep.value_margin = std::numeric_limits<double>::infinity();
  rep.gradient_margin = std::numeric_limits<double>::infinity();
  for (int s = 0; s <= kRadial; ++s) {
    const double r = radius * s / kRadial;
    if (std::abs(r - lambda) <= 0.5) {
      rep.gradient_margin = std::min(rep.gradient_margin, std::abs(ball_profile_derivative(n, r)));
    } else {
      rep.value_margin = std::min(rep.value_margin, std::abs(ball_profile(n, r)));
    }
  }

  const WindowCensus c = census(to_wave_sample(out.element), rep.window, spacing, threads);
  rep.closed_components = c.interior_count();
  rep.boundary_components = c.boundary_components;
  rep.unclassified = c.unclassified;
  rep.types = c.interior;
  const TopologyType expected = n == 2 ? TopologyType::circle() : TopologyType::surface(0);
  rep.verified = rep.approximation_error() < rep.isotopy_margin() &&
                 rep.closed_components == 1 && rep.unclassified == 0 &&
                 rep.types.front() == expected;
  return out;
}

Witness t1_witness_for_sphere(int n, int N, double spacing, int threads) {
  Witness w = build_witness(n, N, spacing, threads);
  if (!w.report.verified) {
    std::ostringstream msg;
    msg << "N = " << N << " does not certify the witness: approximation error "
        << w.report.approximation_error() << ", isotopy margin " << w.report.isotopy_margin()
        << ", closed components " << w.report.closed_components;
    throw Error(ErrorKind::kInsufficientDirections, msg.str());
  }
  return w;
}

StabilityReport isotopy_stability(const Field& base, const Field& perturbation,
                                  const Box& window, std::span<const double> eps_schedule,
                                  double spacing, int threads) {
  if (base.dim != perturbation.dim || base.dim != window.dim) {
    throw Error(ErrorKind::kUnsupportedDimension, "base, perturbation and window dimensions differ");
  }
  StabilityReport rep;
  const ScalarGrid grid = rasterize(base, window, spacing, threads);
  const auto components = extract_components(grid);
  const WindowCensus base_census = census(grid);
  if (base_census.interior_count() == 0) {
    throw Error(ErrorKind::kNoComponent, "base field has no closed component in the window");
  }
  rep.base_types = sorted(base_census.interior);

  rep.gradient_margin = std::numeric_limits<double>::infinity();
  for (const NodalComponent& c : components) {
    if (c.touches_boundary) continue;
    const auto& vertices = c.dim == 2 ? c.polyline : c.mesh.vertices;
    for (const Point& v : vertices) {
      rep.gradient_margin = std::min(rep.gradient_margin, norm(fd_gradient(base, v, 1e-6)));
    }
  }

  rep.eps.assign(eps_schedule.begin(), eps_schedule.end());
  std::sort(rep.eps.begin(), rep.eps.end());
  rep.preserved.assign(rep.eps.size(), 0);
  rep.types.resize(rep.eps.size());
  std::vector<int> unclassified(rep.eps.size(), 0);
  parallel_for(rep.eps.size(), threads, [&](std::size_t e) {
    const double eps = rep.eps[e];
    const Field sum{base.dim, [&, eps](const Point& x) { return base(x) + eps * perturbation(x); }};
    const WindowCensus c = census(sum, window, spacing, 1);
    rep.types[e] = sorted(c.interior);
    unclassified[e] = c.unclassified;
  });
  bool prefix = true;
  for (std::size_t e = 0; e < rep.eps.size(); ++e) {
    rep.preserved[e] =
        rep.types[e] == rep.base_types && unclassified[e] == base_census.unclassified;
    if (rep.preserved[e] && prefix) rep.max_stable_eps = rep.eps[e];
    if (!rep.preserved[e]) prefix = false;
    if (rep.preserved[e] && !prefix) rep.monotone = false;
  }
  return rep;
}

}  // namespace monowave
