#include "monowave/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "monowave/error.hpp"

namespace monowave::specfun {
namespace {

// Below this argument the ascending series is used; above it, Miller's
// backward recurrence normalized by the Neumann series.
constexpr double kSeriesLimit = 12.0;
constexpr double kUnitTolerance = 1e-12;

void require_argument(double x, const char* what) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw Error(ErrorKind::kDomain,
                std::string(what) + " requires a finite argument >= 0, got " +
                    std::to_string(x));
  }
}

// sum_k (-x^2/4)^k / (k! (nu+1)_k), the series of Gamma(nu+1) (2/x)^nu J_nu.
long double reduced_series(long double nu, long double x) {
  const long double q = -0.25L * x * x;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<long double>(k) * (nu + k));
    sum += term;
    if (std::fabs(term) <= 1e-21L * std::fabs(sum) && k > 0.5L * x) break;
  }
  return sum;
}

double series_j(double nu, double x) {
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const long double lead = std::exp(static_cast<long double>(nu) *
                                        std::log(0.5L * x) -
                                    std::lgamma(static_cast<long double>(nu) + 1));
  return static_cast<double>(lead * reduced_series(nu, x));
}

double series_scaled(double nu, double r) {
  const long double lead =
      std::exp(-static_cast<long double>(nu) * std::log(2.0L) -
               std::lgamma(static_cast<long double>(nu) + 1));
  return static_cast<double>(lead * reduced_series(nu, r));
}

// J_{mu+k}(x), k = 0..top, for x > 0 and mu in [0, 1).
std::vector<long double> miller(long double mu, long double x, int top) {
  const int start = std::max(top, static_cast<int>(std::ceil(x))) + 16 +
                    static_cast<int>(std::ceil(8.0L * std::cbrt(x)));
  std::vector<long double> j(static_cast<std::size_t>(start) + 2, 0.0L);
  j[start] = 1e-30L;
  for (int k = start; k >= 1; --k) {
    j[k - 1] = 2.0L * (mu + k) / x * j[k] - j[k + 1];
    if (std::fabs(j[k - 1]) > 1e200L) {
      for (int i = k - 1; i <= start; ++i) j[i] *= 1e-200L;
    }
  }
  // Neumann series: (x/2)^mu = sum_m (mu + 2m) Gamma(mu+m)/m! J_{mu+2m}(x).
  long double sum = std::tgamma(mu + 1.0L) * j[0];
  long double g = std::tgamma(mu + 1.0L);  // Gamma(mu+m)/m! at m = 1
  for (int m = 1; 2 * m <= start; ++m) {
    sum += (mu + 2 * m) * g * j[2 * m];
    g *= (mu + m) / static_cast<long double>(m + 1);
  }
  const long double scale = std::pow(0.5L * x, mu) / sum;
  j.resize(static_cast<std::size_t>(top) + 1);
  for (auto& v : j) v *= scale;
  return j;
}

double chebyshev_t(int ell, double t) {
  double prev = 1.0, cur = t;
  if (ell == 0) return prev;
  for (int k = 1; k < ell; ++k) {
    const double next = 2.0 * t * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

void require_unit(const Point& p, int dim_sphere) {
  const double r = dim_sphere == 1 ? std::hypot(p[0], p[1]) : norm(p);
  if (!(std::fabs(r - 1.0) <= kUnitTolerance)) {
    throw Error(ErrorKind::kDomain,
                "spherical harmonic needs a unit vector, |p| = " +
                    std::to_string(r));
  }
}

}  // namespace

BesselOrder::BesselOrder(double nu) : nu_(nu) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) {
    throw Error(ErrorKind::kDomain,
                "Bessel order must be >= 0, got " + std::to_string(nu));
  }
}

BesselOrder order_for_dimension(int n) {
  if (n < 2) {
    throw Error(ErrorKind::kUnsupportedDimension,
                "ambient dimension must be >= 2, got " + std::to_string(n));
  }
  return BesselOrder(0.5 * (n - 2));
}

int harmonic_dimension(int dim_sphere, int ell) {
  if (ell < 0) throw Error(ErrorKind::kDomain, "negative harmonic degree");
  switch (dim_sphere) {
    case 1: return ell == 0 ? 1 : 2;
    case 2: return 2 * ell + 1;
    default:
      throw Error(ErrorKind::kUnsupportedDimension,
                  "spherical harmonics on S^" + std::to_string(dim_sphere));
  }
}

int harmonic_offset(int dim_sphere, int ell) {
  harmonic_dimension(dim_sphere, ell);
  if (dim_sphere == 1) return ell == 0 ? 0 : 2 * ell - 1;
  return ell * ell;
}

int harmonic_count(int dim_sphere, int max_degree) {
  return harmonic_offset(dim_sphere, max_degree + 1);
}

void validate(const HarmonicIndex& idx) {
  const int d = harmonic_dimension(idx.dim_sphere, idx.ell);
  if (idx.m < 1 || idx.m > d) {
    throw Error(ErrorKind::kDomain, "harmonic index m = " +
                                        std::to_string(idx.m) + " outside 1.." +
                                        std::to_string(d));
  }
}

double sphere_volume(int k) {
  // 2 pi^{(k+1)/2} / Gamma((k+1)/2)
  return 2.0 * std::pow(kPi, 0.5 * (k + 1)) / std::tgamma(0.5 * (k + 1));
}

double bessel_j(BesselOrder order, double x) {
  require_argument(x, "bessel_j");
  const double nu = order.value();
  if (x <= kSeriesLimit) return series_j(nu, x);
  const double whole = std::floor(nu);
  const auto j = miller(nu - whole, x, static_cast<int>(whole));
  return static_cast<double>(j.back());
}

std::vector<double> bessel_j_sequence(BesselOrder first, int count, double x) {
  require_argument(x, "bessel_j_sequence");
  std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
  if (count <= 0) return out;
  const double nu = first.value();
  if (x <= kSeriesLimit) {
    for (int k = 0; k < count; ++k) out[k] = series_j(nu + k, x);
    return out;
  }
  const double whole = std::floor(nu);
  const int base = static_cast<int>(whole);
  const auto j = miller(nu - whole, x, base + count - 1);
  for (int k = 0; k < count; ++k) out[k] = static_cast<double>(j[base + k]);
  return out;
}

double bessel_j_scaled(BesselOrder order, double r) {
  require_argument(r, "bessel_j_scaled");
  const double nu = order.value();
  if (r <= kSeriesLimit) return series_scaled(nu, r);
  return bessel_j(order, r) / std::pow(r, nu);
}

std::vector<double> bessel_radial_sequence(BesselOrder base, int count,
                                           double r) {
  require_argument(r, "bessel_radial_sequence");
  std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
  const double nu = base.value();
  if (r <= kSeriesLimit) {
    double rl = 1.0;
    for (int l = 0; l < count; ++l) {
      out[l] = rl * series_scaled(nu + l, r);
      rl *= r;
    }
    return out;
  }
  out = bessel_j_sequence(base, count, r);
  const double inv = std::pow(r, -nu);
  for (auto& v : out) v *= inv;
  return out;
}

double gegenbauer(int ell, double nu, double t) {
  if (ell < 0) throw Error(ErrorKind::kDomain, "negative Gegenbauer degree");
  if (!(nu >= 0.0)) throw Error(ErrorKind::kDomain, "Gegenbauer nu < 0");
  if (!(std::fabs(t) <= 1.0)) {
    throw Error(ErrorKind::kDomain,
                "Gegenbauer argument outside [-1, 1]: " + std::to_string(t));
  }
  if (ell == 0) return 1.0;
  if (nu == 0.0) return 2.0 / ell * chebyshev_t(ell, t);
  double prev = 1.0;
  double cur = 2.0 * nu * t;
  for (int k = 2; k <= ell; ++k) {
    const double next =
        (2.0 * t * (k + nu - 1.0) * cur - (k + 2.0 * nu - 2.0) * prev) / k;
    prev = cur;
    cur = next;
  }
  return cur;
}

double zonal(int ell, int n, double t) {
  if (n < 2) {
    throw Error(ErrorKind::kUnsupportedDimension,
                "zonal harmonic needs n >= 2, got " + std::to_string(n));
  }
  if (!(std::fabs(t) <= 1.0)) {
    throw Error(ErrorKind::kDomain,
                "zonal argument outside [-1, 1]: " + std::to_string(t));
  }
  if (n == 2) return chebyshev_t(ell, t);
  const double nu = 0.5 * (n - 2);
  const double at_pole = gegenbauer(ell, nu, 1.0);
  if (at_pole == 0.0) {
    throw Error(ErrorKind::kDegenerateOrder, "C_l^nu(1) vanishes");
  }
  return gegenbauer(ell, nu, t) / at_pole;
}

void real_sph_harm_all(int dim_sphere, int max_degree, const Point& unit,
                       std::vector<double>& out) {
  require_unit(unit, dim_sphere);
  out.assign(static_cast<std::size_t>(harmonic_count(dim_sphere, max_degree)),
             0.0);
  if (dim_sphere == 1) {
    const double theta = std::atan2(unit[1], unit[0]);
    out[0] = 1.0 / std::sqrt(kTwoPi);
    const double c = 1.0 / std::sqrt(kPi);
    for (int l = 1; l <= max_degree; ++l) {
      out[2 * l - 1] = c * std::cos(l * theta);
      out[2 * l] = c * std::sin(l * theta);
    }
    return;
  }

  const double z = std::clamp(unit[2], -1.0, 1.0);
  const double s = std::sqrt(std::max(0.0, (1.0 - z) * (1.0 + z)));
  const double phi = std::atan2(unit[1], unit[0]);
  const int size = max_degree + 1;
  // Normalized associated Legendre values p[l][m] including N.
  std::vector<double> p(static_cast<std::size_t>(size * size), 0.0);
  auto at = [&](int l, int m) -> double& { return p[l * size + m]; };
  double pmm = 1.0 / std::sqrt(4.0 * kPi);
  for (int m = 0; m <= max_degree; ++m) {
    if (m > 0) pmm *= std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
    at(m, m) = pmm;
    if (m + 1 <= max_degree) at(m + 1, m) = std::sqrt(2.0 * m + 3.0) * z * pmm;
    for (int l = m + 2; l <= max_degree; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (1.0 * l * l - m * m));
      const double b = std::sqrt(((l - 1.0) * (l - 1.0) - m * m) /
                                 (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
      at(l, m) = a * (z * at(l - 1, m) - b * at(l - 2, m));
    }
  }
  for (int l = 0; l <= max_degree; ++l) {
    const int base = l * l + l;  // flat position of mu = 0
    out[base] = at(l, 0);
    for (int mu = 1; mu <= l; ++mu) {
      const double v = std::sqrt(2.0) * at(l, mu);
      out[base + mu] = v * std::cos(mu * phi);
      out[base - mu] = v * std::sin(mu * phi);
    }
  }
}

double real_sph_harm(const HarmonicIndex& idx, const Point& unit) {
  validate(idx);
  require_unit(unit, idx.dim_sphere);
  if (idx.dim_sphere == 1) {
    if (idx.ell == 0) return 1.0 / std::sqrt(kTwoPi);
    const double theta = std::atan2(unit[1], unit[0]);
    const double c = 1.0 / std::sqrt(kPi);
    return idx.m == 1 ? c * std::cos(idx.ell * theta)
                      : c * std::sin(idx.ell * theta);
  }
  std::vector<double> all;
  real_sph_harm_all(2, idx.ell, unit, all);
  return all[harmonic_offset(2, idx.ell) + idx.m - 1];
}

namespace {

Point direction_of(const Point& x, int n, double r) {
  if (r == 0.0) return {1.0, 0.0, 0.0};
  Point u = (1.0 / r) * x;
  if (n == 2) u[2] = 0.0;
  return u;
}

double radial_factor(int ell, double nu, double r) {
  if (r <= kSeriesLimit) return std::pow(r, ell) * series_scaled(nu + ell, r);
  return bessel_j(BesselOrder(nu + ell), r) / std::pow(r, nu);
}

}  // namespace

double ft_sph_harm_profile(const HarmonicIndex& idx, const Point& x) {
  validate(idx);
  const int n = idx.dim_sphere + 1;
  if (n != 2 && n != 3) {
    throw Error(ErrorKind::kUnsupportedDimension,
                "ft_sph_harm supports n in {2, 3}, got " + std::to_string(n));
  }
  const double nu = 0.5 * (n - 2);
  const double r = n == 2 ? std::hypot(x[0], x[1]) : norm(x);
  if (r == 0.0 && idx.ell > 0) return 0.0;
  const Point u = direction_of(x, n, r);
  return std::pow(kTwoPi, 0.5 * n) * real_sph_harm(idx, u) *
         radial_factor(idx.ell, nu, r);
}

std::complex<double> ft_sph_harm(const HarmonicIndex& idx, const Point& x) {
  const double profile = ft_sph_harm_profile(idx, x);
  // (-i)^l
  static constexpr std::complex<double> kPhase[4] = {
      {1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  return kPhase[idx.ell % 4] * profile;
}

}  // namespace monowave::specfun
