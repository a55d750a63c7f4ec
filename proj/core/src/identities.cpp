#include "monowave/identities.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

#include "monowave/error.hpp"
#include "monowave/quadrature.hpp"
#include "monowave/rng.hpp"
#include "monowave/specfun.hpp"

namespace monowave {
namespace {

using specfun::BesselOrder;
using specfun::HarmonicIndex;

constexpr std::uint64_t kSuiteSeed = 0x5EEDF00D;

class Check {
 public:
  Check(std::string name, double tolerance) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
  }
  void record(double residual) {
    ++result_.evaluations;
    if (!(residual <= result_.max_residual)) {
      result_.max_residual = std::isnan(residual) ? INFINITY : residual;
    }
  }
  IdentityCheck finish() {
    result_.passed = result_.max_residual <= result_.tolerance;
    return result_;
  }

 private:
  IdentityCheck result_;
};

std::vector<double> radii(const SpecfunSuiteOptions& o) {
  std::vector<double> out;
  for (int k = 1; k <= o.radii; ++k) out.push_back(o.max_radius * k / o.radii);
  return out;
}

Point random_unit(int n, RandomStream& stream) {
  for (;;) {
    Point p{stream.gaussian(), stream.gaussian(), n == 3 ? stream.gaussian() : 0.0};
    const double len = norm(p);
    if (len > 1e-8) return (1.0 / len) * p;
  }
}

std::vector<HarmonicIndex> harmonics(int dim_sphere, int max_degree) {
  std::vector<HarmonicIndex> out;
  for (int l = 0; l <= max_degree; ++l) {
    for (int m = 1; m <= specfun::harmonic_dimension(dim_sphere, l); ++m) {
      out.push_back({dim_sphere, l, m});
    }
  }
  return out;
}

IdentityCheck check_ft(const SpecfunSuiteOptions& o) {
  Check check("ft_sph_harm", 1e-6);
  RandomStream stream(kSuiteSeed, 1);
  const double fault = o.inject_fault ? 1.0 + 1e-3 : 1.0;
  const int band = static_cast<int>(std::ceil(o.max_radius)) + o.max_degree;
  for (int n : {2, 3}) {
    const auto rule = quadrature::rule_for_band(n - 1, band);
    std::vector<Point> dirs;
    for (int k = 0; k < 3; ++k) dirs.push_back(random_unit(n, stream));
    for (const HarmonicIndex& idx : harmonics(n - 1, o.max_degree)) {
      for (double r : radii(o)) {
        for (const Point& u : dirs) {
          const Point x = r * u;
          const auto closed = fault * specfun::ft_sph_harm(idx, x);
          const auto quad = quadrature::ft_sph_harm_by_quadrature(idx, x, rule);
          check.record(std::abs(closed - quad));
        }
      }
    }
  }
  return check.finish();
}

std::complex<double> closed_lambda(int n, int l, double r) {
  constexpr std::complex<double> phase[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  const double nu = specfun::order_for_dimension(n).value();
  const double radial = r == 0.0 ? (l == 0 ? specfun::bessel_j_scaled(BesselOrder(nu), 0.0) : 0.0)
                                 : specfun::bessel_j(BesselOrder(nu + l), r) / std::pow(r, nu);
  return std::pow(kTwoPi, 0.5 * n) * phase[l % 4] * radial;
}

std::complex<double> lambda_by_transform(int n, int l, double r) {
  return quadrature::spherical_transform(
      [r](double t) { return std::exp(std::complex<double>(0.0, -r * t)); }, l, n);
}

IdentityCheck check_ft_lambda(const SpecfunSuiteOptions& o) {
  Check check("ft_lambda", 1e-6);
  for (int n : {2, 3}) {
    for (int l = 0; l <= o.max_degree; ++l) {
      for (double r : radii(o)) {
        check.record(std::abs(lambda_by_transform(n, l, r) - closed_lambda(n, l, r)));
      }
    }
  }
  return check.finish();
}

IdentityCheck check_funk_hecke(const SpecfunSuiteOptions& o) {
  Check check("funk_hecke", 1e-6);
  RandomStream stream(kSuiteSeed, 2);
  const int band = static_cast<int>(std::ceil(o.max_radius)) + o.max_degree;
  std::vector<double> rs;
  const auto all = radii(o);
  for (std::size_t k = 0; k < all.size(); k += 4) rs.push_back(all[k]);
  if (!all.empty() && rs.back() != all.back()) rs.push_back(all.back());
  for (int n : {2, 3}) {
    const auto rule = quadrature::rule_for_band(n - 1, band);
    std::vector<Point> points;
    for (int k = 0; k < 10; ++k) points.push_back(random_unit(n, stream));
    for (int l = 0; l <= o.max_degree; ++l) {
      std::map<double, std::complex<double>> lambda;
      for (double r : rs) lambda[r] = lambda_by_transform(n, l, r);
      for (int m = 1; m <= specfun::harmonic_dimension(n - 1, l); ++m) {
        const HarmonicIndex idx{n - 1, l, m};
        for (const Point& u : points) {
          const double y = specfun::real_sph_harm(idx, u);
          for (double r : rs) {
            const auto lhs = quadrature::ft_sph_harm_by_quadrature(idx, r * u, rule);
            check.record(std::abs(lhs - lambda[r] * y));
          }
        }
      }
    }
  }
  return check.finish();
}

IdentityCheck check_orthonormality(const SpecfunSuiteOptions& o) {
  Check check("sph_harm_orthonormality", 1e-8);
  for (int dim_sphere : {1, 2}) {
    const auto rule = quadrature::rule_for_band(dim_sphere, 2 * o.max_degree);
    const auto basis = harmonics(dim_sphere, o.max_degree);
    std::vector<std::vector<double>> values(basis.size());
    for (std::size_t a = 0; a < basis.size(); ++a) {
      for (const Point& p : rule.nodes) values[a].push_back(specfun::real_sph_harm(basis[a], p));
    }
    for (std::size_t a = 0; a < basis.size(); ++a) {
      for (std::size_t b = a; b < basis.size(); ++b) {
        double gram = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
          gram += rule.weights[q] * values[a][q] * values[b][q];
        }
        check.record(std::abs(gram - (a == b ? 1.0 : 0.0)));
      }
    }
  }
  return check.finish();
}

IdentityCheck check_recurrence() {
  Check check("bessel_recurrence", 1e-9);
  for (int half = 0; half <= 1; ++half) {
    for (int k = 1; k <= 20; ++k) {
      const double nu = k + 0.5 * half;
      for (int s = 0; s <= 490; ++s) {
        const double x = 0.1 + 0.1 * s;
        const double a = specfun::bessel_j(BesselOrder(nu - 1.0), x);
        const double b = specfun::bessel_j(BesselOrder(nu + 1.0), x);
        const double c = 2.0 * nu / x * specfun::bessel_j(BesselOrder(nu), x);
        const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), 1e-300});
        check.record(std::abs(a + b - c) / scale);
      }
    }
  }
  return check.finish();
}

IdentityCheck check_half_integer() {
  Check check("bessel_half_integer", 1e-10);
  for (int s = 1; s <= 1000; ++s) {
    const double x = 0.1 * s;
    const double envelope = std::sqrt(2.0 / (kPi * x));
    const double j_half = envelope * std::sin(x);
    const double j_three_halves = envelope * (std::sin(x) / x - std::cos(x));
    check.record(std::abs(specfun::bessel_j(BesselOrder(0.5), x) - j_half) / envelope);
    check.record(std::abs(specfun::bessel_j(BesselOrder(1.5), x) - j_three_halves) / envelope);
  }
  return check.finish();
}

IdentityCheck check_helmholtz(const SpecfunSuiteOptions& o) {
  Check check("helmholtz", 1e-5);
  RandomStream stream(kSuiteSeed, 3);
  constexpr double h = 1e-3;
  for (const HarmonicIndex& idx : harmonics(1, o.max_degree)) {
    for (int k = 0; k < 10; ++k) {
      const double r = o.max_radius * stream.uniform();
      const Point x = r * random_unit(2, stream);
      auto f = [&](double dx, double dy) {
        return specfun::ft_sph_harm_profile(idx, {x[0] + dx, x[1] + dy, 0.0});
      };
      const double laplacian = (f(h, 0) + f(-h, 0) + f(0, h) + f(0, -h) - 4.0 * f(0, 0)) / (h * h);
      check.record(std::abs(laplacian + f(0, 0)));
    }
  }
  return check.finish();
}

}  // namespace

std::vector<IdentityCheck> run_specfun_suite(const SpecfunSuiteOptions& options) {
  if (options.max_degree < 0 || options.radii < 1 || !(options.max_radius > 0.0)) {
    throw Error(ErrorKind::kValidation,
                "specfun suite needs max_degree >= 0, radii >= 1 and max_radius > 0");
  }
  return {check_ft(options),           check_funk_hecke(options), check_ft_lambda(options),
          check_orthonormality(options), check_recurrence(),        check_half_integer(),
          check_helmholtz(options)};
}

}  // namespace monowave
