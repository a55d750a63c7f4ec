#pragma once

#include <string>
#include <vector>

namespace monowave {

struct IdentityCheck {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  long evaluations = 0;
  bool passed = false;
};

struct SpecfunSuiteOptions {
  int max_degree = 6;        // l cap for harmonic identities
  double max_radius = 20.0;  // radii r_k = max_radius * k / radii, k = 1..radii
  int radii = 20;
  /// Scales the ft_sph_harm output by (1 + 1e-3) to prove the suite notices
  /// a wrong constant.
  bool inject_fault = false;
};

/// Numerical checks of the special-function layer:
///   ft_sph_harm               closed form vs surface quadrature (n = 2, 3)
///   funk_hecke                int h(<x,y>) Y(y) dsigma(y) = lambda_h(l) Y(x), h = e^{-irt}
///   ft_lambda                 lambda_h(l) vs (2 pi)^{n/2} (-i)^l J_{l+nu}(r)/r^nu
///   sph_harm_orthonormality   Gram matrices on S^1 and S^2
///   bessel_recurrence         J_{v-1} + J_{v+1} = (2v/x) J_v, scaled residual
///   bessel_half_integer       J_{1/2}, J_{3/2} vs their trigonometric forms
///   helmholtz                 (Delta + 1) of the real transform profiles, n = 2
std::vector<IdentityCheck> run_specfun_suite(const SpecfunSuiteOptions& options = {});

}  // namespace monowave
