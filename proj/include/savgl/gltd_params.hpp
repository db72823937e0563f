#pragma once

#include <complex>
#include <utility>

namespace savgl {

/// Three-parameter general linear time discretization.
///
/// The free parameters are (alpha0, beta0, beta2) with alpha0 != 1 and
/// beta2 != 0; beta1 and kappa are derived:
///   beta1 = 1 - alpha0 - beta0 - beta2
///   kappa = (beta2 - beta0) / (1 - alpha0)
struct GltdParams {
  double alpha0 = 0.0;
  double beta0 = 0.0;
  double beta2 = 1.0;
  double beta1 = 0.0;   // derived
  double kappa = 1.0;   // derived
};

/// Build a GltdParams from the three free parameters.
/// Throws DegenerateParams when alpha0 == 1 or beta2 == 0.
GltdParams derive_params(double alpha0, double beta0, double beta2);

enum class SchemeCase {
  OneStep,             // alpha0 = beta0 = 0
  TwoStepSecondOrder,  // beta2 = (1+alpha0)/2 + beta0, not both alpha0,beta0 zero
  TwoStepFirstOrder,   // otherwise, not both alpha0,beta0 zero
};

const char* to_string(SchemeCase c);

/// Classify into the three scheme cases. The second-order condition
/// beta2 = (1+alpha0)/2 + beta0 is tested with absolute tolerance 1e-12.
SchemeCase classify(const GltdParams& p);

enum class AlgebraicStability { Yes, No, Undetermined };

const char* to_string(AlgebraicStability s);

struct StabilityVerdict {
  bool a_stable = false;
  AlgebraicStability algebraically_stable = AlgebraicStability::Undetermined;
};

/// A-stability by the closed-form parameter conditions:
///   -1 <= alpha0 < 1,  beta2 > 0,  |beta0| <= beta2,
///   1 - alpha0 - 2*beta0 - 2*beta2 <= 0.
bool a_stability(const GltdParams& p);

/// Algebraic-stability verdict.
/// Case two-step second-order: Yes when 2*beta0 + alpha0 > 0 (and A-stable),
/// No on the boundary 2*beta0 + alpha0 = 0 and when not A-stable.
/// Case one-step: Yes for beta2 >= 1/2, No otherwise.
/// Case two-step first-order: Undetermined.
AlgebraicStability algebraic_stability(const GltdParams& p);

StabilityVerdict stability_verdict(const GltdParams& p);

/// Roots of the characteristic polynomial rho(x) - xi_bar * sigma(x) of the
/// fully implicit discretization applied to u' = xi*u.
/// Throws DegenerateLeadingCoefficient when 1 - beta2*xi_bar == 0.
std::pair<std::complex<double>, std::complex<double>>
characteristic_roots(const GltdParams& p, std::complex<double> xi_bar);

/// Rectangular sampling of the left complex half-plane.
struct ComplexRect {
  double re_min = -100.0;
  double re_max = 0.0;
  double im_min = -100.0;
  double im_max = 100.0;
  int n_re = 101;
  int n_im = 101;
};

struct RootScanResult {
  double max_modulus = 0.0;
  std::complex<double> argmax{0.0, 0.0};   // xi_bar attaining the max
  bool boundary_double_root = false;       // double root with |x| ~ 1 seen
};

/// Scan the characteristic roots over a rectangle of the closed left
/// half-plane; for an A-stable method max_modulus <= 1 + 1e-12.
RootScanResult verify_a_stability_numerically(const GltdParams& p,
                                              const ComplexRect& rect);

/// Stable roots of A*x^2 + B*x + C with complex coefficients, |A| > 0.
std::pair<std::complex<double>, std::complex<double>>
quadratic_roots(std::complex<double> a, std::complex<double> b,
                std::complex<double> c);

}  // namespace savgl
