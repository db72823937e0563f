#pragma once

#include <array>
#include <vector>

#include "savgl/gltd_params.hpp"

namespace savgl {

/// The six reals (a, b, d, c1, c2, c3) of the quadratic telescoping identity
///   D(chi) * B(chi) = a*[x+^2 - x0^2] + b*[x0^2 - x-^2]
///                     + d*[x+ x0 - x0 x-] + (c1 x+ + c2 x0 + c3 x-)^2
/// where D is the two-step difference quotient combination and B the
/// beta-weighted implicit combination of (x+, x0, x-) = (chi^{n+1}, chi^n,
/// chi^{n-1}).
struct IdentityCoefficients {
  double a = 0.0;
  double b = 0.0;
  double d = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

enum class SignChoice { Plus, Minus };
enum class RootOrder { A, B };

/// Branch selector: sign of c2, and which root of
///   x^2 + c2*x + (beta0 + alpha0*beta2)/(2(1-alpha0)^2) = 0
/// is assigned to c1 (the other goes to c3).  RootOrder::A assigns the
/// "+sqrt" root to c1.
struct IdentityBranch {
  SignChoice c2_sign = SignChoice::Minus;
  RootOrder order = RootOrder::A;
};

/// Canonical branch: c2 negative, c1 takes the "+sqrt" root.
inline constexpr IdentityBranch kCanonicalBranch{SignChoice::Minus,
                                                 RootOrder::A};

/// All four branch selectors, canonical first.
std::array<IdentityBranch, 4> all_branches();

/// Solve the six-equation undetermined-coefficient system for the given
/// parameters and branch.
/// Throws PreconditionViolated when the A-stability conditions fail and
/// DiscriminantNegative when the two-step first-order case has a negative
/// discriminant (no real coefficients exist).
IdentityCoefficients solve_coefficients(const GltdParams& p,
                                        IdentityBranch branch =
                                            kCanonicalBranch);

/// Max absolute residual of the six coefficient equations; ~0 for a valid
/// solution.
double system_residual(const GltdParams& p, const IdentityCoefficients& co);

/// |LHS - RHS| of the telescoping identity at
/// chi = (chi^{n+1}, chi^n, chi^{n-1}).
double identity_residual(const GltdParams& p, const IdentityCoefficients& co,
                         const std::array<double, 3>& chi);

/// Value of c2^2/4 - (beta0 + alpha0*beta2)/(2(1-alpha0)^2); must be
/// non-negative for real c1, c3.  Zero in the two-step second-order case.
double discriminant(const GltdParams& p);

}  // namespace savgl
