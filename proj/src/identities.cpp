#include "savgl/identities.hpp"

#include <algorithm>
#include <cmath>

#include "savgl/errors.hpp"

namespace savgl {

std::array<IdentityBranch, 4> all_branches() {
  return {IdentityBranch{SignChoice::Minus, RootOrder::A},
          IdentityBranch{SignChoice::Minus, RootOrder::B},
          IdentityBranch{SignChoice::Plus, RootOrder::A},
          IdentityBranch{SignChoice::Plus, RootOrder::B}};
}

double discriminant(const GltdParams& p) {
  const double om = 1.0 - p.alpha0;
  const double c2_sq =
      (1.0 + p.alpha0) * (2.0 * p.beta0 + 2.0 * p.beta2 + p.alpha0 - 1.0) /
      (2.0 * om * om);
  return 0.25 * c2_sq - (p.beta0 + p.alpha0 * p.beta2) / (2.0 * om * om);
}

IdentityCoefficients solve_coefficients(const GltdParams& p,
                                        IdentityBranch branch) {
  if (!a_stability(p)) {
    throw PreconditionViolated(
        "identity coefficients require the A-stability parameter region");
  }
  const double om = 1.0 - p.alpha0;
  const double om2 = om * om;

  const double c2_sq_num =
      2.0 * (1.0 + p.alpha0) * (2.0 * p.beta0 + 2.0 * p.beta2 + p.alpha0 - 1.0);
  double c2 = std::sqrt(std::max(0.0, c2_sq_num)) / (2.0 * om);
  if (branch.c2_sign == SignChoice::Minus) {
    c2 = -c2;
  }

  const double disc = discriminant(p);
  const double tol = 1e-12 / om2;
  if (disc < -tol) {
    throw DiscriminantNegative(
        "no real identity coefficients: discriminant < 0");
  }
  // The second-order case sits exactly on the double-root boundary; the
  // square root would otherwise amplify rounding in the discriminant.
  const double root = classify(p) == SchemeCase::TwoStepSecondOrder
                          ? 0.0
                          : std::sqrt(std::max(0.0, disc));

  double c1, c3;
  if (branch.order == RootOrder::A) {
    c1 = -0.5 * c2 + root;
    c3 = -0.5 * c2 - root;
  } else {
    c1 = -0.5 * c2 - root;
    c3 = -0.5 * c2 + root;
  }

  IdentityCoefficients co;
  co.c1 = c1;
  co.c2 = c2;
  co.c3 = c3;
  co.a = p.beta2 / om2 - c1 * c1;
  co.b = c3 * c3 - p.alpha0 * p.beta0 / om2;
  co.d = 2.0 * c2 * c3 -
         (p.alpha0 * p.beta1 - (1.0 + p.alpha0) * p.beta0) / om2;
  return co;
}

double system_residual(const GltdParams& p, const IdentityCoefficients& co) {
  const double om2 = (1.0 - p.alpha0) * (1.0 - p.alpha0);
  const double r1 = co.a + co.c1 * co.c1 - p.beta2 / om2;
  const double r2 =
      co.b - co.a + co.c2 * co.c2 + (1.0 + p.alpha0) * p.beta1 / om2;
  const double r3 = co.c3 * co.c3 - co.b - p.alpha0 * p.beta0 / om2;
  const double r4 = 2.0 * co.c1 * co.c2 + co.d -
                    (p.beta1 - (1.0 + p.alpha0) * p.beta2) / om2;
  const double r5 = 2.0 * co.c2 * co.c3 - co.d -
                    (p.alpha0 * p.beta1 - (1.0 + p.alpha0) * p.beta0) / om2;
  const double r6 =
      2.0 * co.c1 * co.c3 - (p.beta0 + p.alpha0 * p.beta2) / om2;
  return std::max({std::abs(r1), std::abs(r2), std::abs(r3), std::abs(r4),
                   std::abs(r5), std::abs(r6)});
}

double identity_residual(const GltdParams& p, const IdentityCoefficients& co,
                         const std::array<double, 3>& chi) {
  const double xp = chi[0];  // chi^{n+1}
  const double x0 = chi[1];  // chi^n
  const double xm = chi[2];  // chi^{n-1}
  const double om = 1.0 - p.alpha0;
  const double diff = (xp - (1.0 + p.alpha0) * x0 + p.alpha0 * xm) / om;
  const double comb = (p.beta2 * xp + p.beta1 * x0 + p.beta0 * xm) / om;
  const double lhs = diff * comb;
  const double sq = co.c1 * xp + co.c2 * x0 + co.c3 * xm;
  const double rhs = co.a * (xp * xp - x0 * x0) + co.b * (x0 * x0 - xm * xm) +
                     co.d * (xp * x0 - x0 * xm) + sq * sq;
  return std::abs(lhs - rhs);
}

}  // namespace savgl
