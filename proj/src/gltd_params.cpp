#include "savgl/gltd_params.hpp"

#include <cmath>

#include "savgl/errors.hpp"

namespace savgl {

namespace {
constexpr double kCaseTol = 1e-12;
}

GltdParams derive_params(double alpha0, double beta0, double beta2) {
  if (alpha0 == 1.0) {
    throw DegenerateParams("alpha0 = 1 is not admissible");
  }
  if (beta2 == 0.0) {
    throw DegenerateParams("beta2 = 0 is not admissible");
  }
  GltdParams p;
  p.alpha0 = alpha0;
  p.beta0 = beta0;
  p.beta2 = beta2;
  p.beta1 = 1.0 - alpha0 - beta0 - beta2;
  p.kappa = (beta2 - beta0) / (1.0 - alpha0);
  return p;
}

const char* to_string(SchemeCase c) {
  switch (c) {
    case SchemeCase::OneStep: return "one-step";
    case SchemeCase::TwoStepSecondOrder: return "two-step second-order";
    case SchemeCase::TwoStepFirstOrder: return "two-step first-order";
  }
  return "?";
}

const char* to_string(AlgebraicStability s) {
  switch (s) {
    case AlgebraicStability::Yes: return "yes";
    case AlgebraicStability::No: return "no";
    case AlgebraicStability::Undetermined: return "undetermined";
  }
  return "?";
}

SchemeCase classify(const GltdParams& p) {
  if (p.alpha0 == 0.0 && p.beta0 == 0.0) {
    return SchemeCase::OneStep;
  }
  const double second_order_gap =
      p.beta2 - (0.5 * (1.0 + p.alpha0) + p.beta0);
  if (std::abs(second_order_gap) <= kCaseTol) {
    return SchemeCase::TwoStepSecondOrder;
  }
  return SchemeCase::TwoStepFirstOrder;
}

bool a_stability(const GltdParams& p) {
  return -1.0 <= p.alpha0 && p.alpha0 < 1.0 && p.beta2 > 0.0 &&
         std::abs(p.beta0) <= p.beta2 &&
         1.0 - p.alpha0 - 2.0 * p.beta0 - 2.0 * p.beta2 <= 0.0;
}

AlgebraicStability algebraic_stability(const GltdParams& p) {
  // Algebraic stability implies A-stability, so a method failing the
  // A-stability conditions cannot be algebraically stable.
  if (!a_stability(p)) {
    return AlgebraicStability::No;
  }
  switch (classify(p)) {
    case SchemeCase::OneStep:
      return p.beta2 >= 0.5 ? AlgebraicStability::Yes : AlgebraicStability::No;
    case SchemeCase::TwoStepSecondOrder: {
      const double delta = 2.0 * p.beta0 + p.alpha0;
      if (delta > kCaseTol) {
        return AlgebraicStability::Yes;
      }
      return AlgebraicStability::No;
    }
    case SchemeCase::TwoStepFirstOrder:
      return AlgebraicStability::Undetermined;
  }
  return AlgebraicStability::Undetermined;
}

StabilityVerdict stability_verdict(const GltdParams& p) {
  return StabilityVerdict{a_stability(p), algebraic_stability(p)};
}

std::pair<std::complex<double>, std::complex<double>>
quadratic_roots(std::complex<double> a, std::complex<double> b,
                std::complex<double> c) {
  std::complex<double> sq = std::sqrt(b * b - 4.0 * a * c);
  // Pick the sign that avoids cancellation in b + sq.
  if (std::real(std::conj(b) * sq) < 0.0) {
    sq = -sq;
  }
  const std::complex<double> q = -0.5 * (b + sq);
  const std::complex<double> x1 = q / a;
  std::complex<double> x2;
  if (std::abs(q) > 0.0) {
    x2 = c / q;
  } else {
    // b = 0 and c = 0: double root at the origin.
    x2 = std::complex<double>(0.0, 0.0);
  }
  return {x1, x2};
}

std::pair<std::complex<double>, std::complex<double>>
characteristic_roots(const GltdParams& p, std::complex<double> xi_bar) {
  // rho(x) - xi_bar*sigma(x), scaled by (1 - alpha0):
  //   (1 - beta2*xi_bar) x^2 - ((1 + alpha0) + beta1*xi_bar) x
  //   + (alpha0 - beta0*xi_bar)
  const std::complex<double> a = 1.0 - p.beta2 * xi_bar;
  if (std::abs(a) == 0.0) {
    throw DegenerateLeadingCoefficient(
        "characteristic polynomial degenerates: 1 - beta2*xi_bar = 0");
  }
  const std::complex<double> b = -(1.0 + p.alpha0 + p.beta1 * xi_bar);
  const std::complex<double> c = p.alpha0 - p.beta0 * xi_bar;
  return quadratic_roots(a, b, c);
}

RootScanResult verify_a_stability_numerically(const GltdParams& p,
                                              const ComplexRect& rect) {
  if (rect.re_max > 0.0 || rect.re_min > rect.re_max ||
      rect.im_min > rect.im_max || rect.n_re < 1 || rect.n_im < 1) {
    throw PreconditionViolated("sampling rectangle must lie in Re(xi) <= 0");
  }
  RootScanResult res;
  for (int i = 0; i < rect.n_re; ++i) {
    const double re = rect.n_re == 1
                          ? rect.re_min
                          : rect.re_min + (rect.re_max - rect.re_min) * i /
                                              (rect.n_re - 1);
    for (int j = 0; j < rect.n_im; ++j) {
      const double im = rect.n_im == 1
                            ? rect.im_min
                            : rect.im_min + (rect.im_max - rect.im_min) * j /
                                                (rect.n_im - 1);
      const std::complex<double> xi(re, im);
      const auto [x1, x2] = characteristic_roots(p, xi);
      const double m = std::max(std::abs(x1), std::abs(x2));
      if (m > res.max_modulus) {
        res.max_modulus = m;
        res.argmax = xi;
      }
      // Root separation below sqrt(machine epsilon) is indistinguishable
      // from a double root.
      if (std::abs(x1 - x2) <=
              1e-7 * std::max({1.0, std::abs(x1), std::abs(x2)}) &&
          m >= 1.0 - 1e-7) {
        res.boundary_double_root = true;
      }
    }
  }
  return res;
}

}  // namespace savgl
