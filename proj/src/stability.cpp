#include "savgl/stability.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <tuple>

#include "savgl/errors.hpp"

namespace savgl {

namespace {
constexpr double kZeroTol = 1e-12;
constexpr double kTauCap = 1e6;
}  // namespace

std::pair<std::complex<double>, std::complex<double>>
semi_implicit_roots(const GltdParams& p, double xi_bar, double zeta_bar) {
  // Q(x), scaled by (1 - alpha0).
  const double a = 1.0 - p.beta2 * xi_bar;
  if (a == 0.0) {
    throw DegenerateLeadingCoefficient(
        "semi-implicit polynomial degenerates: 1 - beta2*xi_bar = 0");
  }
  const double b = -(1.0 + p.alpha0 + p.beta1 * xi_bar +
                     (1.0 - p.alpha0 + p.beta2 - p.beta0) * zeta_bar);
  const double c =
      p.alpha0 - p.beta0 * xi_bar + (p.beta2 - p.beta0) * zeta_bar;
  return quadratic_roots(std::complex<double>(a, 0.0),
                         std::complex<double>(b, 0.0),
                         std::complex<double>(c, 0.0));
}

std::array<double, 4> stability_inequalities(const GltdParams& p,
                                             double xi_bar, double zeta_bar) {
  const double bd = p.beta2 - p.beta0;  // beta2 - beta0
  const double g1 =
      1.0 + p.alpha0 - (p.beta0 + p.beta2) * xi_bar + bd * zeta_bar;
  const double g2 =
      1.0 - p.alpha0 + (p.beta0 - p.beta2) * xi_bar - bd * zeta_bar;
  const double g3 = 2.0 * (1.0 + p.alpha0) +
                    (p.beta1 - p.beta0 - p.beta2) * xi_bar +
                    (1.0 - p.alpha0 + 2.0 * bd) * zeta_bar;
  const double g4 = -(p.beta1 + p.beta0 + p.beta2) * xi_bar -
                    (1.0 - p.alpha0) * zeta_bar;
  return {g1, g2, g3, g4};
}

bool is_stable_point(const GltdParams& p, double xi_bar, double zeta_bar) {
  const auto g = stability_inequalities(p, xi_bar, zeta_bar);
  return g[0] >= 0.0 && g[1] >= 0.0 && g[2] >= 0.0 && g[3] >= 0.0;
}

StepsizeReport max_stepsize_closed_form(const GltdParams& p, double xi,
                                        double zeta) {
  StepsizeReport rep;
  switch (classify(p)) {
    case SchemeCase::OneStep: {
      const double threshold =
          (2.0 * p.beta2 - 1.0) / (2.0 * p.beta2 + 1.0) * xi;
      if (zeta >= threshold) {
        rep.limiting_expression = "unconditional";
        return rep;
      }
      const double denom =
          (2.0 * p.beta2 - 1.0) * xi - (2.0 * p.beta2 + 1.0) * zeta;
      rep.tau_max = 2.0 / denom;
      rep.limiting_value = denom;
      rep.limiting_expression =
          "tau < 2/((2*beta2-1)*xi - (2*beta2+1)*zeta)";
      return rep;
    }
    case SchemeCase::TwoStepSecondOrder: {
      const double s2 = 2.0 * p.beta0 + p.alpha0;
      if (std::abs(s2) <= kZeroTol) {
        if (zeta >= 0.0) {
          rep.limiting_expression = "unconditional";
          return rep;
        }
        rep.tau_max = -(1.0 + p.alpha0) / zeta;
        rep.limiting_value = -zeta;
        rep.limiting_expression = "tau < -(1+alpha0)/zeta";
        return rep;
      }
      const double threshold = s2 * xi;
      if (zeta >= threshold) {
        rep.limiting_expression = "unconditional";
        return rep;
      }
      const double denom = s2 * xi - zeta;
      rep.tau_max = (1.0 + p.alpha0) / denom;
      rep.limiting_value = denom;
      rep.limiting_expression =
          "tau < (1+alpha0)/((2*beta0+alpha0)*xi - zeta)";
      return rep;
    }
    case SchemeCase::TwoStepFirstOrder:
      throw UnsupportedCase(
          "no closed-form bound for two-step first-order parameters");
  }
  return rep;
}

StepsizeReport numeric_max_stepsize(const GltdParams& p, double xi,
                                    double zeta) {
  StepsizeReport rep;
  rep.limiting_expression = "numeric-bisection";
  // The four inequalities are linear in tau and hold at tau = 0, so the
  // stable set along the ray is an interval [0, tau*].
  if (is_stable_point(p, kTauCap * xi, kTauCap * zeta)) {
    rep.limiting_expression = "unconditional";
    return rep;
  }
  double lo = 0.0;
  double hi = kTauCap;
  while (hi - lo > 1e-6 * std::max(1.0, lo)) {
    const double mid = 0.5 * (lo + hi);
    if (is_stable_point(p, mid * xi, mid * zeta)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  rep.tau_max = lo;
  return rep;
}

TestPoint mode_test_point(const ModelSpec& m, int k, int l, double psi) {
  const double kl2 = static_cast<double>(k) * k + static_cast<double>(l) * l;
  TestPoint tp;
  switch (m.kind) {
    case ModelKind::AllenCahn: {
      const double fac = 2.0 * M_PI / m.grid.length();
      tp.xi = -m.epsilon * m.epsilon * fac * fac * kl2;
      tp.zeta = 1.0 - psi;
      return tp;
    }
    case ModelKind::CahnHilliard: {
      const double fac = 2.0 * M_PI / m.grid.length();
      const double s = fac * fac * kl2;
      tp.xi = -m.epsilon * m.epsilon * s * s;
      tp.zeta = -s * (psi - 1.0);
      return tp;
    }
    case ModelKind::PhaseFieldCrystal: {
      // Per-mode split of the semi-implicit PFC scheme with the stiff part
      // G*L implicit; nu = 2*pi/L so the L = 400 domain gives the
      // -pi^3 (k^2+l^2)^3 / 200^3 stiff coefficient.
      const double nu = 2.0 * M_PI / m.grid.length();
      const double s = nu * kl2;
      tp.xi = -s * s * s;
      tp.zeta = -s * (psi + 0.5 * (1.0 - m.epsilon) - 2.0 * s);
      return tp;
    }
  }
  return tp;
}

namespace {

StepsizeReport mode_bound(const ModelSpec& m, const GltdParams& p, int k,
                          int l, double psi) {
  const TestPoint tp = mode_test_point(m, k, l, psi);
  if (classify(p) == SchemeCase::TwoStepFirstOrder) {
    return numeric_max_stepsize(p, tp.xi, tp.zeta);
  }
  return max_stepsize_closed_form(p, tp.xi, tp.zeta);
}

}  // namespace

StepsizeReport estimate_for_model(const ModelSpec& m, const GltdParams& p,
                                  double psi_estimate) {
  StepsizeReport best;
  best.limiting_expression = "unconditional";
  const int half = m.grid.n() / 2;
  for (int k = 0; k <= half; ++k) {
    for (int l = 0; l <= half; ++l) {
      StepsizeReport rep = mode_bound(m, p, k, l, psi_estimate);
      if (rep.unbounded()) {
        continue;
      }
      if (best.unbounded() || *rep.tau_max < *best.tau_max) {
        best = rep;
        best.argmax_mode = std::make_pair(k, l);
      }
    }
  }
  return best;
}

std::vector<std::tuple<int, int, double>> per_mode_bounds(
    const ModelSpec& m, const GltdParams& p, double psi_estimate) {
  std::vector<std::tuple<int, int, double>> rows;
  const int half = m.grid.n() / 2;
  rows.reserve(static_cast<size_t>(half + 1) * (half + 1));
  for (int k = 0; k <= half; ++k) {
    for (int l = 0; l <= half; ++l) {
      const StepsizeReport rep = mode_bound(m, p, k, l, psi_estimate);
      rows.emplace_back(k, l,
                        rep.unbounded()
                            ? std::numeric_limits<double>::infinity()
                            : *rep.tau_max);
    }
  }
  return rows;
}

}  // namespace savgl
