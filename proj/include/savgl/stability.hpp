#pragma once

#include <array>
#include <complex>
#include <optional>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "savgl/gltd_params.hpp"
#include "savgl/models.hpp"

namespace savgl {

/// One (xi, zeta) pair of the semi-implicit test equation
/// u' = xi*u + zeta*u with xi treated implicitly and zeta explicitly.
struct TestPoint {
  double xi = 0.0;    // <= 0
  double zeta = 0.0;  // any real for scans
};

/// Result of a stepsize search. tau_max empty means unbounded.
struct StepsizeReport {
  std::optional<double> tau_max;
  std::optional<std::pair<int, int>> argmax_mode;
  std::string limiting_expression;
  /// Value of the binding denominator (e.g. max of (2b2-1)xi - (2b2+1)zeta)
  /// when a closed form applies; 0 otherwise.
  double limiting_value = 0.0;

  bool unbounded() const { return !tau_max.has_value(); }
};

/// Roots of the characteristic polynomial of the semi-implicit scheme at
/// (xi_bar, zeta_bar) = (tau*xi, tau*zeta).
/// Throws DegenerateLeadingCoefficient when 1 - beta2*xi_bar == 0.
std::pair<std::complex<double>, std::complex<double>>
semi_implicit_roots(const GltdParams& p, double xi_bar, double zeta_bar);

/// The four closed-form root-condition inequalities; boundary points count
/// as stable.
bool is_stable_point(const GltdParams& p, double xi_bar, double zeta_bar);

/// The four inequality values (>= 0 each when stable); exposed for tests.
std::array<double, 4> stability_inequalities(const GltdParams& p,
                                             double xi_bar, double zeta_bar);

/// Closed-form maximum stepsize along the ray (tau*xi, tau*zeta), using the
/// lower stability boundary:
/// one-step:            tau < 2/((2b2-1)xi - (2b2+1)zeta)
///                      when zeta < (2b2-1)/(2b2+1) * xi, else unbounded;
/// two-step 2nd order:  tau < (1+a0)/((2b0+a0)xi - zeta)
///                      when zeta < (2b0+a0)*xi  (with 2b0+a0 = 0 the bound
///                      degenerates to tau < -(1+a0)/zeta for zeta < 0).
/// Throws UnsupportedCase for two-step first-order parameters.
StepsizeReport max_stepsize_closed_form(const GltdParams& p, double xi,
                                        double zeta);

/// Bisection on is_stable_point along the ray, capped at 1e6 (reported as
/// unbounded when stable there), refined to relative width 1e-6.
StepsizeReport numeric_max_stepsize(const GltdParams& p, double xi,
                                    double zeta);

/// Per-mode (xi, zeta) of the Fourier pseudo-spectral semi-implicit scheme
/// with the cubic linearized through the psi monitor:
/// AC:  xi = -eps^2 (2pi/L)^2 (k^2+l^2),  zeta = 1 - psi (mode-independent);
/// CH:  s = (2pi/L)^2 (k^2+l^2): xi = -eps^2 s^2,  zeta = -s (psi - 1);
/// PFC: nu = 2pi/L, s = k^2+l^2:
///      xi = -nu^3 s^3,  zeta = -nu s (psi + (1-eps)/2 - 2 nu s).
TestPoint mode_test_point(const ModelSpec& m, int k, int l, double psi);

/// Minimize the per-mode closed-form bound over the retained modes and
/// report the binding mode.
StepsizeReport estimate_for_model(const ModelSpec& m, const GltdParams& p,
                                  double psi_estimate);

/// Per-mode bounds for CSV emission: (k, l, tau_or_inf).
std::vector<std::tuple<int, int, double>> per_mode_bounds(
    const ModelSpec& m, const GltdParams& p, double psi_estimate);

}  // namespace savgl
