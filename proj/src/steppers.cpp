#include "savgl/steppers.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "savgl/errors.hpp"

namespace savgl {

const char* to_string(SavFamily f) {
  return f == SavFamily::Sav ? "sav" : "gsav";
}

namespace {

/// ubar^{n+kappa} = (1+kappa) u^n - kappa u^{n-1}
Field extrapolate(const StepperState& s) {
  const double kp = s.params.kappa;
  Field ubar(s.model.grid);
  for (size_t i = 0; i < ubar.values.size(); ++i) {
    ubar.values[i] = (1.0 + kp) * s.u_curr.values[i] - kp * s.u_prev.values[i];
  }
  return ubar;
}

/// Known part of the solve: [(1+a0) u^n - a0 u^{n-1}
///                           + tau*GL*(b1 u^n + b0 u^{n-1})] per mode,
/// divided by A = 1 - tau*b2*GL.
SpectralField history_solve(const StepperState& s) {
  const auto& p = s.params;
  const auto& gl = s.model.gl_symbol.values();
  SpectralField out(s.model.grid);
  for (size_t i = 0; i < out.coeffs.size(); ++i) {
    const double denom = 1.0 - s.tau * p.beta2 * gl[i];
    const std::complex<double> rhs =
        (1.0 + p.alpha0) * s.uhat_curr.coeffs[i] -
        p.alpha0 * s.uhat_prev.coeffs[i] +
        s.tau * gl[i] *
            (p.beta1 * s.uhat_curr.coeffs[i] +
             p.beta0 * s.uhat_prev.coeffs[i]);
    out.coeffs[i] = rhs / denom;
  }
  return out;
}

EnergyRecord make_record(const StepperState& s) { return diagnostics(s); }

void require_representable(const Field& u, long step) {
  for (const double v : u.values) {
    if (!std::isfinite(v)) {
      throw NumericalError("solution left the representable range at step " +
                           std::to_string(step));
    }
  }
}

}  // namespace

double gsav_r_update(double r, double tau, double dissipation,
                     double etilde) {
  return r / (1.0 - tau * dissipation / etilde);
}

StepOutput sav_step(const StepperState& s) {
  if (s.family != SavFamily::Sav) {
    throw PreconditionViolated("sav_step called on a G-SAV state");
  }
  const auto& p = s.params;
  const auto& m = s.model;
  const double om = 1.0 - p.alpha0;

  const Field ubar = extrapolate(s);
  const double radicand = e1(m, ubar) + m.c0;
  if (!(radicand > 0.0)) {
    throw NonpositiveRadicand("E1(ubar) + C0 <= 0 at step " +
                              std::to_string(s.step_index));
  }
  const double ztilde = std::sqrt(radicand);
  Field w = variational_derivative_e1(m, ubar);
  {
    const double inv = 1.0 / ztilde;
    for (double& v : w.values) {
      v *= inv;
    }
  }
  const SpectralField w_hat = forward(w);

  // Two solves with the same diagonal operator A = I - tau*b2*G*L.
  const SpectralField p_hat = history_solve(s);
  SpectralField q_hat(m.grid);
  {
    const auto& g = m.g_symbol.values();
    const auto& gl = m.gl_symbol.values();
    for (size_t i = 0; i < q_hat.coeffs.size(); ++i) {
      const double denom = 1.0 - s.tau * p.beta2 * gl[i];
      q_hat.coeffs[i] = s.tau * om * g[i] * w_hat.coeffs[i] / denom;
    }
  }
  const Field p_field = inverse_real(p_hat);
  const Field q_field = inverse_real(q_hat);

  // Scalar recovery for theta = (W, u^{n+1}).
  const double gamma = p.beta2 / (2.0 * om);
  const double ip_w_ucurr = inner_product(w, s.u_curr);
  const double ip_w_uprev = inner_product(w, s.u_prev);
  const double s_explicit =
      ((p.beta2 * (1.0 + p.alpha0) + p.beta1) * s.z_curr +
       (p.beta0 - p.alpha0 * p.beta2) * s.z_prev) /
          om -
      gamma * ((1.0 + p.alpha0) * ip_w_ucurr - p.alpha0 * ip_w_uprev);
  const double ip_w_q = inner_product(w, q_field);
  const double denom = 1.0 - gamma * ip_w_q;
  // (W, A^{-1} G W) <= 0 makes denom >= 1 analytically.
  if (denom < 1.0 - 1e-12) {
    throw SingularSolve("scalar-recovery denominator below 1 at step " +
                        std::to_string(s.step_index));
  }
  const double theta =
      (inner_product(w, p_field) + s_explicit * ip_w_q) / denom;
  const double z_nk = s_explicit + gamma * theta;

  StepOutput out{s, EnergyRecord{}, 0.0};
  StepperState& next = out.next_state;
  next.u_prev = std::move(next.u_curr);
  next.uhat_prev = std::move(next.uhat_curr);
  next.u_curr = Field(m.grid);
  next.uhat_curr = SpectralField(m.grid);
  for (size_t i = 0; i < next.u_curr.values.size(); ++i) {
    next.u_curr.values[i] = p_field.values[i] + z_nk * q_field.values[i];
    next.uhat_curr.coeffs[i] = p_hat.coeffs[i] + z_nk * q_hat.coeffs[i];
  }
  next.z_prev = s.z_curr;
  next.z_curr = (1.0 + p.alpha0) * s.z_curr - p.alpha0 * s.z_prev +
                0.5 * (theta - (1.0 + p.alpha0) * ip_w_ucurr +
                       p.alpha0 * ip_w_uprev);
  next.step_index = s.step_index + 1;
  next.psi_bar = z_nk / ztilde;
  require_representable(next.u_curr, next.step_index);

  // mu^{n+kappa} = L u^{n+kappa} + z^{n+kappa} W
  {
    SpectralField mu_hat(m.grid);
    const auto& l = m.l_symbol.values();
    for (size_t i = 0; i < mu_hat.coeffs.size(); ++i) {
      const std::complex<double> u_nk =
          (p.beta2 * next.uhat_curr.coeffs[i] +
           p.beta1 * next.uhat_prev.coeffs[i] +
           p.beta0 * s.uhat_prev.coeffs[i]) /
          om;
      mu_hat.coeffs[i] = l[i] * u_nk + z_nk * w_hat.coeffs[i];
    }
    out.mu_norm = std::sqrt(spectral_norm_sq(mu_hat));
  }

  out.record = make_record(next);
  return out;
}

StepOutput gsav_step(const StepperState& s) {
  if (s.family != SavFamily::Gsav) {
    throw PreconditionViolated("gsav_step called on a SAV state");
  }
  const auto& p = s.params;
  const auto& m = s.model;
  const double om = 1.0 - p.alpha0;

  const Field ubar = extrapolate(s);
  const Field vbar = variational_derivative_e1(m, ubar);
  const SpectralField vbar_hat = forward(vbar);

  SpectralField uhat_next = history_solve(s);
  {
    const auto& g = m.g_symbol.values();
    const auto& gl = m.gl_symbol.values();
    for (size_t i = 0; i < uhat_next.coeffs.size(); ++i) {
      const double denom = 1.0 - s.tau * p.beta2 * gl[i];
      uhat_next.coeffs[i] += s.tau * om * g[i] * vbar_hat.coeffs[i] / denom;
    }
  }
  Field u_next = inverse_real(uhat_next);
  require_representable(u_next, s.step_index + 1);

  // mu^{n+1} = L u^{n+1} + V(u^{n+1}); dissipation (mu, G mu) <= 0.
  const Field v_next = variational_derivative_e1(m, u_next, uhat_next);
  SpectralField mu_hat = forward(v_next);
  {
    const auto& l = m.l_symbol.values();
    for (size_t i = 0; i < mu_hat.coeffs.size(); ++i) {
      mu_hat.coeffs[i] += l[i] * uhat_next.coeffs[i];
    }
  }
  const double dissipation = symbol_quadratic_form(m.g_symbol, mu_hat);
  const double etilde = original_energy(m, u_next, uhat_next) + m.ctilde0;
  if (!(etilde > 0.0)) {
    throw NonpositiveShiftedEnergy("E(u) + Ctilde0 <= 0 at step " +
                                   std::to_string(s.step_index));
  }

  StepOutput out{s, EnergyRecord{}, std::sqrt(spectral_norm_sq(mu_hat))};
  StepperState& next = out.next_state;
  next.u_prev = std::move(next.u_curr);
  next.uhat_prev = std::move(next.uhat_curr);
  next.u_curr = std::move(u_next);
  next.uhat_curr = std::move(uhat_next);
  next.r_curr = gsav_r_update(s.r_curr, s.tau, dissipation, etilde);
  next.eta = next.r_curr / etilde;
  next.step_index = s.step_index + 1;

  out.record = make_record(next);
  return out;
}

StepOutput step(const StepperState& s) {
  return s.family == SavFamily::Sav ? sav_step(s) : gsav_step(s);
}

StepperState init_state(const ModelSpec& model, const GltdParams& params,
                        SavFamily family, const Field& ic, double tau) {
  if (!(tau > 0.0)) {
    throw PreconditionViolated("time stepsize must be positive");
  }
  if (!(ic.grid == model.grid)) {
    throw GridMismatch("initial condition grid differs from the model grid");
  }
  StepperState s(params, model, family, ic, tau);
  if (family == SavFamily::Sav) {
    const double radicand = e1(model, ic) + model.c0;
    if (!(radicand > 0.0)) {
      throw NonpositiveRadicand("E1(ic) + C0 <= 0");
    }
    s.z_prev = s.z_curr = std::sqrt(radicand);
  } else {
    s.r_curr = original_energy(model, ic) + model.ctilde0;
    if (!(s.r_curr > 0.0)) {
      throw NonpositiveShiftedEnergy("E(ic) + Ctilde0 <= 0");
    }
    s.eta = 1.0;
  }
  if (classify(params) == SchemeCase::OneStep) {
    return s;
  }
  // Startup: one backward-Euler-type step of the one-step scheme.
  s.params = derive_params(0.0, 0.0, 1.0);
  StepOutput out = step(s);
  out.next_state.params = params;
  return std::move(out.next_state);
}

double modified_energy(const StepperState& s) {
  if (s.family == SavFamily::Gsav) {
    return s.r_curr;
  }
  const auto& m = s.model;
  const double x_curr =
      0.5 * symbol_quadratic_form(m.l_symbol, s.uhat_curr) +
      s.z_curr * s.z_curr;
  switch (classify(s.params)) {
    case SchemeCase::OneStep:
      return x_curr;
    case SchemeCase::TwoStepSecondOrder: {
      const IdentityCoefficients co = solve_coefficients(s.params);
      const double x_prev =
          0.5 * symbol_quadratic_form(m.l_symbol, s.uhat_prev) +
          s.z_prev * s.z_prev;
      const double x_cross =
          0.5 * symbol_cross_form(m.l_symbol, s.uhat_curr, s.uhat_prev) +
          s.z_curr * s.z_prev;
      return 2.0 * co.a * x_curr + 2.0 * co.b * x_prev + 2.0 * co.d * x_cross;
    }
    case SchemeCase::TwoStepFirstOrder: {
      const IdentityCoefficients co = solve_coefficients(
          s.params, IdentityBranch{SignChoice::Minus, RootOrder::B});
      const double x_prev =
          0.5 * symbol_quadratic_form(m.l_symbol, s.uhat_prev) +
          s.z_prev * s.z_prev;
      const double x_cross =
          0.5 * symbol_cross_form(m.l_symbol, s.uhat_curr, s.uhat_prev) +
          s.z_curr * s.z_prev;
      return co.a * x_curr + co.b * x_prev + co.d * x_cross;
    }
  }
  return x_curr;
}

EnergyRecord diagnostics(const StepperState& s) {
  EnergyRecord rec;
  rec.step = s.step_index;
  rec.time = s.step_index * s.tau;
  rec.original_energy = original_energy(s.model, s.u_curr, s.uhat_curr);
  rec.modified_energy = modified_energy(s);
  rec.sav_value = s.family == SavFamily::Sav ? s.z_curr : s.r_curr;
  rec.psi = psi_monitor(s.u_curr);
  rec.psi_bar = s.family == SavFamily::Sav ? s.psi_bar : s.eta;
  rec.mass = mean_value(s.u_curr);
  return rec;
}

}  // namespace savgl
