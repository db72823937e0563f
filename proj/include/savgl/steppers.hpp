#pragma once

#include "savgl/gltd_params.hpp"
#include "savgl/identities.hpp"
#include "savgl/models.hpp"

namespace savgl {

enum class SavFamily { Sav, Gsav };

const char* to_string(SavFamily f);

/// Two consecutive solution fields plus the auxiliary-variable history.
/// The spectra of both fields are cached so a step needs no forward
/// transform of the state itself.
struct StepperState {
  GltdParams params;
  ModelSpec model;
  SavFamily family = SavFamily::Sav;
  double tau = 1.0;
  long step_index = 0;

  Field u_prev;
  Field u_curr;
  SpectralField uhat_prev;
  SpectralField uhat_curr;

  double z_prev = 0.0;  // SAV family
  double z_curr = 0.0;
  double r_curr = 0.0;  // G-SAV family, positive throughout

  double psi_bar = 1.0;  // z^{n+kappa}/sqrt(E1(ubar)+C0) of the last step
  double eta = 1.0;      // R^{n+1}/E~(u^{n+1}) of the last step

  StepperState(const GltdParams& p, ModelSpec m, SavFamily fam,
               const Field& ic, double dt)
      : params(p),
        model(std::move(m)),
        family(fam),
        tau(dt),
        u_prev(ic),
        u_curr(ic),
        uhat_prev(forward(ic)),
        uhat_curr(uhat_prev) {}
};

struct StepOutput {
  StepperState next_state;
  EnergyRecord record;
  double mu_norm = 0.0;  // L2 norm of the chemical potential used in the step
};

/// Build the initial state. One-step schemes start directly from the
/// initial condition. Two-step schemes take one startup step of the
/// one-step scheme with beta2 = 1 (backward-Euler-type SAV / G-SAV) to
/// populate the history.
StepperState init_state(const ModelSpec& model, const GltdParams& params,
                        SavFamily family, const Field& ic, double tau);

/// One SAV-GL step: two diagonal solves sharing the constant-coefficient
/// operator I - tau*beta2*G*L, then a closed-form scalar recovery for the
/// SAV coupling.
StepOutput sav_step(const StepperState& s);

/// One G-SAV-GL step: a single diagonal solve with the explicit
/// extrapolated nonlinearity, then the closed-form update
///   R^{n+1} = R^n / (1 - tau*(mu,G mu)/E~(u^{n+1})).
StepOutput gsav_step(const StepperState& s);

/// Dispatch on the state's family.
StepOutput step(const StepperState& s);

/// The quantity the schemes drive monotonically downward:
/// one-step: (1/2)(L u^n, u^n) + (z^n)^2;
/// two-step second-order: the three-coefficient functional E;
/// two-step first-order: the functional E-bar with the (Minus, RootOrder::B)
/// identity coefficients;  G-SAV: R^n.
double modified_energy(const StepperState& s);

/// Diagnostics of the current state.
EnergyRecord diagnostics(const StepperState& s);

/// Closed-form G-SAV scalar update, exposed for testing:
/// r / (1 - tau*dissipation/etilde) with dissipation = (mu, G mu) <= 0.
double gsav_r_update(double r, double tau, double dissipation, double etilde);

}  // namespace savgl
