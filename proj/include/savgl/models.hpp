#pragma once

#include <string>
#include <utility>

#include "savgl/spectral.hpp"

namespace savgl {

enum class ModelKind { AllenCahn, CahnHilliard, PhaseFieldCrystal };

const char* to_string(ModelKind k);

/// A gradient-flow model du/dt = G dE/du on a periodic grid, split as
/// E(u) = (1/2)(L u, u) + E1(u) with L positive self-adjoint and G negative,
/// both diagonal in Fourier space.
struct ModelSpec {
  ModelKind kind = ModelKind::AllenCahn;
  double epsilon = 0.1;
  double c0 = 1.0;       // SAV shift, E1 + c0 > 0 required
  double ctilde0 = 0.0;  // G-SAV shift, E + ctilde0 > 0 required
  SpectralGrid grid;
  OperatorSymbol l_symbol;   // L, per-mode >= 0
  OperatorSymbol g_symbol;   // G, per-mode <= 0
  OperatorSymbol gl_symbol;  // composite G*L, per-mode <= 0
  bool dealias = true;       // de-alias every cubic evaluation

  ModelSpec(const SpectralGrid& g, OperatorSymbol l, OperatorSymbol gsym)
      : grid(g),
        l_symbol(std::move(l)),
        g_symbol(std::move(gsym)),
        gl_symbol(g_symbol.multiply(l_symbol)) {}
};

/// Construct a model with its operator symbols on the grid.
/// AC:  L = -eps^2*Lap, G = -1;  CH: L = -eps^2*Lap, G = Lap;
/// PFC: L = Lap^2, G = Lap.
/// Requires 0 < eps < 1 for AC/CH, eps > 0 for PFC, c0 > 0, ctilde0 >= 0.
ModelSpec build_model(ModelKind kind, double epsilon, const SpectralGrid& grid,
                      double c0, double ctilde0, bool dealias = true);

/// Default SAV shift: 1.0 for AC/CH; 100*|Omega| for PFC (E1 can be
/// negative through the -|grad u|^2 term).
double default_c0(ModelKind kind, const SpectralGrid& grid);

/// Nonlinear energy E1(u) by collocation quadrature.
/// AC/CH: integral of (1/4)(u^2-1)^2.
/// PFC:   integral of (1/4)u^4 + ((1-eps)/2)u^2 - |grad u|^2, with the
///        gradient term evaluated spectrally as -(u, Lap u).
double e1(const ModelSpec& m, const Field& f);

/// Same, reusing a precomputed spectrum of f for the gradient term.
double e1(const ModelSpec& m, const Field& f, const SpectralField& f_hat);

/// Full energy (1/2)(L u, u) + E1(u).
double original_energy(const ModelSpec& m, const Field& f);
double original_energy(const ModelSpec& m, const Field& f,
                       const SpectralField& f_hat);

/// Variational derivative of E1:
/// AC/CH: u^3 - u;  PFC: u^3 + (1-eps)u + 2*Lap u.
/// The cube is de-aliased when the model says so.
Field variational_derivative_e1(const ModelSpec& m, const Field& f);
Field variational_derivative_e1(const ModelSpec& m, const Field& f,
                                const SpectralField& f_hat);

/// W(u) = V(u)/sqrt(E1(u) + c0) and the SAV value z = sqrt(E1(u) + c0).
/// Throws NonpositiveRadicand when E1 + c0 <= 0.
std::pair<Field, double> w_of(const ModelSpec& m, const Field& f);

/// One row of the run diagnostics.
struct EnergyRecord {
  long step = 0;
  double time = 0.0;
  double original_energy = 0.0;
  double modified_energy = 0.0;
  double sav_value = 0.0;  // z^n (SAV) or R^n (G-SAV)
  double psi = 0.0;        // (3/N^2) sum |u_{i,j}|^2
  double psi_bar = 1.0;    // z^{n+kappa}/sqrt(E1(ubar)+C0); eta^n for G-SAV
  double mass = 0.0;       // mean of u
};

/// psi monitor (3/N^2) sum u_{i,j}^2.
double psi_monitor(const Field& f);

/// Mean of u over the grid.
double mean_value(const Field& f);

}  // namespace savgl
