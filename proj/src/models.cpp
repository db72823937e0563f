#include "savgl/models.hpp"

#include <cmath>

#include "savgl/errors.hpp"

namespace savgl {

const char* to_string(ModelKind k) {
  switch (k) {
    case ModelKind::AllenCahn: return "allen-cahn";
    case ModelKind::CahnHilliard: return "cahn-hilliard";
    case ModelKind::PhaseFieldCrystal: return "phase-field-crystal";
  }
  return "?";
}

double default_c0(ModelKind kind, const SpectralGrid& grid) {
  if (kind == ModelKind::PhaseFieldCrystal) {
    return 100.0 * grid.length() * grid.length();
  }
  return 1.0;
}

ModelSpec build_model(ModelKind kind, double epsilon, const SpectralGrid& grid,
                      double c0, double ctilde0, bool dealias) {
  if (kind == ModelKind::PhaseFieldCrystal) {
    if (!(epsilon > 0.0)) {
      throw BadEpsilon("phase-field-crystal requires epsilon > 0");
    }
  } else {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
      throw BadEpsilon("allen-cahn/cahn-hilliard require 0 < epsilon < 1");
    }
  }
  if (!(c0 > 0.0)) {
    throw BadShift("SAV shift c0 must be positive");
  }
  if (ctilde0 < 0.0) {
    throw BadShift("G-SAV shift ctilde0 must be non-negative");
  }

  const OperatorSymbol lap = OperatorSymbol::laplacian(grid);
  OperatorSymbol l = (kind == ModelKind::PhaseFieldCrystal)
                         ? lap.multiply(lap)
                         : lap.scaled(-epsilon * epsilon);
  OperatorSymbol g = (kind == ModelKind::AllenCahn)
                         ? OperatorSymbol::negation(grid)
                         : lap;

  ModelSpec m(grid, std::move(l), std::move(g));
  m.kind = kind;
  m.epsilon = epsilon;
  m.c0 = c0;
  m.ctilde0 = ctilde0;
  m.dealias = dealias;
  return m;
}

double e1(const ModelSpec& m, const Field& f, const SpectralField& f_hat) {
  double acc = 0.0;
  if (m.kind == ModelKind::PhaseFieldCrystal) {
    const double lin = 0.5 * (1.0 - m.epsilon);
    for (const double u : f.values) {
      acc += 0.25 * u * u * u * u + lin * u * u;
    }
    acc *= f.grid.cell_area();
    // integral of |grad u|^2 = -(u, Lap u) under periodic boundaries
    const double dirichlet =
        -symbol_quadratic_form(OperatorSymbol::laplacian(f.grid), f_hat);
    return acc - dirichlet;
  }
  for (const double u : f.values) {
    const double w = u * u - 1.0;
    acc += 0.25 * w * w;
  }
  return acc * f.grid.cell_area();
}

double e1(const ModelSpec& m, const Field& f) {
  if (m.kind == ModelKind::PhaseFieldCrystal) {
    return e1(m, f, forward(f));
  }
  // AC/CH need no transform
  double acc = 0.0;
  for (const double u : f.values) {
    const double w = u * u - 1.0;
    acc += 0.25 * w * w;
  }
  return acc * f.grid.cell_area();
}

double original_energy(const ModelSpec& m, const Field& f,
                       const SpectralField& f_hat) {
  return 0.5 * symbol_quadratic_form(m.l_symbol, f_hat) + e1(m, f, f_hat);
}

double original_energy(const ModelSpec& m, const Field& f) {
  return original_energy(m, f, forward(f));
}

namespace {

/// Physical-space cube, de-aliased when requested.
Field cube_field(const ModelSpec& m, const Field& f) {
  if (m.dealias) {
    // The retained-mode set is asymmetric at the Nyquist index, so the
    // de-aliased spectrum can carry a tiny imaginary residue; keep the
    // real part, as the collocation scheme requires a real field.
    return inverse_real(cubic_dealiased(f));
  }
  Field out(f.grid);
  for (size_t i = 0; i < f.values.size(); ++i) {
    const double u = f.values[i];
    out.values[i] = u * u * u;
  }
  return out;
}

}  // namespace

Field variational_derivative_e1(const ModelSpec& m, const Field& f,
                                const SpectralField& f_hat) {
  Field v = cube_field(m, f);
  if (m.kind == ModelKind::PhaseFieldCrystal) {
    const Field lap_u =
        inverse_real(apply_symbol(OperatorSymbol::laplacian(f.grid), f_hat));
    const double lin = 1.0 - m.epsilon;
    for (size_t i = 0; i < v.values.size(); ++i) {
      v.values[i] += lin * f.values[i] + 2.0 * lap_u.values[i];
    }
  } else {
    for (size_t i = 0; i < v.values.size(); ++i) {
      v.values[i] -= f.values[i];
    }
  }
  return v;
}

Field variational_derivative_e1(const ModelSpec& m, const Field& f) {
  if (m.kind == ModelKind::PhaseFieldCrystal) {
    return variational_derivative_e1(m, f, forward(f));
  }
  Field v = cube_field(m, f);
  for (size_t i = 0; i < v.values.size(); ++i) {
    v.values[i] -= f.values[i];
  }
  return v;
}

std::pair<Field, double> w_of(const ModelSpec& m, const Field& f) {
  const double radicand = e1(m, f) + m.c0;
  if (!(radicand > 0.0)) {
    throw NonpositiveRadicand("E1(u) + C0 <= 0; increase the SAV shift c0");
  }
  const double z = std::sqrt(radicand);
  Field w = variational_derivative_e1(m, f);
  const double inv = 1.0 / z;
  for (double& v : w.values) {
    v *= inv;
  }
  return {std::move(w), z};
}

double psi_monitor(const Field& f) {
  double acc = 0.0;
  for (const double u : f.values) {
    acc += u * u;
  }
  return 3.0 * acc / f.grid.size();
}

double mean_value(const Field& f) {
  double acc = 0.0;
  for (const double u : f.values) {
    acc += u;
  }
  return acc / f.grid.size();
}

}  // namespace savgl
