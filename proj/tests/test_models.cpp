#include <doctest.h>

#include <cmath>

#include "savgl/errors.hpp"
#include "savgl/models.hpp"
#include "test_support.hpp"

using namespace savgl;

namespace {

Field cos_x_field(const SpectralGrid& grid) {
  Field f(grid);
  const double fac = 2.0 * M_PI / grid.length();
  for (int i = 0; i < grid.n(); ++i) {
    const double c = std::cos(fac * grid.coord(i));
    for (int j = 0; j < grid.n(); ++j) {
      f.at(i, j) = c;
    }
  }
  return f;
}

}  // namespace

TEST_CASE("build_model installs the operator symbols") {
  const SpectralGrid g(16, 2.0 * M_PI);
  {
    const ModelSpec m = build_model(ModelKind::AllenCahn, 0.1, g, 1.0, 0.0);
    CHECK(m.l_symbol.at(g.index_of(1), 0) ==
          doctest::Approx(0.01).epsilon(1e-13));
    CHECK(m.g_symbol.at(g.index_of(3), g.index_of(5)) == -1.0);
  }
  {
    const ModelSpec m = build_model(ModelKind::CahnHilliard, 0.1, g, 1.0, 0.0);
    CHECK(m.g_symbol.at(g.index_of(1), 0) ==
          doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(m.l_symbol.at(g.index_of(1), 0) ==
          doctest::Approx(0.01).epsilon(1e-13));
  }
  {
    const SpectralGrid g400(16, 400.0);
    const ModelSpec m =
        build_model(ModelKind::PhaseFieldCrystal, 0.25, g400, 1.0, 0.0);
    const double nu2 = std::pow(M_PI / 200.0, 2);
    CHECK(m.g_symbol.at(g400.index_of(1), 0) ==
          doctest::Approx(-nu2).epsilon(1e-13));
    CHECK(m.l_symbol.at(g400.index_of(1), 0) ==
          doctest::Approx(nu2 * nu2).epsilon(1e-13));
    // Composite G*L is the triharmonic symbol.
    CHECK(m.gl_symbol.at(g400.index_of(2), g400.index_of(3)) ==
          doctest::Approx(OperatorSymbol::triharmonic(g400).at(
                              g400.index_of(2), g400.index_of(3)))
              .epsilon(1e-12));
  }
  // Sign structure of L and G.
  for (const ModelKind kind : {ModelKind::AllenCahn, ModelKind::CahnHilliard,
                               ModelKind::PhaseFieldCrystal}) {
    const double eps = kind == ModelKind::PhaseFieldCrystal ? 0.25 : 0.1;
    const ModelSpec m = build_model(kind, eps, g, 1.0, 0.0);
    for (int a = 0; a < g.n(); ++a) {
      for (int b = 0; b < g.n(); ++b) {
        CHECK(m.l_symbol.at(a, b) >= 0.0);
        CHECK(m.g_symbol.at(a, b) <= 0.0);
      }
    }
  }
}

TEST_CASE("build_model validation") {
  const SpectralGrid g(16, 2.0 * M_PI);
  CHECK_THROWS_AS(build_model(ModelKind::AllenCahn, 1.5, g, 1.0, 0.0),
                  BadEpsilon);
  CHECK_THROWS_AS(build_model(ModelKind::CahnHilliard, 0.0, g, 1.0, 0.0),
                  BadEpsilon);
  CHECK_THROWS_AS(build_model(ModelKind::PhaseFieldCrystal, -0.1, g, 1.0, 0.0),
                  BadEpsilon);
  CHECK_THROWS_AS(build_model(ModelKind::AllenCahn, 0.1, g, 0.0, 0.0),
                  BadShift);
  CHECK_THROWS_AS(build_model(ModelKind::AllenCahn, 0.1, g, 1.0, -1.0),
                  BadShift);
  CHECK(default_c0(ModelKind::AllenCahn, g) == 1.0);
  CHECK(default_c0(ModelKind::PhaseFieldCrystal, SpectralGrid(16, 100.0)) ==
        doctest::Approx(1e6));
}

TEST_CASE("nonlinear energy values") {
  const SpectralGrid g(32, 2.0 * M_PI);
  const ModelSpec ac = build_model(ModelKind::AllenCahn, 0.1, g, 1.0, 0.0);
  CHECK(e1(ac, Field(g, 0.0)) == doctest::Approx(M_PI * M_PI).epsilon(1e-12));
  CHECK(std::abs(e1(ac, Field(g, 1.0))) <= 1e-12);
  const ModelSpec pfc =
      build_model(ModelKind::PhaseFieldCrystal, 0.25, g, 1e3, 0.0);
  CHECK(std::abs(e1(pfc, Field(g, 0.0))) <= 1e-12);
}

TEST_CASE("original energy matches closed-form trig integrals") {
  const SpectralGrid g(32, 2.0 * M_PI);
  const ModelSpec ac = build_model(ModelKind::AllenCahn, 0.1, g, 1.0, 0.0);
  const Field u = cos_x_field(g);
  // (eps^2/2) * 2*pi^2 + (3/8)*pi^2 for u = cos(x) on (0, 2pi)^2.
  const double expected = 0.005 * 2.0 * M_PI * M_PI + 0.375 * M_PI * M_PI;
  CHECK(original_energy(ac, u) ==
        doctest::Approx(expected).epsilon(1e-10));
  CHECK(original_energy(ac, Field(g, 0.0)) ==
        doctest::Approx(M_PI * M_PI).epsilon(1e-12));
  // AC and CH share the free energy.
  const ModelSpec ch = build_model(ModelKind::CahnHilliard, 0.1, g, 1.0, 0.0);
  CHECK(original_energy(ch, u) ==
        doctest::Approx(original_energy(ac, u)).epsilon(1e-13));
}

TEST_CASE("variational derivative examples") {
  const SpectralGrid g(32, 2.0 * M_PI);
  {
    const ModelSpec ac = build_model(ModelKind::AllenCahn, 0.1, g, 1.0, 0.0);
    const Field v = variational_derivative_e1(ac, Field(g, 1.0));
    for (const double x : v.values) {
      CHECK(std::abs(x) <= 1e-11);
    }
  }
  {
    const ModelSpec pfc =
        build_model(ModelKind::PhaseFieldCrystal, 0.25, g, 1e3, 0.0);
    const double c = 0.7;
    const Field v = variational_derivative_e1(pfc, Field(g, c));
    const double expected = c * c * c + 0.75 * c;
    for (const double x : v.values) {
      CHECK(x == doctest::Approx(expected).epsilon(1e-11));
    }
  }
  {
    // De-aliased cubic of cos(x): -(1/4)cos(x) + (1/4)cos(3x).
    const ModelSpec ac = build_model(ModelKind::AllenCahn, 0.1, g, 1.0, 0.0);
    const Field v = variational_derivative_e1(ac, cos_x_field(g));
    const double fac = 2.0 * M_PI / g.length();
    for (int i = 0; i < g.n(); ++i) {
      const double x = g.coord(i);
      const double expected =
          -0.25 * std::cos(fac * x) + 0.25 * std::cos(3.0 * fac * x);
      CHECK(std::abs(v.at(i, 0) - expected) <= 1e-11);
    }
  }
}

TEST_CASE("w_of examples") {
  const SpectralGrid g(16, 2.0 * M_PI);
  const ModelSpec ac = build_model(ModelKind::AllenCahn, 0.1, g, 1.0, 0.0);
  {
    const auto [w, z] = w_of(ac, Field(g, 1.0));
    CHECK(z == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(l2_norm(w) <= 1e-11);
  }
  {
    const auto [w, z] = w_of(ac, Field(g, 0.0));
    CHECK(z == doctest::Approx(std::sqrt(M_PI * M_PI + 1.0)).epsilon(1e-12));
    CHECK(l2_norm(w) <= 1e-11);
  }
  const ModelSpec pfc =
      build_model(ModelKind::PhaseFieldCrystal, 0.25, g, 10.0, 0.0);
  const auto [w, z] = w_of(pfc, Field(g, 0.0));
  CHECK(z == doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));
  CHECK(l2_norm(w) <= 1e-12);
}

TEST_CASE("w_of reports a nonpositive radicand") {
  // PFC with a tiny shift: a steep field drives E1 negative through the
  // -|grad u|^2 term.
  const SpectralGrid g(16, 2.0 * M_PI);
  const ModelSpec pfc =
      build_model(ModelKind::PhaseFieldCrystal, 0.25, g, 1e-8, 0.0);
  Field f(g);
  const double fac = 2.0 * M_PI / g.length();
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.n(); ++j) {
      f.at(i, j) = 0.5 * std::sin(4.0 * fac * g.coord(i));
    }
  }
  CHECK(e1(pfc, f) < 0.0);
  CHECK_THROWS_AS(w_of(pfc, f), NonpositiveRadicand);
}

TEST_CASE("variational derivative is the gradient of e1") {
  // Finite-difference check with the pointwise cubic (the exact gradient
  // of the collocation quartic); the residual decays second order in the
  // probe stepsize.
  const SpectralGrid g(16, 2.0 * M_PI);
  for (const ModelKind kind : {ModelKind::AllenCahn, ModelKind::CahnHilliard,
                               ModelKind::PhaseFieldCrystal}) {
    const double eps = kind == ModelKind::PhaseFieldCrystal ? 0.25 : 0.1;
    const ModelSpec m = build_model(kind, eps, g, 1e3, 0.0, /*dealias=*/false);
    const Field f = random_field(g, 101, -0.8, 0.8);
    const Field h = random_field(g, 202, -1.0, 1.0);
    const Field v = variational_derivative_e1(m, f);
    const double directional = inner_product(v, h);

    auto fd = [&](double delta) {
      Field fp = f;
      Field fm = f;
      for (size_t i = 0; i < f.values.size(); ++i) {
        fp.values[i] += delta * h.values[i];
        fm.values[i] -= delta * h.values[i];
      }
      return (e1(m, fp) - e1(m, fm)) / (2.0 * delta) - directional;
    };

    const double r3 = std::abs(fd(1e-3));
    const double r4 = std::abs(fd(1e-4));
    CHECK(r3 <= 1e-4);
    // Second-order decay, allowing rounding noise at the smaller delta.
    CHECK(r4 <= r3 * 2e-2 + 1e-9);
  }
}

TEST_CASE("operator sign structure on random fields") {
  const SpectralGrid g(16, 2.0 * M_PI);
  for (const ModelKind kind : {ModelKind::AllenCahn, ModelKind::CahnHilliard,
                               ModelKind::PhaseFieldCrystal}) {
    const double eps = kind == ModelKind::PhaseFieldCrystal ? 0.25 : 0.1;
    const ModelSpec m = build_model(kind, eps, g, 1.0, 0.0);
    for (unsigned long long seed = 0; seed < 200; ++seed) {
      const SpectralField u = forward(random_field(g, seed));
      CHECK(symbol_quadratic_form(m.l_symbol, u) >= -1e-12);
      CHECK(symbol_quadratic_form(m.g_symbol, u) <= 1e-12);
    }
  }
}

TEST_CASE("de-aliasing matters on coarse grids and washes out under "
          "refinement") {
  // Evolve the same smooth initial data with the cubic de-aliased and
  // aliased; the trajectories differ visibly when the grid is coarse and
  // agree once the solution is well resolved.
  auto run_diff = [](ModelKind kind, int n, double tau, long steps) {
    const SpectralGrid g(n, 2.0 * M_PI);
    IcSpec spec;
    spec.kind = IcKind::ProductSine;
    spec.amplitude = 0.05;
    spec.offset = 0.0;
    const Field ic = build_initial_condition(spec, g);
    const GltdParams p = derive_params(1.0 / 3.0, 0.0, 2.0 / 3.0);
    Field result[2] = {Field(g), Field(g)};
    for (int mode = 0; mode < 2; ++mode) {
      const ModelSpec m = build_model(kind, 0.1, g, 1.0, 0.0, mode == 0);
      StepperState s = init_state(m, p, SavFamily::Sav, ic, tau);
      while (s.step_index < steps) {
        StepOutput out = step(s);
        s = std::move(out.next_state);
      }
      result[mode] = s.u_curr;
    }
    double diff = 0.0;
    double scale = 0.0;
    for (size_t i = 0; i < result[0].values.size(); ++i) {
      diff = std::max(diff,
                      std::abs(result[0].values[i] - result[1].values[i]));
      scale = std::max(scale, std::abs(result[0].values[i]));
    }
    return diff / scale;
  };

  {
    const double coarse = run_diff(ModelKind::AllenCahn, 16, 0.5, 80);
    const double mid = run_diff(ModelKind::AllenCahn, 32, 0.5, 80);
    const double fine = run_diff(ModelKind::AllenCahn, 64, 0.5, 80);
    CHECK(coarse > 1e-2);
    CHECK(fine < 1e-2);
    CHECK(coarse > mid);
    CHECK(mid > fine);
  }
  {
    const double coarse = run_diff(ModelKind::CahnHilliard, 16, 0.05, 80);
    const double fine = run_diff(ModelKind::CahnHilliard, 64, 0.05, 80);
    CHECK(coarse > 1e-1);
    CHECK(fine < 1e-2);
  }
}

TEST_CASE("psi and mass monitors") {
  const SpectralGrid g(16, 2.0 * M_PI);
  CHECK(psi_monitor(Field(g, 1.0)) == doctest::Approx(3.0));
  CHECK(psi_monitor(Field(g, 0.0)) == 0.0);
  CHECK(mean_value(Field(g, -0.25)) == doctest::Approx(-0.25));
}
