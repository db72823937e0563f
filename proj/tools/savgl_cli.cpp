// Command-line driver: simulations, scheme-parameter checks, stepsize
// estimation and the de-aliasing self-test.
//
// Exit codes: 0 success, 2 validation error, 3 runtime numerical abort.

#include <cstdio>
#include <exception>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "savgl/errors.hpp"
#include "savgl/identities.hpp"
#include "savgl/io.hpp"
#include "savgl/spectral.hpp"
#include "savgl/stability.hpp"

namespace {

using nlohmann::json;
using namespace savgl;

int cmd_simulate(const std::string& config_path, bool binary) {
  RunConfig cfg = load_run_config(config_path);
  cfg.binary_snapshots = binary;
  const SimulationResult result = run_simulation(cfg);
  std::cout << "completed " << result.records.back().step << " steps; wrote "
            << cfg.output_directory << "/energies.csv\n";
  return 0;
}

json branch_report(const GltdParams& p, const IdentityBranch& br) {
  json j = {{"c2_sign", br.c2_sign == SignChoice::Minus ? "minus" : "plus"},
            {"root_order", br.order == RootOrder::A ? "A" : "B"}};
  try {
    const IdentityCoefficients co = solve_coefficients(p, br);
    j["coefficients"] = {{"a", co.a}, {"b", co.b},   {"d", co.d},
                         {"c1", co.c1}, {"c2", co.c2}, {"c3", co.c3}};
    j["system_residual"] = system_residual(p, co);
  } catch (const ValidationError& e) {
    j["error"] = e.what();
  }
  return j;
}

int cmd_check_params(double alpha0, double beta0, double beta2,
                     bool identities) {
  const GltdParams p = derive_params(alpha0, beta0, beta2);
  const SchemeCase sc = classify(p);
  const StabilityVerdict verdict = stability_verdict(p);
  // The closed-form conditions are sufficient for the one-step and
  // second-order sub-families; the root scan catches two-step
  // first-order sets they mis-report.
  const RootScanResult scan = verify_a_stability_numerically(
      p, ComplexRect{-100.0, 0.0, -100.0, 100.0, 81, 81});
  const bool scan_stable = scan.max_modulus <= 1.0 + 1e-12;

  json report = {{"alpha0", p.alpha0},
                 {"beta0", p.beta0},
                 {"beta2", p.beta2},
                 {"beta1", p.beta1},
                 {"kappa", p.kappa},
                 {"case", to_string(sc)},
                 {"a_stable", verdict.a_stable},
                 {"a_stable_scan", scan_stable},
                 {"scan_max_root_modulus", scan.max_modulus},
                 {"scan_boundary_double_root", scan.boundary_double_root},
                 {"algebraically_stable",
                  to_string(verdict.algebraically_stable)},
                 {"discriminant", discriminant(p)}};

  std::printf("case:                 %s\n", to_string(sc));
  std::printf("beta1 = %.17g, kappa = %.17g\n", p.beta1, p.kappa);
  std::printf("A-stable (closed form): %s\n",
              verdict.a_stable ? "yes" : "no");
  std::printf("A-stable (root scan):   %s (max modulus %.6g)\n",
              scan_stable ? "yes" : "no", scan.max_modulus);
  std::printf("algebraically stable: %s\n",
              to_string(verdict.algebraically_stable));
  std::printf("identity discriminant: %.17g\n", discriminant(p));

  if (identities) {
    json branches = json::array();
    for (const IdentityBranch& br : all_branches()) {
      branches.push_back(branch_report(p, br));
    }
    report["identity_branches"] = branches;
    for (const auto& b : branches) {
      if (b.contains("error")) {
        std::printf("branch (%s, %s): %s\n",
                    b["c2_sign"].get<std::string>().c_str(),
                    b["root_order"].get<std::string>().c_str(),
                    b["error"].get<std::string>().c_str());
      } else {
        const auto& co = b["coefficients"];
        std::printf(
            "branch (%s, %s): a=%.12g b=%.12g d=%.12g c=(%.12g, %.12g, "
            "%.12g) residual=%.3g\n",
            b["c2_sign"].get<std::string>().c_str(),
            b["root_order"].get<std::string>().c_str(),
            co["a"].get<double>(), co["b"].get<double>(),
            co["d"].get<double>(), co["c1"].get<double>(),
            co["c2"].get<double>(), co["c3"].get<double>(),
            b["system_residual"].get<double>());
      }
    }
  }

  std::cout << report.dump(2) << '\n';
  return 0;
}

int cmd_stepsize(const std::string& model, int n, double length,
                 double epsilon, double alpha0, double beta0, double beta2,
                 double psi, const std::string& csv_path) {
  ModelKind kind;
  if (model == "ac") {
    kind = ModelKind::AllenCahn;
  } else if (model == "ch") {
    kind = ModelKind::CahnHilliard;
  } else if (model == "pfc") {
    kind = ModelKind::PhaseFieldCrystal;
  } else {
    throw ConfigError("--model must be ac|ch|pfc");
  }
  const SpectralGrid grid(n, length);
  const ModelSpec m = build_model(kind, epsilon, grid,
                                  default_c0(kind, grid), 0.0, true);
  const GltdParams p = derive_params(alpha0, beta0, beta2);
  const StepsizeReport rep = estimate_for_model(m, p, psi);

  if (rep.unbounded()) {
    std::printf("tau bound: unbounded (%s), psi=%.6g\n",
                rep.limiting_expression.c_str(), psi);
  } else {
    std::printf(
        "tau bound: %.6g at mode (%d,%d), limiting value %.6g, formula %s, "
        "psi=%.6g\n",
        *rep.tau_max, rep.argmax_mode->first, rep.argmax_mode->second,
        rep.limiting_value, rep.limiting_expression.c_str(), psi);
  }

  if (!csv_path.empty()) {
    std::FILE* f = std::fopen(csv_path.c_str(), "w");
    if (f == nullptr) {
      throw Error("cannot open " + csv_path);
    }
    std::fprintf(f, "k,l,tau_max\n");
    for (const auto& [k, l, tau] : per_mode_bounds(m, p, psi)) {
      std::fprintf(f, "%d,%d,%.17g\n", k, l, tau);
    }
    std::fclose(f);
  }
  return 0;
}

int cmd_dealias_test(int n, unsigned long long seed) {
  // GridTooLarge guards the brute-force oracle cost.
  if (n > 16) {
    throw GridTooLarge("dealias-test supports n <= 16");
  }
  const SpectralGrid grid(n, 2.0 * M_PI);
  Field f(grid);
  std::mt19937_64 rng(seed);
  for (double& v : f.values) {
    v = 2.0 * uniform01(rng()) - 1.0;
  }
  const SpectralField padded = cubic_dealiased(f);
  const SpectralField direct = brute_force_truncated_convolution(forward(f));
  double max_dev = 0.0;
  double max_mag = 0.0;
  for (size_t i = 0; i < padded.coeffs.size(); ++i) {
    max_dev = std::max(max_dev, std::abs(padded.coeffs[i] - direct.coeffs[i]));
    max_mag = std::max(max_mag, std::abs(direct.coeffs[i]));
  }
  const double rel = max_mag > 0.0 ? max_dev / max_mag : max_dev;
  const bool pass = rel <= 1e-9;
  std::printf("max deviation %.3e (relative %.3e): %s\n", max_dev, rel,
              pass ? "pass" : "FAIL");
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SAV-GL / G-SAV-GL gradient-flow solver"};
  app.require_subcommand(1);

  std::string config_path;
  bool binary = false;
  CLI::App* simulate = app.add_subcommand("simulate", "run a configured simulation");
  simulate->add_option("--config", config_path, "JSON run configuration")
      ->required();
  simulate->add_flag("--binary", binary, "raw little-endian snapshots");

  double alpha0 = 0.0, beta0 = 0.0, beta2 = 1.0;
  bool identities = false;
  CLI::App* check = app.add_subcommand("check-params",
                                       "classify a parameter triple");
  check->add_option("--alpha0", alpha0)->required();
  check->add_option("--beta0", beta0)->required();
  check->add_option("--beta2", beta2)->required();
  check->add_flag("--identities", identities,
                  "solve the identity coefficients on every branch");

  std::string model = "ac";
  int n = 128;
  double length = 2.0 * M_PI;
  double epsilon = 0.1;
  double psi = 1.0;
  std::string csv_path;
  CLI::App* stepsize = app.add_subcommand("stepsize",
                                          "estimate the stepsize bound");
  stepsize->add_option("--model", model, "ac|ch|pfc")->required();
  stepsize->add_option("--n", n)->required();
  stepsize->add_option("--length", length)->required();
  stepsize->add_option("--epsilon", epsilon)->required();
  stepsize->add_option("--alpha0", alpha0)->required();
  stepsize->add_option("--beta0", beta0)->required();
  stepsize->add_option("--beta2", beta2)->required();
  stepsize->add_option("--psi", psi)->required();
  stepsize->add_option("--csv", csv_path, "per-mode bounds CSV");

  int dn = 8;
  unsigned long long seed = 42;
  CLI::App* dealias = app.add_subcommand("dealias-test",
                                         "zero-padding vs brute force");
  dealias->add_option("--n", dn)->required();
  dealias->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (simulate->parsed()) {
      return cmd_simulate(config_path, binary);
    }
    if (check->parsed()) {
      return cmd_check_params(alpha0, beta0, beta2, identities);
    }
    if (stepsize->parsed()) {
      return cmd_stepsize(model, n, length, epsilon, alpha0, beta0, beta2,
                          psi, csv_path);
    }
    if (dealias->parsed()) {
      return cmd_dealias_test(dn, seed);
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical abort: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
