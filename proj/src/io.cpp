#include "savgl/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "savgl/errors.hpp"
#include "savgl/stability.hpp"

namespace savgl {

using nlohmann::json;

const char* to_string(IcKind k) {
  switch (k) {
    case IcKind::Random: return "random";
    case IcKind::ProductSine: return "product_sine";
    case IcKind::Polycrystal: return "polycrystal";
    case IcKind::Constant: return "constant";
  }
  return "?";
}

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void require_keys(const json& obj, const std::string& where,
                  const std::vector<std::string>& allowed) {
  if (!obj.is_object()) {
    throw ConfigError("config section '" + where + "' must be an object");
  }
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const auto& k : allowed) {
      if (it.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw ConfigError("unknown key '" + it.key() + "' in config section '" +
                        where + "'");
    }
  }
}

const json& require(const json& obj, const std::string& where,
                    const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ConfigError("missing key '" + key + "' in config section '" +
                      where + "'");
  }
  return *it;
}

double as_number(const json& v, const std::string& what) {
  if (!v.is_number()) {
    throw ConfigError("'" + what + "' must be a number");
  }
  return v.get<double>();
}

ModelKind parse_model_kind(const std::string& s) {
  if (s == "ac") return ModelKind::AllenCahn;
  if (s == "ch") return ModelKind::CahnHilliard;
  if (s == "pfc") return ModelKind::PhaseFieldCrystal;
  throw ConfigError("model.kind must be one of ac|ch|pfc");
}

IcKind parse_ic_kind(const std::string& s) {
  if (s == "random") return IcKind::Random;
  if (s == "product_sine") return IcKind::ProductSine;
  if (s == "polycrystal") return IcKind::Polycrystal;
  if (s == "constant") return IcKind::Constant;
  throw ConfigError(
      "ic.kind must be one of random|product_sine|polycrystal|constant");
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require_keys(root, "<root>",
               {"model", "grid", "scheme", "time", "ic", "dealias", "output",
                "psi_estimate"});

  RunConfig cfg;

  const json& model = require(root, "<root>", "model");
  require_keys(model, "model", {"kind", "epsilon", "c0", "ctilde0"});
  cfg.model_kind =
      parse_model_kind(require(model, "model", "kind").get<std::string>());
  cfg.epsilon = as_number(require(model, "model", "epsilon"), "model.epsilon");
  if (model.contains("c0")) {
    cfg.c0 = as_number(model["c0"], "model.c0");
    cfg.c0_defaulted = false;
  }
  if (model.contains("ctilde0")) {
    cfg.ctilde0 = as_number(model["ctilde0"], "model.ctilde0");
  }

  const json& grid = require(root, "<root>", "grid");
  require_keys(grid, "grid", {"n", "length"});
  cfg.grid_n = require(grid, "grid", "n").get<int>();
  cfg.grid_length = as_number(require(grid, "grid", "length"), "grid.length");
  if (cfg.grid_n < 8 || cfg.grid_n % 2 != 0) {
    throw ConfigError("grid.n must be an even integer >= 8");
  }
  if (!(cfg.grid_length > 0.0)) {
    throw ConfigError("grid.length must be positive");
  }

  const json& scheme = require(root, "<root>", "scheme");
  require_keys(scheme, "scheme", {"family", "alpha0", "beta0", "beta2"});
  const std::string family =
      require(scheme, "scheme", "family").get<std::string>();
  if (family == "sav") {
    cfg.family = SavFamily::Sav;
  } else if (family == "gsav") {
    cfg.family = SavFamily::Gsav;
  } else {
    throw ConfigError("scheme.family must be sav|gsav");
  }
  cfg.alpha0 = as_number(require(scheme, "scheme", "alpha0"), "scheme.alpha0");
  cfg.beta0 = as_number(require(scheme, "scheme", "beta0"), "scheme.beta0");
  cfg.beta2 = as_number(require(scheme, "scheme", "beta2"), "scheme.beta2");

  const json& time = require(root, "<root>", "time");
  require_keys(time, "time", {"tau", "steps"});
  cfg.tau = as_number(require(time, "time", "tau"), "time.tau");
  cfg.steps = require(time, "time", "steps").get<long>();
  if (!(cfg.tau > 0.0)) {
    throw ConfigError("time.tau must be positive");
  }
  if (cfg.steps < 1) {
    throw ConfigError("time.steps must be >= 1");
  }

  const json& ic = require(root, "<root>", "ic");
  require_keys(ic, "ic",
               {"kind", "seed", "amplitude", "offset", "phi0", "b", "theta"});
  cfg.ic.kind = parse_ic_kind(require(ic, "ic", "kind").get<std::string>());
  if (ic.contains("seed")) {
    cfg.ic.seed = ic["seed"].get<unsigned long long>();
  }
  if (ic.contains("amplitude")) {
    cfg.ic.amplitude = as_number(ic["amplitude"], "ic.amplitude");
  }
  if (ic.contains("offset")) {
    cfg.ic.offset = as_number(ic["offset"], "ic.offset");
  }
  if (ic.contains("phi0")) {
    cfg.ic.phi0 = as_number(ic["phi0"], "ic.phi0");
  }
  if (ic.contains("b")) {
    cfg.ic.b = as_number(ic["b"], "ic.b");
  }
  if (ic.contains("theta")) {
    cfg.ic.theta = as_number(ic["theta"], "ic.theta");
  }
  if (!std::isfinite(cfg.ic.amplitude) || !std::isfinite(cfg.ic.offset)) {
    throw ConfigError("ic.amplitude and ic.offset must be finite");
  }

  if (root.contains("dealias")) {
    if (!root["dealias"].is_boolean()) {
      throw ConfigError("dealias must be a boolean");
    }
    cfg.dealias = root["dealias"].get<bool>();
  }

  if (root.contains("output")) {
    const json& out = root["output"];
    require_keys(out, "output",
                 {"directory", "snapshot_every", "energy_every"});
    if (out.contains("directory")) {
      cfg.output_directory = out["directory"].get<std::string>();
    }
    if (out.contains("snapshot_every")) {
      cfg.snapshot_every = out["snapshot_every"].get<long>();
    }
    if (out.contains("energy_every")) {
      cfg.energy_every = out["energy_every"].get<long>();
    }
    if (cfg.snapshot_every < 0 || cfg.energy_every < 1) {
      throw ConfigError("output cadence values out of range");
    }
  }

  if (root.contains("psi_estimate")) {
    cfg.psi_estimate = as_number(root["psi_estimate"], "psi_estimate");
    if (cfg.psi_estimate < 0.0) {
      throw ConfigError("psi_estimate must be >= 0");
    }
  }

  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path.string());
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

double uniform01(unsigned long long raw) {
  // 53-bit mantissa mapping; keeps the stream identical across platforms.
  return static_cast<double>(raw >> 11) * 0x1.0p-53;
}

namespace {

bool in_rect(double x, double y, double x0, double x1, double y0, double y1) {
  return x >= x0 && x <= x1 && y >= y0 && y <= y1;
}

}  // namespace

Field build_initial_condition(const IcSpec& ic, const SpectralGrid& grid) {
  const int n = grid.n();
  const double len = grid.length();
  Field f(grid);
  switch (ic.kind) {
    case IcKind::Random: {
      std::mt19937_64 rng(ic.seed);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          f.at(i, j) = ic.amplitude * uniform01(rng()) + ic.offset;
        }
      }
      return f;
    }
    case IcKind::ProductSine: {
      const double fac = 2.0 * M_PI / len;
      for (int i = 0; i < n; ++i) {
        const double sx = std::sin(fac * grid.coord(i));
        for (int j = 0; j < n; ++j) {
          f.at(i, j) =
              ic.amplitude * sx * std::sin(fac * grid.coord(j)) + ic.offset;
        }
      }
      return f;
    }
    case IcKind::Constant: {
      for (double& v : f.values) {
        v = ic.offset;
      }
      return f;
    }
    case IcKind::Polycrystal: {
      // Crystallite rectangles at fixed fractions of L; at L = 400 these
      // are [130,170]^2, [230,270]x[130,170] and [180,220]x[230,270].
      const double s6 = std::sqrt(6.0) * ic.theta;
      const double s2 = std::sqrt(2.0) * ic.theta;
      const double s3 = ic.theta / std::sqrt(3.0);
      for (int i = 0; i < n; ++i) {
        const double x = grid.coord(i);
        for (int j = 0; j < n; ++j) {
          const double y = grid.coord(j);
          const double fx = x / len;
          const double fy = y / len;
          double v = ic.phi0;
          if (in_rect(fx, fy, 0.325, 0.425, 0.325, 0.425)) {
            v += ic.b * (std::cos(s6 / 6.0 * (y - x)) *
                             std::cos(s2 / 2.0 * (x + y)) -
                         0.5 * std::cos(s6 / 3.0 * (y - x)));
          } else if (in_rect(fx, fy, 0.575, 0.675, 0.325, 0.425)) {
            v += ic.b * (std::cos(s6 / 6.0 * (x + y)) *
                             std::cos(s2 / 2.0 * (y - x)) -
                         0.5 * std::cos(s6 / 3.0 * (x + y)));
          } else if (in_rect(fx, fy, 0.45, 0.55, 0.575, 0.675)) {
            v += ic.b * (std::cos(s3 * x) * std::cos(ic.theta * y) -
                         0.5 * std::cos(2.0 * s3 * x));
          }
          f.at(i, j) = v;
        }
      }
      return f;
    }
  }
  return f;
}

void write_snapshot_text(const std::filesystem::path& path, const Field& f,
                         double time) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot open snapshot file " + path.string());
  }
  const int n = f.grid.n();
  out << n << ' ' << fmt_double(f.grid.length()) << ' ' << fmt_double(time)
      << '\n';
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out << fmt_double(f.at(i, j)) << (j + 1 == n ? '\n' : ' ');
    }
  }
}

Field read_snapshot_text(const std::filesystem::path& path,
                         double* time_out) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open snapshot file " + path.string());
  }
  int n = 0;
  double length = 0.0, time = 0.0;
  in >> n >> length >> time;
  if (!in) {
    throw Error("malformed snapshot header in " + path.string());
  }
  Field f(SpectralGrid(n, length));
  for (double& v : f.values) {
    in >> v;
  }
  if (!in) {
    throw Error("truncated snapshot data in " + path.string());
  }
  if (time_out != nullptr) {
    *time_out = time;
  }
  return f;
}

void write_snapshot_binary(const std::filesystem::path& path, const Field& f,
                           double time) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot open snapshot file " + path.string());
  }
  out.write(reinterpret_cast<const char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  json sidecar = {{"n", f.grid.n()},
                  {"length", f.grid.length()},
                  {"time", time},
                  {"order", "row-major"},
                  {"dtype", "float64-le"}};
  std::ofstream side(path.string() + ".json");
  side << sidecar.dump(2) << '\n';
}

std::string energies_csv_header() {
  return "step,time,original_energy,modified_energy,sav_value,psi,psi_bar,"
         "mass";
}

std::string format_csv_row(const EnergyRecord& rec) {
  std::string row = std::to_string(rec.step);
  for (const double v :
       {rec.time, rec.original_energy, rec.modified_energy, rec.sav_value,
        rec.psi, rec.psi_bar, rec.mass}) {
    row += ',';
    row += fmt_double(v);
  }
  return row;
}

namespace {

json config_echo(const RunConfig& cfg, double c0_used) {
  json model = {{"kind", cfg.model_kind == ModelKind::AllenCahn ? "ac"
                         : cfg.model_kind == ModelKind::CahnHilliard
                             ? "ch"
                             : "pfc"},
                {"epsilon", cfg.epsilon},
                {"c0", c0_used},
                {"ctilde0", cfg.ctilde0}};
  json ic = {{"kind", to_string(cfg.ic.kind)},
             {"seed", cfg.ic.seed},
             {"amplitude", cfg.ic.amplitude},
             {"offset", cfg.ic.offset}};
  if (cfg.ic.kind == IcKind::Polycrystal) {
    ic["phi0"] = cfg.ic.phi0;
    ic["b"] = cfg.ic.b;
    ic["theta"] = cfg.ic.theta;
  }
  return json{{"model", model},
              {"grid", {{"n", cfg.grid_n}, {"length", cfg.grid_length}}},
              {"scheme",
               {{"family", cfg.family == SavFamily::Sav ? "sav" : "gsav"},
                {"alpha0", cfg.alpha0},
                {"beta0", cfg.beta0},
                {"beta2", cfg.beta2}}},
              {"time", {{"tau", cfg.tau}, {"steps", cfg.steps}}},
              {"ic", ic},
              {"dealias", cfg.dealias},
              {"output",
               {{"directory", cfg.output_directory},
                {"snapshot_every", cfg.snapshot_every},
                {"energy_every", cfg.energy_every}}}};
}

void write_meta(const std::filesystem::path& dir, const RunConfig& cfg,
                double c0_used, const GltdParams& p,
                const StepsizeReport& estimate, double psi_used,
                const std::string& status, long aborted_at) {
  const StabilityVerdict verdict = stability_verdict(p);
  json meta;
  meta["config"] = config_echo(cfg, c0_used);
  meta["c0_defaulted"] = cfg.c0_defaulted;
  meta["scheme"] = {{"case", to_string(classify(p))},
                    {"a_stable", verdict.a_stable},
                    {"algebraically_stable",
                     to_string(verdict.algebraically_stable)},
                    {"kappa", p.kappa},
                    {"beta1", p.beta1}};
  json est = {{"psi", psi_used},
              {"limiting_expression", estimate.limiting_expression}};
  if (estimate.unbounded()) {
    est["tau_bound"] = "unbounded";
  } else {
    est["tau_bound"] = *estimate.tau_max;
    if (estimate.argmax_mode) {
      est["binding_mode"] = {estimate.argmax_mode->first,
                             estimate.argmax_mode->second};
    }
  }
  meta["stepsize_estimate"] = est;
  meta["status"] = status;
  if (aborted_at >= 0) {
    meta["aborted_at_step"] = aborted_at;
  }
  std::ofstream out(dir / "meta.json");
  out << meta.dump(2) << '\n';
}

}  // namespace

SimulationResult run_simulation(const RunConfig& cfg) {
  const SpectralGrid grid(cfg.grid_n, cfg.grid_length);
  const double c0_used =
      cfg.c0_defaulted ? default_c0(cfg.model_kind, grid) : cfg.c0;
  const ModelSpec model = build_model(cfg.model_kind, cfg.epsilon, grid,
                                      c0_used, cfg.ctilde0, cfg.dealias);
  const GltdParams params = derive_params(cfg.alpha0, cfg.beta0, cfg.beta2);

  if (cfg.family == SavFamily::Sav &&
      classify(params) == SchemeCase::TwoStepFirstOrder) {
    // The modified energy needs real identity coefficients; fail up front
    // rather than on the first diagnostic.
    solve_coefficients(params,
                       IdentityBranch{SignChoice::Minus, RootOrder::B});
  }

  const Field ic = build_initial_condition(cfg.ic, grid);
  const double psi_used =
      cfg.psi_estimate >= 0.0 ? cfg.psi_estimate : psi_monitor(ic);
  const StepsizeReport estimate = estimate_for_model(model, params, psi_used);

  const std::filesystem::path dir(cfg.output_directory);
  std::filesystem::create_directories(dir);
  std::ofstream csv(dir / "energies.csv");
  if (!csv) {
    throw Error("cannot open " + (dir / "energies.csv").string());
  }
  csv << energies_csv_header() << '\n';

  SimulationResult result;
  result.status = "completed";

  auto emit = [&](const EnergyRecord& rec) {
    for (const double v :
         {rec.time, rec.original_energy, rec.modified_energy, rec.sav_value,
          rec.psi, rec.psi_bar, rec.mass}) {
      if (!std::isfinite(v)) {
        throw NumericalError("non-finite diagnostics at step " +
                             std::to_string(rec.step));
      }
    }
    csv << format_csv_row(rec) << '\n';
    result.records.push_back(rec);
  };
  auto snapshot = [&](const StepperState& st) {
    if (cfg.snapshot_every <= 0) {
      return;
    }
    char name[32];
    std::snprintf(name, sizeof(name), "u_%06ld", st.step_index);
    const double t = st.step_index * st.tau;
    if (cfg.binary_snapshots) {
      write_snapshot_binary(dir / (std::string(name) + ".bin"), st.u_curr, t);
    } else {
      write_snapshot_text(dir / (std::string(name) + ".dat"), st.u_curr, t);
    }
  };

  try {
    StepperState state = init_state(model, params, cfg.family, ic, cfg.tau);
    emit(diagnostics(state));
    snapshot(state);
    while (state.step_index < cfg.steps) {
      StepOutput out = step(state);
      state = std::move(out.next_state);
      if (state.step_index % cfg.energy_every == 0 ||
          state.step_index == cfg.steps) {
        emit(out.record);
      }
      if (cfg.snapshot_every > 0 &&
          (state.step_index % cfg.snapshot_every == 0 ||
           state.step_index == cfg.steps)) {
        snapshot(state);
      }
    }
  } catch (const NumericalError& e) {
    result.status = std::string("aborted: ") + e.what();
    result.aborted_at_step =
        result.records.empty() ? 0 : result.records.back().step;
    write_meta(dir, cfg, c0_used, params, estimate, psi_used, result.status,
               result.aborted_at_step);
    throw;
  }

  write_meta(dir, cfg, c0_used, params, estimate, psi_used, result.status,
             -1);
  return result;
}

}  // namespace savgl
