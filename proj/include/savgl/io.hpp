#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "savgl/models.hpp"
#include "savgl/steppers.hpp"

namespace savgl {

enum class IcKind { Random, ProductSine, Polycrystal, Constant };

const char* to_string(IcKind k);

/// Initial-condition description.
/// random:       amplitude * u01(seed) + offset, u01 uniform in [0, 1)
/// product_sine: amplitude * sin(2*pi*x/L) * sin(2*pi*y/L) + offset
/// polycrystal:  three crystallites with constants (phi0, b, theta) in
///               rectangles placed at fixed fractions of L
/// constant:     offset everywhere
struct IcSpec {
  IcKind kind = IcKind::Random;
  unsigned long long seed = 0;
  double amplitude = 0.1;
  double offset = -0.05;
  double phi0 = 0.285;
  double b = 0.446;
  double theta = 0.66;
};

struct RunConfig {
  ModelKind model_kind = ModelKind::AllenCahn;
  double epsilon = 0.1;
  double c0 = -1.0;       // < 0 means "use the model default"
  double ctilde0 = 0.0;
  bool c0_defaulted = true;

  int grid_n = 64;
  double grid_length = 2.0 * M_PI;

  SavFamily family = SavFamily::Sav;
  double alpha0 = 0.0;
  double beta0 = 0.0;
  double beta2 = 1.0;

  double tau = 1.0;
  long steps = 100;

  IcSpec ic;
  bool dealias = true;

  std::string output_directory = "out";
  long snapshot_every = 0;  // 0 disables snapshots
  long energy_every = 1;
  bool binary_snapshots = false;

  double psi_estimate = -1.0;  // < 0 means "use psi of the initial condition"
};

/// Parse a config JSON string. Unknown keys are rejected.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::filesystem::path& path);

/// Deterministic uniform double in [0, 1) from a 64-bit generator draw.
double uniform01(unsigned long long raw);

/// Build the configured initial condition on the grid.
Field build_initial_condition(const IcSpec& ic, const SpectralGrid& grid);

/// Snapshot text format: header line "N L time", then N lines of N
/// space-separated values (row-major).
void write_snapshot_text(const std::filesystem::path& path, const Field& f,
                         double time);
Field read_snapshot_text(const std::filesystem::path& path, double* time_out);

/// Raw little-endian doubles (row-major) plus a JSON sidecar
/// {n, length, time, order}.
void write_snapshot_binary(const std::filesystem::path& path, const Field& f,
                           double time);

struct SimulationResult {
  std::vector<EnergyRecord> records;
  std::string status;           // "completed" or "aborted: ..."
  long aborted_at_step = -1;    // step index of a numerical abort
};

/// Run the configured simulation, writing energies.csv, snapshots and
/// meta.json into the output directory. Numerical aborts are recorded in
/// meta.json and rethrown.
SimulationResult run_simulation(const RunConfig& cfg);

/// The energies.csv header line.
std::string energies_csv_header();

/// Format one record as a CSV row (17 significant digits, deterministic).
std::string format_csv_row(const EnergyRecord& rec);

}  // namespace savgl
