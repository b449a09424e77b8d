#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pacc/analysis.hpp"
#include "pacc/config.hpp"
#include "pacc/initial_state.hpp"
#include "pacc/potentials.hpp"

namespace pacc {

/// Shared, read-only ingredients of every trajectory of one configuration.
struct ReactionModel {
  ExperimentConfig config;
  SpeciesModel species;
  Grid2D grid;
  std::shared_ptr<const DiabaticPotential> potential;
  AdsorbateState adsorbate;
  ChannelField unit_pulse;  // |Psi| = 1
  VibrationalBasis basis;
  PropagatorConfig propagator;
  std::vector<double> flux_lines;  // internal units, primary first
  double initial_energy = 0.0;     // <H> of the first pulse (real part)
};

ReactionModel build_model(const ExperimentConfig& cfg);

struct SecondPulse {
  double delay_fs = 0.0;
  double theta = 0.0;
  double amplitude_scale = 1.0;
};

struct Snapshot {
  double t_fs = 0.0;
  std::vector<double> reactant;  // |Psi_R|^2 in grid layout
  std::vector<double> product;   // |Psi_P|^2
};

struct TrajectoryResult {
  double flux = 0.0;                // F at the primary line
  std::vector<double> line_flux;    // F at every line, primary first
  std::vector<double> state_flux;   // P_n
  std::vector<double> times_fs;     // J series at the primary line
  std::vector<double> currents;     // J in 1/fs
  NormBudget budget;
  std::optional<std::size_t> injection_step;
  std::optional<double> injection_time_fs;
  std::size_t chebyshev_order = 0;
  std::vector<Snapshot> snapshots;
};

struct RunOptions {
  bool snapshots = false;  // record densities at config.snapshot_times_fs
};

TrajectoryResult run_trajectory(const ReactionModel& model, const std::optional<SecondPulse>& second,
                                const RunOptions& options = {});
TrajectoryResult run_one_pulse(const ReactionModel& model, const RunOptions& options = {});
TrajectoryResult run_two_pulse(const ReactionModel& model, double delay_fs, double theta,
                               const RunOptions& options = {});

/// 100 (F_two / F_one - 1); NaN when F_one is zero.
double signal_percent(double f_two, double f_one);

struct ScanPoint {
  std::size_t delay_index = 0;
  std::size_t phase_index = 0;
  double delay_fs = 0.0;
  double theta = 0.0;
  bool ok = false;
  std::string error;
  TrajectoryResult result;
};

struct ScanResult {
  std::optional<TrajectoryResult> one_pulse;
  std::vector<double> delays_fs;
  std::vector<double> phases_rad;
  std::vector<ScanPoint> points;  // delay-major lattice order
  std::vector<double> state_energies;
  std::string config_hash;
  std::string version = kVersion;

  std::size_t failed() const;
  double signal(const ScanPoint& p) const;
};

using ScanProgress = std::function<void(const ScanPoint&)>;

/// One-pulse baseline, then every lattice point on `workers` threads. Failed
/// points are recorded with their reason. An empty lattice skips the baseline.
ScanResult run_scan(const ReactionModel& model, std::size_t workers = 1, const ScanProgress& progress = {});

/// Scan over explicit lattices (the config's are ignored).
ScanResult run_scan(const ReactionModel& model, const std::vector<double>& delays_fs,
                    const std::vector<double>& phases_rad, std::size_t workers = 1, const ScanProgress& progress = {});

}  // namespace pacc
