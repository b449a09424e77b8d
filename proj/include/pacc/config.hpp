#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pacc/grid.hpp"
#include "pacc/initial_state.hpp"
#include "pacc/potentials.hpp"
#include "pacc/propagator.hpp"
#include "pacc/species.hpp"

namespace pacc {

inline constexpr const char* kVersion = "1.0.0";

/// Everything that defines a run, in external units (eV, A, fs, amu, rad).
/// Conversions to internal units happen in the accessors below.
struct ExperimentConfig {
  // species
  Species species = Species::H;
  std::optional<std::string> parameter_file;  // species table (JSON)
  std::optional<std::string> curve_file;      // alkali singlet/triplet table

  // grid
  std::size_t n_r = 256;
  std::size_t n_z = 256;
  double dr_A = 0.0529;
  double dz_A = 0.0529;
  double r_min_A = 0.0529;
  double z_min_A = 0.0529;

  // pulse
  double sigma_y_A2 = 0.280;
  double z_s_A = 6.82;
  double k_y_invA = -9.45;
  double amplitude_scale = 1.0;
  double second_amplitude_scale = 1.0;

  // propagator
  double dt_fs = 0.097;
  std::size_t n_steps = 5000;
  double tolerance = 1e-12;
  std::size_t max_order = 4096;

  // absorbing boundary
  double cap_strength_eV = 0.00027;
  double cap_width_r_A = 1.32;
  double cap_width_z_A = 1.32;

  // potential
  std::optional<double> coupling_amplitude_eV;
  std::optional<double> coupling_width_A;
  std::optional<double> coupling_decay_invA;
  std::optional<double> coupling_r_e_A;
  double ceiling_eV = 20.0;

  // analysis
  double z_flux_A = 5.24;
  std::vector<double> flux_offsets_A;  // extra lines measured in the same run
  std::optional<std::size_t> n_states;
  double filter_sharpness = 4000.0;

  // relaxation
  std::optional<double> dispersion_stop_eV;  // default 1e-6 hartree

  // scan
  std::optional<std::vector<double>> delays_fs;
  std::optional<std::vector<double>> phases_rad;
  double settling_fs = 100.0;

  // output
  std::string output_dir = "pacc_out";
  std::vector<double> snapshot_times_fs;

  void validate() const;

  Grid2D grid() const;
  PulseSpec pulse() const;
  PropagatorConfig propagator() const;
  ModelOptions model_options() const;
  double dispersion_stop() const;
  double z_flux() const;
  std::vector<double> flux_lines() const;  // primary first, then offsets
  std::size_t state_count() const;
  std::vector<double> delays() const;  // fs
  std::vector<double> phases() const;  // rad
  SpeciesTable species_table() const;
};

/// Per-species scan defaults.
std::vector<double> default_delays_fs(Species s);
std::vector<double> default_phases_rad();
std::size_t default_state_count(Species s);

/// Parses the JSON config. Unknown sections or keys are a ConfigError.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

/// Fully resolved config (defaults filled in) as canonical JSON text.
std::string resolved_config_json(const ExperimentConfig& cfg, int indent = 2);

/// FNV-1a 64-bit hash of the compact resolved config.
std::uint64_t config_hash(const ExperimentConfig& cfg);
std::string hex64(std::uint64_t v);

}  // namespace pacc
