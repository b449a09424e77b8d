#pragma once

#include <string>
#include <vector>

#include "pacc/experiment.hpp"

namespace pacc {

/// Creates `dir` if needed and proves it writable. Throws ConfigError.
void preflight_output_dir(const std::string& dir);

/// Writes the result files into `dir` and returns their names:
///   signal_map.csv          delay_fs, theta_rad, S_percent, F_two
///   vibrational_deviation.csv  per lattice point and state, vs the one-pulse baseline
///   one_pulse_vibrational.csv  n, E_n_eV, P_n
///   flux_one_pulse.csv      t_fs, J, F
///   flux_points/*.csv       t_fs, J, F for each lattice point
///   metadata.json           resolved config, injections, norm budgets, failures
///   snapshots/*.csv         densities, when recorded
/// An empty scan produces metadata.json only.
std::vector<std::string> emit_outputs(const ScanResult& result, const ReactionModel& model, const std::string& dir);

/// Plain formatting used by every CSV: shortest exact round-trip text.
std::string format_number(double x);

}  // namespace pacc
