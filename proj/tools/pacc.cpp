// pacc: command line front end for the two-pulse wave-packet simulator.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pacc/config.hpp"
#include "pacc/error.hpp"
#include "pacc/experiment.hpp"
#include "pacc/output.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 1, kNumerical = 2, kPartial = 3 };

struct Common {
  std::string config_path;
  std::string out_dir;
  std::string species;
  std::size_t workers = 1;
  bool snapshots = false;
};

pacc::ExperimentConfig resolve(const Common& c) {
  pacc::ExperimentConfig cfg = c.config_path.empty() ? pacc::ExperimentConfig{} : pacc::load_config(c.config_path);
  if (!c.species.empty()) {
    cfg.species = pacc::species_from_string(c.species);
  }
  if (!c.out_dir.empty()) cfg.output_dir = c.out_dir;
  cfg.validate();
  return cfg;
}

void log(const std::string& msg) { std::cerr << "[pacc] " << msg << std::endl; }

int cmd_relax(const Common& c) {
  const auto cfg = resolve(c);
  pacc::preflight_output_dir(cfg.output_dir);
  const auto species = pacc::make_species_model(cfg.species_table(), cfg.species, cfg.model_options());
  pacc::RelaxConfig rc;
  rc.dispersion_stop = cfg.dispersion_stop();
  const auto a = pacc::relax_adsorbate(species, cfg.grid(), pacc::units::from_angstrom(cfg.z_s_A), rc);
  std::ofstream out(std::filesystem::path(cfg.output_dir) / "adsorbate.csv");
  out << "z_h_A,psi_re,psi_im\n";
  for (std::size_t i = 0; i < a.axis.count; ++i)
    out << pacc::format_number(pacc::units::to_angstrom(a.axis.point(i))) << ',' << pacc::format_number(a.psi[i].real())
        << ',' << pacc::format_number(a.psi[i].imag()) << '\n';
  std::cout << "adsorbate ground state: E = " << pacc::units::to_ev(a.energy)
            << " eV, dispersion = " << pacc::units::to_ev(a.dispersion) << " eV, iterations = " << a.iterations
            << "\n";
  return kOk;
}

int cmd_basis(const Common& c) {
  const auto cfg = resolve(c);
  pacc::preflight_output_dir(cfg.output_dir);
  const auto species = pacc::make_species_model(cfg.species_table(), cfg.species, cfg.model_options());
  const auto v = pacc::build_diabatic(species, cfg.grid());
  pacc::BasisOptions opt;
  opt.filter.dispersion_stop = cfg.dispersion_stop();
  opt.filter.sharpness = cfg.filter_sharpness;
  const auto basis = pacc::vibrational_basis(v, species.masses, cfg.z_flux(), cfg.state_count(), opt);
  const std::filesystem::path dir(cfg.output_dir);
  {
    std::ofstream out(dir / "basis_energies.csv");
    out << "n,E_n_eV\n";
    for (std::size_t n = 0; n < basis.size(); ++n)
      out << n << ',' << pacc::format_number(pacc::units::to_ev(basis.energies[n])) << '\n';
  }
  {
    std::ofstream out(dir / "basis_states.csv");
    out << "r_A";
    for (std::size_t n = 0; n < basis.size(); ++n) out << ",chi_" << n;
    out << '\n';
    for (std::size_t i = 0; i < basis.r.count; ++i) {
      out << pacc::format_number(pacc::units::to_angstrom(basis.r.point(i)));
      for (std::size_t n = 0; n < basis.size(); ++n) out << ',' << pacc::format_number(basis.states[n][i].real());
      out << '\n';
    }
  }
  std::cout << basis.size() << " vibrational states at Z_flux = " << pacc::units::to_angstrom(basis.z_flux)
            << " A, orthonormality residual " << basis.orthonormality_residual << "\n";
  for (std::size_t n = 0; n < basis.size(); ++n)
    std::cout << "  n = " << n << "  E = " << pacc::units::to_ev(basis.energies[n]) << " eV\n";
  return kOk;
}

int cmd_run(const Common& c, std::optional<double> delay_fs, std::optional<double> phase) {
  const auto cfg = resolve(c);
  pacc::preflight_output_dir(cfg.output_dir);
  log("building model for " + pacc::to_string(cfg.species));
  const auto model = pacc::build_model(cfg);
  pacc::ScanResult result;
  result.state_energies = model.basis.energies;
  result.config_hash = pacc::hex64(pacc::config_hash(cfg));
  pacc::RunOptions opt;
  opt.snapshots = c.snapshots;
  log("one-pulse trajectory");
  result.one_pulse = pacc::run_one_pulse(model, opt);
  std::cout << "F_one = " << result.one_pulse->flux << "\n";
  if (delay_fs) {
    pacc::ScanPoint p;
    p.delay_fs = *delay_fs;
    p.theta = phase.value_or(0.0);
    result.delays_fs = {p.delay_fs};
    result.phases_rad = {p.theta};
    log("two-pulse trajectory");
    try {
      p.result = pacc::run_two_pulse(model, p.delay_fs, p.theta, opt);
      p.ok = true;
    } catch (const pacc::NumericalError& e) {
      p.error = e.what();
    }
    result.points.push_back(p);
    if (p.ok)
      std::cout << "F_two = " << p.result.flux << "  S = " << result.signal(p) << " %\n";
  }
  pacc::emit_outputs(result, model, cfg.output_dir);
  return result.failed() ? kPartial : kOk;
}

int cmd_scan(const Common& c) {
  const auto cfg = resolve(c);
  pacc::preflight_output_dir(cfg.output_dir);
  log("building model for " + pacc::to_string(cfg.species));
  const auto model = pacc::build_model(cfg);
  log("scanning " + std::to_string(cfg.delays().size() * cfg.phases().size()) + " points on " +
      std::to_string(c.workers) + " worker(s)");
  const auto result = pacc::run_scan(model, c.workers, [](const pacc::ScanPoint& p) {
    log("point delay " + pacc::format_number(p.delay_fs) + " fs, theta " + pacc::format_number(p.theta) +
        (p.ok ? " done" : " FAILED: " + p.error));
  });
  pacc::emit_outputs(result, model, cfg.output_dir);
  if (result.one_pulse) std::cout << "F_one = " << result.one_pulse->flux << "\n";
  for (const auto& p : result.points)
    if (p.ok)
      std::cout << "delay " << p.delay_fs << " fs  theta " << p.theta << "  S = " << result.signal(p) << " %\n";
  if (result.failed()) {
    std::cerr << result.failed() << " of " << result.points.size() << " scan points failed\n";
    return kPartial;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-pulse coherent control wave-packet simulator"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "JSON config file (defaults when omitted)")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", common.out_dir, "Output directory (overrides output.dir)");
    sub->add_option("--species", common.species, "Projectile species (H, Li, Na, K, Rb, Cs)");
    sub->add_option("--workers", common.workers, "Concurrent trajectories")->check(CLI::PositiveNumber);
    sub->add_flag("--snapshots", common.snapshots, "Write channel densities at output.snapshot_times_fs");
  };
  auto* relax = app.add_subcommand("relax", "Relax the adsorbate ground state");
  auto* basis = app.add_subcommand("basis", "Vibrational eigenstates along the flux line");
  auto* run = app.add_subcommand("run", "One-pulse trajectory, plus a two-pulse one with --delay-fs");
  auto* scan = app.add_subcommand("scan", "Full (delay, phase) signal map");
  for (auto* sub : {relax, basis, run, scan}) add_common(sub);
  std::optional<double> delay_fs, phase;
  run->add_option("--delay-fs", delay_fs, "Second pulse delay (fs)");
  run->add_option("--phase-rad", phase, "Second pulse relative phase (rad)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*relax) return cmd_relax(common);
    if (*basis) return cmd_basis(common);
    if (*run) return cmd_run(common, delay_fs, phase);
    if (*scan) return cmd_scan(common);
  } catch (const pacc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const pacc::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const pacc::GridMismatch& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
  return kOk;
}
