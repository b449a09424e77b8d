#include "pacc/output.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pacc/error.hpp"

namespace pacc {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

void preflight_output_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir + ": " + ec.message());
  const fs::path probe = fs::path(dir) / ".pacc_write_probe";
  {
    std::ofstream out(probe);
    if (!out || !(out << "ok") || !out.flush()) throw ConfigError("output directory " + dir + " is not writable");
  }
  fs::remove(probe, ec);
}

namespace {

class CsvFile {
 public:
  CsvFile(const fs::path& path, const std::string& header) : path_(path), out_(path) {
    if (!out_) throw ConfigError("cannot write " + path.string());
    out_ << header << '\n';
  }
  template <typename... T>
  void row(const T&... cells) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
    out_ << '\n';
  }
  ~CsvFile() { out_.flush(); }

 private:
  static std::string cell(double x) { return format_number(x); }
  static std::string cell(std::size_t x) { return std::to_string(x); }
  static std::string cell(const std::string& s) { return s; }
  fs::path path_;
  std::ofstream out_;
};

void write_flux(const fs::path& path, const TrajectoryResult& r, double dt) {
  CsvFile csv(path, "t_fs,J_per_fs,F");
  double f = 0.0;
  for (std::size_t i = 0; i < r.times_fs.size(); ++i) {
    f += r.currents[i] * dt;
    csv.row(r.times_fs[i], r.currents[i], f);
  }
}

void write_snapshots(const fs::path& dir, const std::string& label, const TrajectoryResult& r, const Grid2D& g) {
  if (r.snapshots.empty()) return;
  fs::create_directories(dir);
  for (const auto& s : r.snapshots) {
    CsvFile csv(dir / (label + "_t" + format_number(s.t_fs) + "fs.csv"), "r_A,Z_A,rho_R,rho_P");
    for (std::size_t ir = 0; ir < g.r.count; ++ir)
      for (std::size_t iz = 0; iz < g.z.count; ++iz) {
        const std::size_t k = g.index(ir, iz);
        csv.row(units::to_angstrom(g.r.point(ir)), units::to_angstrom(g.z.point(iz)), s.reactant[k], s.product[k]);
      }
  }
}

json budget_json(const NormBudget& b) {
  auto channel = [](const ChannelBudget& c) {
    return json{{"initial", c.initial},     {"injected", c.injected}, {"transferred", c.transferred},
                {"absorbed", c.absorbed},   {"remaining", c.remaining}, {"residual", c.residual()}};
  };
  return json{{"reactant", channel(b.reactant)},
              {"product", channel(b.product)},
              {"tolerance", b.tolerance},
              {"balanced", b.balanced()}};
}

std::string point_label(const ScanPoint& p) {
  return "dt" + std::to_string(p.delay_index) + "_theta" + std::to_string(p.phase_index);
}

}  // namespace

std::vector<std::string> emit_outputs(const ScanResult& result, const ReactionModel& model, const std::string& dir) {
  preflight_output_dir(dir);
  const fs::path root(dir);
  std::vector<std::string> written;

  if (result.one_pulse) {
    const TrajectoryResult& one = *result.one_pulse;
    {
      CsvFile csv(root / "one_pulse_vibrational.csv", "n,E_n_eV,P_n");
      for (std::size_t n = 0; n < one.state_flux.size(); ++n)
        csv.row(n, units::to_ev(result.state_energies.at(n)), one.state_flux[n]);
    }
    written.push_back("one_pulse_vibrational.csv");
    write_flux(root / "flux_one_pulse.csv", one, model.config.dt_fs);
    written.push_back("flux_one_pulse.csv");
    write_snapshots(root / "snapshots", "one_pulse", one, model.grid);
  }

  if (!result.points.empty()) {
    {
      CsvFile csv(root / "signal_map.csv", "delay_fs,theta_rad,S_percent,F_two");
      for (const auto& p : result.points)
        if (p.ok) csv.row(p.delay_fs, p.theta, result.signal(p), p.result.flux);
    }
    written.push_back("signal_map.csv");
    {
      CsvFile csv(root / "vibrational_deviation.csv", "delay_fs,theta_rad,n,P_n_two,P_n_one,deviation_percent");
      for (const auto& p : result.points) {
        if (!p.ok || !result.one_pulse) continue;
        for (std::size_t n = 0; n < p.result.state_flux.size(); ++n) {
          const double one = result.one_pulse->state_flux[n];
          const double dev = signal_percent(p.result.state_flux[n], one);
          csv.row(p.delay_fs, p.theta, n, p.result.state_flux[n], one, dev);
        }
      }
    }
    written.push_back("vibrational_deviation.csv");
    fs::create_directories(root / "flux_points");
    for (const auto& p : result.points) {
      if (!p.ok) continue;
      write_flux(root / "flux_points" / (point_label(p) + ".csv"), p.result, model.config.dt_fs);
      write_snapshots(root / "snapshots", point_label(p), p.result, model.grid);
    }
    written.push_back("flux_points/");
  }

  json meta;
  meta["version"] = result.version;
  meta["config_hash"] = result.config_hash;
  meta["config"] = json::parse(resolved_config_json(model.config, -1));
  meta["species_provenance"] = model.species.provenance;
  meta["units"] = {{"energy", "eV"}, {"length", "A"}, {"time", "fs"}, {"flux", "probability"},
                   {"current", "probability per fs"}};
  meta["adsorbate"] = {{"energy_eV", units::to_ev(model.adsorbate.energy)},
                       {"dispersion_eV", units::to_ev(model.adsorbate.dispersion)},
                       {"iterations", model.adsorbate.iterations}};
  meta["initial_energy_eV"] = units::to_ev(model.initial_energy);
  std::vector<double> e_ev;
  for (double e : result.state_energies) e_ev.push_back(units::to_ev(e));
  meta["vibrational_basis"] = {{"n_states", result.state_energies.size()},
                               {"energies_eV", e_ev},
                               {"z_flux_A", units::to_angstrom(model.basis.z_flux)},
                               {"orthonormality_residual", model.basis.orthonormality_residual}};
  std::vector<double> lines_a;
  for (double z : model.flux_lines) lines_a.push_back(units::to_angstrom(model.grid.z.point(model.grid.z.nearest_index(z))));
  meta["flux_lines_A"] = lines_a;
  if (result.one_pulse) {
    meta["one_pulse"] = {{"F", result.one_pulse->flux},
                         {"line_F", result.one_pulse->line_flux},
                         {"chebyshev_order", result.one_pulse->chebyshev_order},
                         {"norm_budget", budget_json(result.one_pulse->budget)}};
  }
  json points = json::array();
  for (const auto& p : result.points) {
    json j{{"delay_fs", p.delay_fs}, {"theta_rad", p.theta}, {"ok", p.ok}};
    if (p.ok) {
      j["realized_delay_fs"] = p.result.injection_time_fs.value_or(0.0);
      j["injection_step"] = p.result.injection_step.value_or(0);
      j["F_two"] = p.result.flux;
      j["line_F"] = p.result.line_flux;
      j["norm_budget"] = budget_json(p.result.budget);
    } else {
      j["error"] = p.error;
    }
    points.push_back(j);
  }
  meta["points"] = points;
  meta["completed_points"] = result.points.size() - result.failed();
  meta["failed_points"] = result.failed();
  {
    std::ofstream out(root / "metadata.json");
    if (!out) throw ConfigError("cannot write metadata.json in " + dir);
    out << meta.dump(2) << '\n';
  }
  written.push_back("metadata.json");
  return written;
}

}  // namespace pacc
