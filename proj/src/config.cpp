#include "pacc/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pacc/error.hpp"

namespace pacc {

using nlohmann::json;

namespace {

// Reads keys from one config section and rejects the ones nobody asked for.
class Section {
 public:
  Section(const json& root, const std::string& name) : name_(name) {
    if (!root.contains(name)) return;
    node_ = &root.at(name);
    if (!node_->is_object()) throw ConfigError("config section '" + name + "' must be an object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    if (!node_ || !node_->contains(key)) return;
    try {
      out = node_->at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError("config key " + name_ + "." + key + ": " + e.what());
    }
  }

  template <typename T>
  void read(const char* key, std::optional<T>& out) {
    seen_.insert(key);
    if (!node_ || !node_->contains(key) || node_->at(key).is_null()) return;
    try {
      out = node_->at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError("config key " + name_ + "." + key + ": " + e.what());
    }
  }

  void finish() const {
    if (!node_) return;
    for (const auto& [key, value] : node_->items()) {
      if (!seen_.count(key)) throw ConfigError("unknown config key " + name_ + "." + key);
    }
  }

 private:
  std::string name_;
  const json* node_ = nullptr;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

bool positive(double x) { return x > 0.0 && std::isfinite(x); }

}  // namespace

std::vector<double> default_delays_fs(Species s) {
  if (s == Species::H) return {4.84, 9.68, 14.52, 19.35};
  return {38.7, 43.5, 48.5, 53.2};
}

std::vector<double> default_phases_rad() {
  constexpr double pi = std::numbers::pi;
  return {-pi, -pi / 2.0, 0.0, pi / 2.0, pi};
}

std::size_t default_state_count(Species s) { return s == Species::H ? 10 : 14; }

void ExperimentConfig::validate() const {
  require(n_r >= 8 && n_z >= 8, "grid counts must be at least 8");
  require(positive(dr_A) && positive(dz_A), "grid spacings must be positive");
  require(positive(r_min_A) && positive(z_min_A), "grid origins must be positive (r, Z > 0)");
  grid().validate();
  pulse().validate();
  require(positive(dt_fs), "propagator.dt_fs must be positive");
  require(n_steps >= 1, "propagator.n_steps must be at least 1");
  propagator().validate();
  require(cap_strength_eV >= 0.0, "cap.strength_eV must be non-negative");
  require(cap_width_r_A >= 0.0 && cap_width_z_A >= 0.0, "cap widths must be non-negative");
  require(cap_width_r_A < dr_A * static_cast<double>(n_r - 1), "cap.width_r_A exceeds the grid");
  require(cap_width_z_A < dz_A * static_cast<double>(n_z - 1), "cap.width_z_A exceeds the grid");
  require(positive(ceiling_eV), "potential.ceiling_eV must be positive");
  if (coupling_amplitude_eV) require(*coupling_amplitude_eV >= 0.0, "coupling.amplitude_eV must be >= 0");
  if (coupling_width_A) require(positive(*coupling_width_A), "coupling.width_A must be positive");
  if (coupling_decay_invA) require(positive(*coupling_decay_invA), "coupling.decay_invA must be positive");
  if (coupling_r_e_A) require(positive(*coupling_r_e_A), "coupling.r_e_A must be positive");
  require(state_count() >= 1, "analysis.n_states must be at least 1");
  require(positive(filter_sharpness), "analysis.filter_sharpness must be positive");
  require(positive(dispersion_stop()), "relax.dispersion_stop_eV must be positive");
  const double z_onset = z_min_A + dz_A * static_cast<double>(n_z - 1) - cap_width_z_A;
  for (double z : flux_lines()) {
    require(units::to_angstrom(z) > z_min_A && units::to_angstrom(z) < z_onset,
            "flux line must lie inside the grid and before the Z absorbing band");
  }
  require(settling_fs >= 0.0, "scan.settling_fs must be non-negative");
  const double t_max = dt_fs * static_cast<double>(n_steps);
  for (double d : delays()) {
    require(d >= 0.0 && std::isfinite(d), "scan delays must be non-negative");
    require(d + settling_fs < t_max, "scan delay plus settling time must be below t_max");
  }
  for (double p : phases()) require(std::isfinite(p), "scan phases must be finite");
  for (double t : snapshot_times_fs) require(t >= 0.0 && t <= t_max, "snapshot times must lie in [0, t_max]");
  require(!output_dir.empty(), "output.dir must not be empty");
}

Grid2D ExperimentConfig::grid() const {
  return {{n_r, units::from_angstrom(dr_A), units::from_angstrom(r_min_A)},
          {n_z, units::from_angstrom(dz_A), units::from_angstrom(z_min_A)}};
}

PulseSpec ExperimentConfig::pulse() const {
  return {units::from_square_angstrom(sigma_y_A2), units::from_angstrom(z_s_A), units::from_inverse_angstrom(k_y_invA),
          amplitude_scale};
}

PropagatorConfig ExperimentConfig::propagator() const { return {units::from_fs(dt_fs), tolerance, max_order}; }

ModelOptions ExperimentConfig::model_options() const {
  ModelOptions o;
  if (coupling_amplitude_eV) o.coupling.amplitude = units::from_ev(*coupling_amplitude_eV);
  if (coupling_width_A) o.coupling.width = units::from_angstrom(*coupling_width_A);
  if (coupling_decay_invA) o.coupling.decay = units::from_inverse_angstrom(*coupling_decay_invA);
  if (coupling_r_e_A) o.coupling.r_e = units::from_angstrom(*coupling_r_e_A);
  o.ceiling = units::from_ev(ceiling_eV);
  o.curve_file = curve_file;
  return o;
}

double ExperimentConfig::dispersion_stop() const {
  return dispersion_stop_eV ? units::from_ev(*dispersion_stop_eV) : 1e-6;
}

double ExperimentConfig::z_flux() const { return units::from_angstrom(z_flux_A); }

std::vector<double> ExperimentConfig::flux_lines() const {
  std::vector<double> out{z_flux()};
  for (double o : flux_offsets_A) out.push_back(units::from_angstrom(z_flux_A + o));
  return out;
}

std::size_t ExperimentConfig::state_count() const { return n_states.value_or(default_state_count(species)); }

std::vector<double> ExperimentConfig::delays() const { return delays_fs.value_or(default_delays_fs(species)); }

std::vector<double> ExperimentConfig::phases() const { return phases_rad.value_or(default_phases_rad()); }

SpeciesTable ExperimentConfig::species_table() const {
  return parameter_file ? load_species_table(*parameter_file) : default_species_table();
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> sections{"species", "grid",     "pulse",    "propagator", "cap",
                                              "potential", "analysis", "relax",   "scan",       "output"};
  for (const auto& [key, value] : root.items())
    if (!sections.count(key)) throw ConfigError("unknown config section '" + key + "'");

  ExperimentConfig c;
  {
    Section s(root, "species");
    std::string name = to_string(c.species);
    s.read("name", name);
    c.species = species_from_string(name);
    s.read("parameter_file", c.parameter_file);
    s.read("curve_file", c.curve_file);
    s.finish();
  }
  {
    Section s(root, "grid");
    s.read("n_r", c.n_r);
    s.read("n_z", c.n_z);
    s.read("dr_A", c.dr_A);
    s.read("dz_A", c.dz_A);
    s.read("r_min_A", c.r_min_A);
    s.read("z_min_A", c.z_min_A);
    s.finish();
  }
  {
    Section s(root, "pulse");
    s.read("sigma_y_A2", c.sigma_y_A2);
    s.read("z_s_A", c.z_s_A);
    s.read("k_y_invA", c.k_y_invA);
    s.read("amplitude_scale", c.amplitude_scale);
    s.read("second_amplitude_scale", c.second_amplitude_scale);
    s.finish();
  }
  {
    Section s(root, "propagator");
    s.read("dt_fs", c.dt_fs);
    s.read("n_steps", c.n_steps);
    s.read("tolerance", c.tolerance);
    s.read("max_order", c.max_order);
    s.finish();
  }
  {
    Section s(root, "cap");
    s.read("strength_eV", c.cap_strength_eV);
    s.read("width_r_A", c.cap_width_r_A);
    s.read("width_z_A", c.cap_width_z_A);
    s.finish();
  }
  {
    Section s(root, "potential");
    s.read("coupling_amplitude_eV", c.coupling_amplitude_eV);
    s.read("coupling_width_A", c.coupling_width_A);
    s.read("coupling_decay_invA", c.coupling_decay_invA);
    s.read("coupling_r_e_A", c.coupling_r_e_A);
    s.read("ceiling_eV", c.ceiling_eV);
    s.finish();
  }
  {
    Section s(root, "analysis");
    s.read("z_flux_A", c.z_flux_A);
    s.read("flux_offsets_A", c.flux_offsets_A);
    s.read("n_states", c.n_states);
    s.read("filter_sharpness", c.filter_sharpness);
    s.finish();
  }
  {
    Section s(root, "relax");
    s.read("dispersion_stop_eV", c.dispersion_stop_eV);
    s.finish();
  }
  {
    Section s(root, "scan");
    s.read("delays_fs", c.delays_fs);
    s.read("phases_rad", c.phases_rad);
    s.read("settling_fs", c.settling_fs);
    s.finish();
  }
  {
    Section s(root, "output");
    s.read("dir", c.output_dir);
    s.read("snapshot_times_fs", c.snapshot_times_fs);
    s.finish();
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

json resolved(const ExperimentConfig& c) {
  json j;
  j["species"] = {{"name", to_string(c.species)},
                  {"parameter_file", c.parameter_file ? json(*c.parameter_file) : json(nullptr)},
                  {"curve_file", c.curve_file ? json(*c.curve_file) : json(nullptr)}};
  j["grid"] = {{"n_r", c.n_r}, {"n_z", c.n_z}, {"dr_A", c.dr_A}, {"dz_A", c.dz_A}, {"r_min_A", c.r_min_A},
               {"z_min_A", c.z_min_A}};
  j["pulse"] = {{"sigma_y_A2", c.sigma_y_A2},
                {"z_s_A", c.z_s_A},
                {"k_y_invA", c.k_y_invA},
                {"amplitude_scale", c.amplitude_scale},
                {"second_amplitude_scale", c.second_amplitude_scale}};
  j["propagator"] = {{"dt_fs", c.dt_fs}, {"n_steps", c.n_steps}, {"tolerance", c.tolerance},
                     {"max_order", c.max_order}};
  j["cap"] = {{"strength_eV", c.cap_strength_eV}, {"width_r_A", c.cap_width_r_A}, {"width_z_A", c.cap_width_z_A}};
  j["potential"] = {
      {"coupling_amplitude_eV", c.coupling_amplitude_eV.value_or(0.027)},
      {"coupling_width_A", c.coupling_width_A.value_or(1.0)},
      {"coupling_decay_invA", c.coupling_decay_invA.value_or(1.0)},
      {"coupling_r_e_A", c.coupling_r_e_A ? json(*c.coupling_r_e_A) : json(nullptr)},
      {"ceiling_eV", c.ceiling_eV}};
  j["analysis"] = {{"z_flux_A", c.z_flux_A},
                   {"flux_offsets_A", c.flux_offsets_A},
                   {"n_states", c.state_count()},
                   {"filter_sharpness", c.filter_sharpness}};
  j["relax"] = {{"dispersion_stop_eV", units::to_ev(c.dispersion_stop())}};
  j["scan"] = {{"delays_fs", c.delays()}, {"phases_rad", c.phases()}, {"settling_fs", c.settling_fs}};
  j["output"] = {{"dir", c.output_dir}, {"snapshot_times_fs", c.snapshot_times_fs}};
  return j;
}

}  // namespace

std::string resolved_config_json(const ExperimentConfig& cfg, int indent) { return resolved(cfg).dump(indent); }

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  json j = resolved(cfg);
  j["output"].erase("dir");  // where results go does not change them
  const std::string text = j.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace pacc
