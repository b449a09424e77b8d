#include "pacc/species.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pacc/error.hpp"

namespace pacc {

namespace {

constexpr const char* kDefaultTable = R"json({
  "hydrogen_molecule": {
    "D_HH_eV": 4.505,
    "Z_e_A": 2.0,
    "sato": 0.2,
    "r_e_ad_A": 0.741,
    "r_e_g_A": 0.754,
    "alpha_g_invA": 2.2,
    "alpha_ad_invA": 2.11
  },
  "chemisorption": {
    "D_HM_eV": 2.334,
    "z_HM_e_A": 0.916,
    "alpha_HM_invA": 1.75
  },
  "adsorbate_mass_amu": 1.00782503207,
  "species": {
    "H":  { "mass_amu": 1.00782503207, "A_M_eV": 600.0, "b_M_invA": 3.8,  "C_M_eVA3": 3.5 },
    "Li": { "mass_amu": 7.0160034366,  "A_M_eV": 650.0, "b_M_invA": 3.15, "C_M_eVA3": 7.0,
            "morse_fallback": { "D_eV": 2.515, "alpha_invA": 1.1283, "r_e_A": 1.5957, "sato": 0.2 } },
    "Na": { "mass_amu": 22.989769282,  "A_M_eV": 760.0, "b_M_invA": 2.7,  "C_M_eVA3": 12.5,
            "morse_fallback": { "D_eV": 1.95,  "alpha_invA": 1.1184, "r_e_A": 1.8874, "sato": 0.2 } },
    "K":  { "mass_amu": 38.9637064864, "A_M_eV": 850.0, "b_M_invA": 2.4,  "C_M_eVA3": 20.0,
            "morse_fallback": { "D_eV": 1.84,  "alpha_invA": 0.9746, "r_e_A": 2.240,  "sato": 0.2 } },
    "Rb": { "mass_amu": 86.909180527,  "A_M_eV": 930.0, "b_M_invA": 2.23, "C_M_eVA3": 27.0,
            "morse_fallback": { "D_eV": 1.80,  "alpha_invA": 0.9452, "r_e_A": 2.367,  "sato": 0.2 } },
    "Cs": { "mass_amu": 132.905451933, "A_M_eV": 950.0, "b_M_invA": 2.1,  "C_M_eVA3": 34.0,
            "morse_fallback": { "D_eV": 1.85,  "alpha_invA": 0.8884, "r_e_A": 2.494,  "sato": 0.2 } }
  }
})json";

double number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ConfigError(std::string("species table: missing numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

}  // namespace

SpeciesTable parse_species_table(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("species table is not valid JSON: ") + e.what());
  }
  SpeciesTable t;
  try {
    const auto& hh = j.at("hydrogen_molecule");
    t.hydrogen = {units::from_ev(number(hh, "D_HH_eV")),
                  number(hh, "sato"),
                  units::from_inverse_angstrom(number(hh, "alpha_g_invA")),
                  units::from_inverse_angstrom(number(hh, "alpha_ad_invA")),
                  units::from_angstrom(number(hh, "r_e_g_A")),
                  units::from_angstrom(number(hh, "r_e_ad_A")),
                  units::from_angstrom(number(hh, "Z_e_A"))};
    const auto& ch = j.at("chemisorption");
    t.chemisorption = {units::from_ev(number(ch, "D_HM_eV")), units::from_angstrom(number(ch, "z_HM_e_A")),
                       units::from_inverse_angstrom(number(ch, "alpha_HM_invA"))};
    t.adsorbate_mass = units::from_amu(number(j, "adsorbate_mass_amu"));
    for (const auto& [name, block] : j.at("species").items()) {
      SpeciesEntry e;
      e.mass = units::from_amu(number(block, "mass_amu"));
      e.physisorption = {units::from_ev(number(block, "A_M_eV")),
                         units::from_inverse_angstrom(number(block, "b_M_invA")),
                         units::from_ev_cubic_angstrom(number(block, "C_M_eVA3"))};
      if (block.contains("morse_fallback")) {
        const auto& m = block.at("morse_fallback");
        e.morse_fallback = MorseCurveParams{units::from_ev(number(m, "D_eV")),
                                            units::from_inverse_angstrom(number(m, "alpha_invA")),
                                            units::from_angstrom(number(m, "r_e_A")), number(m, "sato")};
      }
      t.entries[species_from_string(name)] = e;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("species table: ") + e.what());
  }
  t.hydrogen.validate();
  t.chemisorption.validate();
  return t;
}

SpeciesTable default_species_table() { return parse_species_table(kDefaultTable); }

SpeciesTable load_species_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open species file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_species_table(buf.str());
}

namespace {

double singlet_minimum(const SpeciesModel& m) {
  if (m.projectile == Species::H) return m.hydrogen.r_e_gas;
  if (m.alkali_curves) {
    const auto& r = m.alkali_curves->singlet.knots();
    const auto& e = m.alkali_curves->singlet.values();
    return r[static_cast<std::size_t>(std::min_element(e.begin(), e.end()) - e.begin())];
  }
  return m.alkali_morse->r_e;
}

}  // namespace

SpeciesModel make_species_model(const SpeciesTable& table, Species projectile, const ModelOptions& options) {
  const auto it = table.entries.find(projectile);
  if (it == table.entries.end()) throw ConfigError("species table has no entry for " + to_string(projectile));
  const SpeciesEntry& e = it->second;

  SpeciesModel m;
  m.projectile = projectile;
  m.masses = MassSet(e.mass, table.adsorbate_mass);
  m.hydrogen = table.hydrogen;
  m.chemisorption = table.chemisorption;
  m.physisorption = e.physisorption;
  m.b_hm = table.chemisorption.alpha;
  m.ceiling = options.ceiling;
  std::ostringstream prov;
  prov << "species=" << to_string(projectile);
  if (projectile != Species::H) {
    if (options.curve_file) {
      m.alkali_curves = load_alkali_curves(*options.curve_file);
      prov << " curves=" << *options.curve_file;
    } else if (e.morse_fallback) {
      m.alkali_morse = e.morse_fallback;
      prov << " curves=morse-fallback";
    } else {
      throw ConfigError("tabulated curve missing for " + to_string(projectile));
    }
  }
  m.coupling = {options.coupling.amplitude.value_or(units::from_ev(0.027)),
                options.coupling.width.value_or(units::from_angstrom(1.0)),
                options.coupling.decay.value_or(units::from_inverse_angstrom(1.0)), 0.0};
  m.coupling.r_e = options.coupling.r_e.value_or(singlet_minimum(m));
  m.provenance = prov.str();
  m.validate();
  return m;
}

}  // namespace pacc
