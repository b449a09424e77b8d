#pragma once

#include <map>
#include <optional>
#include <string>

#include "pacc/potentials.hpp"

namespace pacc {

struct SpeciesEntry {
  double mass = 0.0;  // internal units
  PhysisorptionParams physisorption{};
  std::optional<MorseCurveParams> morse_fallback;
};

/// Surface and per-projectile parameters, Cu(111) hollow-site hydrogen.
struct SpeciesTable {
  IntramolecularParams hydrogen{};
  ChemisorptionParams chemisorption{};
  double adsorbate_mass = 0.0;
  std::map<Species, SpeciesEntry> entries;
};

/// Built-in table (the same content as data/species.json).
SpeciesTable default_species_table();
SpeciesTable parse_species_table(const std::string& json_text);
SpeciesTable load_species_table(const std::string& path);

struct CouplingOverrides {
  std::optional<double> amplitude;
  std::optional<double> width;
  std::optional<double> decay;
  std::optional<double> r_e;
};

struct ModelOptions {
  CouplingOverrides coupling;
  double ceiling = units::from_ev(20.0);
  std::optional<std::string> curve_file;  // tabulated singlet/triplet for alkalis
};

/// Coupling defaults: A_c = 0.027 eV, w_c = 1 A, b_c = 1 A^-1, r_e at the
/// singlet minimum. b_HM is taken as alpha_HM.
SpeciesModel make_species_model(const SpeciesTable& table, Species projectile, const ModelOptions& options = {});

}  // namespace pacc
