#include "pacc/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pacc/error.hpp"

namespace pacc {

double incomplete_gamma(int m, double x, double x0, double a) {
  const double u = a * (x - x0);
  if (u <= 0.0) return 1.0;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= m; ++k) {
    term *= u / k;
    sum += term;
  }
  return sum * std::exp(-u);
}

double morse(double depth, double alpha, double x_e, double x) {
  const double q = 1.0 - std::exp(-alpha * (x - x_e));
  return depth * (q * q - 1.0);
}

double anti_morse(double depth, double sato, double alpha, double x_e, double x) {
  const double q = 1.0 + std::exp(-alpha * (x - x_e));
  return 0.5 * (1.0 - sato) / (1.0 + sato) * depth * (q * q - 1.0);
}

MorseInterpolation z_interpolated_params(double Z, const IntramolecularParams& p, double b_hm) {
  const double g = incomplete_gamma(4, Z, p.switch_distance, 2.0 * b_hm);
  const double r_e = p.r_e_gas - (p.r_e_gas - p.r_e_adsorbed) * g;
  if (Z <= p.switch_distance) return {p.alpha_adsorbed, r_e};
  return {p.alpha_gas - (p.alpha_gas - p.alpha_adsorbed) * g, r_e};
}

double physisorption(const PhysisorptionParams& p, double x, double ceiling) {
  if (!(x > 0.0)) {
    std::ostringstream msg;
    msg << "physisorption potential needs a positive distance, got " << x;
    throw ConfigError(msg.str());
  }
  const double attraction = p.dispersion / (x * x * x) * (1.0 - incomplete_gamma(4, x, 0.0, 2.0 * p.range));
  return std::min(p.repulsion * std::exp(-p.range * x) - attraction, ceiling);
}

void IntramolecularParams::validate() const {
  if (!(depth > 0.0)) throw ConfigError("D_HH must be positive");
  if (!(sato >= 0.0 && sato < 1.0)) throw ConfigError("Sato parameter must lie in [0, 1)");
  if (!(alpha_gas > 0.0 && alpha_adsorbed > 0.0)) throw ConfigError("alpha_HH values must be positive");
  if (!(r_e_gas > 0.0 && r_e_adsorbed > 0.0)) throw ConfigError("r_e values must be positive");
}

void ChemisorptionParams::validate() const {
  if (!(depth > 0.0 && equilibrium > 0.0 && alpha > 0.0)) {
    throw ConfigError("chemisorption parameters must be positive");
  }
}

void PhysisorptionParams::validate() const {
  if (!(repulsion > 0.0 && range > 0.0 && dispersion > 0.0)) {
    throw ConfigError("physisorption parameters must be positive");
  }
}

void CouplingParams::validate() const {
  if (!(amplitude >= 0.0)) throw ConfigError("coupling amplitude must be non-negative");
  if (!(width > 0.0 && decay > 0.0)) throw ConfigError("coupling width and decay must be positive");
}

void MorseCurveParams::validate() const {
  if (!(depth > 0.0 && alpha > 0.0 && r_e > 0.0)) throw ConfigError("alkali Morse parameters must be positive");
  if (!(sato >= 0.0 && sato < 1.0)) throw ConfigError("alkali Sato parameter must lie in [0, 1)");
}

std::string to_string(Species s) {
  switch (s) {
    case Species::H: return "H";
    case Species::Li: return "Li";
    case Species::Na: return "Na";
    case Species::K: return "K";
    case Species::Rb: return "Rb";
    case Species::Cs: return "Cs";
  }
  return "?";
}

Species species_from_string(const std::string& name) {
  for (Species s : {Species::H, Species::Li, Species::Na, Species::K, Species::Rb, Species::Cs}) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown species '" + name + "' (expected H, Li, Na, K, Rb or Cs)");
}

void SpeciesModel::validate() const {
  chemisorption.validate();
  physisorption.validate();
  coupling.validate();
  if (!(b_hm > 0.0)) throw ConfigError("b_HM must be positive");
  if (!(ceiling > 0.0)) throw ConfigError("potential ceiling must be positive");
  if (projectile == Species::H) {
    hydrogen.validate();
  } else if (!alkali_curves && !alkali_morse) {
    throw ConfigError("no singlet/triplet curves for " + to_string(projectile) +
                      ": supply a tabulated curve file or Morse fallback parameters");
  } else if (!alkali_curves) {
    alkali_morse->validate();
  }
}

double SpeciesModel::singlet(double r, double Z) const {
  if (projectile == Species::H) {
    const auto p = z_interpolated_params(Z, hydrogen, b_hm);
    return morse(hydrogen.depth, p.alpha, p.r_e, r);
  }
  if (alkali_curves) return alkali_curves->singlet(r);
  if (!alkali_morse) throw ConfigError("tabulated curve missing for " + to_string(projectile));
  return morse(alkali_morse->depth, alkali_morse->alpha, alkali_morse->r_e, r);
}

double SpeciesModel::triplet(double r, double Z) const {
  if (projectile == Species::H) {
    const auto p = z_interpolated_params(Z, hydrogen, b_hm);
    return anti_morse(hydrogen.depth, hydrogen.sato, p.alpha, p.r_e, r);
  }
  if (alkali_curves) return alkali_curves->triplet(r);
  if (!alkali_morse) throw ConfigError("tabulated curve missing for " + to_string(projectile));
  return anti_morse(alkali_morse->depth, alkali_morse->sato, alkali_morse->alpha, alkali_morse->r_e, r);
}

double SpeciesModel::reactant_atoms(double z_h, double z_y) const {
  const auto q = to_internal(z_h, z_y, masses);
  const double v = morse(chemisorption.depth, chemisorption.alpha, chemisorption.equilibrium, z_h) +
                   pacc::physisorption(this->physisorption, z_y, ceiling) + triplet(q.r, q.Z);
  return std::min(v, ceiling);
}

double SpeciesModel::reactant(double r, double Z) const {
  const auto a = from_internal(r, Z, masses);
  return reactant_atoms(a.z_h, a.z_y);
}

double SpeciesModel::product(double r, double Z) const {
  return std::min(pacc::physisorption(this->physisorption, Z, ceiling) + singlet(r, Z), ceiling);
}

double SpeciesModel::coupling_at(double r, double Z) const {
  const double d = (r - coupling.r_e) / coupling.width;
  return coupling.amplitude * std::exp(-d * d) * std::exp(-coupling.decay * Z);
}

double CapProfile::max() const {
  const double mr = r.empty() ? 0.0 : *std::max_element(r.begin(), r.end());
  const double mz = z.empty() ? 0.0 : *std::max_element(z.begin(), z.end());
  return mr + mz;
}

namespace {

std::vector<double> ramp(const Axis& axis, double strength, double width, double& onset) {
  if (!(width < axis.last() - axis.origin)) throw ConfigError("absorbing band is wider than the grid");
  if (!(width >= 0.0)) throw ConfigError("absorbing band width must be non-negative");
  onset = axis.last() - width;
  std::vector<double> w(axis.count, 0.0);
  for (std::size_t i = 0; i < axis.count; ++i) {
    const double u = (axis.point(i) - onset) / axis.spacing;
    if (u > 1e-9) w[i] = strength * u * u;
  }
  return w;
}

}  // namespace

CapProfile build_cap(const Grid2D& grid, double strength, double width_r, double width_z) {
  if (strength < 0.0) throw ConfigError("absorbing strength must be non-negative");
  CapProfile cap;
  cap.r = ramp(grid.r, strength, width_r, cap.r_onset);
  cap.z = ramp(grid.z, strength, width_z, cap.z_onset);
  return cap;
}

DiabaticPotential build_diabatic(const SpeciesModel& species, const Grid2D& grid) {
  species.validate();
  grid.validate();
  if (!(grid.r.origin > 0.0) || !(grid.z.origin > 0.0)) {
    throw ConfigError("grid must cover r > 0 and Z > 0");
  }
  DiabaticPotential v;
  v.grid = grid;
  v.species = species.projectile;
  v.provenance = species.provenance;
  v.v_rr.resize(grid.size());
  v.v_pp.resize(grid.size());
  v.v_rp.resize(grid.size());
  v.cap.r.assign(grid.r.count, 0.0);
  v.cap.z.assign(grid.z.count, 0.0);
  v.cap.r_onset = grid.r.last();
  v.cap.z_onset = grid.z.last();

  for (std::size_t ir = 0; ir < grid.r.count; ++ir) {
    const double r = grid.r.point(ir);
    for (std::size_t iz = 0; iz < grid.z.count; ++iz) {
      const double Z = grid.z.point(iz);
      const std::size_t k = grid.index(ir, iz);
      v.v_rr[k] = species.reactant(r, Z);
      v.v_pp[k] = species.product(r, Z);
      v.v_rp[k] = species.coupling_at(r, Z);
      if (!std::isfinite(v.v_rr[k]) || !std::isfinite(v.v_pp[k]) || !std::isfinite(v.v_rp[k])) {
        std::ostringstream msg;
        msg << "non-finite potential at r=" << units::to_angstrom(r) << " A, Z=" << units::to_angstrom(Z) << " A";
        throw NumericalError(msg.str());
      }
    }
  }
  return v;
}

}  // namespace pacc
