#include "pacc/units.hpp"

#include "pacc/error.hpp"

namespace pacc {

MassSet::MassSet(double projectile, double adsorbate) : m_y_(projectile), m_h_(adsorbate) {
  if (!(projectile > 0.0) || !(adsorbate > 0.0)) {
    throw ConfigError("masses must be positive");
  }
}

MassSet MassSet::from_amu(double projectile_amu, double adsorbate_amu) {
  return MassSet(units::from_amu(projectile_amu), units::from_amu(adsorbate_amu));
}

InternalCoordinates to_internal(double z_h, double z_y, const MassSet& masses) {
  const double M = masses.total();
  return {z_y - z_h, (masses.adsorbate() * z_h + masses.projectile() * z_y) / M};
}

AtomCoordinates from_internal(double r, double Z, const MassSet& masses) {
  const double M = masses.total();
  return {Z - masses.projectile() / M * r, Z + masses.adsorbate() / M * r};
}

}  // namespace pacc
