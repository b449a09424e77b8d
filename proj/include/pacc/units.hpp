#pragma once

// Unit conversions between the external set (eV, Angstrom, fs, amu) and the
// internal atomic units (hartree, bohr, a.u. of time, electron mass).
// Every formula inside the library works in internal units with hbar = 1.

#include <cmath>
#include <numbers>

namespace pacc {

struct UnitSystem {
  static constexpr double hbar = 1.0;
  static constexpr double bohr_in_angstrom = 0.529177210903;
  static constexpr double hartree_in_ev = 27.211386245988;
  static constexpr double time_unit_in_fs = 0.024188843265857;
  static constexpr double amu_in_electron_masses = 1822.888486209;
};

namespace units {

constexpr double from_angstrom(double x) { return x / UnitSystem::bohr_in_angstrom; }
constexpr double to_angstrom(double x) { return x * UnitSystem::bohr_in_angstrom; }

// Inverse lengths (wavenumbers, Morse exponents).
constexpr double from_inverse_angstrom(double k) { return k * UnitSystem::bohr_in_angstrom; }
constexpr double to_inverse_angstrom(double k) { return k / UnitSystem::bohr_in_angstrom; }

constexpr double from_square_angstrom(double a) { return from_angstrom(from_angstrom(a)); }
constexpr double to_square_angstrom(double a) { return to_angstrom(to_angstrom(a)); }

constexpr double from_ev(double e) { return e / UnitSystem::hartree_in_ev; }
constexpr double to_ev(double e) { return e * UnitSystem::hartree_in_ev; }

constexpr double from_fs(double t) { return t / UnitSystem::time_unit_in_fs; }
constexpr double to_fs(double t) { return t * UnitSystem::time_unit_in_fs; }

constexpr double from_amu(double m) { return m * UnitSystem::amu_in_electron_masses; }
constexpr double to_amu(double m) { return m / UnitSystem::amu_in_electron_masses; }

// eV * Angstrom^3, the dispersion coefficient unit of the physisorption term.
constexpr double from_ev_cubic_angstrom(double c) {
  return from_ev(c) * from_angstrom(1.0) * from_angstrom(1.0) * from_angstrom(1.0);
}

}  // namespace units

/// Masses of the projectile (y) and the adsorbed hydrogen (h), internal units.
class MassSet {
 public:
  MassSet(double projectile, double adsorbate);
  static MassSet from_amu(double projectile_amu, double adsorbate_amu);

  double projectile() const { return m_y_; }
  double adsorbate() const { return m_h_; }
  double total() const { return m_y_ + m_h_; }
  double reduced() const { return m_y_ * m_h_ / (m_y_ + m_h_); }

 private:
  double m_y_;
  double m_h_;
};

struct InternalCoordinates {
  double r;  // z_y - z_h
  double Z;  // centre of mass
};

struct AtomCoordinates {
  double z_h;
  double z_y;
};

// Collinear atom heights above the surface <-> bond length and centre of mass.
InternalCoordinates to_internal(double z_h, double z_y, const MassSet& masses);
AtomCoordinates from_internal(double r, double Z, const MassSet& masses);

}  // namespace pacc
