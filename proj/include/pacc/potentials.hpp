#pragma once

// Diabatic two-state potential for Y + H/Cu(111) in the collinear (r, Z)
// coordinates, plus the complex absorbing boundary. All parameters and
// arguments are in internal units unless a name says otherwise.

#include <optional>
#include <string>
#include <vector>

#include "pacc/grid.hpp"
#include "pacc/spline.hpp"
#include "pacc/units.hpp"

namespace pacc {

/// sum_{k=0..m} [a(x-x0)]^k/k! exp(-a(x-x0)); clamped to 1 for x < x0.
double incomplete_gamma(int m, double x, double x0, double a);

/// D([1 - e^{-alpha(x-xe)}]^2 - 1)
double morse(double depth, double alpha, double x_e, double x);

/// (1/2)(1-sato)/(1+sato) D([1 + e^{-alpha(x-xe)}]^2 - 1), the triplet repulsion.
double anti_morse(double depth, double sato, double alpha, double x_e, double x);

struct IntramolecularParams {
  double depth;            // D_HH
  double sato;             // Delta
  double alpha_gas;        // alpha_HH^g
  double alpha_adsorbed;   // alpha_HH^ad
  double r_e_gas;          // r_e^g
  double r_e_adsorbed;     // r_e^ad
  double switch_distance;  // Z_e

  void validate() const;
};

struct ChemisorptionParams {
  double depth;        // D_HM
  double equilibrium;  // z_HM^e
  double alpha;        // alpha_HM

  void validate() const;
};

struct PhysisorptionParams {
  double repulsion;   // A_M
  double range;       // b_M
  double dispersion;  // C_M

  void validate() const;
};

/// V_RP = A_c exp(-(r - r_e)^2 / w_c^2) exp(-b_c Z).
struct CouplingParams {
  double amplitude;
  double width;
  double decay;
  double r_e;

  void validate() const;
};

/// Morse singlet and anti-Morse triplet stand-ins for an alkali hydride when
/// no tabulated curves are supplied.
struct MorseCurveParams {
  double depth;
  double alpha;
  double r_e;
  double sato;

  void validate() const;
};

struct MorseInterpolation {
  double alpha;
  double r_e;
};

/// alpha_HH(Z) and r_HH^e(Z): adsorbed values below Z_e, switched to gas-phase
/// values by Gamma_4(Z, Z_e, 2 b_HM) above.
MorseInterpolation z_interpolated_params(double Z, const IntramolecularParams& p, double b_hm);

/// A e^{-b x} - C/x^3 (1 - Gamma_4(x, 0, 2b)), limited from above by `ceiling`.
/// Throws ConfigError for x <= 0.
double physisorption(const PhysisorptionParams& p, double x, double ceiling);

enum class Species { H, Li, Na, K, Rb, Cs };

std::string to_string(Species s);
Species species_from_string(const std::string& name);

/// All physical parameters for one Y + H/surface system.
struct SpeciesModel {
  Species projectile = Species::H;
  MassSet masses = MassSet::from_amu(1.0, 1.0);
  IntramolecularParams hydrogen{};
  ChemisorptionParams chemisorption{};
  PhysisorptionParams physisorption{};
  CouplingParams coupling{};
  double b_hm = 0.0;  // range of Gamma_4 in the alpha/r_e switch
  std::optional<MorseCurveParams> alkali_morse;
  std::optional<AlkaliCurves> alkali_curves;
  double ceiling = 0.0;  // upper limit applied to V_RR, V_PP and the physisorption term
  std::string provenance;

  void validate() const;

  double singlet(double r, double Z) const;  // V^P_YH
  double triplet(double r, double Z) const;  // V^R_YH
  double reactant(double r, double Z) const;  // V_RR
  double product(double r, double Z) const;   // V_PP
  double coupling_at(double r, double Z) const;  // V_RP
  double reactant_atoms(double z_h, double z_y) const;  // V_RR at atom heights
};

struct CapProfile {
  std::vector<double> r;  // W(r) per r index
  std::vector<double> z;  // W(Z) per Z index
  double r_onset = 0.0;
  double z_onset = 0.0;

  double at(std::size_t ir, std::size_t iz) const { return r[ir] + z[iz]; }
  double max() const;
};

/// Quadratic absorbing ramps -i W on the last `width` of each axis:
/// W(x) = strength * ((x - (x_max - width)) / d)^2 for x beyond the onset,
/// where d is the axis spacing (the strength is the ramp value one grid
/// spacing into the band). Corners carry the sum of both ramps.
CapProfile build_cap(const Grid2D& grid, double strength, double width_r, double width_z);

/// Sampled diabatic matrix on a grid. Immutable once built.
struct DiabaticPotential {
  Grid2D grid;
  std::vector<double> v_rr;
  std::vector<double> v_pp;
  std::vector<double> v_rp;
  CapProfile cap;
  Species species = Species::H;
  std::string provenance;
};

/// Samples V_RR, V_PP and V_RP. Throws NumericalError naming the grid point
/// if any sample is not finite. The returned CAP is zero; set it with build_cap.
DiabaticPotential build_diabatic(const SpeciesModel& species, const Grid2D& grid);

}  // namespace pacc
