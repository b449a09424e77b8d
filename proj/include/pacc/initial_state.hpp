#pragma once

#include <functional>

#include "pacc/field.hpp"
#include "pacc/grid.hpp"
#include "pacc/potentials.hpp"
#include "pacc/propagator.hpp"
#include "pacc/units.hpp"

namespace pacc {

/// Gaussian projectile pulse psi_y = exp(-(z_y - z_s)^2 / sigma_y) e^{i k_y z_y}.
struct PulseSpec {
  double sigma_y = 0.0;  // length^2
  double z_s = 0.0;
  double k_y = 0.0;      // negative: toward the surface
  double amplitude_scale = 1.0;

  void validate() const;
};

struct TwoPulseSpec {
  PulseSpec pulse;
  double delay = 0.0;  // time
  double theta = 0.0;  // relative phase of the second pulse
  double second_amplitude_scale = 1.0;

  void validate() const;
  double wrapped_theta() const;
};

/// theta mapped into [-pi, pi]; values already inside are returned unchanged.
double wrap_phase(double theta);

/// Adsorbate wavefunction psi_h(z_h) on a 1D axis.
struct AdsorbateState {
  Axis axis;
  CVector psi;  // normalised with weight axis.spacing, real and positive
  double energy = 0.0;
  double dispersion = 0.0;
  std::size_t iterations = 0;
  CVector spectrum;  // DFT of psi divided by the axis count

  /// Recomputes `spectrum` after psi changes.
  void refresh();
  /// Band-limited interpolation of psi inside the axis span, 0 outside.
  cplx operator()(double z_h) const;
};

/// Ground state of -hbar^2/2m d^2/dz^2 + V(z) on `axis` by imaginary time.
AdsorbateState relax_ground_state(const Axis& axis, double mass, const std::function<double(double)>& potential,
                                  const RelaxConfig& cfg = {});

/// Ground state of the reactant surface along z_h with the projectile held at
/// z_y = z_s. The axis starts at the grid's Z origin with the grid's Z spacing
/// and stops halfway to z_s.
AdsorbateState relax_adsorbate(const SpeciesModel& species, const Grid2D& grid, double z_s,
                               const RelaxConfig& cfg = {});

/// Reactant channel N psi_h(z_h) psi_y(z_y) on the (r, Z) grid, product channel
/// zero, |Psi| = amplitude_scale. Throws NumericalError when the grid clips the
/// pulse (sampled norm off the analytic value by more than 1e-6 relative).
ChannelField make_pulse(const AdsorbateState& adsorbate, const PulseSpec& spec, const Grid2D& grid,
                        const MassSet& masses);

/// psi + pulse e^{-i theta}, without renormalisation.
ChannelField inject_second_pulse(const ChannelField& psi, const ChannelField& pulse, double theta);

/// In-place form used during propagation.
void add_pulse(std::span<cplx> psi, std::span<const cplx> pulse, double theta);

}  // namespace pacc
