#pragma once

#include <span>
#include <string>
#include <vector>

#include "pacc/field.hpp"
#include "pacc/grid.hpp"
#include "pacc/hamiltonian.hpp"
#include "pacc/propagator.hpp"
#include "pacc/units.hpp"

namespace pacc {

/// Product-channel current through the dividing line Z = Z_flux.
///
/// The line snaps to the nearest Z column. The Z derivative at that column is
/// the full-axis spectral derivative sampled there, applied as one row of the
/// periodic differentiation matrix (Nyquist bin dropped).
class FluxProbe {
 public:
  /// `absorber_onset` is where the Z absorbing band starts; the line must lie
  /// strictly before it.
  FluxProbe(const Grid2D& grid, const MassSet& masses, double z_flux, double absorber_onset);

  double z_flux() const { return grid_.z.point(column_); }
  std::size_t column() const { return column_; }
  const Grid2D& grid() const { return grid_; }

  /// Psi_P(r, Z_flux) and dPsi_P/dZ(r, Z_flux) for every r.
  void sample(std::span<const cplx> product, std::span<cplx> value, std::span<cplx> derivative) const;

  /// J = (hbar/M) Im sum_r conj(Psi_P) dPsi_P/dZ dr at the line.
  double flux(std::span<const cplx> product) const;

  double total_mass() const { return total_mass_; }

 private:
  Grid2D grid_;
  double total_mass_;
  std::size_t column_;
  std::vector<double> derivative_row_;
};

/// Convenience for a product-channel array on the probe grid.
double flux_at_line(std::span<const cplx> product, const Grid2D& grid, const MassSet& masses, double z_flux,
                    double absorber_onset);

struct VibrationalBasis {
  Axis r;
  double z_flux = 0.0;
  std::vector<CVector> states;  // chi_n(r), normalised with weight r.spacing
  std::vector<double> energies;
  double asymptote = 0.0;         // cut value at the largest r
  double orthonormality_residual = 0.0;

  std::size_t size() const { return states.size(); }
};

struct BasisOptions {
  FilterConfig filter{};
  unsigned seed = 12345;  // trial vector generator
};

/// The lowest `count` bound eigenstates of -hbar^2/2mu d^2/dr^2 + V(r) by
/// Gaussian-filter relaxation: each target is the last energy found, with all
/// earlier states projected out. Throws NumericalError listing the number found
/// when a state comes out at or above the asymptote.
VibrationalBasis vibrational_basis(const Axis& r, double mu, const std::vector<double>& cut, std::size_t count,
                                   double z_flux = 0.0, const BasisOptions& options = {});

/// Basis for V_PP(r, Z_flux) of a sampled diabatic potential (flux line snapped
/// to the nearest column).
VibrationalBasis vibrational_basis(const DiabaticPotential& potential, const MassSet& masses, double z_flux,
                                   std::size_t count, const BasisOptions& options = {});

double max_orthonormality_error(const VibrationalBasis& basis);

/// Psi_n(Z) = sum_r conj(chi_n(r)) Psi_P(r, Z) dr for every state.
std::vector<CVector> project_states(std::span<const cplx> product, const VibrationalBasis& basis, const Grid2D& grid);

class FluxAccumulator {
 public:
  FluxAccumulator(double z_flux, std::size_t n_states);

  double z_flux() const { return z_flux_; }
  double total() const { return total_; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& currents() const { return currents_; }
  const std::vector<double>& state_totals() const { return state_totals_; }
  double time_step() const { return dt_; }

  /// Records J and the per-state currents j_n at time t, adding dt-weighted
  /// contributions to F and P_n. dt = 0 leaves the accumulator unchanged.
  void record(double t, double current, std::span<const double> state_currents, double dt);

 private:
  double z_flux_;
  double dt_ = 0.0;
  double total_ = 0.0;
  std::vector<double> times_;
  std::vector<double> currents_;
  std::vector<double> state_totals_;
};

/// Measures J and j_n = (hbar/M) Im[conj(Psi_n) dPsi_n/dZ] at the probe line and
/// adds them to the accumulator.
void project_and_accumulate(std::span<const cplx> product, const VibrationalBasis& basis, const FluxProbe& probe,
                            double dt, double t, FluxAccumulator& accumulator);

struct ChannelBudget {
  double initial = 0.0;
  double injected = 0.0;     // norm change at pulse injection
  double transferred = 0.0;  // net inflow from the other channel
  double absorbed = 0.0;     // (2/hbar) int <W>_c dt
  double remaining = 0.0;
  double residual() const { return initial + injected + transferred - absorbed - remaining; }
};

struct NormBudget {
  ChannelBudget reactant;
  ChannelBudget product;
  double tolerance = 1e-6;
  double total_residual() const { return reactant.residual() + product.residual(); }
  bool balanced() const;
  std::string summary() const;
};

/// Accumulates CAP absorption and interchannel transfer from quadrature
/// samples during a propagation.
class NormTracker {
 public:
  explicit NormTracker(const ChannelHamiltonian& h);

  void start(std::span<const cplx> psi);
  void sample(std::span<const cplx> psi, double weight);
  /// Records the norm jump of an external change to psi (pulse injection),
  /// given the channel norms just before it.
  void injected(std::pair<double, double> before, std::span<const cplx> psi_after);
  NormBudget finish(std::span<const cplx> psi, double tolerance = 1e-6) const;

  std::pair<double, double> channel_norms(std::span<const cplx> psi) const;

 private:
  const ChannelHamiltonian& h_;
  NormBudget budget_;
};

}  // namespace pacc
