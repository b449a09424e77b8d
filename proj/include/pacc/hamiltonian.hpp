#pragma once

#include <memory>
#include <vector>

#include "pacc/fft.hpp"
#include "pacc/operator.hpp"
#include "pacc/potentials.hpp"

namespace pacc {

/// Estimated enclosure of the spectrum: lowest and highest potential values
/// (coupling added on either side) plus the kinetic maximum, padded by 5% of
/// the width on each side.
SpectralBounds estimate_bounds(double v_min, double v_max, double t_max);

/// Two-channel H = T + V (+ -iW) on a Grid2D.
class ChannelHamiltonian final : public Hamiltonian {
 public:
  ChannelHamiltonian(std::shared_ptr<const DiabaticPotential> potential, const MassSet& masses,
                     bool absorbing = true);

  std::size_t dimension() const override { return 2 * grid().size(); }
  double volume_element() const override { return grid().cell_area(); }
  SpectralBounds bounds() const override { return bounds_; }
  double absorption_bound() const override { return absorbing_ ? potential_->cap.max() : 0.0; }
  void apply(std::span<const cplx> in, std::span<cplx> out) const override;

  const Grid2D& grid() const { return potential_->grid; }
  const DiabaticPotential& potential() const { return *potential_; }
  const MassSet& masses() const { return masses_; }
  bool absorbing() const { return absorbing_; }

  struct Rates {
    double absorption_reactant = 0.0;  // <Psi_R|W|Psi_R>
    double absorption_product = 0.0;   // <Psi_P|W|Psi_P>
    double transfer_to_reactant = 0.0; // 2 Im <Psi_R|V_RP|Psi_P> / hbar
  };
  /// Ingredients of d|Psi_c|^2/dt = -2<W>_c/hbar +- transfer.
  Rates rates(std::span<const cplx> psi) const;

 private:
  std::shared_ptr<const DiabaticPotential> potential_;
  MassSet masses_;
  bool absorbing_;
  SpectralBounds bounds_;
  std::vector<double> kinetic_;  // already divided by the transform size
  std::vector<cplx> diag_r_;     // V_RR - iW
  std::vector<cplx> diag_p_;     // V_PP - iW
  std::vector<double> absorber_;
  mutable FftPlan fft_;
};

/// Single-channel 1D grid Hamiltonian -hbar^2/2m d^2/dx^2 + V(x) (- iW(x)).
class GridHamiltonian1D final : public Hamiltonian {
 public:
  GridHamiltonian1D(const Axis& axis, double mass, std::vector<double> potential,
                    std::vector<double> absorber = {});

  std::size_t dimension() const override { return axis_.count; }
  double volume_element() const override { return axis_.spacing; }
  SpectralBounds bounds() const override { return bounds_; }
  double absorption_bound() const override;
  void apply(std::span<const cplx> in, std::span<cplx> out) const override;

  const Axis& axis() const { return axis_; }
  double mass() const { return mass_; }
  const std::vector<double>& potential() const { return potential_; }

 private:
  Axis axis_;
  double mass_;
  std::vector<double> potential_;
  std::vector<double> absorber_;
  std::vector<double> kinetic_;
  SpectralBounds bounds_;
  mutable FftPlan fft_;
};

}  // namespace pacc
