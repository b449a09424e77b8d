#include "pacc/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include "pacc/error.hpp"
#include "pacc/kinetic.hpp"

namespace pacc {

SpectralBounds estimate_bounds(double v_min, double v_max, double t_max) {
  const double lower = v_min;
  const double upper = v_max + t_max;
  const double pad = 0.05 * (upper - lower);
  return {lower - pad, upper + pad};
}

ChannelHamiltonian::ChannelHamiltonian(std::shared_ptr<const DiabaticPotential> potential, const MassSet& masses,
                                       bool absorbing)
    : potential_(std::move(potential)),
      masses_(masses),
      absorbing_(absorbing),
      fft_({static_cast<int>(potential_->grid.r.count), static_cast<int>(potential_->grid.z.count)}, 2) {
  const Grid2D& g = potential_->grid;
  const std::size_t n = g.size();
  if (potential_->v_rr.size() != n || potential_->v_pp.size() != n || potential_->v_rp.size() != n) {
    throw GridMismatch("diabatic arrays do not match their grid");
  }
  kinetic_ = kinetic_spectrum(g, masses_);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (auto& t : kinetic_) t *= inv_n;

  absorber_.assign(n, 0.0);
  if (absorbing_) {
    for (std::size_t ir = 0; ir < g.r.count; ++ir)
      for (std::size_t iz = 0; iz < g.z.count; ++iz) absorber_[g.index(ir, iz)] = potential_->cap.at(ir, iz);
  }
  diag_r_.resize(n);
  diag_p_.resize(n);
  double v_min = 0.0, v_max = 0.0, c_max = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    diag_r_[k] = {potential_->v_rr[k], -absorber_[k]};
    diag_p_[k] = {potential_->v_pp[k], -absorber_[k]};
    const double lo = std::min(potential_->v_rr[k], potential_->v_pp[k]);
    const double hi = std::max(potential_->v_rr[k], potential_->v_pp[k]);
    if (k == 0 || lo < v_min) v_min = lo;
    if (k == 0 || hi > v_max) v_max = hi;
    c_max = std::max(c_max, std::abs(potential_->v_rp[k]));
  }
  bounds_ = estimate_bounds(v_min - c_max, v_max + c_max, max_kinetic_energy(g, masses_));
}

void ChannelHamiltonian::apply(std::span<const cplx> in, std::span<cplx> out) const {
  const std::size_t n = grid().size();
  if (in.size() != 2 * n || out.size() != 2 * n) throw GridMismatch("state size does not match Hamiltonian");
  auto buf = fft_.buffer();
  std::copy(in.begin(), in.end(), buf.begin());
  fft_.forward();
  for (std::size_t k = 0; k < n; ++k) {
    buf[k] *= kinetic_[k];
    buf[n + k] *= kinetic_[k];
  }
  fft_.backward();
  const double* vrp = potential_->v_rp.data();
  for (std::size_t k = 0; k < n; ++k) {
    const cplx a = in[k];
    const cplx b = in[n + k];
    out[k] = buf[k] + diag_r_[k] * a + vrp[k] * b;
    out[n + k] = buf[n + k] + diag_p_[k] * b + vrp[k] * a;
  }
}

ChannelHamiltonian::Rates ChannelHamiltonian::rates(std::span<const cplx> psi) const {
  const std::size_t n = grid().size();
  Rates r;
  double transfer = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const cplx a = psi[k];
    const cplx b = psi[n + k];
    r.absorption_reactant += absorber_[k] * std::norm(a);
    r.absorption_product += absorber_[k] * std::norm(b);
    transfer += potential_->v_rp[k] * (std::conj(a) * b).imag();
  }
  const double w = volume_element();
  r.absorption_reactant *= w;
  r.absorption_product *= w;
  r.transfer_to_reactant = 2.0 * transfer * w / UnitSystem::hbar;
  return r;
}

GridHamiltonian1D::GridHamiltonian1D(const Axis& axis, double mass, std::vector<double> potential,
                                     std::vector<double> absorber)
    : axis_(axis),
      mass_(mass),
      potential_(std::move(potential)),
      absorber_(std::move(absorber)),
      fft_({static_cast<int>(axis.count)}, 1) {
  if (potential_.size() != axis_.count) throw GridMismatch("1D potential does not match its axis");
  if (!absorber_.empty() && absorber_.size() != axis_.count) throw GridMismatch("1D absorber does not match its axis");
  if (!(mass_ > 0.0)) throw ConfigError("1D Hamiltonian mass must be positive");
  kinetic_ = kinetic_spectrum(axis_, mass_);
  const double inv_n = 1.0 / static_cast<double>(axis_.count);
  for (auto& t : kinetic_) t *= inv_n;
  const auto [lo, hi] = std::minmax_element(potential_.begin(), potential_.end());
  const double t_max = 0.5 * UnitSystem::hbar * UnitSystem::hbar * axis_.max_wavenumber() * axis_.max_wavenumber() / mass_;
  bounds_ = estimate_bounds(*lo, *hi, t_max);
}

double GridHamiltonian1D::absorption_bound() const {
  return absorber_.empty() ? 0.0 : *std::max_element(absorber_.begin(), absorber_.end());
}

void GridHamiltonian1D::apply(std::span<const cplx> in, std::span<cplx> out) const {
  const std::size_t n = axis_.count;
  if (in.size() != n || out.size() != n) throw GridMismatch("state size does not match Hamiltonian");
  auto buf = fft_.buffer();
  std::copy(in.begin(), in.end(), buf.begin());
  fft_.forward();
  for (std::size_t k = 0; k < n; ++k) buf[k] *= kinetic_[k];
  fft_.backward();
  if (absorber_.empty()) {
    for (std::size_t k = 0; k < n; ++k) out[k] = buf[k] + potential_[k] * in[k];
  } else {
    for (std::size_t k = 0; k < n; ++k) out[k] = buf[k] + cplx{potential_[k], -absorber_[k]} * in[k];
  }
}

}  // namespace pacc
