#include "pacc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "pacc/error.hpp"

namespace pacc {

FluxProbe::FluxProbe(const Grid2D& grid, const MassSet& masses, double z_flux, double absorber_onset)
    : grid_(grid), total_mass_(masses.total()) {
  grid_.validate();
  if (!(z_flux > grid_.z.origin) || !(z_flux < grid_.z.last())) {
    std::ostringstream msg;
    msg << "flux line Z = " << units::to_angstrom(z_flux) << " A is outside the grid";
    throw ConfigError(msg.str());
  }
  column_ = grid_.z.nearest_index(z_flux);
  if (!(grid_.z.point(column_) < absorber_onset)) {
    std::ostringstream msg;
    msg << "flux line Z = " << units::to_angstrom(z_flux) << " A lies inside the absorbing band (onset "
        << units::to_angstrom(absorber_onset) << " A)";
    throw ConfigError(msg.str());
  }
  const std::size_t n = grid_.z.count;
  const double scale_k = 2.0 * std::numbers::pi / grid_.z.length();
  derivative_row_.assign(n, 0.0);
  const std::size_t m_max = (n - 1) / 2;  // Nyquist excluded
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t offset = (column_ + n - j) % n;
    double s = 0.0;
    for (std::size_t m = 1; m <= m_max; ++m) {
      const std::size_t phase = (m * offset) % n;
      s += static_cast<double>(m) * std::sin(2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(n));
    }
    derivative_row_[j] = -2.0 * scale_k * s / static_cast<double>(n);
  }
}

void FluxProbe::sample(std::span<const cplx> product, std::span<cplx> value, std::span<cplx> derivative) const {
  const std::size_t nr = grid_.r.count;
  const std::size_t nz = grid_.z.count;
  if (product.size() != grid_.size()) throw GridMismatch("product channel does not match the flux grid");
  if (value.size() != nr || derivative.size() != nr) throw GridMismatch("flux sample buffers have the wrong size");
  for (std::size_t ir = 0; ir < nr; ++ir) {
    const cplx* row = product.data() + ir * nz;
    cplx d = 0.0;
    for (std::size_t j = 0; j < nz; ++j) d += derivative_row_[j] * row[j];
    value[ir] = row[column_];
    derivative[ir] = d;
  }
}

double FluxProbe::flux(std::span<const cplx> product) const {
  const std::size_t nr = grid_.r.count;
  std::vector<cplx> v(nr), d(nr);
  sample(product, v, d);
  double s = 0.0;
  for (std::size_t ir = 0; ir < nr; ++ir) s += (std::conj(v[ir]) * d[ir]).imag();
  return UnitSystem::hbar / total_mass_ * s * grid_.r.spacing;
}

double flux_at_line(std::span<const cplx> product, const Grid2D& grid, const MassSet& masses, double z_flux,
                    double absorber_onset) {
  return FluxProbe(grid, masses, z_flux, absorber_onset).flux(product);
}

VibrationalBasis vibrational_basis(const Axis& r, double mu, const std::vector<double>& cut, std::size_t count,
                                   double z_flux, const BasisOptions& options) {
  r.validate();
  if (cut.size() != r.count) throw GridMismatch("potential cut does not match its axis");
  if (count == 0) throw ConfigError("vibrational basis needs at least one state");
  GridHamiltonian1D h(r, mu, cut);
  VibrationalBasis basis;
  basis.r = r;
  basis.z_flux = z_flux;
  basis.asymptote = cut.back();

  std::mt19937 gen(options.seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double target = *std::min_element(cut.begin(), cut.end());
  for (std::size_t n = 0; n < count; ++n) {
    CVector psi(r.count);
    for (auto& x : psi) x = uni(gen);
    EigenEstimate e;
    try {
      e = filter_relax(psi, h, target, options.filter, basis.states);
    } catch (const NumericalError& err) {
      std::ostringstream msg;
      msg << "vibrational state " << n << " failed after " << n << " bound states were found: " << err.what();
      throw NumericalError(msg.str());
    }
    if (!(e.energy < basis.asymptote)) {
      std::ostringstream msg;
      msg << "only " << n << " bound states below the asymptote " << units::to_ev(basis.asymptote) << " eV; "
          << count << " requested";
      throw NumericalError(msg.str());
    }
    if (!basis.energies.empty() && !(e.energy > basis.energies.back())) {
      std::ostringstream msg;
      msg << "vibrational energies not increasing at n = " << n;
      throw NumericalError(msg.str());
    }
    // Real and positive on the first lobe.
    std::size_t i_big = 0;
    double big = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) big = std::max(big, std::abs(psi[i]));
    for (std::size_t i = 0; i < psi.size(); ++i) {
      if (std::abs(psi[i]) > 1e-3 * big) {
        i_big = i;
        break;
      }
    }
    scale(std::abs(psi[i_big]) / psi[i_big], psi);
    basis.states.push_back(std::move(psi));
    basis.energies.push_back(e.energy);
    target = e.energy;
  }
  basis.orthonormality_residual = max_orthonormality_error(basis);
  return basis;
}

VibrationalBasis vibrational_basis(const DiabaticPotential& potential, const MassSet& masses, double z_flux,
                                   std::size_t count, const BasisOptions& options) {
  const Grid2D& g = potential.grid;
  const std::size_t iz = g.z.nearest_index(z_flux);
  std::vector<double> cut(g.r.count);
  for (std::size_t ir = 0; ir < g.r.count; ++ir) cut[ir] = potential.v_pp[g.index(ir, iz)];
  return vibrational_basis(g.r, masses.reduced(), cut, count, g.z.point(iz), options);
}

double max_orthonormality_error(const VibrationalBasis& basis) {
  double worst = 0.0;
  for (std::size_t m = 0; m < basis.size(); ++m)
    for (std::size_t n = 0; n <= m; ++n) {
      const cplx o = dot(basis.states[m], basis.states[n]) * basis.r.spacing;
      worst = std::max(worst, std::abs(o - (m == n ? 1.0 : 0.0)));
    }
  return worst;
}

std::vector<CVector> project_states(std::span<const cplx> product, const VibrationalBasis& basis,
                                    const Grid2D& grid) {
  if (!(basis.r == grid.r)) throw GridMismatch("vibrational basis and grid r axes differ");
  if (product.size() != grid.size()) throw GridMismatch("product channel does not match the grid");
  const std::size_t nr = grid.r.count, nz = grid.z.count;
  std::vector<CVector> out(basis.size(), CVector(nz));
  for (std::size_t n = 0; n < basis.size(); ++n) {
    const CVector& chi = basis.states[n];
    CVector& target = out[n];
    for (std::size_t ir = 0; ir < nr; ++ir) {
      const cplx c = std::conj(chi[ir]) * grid.r.spacing;
      const cplx* row = product.data() + ir * nz;
      for (std::size_t iz = 0; iz < nz; ++iz) target[iz] += c * row[iz];
    }
  }
  return out;
}

FluxAccumulator::FluxAccumulator(double z_flux, std::size_t n_states) : z_flux_(z_flux), state_totals_(n_states) {}

void FluxAccumulator::record(double t, double current, std::span<const double> state_currents, double dt) {
  if (dt == 0.0) return;
  if (state_currents.size() != state_totals_.size()) throw GridMismatch("state current count mismatch");
  dt_ = dt;
  times_.push_back(t);
  currents_.push_back(current);
  total_ += current * dt;
  for (std::size_t n = 0; n < state_totals_.size(); ++n) state_totals_[n] += state_currents[n] * dt;
}

void project_and_accumulate(std::span<const cplx> product, const VibrationalBasis& basis, const FluxProbe& probe,
                            double dt, double t, FluxAccumulator& accumulator) {
  if (dt == 0.0) return;
  const Grid2D& g = probe.grid();
  if (basis.size() > 0 && !(basis.r == g.r)) throw GridMismatch("vibrational basis and grid r axes differ");
  const std::size_t nr = g.r.count;
  std::vector<cplx> v(nr), d(nr);
  probe.sample(product, v, d);
  const double pref = UnitSystem::hbar / probe.total_mass();
  double s = 0.0;
  for (std::size_t ir = 0; ir < nr; ++ir) s += (std::conj(v[ir]) * d[ir]).imag();
  const double current = pref * s * g.r.spacing;
  std::vector<double> j(basis.size());
  for (std::size_t n = 0; n < basis.size(); ++n) {
    const CVector& chi = basis.states[n];
    cplx a = 0.0, b = 0.0;
    for (std::size_t ir = 0; ir < nr; ++ir) {
      const cplx c = std::conj(chi[ir]);
      a += c * v[ir];
      b += c * d[ir];
    }
    a *= g.r.spacing;
    b *= g.r.spacing;
    j[n] = pref * (std::conj(a) * b).imag();
  }
  accumulator.record(t, current, j, dt);
}

bool NormBudget::balanced() const {
  return std::abs(reactant.residual()) <= tolerance && std::abs(product.residual()) <= tolerance;
}

std::string NormBudget::summary() const {
  std::ostringstream s;
  s.precision(10);
  auto line = [&](const char* name, const ChannelBudget& c) {
    s << name << ": initial " << c.initial << " injected " << c.injected << " transferred " << c.transferred
      << " absorbed " << c.absorbed << " remaining " << c.remaining << " residual " << c.residual() << "\n";
  };
  line("reactant", reactant);
  line("product", product);
  s << (balanced() ? "balanced" : "VIOLATED") << " (tolerance " << tolerance << ")";
  return s.str();
}

NormTracker::NormTracker(const ChannelHamiltonian& h) : h_(h) {}

std::pair<double, double> NormTracker::channel_norms(std::span<const cplx> psi) const {
  const std::size_t n = h_.grid().size();
  const double w = h_.volume_element();
  return {squared_norm(psi.subspan(0, n)) * w, squared_norm(psi.subspan(n, n)) * w};
}

void NormTracker::start(std::span<const cplx> psi) {
  budget_ = {};
  const auto [r, p] = channel_norms(psi);
  budget_.reactant.initial = r;
  budget_.product.initial = p;
}

void NormTracker::sample(std::span<const cplx> psi, double weight) {
  const auto rates = h_.rates(psi);
  budget_.reactant.absorbed += 2.0 * rates.absorption_reactant / UnitSystem::hbar * weight;
  budget_.product.absorbed += 2.0 * rates.absorption_product / UnitSystem::hbar * weight;
  budget_.reactant.transferred += rates.transfer_to_reactant * weight;
  budget_.product.transferred -= rates.transfer_to_reactant * weight;
}

void NormTracker::injected(std::pair<double, double> before, std::span<const cplx> psi_after) {
  const auto [r, p] = channel_norms(psi_after);
  budget_.reactant.injected += r - before.first;
  budget_.product.injected += p - before.second;
}

NormBudget NormTracker::finish(std::span<const cplx> psi, double tolerance) const {
  NormBudget out = budget_;
  const auto [r, p] = channel_norms(psi);
  out.reactant.remaining = r;
  out.product.remaining = p;
  out.tolerance = tolerance;
  return out;
}

}  // namespace pacc
