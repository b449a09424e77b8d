#include "pacc/initial_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pacc/error.hpp"
#include "pacc/fft.hpp"
#include "pacc/hamiltonian.hpp"

namespace pacc {

namespace {

std::size_t largest_friendly_at_most(std::size_t n) {
  while (n > 8 && !is_transform_friendly(n)) --n;
  return n;
}

}  // namespace

void PulseSpec::validate() const {
  if (!(sigma_y > 0.0) || !std::isfinite(sigma_y)) throw ConfigError("pulse sigma_y must be positive");
  if (!std::isfinite(z_s) || !std::isfinite(k_y)) throw ConfigError("pulse centre and momentum must be finite");
  if (!(amplitude_scale >= 0.0) || !std::isfinite(amplitude_scale))
    throw ConfigError("pulse amplitude_scale must be non-negative");
}

void TwoPulseSpec::validate() const {
  pulse.validate();
  if (!(delay >= 0.0) || !std::isfinite(delay)) throw ConfigError("pulse delay must be non-negative");
  if (!std::isfinite(theta)) throw ConfigError("pulse phase must be finite");
  if (!(second_amplitude_scale >= 0.0) || !std::isfinite(second_amplitude_scale))
    throw ConfigError("second pulse amplitude scale must be non-negative");
}

double wrap_phase(double theta) {
  constexpr double pi = std::numbers::pi;
  if (theta >= -pi && theta <= pi) return theta;
  double w = std::remainder(theta, 2.0 * pi);
  if (w < -pi) w += 2.0 * pi;
  if (w > pi) w -= 2.0 * pi;
  return w;
}

double TwoPulseSpec::wrapped_theta() const { return wrap_phase(theta); }

void AdsorbateState::refresh() {
  if (psi.size() != axis.count) throw GridMismatch("adsorbate state does not match its axis");
  FftPlan plan({static_cast<int>(axis.count)}, 1);
  auto buf = plan.buffer();
  std::copy(psi.begin(), psi.end(), buf.begin());
  plan.forward();
  spectrum.assign(buf.begin(), buf.end());
  scale(1.0 / static_cast<double>(axis.count), spectrum);
}

cplx AdsorbateState::operator()(double z_h) const {
  const double u = z_h - axis.origin;
  if (u < 0.0 || z_h > axis.last()) return 0.0;
  const std::size_t n = axis.count;
  if (spectrum.size() != n) throw NumericalError("adsorbate spectrum not prepared");
  const double dk = 2.0 * std::numbers::pi / axis.length();
  const cplx b = std::exp(cplx{0.0, dk * u});
  cplx p = 1.0;
  cplx sum = spectrum[0];
  for (std::size_t k = 1; k < (n + 1) / 2; ++k) {
    p *= b;
    sum += spectrum[k] * p + spectrum[n - k] * std::conj(p);
  }
  if (n % 2 == 0) sum += spectrum[n / 2] * std::cos(dk * static_cast<double>(n / 2) * u);
  return sum;
}

AdsorbateState relax_ground_state(const Axis& axis, double mass, const std::function<double(double)>& potential,
                                  const RelaxConfig& cfg) {
  axis.validate();
  std::vector<double> v(axis.count);
  std::size_t i_min = 0;
  for (std::size_t i = 0; i < axis.count; ++i) {
    v[i] = potential(axis.point(i));
    if (!std::isfinite(v[i])) {
      std::ostringstream msg;
      msg << "non-finite potential at z = " << units::to_angstrom(axis.point(i)) << " A";
      throw NumericalError(msg.str());
    }
    if (v[i] < v[i_min]) i_min = i;
  }
  GridHamiltonian1D h(axis, mass, v);
  AdsorbateState out;
  out.axis = axis;
  out.psi.resize(axis.count);
  const double x0 = axis.point(i_min);
  const double w = 4.0 * axis.spacing;
  for (std::size_t i = 0; i < axis.count; ++i) {
    const double d = (axis.point(i) - x0) / w;
    out.psi[i] = std::exp(-d * d);
  }
  const EigenEstimate e = relax(out.psi, h, cfg);
  cplx s = 0.0;
  for (const auto& x : out.psi) s += x;
  if (std::abs(s) > 0.0) scale(std::conj(s) / std::abs(s), out.psi);
  out.energy = e.energy;
  out.dispersion = e.dispersion;
  out.iterations = e.iterations;
  out.refresh();
  return out;
}

AdsorbateState relax_adsorbate(const SpeciesModel& species, const Grid2D& grid, double z_s, const RelaxConfig& cfg) {
  grid.validate();
  const double z0 = grid.z.origin;
  if (!(z_s > z0) || z_s > grid.z.last() + grid.r.last()) throw ConfigError("z_s lies outside the grid");
  Axis axis{0, grid.z.spacing, z0};
  const auto span = static_cast<std::size_t>(std::floor(0.5 * (z_s - z0) / grid.z.spacing)) + 1;
  axis.count = largest_friendly_at_most(span);
  if (axis.count < 16) throw ConfigError("z_s is too close to the surface for the adsorbate cut");
  return relax_ground_state(axis, species.masses.adsorbate(),
                            [&](double z_h) { return species.reactant_atoms(z_h, z_s); }, cfg);
}

ChannelField make_pulse(const AdsorbateState& adsorbate, const PulseSpec& spec, const Grid2D& grid,
                        const MassSet& masses) {
  spec.validate();
  grid.validate();
  ChannelField field(grid);
  auto reactant = field.channel(Channel::reactant);
  double sampled = 0.0;
  for (std::size_t ir = 0; ir < grid.r.count; ++ir) {
    const double r = grid.r.point(ir);
    for (std::size_t iz = 0; iz < grid.z.count; ++iz) {
      const AtomCoordinates a = from_internal(r, grid.z.point(iz), masses);
      const double d = a.z_y - spec.z_s;
      const double e = d * d / spec.sigma_y;
      if (e > 200.0) continue;
      const cplx h = adsorbate(a.z_h);
      if (h == cplx{0.0, 0.0}) continue;
      const cplx value = h * std::exp(-e) * std::exp(cplx{0.0, spec.k_y * a.z_y});
      reactant[grid.index(ir, iz)] = value;
      sampled += std::norm(value);
    }
  }
  sampled *= grid.cell_area();
  const double h_norm = squared_norm(adsorbate.psi) * adsorbate.axis.spacing;
  const double analytic = h_norm * std::sqrt(std::numbers::pi * spec.sigma_y / 2.0);
  const double loss = std::abs(sampled - analytic) / analytic;
  if (!(loss <= 1e-6)) {
    std::ostringstream msg;
    msg << "pulse clipped by the grid: sampled norm^2 " << sampled << " vs analytic " << analytic
        << " (relative deviation " << loss << ")";
    throw NumericalError(msg.str());
  }
  scale(spec.amplitude_scale / std::sqrt(sampled), reactant);
  return field;
}

void add_pulse(std::span<cplx> psi, std::span<const cplx> pulse, double theta) {
  if (psi.size() != pulse.size()) throw GridMismatch("pulse and field sizes differ");
  const double w = wrap_phase(theta);
  // Snap the rounding residue at multiples of pi/2 so that theta = pi cancels exactly.
  auto snap = [](double x) { return std::abs(x) < 1e-15 ? 0.0 : x; };
  axpy(cplx{snap(std::cos(w)), -snap(std::sin(w))}, pulse, psi);
}

ChannelField inject_second_pulse(const ChannelField& psi, const ChannelField& pulse, double theta) {
  if (!(psi.grid() == pulse.grid())) throw GridMismatch("pulse and field grids differ");
  ChannelField out = psi;
  add_pulse(out.data(), pulse.data(), theta);
  return out;
}

}  // namespace pacc
