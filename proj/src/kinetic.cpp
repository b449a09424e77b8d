#include "pacc/kinetic.hpp"

#include <algorithm>

#include "pacc/fft.hpp"

namespace pacc {

std::vector<double> kinetic_spectrum(const Axis& axis, double mass) {
  std::vector<double> t(axis.count);
  for (std::size_t i = 0; i < axis.count; ++i) {
    const double k = axis.wavenumber(i);
    t[i] = UnitSystem::hbar * UnitSystem::hbar * k * k / (2.0 * mass);
  }
  return t;
}

std::vector<double> kinetic_spectrum(const Grid2D& grid, const MassSet& masses) {
  const auto tr = kinetic_spectrum(grid.r, masses.reduced());
  const auto tz = kinetic_spectrum(grid.z, masses.total());
  std::vector<double> t(grid.size());
  for (std::size_t ir = 0; ir < grid.r.count; ++ir) {
    for (std::size_t iz = 0; iz < grid.z.count; ++iz) t[grid.index(ir, iz)] = tr[ir] + tz[iz];
  }
  return t;
}

double max_kinetic_energy(const Grid2D& grid, const MassSet& masses) {
  const double kr = grid.r.max_wavenumber();
  const double kz = grid.z.max_wavenumber();
  const double h2 = UnitSystem::hbar * UnitSystem::hbar;
  return 0.5 * h2 * (kr * kr / masses.reduced() + kz * kz / masses.total());
}

ChannelField apply_kinetic(const ChannelField& field, const MassSet& masses) {
  const Grid2D& grid = field.grid();
  const auto t = kinetic_spectrum(grid, masses);
  FftPlan plan({static_cast<int>(grid.r.count), static_cast<int>(grid.z.count)}, 2);
  auto buf = plan.buffer();
  std::copy(field.data().begin(), field.data().end(), buf.begin());
  plan.forward();
  const double inv_n = 1.0 / static_cast<double>(grid.size());
  const std::size_t n = grid.size();
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < n; ++i) buf[c * n + i] *= t[i] * inv_n;
  }
  plan.backward();
  ChannelField out(grid);
  std::copy(buf.begin(), buf.end(), out.data().begin());
  return out;
}

}  // namespace pacc
