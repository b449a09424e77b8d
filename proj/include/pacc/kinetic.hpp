#pragma once

#include <vector>

#include "pacc/field.hpp"
#include "pacc/grid.hpp"
#include "pacc/units.hpp"

namespace pacc {

// hbar^2 k^2 / 2m on the FFT bins of one axis.
std::vector<double> kinetic_spectrum(const Axis& axis, double mass);

// hbar^2 k_r^2 / 2mu + hbar^2 k_Z^2 / 2M on the 2D bins, grid layout.
std::vector<double> kinetic_spectrum(const Grid2D& grid, const MassSet& masses);

double max_kinetic_energy(const Grid2D& grid, const MassSet& masses);

/// T Psi for both channels, by forward transform, multiplication and inverse.
ChannelField apply_kinetic(const ChannelField& field, const MassSet& masses);

}  // namespace pacc
