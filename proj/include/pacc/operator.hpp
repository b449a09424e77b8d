#pragma once

#include <cstddef>
#include <span>

#include "pacc/field.hpp"

namespace pacc {

struct SpectralBounds {
  double lower = 0.0;
  double upper = 0.0;

  double width() const { return upper - lower; }
  double centre() const { return 0.5 * (upper + lower); }
};

/// A (possibly absorbing) Hamiltonian acting on flat state vectors.
///
/// `volume_element` is the quadrature weight that turns the plain vector dot
/// product into the physical inner product. `bounds` encloses the real part of
/// the spectrum; `absorption_bound` is the largest |Im V| (0 for Hermitian H).
/// apply() may use internal scratch space: one instance per thread.
class Hamiltonian {
 public:
  virtual ~Hamiltonian() = default;

  virtual std::size_t dimension() const = 0;
  virtual double volume_element() const = 0;
  virtual SpectralBounds bounds() const = 0;
  virtual double absorption_bound() const { return 0.0; }
  virtual void apply(std::span<const cplx> in, std::span<cplx> out) const = 0;
};

struct EnergyMoments {
  double mean = 0.0;         // Re <psi|H|psi>
  double mean_square = 0.0;  // <H psi|H psi>
};

double weighted_norm2(const Hamiltonian& h, std::span<const cplx> psi);
void normalize(const Hamiltonian& h, std::span<cplx> psi);

/// <H> and <H^2> of a normalised state. Throws NumericalError for a zero state.
EnergyMoments expectation_energy(const Hamiltonian& h, std::span<const cplx> psi);

/// sqrt(<H^2> - <H>^2) for a normalised state.
///
/// Evaluated as the residual norm |(H - <H>) psi|, which equals the radicand's
/// root for Hermitian H but does not lose digits to cancellation. The direct
/// radicand is still checked: below -1e-12 (relative to <H^2>) is an error.
double dispersion(const Hamiltonian& h, std::span<const cplx> psi);

}  // namespace pacc
