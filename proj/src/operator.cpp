#include "pacc/operator.hpp"

#include <cmath>
#include <sstream>

#include "pacc/error.hpp"

namespace pacc {

double weighted_norm2(const Hamiltonian& h, std::span<const cplx> psi) {
  return squared_norm(psi) * h.volume_element();
}

void normalize(const Hamiltonian& h, std::span<cplx> psi) {
  const double n2 = weighted_norm2(h, psi);
  if (!(n2 > 0.0) || !std::isfinite(n2)) throw NumericalError("cannot normalise a zero or non-finite state");
  scale(1.0 / std::sqrt(n2), psi);
}

EnergyMoments expectation_energy(const Hamiltonian& h, std::span<const cplx> psi) {
  if (!(weighted_norm2(h, psi) > 0.0)) throw NumericalError("energy expectation of a zero-norm state");
  CVector hpsi(psi.size());
  h.apply(psi, hpsi);
  const double w = h.volume_element();
  return {dot(psi, hpsi).real() * w, squared_norm(hpsi) * w};
}

double dispersion(const Hamiltonian& h, std::span<const cplx> psi) {
  if (!(weighted_norm2(h, psi) > 0.0)) throw NumericalError("dispersion of a zero-norm state");
  CVector hpsi(psi.size());
  h.apply(psi, hpsi);
  const double w = h.volume_element();
  const double mean = dot(psi, hpsi).real() * w;
  const double mean_sq = squared_norm(hpsi) * w;
  const double radicand = mean_sq - mean * mean;
  if (radicand < -1e-12 * std::max(1.0, mean_sq)) {
    std::ostringstream msg;
    msg << "negative energy variance " << radicand << " (state not normalised?)";
    throw NumericalError(msg.str());
  }
  axpy(-mean, psi, hpsi);
  return std::sqrt(squared_norm(hpsi) * w);
}

}  // namespace pacc
