#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pacc/field.hpp"
#include "pacc/operator.hpp"

namespace pacc {

class ChannelHamiltonian;

struct PropagatorConfig {
  double time_step = 0.0;     // internal time units
  double tolerance = 1e-12;   // per-step truncation bound relative to |psi|
  std::size_t max_order = 4096;

  void validate() const;
};

struct StepReport {
  std::size_t order = 0;   // highest polynomial degree used
  double residual = 0.0;   // bound on the discarded tail
};

/// Chebyshev expansion of exp(-i H dt / hbar) on the normalised operator
/// (H - centre) / half-width.
///
/// The truncation order is chosen so that the tail sum |a_k| rho^k stays below
/// the tolerance, where rho is the Bernstein-ellipse parameter enclosing the
/// absorbing (complex) part of the spectrum. The same Chebyshev vectors also
/// yield psi at intermediate times: `sample_fractions` lists those times as
/// fractions of the step, available from sample(j) after each step().
class ChebyshevPropagator {
 public:
  ChebyshevPropagator(const Hamiltonian& h, const PropagatorConfig& cfg, std::vector<double> sample_fractions = {});

  StepReport step(std::span<cplx> psi);
  std::span<const cplx> sample(std::size_t j) const { return samples_[j]; }
  std::size_t sample_count() const { return samples_.size(); }
  std::size_t order() const { return order_; }
  double residual() const { return residual_; }
  double time_step() const { return cfg_.time_step; }

 private:
  const Hamiltonian& h_;
  PropagatorConfig cfg_;
  double centre_;
  double half_width_;
  std::size_t order_ = 0;
  double residual_ = 0.0;
  // coefficients_[j][k]: j = sample index, last row is the full step.
  std::vector<std::vector<cplx>> coefficients_;
  std::vector<CVector> samples_;
  CVector prev_, curr_, next_, result_;
};

/// Bernstein-ellipse parameter enclosing [-1, 1] x [-i w, 0].
double ellipse_parameter(double w);

/// One real-time step of a two-channel field (allocates a propagator).
ChannelField step(const ChannelField& psi, const ChannelHamiltonian& h, const PropagatorConfig& cfg);

/// Called at every step boundary: step index 0 (before the first step) up to
/// n_steps, with the boundary time. The field may be modified (injection).
using BoundaryObserver = std::function<void(std::size_t step, double time, std::span<cplx> psi)>;

/// Called with interior samples of each step for time quadrature:
/// the state at a Gauss-Legendre node and its weight (time units).
using QuadratureObserver = std::function<void(std::size_t step, std::span<const cplx> psi, double weight)>;

struct Observers {
  std::vector<BoundaryObserver> boundary;
  std::vector<QuadratureObserver> quadrature;
};

struct PropagationReport {
  std::size_t steps = 0;
  std::size_t order = 0;
  double residual = 0.0;
};

PropagationReport propagate(std::span<cplx> psi, const Hamiltonian& h, const PropagatorConfig& cfg,
                            std::size_t n_steps, const Observers& observers = {});

struct EigenEstimate {
  double energy = 0.0;
  double dispersion = 0.0;
  std::size_t iterations = 0;
};

struct RelaxConfig {
  double dispersion_stop = 1e-6;   // internal energy units
  double step_factor = 0.5;        // imaginary step = step_factor * hbar / Delta E
  std::size_t max_iterations = 500000;
  std::size_t check_interval = 20;
};

/// Imaginary-time relaxation to the lowest state not excluded by `deflate`
/// (normalised states projected out each step). psi is overwritten with the
/// normalised result.
EigenEstimate relax(std::span<cplx> psi, const Hamiltonian& h, const RelaxConfig& cfg = {},
                    std::span<const CVector> deflate = {});

struct FilterConfig {
  double dispersion_stop = 1e-6;
  // Imaginary step of the modified operator 4(H - e)^2 / Delta E, in units of
  // hbar / Delta E. Larger values filter harder per step at higher degree.
  double sharpness = 4000.0;
  std::size_t max_iterations = 2000;
  std::size_t plateau_window = 8;
  double plateau_ratio = 0.999;  // D must shrink below ratio * D(window ago)
};

/// Gaussian-filter relaxation: ground state of 4(H - target)^2 / Delta E, i.e.
/// the eigenstate nearest `target` that the guess overlaps.
EigenEstimate filter_relax(std::span<cplx> psi, const Hamiltonian& h, double target, const FilterConfig& cfg = {},
                           std::span<const CVector> deflate = {});

}  // namespace pacc
