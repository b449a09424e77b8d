#include "pacc/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pacc/error.hpp"
#include "pacc/hamiltonian.hpp"
#include "pacc/units.hpp"

namespace pacc {

namespace {

constexpr std::size_t kTailProbe = 24;

// Gauss-Legendre nodes on [0, 1] and weights summing to 1.
constexpr double kGaussNodes[3] = {0.5 - 0.3872983346207417, 0.5, 0.5 + 0.3872983346207417};
constexpr double kGaussWeights[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

cplx minus_i_pow(std::size_t k) {
  switch (k % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

double rho_at(cplx z) {
  cplx s = std::sqrt(z * z - 1.0);
  const double a = std::abs(z + s);
  const double b = std::abs(z - s);
  return std::max(a, b);
}

// Chebyshev recursion shared by all expansions: calls sink(k, T_k(Hn) psi).
// Hn = (H - centre) / half_width.
template <typename Sink>
void chebyshev_series(const Hamiltonian& h, double centre, double half_width, std::size_t order,
                      std::span<const cplx> psi, CVector& prev, CVector& curr, CVector& next, Sink&& sink) {
  const std::size_t n = psi.size();
  prev.assign(psi.begin(), psi.end());
  sink(0, std::span<const cplx>(prev));
  if (order == 0) return;
  curr.resize(n);
  next.resize(n);
  const double inv = 1.0 / half_width;
  h.apply(prev, curr);
  for (std::size_t i = 0; i < n; ++i) curr[i] = (curr[i] - centre * prev[i]) * inv;
  sink(1, std::span<const cplx>(curr));
  const double two_inv = 2.0 * inv;
  for (std::size_t k = 2; k <= order; ++k) {
    h.apply(curr, next);
    for (std::size_t i = 0; i < n; ++i) next[i] = (next[i] - centre * curr[i]) * two_inv - prev[i];
    sink(k, std::span<const cplx>(next));
    std::swap(prev, curr);
    std::swap(curr, next);
  }
}

void project_out(const Hamiltonian& h, std::span<cplx> psi, std::span<const CVector> deflate) {
  const double w = h.volume_element();
  for (const auto& phi : deflate) {
    if (phi.size() != psi.size()) throw GridMismatch("deflation state does not match the Hamiltonian");
    const cplx c = dot(phi, psi) * w;
    axpy(-c, phi, psi);
  }
}

void renormalize(const Hamiltonian& h, std::span<cplx> psi, const char* what) {
  const double n2 = weighted_norm2(h, psi);
  if (!(n2 > 1e-280) || !std::isfinite(n2)) {
    std::ostringstream msg;
    msg << what << ": state norm collapsed (|psi|^2 = " << n2 << ")";
    throw NumericalError(msg.str());
  }
  scale(1.0 / std::sqrt(n2), psi);
}

}  // namespace

void PropagatorConfig::validate() const {
  if (!(time_step > 0.0) || !std::isfinite(time_step)) throw ConfigError("propagator time step must be positive");
  if (!(tolerance > 0.0) || tolerance > 1e-8) throw ConfigError("propagator tolerance must lie in (0, 1e-8]");
  if (max_order < 2) throw ConfigError("propagator max_order must be at least 2");
}

double ellipse_parameter(double w) {
  if (w <= 0.0) return 1.0;
  double rho = 1.0;
  for (cplx z : {cplx{1.0, -w}, cplx{-1.0, -w}, cplx{0.0, -w}}) rho = std::max(rho, rho_at(z));
  return rho;
}

ChebyshevPropagator::ChebyshevPropagator(const Hamiltonian& h, const PropagatorConfig& cfg,
                                         std::vector<double> sample_fractions)
    : h_(h), cfg_(cfg) {
  cfg_.validate();
  const SpectralBounds b = h.bounds();
  if (!(b.width() > 0.0)) throw NumericalError("Hamiltonian spectral bounds are empty");
  centre_ = b.centre();
  half_width_ = 0.5 * b.width();
  const double rho = ellipse_parameter(h.absorption_bound() / half_width_);

  sample_fractions.push_back(1.0);
  const std::size_t rows = sample_fractions.size();
  const double r_full = half_width_ * cfg_.time_step / UnitSystem::hbar;

  // Order from the full step; J_k(x) at fixed k is largest at the largest x
  // once k > x, so the same order covers every sample.
  auto tail = [&](std::size_t from) {
    double s = 0.0;
    for (std::size_t k = from; k < from + kTailProbe; ++k)
      s += 2.0 * std::abs(std::cyl_bessel_j(static_cast<double>(k), r_full)) * std::pow(rho, static_cast<double>(k));
    return s;
  };
  std::size_t order = static_cast<std::size_t>(std::ceil(r_full)) + 1;
  while (order > cfg_.max_order || tail(order + 1) >= cfg_.tolerance) {
    if (order >= cfg_.max_order) {
      std::ostringstream msg;
      msg << "Chebyshev order exceeds max_order " << cfg_.max_order << " (tail " << tail(order + 1)
          << " above tolerance " << cfg_.tolerance << ")";
      throw NumericalError(msg.str());
    }
    ++order;
  }
  order_ = order;
  residual_ = tail(order + 1);

  coefficients_.assign(rows, std::vector<cplx>(order_ + 1));
  for (std::size_t j = 0; j < rows; ++j) {
    const double tau = sample_fractions[j] * cfg_.time_step;
    const double x = half_width_ * tau / UnitSystem::hbar;
    const cplx phase = std::exp(cplx{0.0, -centre_ * tau / UnitSystem::hbar});
    for (std::size_t k = 0; k <= order_; ++k) {
      const double jk = std::cyl_bessel_j(static_cast<double>(k), x);
      coefficients_[j][k] = phase * minus_i_pow(k) * (k == 0 ? 1.0 : 2.0) * jk;
    }
  }
  samples_.assign(rows - 1, CVector(h.dimension()));
  result_.resize(h.dimension());
}

StepReport ChebyshevPropagator::step(std::span<cplx> psi) {
  if (psi.size() != h_.dimension()) throw GridMismatch("state size does not match Hamiltonian");
  const std::size_t n = psi.size();
  const std::size_t n_samples = samples_.size();
  chebyshev_series(h_, centre_, half_width_, order_, psi, prev_, curr_, next_,
                   [&](std::size_t k, std::span<const cplx> t) {
                     const cplx a = coefficients_.back()[k];
                     if (k == 0) {
                       for (std::size_t i = 0; i < n; ++i) result_[i] = a * t[i];
                       for (std::size_t j = 0; j < n_samples; ++j) {
                         const cplx c = coefficients_[j][0];
                         for (std::size_t i = 0; i < n; ++i) samples_[j][i] = c * t[i];
                       }
                     } else {
                       for (std::size_t i = 0; i < n; ++i) result_[i] += a * t[i];
                       for (std::size_t j = 0; j < n_samples; ++j) {
                         const cplx c = coefficients_[j][k];
                         for (std::size_t i = 0; i < n; ++i) samples_[j][i] += c * t[i];
                       }
                     }
                   });
  std::copy(result_.begin(), result_.end(), psi.begin());
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(psi[i].real()) || !std::isfinite(psi[i].imag()))
      throw NumericalError("non-finite amplitude after propagation step");
  }
  return {order_, residual_};
}

ChannelField step(const ChannelField& psi, const ChannelHamiltonian& h, const PropagatorConfig& cfg) {
  if (!(psi.grid() == h.grid())) throw GridMismatch("field and Hamiltonian grids differ");
  ChebyshevPropagator prop(h, cfg);
  ChannelField out = psi;
  prop.step(out.data());
  return out;
}

PropagationReport propagate(std::span<cplx> psi, const Hamiltonian& h, const PropagatorConfig& cfg,
                            std::size_t n_steps, const Observers& observers) {
  std::vector<double> fractions;
  if (!observers.quadrature.empty()) fractions.assign(std::begin(kGaussNodes), std::end(kGaussNodes));
  ChebyshevPropagator prop(h, cfg, fractions);
  const double dt = cfg.time_step;
  for (const auto& obs : observers.boundary) obs(0, 0.0, psi);
  for (std::size_t s = 1; s <= n_steps; ++s) {
    prop.step(psi);
    for (std::size_t j = 0; j < prop.sample_count(); ++j)
      for (const auto& obs : observers.quadrature) obs(s, prop.sample(j), kGaussWeights[j] * dt);
    const double t = dt * static_cast<double>(s);
    for (const auto& obs : observers.boundary) obs(s, t, psi);
  }
  return {n_steps, prop.order(), prop.residual()};
}

EigenEstimate relax(std::span<cplx> psi, const Hamiltonian& h, const RelaxConfig& cfg,
                    std::span<const CVector> deflate) {
  if (psi.size() != h.dimension()) throw GridMismatch("state size does not match Hamiltonian");
  if (!(cfg.dispersion_stop > 0.0)) throw ConfigError("dispersion stop must be positive");
  if (!(cfg.step_factor > 0.0)) throw ConfigError("imaginary time step factor must be positive");
  if (weighted_norm2(h, psi) == 0.0) throw NumericalError("relaxation started from a zero state");

  const SpectralBounds b = h.bounds();
  const double centre = b.centre();
  const double half = 0.5 * b.width();
  // exp(-H tau) up to the constant exp(-centre tau): sum (2 - d_k0)(-1)^k I_k(z) T_k.
  const double z = half * (cfg.step_factor * UnitSystem::hbar / b.width()) / UnitSystem::hbar;
  std::vector<double> coef;
  for (std::size_t k = 0;; ++k) {
    const double c = (k == 0 ? 1.0 : 2.0) * std::cyl_bessel_i(static_cast<double>(k), z) * (k % 2 ? -1.0 : 1.0);
    coef.push_back(c);
    if (k > z && std::abs(c) < 1e-17 * std::abs(coef[0])) break;
  }
  const std::size_t order = coef.size() - 1;
  const std::size_t n = psi.size();
  CVector prev, curr, next, acc(n);

  project_out(h, psi, deflate);
  renormalize(h, psi, "imaginary-time relaxation");
  const std::size_t interval = std::max<std::size_t>(1, cfg.check_interval);
  double last_d = 0.0;
  for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
    chebyshev_series(h, centre, half, order, psi, prev, curr, next, [&](std::size_t k, std::span<const cplx> t) {
      const double c = coef[k];
      if (k == 0)
        for (std::size_t i = 0; i < n; ++i) acc[i] = c * t[i];
      else
        for (std::size_t i = 0; i < n; ++i) acc[i] += c * t[i];
    });
    std::copy(acc.begin(), acc.end(), psi.begin());
    project_out(h, psi, deflate);
    renormalize(h, psi, "imaginary-time relaxation");
    if (it % interval == 0 || it == cfg.max_iterations) {
      last_d = dispersion(h, psi);
      if (last_d < cfg.dispersion_stop) return {expectation_energy(h, psi).mean, last_d, it};
    }
  }
  std::ostringstream msg;
  msg << "imaginary-time relaxation did not converge in " << cfg.max_iterations << " iterations (dispersion "
      << last_d << ", target " << cfg.dispersion_stop << ")";
  throw NumericalError(msg.str());
}

EigenEstimate filter_relax(std::span<cplx> psi, const Hamiltonian& h, double target, const FilterConfig& cfg,
                           std::span<const CVector> deflate) {
  if (psi.size() != h.dimension()) throw GridMismatch("state size does not match Hamiltonian");
  if (!(cfg.dispersion_stop > 0.0)) throw ConfigError("dispersion stop must be positive");
  if (!(cfg.sharpness > 0.0)) throw ConfigError("filter sharpness must be positive");
  if (weighted_norm2(h, psi) == 0.0) throw NumericalError("filter relaxation started from a zero state");

  const SpectralBounds b = h.bounds();
  const double centre = b.centre();
  const double half = 0.5 * b.width();
  const double x0 = (target - centre) / half;
  const double gamma = cfg.sharpness;

  // Chebyshev coefficients of exp(-gamma (x - x0)^2) by Gauss-Chebyshev quadrature.
  const std::size_t k_max = static_cast<std::size_t>(std::ceil(2.0 * std::sqrt(gamma * 40.0))) + 16;
  const std::size_t m = 2 * k_max + 64;
  std::vector<double> fvals(m), theta(m);
  for (std::size_t j = 0; j < m; ++j) {
    theta[j] = std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(m);
    const double x = std::cos(theta[j]);
    fvals[j] = std::exp(-gamma * (x - x0) * (x - x0));
  }
  std::vector<double> coef(k_max + 1);
  double c_max = 0.0;
  for (std::size_t k = 0; k <= k_max; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) s += fvals[j] * std::cos(static_cast<double>(k) * theta[j]);
    coef[k] = (k == 0 ? 1.0 : 2.0) * s / static_cast<double>(m);
    c_max = std::max(c_max, std::abs(coef[k]));
  }
  std::size_t order = k_max;
  while (order > 1 && std::abs(coef[order]) < 1e-15 * c_max) --order;
  coef.resize(order + 1);

  const std::size_t n = psi.size();
  CVector prev, curr, next, acc(n);
  project_out(h, psi, deflate);
  renormalize(h, psi, "filter relaxation");
  std::vector<double> history, energies;
  for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
    chebyshev_series(h, centre, half, order, psi, prev, curr, next, [&](std::size_t k, std::span<const cplx> t) {
      const double c = coef[k];
      if (k == 0)
        for (std::size_t i = 0; i < n; ++i) acc[i] = c * t[i];
      else
        for (std::size_t i = 0; i < n; ++i) acc[i] += c * t[i];
    });
    std::copy(acc.begin(), acc.end(), psi.begin());
    project_out(h, psi, deflate);
    renormalize(h, psi, "filter relaxation");
    const double d = dispersion(h, psi);
    const double e = expectation_energy(h, psi).mean;
    if (d < cfg.dispersion_stop) return {e, d, it};
    history.push_back(d);
    energies.push_back(e);
    // D alone may rise while the weight passes between two levels; a plateau
    // also needs the energy to have settled.
    const std::size_t w = cfg.plateau_window;
    if (w > 0 && history.size() > w && d > cfg.plateau_ratio * history[history.size() - 1 - w] &&
        std::abs(e - energies[energies.size() - 1 - w]) < 1e-2 * d) {
      std::ostringstream msg;
      msg << "filter relaxation stagnated at dispersion " << d << " (target " << cfg.dispersion_stop << ") after "
          << it << " iterations";
      throw NumericalError(msg.str());
    }
  }
  std::ostringstream msg;
  msg << "filter relaxation did not converge in " << cfg.max_iterations << " iterations (dispersion "
      << (history.empty() ? 0.0 : history.back()) << ")";
  throw NumericalError(msg.str());
}

}  // namespace pacc
