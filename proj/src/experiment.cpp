#include "pacc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "pacc/error.hpp"
#include "pacc/hamiltonian.hpp"

namespace pacc {

ReactionModel build_model(const ExperimentConfig& cfg) {
  cfg.validate();
  ReactionModel m;
  m.config = cfg;
  m.species = make_species_model(cfg.species_table(), cfg.species, cfg.model_options());
  m.grid = cfg.grid();
  auto v = std::make_shared<DiabaticPotential>(build_diabatic(m.species, m.grid));
  v->cap = build_cap(m.grid, units::from_ev(cfg.cap_strength_eV), units::from_angstrom(cfg.cap_width_r_A),
                     units::from_angstrom(cfg.cap_width_z_A));
  m.potential = v;

  RelaxConfig relax_cfg;
  relax_cfg.dispersion_stop = cfg.dispersion_stop();
  PulseSpec spec = cfg.pulse();
  m.adsorbate = relax_adsorbate(m.species, m.grid, spec.z_s, relax_cfg);
  spec.amplitude_scale = 1.0;
  m.unit_pulse = make_pulse(m.adsorbate, spec, m.grid, m.species.masses);

  BasisOptions basis_opt;
  basis_opt.filter.dispersion_stop = cfg.dispersion_stop();
  basis_opt.filter.sharpness = cfg.filter_sharpness;
  m.basis = vibrational_basis(*m.potential, m.species.masses, cfg.z_flux(), cfg.state_count(), basis_opt);

  m.propagator = cfg.propagator();
  m.flux_lines = cfg.flux_lines();
  ChannelHamiltonian h(m.potential, m.species.masses, true);
  ChannelField first = m.unit_pulse;
  scale(cfg.amplitude_scale, first.data());
  if (cfg.amplitude_scale > 0.0) {
    normalize(h, first.data());
    m.initial_energy = expectation_energy(h, first.data()).mean;
  }
  return m;
}

TrajectoryResult run_trajectory(const ReactionModel& model, const std::optional<SecondPulse>& second,
                                const RunOptions& options) {
  const ExperimentConfig& cfg = model.config;
  ChannelHamiltonian h(model.potential, model.species.masses, true);
  const Grid2D& g = model.grid;
  const std::size_t n = g.size();
  const double dt = model.propagator.time_step;

  ChannelField psi = model.unit_pulse;
  scale(cfg.amplitude_scale, psi.data());

  std::vector<FluxProbe> probes;
  for (double z : model.flux_lines) probes.emplace_back(g, model.species.masses, z, model.potential->cap.z_onset);
  FluxAccumulator acc(probes.front().z_flux(), model.basis.size());
  std::vector<double> line_totals(probes.size(), 0.0);
  NormTracker tracker(h);
  tracker.start(psi.data());

  TrajectoryResult out;
  ChannelField extra(g);
  std::size_t inject_at = std::numeric_limits<std::size_t>::max();
  double theta = 0.0;
  if (second) {
    if (!(second->delay_fs >= 0.0)) throw ConfigError("second pulse delay must be non-negative");
    inject_at = static_cast<std::size_t>(std::llround(units::from_fs(second->delay_fs) / dt));
    if (inject_at > cfg.n_steps) throw ConfigError("second pulse delay lies beyond the propagation time");
    extra = model.unit_pulse;
    scale(second->amplitude_scale, extra.data());
    theta = second->theta;
    out.injection_step = inject_at;
    out.injection_time_fs = units::to_fs(dt * static_cast<double>(inject_at));
  }

  std::vector<std::size_t> snapshot_steps;
  if (options.snapshots) {
    for (double t : cfg.snapshot_times_fs)
      snapshot_steps.push_back(static_cast<std::size_t>(std::llround(units::from_fs(t) / dt)));
  }

  Observers obs;
  obs.boundary.push_back([&](std::size_t s, double t, std::span<cplx> state) {
    if (s == inject_at) {
      const auto before = tracker.channel_norms(state);
      add_pulse(state, extra.data(), theta);
      tracker.injected(before, state);
    }
    const auto product = std::span<const cplx>(state).subspan(n, n);
    if (s >= 1) {
      project_and_accumulate(product, model.basis, probes.front(), dt, t, acc);
      line_totals.front() = acc.total();
      for (std::size_t i = 1; i < probes.size(); ++i) line_totals[i] += probes[i].flux(product) * dt;
    }
    for (std::size_t k = 0; k < snapshot_steps.size(); ++k) {
      if (snapshot_steps[k] != s) continue;
      Snapshot snap;
      snap.t_fs = units::to_fs(t);
      snap.reactant.resize(n);
      snap.product.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        snap.reactant[i] = std::norm(state[i]);
        snap.product[i] = std::norm(state[n + i]);
      }
      out.snapshots.push_back(std::move(snap));
    }
  });
  obs.quadrature.push_back(
      [&](std::size_t, std::span<const cplx> state, double weight) { tracker.sample(state, weight); });

  const PropagationReport report = propagate(psi.data(), h, model.propagator, cfg.n_steps, obs);

  out.flux = acc.total();
  out.line_flux = line_totals;
  out.state_flux = acc.state_totals();
  out.times_fs.reserve(acc.times().size());
  for (double t : acc.times()) out.times_fs.push_back(units::to_fs(t));
  out.currents.reserve(acc.currents().size());
  for (double j : acc.currents()) out.currents.push_back(j / units::to_fs(1.0));
  out.budget = tracker.finish(psi.data());
  out.chebyshev_order = report.order;
  return out;
}

TrajectoryResult run_one_pulse(const ReactionModel& model, const RunOptions& options) {
  return run_trajectory(model, std::nullopt, options);
}

TrajectoryResult run_two_pulse(const ReactionModel& model, double delay_fs, double theta, const RunOptions& options) {
  return run_trajectory(model, SecondPulse{delay_fs, theta, model.config.second_amplitude_scale}, options);
}

double signal_percent(double f_two, double f_one) {
  if (f_one == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return 100.0 * (f_two / f_one - 1.0);
}

std::size_t ScanResult::failed() const {
  return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const ScanPoint& p) { return !p.ok; }));
}

double ScanResult::signal(const ScanPoint& p) const {
  if (!one_pulse || !p.ok) return std::numeric_limits<double>::quiet_NaN();
  return signal_percent(p.result.flux, one_pulse->flux);
}

ScanResult run_scan(const ReactionModel& model, std::size_t workers, const ScanProgress& progress) {
  return run_scan(model, model.config.delays(), model.config.phases(), workers, progress);
}

ScanResult run_scan(const ReactionModel& model, const std::vector<double>& delays_fs,
                    const std::vector<double>& phases_rad, std::size_t workers, const ScanProgress& progress) {
  ScanResult result;
  result.delays_fs = delays_fs;
  result.phases_rad = phases_rad;
  result.state_energies = model.basis.energies;
  result.config_hash = hex64(config_hash(model.config));
  for (std::size_t i = 0; i < delays_fs.size(); ++i)
    for (std::size_t j = 0; j < phases_rad.size(); ++j) {
      ScanPoint p;
      p.delay_index = i;
      p.phase_index = j;
      p.delay_fs = delays_fs[i];
      p.theta = phases_rad[j];
      result.points.push_back(p);
    }
  if (result.points.empty()) return result;

  result.one_pulse = run_one_pulse(model);

  std::atomic<std::size_t> next{0};
  std::mutex progress_lock;
  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= result.points.size()) return;
      ScanPoint& p = result.points[k];
      try {
        p.result = run_two_pulse(model, p.delay_fs, p.theta);
        p.ok = true;
      } catch (const std::exception& e) {
        p.ok = false;
        p.error = e.what();
      }
      if (progress) {
        std::lock_guard<std::mutex> lock(progress_lock);
        progress(p);
      }
    }
  };
  const std::size_t n_workers = std::clamp<std::size_t>(workers, 1, result.points.size());
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return result;
}

}  // namespace pacc
