#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "pacc/error.hpp"
#include "pacc/hamiltonian.hpp"
#include "pacc/propagator.hpp"
#include "pacc/species.hpp"

using namespace pacc;
using testing::axis;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> harmonic(const Axis& a, double mass, double omega, double centre = 0.0) {
  std::vector<double> v(a.count);
  for (std::size_t i = 0; i < a.count; ++i) {
    const double x = a.point(i) - centre;
    v[i] = 0.5 * mass * omega * omega * x * x;
  }
  return v;
}

CVector column(const Eigen::MatrixXcd& m, Eigen::Index j) {
  CVector v(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) v[i] = m(i, j);
  return v;
}

double max_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double residual(const Hamiltonian& h, std::span<const cplx> psi) {
  CVector hp(psi.size());
  h.apply(psi, hp);
  const double e = expectation_energy(h, psi).mean;
  axpy(-e, psi, hp);
  return std::sqrt(squared_norm(hp) * h.volume_element());
}

}  // namespace

TEST_CASE("propagator configuration") {
  PropagatorConfig c;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.time_step = 1.0;
  CHECK_NOTHROW(c.validate());
  c.tolerance = 1e-6;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.tolerance = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.tolerance = 1e-12;
  c.max_order = 1;
  CHECK_THROWS_AS(c.validate(), ConfigError);

  CHECK(ellipse_parameter(0.0) == 1.0);
  CHECK(ellipse_parameter(0.1) > 1.0);
  CHECK(ellipse_parameter(0.2) > ellipse_parameter(0.1));

  const auto a = axis(32, 0.2, -3.2);
  GridHamiltonian1D h(a, 1.0, harmonic(a, 1.0, 1.0));
  PropagatorConfig tight{1000.0, 1e-12, 8};
  CHECK_THROWS_AS((void)ChebyshevPropagator(h, tight), NumericalError);
}

TEST_CASE("eigenstates only acquire a phase") {
  const auto a = axis(64, 0.25, -8.0);
  const auto v = harmonic(a, 1.0, 1.0);
  GridHamiltonian1D h(a, 1.0, v);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(testing::dense_hamiltonian(a, 1.0, v));
  const PropagatorConfig cfg{0.3, 1e-12};
  ChebyshevPropagator prop(h, cfg);
  for (int n : {0, 2, 5}) {
    auto phi = column(es.eigenvectors(), n);
    normalize(h, phi);
    CVector psi = phi;
    prop.step(psi);
    const cplx phase = std::exp(cplx{0.0, -es.eigenvalues()[n] * cfg.time_step});
    for (auto& x : phi) x *= phase;
    CHECK(max_diff(psi, phi) < 10.0 * cfg.tolerance / std::sqrt(a.spacing));
  }
}

TEST_CASE("hermitian propagation conserves norm and energy") {
  const auto a = axis(128, 0.2, -12.8);
  const auto v = harmonic(a, 1.0, 0.5, 1.0);
  GridHamiltonian1D h(a, 1.0, v);
  CVector psi(a.count);
  for (std::size_t i = 0; i < a.count; ++i)
    psi[i] = std::exp(-std::pow(a.point(i) + 2.0, 2) / 2.0 + cplx{0.0, 1.5 * a.point(i)});
  normalize(h, psi);
  const double e0 = expectation_energy(h, psi).mean;
  const PropagatorConfig cfg{0.05, 1e-12};
  const auto report = propagate(psi, h, cfg, 1000);
  CHECK(report.steps == 1000);
  CHECK(report.residual < cfg.tolerance);
  CHECK(std::abs(weighted_norm2(h, psi) - 1.0) < 1e-8);
  CHECK(std::abs(expectation_energy(h, psi).mean - e0) < 1e-8 * h.bounds().width());
}

TEST_CASE("two half steps agree with one full step") {
  const auto a = axis(96, 0.2, -9.6);
  GridHamiltonian1D h(a, 1.0, harmonic(a, 1.0, 0.7));
  CVector psi(a.count);
  for (std::size_t i = 0; i < a.count; ++i) psi[i] = std::exp(-std::pow(a.point(i) - 1.0, 2) + cplx{0.0, a.point(i)});
  normalize(h, psi);
  const double eps = 1e-12;
  CVector full = psi, half = psi;
  ChebyshevPropagator p1(h, {0.4, eps});
  ChebyshevPropagator p2(h, {0.2, eps});
  p1.step(full);
  p2.step(half);
  p2.step(half);
  CHECK(std::sqrt(squared_norm(CVector(full)) * a.spacing) == doctest::Approx(1.0).epsilon(1e-11));
  CVector d(full.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = full[i] - half[i];
  CHECK(std::sqrt(squared_norm(d) * a.spacing) < 10.0 * eps);
}

TEST_CASE("intermediate samples match shorter steps") {
  const auto a = axis(64, 0.25, -8.0);
  GridHamiltonian1D h(a, 1.0, harmonic(a, 1.0, 1.0));
  CVector psi = testing::random_vector(a.count, 4);
  normalize(h, psi);
  ChebyshevPropagator p(h, {0.5, 1e-12}, {0.25, 0.6});
  CVector stepped = psi;
  p.step(stepped);
  for (auto [j, f] : {std::pair{0, 0.25}, std::pair{1, 0.6}}) {
    CVector ref = psi;
    ChebyshevPropagator q(h, {0.5 * f, 1e-12});
    q.step(ref);
    CHECK(max_diff(p.sample(j), ref) < 1e-10);
  }
}

TEST_CASE("observers see every boundary and the full quadrature weight") {
  const auto a = axis(32, 0.3, -4.8);
  GridHamiltonian1D h(a, 1.0, harmonic(a, 1.0, 1.0));
  CVector psi = testing::random_vector(a.count, 9);
  normalize(h, psi);
  std::vector<std::size_t> steps;
  std::vector<double> times;
  double weight = 0.0;
  Observers obs;
  obs.boundary.push_back([&](std::size_t s, double t, std::span<cplx>) {
    steps.push_back(s);
    times.push_back(t);
  });
  obs.quadrature.push_back([&](std::size_t, std::span<const cplx>, double w) { weight += w; });
  propagate(psi, h, {0.1, 1e-12}, 7, obs);
  REQUIRE(steps.size() == 8);
  for (std::size_t s = 0; s <= 7; ++s) {
    CHECK(steps[s] == s);
    CHECK(times[s] == doctest::Approx(0.1 * s));
  }
  CHECK(weight == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("absorbing hamiltonian only loses norm") {
  const auto a = axis(128, 0.2, -12.8);
  std::vector<double> w(a.count, 0.0);
  for (std::size_t i = 0; i < a.count; ++i)
    if (a.point(i) > 8.0) w[i] = 0.05 * std::pow(a.point(i) - 8.0, 2);
  GridHamiltonian1D h(a, 1.0, std::vector<double>(a.count, 0.0), w);
  CHECK(h.absorption_bound() > 0.0);
  CVector psi(a.count);
  for (std::size_t i = 0; i < a.count; ++i) psi[i] = std::exp(-std::pow(a.point(i), 2) + cplx{0.0, 3.0 * a.point(i)});
  normalize(h, psi);
  ChebyshevPropagator p(h, {0.1, 1e-12});
  double previous = 1.0;
  for (int s = 0; s < 80; ++s) {
    p.step(psi);
    const double n = weighted_norm2(h, psi);
    CHECK(n <= previous + 1e-12);
    previous = n;
  }
  CHECK(previous < 0.5);
}

TEST_CASE("free gaussian follows the closed form") {
  const double mass = 1.0, a0 = 1.0, k0 = 2.0, x0 = -10.0;
  const auto ax = axis(512, 80.0 / 512.0, -40.0);
  GridHamiltonian1D h(ax, mass, std::vector<double>(ax.count, 0.0));
  auto exact = [&](double x, double t) {
    const cplx alpha = 1.0 + cplx{0.0, t / (2.0 * mass * a0)};
    const double shift = x - x0 - k0 * t / mass;
    return std::pow(2.0 * kPi * a0, -0.25) / std::sqrt(alpha) *
           std::exp(-shift * shift / (4.0 * a0 * alpha) + cplx{0.0, k0 * (x - x0) - k0 * k0 * t / (2.0 * mass)});
  };
  CVector psi(ax.count);
  for (std::size_t i = 0; i < ax.count; ++i) psi[i] = exact(ax.point(i), 0.0);
  const PropagatorConfig cfg{0.05, 1e-12};
  propagate(psi, h, cfg, 100);
  double err = 0.0;
  for (std::size_t i = 0; i < ax.count; ++i) err = std::max(err, std::abs(psi[i] - exact(ax.point(i), 5.0)));
  CHECK(err < 1e-6);
}

TEST_CASE("imaginary-time relaxation") {
  SUBCASE("harmonic ground state") {
    const auto a = axis(128, 0.15, -9.6);
    GridHamiltonian1D h(a, 2.0, harmonic(a, 2.0, 0.9));
    CVector psi = testing::random_vector(a.count, 1);
    const auto e = relax(psi, h);
    CHECK(e.energy == doctest::Approx(0.45).epsilon(1e-6));
    CHECK(e.dispersion < 1e-6);
    CHECK(residual(h, psi) < 1e-5 * h.bounds().width());
  }
  SUBCASE("hydrogen molecule morse ground state") {
    const auto t = default_species_table();
    const auto& hh = t.hydrogen;
    const double mu = 0.5 * units::from_amu(1.00782503207);
    const auto a = axis(256, units::from_angstrom(0.02), units::from_angstrom(0.2));
    std::vector<double> v(a.count);
    for (std::size_t i = 0; i < a.count; ++i) v[i] = morse(hh.depth, hh.alpha_gas, hh.r_e_gas, a.point(i));
    GridHamiltonian1D h(a, mu, v);
    CVector psi = testing::random_vector(a.count, 2);
    const auto e = relax(psi, h);
    CHECK(std::abs(units::to_ev(e.energy - testing::morse_level(hh.depth, hh.alpha_gas, mu, 0))) < 1e-5);
  }
  SUBCASE("input validation") {
    const auto a = axis(32, 0.2, -3.2);
    GridHamiltonian1D h(a, 1.0, harmonic(a, 1.0, 1.0));
    CVector zero(a.count);
    CHECK_THROWS_AS(relax(zero, h), NumericalError);
    CVector wrong(16, 1.0);
    CHECK_THROWS_AS(relax(wrong, h), GridMismatch);
    CVector psi = testing::random_vector(a.count, 3);
    RelaxConfig bad;
    bad.dispersion_stop = 0.0;
    CHECK_THROWS_AS(relax(psi, h, bad), ConfigError);
    RelaxConfig short_run;
    short_run.max_iterations = 2;
    short_run.dispersion_stop = 1e-15;
    CHECK_THROWS_AS(relax(psi, h, short_run), NumericalError);
  }
}

TEST_CASE("gaussian filter relaxation") {
  const double mass = 1.0, omega = 1.0;
  const auto a = axis(128, 0.15, -9.6);
  const auto v = harmonic(a, mass, omega);
  GridHamiltonian1D h(a, mass, v);

  SUBCASE("targets the nearest level") {
    CVector psi = testing::random_vector(a.count, 5);
    const auto e = filter_relax(psi, h, 2.4 * omega);
    CHECK(e.energy == doctest::Approx(2.5 * omega).epsilon(1e-6));
    CHECK(residual(h, psi) < 1e-5 * h.bounds().width());
  }
  SUBCASE("an eigenstate at its own energy is a fixed point") {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(testing::dense_hamiltonian(a, mass, v));
    CVector phi = column(es.eigenvectors(), 3);
    normalize(h, phi);
    CVector psi = phi;
    const auto e = filter_relax(psi, h, es.eigenvalues()[3]);
    CHECK(e.iterations == 1);
    CHECK(e.dispersion < 1e-12);
    CHECK(std::abs(dot(phi, psi) * a.spacing) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("morse level near the fifth state") {
    const auto t = default_species_table();
    const auto& hh = t.hydrogen;
    const double mu = 0.5 * units::from_amu(1.00782503207);
    const auto r = axis(256, units::from_angstrom(0.02), units::from_angstrom(0.2));
    std::vector<double> vm(r.count);
    for (std::size_t i = 0; i < r.count; ++i) vm[i] = morse(hh.depth, hh.alpha_gas, hh.r_e_gas, r.point(i));
    GridHamiltonian1D hm(r, mu, vm);
    const double e4 = testing::morse_level(hh.depth, hh.alpha_gas, mu, 4);
    const double gap = e4 - testing::morse_level(hh.depth, hh.alpha_gas, mu, 3);
    CVector psi = testing::random_vector(r.count, 6);
    const auto e = filter_relax(psi, hm, e4 + 0.2 * gap);
    CHECK(std::abs(units::to_ev(e.energy - e4)) < 1e-5);
  }
  SUBCASE("stagnation is reported") {
    FilterConfig cfg;
    cfg.sharpness = 1e-3;
    cfg.dispersion_stop = 1e-14;
    CVector psi = testing::random_vector(a.count, 7);
    CHECK_THROWS_AS(filter_relax(psi, h, 10.0, cfg), NumericalError);
  }
}

TEST_CASE("lowest levels agree with dense diagonalisation on 64 points") {
  const auto a = axis(64, 0.3, -9.6);
  std::vector<double> v(a.count);
  for (std::size_t i = 0; i < a.count; ++i) {
    const double x = a.point(i);
    v[i] = 0.5 * x * x + 0.02 * x * x * x * x / 4.0 - 0.1 * x;
  }
  GridHamiltonian1D h(a, 1.0, v);
  const auto dense = testing::dense_levels(a, 1.0, v);

  RelaxConfig rc;
  rc.dispersion_stop = 1e-9;
  std::vector<CVector> found;
  for (int n = 0; n < 6; ++n) {
    CVector psi = testing::random_vector(a.count, 100 + n);
    const auto e = relax(psi, h, rc, found);
    CHECK(e.energy == doctest::Approx(dense[n]).epsilon(1e-8));
    found.push_back(psi);
  }

  FilterConfig fc;
  fc.dispersion_stop = 1e-9;
  for (int n = 0; n < 6; ++n) {
    CVector psi = testing::random_vector(a.count, 200 + n);
    const auto e = filter_relax(psi, h, dense[n] + 0.1 * (dense[n + 1] - dense[n]), fc);
    CHECK(e.energy == doctest::Approx(dense[n]).epsilon(1e-8));
  }
}
