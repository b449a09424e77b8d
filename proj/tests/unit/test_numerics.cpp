#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "helpers.hpp"
#include "pacc/error.hpp"
#include "pacc/fft.hpp"
#include "pacc/hamiltonian.hpp"
#include "pacc/kinetic.hpp"
#include "pacc/operator.hpp"
#include "pacc/units.hpp"

using namespace pacc;
using testing::axis;

namespace {

constexpr double kPi = std::numbers::pi;

CVector naive_dft(const CVector& x, const std::vector<int>& dims, int sign) {
  // Row-major rank 1 or 2 transform by direct summation.
  const int n0 = dims[0];
  const int n1 = dims.size() > 1 ? dims[1] : 1;
  CVector y(x.size());
  for (int a = 0; a < n0; ++a)
    for (int b = 0; b < n1; ++b) {
      cplx s = 0.0;
      for (int i = 0; i < n0; ++i)
        for (int j = 0; j < n1; ++j) {
          const double ph = sign * 2.0 * kPi * (double(a) * i / n0 + double(b) * j / n1);
          s += x[i * n1 + j] * std::polar(1.0, ph);
        }
      y[a * n1 + b] = s;
    }
  return y;
}

double max_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs(std::span<const cplx> a) {
  double m = 0.0;
  for (const auto& v : a) m = std::max(m, std::abs(v));
  return m;
}

std::shared_ptr<DiabaticPotential> flat_potential(const Grid2D& g) {
  auto v = std::make_shared<DiabaticPotential>();
  v->grid = g;
  v->v_rr.assign(g.size(), 0.0);
  v->v_pp.assign(g.size(), 0.0);
  v->v_rp.assign(g.size(), 0.0);
  v->cap.r.assign(g.r.count, 0.0);
  v->cap.z.assign(g.z.count, 0.0);
  return v;
}

}  // namespace

TEST_CASE("coordinate transform examples") {
  const auto any = MassSet::from_amu(3.0, 5.0);
  auto c = to_internal(units::from_angstrom(1.0), units::from_angstrom(1.0), any);
  CHECK(c.r == doctest::Approx(0.0));
  CHECK(units::to_angstrom(c.Z) == doctest::Approx(1.0).epsilon(1e-14));

  const auto equal = MassSet::from_amu(1.0, 1.0);
  c = to_internal(0.0, units::from_angstrom(2.0), equal);
  CHECK(units::to_angstrom(c.r) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(units::to_angstrom(c.Z) == doctest::Approx(1.0).epsilon(1e-14));

  const auto li = MassSet::from_amu(7.0, 1.0);
  c = to_internal(units::from_angstrom(1.0), units::from_angstrom(2.0), li);
  CHECK(units::to_angstrom(c.r) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(units::to_angstrom(c.Z) == doctest::Approx(1.875).epsilon(1e-14));

  const auto back = from_internal(c.r, c.Z, li);
  CHECK(units::to_angstrom(back.z_h) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(units::to_angstrom(back.z_y) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("mass set consistency") {
  const auto m = MassSet::from_amu(7.016, 1.00794);
  CHECK(m.total() == doctest::Approx(m.projectile() + m.adsorbate()).epsilon(1e-14));
  CHECK(m.reduced() * m.total() == doctest::Approx(m.projectile() * m.adsorbate()).epsilon(1e-14));
  CHECK_THROWS(MassSet(0.0, 1.0));
  CHECK_THROWS(MassSet(1.0, -1.0));
}

TEST_CASE("unit conversions round trip") {
  CHECK(units::to_ev(units::from_ev(1.234)) == doctest::Approx(1.234).epsilon(1e-15));
  CHECK(units::to_fs(units::from_fs(0.097)) == doctest::Approx(0.097).epsilon(1e-15));
  CHECK(units::to_angstrom(1.0) == doctest::Approx(0.529177210903));
  CHECK(units::to_inverse_angstrom(units::from_inverse_angstrom(9.45)) == doctest::Approx(9.45));
}

TEST_CASE("axis validation and wavenumbers") {
  CHECK(is_transform_friendly(256));
  CHECK(is_transform_friendly(210));
  CHECK_FALSE(is_transform_friendly(11 * 16));
  CHECK_THROWS_AS(axis(4, 0.1).validate(), ConfigError);
  CHECK_THROWS_AS(axis(22, 0.1).validate(), ConfigError);
  CHECK_THROWS_AS(axis(16, 0.0).validate(), ConfigError);
  CHECK_NOTHROW(axis(64, 0.1).validate());

  const auto a = axis(8, 0.5);
  const auto k = a.wavenumbers();
  CHECK(k[0] == 0.0);
  CHECK(k[4] == doctest::Approx(-kPi / 0.5));
  CHECK(*std::max_element(k.begin(), k.end()) < a.max_wavenumber());
  CHECK(a.nearest_index(1.26) == 3);
  CHECK(a.nearest_index(-5.0) == 0);
  CHECK(a.nearest_index(50.0) == 7);
}

TEST_CASE("inner product examples") {
  const auto g = testing::grid(16, 16, 0.2);
  ChannelField f(g);
  auto v = testing::random_vector(f.data().size(), 1);
  std::copy(v.begin(), v.end(), f.data().begin());
  const double n2 = f.norm2();
  scale(1.0 / std::sqrt(n2), f.data());
  CHECK(inner(f, f).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(inner(f, f).imag()) < 1e-15);

  ChannelField g2 = f;
  scale(cplx{0.0, 1.0}, g2.data());
  const cplx ip = inner(f, g2);
  CHECK(std::abs(ip - cplx{0.0, 1.0}) < 1e-14);

  ChannelField other(testing::grid(16, 32, 0.2));
  CHECK_THROWS_AS(inner(f, other), GridMismatch);
}

TEST_CASE("non-overlapping gaussians are orthogonal") {
  const auto g = testing::grid(64, 128, 0.1, 0.0);
  ChannelField a(g), b(g);
  for (std::size_t ir = 0; ir < g.r.count; ++ir)
    for (std::size_t iz = 0; iz < g.z.count; ++iz) {
      const double r = g.r.point(ir), z = g.z.point(iz);
      a.at(Channel::reactant, ir, iz) = testing::gaussian(r, 3.2, 0.3) * testing::gaussian(z, 2.0, 0.3);
      b.at(Channel::reactant, ir, iz) = testing::gaussian(r, 3.2, 0.3) * testing::gaussian(z, 10.0, 0.3);
    }
  CHECK(std::abs(inner(a, b)) < 1e-12 * std::sqrt(a.norm2() * b.norm2()));
}

TEST_CASE("fft matches direct summation") {
  for (const std::vector<int>& dims : {std::vector<int>{12}, std::vector<int>{30}, std::vector<int>{12, 20},
                                       std::vector<int>{9, 7}, std::vector<int>{16, 48}}) {
    const int batch = 2;
    FftPlan plan(dims, batch);
    const std::size_t one = plan.transform_size();
    auto x = testing::random_vector(one * batch, 7);
    auto buf = plan.buffer();
    std::copy(x.begin(), x.end(), buf.begin());
    plan.forward();
    for (int b = 0; b < batch; ++b) {
      CVector xb(x.begin() + b * one, x.begin() + (b + 1) * one);
      const auto ref = naive_dft(xb, dims, -1);
      CHECK(max_diff(buf.subspan(b * one, one), ref) < 1e-11 * max_abs(ref));
    }
    plan.backward();
    for (std::size_t i = 0; i < x.size(); ++i) buf[i] /= static_cast<double>(one);
    CHECK(max_diff(buf, x) < 1e-13);
  }
}

TEST_CASE("fft plans move and run from independent owners") {
  FftPlan a({8, 8}, 1);
  auto x = testing::random_vector(64, 3);
  std::copy(x.begin(), x.end(), a.buffer().begin());
  FftPlan b = std::move(a);
  b.forward();
  CHECK(max_diff(b.buffer(), naive_dft(x, {8, 8}, -1)) < 1e-12);
  FftPlan c({4}, 1);
  c = std::move(b);
  c.backward();
  for (auto& v : c.buffer()) v /= 64.0;
  CHECK(max_diff(c.buffer(), x) < 1e-14);
}

TEST_CASE("parseval") {
  const std::vector<int> dims{32, 24};
  FftPlan plan(dims, 1);
  const auto x = testing::random_vector(32 * 24, 11);
  std::copy(x.begin(), x.end(), plan.buffer().begin());
  plan.forward();
  const double n = 32.0 * 24.0;
  CHECK(squared_norm(plan.buffer()) / n == doctest::Approx(squared_norm(x)).epsilon(1e-12));
}

TEST_CASE("spectral derivative of band-limited functions") {
  const auto a = axis(64, 2.0 * kPi / 64.0);
  CVector f(64), d1(64), d2(64);
  for (std::size_t i = 0; i < 64; ++i) {
    const double x = a.point(i);
    f[i] = std::sin(3 * x) + 0.5 * std::cos(7 * x) + cplx{0.0, 0.25} * std::sin(11 * x);
    d1[i] = 3 * std::cos(3 * x) - 3.5 * std::sin(7 * x) + cplx{0.0, 2.75} * std::cos(11 * x);
    d2[i] = -9 * std::sin(3 * x) - 24.5 * std::cos(7 * x) - cplx{0.0, 30.25} * std::sin(11 * x);
  }
  CHECK(max_diff(spectral_derivative(f, a, 1), d1) < 1e-10 * max_abs(d1));
  CHECK(max_diff(spectral_derivative(f, a, 2), d2) < 1e-10 * max_abs(d2));
  CHECK_THROWS_AS(spectral_derivative(f, axis(32, 0.1), 1), GridMismatch);
}

TEST_CASE("kinetic operator examples") {
  const auto g = testing::grid(32, 64, 0.15);
  const auto m = MassSet::from_amu(1.0, 1.0);
  ChannelField c(g);
  for (auto& v : c.data()) v = {0.7, -0.2};
  CHECK(max_abs(apply_kinetic(c, m).data()) < 1e-12 * 0.73);

  ChannelField pw(g);
  const double kz = g.z.wavenumber(5);
  for (std::size_t ir = 0; ir < g.r.count; ++ir)
    for (std::size_t iz = 0; iz < g.z.count; ++iz)
      pw.at(Channel::product, ir, iz) = std::polar(1.0, kz * g.z.point(iz));
  const auto t = apply_kinetic(pw, m);
  const double e = kz * kz / (2.0 * m.total());
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    err = std::max(err, std::abs(t.channel(Channel::product)[i] - e * pw.channel(Channel::product)[i]));
  CHECK(err < 1e-12 * e);
  CHECK(max_abs(t.channel(Channel::reactant)) == 0.0);
}

TEST_CASE("kinetic operator matches finite differences for a gaussian in r") {
  const auto m = MassSet::from_amu(1.0, 1.0);
  const double mu = m.reduced();
  double previous = 0.0;
  for (double d : {0.08, 0.04}) {
    const std::size_t n = d > 0.05 ? 128 : 256;
    const Grid2D g{axis(n, d, 0.0), axis(8, 0.5, 0.0)};
    const double centre = 0.5 * g.r.length(), width = 0.6;
    ChannelField f(g);
    for (std::size_t ir = 0; ir < n; ++ir)
      for (std::size_t iz = 0; iz < 8; ++iz) f.at(Channel::reactant, ir, iz) = testing::gaussian(g.r.point(ir), centre, width);
    const auto t = apply_kinetic(f, m);
    double err = 0.0;
    for (std::size_t ir = 1; ir + 1 < n; ++ir) {
      const double lap = (f.at(Channel::reactant, ir + 1, 0).real() - 2.0 * f.at(Channel::reactant, ir, 0).real() +
                          f.at(Channel::reactant, ir - 1, 0).real()) /
                         (d * d);
      err = std::max(err, std::abs(t.at(Channel::reactant, ir, 0).real() + lap / (2.0 * mu)));
    }
    if (previous > 0.0) CHECK(err < 0.3 * previous);  // second-order convergence
    CHECK(err < 0.05 / mu);
    previous = err;
  }
}

TEST_CASE("kinetic operator is hermitian") {
  const auto g = testing::grid(24, 40, 0.1);
  const auto m = MassSet::from_amu(7.0, 1.0);
  ChannelField a(g), b(g);
  auto va = testing::random_vector(a.data().size(), 21), vb = testing::random_vector(b.data().size(), 22);
  std::copy(va.begin(), va.end(), a.data().begin());
  std::copy(vb.begin(), vb.end(), b.data().begin());
  const cplx ab = inner(a, apply_kinetic(b, m));
  const cplx ba = inner(b, apply_kinetic(a, m));
  CHECK(std::abs(ab - std::conj(ba)) < 1e-10 * std::abs(ab));
}

TEST_CASE("channel hamiltonian is hermitian without absorber and encloses energies") {
  const auto g = testing::grid(16, 32, 0.12);
  auto v = flat_potential(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    v->v_rr[i] = 0.01 * std::sin(0.3 * i);
    v->v_pp[i] = -0.02 + 0.005 * std::cos(0.7 * i);
    v->v_rp[i] = 0.003 * std::sin(0.11 * i);
  }
  ChannelHamiltonian h(v, MassSet::from_amu(1.0, 1.0), false);
  auto a = testing::random_vector(h.dimension(), 5), b = testing::random_vector(h.dimension(), 6);
  CVector ha(a.size()), hb(b.size());
  h.apply(a, ha);
  h.apply(b, hb);
  const cplx x = dot(a, hb), y = dot(b, ha);
  CHECK(std::abs(x - std::conj(y)) < 1e-10 * std::abs(x));

  normalize(h, a);
  const double e = expectation_energy(h, a).mean;
  CHECK(e >= h.bounds().lower);
  CHECK(e <= h.bounds().upper);
}

TEST_CASE("energy moments and dispersion") {
  const auto a = axis(64, 0.25, -8.0);
  const double mass = 1.0, omega = 1.0;
  std::vector<double> v(64);
  for (std::size_t i = 0; i < 64; ++i) v[i] = 0.5 * mass * omega * omega * a.point(i) * a.point(i);
  GridHamiltonian1D h(a, mass, v);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(testing::dense_hamiltonian(a, mass, v));
  auto state = [&](int n) {
    CVector phi(64);
    for (int i = 0; i < 64; ++i) phi[i] = es.eigenvectors()(i, n);
    normalize(h, phi);
    return phi;
  };

  SUBCASE("eigenstate") {
    for (int n : {0, 3}) {
      const auto phi = state(n);
      const auto mom = expectation_energy(h, phi);
      CHECK(mom.mean == doctest::Approx(es.eigenvalues()[n]).epsilon(1e-10));
      CHECK(std::abs(mom.mean_square - mom.mean * mom.mean) < 1e-9);
      CHECK(dispersion(h, phi) < 1e-9);
    }
  }
  SUBCASE("two-level superposition") {
    auto p0 = state(0), p1 = state(1);
    CVector s(64);
    for (int i = 0; i < 64; ++i) s[i] = (p0[i] + p1[i]) / std::sqrt(2.0);
    const double expected = 0.5 * (es.eigenvalues()[1] - es.eigenvalues()[0]);
    CHECK(dispersion(h, s) == doctest::Approx(expected).epsilon(1e-9));
  }
  SUBCASE("random states") {
    for (unsigned seed = 0; seed < 5; ++seed) {
      auto r = testing::random_vector(64, seed);
      normalize(h, r);
      CHECK(dispersion(h, r) >= 0.0);
    }
  }
  SUBCASE("offset gaussian in a harmonic well") {
    const auto big = axis(256, 0.1, -12.8);
    std::vector<double> vb(256);
    for (std::size_t i = 0; i < 256; ++i) vb[i] = 0.5 * mass * omega * omega * big.point(i) * big.point(i);
    GridHamiltonian1D hb(big, mass, vb);
    const double s = 0.8, x0 = 1.5;
    CVector g(256);
    for (std::size_t i = 0; i < 256; ++i) g[i] = std::exp(-std::pow(big.point(i) - x0, 2) / (4 * s * s));
    normalize(hb, g);
    const double expected = 1.0 / (8.0 * mass * s * s) + 0.5 * mass * omega * omega * (x0 * x0 + s * s);
    CHECK(expectation_energy(hb, g).mean == doctest::Approx(expected).epsilon(1e-10));
  }
  CHECK_THROWS_AS(expectation_energy(h, CVector(64)), NumericalError);
}

TEST_CASE("bounds estimate pads the range") {
  const auto b = estimate_bounds(-1.0, 2.0, 7.0);
  CHECK(b.lower < -1.0);
  CHECK(b.upper > 9.0);
  CHECK(b.width() == doctest::Approx(10.0 * 1.1));
}
