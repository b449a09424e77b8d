#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "pacc/field.hpp"
#include "pacc/grid.hpp"
#include "pacc/units.hpp"

namespace testing {

using pacc::cplx;
using pacc::CVector;

inline pacc::Axis axis(std::size_t n, double spacing, double origin = 0.0) {
  pacc::Axis a;
  a.count = n;
  a.spacing = spacing;
  a.origin = origin;
  return a;
}

inline pacc::Grid2D grid(std::size_t nr, std::size_t nz, double d, double origin = 0.1) {
  return pacc::Grid2D{axis(nr, d, origin), axis(nz, d, origin)};
}

inline CVector random_vector(std::size_t n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist;
  CVector v(n);
  for (auto& x : v) x = {dist(gen), dist(gen)};
  return v;
}

// Closed-form Morse level n (internal units): -D + hw(n+1/2) - [hw(n+1/2)]^2 / 4D.
inline double morse_level(double depth, double alpha, double mass, int n) {
  const double w = alpha * std::sqrt(2.0 * depth / mass);
  const double x = w * (n + 0.5);
  return -depth + x - x * x / (4.0 * depth);
}

inline double gaussian(double x, double x0, double width) {
  const double u = (x - x0) / width;
  return std::exp(-0.5 * u * u);
}

// Periodic sinc-DVR Hamiltonian built from the explicit plane-wave sum
// T_jl = (1/N) sum_k hbar^2 k^2 / 2m e^{i k (x_j - x_l)}, no FFT involved.
inline Eigen::MatrixXcd dense_hamiltonian(const pacc::Axis& a, double mass, const std::vector<double>& v) {
  const std::size_t n = a.count;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l) {
      cplx t = 0.0;
      for (std::size_t b = 0; b < n; ++b) {
        const long m = b < (n + 1) / 2 ? static_cast<long>(b) : static_cast<long>(b) - static_cast<long>(n);
        const double k = two_pi * static_cast<double>(m) / a.length();
        const double phase = two_pi * static_cast<double>(m) * (static_cast<double>(j) - static_cast<double>(l)) /
                             static_cast<double>(n);
        t += k * k / (2.0 * mass) * std::polar(1.0, phase);
      }
      h(j, l) = t / static_cast<double>(n);
    }
  for (std::size_t j = 0; j < n; ++j) h(j, j) += v[j];
  return h;
}

inline std::vector<double> dense_levels(const pacc::Axis& a, double mass, const std::vector<double>& v) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_hamiltonian(a, mass, v));
  const auto& e = es.eigenvalues();
  return std::vector<double>(e.data(), e.data() + e.size());
}

}  // namespace testing
