#include "pacc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pacc/error.hpp"

namespace pacc {

double Axis::wavenumber(std::size_t i) const {
  const auto n = static_cast<long>(count);
  auto j = static_cast<long>(i);
  if (j >= n / 2) j -= n;
  return 2.0 * std::numbers::pi * static_cast<double>(j) / length();
}

std::vector<double> Axis::wavenumbers() const {
  std::vector<double> k(count);
  for (std::size_t i = 0; i < count; ++i) k[i] = wavenumber(i);
  return k;
}

double Axis::max_wavenumber() const { return std::numbers::pi / spacing; }

std::size_t Axis::nearest_index(double x) const {
  const double u = std::round((x - origin) / spacing);
  if (u <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(u), count - 1);
}

bool is_transform_friendly(std::size_t n) {
  if (n == 0) return false;
  for (std::size_t p : {2u, 3u, 5u, 7u}) {
    while (n % p == 0) n /= p;
  }
  return n == 1;
}

void Axis::validate() const {
  if (count < 8) throw ConfigError("grid axis needs at least 8 points, got " + std::to_string(count));
  if (!(spacing > 0.0)) throw ConfigError("grid spacing must be positive");
  if (!is_transform_friendly(count)) {
    throw ConfigError("grid point count " + std::to_string(count) + " is not a product of 2,3,5,7");
  }
}

}  // namespace pacc
