#pragma once

#include <cstddef>
#include <vector>

namespace pacc {

/// One uniformly spaced periodic axis, internal length units.
struct Axis {
  std::size_t count = 0;
  double spacing = 0.0;
  double origin = 0.0;

  double point(std::size_t i) const { return origin + spacing * static_cast<double>(i); }
  double last() const { return point(count - 1); }
  double length() const { return spacing * static_cast<double>(count); }

  /// Wavenumber of FFT bin i in standard ordering; the set spans [-pi/d, pi/d).
  double wavenumber(std::size_t i) const;
  std::vector<double> wavenumbers() const;
  double max_wavenumber() const;

  std::size_t nearest_index(double x) const;

  /// Throws ConfigError unless count >= 8, spacing > 0 and count factors into 2,3,5,7.
  void validate() const;

  bool operator==(const Axis&) const = default;
};

bool is_transform_friendly(std::size_t n);

/// Rectangular (r, Z) grid. Arrays on it are row-major with Z contiguous:
/// index = ir * z.count + iz.
struct Grid2D {
  Axis r;
  Axis z;

  std::size_t size() const { return r.count * z.count; }
  std::size_t index(std::size_t ir, std::size_t iz) const { return ir * z.count + iz; }
  double cell_area() const { return r.spacing * z.spacing; }
  void validate() const {
    r.validate();
    z.validate();
  }

  bool operator==(const Grid2D&) const = default;
};

}  // namespace pacc
