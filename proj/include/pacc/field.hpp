#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "pacc/grid.hpp"

namespace pacc {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

enum class Channel : std::size_t { reactant = 0, product = 1 };

// Plain vector kernels. Quadrature weights are applied by the caller.
cplx dot(std::span<const cplx> a, std::span<const cplx> b);  // sum conj(a) b
double squared_norm(std::span<const cplx> a);
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);  // y += alpha x
void scale(cplx alpha, std::span<cplx> x);

/// Two-channel wavefunction (Psi_R, Psi_P) on a Grid2D. Channel blocks are
/// stored back to back, each laid out as the grid describes.
class ChannelField {
 public:
  ChannelField() = default;
  explicit ChannelField(const Grid2D& grid);

  const Grid2D& grid() const { return grid_; }

  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }
  std::span<cplx> channel(Channel c);
  std::span<const cplx> channel(Channel c) const;

  cplx& at(Channel c, std::size_t ir, std::size_t iz) { return data_[offset(c) + grid_.index(ir, iz)]; }
  cplx at(Channel c, std::size_t ir, std::size_t iz) const { return data_[offset(c) + grid_.index(ir, iz)]; }

  double norm2() const;
  double channel_norm2(Channel c) const;

 private:
  std::size_t offset(Channel c) const { return static_cast<std::size_t>(c) * grid_.size(); }

  Grid2D grid_;
  CVector data_;
};

/// <a|b> summed over both channels with the dr dZ weight. Throws GridMismatch.
cplx inner(const ChannelField& a, const ChannelField& b);

}  // namespace pacc
