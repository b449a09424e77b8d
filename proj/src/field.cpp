#include "pacc/field.hpp"

#include "pacc/error.hpp"

namespace pacc {

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  // Split real/imaginary accumulation keeps the loop vectorisable.
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

double squared_norm(std::span<const cplx> a) {
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return s;
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(cplx alpha, std::span<cplx> x) {
  for (auto& v : x) v *= alpha;
}

ChannelField::ChannelField(const Grid2D& grid) : grid_(grid), data_(2 * grid.size()) {}

std::span<cplx> ChannelField::channel(Channel c) {
  return std::span<cplx>(data_).subspan(offset(c), grid_.size());
}

std::span<const cplx> ChannelField::channel(Channel c) const {
  return std::span<const cplx>(data_).subspan(offset(c), grid_.size());
}

double ChannelField::norm2() const { return squared_norm(data_) * grid_.cell_area(); }

double ChannelField::channel_norm2(Channel c) const {
  return squared_norm(channel(c)) * grid_.cell_area();
}

cplx inner(const ChannelField& a, const ChannelField& b) {
  if (!(a.grid() == b.grid())) throw GridMismatch("inner product of fields on different grids");
  return dot(a.data(), b.data()) * a.grid().cell_area();
}

}  // namespace pacc
