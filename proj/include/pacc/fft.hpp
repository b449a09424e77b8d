#pragma once

#include <memory>
#include <span>
#include <vector>

#include "pacc/field.hpp"

namespace pacc {

/// Batched in-place complex DFT over an owned, SIMD-aligned buffer.
///
/// `dims` is the shape of one transform (row-major, last index contiguous) and
/// `batch` the number of back-to-back transforms. Transforms are unnormalised:
/// backward(forward(x)) == N x. Plans are made with FFTW_ESTIMATE so that the
/// arithmetic is identical from run to run. Rank-2 shapes run as contiguous
/// row transforms followed by column transforms on blocks of columns copied
/// into a contiguous scratch buffer. Planning is serialised internally;
/// executing distinct plans from distinct threads is safe.
class FftPlan {
 public:
  FftPlan(std::vector<int> dims, int batch);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  FftPlan(FftPlan&& other) noexcept;
  FftPlan& operator=(FftPlan&& other) noexcept;

  std::span<cplx> buffer() { return {data_, size_}; }
  std::span<const cplx> buffer() const { return {data_, size_}; }
  std::size_t transform_size() const { return size_ / static_cast<std::size_t>(batch_); }

  void forward();
  void backward();

 private:
  struct Plans;
  void release();
  void run(bool forward);

  cplx* data_ = nullptr;
  std::size_t size_ = 0;
  int batch_ = 1;
  std::unique_ptr<Plans> plans_;
};

/// Spectral d^order/dx^order of a periodic sampled function. The Nyquist bin
/// is dropped for odd orders.
CVector spectral_derivative(std::span<const cplx> values, const Axis& axis, int order);

}  // namespace pacc
