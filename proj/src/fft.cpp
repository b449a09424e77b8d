#include "pacc/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <new>
#include <numeric>

#include "pacc/error.hpp"

namespace pacc {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct FftPlan::Plans {
  // Rank 1 (or any rank other than 2): one batched plan per direction.
  // Rank 2: row plans on the data plus column plans on the scratch block.
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  fftw_plan col_forward = nullptr;
  fftw_plan col_backward = nullptr;
  cplx* scratch = nullptr;
  int rows = 0;   // dims[0]
  int cols = 0;   // dims[1]
  int block = 0;  // columns per scratch block

  ~Plans() {
    for (fftw_plan p : {forward, backward, col_forward, col_backward})
      if (p != nullptr) fftw_destroy_plan(p);
    if (scratch != nullptr) fftw_free(scratch);
  }
};

namespace {

int column_block(int cols) {
  for (int b = 8; b > 1; --b)
    if (cols % b == 0) return b;
  return 1;
}

}  // namespace

FftPlan::FftPlan(std::vector<int> dims, int batch) : batch_(batch) {
  if (dims.empty() || batch < 1) throw std::invalid_argument("FftPlan: empty shape");
  for (int d : dims)
    if (d < 1) throw std::invalid_argument("FftPlan: non-positive dimension");
  const std::size_t one = std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                                          [](std::size_t a, int d) { return a * static_cast<std::size_t>(d); });
  size_ = one * static_cast<std::size_t>(batch);
  data_ = reinterpret_cast<cplx*>(fftw_malloc(sizeof(cplx) * size_));
  if (data_ == nullptr) throw std::bad_alloc();
  std::fill(data_, data_ + size_, cplx{});

  plans_ = std::make_unique<Plans>();
  auto* raw = reinterpret_cast<fftw_complex*>(data_);
  std::lock_guard lock(planner_mutex());
  if (dims.size() == 2) {
    Plans& p = *plans_;
    p.rows = dims[0];
    p.cols = dims[1];
    p.block = column_block(p.cols);
    int n_row[1] = {p.cols};
    const int n_rows = p.rows * batch;
    p.forward = fftw_plan_many_dft(1, n_row, n_rows, raw, nullptr, 1, p.cols, raw, nullptr, 1, p.cols, FFTW_FORWARD,
                                   FFTW_ESTIMATE);
    p.backward = fftw_plan_many_dft(1, n_row, n_rows, raw, nullptr, 1, p.cols, raw, nullptr, 1, p.cols,
                                    FFTW_BACKWARD, FFTW_ESTIMATE);
    p.scratch = reinterpret_cast<cplx*>(fftw_malloc(sizeof(cplx) * static_cast<std::size_t>(p.rows * p.block)));
    if (p.scratch == nullptr) {
      plans_.reset();
      fftw_free(data_);
      data_ = nullptr;
      throw std::bad_alloc();
    }
    auto* s = reinterpret_cast<fftw_complex*>(p.scratch);
    int n_col[1] = {p.rows};
    p.col_forward = fftw_plan_many_dft(1, n_col, p.block, s, nullptr, 1, p.rows, s, nullptr, 1, p.rows,
                                       FFTW_FORWARD, FFTW_ESTIMATE);
    p.col_backward = fftw_plan_many_dft(1, n_col, p.block, s, nullptr, 1, p.rows, s, nullptr, 1, p.rows,
                                        FFTW_BACKWARD, FFTW_ESTIMATE);
    if (p.forward == nullptr || p.backward == nullptr || p.col_forward == nullptr || p.col_backward == nullptr) {
      plans_.reset();
      fftw_free(data_);
      data_ = nullptr;
      throw NumericalError("FFTW could not create a plan");
    }
    return;
  }
  const int rank = static_cast<int>(dims.size());
  const int dist = static_cast<int>(one);
  plans_->forward = fftw_plan_many_dft(rank, dims.data(), batch, raw, nullptr, 1, dist, raw, nullptr, 1, dist,
                                       FFTW_FORWARD, FFTW_ESTIMATE);
  plans_->backward = fftw_plan_many_dft(rank, dims.data(), batch, raw, nullptr, 1, dist, raw, nullptr, 1, dist,
                                        FFTW_BACKWARD, FFTW_ESTIMATE);
  if (plans_->forward == nullptr || plans_->backward == nullptr) {
    plans_.reset();
    fftw_free(data_);
    data_ = nullptr;
    throw NumericalError("FFTW could not create a plan");
  }
}

FftPlan::~FftPlan() { release(); }

FftPlan::FftPlan(FftPlan&& other) noexcept
    : data_(other.data_), size_(other.size_), batch_(other.batch_), plans_(std::move(other.plans_)) {
  other.data_ = nullptr;
  other.size_ = 0;
}

FftPlan& FftPlan::operator=(FftPlan&& other) noexcept {
  if (this != &other) {
    release();
    data_ = other.data_;
    size_ = other.size_;
    batch_ = other.batch_;
    plans_ = std::move(other.plans_);
    other.data_ = nullptr;
    other.size_ = 0;
  }
  return *this;
}

void FftPlan::release() {
  std::lock_guard lock(planner_mutex());
  plans_.reset();
  if (data_ != nullptr) fftw_free(data_);
  data_ = nullptr;
}

void FftPlan::run(bool forward) {
  Plans& p = *plans_;
  fftw_execute(forward ? p.forward : p.backward);
  if (p.rows == 0) return;
  fftw_plan col = forward ? p.col_forward : p.col_backward;
  const std::size_t rows = static_cast<std::size_t>(p.rows);
  const std::size_t cols = static_cast<std::size_t>(p.cols);
  const std::size_t block = static_cast<std::size_t>(p.block);
  cplx* scratch = p.scratch;
  for (int b = 0; b < batch_; ++b) {
    cplx* base = data_ + static_cast<std::size_t>(b) * rows * cols;
    for (std::size_t c0 = 0; c0 < cols; c0 += block) {
      for (std::size_t i = 0; i < rows; ++i) {
        const cplx* src = base + i * cols + c0;
        for (std::size_t j = 0; j < block; ++j) scratch[j * rows + i] = src[j];
      }
      fftw_execute(col);
      for (std::size_t i = 0; i < rows; ++i) {
        cplx* dst = base + i * cols + c0;
        for (std::size_t j = 0; j < block; ++j) dst[j] = scratch[j * rows + i];
      }
    }
  }
}

void FftPlan::forward() { run(true); }
void FftPlan::backward() { run(false); }

CVector spectral_derivative(std::span<const cplx> values, const Axis& axis, int order) {
  if (values.size() != axis.count) throw GridMismatch("spectral_derivative: size does not match axis");
  FftPlan plan({static_cast<int>(axis.count)}, 1);
  auto buf = plan.buffer();
  std::copy(values.begin(), values.end(), buf.begin());
  plan.forward();
  const cplx i{0.0, 1.0};
  const double inv_n = 1.0 / static_cast<double>(axis.count);
  for (std::size_t j = 0; j < axis.count; ++j) {
    const double k = axis.wavenumber(j);
    cplx factor = std::pow(i * k, order);
    if (order % 2 == 1 && axis.count % 2 == 0 && j == axis.count / 2) factor = 0.0;
    buf[j] *= factor * inv_n;
  }
  plan.backward();
  return CVector(buf.begin(), buf.end());
}

}  // namespace pacc
