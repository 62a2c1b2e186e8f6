#include "vpfp/fourier.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace vpfp {

namespace {

// FFTW's planner is not thread-safe; executions on distinct buffers are.
std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

int pick_grid_size(int j_max) {
  if (j_max < 1) throw std::invalid_argument("FourierWorkspace: j_max >= 1");
  const int required = 3 * j_max + 1;
  int n = 16;
  while (n < required) n *= 2;
  return n;
}

}  // namespace

struct FourierWorkspace::Impl {
  fftw_complex* buf = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  explicit Impl(int n) {
    buf = fftw_alloc_complex(n);
    std::lock_guard<std::mutex> lock(planner_mutex());
    forward = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    backward = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!forward || !backward) {
      throw std::runtime_error("FourierWorkspace: FFTW plan creation failed");
    }
  }

  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
    fftw_free(buf);
  }
};

FourierWorkspace::FourierWorkspace(int j_max)
    : j_max_(j_max), grid_size_(pick_grid_size(j_max)),
      impl_(std::make_unique<Impl>(grid_size_)) {}

FourierWorkspace::~FourierWorkspace() = default;

Eigen::VectorXcd FourierWorkspace::to_physical(const Eigen::VectorXcd& modes) {
  if (modes.size() != 2 * j_max_ + 1) {
    throw std::invalid_argument("to_physical: wrong spectrum size");
  }
  const int n = grid_size_;
  auto* b = reinterpret_cast<std::complex<double>*>(impl_->buf);
  std::fill(b, b + n, std::complex<double>(0.0, 0.0));
  for (int j = -j_max_; j <= j_max_; ++j) {
    b[(j + n) % n] = modes[j + j_max_];
  }
  fftw_execute(impl_->backward);
  return Eigen::Map<const Eigen::VectorXcd>(b, n);
}

Eigen::VectorXcd FourierWorkspace::to_spectral(const Eigen::VectorXcd& values) {
  if (values.size() != grid_size_) {
    throw std::invalid_argument("to_spectral: wrong grid size");
  }
  const int n = grid_size_;
  auto* b = reinterpret_cast<std::complex<double>*>(impl_->buf);
  std::copy(values.data(), values.data() + n, b);
  fftw_execute(impl_->forward);
  Eigen::VectorXcd modes(2 * j_max_ + 1);
  for (int j = -j_max_; j <= j_max_; ++j) {
    modes[j + j_max_] = b[(j + n) % n] / double(n);
  }
  return modes;
}

Eigen::VectorXcd FourierWorkspace::product(const Eigen::VectorXcd& a,
                                           const Eigen::VectorXcd& b) {
  const Eigen::VectorXcd pa = to_physical(a);
  const Eigen::VectorXcd pb = to_physical(b);
  return to_spectral(pa.cwiseProduct(pb));
}

}  // namespace vpfp
