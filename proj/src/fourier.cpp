#include "circlelab/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace circlelab {

namespace {

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (!data) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* data;
};

// FFTW planning is not thread-safe; execution on fresh aligned buffers is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    FftwBuffer in(n), out(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in.data, out.data, sign, FFTW_ESTIMATE);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

std::vector<Complex> transform(const std::vector<Complex>& input, int sign) {
  const std::size_t n = input.size();
  fftw_plan plan = plan_cache().get(n, sign);
  FftwBuffer in(n), out(n);
  std::memcpy(in.data, input.data(), sizeof(fftw_complex) * n);
  fftw_execute_dft(plan, in.data, out.data);
  std::vector<Complex> result(n);
  std::memcpy(static_cast<void*>(result.data()), out.data, sizeof(fftw_complex) * n);
  return result;
}

}  // namespace

std::vector<Complex> fourier_forward(const Signal& f) {
  return transform(f.values(), FFTW_BACKWARD);
}

Signal fourier_inverse(const std::vector<Complex>& coefficients) {
  auto values = transform(coefficients, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(values.size());
  for (auto& v : values) v *= scale;
  return Signal(std::move(values));
}

Signal cyclic_convolve(const Signal& a, const Signal& b) {
  require(a.modulus() == b.modulus(), "cyclic_convolve: modulus mismatch");
  auto fa = fourier_forward(a);
  const auto fb = fourier_forward(b);
  for (std::size_t j = 0; j < fa.size(); ++j) fa[j] *= fb[j];
  return fourier_inverse(fa);
}

double wrap_signed(double x) {
  double r = x - std::floor(x);  // [0, 1)
  if (r > 0.5) r -= 1.0;
  return r;
}

}  // namespace circlelab
