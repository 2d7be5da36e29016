#include "circlelab/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace circlelab {

namespace {

void check_finite(const std::vector<Complex>& values) {
  for (const auto& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw PreconditionError("Signal: entries must be finite");
    }
  }
}

void check_same_modulus(const Signal& a, const Signal& b) {
  require(a.modulus() == b.modulus(), "Signal: modulus mismatch (" + std::to_string(a.modulus()) +
                                          " vs " + std::to_string(b.modulus()) + ")");
}

}  // namespace

Signal::Signal(std::vector<Complex> values) : values_(std::move(values)) {
  require(!values_.empty(), "Signal: modulus must be >= 1");
  check_finite(values_);
}

Signal::Signal(std::int64_t modulus, Complex fill) {
  require(modulus >= 1, "Signal: modulus must be >= 1");
  values_.assign(static_cast<std::size_t>(modulus), fill);
  check_finite(values_);
}

Signal Signal::from_real(std::span<const double> values) {
  return Signal(std::vector<Complex>(values.begin(), values.end()));
}

Signal Signal::delta(std::int64_t modulus, std::int64_t at, double height) {
  Signal s(modulus, Complex{});
  s[mod_floor(at, modulus)] = height;
  return s;
}

Signal Signal::gaussian(std::int64_t modulus, std::uint64_t seed, bool complex_valued) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Complex> v(static_cast<std::size_t>(modulus));
  for (auto& z : v) {
    const double re = normal(rng);
    const double im = complex_valued ? normal(rng) : 0.0;
    z = {re, im};
  }
  return Signal(std::move(v));
}

Complex Signal::sum() const {
  Complex acc{};
  for (const auto& v : values_) acc += v;
  return acc;
}

Complex Signal::mean() const { return sum() / static_cast<double>(values_.size()); }

double Signal::norm_l2() const { return norm_lp(2.0); }

double Signal::norm_linf() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

double Signal::norm_lp(double p) const {
  if (std::isinf(p)) return norm_linf();
  require(p >= 1.0, "norm_lp: p must be >= 1");
  // Scale by the max to avoid overflow for large p.
  const double scale = norm_linf();
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (const auto& v : values_) acc += std::pow(std::abs(v) / scale, p);
  return scale * std::pow(acc, 1.0 / p);
}

Signal& Signal::operator+=(const Signal& other) {
  check_same_modulus(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Signal& Signal::operator-=(const Signal& other) {
  check_same_modulus(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Signal& Signal::operator*=(Complex scale) {
  for (auto& v : values_) v *= scale;
  return *this;
}

Signal operator+(Signal a, const Signal& b) { return a += b; }
Signal operator-(Signal a, const Signal& b) { return a -= b; }
Signal operator*(Signal a, Complex scale) { return a *= scale; }

Complex inner(const Signal& f, const Signal& g) {
  check_same_modulus(f, g);
  Complex acc{};
  for (std::int64_t x = 0; x < f.modulus(); ++x) acc += f[x] * std::conj(g[x]);
  return acc;
}

double max_abs_diff(const Signal& f, const Signal& g) {
  check_same_modulus(f, g);
  double m = 0.0;
  for (std::int64_t x = 0; x < f.modulus(); ++x) m = std::max(m, std::abs(f[x] - g[x]));
  return m;
}

}  // namespace circlelab
