#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "circlelab/common.hpp"

namespace circlelab {

/// [N] = {1, ..., N}; every average in the library sums over n = 1..N.
class IndexRange {
 public:
  explicit IndexRange(std::int64_t n) : n_(n) { require(n >= 1, "IndexRange: N must be >= 1"); }
  std::int64_t size() const { return n_; }
  friend bool operator==(IndexRange, IndexRange) = default;

 private:
  std::int64_t n_;
};

/// A complex-valued function on Z/QZ, indexed by residues 0..Q-1.
class Signal {
 public:
  Signal() = default;
  explicit Signal(std::vector<Complex> values);
  Signal(std::int64_t modulus, Complex fill);

  static Signal from_real(std::span<const double> values);
  /// Indicator of residue `at`, scaled by `height`.
  static Signal delta(std::int64_t modulus, std::int64_t at, double height = 1.0);
  /// i.i.d. standard Gaussian real and imaginary parts (imaginary zero if !complex_valued).
  static Signal gaussian(std::int64_t modulus, std::uint64_t seed, bool complex_valued = true);

  std::int64_t modulus() const { return static_cast<std::int64_t>(values_.size()); }
  const std::vector<Complex>& values() const { return values_; }
  std::vector<Complex>& mutable_values() { return values_; }
  const Complex& operator[](std::int64_t x) const { return values_[static_cast<std::size_t>(x)]; }
  Complex& operator[](std::int64_t x) { return values_[static_cast<std::size_t>(x)]; }
  /// Value at x mod Q for arbitrary integer x.
  Complex at(std::int64_t x) const { return values_[static_cast<std::size_t>(mod_floor(x, modulus()))]; }

  Complex sum() const;
  Complex mean() const;
  double norm_l2() const;
  /// (sum |f(x)|^p)^(1/p) with counting measure; p = infinity gives max |f|.
  double norm_lp(double p) const;
  double norm_linf() const;

  Signal& operator+=(const Signal& other);
  Signal& operator-=(const Signal& other);
  Signal& operator*=(Complex scale);

 private:
  std::vector<Complex> values_;
};

Signal operator+(Signal a, const Signal& b);
Signal operator-(Signal a, const Signal& b);
Signal operator*(Signal a, Complex scale);

/// <f, g> = sum f(x) conj(g(x)).
Complex inner(const Signal& f, const Signal& g);

/// Largest |f(x) - g(x)|.
double max_abs_diff(const Signal& f, const Signal& g);

}  // namespace circlelab
