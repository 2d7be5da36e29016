#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "circlelab/common.hpp"

namespace circlelab {

/// Integer polynomial P(n) = c_0 + c_1 n + ... + c_d n^d, constant term first.
/// Trailing zero coefficients are stripped, so the stored leading coefficient
/// is nonzero unless P is identically zero (then degree() == 0).
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<std::int64_t> coefficients);

  /// Parses "0,0,1" (constant term first) as n^2.
  static IntPolynomial parse(std::string_view text);
  static IntPolynomial monomial(unsigned degree, std::int64_t coefficient = 1);

  const std::vector<std::int64_t>& coefficients() const { return coefficients_; }
  unsigned degree() const;
  bool is_zero() const { return coefficients_.empty(); }
  std::int64_t coefficient(unsigned k) const;

  /// Exact P(n). Runs in 64-bit arithmetic and widens to 128 bits on overflow;
  /// throws OverflowError when even 128 bits do not suffice.
  Int128 eval(std::int64_t n) const;

  /// P(n) mod modulus in [0, modulus), exact for every n (Horner in residues).
  std::int64_t eval_mod(std::int64_t n, std::int64_t modulus) const;

  /// s * P as a new polynomial; throws OverflowError if a coefficient overflows.
  IntPolynomial scaled(std::int64_t s) const;

  std::string to_string() const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  std::vector<std::int64_t> coefficients_;
};

}  // namespace circlelab
