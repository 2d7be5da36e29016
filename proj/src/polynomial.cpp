#include "circlelab/polynomial.hpp"

#include <charconv>
#include <sstream>

namespace circlelab {

namespace {

bool eval_narrow(const std::vector<std::int64_t>& c, std::int64_t n, std::int64_t& out) {
  std::int64_t acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    if (__builtin_mul_overflow(acc, n, &acc)) return false;
    if (__builtin_add_overflow(acc, *it, &acc)) return false;
  }
  out = acc;
  return true;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<std::int64_t> coefficients)
    : coefficients_(std::move(coefficients)) {
  while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
}

IntPolynomial IntPolynomial::parse(std::string_view text) {
  std::vector<std::int64_t> coeffs;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view token = text.substr(pos, end - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      throw PreconditionError("polynomial coefficient '" + std::string(token) +
                              "' is not an integer");
    }
    coeffs.push_back(value);
    pos = end + 1;
  }
  return IntPolynomial(std::move(coeffs));
}

IntPolynomial IntPolynomial::monomial(unsigned degree, std::int64_t coefficient) {
  std::vector<std::int64_t> c(degree + 1, 0);
  c[degree] = coefficient;
  return IntPolynomial(std::move(c));
}

unsigned IntPolynomial::degree() const {
  return coefficients_.empty() ? 0u : static_cast<unsigned>(coefficients_.size() - 1);
}

std::int64_t IntPolynomial::coefficient(unsigned k) const {
  return k < coefficients_.size() ? coefficients_[k] : 0;
}

Int128 IntPolynomial::eval(std::int64_t n) const {
  std::int64_t narrow = 0;
  if (eval_narrow(coefficients_, n, narrow)) return narrow;
  Int128 acc = 0;
  const Int128 wide_n = n;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    if (__builtin_mul_overflow(acc, wide_n, &acc) ||
        __builtin_add_overflow(acc, static_cast<Int128>(*it), &acc)) {
      throw OverflowError("P(" + std::to_string(n) + ") exceeds 128-bit range for P = " +
                          to_string());
    }
  }
  return acc;
}

std::int64_t IntPolynomial::eval_mod(std::int64_t n, std::int64_t modulus) const {
  require(modulus >= 1, "eval_mod: modulus must be positive");
  const std::int64_t x = mod_floor(n, modulus);
  Int128 acc = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    acc = (acc * x + mod_floor(*it, modulus)) % modulus;
  }
  return static_cast<std::int64_t>(acc);
}

IntPolynomial IntPolynomial::scaled(std::int64_t s) const {
  std::vector<std::int64_t> c(coefficients_);
  for (auto& v : c) {
    if (__builtin_mul_overflow(v, s, &v)) throw OverflowError("scaled polynomial overflows");
  }
  return IntPolynomial(std::move(c));
}

std::string IntPolynomial::to_string() const {
  if (coefficients_.empty()) return "0";
  std::ostringstream out;
  for (std::size_t k = 0; k < coefficients_.size(); ++k) {
    if (k) out << ',';
    out << coefficients_[k];
  }
  return out.str();
}

}  // namespace circlelab
