#pragma once

// Independent reference implementations. Each one evaluates a definition in the
// most literal way available, sharing no code path with the library routine it
// checks beyond the Signal container.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "circlelab/circlelab.hpp"

namespace oracle {

using circlelab::Complex;
using LComplex = std::complex<long double>;

inline constexpr long double kPi = 3.141592653589793238462643383279502884L;

inline std::int64_t phi(std::int64_t q) {
  std::int64_t count = 0;
  for (std::int64_t a = 1; a <= q; ++a) {
    if (std::gcd(a, q) == 1) ++count;
  }
  return count;
}

/// All a/q in [0,1) with q <= n and gcd(a, q) = 1, by plain enumeration.
inline std::vector<std::pair<std::int64_t, std::int64_t>> fractions_by_gcd(std::int64_t n) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out{{0, 1}};
  for (std::int64_t q = 2; q <= n; ++q) {
    for (std::int64_t a = 1; a < q; ++a) {
      if (std::gcd(a, q) == 1) out.emplace_back(a, q);
    }
  }
  return out;
}

/// P(n) mod q via a 128-bit evaluation of every monomial.
inline std::int64_t poly_mod(const std::vector<std::int64_t>& c, std::int64_t n, std::int64_t q) {
  __int128 acc = 0;
  __int128 power = 1;
  for (auto ck : c) {
    acc = (acc + static_cast<__int128>(ck) * (power % q)) % q;
    power = (power % q) * (n % q) % q;
  }
  acc %= q;
  if (acc < 0) acc += q;
  return static_cast<std::int64_t>(acc);
}

/// E_{n in [N]} e(a P(n) / q) with long-double trigonometry on exact residues.
inline LComplex weyl_rational(const std::vector<std::int64_t>& c, std::int64_t N, std::int64_t a, std::int64_t q) {
  LComplex acc = 0;
  for (std::int64_t n = 1; n <= N; ++n) {
    const std::int64_t k = static_cast<std::int64_t>(static_cast<__int128>(a) * poly_mod(c, n, q) % q);
    const long double ang = 2 * kPi * static_cast<long double>(k) / static_cast<long double>(q);
    acc += LComplex(std::cos(ang), std::sin(ang));
  }
  return acc / static_cast<long double>(N);
}

/// E_{n in [N]} e(xi P(n)) with P(n) formed in long double and reduced by fmodl.
/// Adequate while |xi P(n)| stays far below 2^64.
inline LComplex weyl_real(const std::vector<std::int64_t>& c, std::int64_t N, long double xi) {
  LComplex acc = 0;
  for (std::int64_t n = 1; n <= N; ++n) {
    long double value = 0;
    long double power = 1;
    for (auto ck : c) {
      value += static_cast<long double>(ck) * power;
      power *= static_cast<long double>(n);
    }
    long double phase = std::fmod(xi * value, 1.0L);
    acc += LComplex(std::cos(2 * kPi * phase), std::sin(2 * kPi * phase));
  }
  return acc / static_cast<long double>(N);
}

/// (1/N) sum_n f(x - P(n)) straight from the definition.
inline circlelab::Signal average(const std::vector<std::int64_t>& c, std::int64_t N, const circlelab::Signal& f) {
  const std::int64_t Q = f.modulus();
  std::vector<Complex> out(static_cast<std::size_t>(Q));
  for (std::int64_t x = 0; x < Q; ++x) {
    LComplex acc = 0;
    for (std::int64_t n = 1; n <= N; ++n) {
      std::int64_t y = (x - poly_mod(c, n, Q)) % Q;
      if (y < 0) y += Q;
      acc += LComplex(f[y].real(), f[y].imag());
    }
    acc /= static_cast<long double>(N);
    out[static_cast<std::size_t>(x)] = Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
  }
  return circlelab::Signal(std::move(out));
}

/// Naive DFT with the positive-exponent convention: F(j) = sum_x f(x) e(jx/Q).
inline std::vector<Complex> dft(const circlelab::Signal& f) {
  const std::int64_t Q = f.modulus();
  std::vector<Complex> out(static_cast<std::size_t>(Q));
  for (std::int64_t j = 0; j < Q; ++j) {
    LComplex acc = 0;
    for (std::int64_t x = 0; x < Q; ++x) {
      const long double ang = 2 * kPi * static_cast<long double>((j * x) % Q) / static_cast<long double>(Q);
      acc += LComplex(f[x].real(), f[x].imag()) * LComplex(std::cos(ang), std::sin(ang));
    }
    out[static_cast<std::size_t>(j)] = Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
  }
  return out;
}

/// Exhaustive V^r over every increasing subsequence of length >= 2 (n <= ~16).
inline double variation_brute(const std::vector<Complex>& a, double r) {
  const std::size_t n = a.size();
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) < 2) continue;
    double total = 0.0;
    std::size_t prev = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      if (prev != n) {
        const double d = std::abs(a[i] - a[prev]);
        total = std::isinf(r) ? std::max(total, d) : total + std::pow(d, r);
      }
      prev = i;
    }
    best = std::max(best, total);
  }
  return std::isinf(r) ? best : std::pow(best, 1.0 / r);
}

/// Exhaustive lambda-jump count over every increasing subsequence.
inline std::int64_t jumps_brute(const std::vector<Complex>& a, double lambda) {
  const std::size_t n = a.size();
  std::int64_t best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::size_t prev = n;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask & (1u << i))) continue;
      if (prev != n && std::abs(a[i] - a[prev]) < lambda) ok = false;
      prev = i;
    }
    if (ok) best = std::max<std::int64_t>(best, std::popcount(mask) - 1);
  }
  return best;
}

/// Random sequence of length 1..max_len with values on a coarse grid (to create
/// ties and exact jump thresholds) or Gaussian, chosen by the RNG.
inline std::vector<Complex> random_sequence(std::mt19937_64& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<int> grid(-4, 4);
  const std::size_t n = len(rng);
  const bool coarse = rng() % 2 == 0;
  std::vector<Complex> a(n);
  for (auto& v : a) v = coarse ? Complex(0.5 * grid(rng), 0.0) : Complex(gauss(rng), 0.0);
  return a;
}

/// Primes up to n by trial division.
inline std::vector<std::int64_t> primes_upto(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p <= n; ++p) {
    bool prime = true;
    for (std::int64_t d = 2; d * d <= p; ++d) {
      if (p % d == 0) prime = false;
    }
    if (prime) out.push_back(p);
  }
  return out;
}

}  // namespace oracle
