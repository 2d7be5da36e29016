#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace circlelab {

using Complex = std::complex<double>;
using Int128 = __int128;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// A caller-supplied argument violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact integer arithmetic left the representable range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// An iterative numerical routine could not reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

/// Mathematical residue of `value` modulo `modulus`, always in [0, modulus).
inline std::int64_t mod_floor(Int128 value, std::int64_t modulus) {
  Int128 r = value % modulus;
  if (r < 0) r += modulus;
  return static_cast<std::int64_t>(r);
}

std::int64_t gcd(std::int64_t a, std::int64_t b);

/// e(x) = exp(2 pi i x).
inline Complex expi(double cycles) {
  const double angle = kTwoPi * cycles;
  return {std::cos(angle), std::sin(angle)};
}

/// Seed-splitting rule shared by every randomized scan: task `index` of a run
/// seeded with `seed` draws from splitmix64(seed + (index + 1) * golden_gamma).
/// Results therefore do not depend on the number of worker threads.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

/// Worker count used by `parallel_for`. Zero selects hardware concurrency.
void set_thread_count(unsigned threads);
unsigned thread_count();

/// Runs body(i) for i in [0, count). Each index is executed exactly once;
/// callers write into pre-sized, index-addressed output so the merge order is
/// the input order regardless of scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace circlelab
