#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "circlelab/polynomial.hpp"
#include "circlelab/signal.hpp"

namespace circlelab {

/// N*Q above which average_linear switches from the direct sum to the FFT path.
inline constexpr std::int64_t kDefaultFftThreshold = std::int64_t{1} << 22;

enum class AveragePath { automatic, direct, fft };

/// K(x) = (1/N) #{n in [N] : P(n) = x mod Q}.
Signal kernel(const IntPolynomial& P, IndexRange N, std::int64_t Q);

/// A_N f(x) = E_{n in [N]} f(x - P(n)) on Z/QZ.
Signal average_linear(const IntPolynomial& P, IndexRange N, const Signal& f,
                      AveragePath path = AveragePath::automatic,
                      std::int64_t fft_threshold = kDefaultFftThreshold);

/// E_{n in [N]} f1(x - n) f2(x - P(n)). Moduli of f1 and f2 must agree.
Signal average_bilinear(const IntPolynomial& P, IndexRange N, const Signal& f1, const Signal& f2);

/// sup over N in Ns of |A_N f(x)|, computed from one running sum up to max(Ns).
Signal maximal_function(const IntPolynomial& P, const Signal& f, const std::vector<IndexRange>& Ns);

struct RieszSplit {
  Signal invariant_part;
  Signal complement;
};

/// Orthogonal projection onto functions invariant under x -> x - s, plus the
/// complement. The invariant part averages f over cosets of the subgroup <s>.
RieszSplit riesz_split(const Signal& f, std::int64_t shift);

/// Smallest modulus that keeps a function supported on an interval of length
/// `support_diameter` free of wraparound under A_N^P:
/// 2 * diameter + max_{n in [N]} |P(n)| + 1.
std::int64_t aliasing_safe_modulus(const IntPolynomial& P, IndexRange N, std::int64_t support_diameter);

}  // namespace circlelab
