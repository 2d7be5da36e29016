#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "circlelab/polynomial.hpp"
#include "circlelab/signal.hpp"

namespace circlelab {

/// T(x) = x - s on Z/QZ.
struct FiniteSystem {
  std::int64_t Q;
  std::int64_t s;

  FiniteSystem(std::int64_t modulus, std::int64_t shift);
  bool ergodic() const { return gcd(mod_floor(s, Q), Q) == 1; }
  /// T^k x.
  std::int64_t iterate(std::int64_t x, Int128 k) const;
};

struct AverageSeries {
  FiniteSystem system;
  IntPolynomial P;
  std::int64_t start;               // M: averages run over n in (M, N]
  std::vector<std::int64_t> Ns;     // strictly increasing
  std::vector<Signal> averages;     // averages[i](x) = E_{M < n <= Ns[i]} f(T^{P(n)} x)
};

/// Running-sum evaluation of E_{n in (M, N]} f(x - s P(n)) for every N in Ns.
/// M = 0 gives the standard averages A_N; M > 0 the uniform variant.
AverageSeries average_series(const FiniteSystem& sys, const IntPolynomial& P, const Signal& f,
                             const std::vector<std::int64_t>& Ns, std::int64_t start = 0);

struct ConvergenceDiagnostic {
  double r;
  std::int64_t tail_start;
  std::vector<std::int64_t> oscillation_blocks;  // greedy I_{j+1} > 2 I_j subsequence of Ns
  std::vector<double> variation;                 // per x
  std::vector<double> oscillation;               // per x
  std::vector<double> tail_width;                // per x: sup_{N, N' >= tail_start} |A_N - A_N'|
  // Aggregates over x: sup and normalized l^2 (mean of squares, rooted).
  double variation_sup, variation_l2;
  double oscillation_sup, oscillation_l2;
  double tail_width_sup, tail_width_l2;
};

ConvergenceDiagnostic convergence_diagnostic(const AverageSeries& series, double r, std::int64_t tail_start);

/// Finite-N estimators s_h = |E_{n in [N-h]} <u_{n+h}, u_n>| for h = 1..H.
/// A diagnostic only: no decay is asserted.
std::vector<double> vdc_correlation(const std::vector<std::vector<Complex>>& u, std::size_t H);

struct DiscrepancyReport {
  std::vector<std::pair<std::int64_t, double>> entries;  // (N, D*_N)
};

/// Star discrepancy of {theta P(n) mod 1 : n in [N]} by the sorted-points formula.
/// Each point is reduced from the exact integer P(n) with an error-free product.
DiscrepancyReport discrepancy(const IntPolynomial& P, double theta, const std::vector<std::int64_t>& Ns);

struct MeanErgodicRecord {
  std::vector<std::int64_t> Ns;
  std::vector<double> deviation;  // normalized l^2 norm of A_N f - invariant part of f
};

/// Deviation of A_N f from the T-invariant part of f; P defaults to n.
MeanErgodicRecord mean_ergodic_check(const FiniteSystem& sys, const Signal& f, const std::vector<std::int64_t>& Ns,
                                     const IntPolynomial& P = IntPolynomial::monomial(1));

}  // namespace circlelab
