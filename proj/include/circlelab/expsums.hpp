#pragma once

#include <cstdint>
#include <vector>

#include "circlelab/arcs.hpp"
#include "circlelab/polynomial.hpp"
#include "circlelab/signal.hpp"

namespace circlelab {

/// Fractional part of xi * k in [0, 1), accurate to a few ulps for any |k| < 2^106.
double frac_product(double xi, Int128 k);

/// m_N(xi) = E_{n in [N]} e(xi P(n)) for real xi.
Complex weyl_sum(const IntPolynomial& P, IndexRange N, double xi);
inline Complex weyl_sum(const IntPolynomial& P, IndexRange N, TorusPoint xi) {
  return weyl_sum(P, N, xi.value());
}
/// m_N(a/q) with phases a P(n) mod q reduced exactly in integers.
Complex weyl_sum(const IntPolynomial& P, IndexRange N, const ReducedFraction& theta);

/// Repeated evaluation of m_N at many real frequencies for a fixed (P, N).
class WeylEvaluator {
 public:
  WeylEvaluator(const IntPolynomial& P, IndexRange N);
  Complex operator()(double xi) const;
  std::int64_t size() const { return static_cast<std::int64_t>(hi_.size()); }

 private:
  // P(n) = hi_[n-1] + lo_[n-1] exactly.
  std::vector<double> hi_;
  std::vector<double> lo_;
};

/// G(a/q) = E_{n in [q]} e((a/q) P(n)), from a table of q-th roots of unity.
Complex complete_sum(const IntPolynomial& P, const ReducedFraction& theta);

struct QuadratureSpec {
  int base_panels = 1;
  int nodes_per_oscillation = 8;
  double tolerance = 1e-9;
  std::int64_t max_panels = std::int64_t{1} << 22;
};

struct QuadratureResult {
  Complex value;
  double error_estimate;  // |I(2n panels) - I(n panels)|
  std::int64_t panels;
};

/// The continuous multiplier int_0^1 e(xi P(N t)) dt by composite Gauss-Legendre.
/// Panel count starts at the number of phase oscillations and doubles until
/// successive refinements agree to `tolerance`; throws ConvergenceError past
/// `max_panels`.
QuadratureResult continuous_multiplier_detail(const IntPolynomial& P, IndexRange N, double xi,
                                              const QuadratureSpec& quad = {});
inline Complex continuous_multiplier(const IntPolynomial& P, IndexRange N, double xi,
                                     const QuadratureSpec& quad = {}) {
  return continuous_multiplier_detail(P, N, xi, quad).value;
}

/// Major arcs used by the Weyl-inequality scans at scale N:
/// centers R_{<=delta^-C}, halfwidth N^-d delta^-C, with delta = N^-eps.
ArcSystem weyl_major_arcs(const IntPolynomial& P, std::int64_t N, double eps, double bigC);

struct DecayScanReport {
  std::vector<std::int64_t> Ns;
  std::vector<double> sup_minor_abs;
  std::vector<double> argmax;  // frequency attaining each sup
  double c_fit = 0.0;          // -slope of log sup against log N
  double residual = 0.0;       // RMS residual of the log-log fit
  bool fit_valid = false;      // needs >= 2 scales with positive sup
};

/// For each N, the sup of |m_N| over `samples` seeded minor-arc points.
DecayScanReport weyl_decay_scan(const IntPolynomial& P, const std::vector<std::int64_t>& Ns,
                                double eps, double bigC, std::size_t samples, std::uint64_t seed);
/// Same scan against one arc system held fixed across N (delta fixed).
DecayScanReport weyl_decay_scan(const IntPolynomial& P, const std::vector<std::int64_t>& Ns,
                                const ArcSystem& fixed_arcs, std::size_t samples, std::uint64_t seed);

struct GridSup {
  double sup;
  double argmax;
  std::int64_t minor_points;
};

/// Full-grid oracle: sup of |m_N(j / resolution)| over every minor grid point.
GridSup weyl_minor_sup_grid(const IntPolynomial& P, std::int64_t N, double eps, double bigC,
                            std::int64_t resolution);

/// Least squares slope and RMS residual of y against x.
struct LineFit {
  double slope;
  double intercept;
  double residual;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// l with 2^(l-1) < q <= 2^l (l = 0 for q = 1).
unsigned shell_index(std::int64_t q);

struct Lemma1Result {
  double residual;  // |m_N(xi) - G(theta) mfrak_N(xi - theta)|
  double bound;     // 2^l (M^-1 N^(d-1) + N^-1)
  double ratio;
  unsigned l;
};

Lemma1Result lemma1_residual(const IntPolynomial& P, IndexRange N, const ReducedFraction& theta,
                             TorusPoint xi, double M, const QuadratureSpec& quad = {});

struct Lemma1Cell {
  std::int64_t N;
  unsigned l;
  double M;
  double max_ratio;
  double max_residual;
};

struct Lemma1Scan {
  std::vector<Lemma1Cell> cells;
  std::vector<std::int64_t> Ns;
  std::vector<double> max_ratio_per_N;  // fitted C_P estimate at each N
  double max_doubling_change = 1.0;     // max of r(2N)/r(N), r(N)/r(2N) over consecutive Ns
};

/// Random admissible (theta, xi) pairs per (N, l) cell with M = N^d 2^-l.
Lemma1Scan lemma1_scan(const IntPolynomial& P, const std::vector<std::int64_t>& Ns, unsigned l_max,
                       std::size_t samples, std::uint64_t seed, const QuadratureSpec& quad = {});

}  // namespace circlelab
