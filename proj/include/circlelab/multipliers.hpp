#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "circlelab/arcs.hpp"
#include "circlelab/expsums.hpp"
#include "circlelab/polynomial.hpp"
#include "circlelab/signal.hpp"

namespace circlelab {

/// Smooth even cutoff: 1 on [-1/4, 1/4], 0 outside (-1/2, 1/2), built from the
/// exp(-1/t) glue on the transition band.
double eta(double x);

/// eta_{<=n}(xi) = eta(2^-n xi).
double eta_dyadic(int n, double xi);

/// Base symbol evaluated at a signed offset xi - theta in (-1/2, 1/2].
using BaseSymbol = std::function<Complex(double offset)>;

/// T^Sigma[S; m] f = F^-1[ sum_theta S(theta) m(xi - theta) F f ].
struct MultiplierOp {
  std::vector<ReducedFraction> frequencies;
  std::vector<Complex> coefficients;  // S(theta), aligned with frequencies
  BaseSymbol symbol;
  /// The base symbol vanishes for |offset| >= support_radius.
  double support_radius = std::numeric_limits<double>::infinity();

  void validate() const;
  /// Full symbol at an arbitrary torus point.
  Complex evaluate(double xi) const;
};

/// Symbol at every grid frequency j/Q. Offsets j/Q - a/q are formed exactly as
/// (jq - aQ)/(qQ) before conversion, so arcs narrower than 1/Q stay exact.
std::vector<Complex> symbol_on_grid(const MultiplierOp& op, std::int64_t Q);

Signal apply_symbol(const Signal& f, const std::vector<Complex>& symbol);
Signal multiplier_apply(const Signal& f, const MultiplierOp& op);

/// Pi[<=N1, <=N2]: symbol sum_{theta in R_{<=N1}} eta(N2^-1 (xi - theta)).
MultiplierOp projection_op(double N1, double N2);
/// Pi_{<=l,<=m} = Pi[<=2^l, <=2^m].
MultiplierOp dyadic_projection_op(DyadicScale scale);
/// Pi_{l,<=m} = T^{Sigma_l}[1; eta_{<=m}].
MultiplierOp shell_projection_op(unsigned l, int m);

Signal project(const Signal& f, double N1, double N2);
Signal project_dyadic(const Signal& f, DyadicScale scale);
Signal project_shell(const Signal& f, unsigned l, int m);

/// On Z/QZ the l^2 operator norm of a multiplier is max |symbol(j/Q)|.
double l2_operator_norm(const MultiplierOp& op, std::int64_t Q);

/// sum_x |k(x)| for the convolution kernel k of op on Z/QZ; bounds every l^p norm.
double kernel_l1_norm(const MultiplierOp& op, std::int64_t Q);

/// #Sigma_{<=l} times the kernel l^1 norm of one bump eta_{<=m}: the crude
/// l^p bound for Pi_{<=l,<=m} on Z/QZ.
double crude_projection_bound(DyadicScale scale, std::int64_t Q);

struct LpProbeResult {
  double lower_bound;            // max over trials of ||op f||_p / ||f||_p
  double kernel_l1_upper_bound;  // analytic upper bound, valid for every p
  std::size_t trials;
};

/// Empirical lower bound on the l^p operator norm: seeded Gaussian starts,
/// each refined by the dual-vector power ascent for p-norms.
LpProbeResult lp_norm_probe(const MultiplierOp& op, double p, std::int64_t Q, std::size_t trials,
                            std::uint64_t seed, int ascent_iterations = 25);

struct PipelineConfig {
  double alpha;       // l_(N) = floor(log2 N^alpha)
  std::int64_t C0;    // smallest admissible N
  int p0;             // even integer >= 2
  unsigned d;         // polynomial degree
  double tau;         // lacunarity > 1
  bool desk_scale;    // relaxes alpha to (0, 1); the strict ranges are unreachable numerically

  /// alpha = 0.5e-7 / (d p0), p0 = 4, C0 = 2^20, tau = 2.
  static PipelineConfig defaults(unsigned d);
  void validate() const;
  int l_of(std::int64_t N) const;
  int L_of(std::int64_t N) const;
};

struct ArcSplitReport {
  std::int64_t N;
  int l_N;
  int L_N;
  int m;                                   // -d L_N
  double minor_l2_ratio;                   // ||minor||_2 / ||f||_2
  std::vector<std::pair<double, double>> minor_lp_ratios;  // (p, ||minor||_p / ||f||_p)
  double additivity_error;                 // max |major + minor - A_N f|
};

struct ArcSplit {
  Signal major_out;  // A_N Pi_{<=l_N, <=-d L_N} f
  Signal minor_out;  // A_N (1 - Pi_{<=l_N, <=-d L_N}) f
  ArcSplitReport report;
};

ArcSplit arc_split(const Signal& f, const IntPolynomial& P, IndexRange N, const PipelineConfig& cfg,
                   const std::vector<double>& ps = {4.0});

/// T^{Sigma_l}[G; mfrak_N eta_{<=-dL}], the approximation of A_N Pi_{l,<=-dL}.
MultiplierOp major_approximation_op(const IntPolynomial& P, IndexRange N, unsigned l, int L,
                                    const QuadratureSpec& quad = {});

struct FactorizationCheck {
  Signal lhs;  // T^{Sigma_l}[G; mfrak_N eta_{<=-dL}] f
  Signal rhs;  // T^{Sigma_l}[1; mfrak_N eta_{<=-dL}] T^{Sigma_l}[G; eta_{<=-d u p0}] f
  double max_diff;
  /// d L >= d u p0 + 1 and the eta_{<=-d u p0} bumps around distinct centers
  /// stay clear of each other's eta_{<=-dL} support. Sufficient for lhs == rhs.
  bool scale_condition;
};

FactorizationCheck factorization_check(const Signal& f, const IntPolynomial& P, IndexRange N, unsigned l,
                                       int L, int u, int p0, const QuadratureSpec& quad = {});

}  // namespace circlelab
