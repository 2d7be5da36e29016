#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "circlelab/signal.hpp"

namespace circlelab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Finite sequence (a_t) indexed by strictly increasing integer labels t.
class RealSequence {
 public:
  explicit RealSequence(std::vector<Complex> values);
  RealSequence(std::vector<Complex> values, std::vector<std::int64_t> labels);
  static RealSequence from_real(const std::vector<double>& values);

  std::size_t size() const { return values_.size(); }
  const std::vector<Complex>& values() const { return values_; }
  const std::vector<std::int64_t>& labels() const { return labels_; }
  /// Position of a label, or npos if absent.
  std::size_t position(std::int64_t label) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<Complex> values_;
  std::vector<std::int64_t> labels_;
};

enum class SeminormKind { variation, jump, oscillation, maximal };
std::string to_string(SeminormKind kind);

struct SeminormReport {
  SeminormKind kind;
  double value;
  std::vector<std::int64_t> witness{};  // labels, strictly increasing
  double r = 0.0;
  double lambda = 0.0;
  std::vector<std::int64_t> blocks{};  // oscillation anchors I_0 < ... < I_J
  bool doubling = false;              // oscillation: I_{j+1} > 2 I_j for every j
};

/// V^r: sup over increasing label chains of (sum |a_{t_{j+1}} - a_{t_j}|^r)^{1/r}.
/// Exact by max-weight path DP in O(n^2); r = inf gives max pairwise |a_j - a_i|.
SeminormReport variation(const RealSequence& seq, double r);

/// N_lambda: longest chain whose consecutive moves all have modulus >= lambda.
SeminormReport jump_count(const RealSequence& seq, double lambda);

/// O^r_{I,J} = (sum_j sup_{I_j <= t < I_{j+1}} |a_t - a_{I_j}|^r)^{1/r}, one witness per block.
SeminormReport oscillation(const RealSequence& seq, const std::vector<std::int64_t>& I, double r);

/// sup_t |a_t|.
SeminormReport maximal(const RealSequence& seq);

/// Re-evaluates the defining sum on a report's witness.
double witness_value(const RealSequence& seq, const SeminormReport& report);

/// D_tau capped at bound: sorted distinct floor(tau^n), n >= 0, each <= bound.
std::vector<std::int64_t> lacunary(double tau, std::int64_t bound);

/// Dyadic filtration on Z/2^K: level n is constant on blocks of length 2^(K-n).
struct DyadicMartingale {
  unsigned K;
  std::vector<Signal> levels;  // levels[K] is the generator, levels[0] its mean
};

DyadicMartingale martingale(const Signal& g);

struct LepingleStats {
  double p;
  double r;
  unsigned K;
  std::size_t trials;
  double max_ratio;
  double mean_ratio;
  std::vector<std::pair<double, double>> quantiles;  // (q, value) for q in {0.5, 0.9, 1.0}
  bool bound_asserted;                               // r > 2
  std::string label;
};

/// ||V^r(level_n(x) : n)||_p / sup_n ||level_n||_p for a martingale built from g.
double lepingle_ratio(const DyadicMartingale& m, double p, double r);

/// Seeded Gaussian trials of lepingle_ratio; trial t uses substream_seed(seed, t).
LepingleStats lepingle_stat(double p, double r, unsigned K, std::size_t trials, std::uint64_t seed);

}  // namespace circlelab
