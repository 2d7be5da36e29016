#include "circlelab/seminorms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace circlelab {

namespace {

// |x|^r with multiplication for small integer r; the Lepingle harness calls this
// O(trials * 2^K * K^2) times.
double rpow(double x, double r) {
  if (r == 1.0) return x;
  if (r == 2.0) return x * x;
  if (r == 3.0) return x * x * x;
  if (r == 4.0) return (x * x) * (x * x);
  return std::pow(x, r);
}

std::vector<std::int64_t> trace_path(const std::vector<std::size_t>& prev, std::size_t end,
                                     const std::vector<std::int64_t>& labels) {
  std::vector<std::int64_t> path;
  for (std::size_t i = end; i != RealSequence::npos; i = prev[i]) path.push_back(labels[i]);
  std::reverse(path.begin(), path.end());
  return path;
}

// Path sum (sum |increments|^r) by max-weight DP over the complete DAG on positions.
double variation_dp(const std::vector<Complex>& a, double r, std::vector<std::size_t>* prev,
                    std::size_t* argbest) {
  const std::size_t n = a.size();
  std::vector<double> val(n, 0.0);
  if (prev) prev->assign(n, RealSequence::npos);
  double best = 0.0;
  std::size_t best_i = 0;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double cand = val[j] + rpow(std::abs(a[i] - a[j]), r);
      if (cand > val[i]) {
        val[i] = cand;
        if (prev) (*prev)[i] = j;
      }
    }
    if (val[i] > best) {
      best = val[i];
      best_i = i;
    }
  }
  if (argbest) *argbest = best_i;
  return best;
}

}  // namespace

RealSequence::RealSequence(std::vector<Complex> values) : values_(std::move(values)) {
  require(!values_.empty(), "RealSequence: length must be >= 1");
  labels_.resize(values_.size());
  std::iota(labels_.begin(), labels_.end(), std::int64_t{0});
}

RealSequence::RealSequence(std::vector<Complex> values, std::vector<std::int64_t> labels)
    : values_(std::move(values)), labels_(std::move(labels)) {
  require(!values_.empty(), "RealSequence: length must be >= 1");
  require(values_.size() == labels_.size(), "RealSequence: one label per value");
  for (std::size_t i = 1; i < labels_.size(); ++i) {
    require(labels_[i - 1] < labels_[i], "RealSequence: labels must be strictly increasing");
  }
}

RealSequence RealSequence::from_real(const std::vector<double>& values) {
  return RealSequence(std::vector<Complex>(values.begin(), values.end()));
}

std::size_t RealSequence::position(std::int64_t label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return npos;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::string to_string(SeminormKind kind) {
  switch (kind) {
    case SeminormKind::variation: return "variation";
    case SeminormKind::jump: return "jump";
    case SeminormKind::oscillation: return "oscillation";
    case SeminormKind::maximal: return "maximal";
  }
  return "unknown";
}

SeminormReport variation(const RealSequence& seq, double r) {
  require(r >= 1.0, "variation: r must be >= 1");
  const auto& a = seq.values();
  const auto& labels = seq.labels();
  SeminormReport report{.kind = SeminormKind::variation, .value = 0.0, .witness = {labels.front()}, .r = r};
  if (std::isinf(r)) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = i + 1; j < a.size(); ++j) {
        const double d = std::abs(a[j] - a[i]);
        if (d > report.value) {
          report.value = d;
          report.witness = {labels[i], labels[j]};
        }
      }
    }
    return report;
  }
  std::vector<std::size_t> prev;
  std::size_t end = 0;
  const double total = variation_dp(a, r, &prev, &end);
  if (total > 0.0) {
    report.value = std::pow(total, 1.0 / r);
    report.witness = trace_path(prev, end, labels);
  }
  return report;
}

SeminormReport jump_count(const RealSequence& seq, double lambda) {
  require(lambda > 0.0, "jump_count: lambda must be > 0");
  const auto& a = seq.values();
  const std::size_t n = a.size();
  std::vector<std::int64_t> count(n, 0);
  std::vector<std::size_t> prev(n, RealSequence::npos);
  std::size_t end = 0;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(a[i] - a[j]) >= lambda && count[j] + 1 > count[i]) {
        count[i] = count[j] + 1;
        prev[i] = j;
      }
    }
    if (count[i] > count[end]) end = i;
  }
  SeminormReport report{.kind = SeminormKind::jump, .value = static_cast<double>(count[end]), .lambda = lambda};
  report.witness = trace_path(prev, end, seq.labels());
  return report;
}

SeminormReport oscillation(const RealSequence& seq, const std::vector<std::int64_t>& I, double r) {
  require(r >= 1.0, "oscillation: r must be >= 1");
  require(I.size() >= 2, "oscillation: I needs at least two anchors (J >= 1)");
  std::vector<std::size_t> pos;
  for (std::size_t j = 0; j < I.size(); ++j) {
    require(j == 0 || I[j - 1] < I[j], "oscillation: I must be strictly increasing");
    const std::size_t p = seq.position(I[j]);
    require(p != RealSequence::npos, "oscillation: I_" + std::to_string(j) + " = " + std::to_string(I[j]) +
                                         " is not a sequence label");
    pos.push_back(p);
  }
  const auto& a = seq.values();
  const auto& labels = seq.labels();
  SeminormReport report{.kind = SeminormKind::oscillation, .value = 0.0, .r = r};
  report.blocks = I;
  report.doubling = true;
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < pos.size(); ++j) {
    if (!(I[j + 1] > 2 * I[j])) report.doubling = false;
    double block_sup = 0.0;
    std::size_t arg = pos[j];
    for (std::size_t t = pos[j]; t < pos[j + 1]; ++t) {
      const double dev = std::abs(a[t] - a[pos[j]]);
      if (dev > block_sup) {
        block_sup = dev;
        arg = t;
      }
    }
    report.witness.push_back(labels[arg]);
    total = std::isinf(r) ? std::max(total, block_sup) : total + rpow(block_sup, r);
  }
  report.value = std::isinf(r) ? total : std::pow(total, 1.0 / r);
  return report;
}

SeminormReport maximal(const RealSequence& seq) {
  const auto& a = seq.values();
  std::size_t arg = 0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (std::abs(a[i]) > std::abs(a[arg])) arg = i;
  }
  return {.kind = SeminormKind::maximal, .value = std::abs(a[arg]), .witness = {seq.labels()[arg]}};
}

double witness_value(const RealSequence& seq, const SeminormReport& report) {
  std::vector<Complex> w;
  for (auto label : report.witness) {
    const std::size_t p = seq.position(label);
    require(p != RealSequence::npos, "witness_value: witness label not in sequence");
    w.push_back(seq.values()[p]);
  }
  switch (report.kind) {
    case SeminormKind::variation: {
      if (std::isinf(report.r)) return w.size() == 2 ? std::abs(w[1] - w[0]) : 0.0;
      double total = 0.0;
      for (std::size_t i = 1; i < w.size(); ++i) total += rpow(std::abs(w[i] - w[i - 1]), report.r);
      return std::pow(total, 1.0 / report.r);
    }
    case SeminormKind::jump: {
      for (std::size_t i = 1; i < w.size(); ++i) {
        if (std::abs(w[i] - w[i - 1]) < report.lambda) return -1.0;
      }
      return w.empty() ? 0.0 : static_cast<double>(w.size() - 1);
    }
    case SeminormKind::oscillation: {
      double total = 0.0;
      for (std::size_t j = 0; j < w.size(); ++j) {
        const Complex anchor = seq.values()[seq.position(report.blocks[j])];
        const double dev = std::abs(w[j] - anchor);
        total = std::isinf(report.r) ? std::max(total, dev) : total + rpow(dev, report.r);
      }
      return std::isinf(report.r) ? total : std::pow(total, 1.0 / report.r);
    }
    case SeminormKind::maximal:
      return w.empty() ? 0.0 : std::abs(w[0]);
  }
  return 0.0;
}

std::vector<std::int64_t> lacunary(double tau, std::int64_t bound) {
  require(tau > 1.0 && std::isfinite(tau), "lacunary: tau must be > 1");
  require(bound >= 1, "lacunary: bound must be >= 1");
  std::vector<std::int64_t> out;
  for (int n = 0;; ++n) {
    const double v = std::floor(std::pow(tau, n));
    if (v > static_cast<double>(bound)) break;
    const auto e = static_cast<std::int64_t>(v);
    if (out.empty() || out.back() != e) out.push_back(e);
  }
  return out;
}

DyadicMartingale martingale(const Signal& g) {
  const auto Q = static_cast<std::uint64_t>(g.modulus());
  require(std::has_single_bit(Q), "martingale: modulus must be a power of 2");
  const auto K = static_cast<unsigned>(std::countr_zero(Q));
  DyadicMartingale m{K, std::vector<Signal>(K + 1)};
  m.levels[K] = g;
  for (unsigned n = K; n-- > 0;) {
    const Signal& finer = m.levels[n + 1];
    const std::int64_t block = std::int64_t{1} << (K - n);
    std::vector<Complex> coarse(Q);
    for (std::int64_t s = 0; s < g.modulus(); s += block) {
      const Complex v = 0.5 * (finer[s] + finer[s + block / 2]);
      std::fill(coarse.begin() + s, coarse.begin() + s + block, v);
    }
    m.levels[n] = Signal(std::move(coarse));
  }
  return m;
}

double lepingle_ratio(const DyadicMartingale& m, double p, double r) {
  require(p >= 1.0, "lepingle_ratio: p must be >= 1");
  require(r >= 1.0, "lepingle_ratio: r must be >= 1");
  double denom = 0.0;
  for (const auto& level : m.levels) denom = std::max(denom, level.norm_lp(p));
  if (denom == 0.0) return 0.0;
  const std::int64_t Q = m.levels.front().modulus();
  std::vector<Complex> path(m.levels.size());
  std::vector<double> pointwise(static_cast<std::size_t>(Q));
  for (std::int64_t x = 0; x < Q; ++x) {
    for (std::size_t n = 0; n < path.size(); ++n) path[n] = m.levels[n][x];
    if (std::isinf(r)) {
      double best = 0.0;
      for (std::size_t i = 0; i < path.size(); ++i) {
        for (std::size_t j = i + 1; j < path.size(); ++j) best = std::max(best, std::abs(path[j] - path[i]));
      }
      pointwise[static_cast<std::size_t>(x)] = best;
    } else {
      pointwise[static_cast<std::size_t>(x)] = std::pow(variation_dp(path, r, nullptr, nullptr), 1.0 / r);
    }
  }
  std::vector<Complex> as_complex(pointwise.begin(), pointwise.end());
  return Signal(std::move(as_complex)).norm_lp(p) / denom;
}

LepingleStats lepingle_stat(double p, double r, unsigned K, std::size_t trials, std::uint64_t seed) {
  require(p > 1.0, "lepingle_stat: p must be > 1");
  require(r >= 1.0, "lepingle_stat: r must be >= 1");
  require(K <= 20, "lepingle_stat: K must be <= 20");
  require(trials >= 1, "lepingle_stat: trials must be >= 1");
  std::vector<double> ratios(trials);
  parallel_for(trials, [&](std::size_t t) {
    const Signal g = Signal::gaussian(std::int64_t{1} << K, substream_seed(seed, t), false);
    ratios[t] = lepingle_ratio(martingale(g), p, r);
  });
  LepingleStats stats{p, r, K, trials, 0.0, 0.0, {}, r > 2.0, ""};
  stats.label = stats.bound_asserted ? "bounded regime (r > 2)" : "no bound asserted";
  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  stats.max_ratio = sorted.back();
  stats.mean_ratio = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(trials);
  for (double q : {0.5, 0.9, 1.0}) {
    // Nearest-rank quantile.
    auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(trials)));
    rank = std::clamp<std::size_t>(rank, 1, trials);
    stats.quantiles.emplace_back(q, sorted[rank - 1]);
  }
  return stats;
}

}  // namespace circlelab
