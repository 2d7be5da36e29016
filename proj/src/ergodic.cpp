#include "circlelab/ergodic.hpp"

#include <algorithm>
#include <cmath>

#include "circlelab/expsums.hpp"
#include "circlelab/polyavg.hpp"
#include "circlelab/seminorms.hpp"

namespace circlelab {

namespace {

double normalized_l2(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return v.empty() ? 0.0 : std::sqrt(acc / static_cast<double>(v.size()));
}

double sup(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

}  // namespace

FiniteSystem::FiniteSystem(std::int64_t modulus, std::int64_t shift) : Q(modulus), s(shift) {
  require(modulus >= 1, "FiniteSystem: modulus must be >= 1");
}

std::int64_t FiniteSystem::iterate(std::int64_t x, Int128 k) const {
  return mod_floor(static_cast<Int128>(x) - static_cast<Int128>(mod_floor(k, Q)) * mod_floor(s, Q), Q);
}

AverageSeries average_series(const FiniteSystem& sys, const IntPolynomial& P, const Signal& f,
                             const std::vector<std::int64_t>& Ns, std::int64_t start) {
  require(f.modulus() == sys.Q, "average_series: signal modulus must equal the system modulus");
  require(!Ns.empty(), "average_series: index set must be nonempty");
  require(start >= 0, "average_series: start must be >= 0");
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    require(i == 0 || Ns[i - 1] < Ns[i], "average_series: index set must be strictly increasing");
  }
  require(Ns.front() > start, "average_series: every N must exceed the start offset");

  const std::int64_t Q = sys.Q;
  const std::int64_t s = mod_floor(sys.s, Q);
  std::vector<Complex> acc(static_cast<std::size_t>(Q));
  AverageSeries out{sys, P, start, Ns, {}};
  out.averages.reserve(Ns.size());
  std::size_t next = 0;
  for (std::int64_t n = start + 1; next < Ns.size(); ++n) {
    // T^{P(n)} x = x - s P(n) mod Q.
    const std::int64_t shift = mod_floor(static_cast<Int128>(P.eval_mod(n, Q)) * s, Q);
    for (std::int64_t x = 0; x < Q; ++x) {
      std::int64_t y = x - shift;
      if (y < 0) y += Q;
      acc[static_cast<std::size_t>(x)] += f[y];
    }
    if (n == Ns[next]) {
      const double count = static_cast<double>(n - start);
      std::vector<Complex> avg(acc.size());
      for (std::size_t x = 0; x < acc.size(); ++x) avg[x] = acc[x] / count;
      out.averages.emplace_back(std::move(avg));
      ++next;
    }
  }
  return out;
}

ConvergenceDiagnostic convergence_diagnostic(const AverageSeries& series, double r, std::int64_t tail_start) {
  require(r >= 1.0, "convergence_diagnostic: r must be >= 1");
  const auto& Ns = series.Ns;
  const auto tail_begin =
      static_cast<std::size_t>(std::lower_bound(Ns.begin(), Ns.end(), tail_start) - Ns.begin());
  require(Ns.size() - tail_begin >= 2, "convergence_diagnostic: need >= 2 indices N >= tail_start");

  ConvergenceDiagnostic d{r, tail_start, {Ns.front()}, {}, {}, {}, 0, 0, 0, 0, 0, 0};
  for (auto N : Ns) {
    if (N > 2 * d.oscillation_blocks.back()) d.oscillation_blocks.push_back(N);
  }
  const std::int64_t Q = series.system.Q;
  d.variation.resize(static_cast<std::size_t>(Q));
  d.oscillation.resize(static_cast<std::size_t>(Q));
  d.tail_width.resize(static_cast<std::size_t>(Q));
  parallel_for(static_cast<std::size_t>(Q), [&](std::size_t x) {
    std::vector<Complex> path(Ns.size());
    for (std::size_t i = 0; i < Ns.size(); ++i) path[i] = series.averages[i][static_cast<std::int64_t>(x)];
    double width = 0.0;
    for (std::size_t i = tail_begin; i < path.size(); ++i) {
      for (std::size_t j = i + 1; j < path.size(); ++j) width = std::max(width, std::abs(path[i] - path[j]));
    }
    d.tail_width[x] = width;
    const RealSequence seq(std::move(path), Ns);
    d.variation[x] = variation(seq, r).value;
    d.oscillation[x] = d.oscillation_blocks.size() >= 2 ? oscillation(seq, d.oscillation_blocks, r).value : 0.0;
  });
  d.variation_sup = sup(d.variation);
  d.variation_l2 = normalized_l2(d.variation);
  d.oscillation_sup = sup(d.oscillation);
  d.oscillation_l2 = normalized_l2(d.oscillation);
  d.tail_width_sup = sup(d.tail_width);
  d.tail_width_l2 = normalized_l2(d.tail_width);
  return d;
}

std::vector<double> vdc_correlation(const std::vector<std::vector<Complex>>& u, std::size_t H) {
  require(H >= 1 && H < u.size(), "vdc_correlation: need 1 <= H < number of vectors");
  const std::size_t dim = u.front().size();
  for (const auto& v : u) require(v.size() == dim, "vdc_correlation: vectors must share one dimension");
  std::vector<double> out(H);
  parallel_for(H, [&](std::size_t k) {
    const std::size_t h = k + 1;
    Complex acc{};
    for (std::size_t n = 0; n + h < u.size(); ++n) {
      for (std::size_t i = 0; i < dim; ++i) acc += u[n + h][i] * std::conj(u[n][i]);
    }
    out[k] = std::abs(acc / static_cast<double>(u.size() - h));
  });
  return out;
}

DiscrepancyReport discrepancy(const IntPolynomial& P, double theta, const std::vector<std::int64_t>& Ns) {
  require(std::isfinite(theta), "discrepancy: theta must be finite");
  for (auto N : Ns) require(N >= 1, "discrepancy: every N must be >= 1");
  const std::int64_t n_max = Ns.empty() ? 0 : *std::max_element(Ns.begin(), Ns.end());
  std::vector<double> points(static_cast<std::size_t>(n_max));
  for (std::int64_t n = 1; n <= n_max; ++n) {
    points[static_cast<std::size_t>(n - 1)] = frac_product(theta, P.eval(n));
  }
  DiscrepancyReport report;
  report.entries.resize(Ns.size());
  parallel_for(Ns.size(), [&](std::size_t k) {
    const std::int64_t N = Ns[k];
    std::vector<double> x(points.begin(), points.begin() + N);
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(N);
    double D = 0.0;
    for (std::int64_t i = 1; i <= N; ++i) {
      const double xi = x[static_cast<std::size_t>(i - 1)];
      D = std::max({D, static_cast<double>(i) / n - xi, xi - static_cast<double>(i - 1) / n});
    }
    report.entries[k] = {N, std::clamp(D, 0.0, 1.0)};
  });
  return report;
}

MeanErgodicRecord mean_ergodic_check(const FiniteSystem& sys, const Signal& f, const std::vector<std::int64_t>& Ns,
                                     const IntPolynomial& P) {
  const Signal invariant = riesz_split(f, sys.s).invariant_part;
  const AverageSeries series = average_series(sys, P, f, Ns);
  MeanErgodicRecord rec{Ns, {}};
  for (const auto& avg : series.averages) {
    const Signal diff = avg - invariant;
    rec.deviation.push_back(diff.norm_l2() / std::sqrt(static_cast<double>(sys.Q)));
  }
  return rec;
}

}  // namespace circlelab
