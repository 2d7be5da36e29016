// Acceptance suite: one PASS/FAIL line per criterion, with its wall time and
// runtime budget. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"

using namespace circlelab;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. DP seminorms against exhaustive enumeration.
Outcome seminorm_oracle() {
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  std::int64_t jump_mismatch = 0;
  for (int t = 0; t < 500; ++t) {
    const auto a = oracle::random_sequence(rng, 12);
    const RealSequence s(a);
    for (double r : {1.0, 2.0, 3.0, kInfinity}) {
      worst = std::max(worst, std::abs(variation(s, r).value - oracle::variation_brute(a, r)));
    }
    for (double lambda : {0.1, 0.5, 1.0}) {
      if (jump_count(s, lambda).value != static_cast<double>(oracle::jumps_brute(a, lambda))) ++jump_mismatch;
    }
  }
  return {worst <= 1e-12 && jump_mismatch == 0,
          fmt("max |V_dp - V_brute| = %.3g, jump mismatches = %lld", worst, static_cast<long long>(jump_mismatch))};
}

// 2. FFT path against direct summation.
Outcome convolution_oracle() {
  std::mt19937_64 rng(1002);
  double worst = 0.0;
  const std::int64_t Qs[] = {64, 257, 1024};
  for (int t = 0; t < 50; ++t) {
    const std::int64_t Q = Qs[t % 3];
    std::uniform_int_distribution<int> deg(1, 3);
    std::uniform_int_distribution<std::int64_t> coef(-6, 6);
    std::vector<std::int64_t> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& v : c) v = coef(rng);
    if (c.back() == 0) c.back() = 1;
    const IntPolynomial P(c);
    const IndexRange N(static_cast<std::int64_t>(rng() % 2000) + 1);
    const auto f = Signal::gaussian(Q, rng());
    const auto direct = average_linear(P, N, f, AveragePath::direct);
    const auto fft = average_linear(P, N, f, AveragePath::fft);
    worst = std::max(worst, max_abs_diff(direct, fft) / std::max(direct.norm_linf(), 1e-300));
  }
  return {worst <= 1e-9, fmt("max relative error = %.3g over 50 cases", worst)};
}

// 3. Farey count identity.
Outcome farey_totient() {
  std::int64_t expected = 1;
  std::int64_t bad = 0;
  for (std::int64_t N = 1; N <= 200; ++N) {
    if (N >= 2) expected += oracle::phi(N);
    if (static_cast<std::int64_t>(canonical_fractions(static_cast<double>(N)).size()) != expected) ++bad;
  }
  return {bad == 0, fmt("%lld mismatches for N <= 200; |R_200| = %lld", static_cast<long long>(bad),
                        static_cast<long long>(expected))};
}

// 4. Quadratic Gauss sums at odd primes.
Outcome gauss_sums() {
  const auto sq = IntPolynomial::monomial(2);
  double worst = 0.0;
  std::size_t count = 0;
  for (auto p : oracle::primes_upto(97)) {
    if (p == 2) continue;
    for (std::int64_t a = 1; a < p; ++a) {
      const double g = std::abs(complete_sum(sq, ReducedFraction(a, p)));
      worst = std::max(worst, std::abs(g - 1.0 / std::sqrt(static_cast<double>(p))));
      ++count;
    }
  }
  return {worst <= 1e-9, fmt("max ||G(a/p)| - p^-1/2| = %.3g over %zu fractions", worst, count)};
}

// 5. Projection properties on Z/512.
Outcome projection_suite() {
  const std::int64_t Q = 512;
  std::mt19937_64 rng(1005);
  std::normal_distribution<double> gauss;
  double adj = 0.0, supp = 0.0, repro = 0.0, contr = 0.0;
  std::size_t scales = 0;
  auto band = [&](auto keep) {
    std::vector<Complex> coeffs(static_cast<std::size_t>(Q));
    for (std::int64_t j = 0; j < Q; ++j) {
      if (keep(grid_frequency(j, Q))) coeffs[static_cast<std::size_t>(j)] = Complex(gauss(rng), gauss(rng));
    }
    return fourier_inverse(coeffs);
  };
  for (unsigned l = 0; l <= 4; ++l) {
    for (int m = -2 * static_cast<int>(l) - 2; m >= -2 * static_cast<int>(l) - 8; --m) {
      ++scales;
      const DyadicScale scale{l, m};
      const auto arcs = dyadic_arcs(scale);
      const auto deep = dyadic_arcs({l, m - 2});
      for (int t = 0; t < 3; ++t) {
        const auto f = Signal::gaussian(Q, rng());
        const auto g = Signal::gaussian(Q, rng());
        const auto pf = project_dyadic(f, scale);
        const auto pg = project_dyadic(g, scale);
        adj = std::max(adj, std::abs(inner(pf, g) - inner(f, pg)) / (f.norm_l2() * g.norm_l2()));
        contr = std::max(contr, pf.norm_l2() / f.norm_l2() - 1.0);
        const auto coeffs = fourier_forward(pf);
        for (std::int64_t j = 0; j < Q; ++j) {
          if (!arcs.cumulative.contains(grid_frequency(j, Q))) supp = std::max(supp, std::abs(coeffs[static_cast<std::size_t>(j)]));
        }
        const auto inside = band([&](double x) { return deep.cumulative.contains(x); });
        repro = std::max(repro, max_abs_diff(project_dyadic(inside, scale), inside));
      }
    }
  }
  const bool ok = adj <= 1e-10 && supp <= 1e-10 && repro <= 1e-10 && contr <= 1e-10;
  return {ok, fmt("%zu scales: adjoint %.2g, support %.2g, reproduction %.2g, contraction excess %.2g", scales, adj,
                  supp, repro, std::max(contr, 0.0))};
}

// 6. Minor-arc Weyl decay for n^2.
Outcome weyl_decay() {
  const auto sq = IntPolynomial::monomial(2);
  std::vector<std::int64_t> Ns;
  for (int k = 6; k <= 12; ++k) Ns.push_back(std::int64_t{1} << k);
  const auto scan = weyl_decay_scan(sq, Ns, 0.125, 1.0, 2000, 6006);
  const auto grid = weyl_minor_sup_grid(sq, 64, 0.125, 1.0, std::int64_t{1} << 20);
  const double s0 = scan.sup_minor_abs.front();
  const double s1 = scan.sup_minor_abs.back();
  const bool ok = scan.fit_valid && scan.c_fit > 0.03 && s1 <= 0.6 * s0 && s1 <= 0.6 * grid.sup && s0 <= grid.sup + 1e-3;
  return {ok, fmt("c = %.4f, s(2^6) = %.4f (grid oracle %.4f), s(2^12) = %.4f", scan.c_fit, s0, grid.sup, s1)};
}

// 7. Major-arc residual stability.
Outcome lemma1_stability() {
  std::vector<std::int64_t> Ns;
  for (int k = 6; k <= 10; ++k) Ns.push_back(std::int64_t{1} << k);
  std::string detail;
  bool ok = true;
  for (unsigned d : {2u, 3u}) {
    const auto scan = lemma1_scan(IntPolynomial::monomial(d), Ns, 4, 100, 7000 + d);
    double worst = 0.0;
    for (double r : scan.max_ratio_per_N) {
      if (!std::isfinite(r)) ok = false;
      worst = std::max(worst, r);
    }
    ok = ok && scan.max_doubling_change <= 2.0;
    detail += fmt("d=%u: max ratio %.3f, doubling change %.3f; ", d, worst, scan.max_doubling_change);
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

// 8. Arc-split minor component decay.
Outcome split_decay() {
  auto cfg = PipelineConfig::defaults(2);
  cfg.C0 = 64;
  const auto sq = IntPolynomial::monomial(2);
  const auto f = Signal::gaussian(std::int64_t{1} << 14, 8008);
  const auto lo = arc_split(f, sq, IndexRange(64), cfg);
  const auto hi = arc_split(f, sq, IndexRange(4096), cfg);
  const double r0 = lo.report.minor_l2_ratio;
  const double r1 = hi.report.minor_l2_ratio;
  return {r1 <= 0.6 * r0 && hi.report.additivity_error <= 1e-9,
          fmt("ratio(2^6) = %.4f, ratio(2^12) = %.4f, additivity %.2g", r0, r1, hi.report.additivity_error)};
}

// 9. Lepingle harness.
Outcome lepingle() {
  const auto s10 = lepingle_stat(2.0, 3.0, 10, 500, 9009);
  const auto s8 = lepingle_stat(2.0, 3.0, 8, 500, 9010);
  const auto s16 = lepingle_stat(2.0, 3.0, 16, 100, 9011);
  const double growth = s16.max_ratio / s8.max_ratio;
  const double mean_growth = s16.mean_ratio / s8.mean_ratio;
  return {s10.max_ratio <= 10.0 && growth <= 1.5 && mean_growth <= 1.5,
          fmt("K=10 max %.4f (sqrt K = %.3f); K=8 -> 16 growth max %.4f, mean %.4f", s10.max_ratio, std::sqrt(10.0),
              growth, mean_growth)};
}

// 10. Exact ergodic averages and coboundary telescoping.
Outcome ergodic_exactness() {
  std::mt19937_64 rng(1010);
  std::size_t inexact = 0, violations = 0;
  for (int t = 0; t < 50; ++t) {
    const std::int64_t Q = static_cast<std::int64_t>(rng() % 300) + 1;
    std::int64_t s;
    do s = static_cast<std::int64_t>(rng() % 1000) - 500;
    while (gcd(mod_floor(s, Q), Q) != 1);
    std::vector<Complex> v(static_cast<std::size_t>(Q));
    for (auto& x : v) x = Complex(static_cast<double>(rng() % 2001) - 1000.0, static_cast<double>(rng() % 201) - 100.0);
    const Signal f(v);
    const std::int64_t k = static_cast<std::int64_t>(rng() % 5) + 1;
    const auto series = average_series(FiniteSystem(Q, s), IntPolynomial::monomial(1), f, {Q * k});
    const Complex mean = f.mean();
    for (const auto& y : series.averages[0].values()) {
      if (y != mean) ++inexact;
    }
  }
  for (int t = 0; t < 50; ++t) {
    const std::int64_t Q = static_cast<std::int64_t>(rng() % 300) + 2;
    const FiniteSystem sys(Q, static_cast<std::int64_t>(rng() % 50) + 1);
    const auto g = Signal::gaussian(Q, rng());
    std::vector<Complex> fv(static_cast<std::size_t>(Q));
    for (std::int64_t x = 0; x < Q; ++x) fv[static_cast<std::size_t>(x)] = g[x] - g[sys.iterate(x, 1)];
    std::vector<std::int64_t> Ns;
    for (std::int64_t N = 1; N <= 3 * Q; N += 1 + N / 8) Ns.push_back(N);
    const auto series = average_series(sys, IntPolynomial::monomial(1), Signal(fv), Ns);
    for (std::size_t i = 0; i < Ns.size(); ++i) {
      if (series.averages[i].norm_linf() > 2.0 * g.norm_linf() / static_cast<double>(Ns[i]) * (1 + 1e-12)) ++violations;
    }
  }
  return {inexact == 0 && violations == 0,
          fmt("%zu inexact values in A_kQ f, %zu telescoping violations", inexact, violations)};
}

// 11. Star discrepancy of n sqrt 2.
Outcome discrepancy_check() {
  const auto rep = discrepancy(IntPolynomial::monomial(1), std::sqrt(2.0), {100, 10000});
  const double d2 = rep.entries[0].second;
  const double d4 = rep.entries[1].second;
  return {d4 <= 0.01 && d4 <= d2 / 5, fmt("D_100 = %.5f, D_10000 = %.6f", d2, d4)};
}

// 12. Duality and dominance inequalities.
Outcome duality_dominance() {
  std::mt19937_64 rng(1012);
  std::size_t violations = 0;
  const double rs[] = {1.0, 1.5, 2.0, 3.0, 6.0, kInfinity};
  for (int t = 0; t < 1000; ++t) {
    const auto a = oracle::random_sequence(rng, 60);
    const RealSequence s(a);
    const double sup = maximal(s).value;
    std::vector<double> v;
    for (double r : rs) v.push_back(variation(s, r).value);
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t t0 = 0; t0 < a.size(); t0 += 1 + a.size() / 4) {
        if (sup > v[i] + std::abs(a[t0]) + 1e-12) ++violations;
      }
      if (i + 1 < v.size() && v[i + 1] > v[i] * (1 + 1e-12)) ++violations;
    }
    for (double lambda : {0.1, 0.5, 1.0, 2.0}) {
      const double n = jump_count(s, lambda).value;
      for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (lambda * std::pow(n, 1.0 / rs[i]) > v[i] * (1 + 1e-12) + 1e-12) ++violations;
      }
    }
  }
  return {violations == 0, fmt("%zu violations over 1000 sequences", violations)};
}

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"seminorm oracle equivalence", 30, seminorm_oracle},
      {"convolution oracle", 10, convolution_oracle},
      {"Farey totient identity", 1, farey_totient},
      {"Gauss sums", 5, gauss_sums},
      {"projection property suite", 30, projection_suite},
      {"Weyl decay", 180, weyl_decay},
      {"major-arc residual", 120, lemma1_stability},
      {"minor-arc split decay", 120, split_decay},
      {"Lepingle harness", 60, lepingle},
      {"ergodic exactness", 5, ergodic_exactness},
      {"discrepancy", 5, discrepancy_check},
      {"duality and dominance", 10, duality_dominance},
  };
  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = out.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s %2d %s: %s [%.2f s / %.0f s budget%s]\n", pass ? "PASS" : "FAIL", index, c.name,
                out.detail.c_str(), secs, c.budget_seconds, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
