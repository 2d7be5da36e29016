#include "circlelab/expsums.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <random>

#include "circlelab/fourier.hpp"

namespace circlelab {

namespace {

constexpr Int128 kMaxPhaseInteger = Int128{1} << 106;

double frac(double x) {
  const double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

// xi * (hi + lo) mod 1. Each product is split into its rounded value and the
// exact fma residual, so the four pieces sum to xi * (hi + lo) exactly.
double frac_product_split(double xi, double hi, double lo) {
  const double p1 = xi * hi;
  const double e1 = std::fma(xi, hi, -p1);
  const double p2 = xi * lo;
  const double e2 = std::fma(xi, lo, -p2);
  return frac(frac(p1) + frac(e1) + frac(p2) + frac(e2));
}

void split_integer(Int128 k, double& hi, double& lo) {
  if (k >= kMaxPhaseInteger || k <= -kMaxPhaseInteger) {
    throw OverflowError("phase integer exceeds 2^106; exact phase reduction unavailable");
  }
  hi = static_cast<double>(k);
  lo = static_cast<double>(k - static_cast<Int128>(hi));
}

// Kahan-compensated complex accumulator.
class CompensatedSum {
 public:
  void add(Complex v) {
    const Complex y = v - carry_;
    const Complex t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  Complex value() const { return sum_; }

 private:
  Complex sum_{};
  Complex carry_{};
};

class RootsOfUnity {
 public:
  explicit RootsOfUnity(std::int64_t q) : roots_(static_cast<std::size_t>(q)) {
    for (std::int64_t k = 0; k < q; ++k) {
      roots_[static_cast<std::size_t>(k)] = expi(static_cast<double>(k) / static_cast<double>(q));
    }
  }
  const Complex& operator[](std::int64_t k) const { return roots_[static_cast<std::size_t>(k)]; }

 private:
  std::vector<Complex> roots_;
};

// Reference Gauss-Legendre nodes and weights on [0, 1], cached per order.
struct ReferenceRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const ReferenceRule& reference_rule(int order) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<ReferenceRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[order];
  if (!slot) {
    auto rule = std::make_unique<ReferenceRule>();
    gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(static_cast<size_t>(order));
    if (!table) throw std::bad_alloc();
    for (int i = 0; i < order; ++i) {
      double x = 0.0, w = 0.0;
      gsl_integration_glfixed_point(0.0, 1.0, static_cast<size_t>(i), &x, &w, table);
      rule->nodes.push_back(x);
      rule->weights.push_back(w);
    }
    gsl_integration_glfixed_table_free(table);
    slot = std::move(rule);
  }
  return *slot;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

double frac_product(double xi, Int128 k) {
  double hi = 0.0, lo = 0.0;
  split_integer(k, hi, lo);
  return frac_product_split(xi, hi, lo);
}

WeylEvaluator::WeylEvaluator(const IntPolynomial& P, IndexRange N)
    : hi_(static_cast<std::size_t>(N.size())), lo_(static_cast<std::size_t>(N.size())) {
  for (std::int64_t n = 1; n <= N.size(); ++n) {
    split_integer(P.eval(n), hi_[static_cast<std::size_t>(n - 1)], lo_[static_cast<std::size_t>(n - 1)]);
  }
}

Complex WeylEvaluator::operator()(double xi) const {
  CompensatedSum acc;
  for (std::size_t i = 0; i < hi_.size(); ++i) acc.add(expi(frac_product_split(xi, hi_[i], lo_[i])));
  return acc.value() / static_cast<double>(hi_.size());
}

Complex weyl_sum(const IntPolynomial& P, IndexRange N, double xi) {
  require(std::isfinite(xi), "weyl_sum: xi must be finite");
  CompensatedSum acc;
  double hi = 0.0, lo = 0.0;
  for (std::int64_t n = 1; n <= N.size(); ++n) {
    split_integer(P.eval(n), hi, lo);
    acc.add(expi(frac_product_split(xi, hi, lo)));
  }
  return acc.value() / static_cast<double>(N.size());
}

Complex weyl_sum(const IntPolynomial& P, IndexRange N, const ReducedFraction& theta) {
  const std::int64_t q = theta.denominator();
  const std::int64_t a = theta.numerator();
  if (q == 1) return {1.0, 0.0};
  // n -> e((a/q) P(n)) has period q: N = full * q + rem.
  const std::int64_t full = N.size() / q;
  const std::int64_t rem = N.size() % q;
  const std::int64_t span = full > 0 ? q : rem;
  std::unique_ptr<RootsOfUnity> table;
  if (span >= q && q <= (std::int64_t{1} << 20)) table = std::make_unique<RootsOfUnity>(q);
  auto term = [&](std::int64_t n) {
    const std::int64_t r = static_cast<std::int64_t>((static_cast<Int128>(a) * P.eval_mod(n, q)) % q);
    return table ? (*table)[r] : expi(static_cast<double>(r) / static_cast<double>(q));
  };
  CompensatedSum period, partial;
  for (std::int64_t n = 1; n <= span; ++n) {
    const Complex t = term(n);
    if (n <= rem) partial.add(t);
    if (full > 0) period.add(t);
  }
  const Complex total = static_cast<double>(full) * period.value() + partial.value();
  return total / static_cast<double>(N.size());
}

Complex complete_sum(const IntPolynomial& P, const ReducedFraction& theta) {
  const std::int64_t q = theta.denominator();
  if (q == 1) return {1.0, 0.0};
  const RootsOfUnity roots(q);
  CompensatedSum acc;
  for (std::int64_t n = 1; n <= q; ++n) {
    const Int128 phase = static_cast<Int128>(theta.numerator()) * P.eval_mod(n, q);
    acc.add(roots[static_cast<std::int64_t>(phase % q)]);
  }
  return acc.value() / static_cast<double>(q);
}

QuadratureResult continuous_multiplier_detail(const IntPolynomial& P, IndexRange N, double xi,
                                              const QuadratureSpec& quad) {
  require(quad.base_panels >= 1, "QuadratureSpec: base panel count must be >= 1");
  require(quad.nodes_per_oscillation >= 1, "QuadratureSpec: nodes per oscillation must be >= 1");
  require(quad.tolerance > 0.0, "QuadratureSpec: tolerance must be > 0");
  require(std::isfinite(xi), "continuous_multiplier: xi must be finite");
  if (xi == 0.0) return {{1.0, 0.0}, 0.0, 0};

  // Phase in cycles: phi(t) = sum_k xi c_k N^k t^k.
  const auto& c = P.coefficients();
  std::vector<double> b(c.size());
  double variation = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double scale = std::pow(static_cast<double>(N.size()), static_cast<double>(k));
    b[k] = xi * static_cast<double>(c[k]) * scale;
    if (k >= 1) variation += std::fabs(b[k]);
  }
  const ReferenceRule& rule = reference_rule(quad.nodes_per_oscillation);

  auto integrate = [&](std::int64_t panels) {
    const double h = 1.0 / static_cast<double>(panels);
    CompensatedSum acc;
    for (std::int64_t p = 0; p < panels; ++p) {
      Complex panel{};
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = (static_cast<double>(p) + rule.nodes[i]) * h;
        double phase = 0.0;
        for (auto it = b.rbegin(); it != b.rend(); ++it) phase = phase * t + *it;
        panel += rule.weights[i] * expi(frac(phase));
      }
      acc.add(panel);
    }
    return acc.value() * h;
  };

  const double oscillations = std::ceil(variation);
  if (oscillations > static_cast<double>(quad.max_panels)) {
    throw ConvergenceError("continuous_multiplier: phase variation " + std::to_string(variation) +
                           " exceeds the panel budget");
  }
  std::int64_t panels = std::max<std::int64_t>(quad.base_panels, static_cast<std::int64_t>(oscillations));
  Complex coarse = integrate(panels);
  while (true) {
    if (2 * panels > quad.max_panels) {
      throw ConvergenceError("continuous_multiplier: tolerance " + std::to_string(quad.tolerance) +
                             " not reached within " + std::to_string(quad.max_panels) + " panels");
    }
    const Complex fine = integrate(2 * panels);
    const double diff = std::abs(fine - coarse);
    if (diff <= quad.tolerance) return {fine, diff, 2 * panels};
    panels *= 2;
    coarse = fine;
  }
}

ArcSystem weyl_major_arcs(const IntPolynomial& P, std::int64_t N, double eps, double bigC) {
  require(N >= 1, "weyl_major_arcs: N must be >= 1");
  require(eps > 0.0 && eps < 1.0, "weyl_major_arcs: eps must lie in (0, 1)");
  require(bigC > 0.0, "weyl_major_arcs: C must be positive");
  const double logN = std::log(static_cast<double>(N));
  const double denominator_bound = std::max(1.0, std::exp(eps * bigC * logN));
  const double halfwidth = std::exp((eps * bigC - static_cast<double>(P.degree())) * logN);
  return ArcSystem(denominator_bound, halfwidth);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, "fit_line: need at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  require(sxx > 0.0, "fit_line: x values must not all coincide");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (intercept + slope * x[i]);
    ss += r * r;
  }
  return {slope, intercept, std::sqrt(ss / n)};
}

namespace {

DecayScanReport decay_scan(const IntPolynomial& P, const std::vector<std::int64_t>& Ns,
                           const std::function<ArcSystem(std::int64_t)>& arcs_at, std::size_t samples,
                           std::uint64_t seed) {
  require(!Ns.empty(), "weyl_decay_scan: Ns must be nonempty");
  require(samples >= 1, "weyl_decay_scan: samples must be >= 1");
  for (std::size_t i = 1; i < Ns.size(); ++i) {
    require(Ns[i] > Ns[i - 1], "weyl_decay_scan: Ns must be strictly increasing");
  }
  DecayScanReport report;
  report.Ns = Ns;
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    const ArcSystem arcs = arcs_at(Ns[i]);
    const auto points = minor_sample(arcs, samples, substream_seed(seed, i));
    const WeylEvaluator m(P, IndexRange(Ns[i]));
    std::vector<double> values(points.size());
    parallel_for(points.size(), [&](std::size_t s) { values[s] = std::abs(m(points[s].value())); });
    const auto best = std::max_element(values.begin(), values.end());
    report.sup_minor_abs.push_back(std::min(1.0, *best));
    report.argmax.push_back(points[static_cast<std::size_t>(best - values.begin())].value());
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    if (report.sup_minor_abs[i] > 0.0) {
      lx.push_back(std::log(static_cast<double>(Ns[i])));
      ly.push_back(std::log(report.sup_minor_abs[i]));
    }
  }
  if (lx.size() >= 2) {
    const LineFit fit = fit_line(lx, ly);
    report.c_fit = -fit.slope;
    report.residual = fit.residual;
    report.fit_valid = true;
  }
  return report;
}

}  // namespace

DecayScanReport weyl_decay_scan(const IntPolynomial& P, const std::vector<std::int64_t>& Ns,
                                double eps, double bigC, std::size_t samples, std::uint64_t seed) {
  return decay_scan(
      P, Ns, [&](std::int64_t N) { return weyl_major_arcs(P, N, eps, bigC); }, samples, seed);
}

DecayScanReport weyl_decay_scan(const IntPolynomial& P, const std::vector<std::int64_t>& Ns,
                                const ArcSystem& fixed_arcs, std::size_t samples, std::uint64_t seed) {
  return decay_scan(
      P, Ns, [&](std::int64_t) { return fixed_arcs; }, samples, seed);
}

GridSup weyl_minor_sup_grid(const IntPolynomial& P, std::int64_t N, double eps, double bigC,
                            std::int64_t resolution) {
  require(resolution >= 1, "weyl_minor_sup_grid: resolution must be >= 1");
  const ArcSystem arcs = weyl_major_arcs(P, N, eps, bigC);
  const WeylEvaluator m(P, IndexRange(N));
  std::vector<double> values(static_cast<std::size_t>(resolution), -1.0);
  parallel_for(values.size(), [&](std::size_t j) {
    const double xi = static_cast<double>(j) / static_cast<double>(resolution);
    if (!classify(TorusPoint(xi), arcs).is_major) values[j] = std::abs(m(xi));
  });
  GridSup out{0.0, 0.0, 0};
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (values[j] < 0.0) continue;
    ++out.minor_points;
    if (values[j] > out.sup) {
      out.sup = values[j];
      out.argmax = static_cast<double>(j) / static_cast<double>(resolution);
    }
  }
  return out;
}

unsigned shell_index(std::int64_t q) {
  require(q >= 1, "shell_index: q must be >= 1");
  unsigned l = 0;
  while ((std::int64_t{1} << l) < q) ++l;
  return l;
}

Lemma1Result lemma1_residual(const IntPolynomial& P, IndexRange N, const ReducedFraction& theta,
                             TorusPoint xi, double M, const QuadratureSpec& quad) {
  require(M > 0.0 && std::isfinite(M), "lemma1_residual: M must be a positive real");
  const double dist = torus_distance(xi.value(), theta.value());
  // Slack of a few ulps of 1 absorbs the rounding of theta + u / M into [0, 1).
  require(dist <= 1.0 / M + 1e-15,
          "lemma1_residual: torus distance " + std::to_string(dist) + " exceeds 1/M = " + std::to_string(1.0 / M));
  const unsigned l = shell_index(theta.denominator());
  const double beta = wrap_signed(xi.value() - theta.value());
  const Complex approx = complete_sum(P, theta) * continuous_multiplier(P, N, beta, quad);
  const double residual = std::abs(weyl_sum(P, N, xi.value()) - approx);
  const double n = static_cast<double>(N.size());
  const double d = static_cast<double>(P.degree());
  const double bound = std::ldexp(1.0, static_cast<int>(l)) * (std::pow(n, d - 1.0) / M + 1.0 / n);
  return {residual, bound, residual / bound, l};
}

Lemma1Scan lemma1_scan(const IntPolynomial& P, const std::vector<std::int64_t>& Ns, unsigned l_max,
                       std::size_t samples, std::uint64_t seed, const QuadratureSpec& quad) {
  require(!Ns.empty(), "lemma1_scan: Ns must be nonempty");
  require(samples >= 1, "lemma1_scan: samples must be >= 1");
  std::vector<std::vector<ReducedFraction>> shells;
  for (unsigned l = 0; l <= l_max; ++l) shells.push_back(dyadic_shell(l));

  Lemma1Scan scan;
  scan.Ns = Ns;
  const std::size_t per_N = l_max + 1;
  scan.cells.resize(Ns.size() * per_N);
  const double d = static_cast<double>(P.degree());
  parallel_for(scan.cells.size(), [&](std::size_t idx) {
    const std::int64_t N = Ns[idx / per_N];
    const auto l = static_cast<unsigned>(idx % per_N);
    const double M = std::pow(static_cast<double>(N), d) * std::ldexp(1.0, -static_cast<int>(l));
    std::mt19937_64 rng(substream_seed(seed, idx));
    Lemma1Cell cell{N, l, M, 0.0, 0.0};
    const auto& shell = shells[l];
    for (std::size_t s = 0; s < samples; ++s) {
      const ReducedFraction& theta = shell[static_cast<std::size_t>(rng() % shell.size())];
      const double u = 2.0 * uniform01(rng) - 1.0;
      const TorusPoint xi(theta.value() + u / M);
      const Lemma1Result r = lemma1_residual(P, IndexRange(N), theta, xi, M, quad);
      cell.max_ratio = std::max(cell.max_ratio, r.ratio);
      cell.max_residual = std::max(cell.max_residual, r.residual);
    }
    scan.cells[idx] = cell;
  });
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    double m = 0.0;
    for (std::size_t l = 0; l < per_N; ++l) m = std::max(m, scan.cells[i * per_N + l].max_ratio);
    scan.max_ratio_per_N.push_back(m);
  }
  scan.max_doubling_change = 1.0;
  for (std::size_t i = 1; i < Ns.size(); ++i) {
    const double a = scan.max_ratio_per_N[i - 1];
    const double b = scan.max_ratio_per_N[i];
    if (a > 0.0 && b > 0.0) scan.max_doubling_change = std::max(scan.max_doubling_change, std::max(a / b, b / a));
  }
  return scan;
}

}  // namespace circlelab
