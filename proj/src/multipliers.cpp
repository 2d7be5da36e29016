#include "circlelab/multipliers.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "circlelab/fourier.hpp"
#include "circlelab/polyavg.hpp"

namespace circlelab {

namespace {

double glue(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

MultiplierOp bump_op(std::vector<ReducedFraction> centers, int m) {
  MultiplierOp op;
  op.coefficients.assign(centers.size(), Complex{1.0, 0.0});
  op.frequencies = std::move(centers);
  op.symbol = [m](double offset) { return Complex{eta_dyadic(m, offset), 0.0}; };
  op.support_radius = std::ldexp(0.5, m);
  return op;
}

// Unit-l^p-norm dual vector of y: <dual, y> = ||y||_p, ||dual||_{p'} = 1.
Signal dual_vector(const Signal& y, double p) {
  const double norm = y.norm_lp(p);
  std::vector<Complex> out(static_cast<std::size_t>(y.modulus()));
  if (norm == 0.0) return Signal(std::move(out));
  for (std::int64_t x = 0; x < y.modulus(); ++x) {
    const double a = std::abs(y[x]);
    if (a == 0.0) continue;
    out[static_cast<std::size_t>(x)] = (y[x] / a) * std::pow(a / norm, p - 1.0);
  }
  return Signal(std::move(out));
}

}  // namespace

double eta(double x) {
  const double a = std::fabs(x);
  if (a <= 0.25) return 1.0;
  if (a >= 0.5) return 0.0;
  const double up = glue(0.5 - a);
  const double down = glue(a - 0.25);
  return up / (up + down);
}

double eta_dyadic(int n, double xi) { return eta(std::ldexp(xi, -n)); }

void MultiplierOp::validate() const {
  require(!frequencies.empty(), "MultiplierOp: frequency set must be nonempty");
  require(frequencies.size() == coefficients.size(), "MultiplierOp: one coefficient per frequency");
  require(static_cast<bool>(symbol), "MultiplierOp: base symbol missing");
  for (const auto& c : coefficients) {
    require(std::isfinite(c.real()) && std::isfinite(c.imag()), "MultiplierOp: coefficients must be bounded");
  }
}

Complex MultiplierOp::evaluate(double xi) const {
  Complex acc{};
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    const double offset = wrap_signed(xi - frequencies[i].value());
    if (std::fabs(offset) >= support_radius) continue;
    acc += coefficients[i] * symbol(offset);
  }
  return acc;
}

std::vector<Complex> symbol_on_grid(const MultiplierOp& op, std::int64_t Q) {
  op.validate();
  require(Q >= 1, "symbol_on_grid: Q must be >= 1");
  std::vector<Complex> out(static_cast<std::size_t>(Q));
  for (std::size_t i = 0; i < op.frequencies.size(); ++i) {
    const std::int64_t a = op.frequencies[i].numerator();
    const std::int64_t q = op.frequencies[i].denominator();
    const Int128 period = static_cast<Int128>(q) * Q;
    auto visit = [&](std::int64_t j) {
      Int128 k = (static_cast<Int128>(j) * q - static_cast<Int128>(a) * Q) % period;
      if (k < 0) k += period;
      if (2 * k > period) k -= period;
      const double offset = static_cast<double>(k) / static_cast<double>(period);
      if (std::fabs(offset) >= op.support_radius) return;
      out[static_cast<std::size_t>(j)] += op.coefficients[i] * op.symbol(offset);
    };
    const double radius_points = op.support_radius * static_cast<double>(Q);
    if (!(radius_points < static_cast<double>(Q) / 2.0)) {
      for (std::int64_t j = 0; j < Q; ++j) visit(j);
      continue;
    }
    const double center = static_cast<double>(a) * static_cast<double>(Q) / static_cast<double>(q);
    const auto lo = static_cast<std::int64_t>(std::floor(center - radius_points)) - 1;
    const auto hi = static_cast<std::int64_t>(std::ceil(center + radius_points)) + 1;
    for (std::int64_t j = lo; j <= hi; ++j) visit(mod_floor(j, Q));
  }
  return out;
}

Signal apply_symbol(const Signal& f, const std::vector<Complex>& symbol) {
  require(static_cast<std::int64_t>(symbol.size()) == f.modulus(), "apply_symbol: symbol length must equal Q");
  auto coeffs = fourier_forward(f);
  for (std::size_t j = 0; j < coeffs.size(); ++j) coeffs[j] *= symbol[j];
  return fourier_inverse(coeffs);
}

Signal multiplier_apply(const Signal& f, const MultiplierOp& op) {
  return apply_symbol(f, symbol_on_grid(op, f.modulus()));
}

MultiplierOp projection_op(double N1, double N2) {
  require(N2 > 0.0 && std::isfinite(N2), "projection_op: N2 must be a positive real");
  MultiplierOp op;
  op.frequencies = canonical_fractions(N1);
  op.coefficients.assign(op.frequencies.size(), Complex{1.0, 0.0});
  op.symbol = [N2](double offset) { return Complex{eta(offset / N2), 0.0}; };
  op.support_radius = N2 / 2.0;
  return op;
}

MultiplierOp dyadic_projection_op(DyadicScale scale) {
  return bump_op(canonical_fractions(std::ldexp(1.0, static_cast<int>(scale.l))), scale.m);
}

MultiplierOp shell_projection_op(unsigned l, int m) { return bump_op(dyadic_shell(l), m); }

Signal project(const Signal& f, double N1, double N2) { return multiplier_apply(f, projection_op(N1, N2)); }

Signal project_dyadic(const Signal& f, DyadicScale scale) {
  return multiplier_apply(f, dyadic_projection_op(scale));
}

Signal project_shell(const Signal& f, unsigned l, int m) {
  return multiplier_apply(f, shell_projection_op(l, m));
}

double l2_operator_norm(const MultiplierOp& op, std::int64_t Q) {
  double best = 0.0;
  for (const auto& s : symbol_on_grid(op, Q)) best = std::max(best, std::abs(s));
  return best;
}

double kernel_l1_norm(const MultiplierOp& op, std::int64_t Q) {
  const Signal k = fourier_inverse(symbol_on_grid(op, Q));
  double acc = 0.0;
  for (const auto& v : k.values()) acc += std::abs(v);
  return acc;
}

double crude_projection_bound(DyadicScale scale, std::int64_t Q) {
  const double count = static_cast<double>(canonical_fractions(std::ldexp(1.0, static_cast<int>(scale.l))).size());
  return count * kernel_l1_norm(bump_op({ReducedFraction(0, 1)}, scale.m), Q);
}

LpProbeResult lp_norm_probe(const MultiplierOp& op, double p, std::int64_t Q, std::size_t trials,
                            std::uint64_t seed, int ascent_iterations) {
  require(p > 1.0 && std::isfinite(p), "lp_norm_probe: p must lie in (1, inf)");
  require(trials >= 1, "lp_norm_probe: trials must be >= 1");
  const double p_dual = p / (p - 1.0);
  const auto symbol = symbol_on_grid(op, Q);
  std::vector<Complex> adjoint(symbol.size());
  for (std::size_t j = 0; j < symbol.size(); ++j) adjoint[j] = std::conj(symbol[j]);

  std::vector<double> best(trials, 0.0);
  parallel_for(trials, [&](std::size_t t) {
    Signal x = Signal::gaussian(Q, substream_seed(seed, t));
    double ratio = 0.0;
    for (int it = 0; it <= ascent_iterations; ++it) {
      const double xn = x.norm_lp(p);
      if (xn == 0.0) break;
      const Signal y = apply_symbol(x, symbol);
      const double yn = y.norm_lp(p);
      ratio = std::max(ratio, yn / xn);
      if (yn == 0.0 || it == ascent_iterations) break;
      const Signal z = apply_symbol(dual_vector(y, p), adjoint);
      // Stationary when <z, x/||x||> already attains ||z||_{p'}.
      if (z.norm_lp(p_dual) <= std::real(inner(z, x)) / xn * (1.0 + 1e-12)) break;
      x = dual_vector(z, p_dual);
    }
    best[t] = ratio;
  });
  return {*std::max_element(best.begin(), best.end()), kernel_l1_norm(op, Q), trials};
}

PipelineConfig PipelineConfig::defaults(unsigned d) {
  const int p0 = 4;
  return {0.5e-7 / (static_cast<double>(d) * p0), std::int64_t{1} << 20, p0, d, 2.0, false};
}

void PipelineConfig::validate() const {
  require(d >= 1, "PipelineConfig: degree must be >= 1");
  require(p0 >= 2 && p0 % 2 == 0, "PipelineConfig: p0 must be an even integer >= 2");
  require(tau > 1.0, "PipelineConfig: tau must be > 1");
  require(C0 >= 1, "PipelineConfig: C0 must be >= 1");
  const double alpha_max = desk_scale ? 1.0 : 1.0 / (1e6 * static_cast<double>(d) * p0);
  require(alpha > 0.0 && alpha < alpha_max,
          "PipelineConfig: alpha must lie in (0, " + std::to_string(alpha_max) + ")");
}

int PipelineConfig::l_of(std::int64_t N) const {
  return static_cast<int>(std::floor(alpha * std::log2(static_cast<double>(N))));
}

int PipelineConfig::L_of(std::int64_t N) const {
  return static_cast<int>(std::floor(std::log2(static_cast<double>(N)))) - l_of(N);
}

ArcSplit arc_split(const Signal& f, const IntPolynomial& P, IndexRange N, const PipelineConfig& cfg,
                   const std::vector<double>& ps) {
  cfg.validate();
  require(N.size() >= cfg.C0, "arc_split: N must be >= C0 = " + std::to_string(cfg.C0));
  const int l_N = cfg.l_of(N.size());
  const int L_N = cfg.L_of(N.size());
  const int m = -static_cast<int>(cfg.d) * L_N;
  const Signal projected = project_dyadic(f, {static_cast<unsigned>(l_N), m});
  const Signal rest = f - projected;

  // A_N acts on Z/QZ as the multiplier m_N(j/Q), the transform of its kernel.
  const auto m_N = fourier_forward(kernel(P, N, f.modulus()));
  Signal major = apply_symbol(projected, m_N);
  Signal minor = apply_symbol(rest, m_N);
  const Signal full = apply_symbol(f, m_N);

  ArcSplitReport report{N.size(), l_N, L_N, m, 0.0, {}, 0.0};
  const double f2 = f.norm_l2();
  report.minor_l2_ratio = f2 > 0.0 ? minor.norm_l2() / f2 : 0.0;
  for (double p : ps) {
    const double fp = f.norm_lp(p);
    report.minor_lp_ratios.emplace_back(p, fp > 0.0 ? minor.norm_lp(p) / fp : 0.0);
  }
  report.additivity_error = max_abs_diff(major + minor, full);
  return {std::move(major), std::move(minor), std::move(report)};
}

MultiplierOp major_approximation_op(const IntPolynomial& P, IndexRange N, unsigned l, int L,
                                    const QuadratureSpec& quad) {
  const int n = -static_cast<int>(P.degree()) * L;
  MultiplierOp op;
  op.frequencies = dyadic_shell(l);
  for (const auto& theta : op.frequencies) op.coefficients.push_back(complete_sum(P, theta));
  op.symbol = [P, N, n, quad](double offset) {
    const double cut = eta_dyadic(n, offset);
    if (cut == 0.0) return Complex{};
    return continuous_multiplier(P, N, offset, quad) * cut;
  };
  op.support_radius = std::ldexp(0.5, n);
  return op;
}

FactorizationCheck factorization_check(const Signal& f, const IntPolynomial& P, IndexRange N, unsigned l,
                                       int L, int u, int p0, const QuadratureSpec& quad) {
  require(u >= 1 && p0 >= 2, "factorization_check: u >= 1 and p0 >= 2 required");
  const int d = static_cast<int>(P.degree());
  const MultiplierOp lhs_op = major_approximation_op(P, N, l, L, quad);

  MultiplierOp outer = lhs_op;
  std::fill(outer.coefficients.begin(), outer.coefficients.end(), Complex{1.0, 0.0});
  MultiplierOp inner_op = bump_op(dyadic_shell(l), -d * u * p0);
  for (std::size_t i = 0; i < inner_op.frequencies.size(); ++i) {
    inner_op.coefficients[i] = complete_sum(P, inner_op.frequencies[i]);
  }

  Signal lhs = multiplier_apply(f, lhs_op);
  Signal rhs = multiplier_apply(multiplier_apply(f, inner_op), outer);

  // Minimum separation between distinct centers of Sigma_l on the torus.
  const auto& centers = lhs_op.frequencies;
  double separation = 1.0;
  for (std::size_t i = 0; i < centers.size() && centers.size() > 1; ++i) {
    const auto& next = centers[(i + 1) % centers.size()];
    separation = std::min(separation, torus_distance(centers[i].value(), next.value()));
  }
  const bool flat_covers = d * L >= d * u * p0 + 1;
  const bool separated = centers.size() == 1 ||
                         separation >= std::ldexp(0.5, -d * u * p0) + std::ldexp(0.5, -d * L);
  const double diff = max_abs_diff(lhs, rhs);
  return {std::move(lhs), std::move(rhs), diff, flat_covers && separated};
}

}  // namespace circlelab
