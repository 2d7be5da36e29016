#include "circlelab/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace circlelab {

namespace {

// Farey order cap: R_{<=5000} already holds ~7.6 million fractions.
constexpr std::int64_t kMaxDenominator = 5000;

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

bool nearer(const ReducedFraction& a, double da, const ReducedFraction& b, double db) {
  if (da != db) return da < db;
  if (a.denominator() != b.denominator()) return a.denominator() < b.denominator();
  return a.numerator() < b.numerator();
}

}  // namespace

ReducedFraction::ReducedFraction(std::int64_t a, std::int64_t q) {
  require(q >= 1, "ReducedFraction: denominator must be positive");
  a = mod_floor(a, q);
  const std::int64_t g = gcd(a, q);
  a_ = a / g;
  q_ = q / g;
  if (a_ == 0) q_ = 1;
}

TorusPoint::TorusPoint(double xi) {
  require(std::isfinite(xi), "TorusPoint: value must be finite");
  xi_ = xi - std::floor(xi);
  if (xi_ >= 1.0) xi_ = 0.0;
}

double torus_distance(double x, double y) {
  double d = std::fabs(x - y);
  d -= std::floor(d);
  return std::min(d, 1.0 - d);
}

std::vector<ReducedFraction> canonical_fractions(double N1) {
  require(N1 >= 1.0, "canonical_fractions: N1 must be >= 1");
  require(N1 < static_cast<double>(kMaxDenominator + 1),
          "canonical_fractions: floor(N1) must be <= " + std::to_string(kMaxDenominator));
  const auto n = static_cast<std::int64_t>(std::floor(N1));
  // Farey next-term recurrence: emits reduced fractions of order n in ascending order.
  std::vector<ReducedFraction> out;
  std::int64_t a = 0, b = 1, c = 1, d = n;
  out.emplace_back(0, 1);
  while (c < d) {
    out.emplace_back(c, d);
    const std::int64_t k = (n + b) / d;
    const std::int64_t next_c = k * c - a;
    const std::int64_t next_d = k * d - b;
    a = c;
    b = d;
    c = next_c;
    d = next_d;
  }
  return out;
}

ArcSystem::ArcSystem(double denominator_bound, double halfwidth)
    : ArcSystem(canonical_fractions(denominator_bound), denominator_bound, halfwidth) {}

ArcSystem::ArcSystem(std::vector<ReducedFraction> centers, double denominator_bound, double halfwidth)
    : centers_(std::move(centers)), denominator_bound_(denominator_bound), halfwidth_(halfwidth) {
  require(!centers_.empty(), "ArcSystem: at least one center required");
  require(halfwidth >= 0.0 && std::isfinite(halfwidth), "ArcSystem: halfwidth must be finite and >= 0");
  require(std::is_sorted(centers_.begin(), centers_.end()), "ArcSystem: centers must be sorted");
  summarize();
}

void ArcSystem::summarize() {
  const std::size_t k = centers_.size();
  disjoint_ = true;
  coverage_ = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double gap = (i + 1 < k) ? centers_[i + 1].value() - centers_[i].value()
                             : 1.0 - centers_[i].value() + centers_[0].value();
    if (k > 1 && gap <= 2.0 * halfwidth_) disjoint_ = false;
    coverage_ += std::min(gap, 2.0 * halfwidth_);
  }
  coverage_ = std::min(coverage_, 1.0);
}

Classification classify(TorusPoint xi, const ArcSystem& arcs) {
  const auto& centers = arcs.centers();
  const double x = xi.value();
  auto it = std::lower_bound(centers.begin(), centers.end(), x,
                             [](const ReducedFraction& c, double v) { return c.value() < v; });
  const std::size_t k = centers.size();
  const std::size_t hi = static_cast<std::size_t>(it - centers.begin()) % k;
  const std::size_t lo = (hi + k - 1) % k;
  ReducedFraction best = centers[hi];
  double best_d = torus_distance(x, best.value());
  for (std::size_t idx : {lo, std::size_t{0}, k - 1}) {
    const double d = torus_distance(x, centers[idx].value());
    if (nearer(centers[idx], d, best, best_d)) {
      best = centers[idx];
      best_d = d;
    }
  }
  return {best_d <= arcs.halfwidth(), best, best_d};
}

std::vector<ReducedFraction> dyadic_shell(unsigned l) {
  if (l == 0) return {ReducedFraction(0, 1)};
  require(l <= 12, "dyadic_shell: l must be <= 12");
  const std::int64_t lower = std::int64_t{1} << (l - 1);
  std::vector<ReducedFraction> out;
  for (const auto& f : canonical_fractions(std::ldexp(1.0, static_cast<int>(l)))) {
    if (f.denominator() > lower) out.push_back(f);
  }
  return out;
}

IntervalSet IntervalSet::arcs(const std::vector<ReducedFraction>& centers, double halfwidth) {
  IntervalSet s;
  if (centers.empty()) return s;
  if (2.0 * halfwidth >= 1.0) {
    s.intervals_.push_back({0.0, 1.0});
    return s;
  }
  for (const auto& c : centers) {
    const double lo = c.value() - halfwidth;
    const double hi = c.value() + halfwidth;
    if (lo < 0.0) {
      s.intervals_.push_back({lo + 1.0, 1.0});
      s.intervals_.push_back({0.0, hi});
    } else if (hi >= 1.0) {
      s.intervals_.push_back({lo, 1.0});
      s.intervals_.push_back({0.0, hi - 1.0});
    } else {
      s.intervals_.push_back({lo, hi});
    }
  }
  s.normalize();
  return s;
}

void IntervalSet::normalize() {
  std::sort(intervals_.begin(), intervals_.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (const auto& iv : intervals_) {
    if (iv.hi < iv.lo) continue;
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }
  intervals_ = std::move(merged);
}

bool IntervalSet::contains(double xi) const {
  const double x = xi - std::floor(xi);
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                             [](double v, const Interval& iv) { return v < iv.lo; });
  if (it == intervals_.begin()) return false;
  return x <= std::prev(it)->hi;
}

double IntervalSet::measure() const {
  double m = 0.0;
  for (const auto& iv : intervals_) m += iv.hi - iv.lo;
  return m;
}

IntervalSet IntervalSet::minus(const IntervalSet& other) const {
  IntervalSet out;
  for (const auto& iv : intervals_) {
    double cursor = iv.lo;
    for (const auto& cut : other.intervals_) {
      if (cut.hi < cursor) continue;
      if (cut.lo > iv.hi) break;
      if (cut.lo > cursor) out.intervals_.push_back({cursor, cut.lo});
      cursor = std::max(cursor, cut.hi);
      if (cursor >= iv.hi) break;
    }
    if (cursor < iv.hi) out.intervals_.push_back({cursor, iv.hi});
  }
  out.normalize();
  return out;
}

DyadicArcs dyadic_arcs(DyadicScale scale) {
  const double two_l = std::ldexp(1.0, static_cast<int>(scale.l));
  const double halfwidth = std::ldexp(1.0, scale.m);
  ArcSystem system(two_l, halfwidth);
  IntervalSet cumulative = IntervalSet::arcs(system.centers(), halfwidth);
  IntervalSet previous_l;
  if (scale.l > 0) {
    previous_l = IntervalSet::arcs(canonical_fractions(two_l / 2.0), halfwidth);
  }
  IntervalSet shell = cumulative.minus(previous_l);
  // M_{l,<=m-1} uses the same centers with halfwidth 2^(m-1).
  IntervalSet narrower_cumulative = IntervalSet::arcs(system.centers(), halfwidth / 2.0);
  IntervalSet narrower_previous;
  if (scale.l > 0) {
    narrower_previous = IntervalSet::arcs(canonical_fractions(two_l / 2.0), halfwidth / 2.0);
  }
  IntervalSet narrower_shell = narrower_cumulative.minus(narrower_previous);
  IntervalSet annulus = shell.minus(narrower_shell);
  return {scale, std::move(system), std::move(cumulative), std::move(shell), std::move(annulus)};
}

std::vector<TorusPoint> minor_sample(const ArcSystem& arcs, std::size_t count, std::uint64_t seed) {
  require(arcs.coverage() < 0.99,
          "minor_sample: major arcs cover " + std::to_string(arcs.coverage()) +
              " of the torus (must be < 0.99)");
  std::mt19937_64 rng(seed);
  std::vector<TorusPoint> out;
  out.reserve(count);
  while (out.size() < count) {
    TorusPoint p(uniform01(rng));
    if (!classify(p, arcs).is_major) out.push_back(p);
  }
  return out;
}

}  // namespace circlelab
