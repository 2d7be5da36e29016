#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "circlelab/common.hpp"

namespace circlelab {

/// a/q on the torus with gcd(a, q) = 1 and 0 <= a < q. 1/1 is stored as 0/1.
class ReducedFraction {
 public:
  ReducedFraction() = default;
  /// Reduces a/q and brings a into [0, q).
  ReducedFraction(std::int64_t a, std::int64_t q);

  std::int64_t numerator() const { return a_; }
  std::int64_t denominator() const { return q_; }
  double value() const { return static_cast<double>(a_) / static_cast<double>(q_); }
  std::string to_string() const { return std::to_string(a_) + "/" + std::to_string(q_); }

  friend bool operator==(const ReducedFraction&, const ReducedFraction&) = default;
  /// Exact ordering by value in [0, 1).
  friend bool operator<(const ReducedFraction& x, const ReducedFraction& y) {
    return static_cast<Int128>(x.a_) * y.q_ < static_cast<Int128>(y.a_) * x.q_;
  }

 private:
  std::int64_t a_ = 0;
  std::int64_t q_ = 1;
};

/// A point of T = R/Z, stored as its representative in [0, 1).
class TorusPoint {
 public:
  TorusPoint() = default;
  explicit TorusPoint(double xi);
  double value() const { return xi_; }

 private:
  double xi_ = 0.0;
};

/// min(|x - y|, 1 - |x - y|) after reduction mod 1.
double torus_distance(double x, double y);

/// R_{<=N1} = {a/q : 1 <= q <= floor(N1), gcd(a, q) = 1}, ascending by value.
std::vector<ReducedFraction> canonical_fractions(double N1);

/// Major arcs of halfwidth N2 around canonical_fractions(N1).
class ArcSystem {
 public:
  ArcSystem(double denominator_bound, double halfwidth);
  /// Arcs around an explicit sorted, duplicate-free center list.
  ArcSystem(std::vector<ReducedFraction> centers, double denominator_bound, double halfwidth);

  const std::vector<ReducedFraction>& centers() const { return centers_; }
  double halfwidth() const { return halfwidth_; }
  double denominator_bound() const { return denominator_bound_; }
  /// True iff every pair of centers is more than 2 * halfwidth apart on T.
  bool disjoint() const { return disjoint_; }
  /// Lebesgue measure of the union of arcs, in [0, 1].
  double coverage() const { return coverage_; }

 private:
  void summarize();

  std::vector<ReducedFraction> centers_;
  double denominator_bound_;
  double halfwidth_;
  bool disjoint_ = true;
  double coverage_ = 0.0;
};

struct Classification {
  bool is_major;
  ReducedFraction nearest;
  double distance;
};

/// Nearest center (ties: smaller denominator, then smaller numerator) and
/// whether xi lies within the halfwidth of it.
Classification classify(TorusPoint xi, const ArcSystem& arcs);

/// Sigma_l: fractions with denominator in (2^(l-1), 2^l]; Sigma_0 = {0/1}.
std::vector<ReducedFraction> dyadic_shell(unsigned l);

struct DyadicScale {
  unsigned l = 0;
  int m = 0;
};

/// Finite union of closed intervals of [0, 1), kept sorted and disjoint.
class IntervalSet {
 public:
  struct Interval {
    double lo;
    double hi;
  };

  IntervalSet() = default;
  /// Union of [c - h, c + h] (mod 1) over the centers.
  static IntervalSet arcs(const std::vector<ReducedFraction>& centers, double halfwidth);

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool contains(double xi) const;
  double measure() const;
  IntervalSet minus(const IntervalSet& other) const;

 private:
  void normalize();
  std::vector<Interval> intervals_;
};

/// M_{<=l,<=m} = arcs of halfwidth 2^m around Sigma_{<=l}, together with the
/// difference sets M_{l,<=m} = M_{<=l,<=m} \ M_{<=l-1,<=m} and
/// M_{l,m} = M_{l,<=m} \ M_{l,<=m-1}.
struct DyadicArcs {
  DyadicScale scale;
  ArcSystem system;
  IntervalSet cumulative;  // M_{<=l,<=m}
  IntervalSet shell;       // M_{l,<=m}
  IntervalSet annulus;     // M_{l,m}
};

DyadicArcs dyadic_arcs(DyadicScale scale);

/// Seeded uniform rejection sample of `count` points outside every arc.
/// Throws PreconditionError when the arcs cover at least 99% of the torus.
std::vector<TorusPoint> minor_sample(const ArcSystem& arcs, std::size_t count, std::uint64_t seed);

}  // namespace circlelab
