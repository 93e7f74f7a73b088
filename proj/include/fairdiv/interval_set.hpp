#ifndef FAIRDIV_INTERVAL_SET_HPP
#define FAIRDIV_INTERVAL_SET_HPP

#include <utility>
#include <vector>

#include "fairdiv/rational.hpp"

namespace fairdiv {

/// Half-open interval [lo, hi) inside the unit segment.
struct Interval {
  Rational lo;
  Rational hi;

  bool operator==(const Interval&) const = default;
};

/// Finite union of disjoint half-open subintervals of [0,1), kept in canonical
/// form: sorted by start, pairwise disjoint, non-touching, every interval
/// nonempty. Canonical form is unique, so operator== is set equality.
///
/// Instances are immutable values; all set algebra returns new sets.
class IntervalSet {
 public:
  IntervalSet() = default;

  /// Builds the canonical union of raw [start,end) pairs. Degenerate pairs
  /// (start == end) are dropped; overlapping and touching pairs are merged.
  /// Throws std::domain_error if an endpoint lies outside [0,1] and
  /// std::invalid_argument if start > end.
  static IntervalSet canonicalize(const std::vector<std::pair<Rational, Rational>>& raw);

  /// The whole resource [0,1).
  static IntervalSet unit();

  /// Single interval [lo, hi); same validation as canonicalize.
  static IntervalSet interval(const Rational& lo, const Rational& hi);

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }

  /// Total length (Lebesgue measure).
  Rational length() const;

  /// True if other is a subset of *this.
  bool contains(const IntervalSet& other) const;

  bool operator==(const IntervalSet&) const = default;

  friend IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
  friend IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b);
  friend IntervalSet set_subtract(const IntervalSet& a, const IntervalSet& b);

 private:
  // Trusted constructor: input must already be canonical.
  explicit IntervalSet(std::vector<Interval> canonical) : intervals_(std::move(canonical)) {}

  std::vector<Interval> intervals_;
};

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b);
IntervalSet set_subtract(const IntervalSet& a, const IntervalSet& b);

/// True if a and b have empty intersection.
bool disjoint(const IntervalSet& a, const IntervalSet& b);

}  // namespace fairdiv

#endif
