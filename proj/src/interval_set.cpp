#include "fairdiv/interval_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace fairdiv {

namespace {

// Merges a start-sorted list of nonempty intervals in place (overlapping or
// touching neighbors coalesce).
std::vector<Interval> coalesce(std::vector<Interval> sorted) {
  std::vector<Interval> out;
  for (auto& iv : sorted) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      if (iv.hi > out.back().hi) out.back().hi = iv.hi;
    } else {
      out.push_back(std::move(iv));
    }
  }
  return out;
}

}  // namespace

IntervalSet IntervalSet::canonicalize(const std::vector<std::pair<Rational, Rational>>& raw) {
  std::vector<Interval> kept;
  kept.reserve(raw.size());
  for (const auto& [lo, hi] : raw) {
    if (lo > hi) throw std::invalid_argument("malformed interval: start exceeds end");
    if (lo < 0 || hi > 1) throw std::domain_error("interval endpoint outside [0,1]");
    if (lo == hi) continue;
    kept.push_back(Interval{lo, hi});
  }
  std::sort(kept.begin(), kept.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  return IntervalSet(coalesce(std::move(kept)));
}

IntervalSet IntervalSet::unit() { return interval(Rational(0), Rational(1)); }

IntervalSet IntervalSet::interval(const Rational& lo, const Rational& hi) {
  return canonicalize({{lo, hi}});
}

Rational IntervalSet::length() const {
  Rational total(0);
  for (const auto& iv : intervals_) total += iv.hi - iv.lo;
  return total;
}

bool IntervalSet::contains(const IntervalSet& other) const {
  return set_subtract(other, *this).empty();
}

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> merged;
  merged.reserve(a.intervals_.size() + b.intervals_.size());
  std::merge(a.intervals_.begin(), a.intervals_.end(), b.intervals_.begin(), b.intervals_.end(),
             std::back_inserter(merged),
             [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  return IntervalSet(coalesce(std::move(merged)));
}

IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> out;
  size_t i = 0, j = 0;
  while (i < a.intervals_.size() && j < b.intervals_.size()) {
    const Interval& x = a.intervals_[i];
    const Interval& y = b.intervals_[j];
    const Rational lo = std::max(x.lo, y.lo);
    const Rational hi = std::min(x.hi, y.hi);
    if (lo < hi) out.push_back(Interval{lo, hi});
    if (x.hi <= y.hi)
      ++i;
    else
      ++j;
  }
  return IntervalSet(std::move(out));  // disjoint, sorted, non-touching by construction
}

IntervalSet set_subtract(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> out;
  size_t j = 0;
  for (const Interval& x : a.intervals_) {
    Rational cursor = x.lo;
    while (j < b.intervals_.size() && b.intervals_[j].hi <= cursor) ++j;
    size_t k = j;
    while (k < b.intervals_.size() && b.intervals_[k].lo < x.hi) {
      const Interval& y = b.intervals_[k];
      if (y.lo > cursor) out.push_back(Interval{cursor, y.lo});
      if (y.hi > cursor) cursor = y.hi;
      if (y.hi >= x.hi) break;
      ++k;
    }
    if (cursor < x.hi) out.push_back(Interval{cursor, x.hi});
  }
  return IntervalSet(std::move(out));  // pieces of a canonical set stay canonical
}

bool disjoint(const IntervalSet& a, const IntervalSet& b) {
  return set_intersect(a, b).empty();
}

}  // namespace fairdiv
