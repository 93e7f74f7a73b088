#include "fairdiv/step_density.hpp"

#include <stdexcept>

namespace fairdiv {

StepDensity StepDensity::from_pieces(std::vector<DensityPiece> pieces) {
  if (pieces.empty()) throw std::invalid_argument("density has no pieces");
  if (pieces.front().lo != 0) throw std::invalid_argument("density does not start at 0");
  for (size_t i = 0; i < pieces.size(); ++i) {
    if (!(pieces[i].lo < pieces[i].hi))
      throw std::invalid_argument("density piece " + std::to_string(i) + " is empty or reversed");
    if (i + 1 < pieces.size() && pieces[i].hi != pieces[i + 1].lo)
      throw std::invalid_argument("density has a gap or overlap after piece " + std::to_string(i));
  }
  if (pieces.back().hi != 1) throw std::invalid_argument("density does not end at 1");

  std::vector<DensityPiece> merged;
  merged.reserve(pieces.size());
  for (auto& p : pieces) {
    if (!merged.empty() && merged.back().value == p.value)
      merged.back().hi = p.hi;
    else
      merged.push_back(std::move(p));
  }
  return StepDensity(std::move(merged));
}

StepDensity StepDensity::constant(const Rational& value) {
  return StepDensity({DensityPiece{Rational(0), Rational(1), value}});
}

Rational StepDensity::measure(const IntervalSet& a) const {
  Rational total(0);
  size_t i = 0;
  for (const Interval& iv : a.intervals()) {
    while (i < pieces_.size() && pieces_[i].hi <= iv.lo) ++i;
    for (size_t k = i; k < pieces_.size() && pieces_[k].lo < iv.hi; ++k) {
      const DensityPiece& p = pieces_[k];
      const Rational lo = std::max(p.lo, iv.lo);
      const Rational hi = std::min(p.hi, iv.hi);
      if (lo < hi) total += p.value * (hi - lo);
    }
  }
  return total;
}

bool StepDensity::nonnegative_on(const IntervalSet& a) const {
  for (const Interval& iv : a.intervals())
    for (const DensityPiece& p : pieces_)
      if (p.value < 0 && std::max(p.lo, iv.lo) < std::min(p.hi, iv.hi)) return false;
  return true;
}

StepDensity StepDensity::negated() const {
  std::vector<DensityPiece> out = pieces_;
  for (auto& p : out) p.value = -p.value;
  return StepDensity(std::move(out));
}

IntervalSet select_subset(const StepDensity& d, const IntervalSet& a, const Rational& delta) {
  if (!d.nonnegative_on(a)) throw std::invalid_argument("select_subset: density negative on the set");
  if (delta < 0) throw std::domain_error("select_subset: negative target measure");
  if (delta > d.measure(a)) throw std::domain_error("select_subset: target exceeds available measure");
  if (delta == 0) return IntervalSet();

  // Walk the positive-density overlap segments left to right; the cut lands
  // at the minimal coordinate where the running integral reaches delta.
  Rational acc(0);
  size_t i = 0;
  const auto& pieces = d.pieces();
  for (const Interval& iv : a.intervals()) {
    while (i < pieces.size() && pieces[i].hi <= iv.lo) ++i;
    for (size_t k = i; k < pieces.size() && pieces[k].lo < iv.hi; ++k) {
      const DensityPiece& p = pieces[k];
      const Rational lo = std::max(p.lo, iv.lo);
      const Rational hi = std::min(p.hi, iv.hi);
      if (!(lo < hi) || p.value == 0) continue;
      const Rational mass = p.value * (hi - lo);
      if (acc + mass < delta) {
        acc += mass;
        continue;
      }
      const Rational cut = lo + (delta - acc) / p.value;
      return set_intersect(a, IntervalSet::interval(Rational(0), cut));
    }
  }
  throw std::domain_error("select_subset: target exceeds available measure");
}

std::vector<IntervalSet> equal_split(const StepDensity& d, const IntervalSet& s, int n) {
  if (n < 1) throw std::domain_error("equal_split: need at least one part");
  if (!d.nonnegative_on(s)) throw std::invalid_argument("equal_split: density negative on the set");
  const Rational share = d.measure(s) / n;
  std::vector<IntervalSet> parts;
  parts.reserve(n);
  IntervalSet rest = s;
  for (int i = 0; i + 1 < n; ++i) {
    IntervalSet part = select_subset(d, rest, share);
    rest = set_subtract(rest, part);
    parts.push_back(std::move(part));
  }
  parts.push_back(std::move(rest));
  return parts;
}

std::pair<IntervalSet, IntervalSet> hahn_jordan(const StepDensity& d) {
  std::vector<std::pair<Rational, Rational>> plus, minus;
  for (const DensityPiece& p : d.pieces())
    (p.value > 0 ? plus : minus).emplace_back(p.lo, p.hi);
  return {IntervalSet::canonicalize(plus), IntervalSet::canonicalize(minus)};
}

}  // namespace fairdiv
