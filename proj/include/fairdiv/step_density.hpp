#ifndef FAIRDIV_STEP_DENSITY_HPP
#define FAIRDIV_STEP_DENSITY_HPP

#include <utility>
#include <vector>

#include "fairdiv/interval_set.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

/// One constant-valued piece [lo, hi) of a step density.
struct DensityPiece {
  Rational lo;
  Rational hi;
  Rational value;

  bool operator==(const DensityPiece&) const = default;
};

/// Piecewise-constant signed density on [0,1). The pieces tile the unit
/// segment exactly; canonical form merges equal-valued neighbors. Integrating
/// the density over measurable sets realizes a non-atomic charge (or measure,
/// when the density is nonnegative).
class StepDensity {
 public:
  /// Validates that pieces tile [0,1) contiguously (first.lo == 0,
  /// next.lo == prev.hi, last.hi == 1, every piece nonempty) and merges
  /// equal-valued neighbors. Throws std::invalid_argument otherwise.
  static StepDensity from_pieces(std::vector<DensityPiece> pieces);

  /// Constant density on all of [0,1).
  static StepDensity constant(const Rational& value);

  const std::vector<DensityPiece>& pieces() const { return pieces_; }

  /// Exact signed integral over a. Additive: measure(A ⊔ B) = measure(A) + measure(B).
  Rational measure(const IntervalSet& a) const;

  /// True if every piece overlapping a (on positive length) has value >= 0.
  bool nonnegative_on(const IntervalSet& a) const;

  /// Density with all values negated.
  StepDensity negated() const;

  bool operator==(const StepDensity&) const = default;

 private:
  explicit StepDensity(std::vector<DensityPiece> canonical) : pieces_(std::move(canonical)) {}

  std::vector<DensityPiece> pieces_;
};

/// Leftmost subset B of A with measure(d, B) == delta exactly. B is the
/// prefix A ∩ [0, x*) where x* is the minimal coordinate at which the running
/// integral over A reaches delta, so zero-density stretches beyond the cut are
/// excluded; delta == 0 yields the empty set.
/// Requires d nonnegative on A (std::invalid_argument otherwise) and
/// 0 <= delta <= measure(d, A) (std::domain_error otherwise).
IntervalSet select_subset(const StepDensity& d, const IntervalSet& a, const Rational& delta);

/// Splits s into n pairwise-disjoint parts of equal d-measure whose union is
/// exactly s. Parts 1..n-1 are leftmost prefixes of the running remainder;
/// the last part is the final remainder. Requires d nonnegative on s; n >= 1
/// (std::domain_error otherwise).
std::vector<IntervalSet> equal_split(const StepDensity& d, const IntervalSet& s, int n);

/// Sign decomposition of [0,1): first component collects the pieces with
/// value > 0, second the pieces with value <= 0 (zero-valued pieces go to the
/// negative side). The two sets partition [0,1).
std::pair<IntervalSet, IntervalSet> hahn_jordan(const StepDensity& d);

}  // namespace fairdiv

#endif
