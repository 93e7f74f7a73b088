#ifndef FAIRDIV_CHARGE_DIVISION_HPP
#define FAIRDIV_CHARGE_DIVISION_HPP

#include <string>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/interval_set.hpp"
#include "fairdiv/rational.hpp"
#include "fairdiv/step_density.hpp"
#include "fairdiv/trace.hpp"

namespace fairdiv {

enum class Sign { plus, minus };

/// A region of [0,1) on which every charge has a fixed sign: participants in
/// i_plus() have strictly positive density on the cell, those in i_minus()
/// have density <= 0 there.
struct SignCell {
  IntervalSet cell;
  std::vector<Sign> signs;  // signs[i] for participant i

  std::vector<int> i_plus() const;
  std::vector<int> i_minus() const;
};

/// Outcome of dividing one sign cell: a total allocation of the cell (all r
/// parts, empty remainder), the sub-engine used, the participants the
/// sub-engine actually ran on, its full result, and the cell's exact
/// certified bound on the strong condition over the original charges.
struct CellOutcome {
  SignCell cell;
  std::string engine;                 // "strong" or "chore"
  std::vector<int> sub_participants;  // original indices, in sub-engine order
  Allocation allocation;              // parts indexed by original participant
  DivisionResult detail;              // in sub-engine index space
  Rational certified_bound;
};

/// Final result for a set of signed charges: the merged total allocation, the
/// per-cell outcomes, the exact envy matrix over the signed charges, and the
/// certified strong bound (sum of per-cell bounds).
struct ChargeDivisionResult {
  Allocation allocation;
  std::vector<CellOutcome> cells;
  EnvyMatrix matrix;
  Rational max_strong_violation;
  Rational certified_bound;
  IntervalSet absorbed_remainder;
  std::vector<Rational> remainder_at_truncation;
};

/// Intersects the per-charge sign decompositions into the nonempty cells.
/// The returned cells are pairwise disjoint, cover [0,1) exactly, and are
/// ordered by leftmost point.
std::vector<SignCell> sign_cells(const std::vector<StepDensity>& charges);

/// Divides one cell: when some participant is positive there, the positive
/// participants split it with the envy-free engine and the rest receive
/// nothing (their conditions hold exactly); when all are nonpositive, the
/// negated densities are split with the chore engine. Throws
/// std::domain_error on an empty cell or epsilon_cell <= 0.
CellOutcome divide_cell(const std::vector<StepDensity>& charges, const SignCell& cell,
                        const Rational& epsilon_cell);

/// Full charge division: sign cells, per-cell dispatch with the epsilon
/// budget split evenly across cells, and the global merge. The exact maximal
/// strong violation of the result is at most the certified bound.
ChargeDivisionResult divide_charges(const std::vector<StepDensity>& charges,
                                    const Rational& epsilon);

}  // namespace fairdiv

#endif
