#ifndef FAIRDIV_CHORE_DIVISION_HPP
#define FAIRDIV_CHORE_DIVISION_HPP

#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/interval_set.hpp"
#include "fairdiv/rational.hpp"
#include "fairdiv/step_density.hpp"
#include "fairdiv/strong_division.hpp"
#include "fairdiv/trace.hpp"

namespace fairdiv {

/// Disjoint reserves R^1..R^r inside S with the induced participant ordering
/// l_1..l_r: mu_{l_k}(R^k) = mu_{l_k}(S)/r exactly, and for every participant
/// j ordered after k, mu_{l_j}(R^k) <= mu_{l_j}(S)/r.
struct ReserveSystem {
  std::vector<int> ordering;          // ordering[k] = l_{k+1}, 0-based participant index
  std::vector<IntervalSet> reserves;  // reserves[k] = R^{k+1}
  IntervalSet ground;
};

/// Padding bookkeeping for one round t: the total measure carved out of
/// reserve R^t and the reserve's full measure (the feasibility inequality
/// pad_total <= reserve_value holds exactly on every round).
struct PaddingRecord {
  int round = 0;
  Rational pad_total;
  Rational reserve_value;
};

/// Result of one chore satisfying-subset construction: local is an exact
/// gentleman's allocation of H, the lead's measure of H is at least
/// mu_lead(S)/2^{r-1}, and the lead's own part is exactly
/// mu_lead(R^1)/2^{r-1}.
struct ChoreSubsetResult {
  IntervalSet h;
  Allocation local;
  int lead = 0;
  Rational floor_value;
  ReserveSystem reserves;
  std::vector<PreferenceLedger> ledger_rounds;
  std::vector<PaddingRecord> padding;
};

/// Builds the reserve system by successive selection and shrinking: the k-th
/// reserve starts as a 1/r-share (by the first unassigned participant's
/// measure) of the unreserved remainder and is shrunk whenever a later
/// participant's measure of it exceeds their 1/r-share of S; l_k is the last
/// participant whose step changed the candidate. Requires every density
/// nonnegative with strictly positive measure on S (std::invalid_argument
/// otherwise).
ReserveSystem reserve_sets(const std::vector<StepDensity>& mus, const IntervalSet& s);

/// Chore counterpart of the satisfying subset: splits R^1 into 2^{r-1} parts
/// equal in the lead's measure, then pads each remaining participant's
/// smallest sets from their reserve so each participant ends holding an exact
/// argmin. Same preconditions as reserve_sets.
ChoreSubsetResult chore_satisfying_subset(const std::vector<StepDensity>& mus,
                                          const IntervalSet& s);

/// Induction-on-participants driver for gentleman's division: runs
/// chore_satisfying_subset rounds over the shrinking remainder, freezing a
/// participant whenever their measure of the remainder drops to zero
/// (immediately) or below epsilon, and recursing on the rest; the last active
/// participant absorbs the residue. Frozen participants' own conditions are
/// exact; every active-versus-frozen deficit is bounded by the emitted
/// residual-intersection certificate, computed exactly. Throws
/// std::domain_error for epsilon <= 0.
DivisionResult chore_division(const std::vector<StepDensity>& mus, const IntervalSet& m,
                              const Rational& epsilon);

}  // namespace fairdiv

#endif
