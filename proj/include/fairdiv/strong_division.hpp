#ifndef FAIRDIV_STRONG_DIVISION_HPP
#define FAIRDIV_STRONG_DIVISION_HPP

#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/interval_set.hpp"
#include "fairdiv/rational.hpp"
#include "fairdiv/step_density.hpp"
#include "fairdiv/trace.hpp"

namespace fairdiv {

/// State of the preference bookkeeping after one trimming (or padding) round.
/// Positions are in the construction's relabelled order (cutter or lead
/// first); sets are the current collection A_1..A_{2^{r-1}}; claimed[i] lists
/// the set indices currently held as position i's preferences.
struct PreferenceLedger {
  int round = 0;
  std::vector<IntervalSet> sets;
  std::vector<std::vector<int>> claimed;
};

/// Result of one satisfying-subset construction: H carries at least
/// 2^{-(r-1)} of the cutter's measure of S, and local is an exact envy-free
/// allocation of H (parts indexed by original participant, empty remainder).
struct SatisfyingSubsetResult {
  IntervalSet h;
  Allocation local;
  int cutter = 0;
  Rational floor_value;
  std::vector<PreferenceLedger> ledger_rounds;
};

struct ThreePlayerRound {
  Allocation partial;     // 3 parts over S minus the trimmed residue, empty remainder
  IntervalSet remainder;  // trimmed residue, subset of the cutter's collection
};

/// Two-participant envy-free division of S: participant 0 halves S by their
/// own measure, participant 1 takes their preferred half (ties -> the first
/// half). Exact, empty remainder. Requires both densities nonnegative on S.
Allocation cut_and_choose(const StepDensity& mu1, const StepDensity& mu2, const IntervalSet& s);

/// One trim-and-choose round for three participants: the cutter splits S into
/// thirds by their measure, the next participant (lowest remaining index)
/// trims the third they value most down to their second-best, the last
/// participant picks first. The partial allocation is exactly envy-free and
/// the residue satisfies mu_cutter(remainder) <= mu_cutter(S)/3.
ThreePlayerRound three_player_round(const std::vector<StepDensity>& mus, const IntervalSet& s,
                                    int cutter);

/// Satisfying-subset construction: splits S into 2^{r-1} parts equal in the
/// cutter's measure, then for each remaining participant (ascending index)
/// trims their top sets so each participant ends holding an exact argmax.
/// mu_cutter(H) >= mu_cutter(S)/2^{r-1}, with the cutter's own part exactly
/// mu_cutter(S)/2^{r-1}. When mu_cutter(S) == 0 returns H = ∅ with an
/// all-empty allocation.
SatisfyingSubsetResult satisfying_subset(const std::vector<StepDensity>& mus, int cutter,
                                         const IntervalSet& s);

/// Round-robin driver: repeats satisfying_subset with the cutter cycling over
/// all participants until every participant's measure of the remainder is at
/// most epsilon, then absorbs the residue into participant 0's part. The
/// averaged remainder after outer round s provably satisfies
/// mu_bar(M_s) <= ((2^{r-1}-1)/2^{r-1})^s mu_bar(M); the trace records the
/// exact check per round. Throws std::domain_error for epsilon <= 0 and
/// internal_error if a bound is ever breached (unreachable).
DivisionResult strong_division(const std::vector<StepDensity>& mus, const IntervalSet& m,
                               const Rational& epsilon);

/// Alternative three-participant driver: iterates three_player_round with a
/// rotating cutter until every remainder measure is at most epsilon, then
/// absorbs the residue into participant 0's part.
DivisionResult three_player_division(const std::vector<StepDensity>& mus, const IntervalSet& m,
                                     const Rational& epsilon);

}  // namespace fairdiv

#endif
