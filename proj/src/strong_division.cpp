#include "fairdiv/strong_division.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

void require_nonnegative(const std::vector<StepDensity>& mus, const IntervalSet& s,
                         const char* who) {
  for (const auto& mu : mus)
    if (!mu.nonnegative_on(s))
      throw std::invalid_argument(std::string(who) + ": density negative on the ground set");
}

long pow2(int e) { return 1L << e; }

Rational average(const std::vector<Rational>& v) {
  Rational sum(0);
  for (const auto& x : v) sum += x;
  return sum / static_cast<long>(v.size());
}

// Checks the three bookkeeping invariants after a trimming/padding round:
// claimed sets pairwise disjoint, |claimed[j]| >= 2^{r-t} for j <= t, and
// every claimed index achieving the position's extremum over current sets.
void validate_ledger(const std::vector<std::vector<Rational>>& values,
                     const std::vector<std::vector<int>>& claimed, int round, bool maximize,
                     const char* who) {
  const long n = static_cast<long>(values.front().size());
  const int r = static_cast<int>(values.size());
  std::vector<char> seen(n, 0);
  for (const auto& k : claimed)
    for (int idx : k) {
      if (seen[idx]) throw internal_error(std::string(who) + ": claimed sets not disjoint");
      seen[idx] = 1;
    }
  for (int j = 0; j < std::min(round, r); ++j)
    if (static_cast<long>(claimed[j].size()) < pow2(r - round))
      throw internal_error(std::string(who) + ": claimed-set cardinality floor breached");
  for (int j = 0; j < r; ++j) {
    if (claimed[j].empty()) continue;
    Rational best = values[j][0];
    for (long k = 1; k < n; ++k)
      if (maximize ? values[j][k] > best : values[j][k] < best) best = values[j][k];
    for (int idx : claimed[j])
      if (values[j][idx] != best)
        throw internal_error(std::string(who) + ": claimed set is not a preference");
  }
}

}  // namespace

Allocation cut_and_choose(const StepDensity& mu1, const StepDensity& mu2, const IntervalSet& s) {
  require_nonnegative({mu1, mu2}, s, "cut_and_choose");
  const IntervalSet first = select_subset(mu1, s, mu1.measure(s) / 2);
  const IntervalSet second = set_subtract(s, first);
  Allocation out = Allocation::empty(2);
  if (mu2.measure(first) >= mu2.measure(second)) {
    out.parts[1] = first;
    out.parts[0] = second;
  } else {
    out.parts[1] = second;
    out.parts[0] = first;
  }
  return out;
}

ThreePlayerRound three_player_round(const std::vector<StepDensity>& mus, const IntervalSet& s,
                                    int cutter) {
  if (mus.size() != 3) throw std::invalid_argument("three_player_round: need exactly 3 participants");
  if (cutter < 0 || cutter >= 3)
    throw std::invalid_argument("three_player_round: cutter out of range");
  require_nonnegative(mus, s, "three_player_round");
  const int trimmer = cutter == 0 ? 1 : 0;
  const int chooser = cutter == 2 ? 1 : 2;

  const std::vector<IntervalSet> thirds = equal_split(mus[cutter], s, 3);
  std::vector<Rational> by_trimmer(3);
  for (int k = 0; k < 3; ++k) by_trimmer[k] = mus[trimmer].measure(thirds[k]);
  std::vector<int> idx{0, 1, 2};
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return by_trimmer[a] > by_trimmer[b]; });
  const int i1 = idx[0], i2 = idx[1], i3 = idx[2];

  const IntervalSet trimmed = select_subset(mus[trimmer], thirds[i1], by_trimmer[i2]);
  const IntervalSet residue = set_subtract(thirds[i1], trimmed);

  // Chooser picks their best of {trimmed third, second, third}; ties go to
  // the candidate carved from the lowest-indexed third.
  const IntervalSet* candidates[3] = {&trimmed, &thirds[i2], &thirds[i3]};
  const int origin[3] = {i1, i2, i3};
  int pick = 0;
  Rational best = mus[chooser].measure(trimmed);
  for (int c = 1; c < 3; ++c) {
    const Rational v = mus[chooser].measure(*candidates[c]);
    if (v > best || (v == best && origin[c] < origin[pick])) {
      best = v;
      pick = c;
    }
  }

  Allocation partial = Allocation::empty(3);
  partial.parts[chooser] = *candidates[pick];
  if (pick == 0) {
    partial.parts[cutter] = thirds[i3];
    partial.parts[trimmer] = thirds[i2];
  } else if (pick == 1) {
    partial.parts[cutter] = thirds[i3];
    partial.parts[trimmer] = trimmed;
  } else {
    partial.parts[cutter] = thirds[i2];
    partial.parts[trimmer] = trimmed;
  }

  if (mus[cutter].measure(residue) * 3 > mus[cutter].measure(s))
    throw internal_error("three_player_round: residue bound breached");
  if (!classify_solution(envy_matrix(mus, partial), Rational(0)).strong)
    throw internal_error("three_player_round: partial allocation not envy-free");
  return ThreePlayerRound{std::move(partial), residue};
}

SatisfyingSubsetResult satisfying_subset(const std::vector<StepDensity>& mus, int cutter,
                                         const IntervalSet& s) {
  const int r = static_cast<int>(mus.size());
  if (r < 1) throw std::invalid_argument("satisfying_subset: need at least one participant");
  if (r > 30)
    throw std::invalid_argument("satisfying_subset: too many participants for the 2^(r-1) split");
  if (cutter < 0 || cutter >= r)
    throw std::invalid_argument("satisfying_subset: cutter out of range");
  require_nonnegative(mus, s, "satisfying_subset");

  SatisfyingSubsetResult res;
  res.cutter = cutter;
  res.local = Allocation::empty(r);
  const long n = pow2(r - 1);
  const Rational cutter_total = mus[cutter].measure(s);
  res.floor_value = cutter_total / n;
  if (cutter_total == 0) return res;  // H = ∅, all-empty allocation

  // Relabel so the cutter sits at position 0, the rest in ascending order.
  std::vector<int> order;
  order.reserve(r);
  order.push_back(cutter);
  for (int i = 0; i < r; ++i)
    if (i != cutter) order.push_back(i);

  std::vector<IntervalSet> sets = equal_split(mus[cutter], s, static_cast<int>(n));
  std::vector<std::vector<Rational>> values(r, std::vector<Rational>(n));
  for (int pos = 0; pos < r; ++pos)
    for (long k = 0; k < n; ++k) values[pos][k] = mus[order[pos]].measure(sets[k]);

  std::vector<std::vector<int>> claimed(r);
  claimed[0].resize(n);
  std::iota(claimed[0].begin(), claimed[0].end(), 0);

  const auto snapshot = [&](int round) {
    validate_ledger(values, claimed, round, /*maximize=*/true, "satisfying_subset");
    res.ledger_rounds.push_back(PreferenceLedger{round, sets, claimed});
  };
  snapshot(1);

  for (int t = 2; t <= r; ++t) {
    const int pos = t - 1;
    const long cnt = pow2(r - t);
    std::vector<int> ranked(n);
    std::iota(ranked.begin(), ranked.end(), 0);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [&](int a, int b) { return values[pos][a] > values[pos][b]; });
    std::vector<int> selected(ranked.begin(), ranked.begin() + cnt);
    const Rational target = values[pos][selected.back()];
    for (int k : selected) {
      if (values[pos][k] > target) {
        sets[k] = select_subset(mus[order[pos]], sets[k], target);
        for (int p = 0; p < r; ++p) values[p][k] = mus[order[p]].measure(sets[k]);
      }
    }
    std::vector<char> in_selected(n, 0);
    for (int k : selected) in_selected[k] = 1;
    for (int i = 0; i < r; ++i) {
      if (i == pos) continue;
      auto& ks = claimed[i];
      ks.erase(std::remove_if(ks.begin(), ks.end(), [&](int k) { return in_selected[k] != 0; }),
               ks.end());
    }
    std::sort(selected.begin(), selected.end());
    claimed[pos] = std::move(selected);
    snapshot(t);
  }

  std::vector<int> taken(r);
  for (int pos = 0; pos < r; ++pos) {
    if (claimed[pos].empty()) throw internal_error("satisfying_subset: participant without preference");
    taken[pos] = *std::min_element(claimed[pos].begin(), claimed[pos].end());
  }
  for (int pos = 0; pos < r; ++pos) {
    res.local.parts[order[pos]] = sets[taken[pos]];
    res.h = set_union(res.h, sets[taken[pos]]);
  }

  if (values[0][taken[0]] != res.floor_value)
    throw internal_error("satisfying_subset: cutter share not exact");
  if (mus[cutter].measure(res.h) < res.floor_value)
    throw internal_error("satisfying_subset: measure floor breached");
  for (int pos = 0; pos < r; ++pos)
    for (int other = 0; other < r; ++other)
      if (values[pos][taken[pos]] < values[pos][taken[other]])
        throw internal_error("satisfying_subset: local allocation not envy-free");
  return res;
}

namespace {

// Shared driver skeleton: repeatedly removes exactly-solved pieces from the
// work set until every remainder measure is at most epsilon, then absorbs the
// residue into participant 0's part. `run_round` performs one outer round on
// the work set and returns the ground it solved.
template <typename RunRound>
DivisionResult run_to_epsilon(const std::vector<StepDensity>& mus, const IntervalSet& m,
                              const Rational& epsilon, const Rational& decay, const char* who,
                              RunRound run_round) {
  const int r = static_cast<int>(mus.size());
  DivisionResult res;
  res.trace.kind = TraceKind::strong_rounds;
  res.trace.has_meta = true;
  res.trace.num_players = r;
  for (const auto& mu : mus) res.trace.initial_per_player.push_back(mu.measure(m));
  res.trace.initial_averaged = average(res.trace.initial_per_player);
  res.trace.decay_factor = decay;

  IntervalSet work = m;
  std::vector<Rational> rem = res.trace.initial_per_player;
  const auto worst = [&] { return *std::max_element(rem.begin(), rem.end()); };

  std::vector<Allocation> pieces;
  int round = 0;
  while (worst() > epsilon) {
    ++round;
    const IntervalSet before = work;
    const int first_cutter = run_round(work, pieces, res.trace);
    for (int j = 0; j < r; ++j) rem[j] = mus[j].measure(work);
    const Rational averaged = average(rem);
    const Rational bound = pow_rational(decay, round) * res.trace.initial_averaged;
    if (averaged > bound) throw internal_error(std::string(who) + ": decay bound breached");
    if (work == before && worst() > epsilon)
      throw internal_error(std::string(who) + ": full round made no progress");
    res.trace.rows.push_back(TraceRow{round, first_cutter, rem, averaged, bound});
  }

  res.absorbed_remainder = work;
  res.remainder_at_truncation = rem;
  res.certified_bound = worst();
  res.allocation = pieces.empty() ? Allocation::empty(r) : merge_allocations(pieces);
  res.allocation.parts[0] = set_union(res.allocation.parts[0], work);
  res.allocation.remainder = IntervalSet();
  return res;
}

}  // namespace

DivisionResult strong_division(const std::vector<StepDensity>& mus, const IntervalSet& m,
                               const Rational& epsilon) {
  const int r = static_cast<int>(mus.size());
  if (r < 1) throw std::invalid_argument("strong_division: need at least one participant");
  if (r > 30)
    throw std::invalid_argument("strong_division: too many participants for the 2^(r-1) split");
  if (epsilon <= 0) throw std::domain_error("strong_division: epsilon must be positive");
  require_nonnegative(mus, m, "strong_division");
  const Rational decay = Rational(pow2(r - 1) - 1) / pow2(r - 1);

  return run_to_epsilon(mus, m, epsilon, decay, "strong_division",
                        [&](IntervalSet& work, std::vector<Allocation>& pieces,
                            ConvergenceTrace& trace) {
                          for (int cutter = 0; cutter < r; ++cutter) {
                            SatisfyingSubsetResult sub = satisfying_subset(mus, cutter, work);
                            trace.calls.push_back(CallSummary{cutter, sub.floor_value,
                                                              mus[cutter].measure(sub.h)});
                            if (!sub.h.empty()) {
                              work = set_subtract(work, sub.h);
                              pieces.push_back(std::move(sub.local));
                            }
                          }
                          return 0;
                        });
}

DivisionResult three_player_division(const std::vector<StepDensity>& mus, const IntervalSet& m,
                                     const Rational& epsilon) {
  if (mus.size() != 3)
    throw std::invalid_argument("three_player_division: need exactly 3 participants");
  if (epsilon <= 0) throw std::domain_error("three_player_division: epsilon must be positive");
  require_nonnegative(mus, m, "three_player_division");

  return run_to_epsilon(mus, m, epsilon, Rational(1, 3), "three_player_division",
                        [&](IntervalSet& work, std::vector<Allocation>& pieces,
                            ConvergenceTrace& trace) {
                          for (int cutter = 0; cutter < 3; ++cutter) {
                            ThreePlayerRound round = three_player_round(mus, work, cutter);
                            trace.calls.push_back(
                                CallSummary{cutter, mus[cutter].measure(work) / 3,
                                            mus[cutter].measure(round.partial.ground())});
                            pieces.push_back(std::move(round.partial));
                            work = round.remainder;
                          }
                          return 0;
                        });
}

}  // namespace fairdiv
