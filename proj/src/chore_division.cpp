#include "fairdiv/chore_division.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

long pow2(int e) { return 1L << e; }

void validate_min_ledger(const std::vector<std::vector<Rational>>& values,
                         const std::vector<std::vector<int>>& claimed, int round) {
  const long n = static_cast<long>(values.front().size());
  const int r = static_cast<int>(values.size());
  std::vector<char> seen(n, 0);
  for (const auto& ks : claimed)
    for (int idx : ks) {
      if (seen[idx]) throw internal_error("chore_satisfying_subset: claimed sets not disjoint");
      seen[idx] = 1;
    }
  for (int j = 0; j < std::min(round, r); ++j)
    if (static_cast<long>(claimed[j].size()) < pow2(r - round))
      throw internal_error("chore_satisfying_subset: claimed-set cardinality floor breached");
  for (int j = 0; j < r; ++j) {
    if (claimed[j].empty()) continue;
    Rational best = values[j][0];
    for (long k = 1; k < n; ++k)
      if (values[j][k] < best) best = values[j][k];
    for (int idx : claimed[j])
      if (values[j][idx] != best)
        throw internal_error("chore_satisfying_subset: claimed set is not a min-preference");
  }
}

}  // namespace

ReserveSystem reserve_sets(const std::vector<StepDensity>& mus, const IntervalSet& s) {
  const int r = static_cast<int>(mus.size());
  if (r < 1) throw std::invalid_argument("reserve_sets: need at least one participant");
  std::vector<Rational> share(r);
  for (int i = 0; i < r; ++i) {
    if (!mus[i].nonnegative_on(s))
      throw std::invalid_argument("reserve_sets: density negative on the ground set");
    const Rational total = mus[i].measure(s);
    if (total == 0)
      throw std::invalid_argument("reserve_sets: participant with zero measure on the ground set");
    share[i] = total / r;
  }

  ReserveSystem sys;
  sys.ground = s;
  sys.ordering.resize(r);
  sys.reserves.resize(r);
  std::vector<char> assigned(r, 0);
  IntervalSet rest = s;
  for (int stage = 0; stage < r; ++stage) {
    std::vector<int> avail;
    for (int i = 0; i < r; ++i)
      if (!assigned[i]) avail.push_back(i);

    const int first = avail.front();
    if (mus[first].measure(rest) < share[first])
      throw internal_error("reserve_sets: stage infeasible");
    IntervalSet candidate = select_subset(mus[first], rest, share[first]);
    int last_changed = first;
    for (size_t t = 1; t < avail.size(); ++t) {
      const int p = avail[t];
      if (mus[p].measure(candidate) > share[p]) {
        candidate = select_subset(mus[p], candidate, share[p]);
        last_changed = p;
      }
    }

    if (mus[last_changed].measure(candidate) != share[last_changed])
      throw internal_error("reserve_sets: reserve share not exact");
    for (int j : avail)
      if (j != last_changed && mus[j].measure(candidate) > share[j])
        throw internal_error("reserve_sets: reserve bound breached");

    sys.ordering[stage] = last_changed;
    sys.reserves[stage] = candidate;
    assigned[last_changed] = 1;
    rest = set_subtract(rest, candidate);
  }
  return sys;
}

ChoreSubsetResult chore_satisfying_subset(const std::vector<StepDensity>& mus,
                                          const IntervalSet& s) {
  const int r = static_cast<int>(mus.size());
  if (r > 30)
    throw std::invalid_argument(
        "chore_satisfying_subset: too many participants for the 2^(r-1) split");
  ChoreSubsetResult res;
  res.reserves = reserve_sets(mus, s);
  const std::vector<int>& order = res.reserves.ordering;
  res.lead = order[0];
  const long n = pow2(r - 1);
  res.floor_value = mus[res.lead].measure(s) / n;

  std::vector<IntervalSet> sets = equal_split(mus[res.lead], res.reserves.reserves[0],
                                              static_cast<int>(n));
  std::vector<std::vector<Rational>> values(r, std::vector<Rational>(n));
  for (int pos = 0; pos < r; ++pos)
    for (long k = 0; k < n; ++k) values[pos][k] = mus[order[pos]].measure(sets[k]);

  std::vector<std::vector<int>> claimed(r);
  claimed[0].resize(n);
  std::iota(claimed[0].begin(), claimed[0].end(), 0);

  const auto snapshot = [&](int round) {
    validate_min_ledger(values, claimed, round);
    res.ledger_rounds.push_back(PreferenceLedger{round, sets, claimed});
  };
  snapshot(1);

  for (int t = 2; t <= r; ++t) {
    const int pos = t - 1;
    const long cnt = pow2(r - t);
    std::vector<int> ranked(n);
    std::iota(ranked.begin(), ranked.end(), 0);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [&](int a, int b) { return values[pos][a] < values[pos][b]; });
    std::vector<int> selected(ranked.begin(), ranked.begin() + cnt);
    const Rational target = values[pos][selected.back()];

    Rational pad_total(0);
    for (int k : selected) pad_total += target - values[pos][k];
    const Rational reserve_value = mus[order[pos]].measure(res.reserves.reserves[pos]);
    if (pad_total > reserve_value)
      throw internal_error("chore_satisfying_subset: padding infeasible");
    res.padding.push_back(PaddingRecord{t, pad_total, reserve_value});

    IntervalSet pool = res.reserves.reserves[pos];
    for (int k : selected) {
      const Rational pad = target - values[pos][k];
      if (pad > 0) {
        const IntervalSet piece = select_subset(mus[order[pos]], pool, pad);
        pool = set_subtract(pool, piece);
        sets[k] = set_union(sets[k], piece);
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

  res.local = Allocation::empty(r);
  std::vector<int> taken(r);
  for (int pos = 0; pos < r; ++pos) {
    if (claimed[pos].empty())
      throw internal_error("chore_satisfying_subset: participant without preference");
    taken[pos] = *std::min_element(claimed[pos].begin(), claimed[pos].end());
  }
  for (int pos = 0; pos < r; ++pos) {
    res.local.parts[order[pos]] = sets[taken[pos]];
    res.h = set_union(res.h, sets[taken[pos]]);
  }

  if (values[0][taken[0]] * n != mus[res.lead].measure(res.reserves.reserves[0]))
    throw internal_error("chore_satisfying_subset: lead share not exact");
  if (mus[res.lead].measure(res.h) < res.floor_value)
    throw internal_error("chore_satisfying_subset: measure floor breached");
  for (int pos = 0; pos < r; ++pos)
    for (int other = 0; other < r; ++other)
      if (values[pos][taken[pos]] > values[pos][taken[other]])
        throw internal_error("chore_satisfying_subset: local allocation not gentlemanly");
  return res;
}

DivisionResult chore_division(const std::vector<StepDensity>& mus, const IntervalSet& m,
                              const Rational& epsilon) {
  const int r = static_cast<int>(mus.size());
  if (r < 1) throw std::invalid_argument("chore_division: need at least one participant");
  if (r > 30)
    throw std::invalid_argument("chore_division: too many participants for the 2^(r-1) split");
  if (epsilon <= 0) throw std::domain_error("chore_division: epsilon must be positive");
  for (const auto& mu : mus)
    if (!mu.nonnegative_on(m))
      throw std::invalid_argument("chore_division: density negative on the ground set");

  DivisionResult res;
  res.trace.kind = TraceKind::chore_calls;
  res.trace.has_meta = true;
  res.trace.num_players = r;
  Rational initial_sum(0);
  for (const auto& mu : mus) {
    res.trace.initial_per_player.push_back(mu.measure(m));
    initial_sum += res.trace.initial_per_player.back();
  }
  res.trace.initial_averaged = initial_sum / r;

  std::vector<Allocation> pieces;
  std::vector<char> active(r, 1);
  IntervalSet work = m;

  // Per-segment state: a segment is a maximal stretch of rounds with a fixed
  // active set; freezing resets the per-lead decay bookkeeping.
  IntervalSet segment_ground = work;
  std::vector<int> lead_counts(r, 0);
  int call_index = 0;
  int absorber = -1;

  struct FreezeEvent {
    int participant;
    FreezeCertificate::Reason reason;
    IntervalSet remainder;
    std::vector<int> still_active;
  };
  std::vector<FreezeEvent> events;

  const auto freeze = [&](int who, FreezeCertificate::Reason reason) {
    active[who] = 0;
    std::vector<int> still;
    for (int i = 0; i < r; ++i)
      if (active[i]) still.push_back(i);
    events.push_back(FreezeEvent{who, reason, work, std::move(still)});
    segment_ground = work;
    std::fill(lead_counts.begin(), lead_counts.end(), 0);
  };

  while (true) {
    std::vector<int> act;
    for (int i = 0; i < r; ++i)
      if (active[i]) act.push_back(i);

    if (act.size() == 1) {
      absorber = act.front();
      break;
    }
    std::vector<Rational> act_measures(act.size());
    bool all_zero = true;
    for (size_t p = 0; p < act.size(); ++p) {
      act_measures[p] = mus[act[p]].measure(work);
      if (act_measures[p] != 0) all_zero = false;
    }
    if (all_zero) {
      absorber = act.front();
      break;
    }
    if (const auto zero = std::find(act_measures.begin(), act_measures.end(), Rational(0));
        zero != act_measures.end()) {
      freeze(act[zero - act_measures.begin()], FreezeCertificate::Reason::zero_measure);
      continue;
    }
    bool froze = false;
    for (size_t p = 0; p < act.size(); ++p) {
      if (act_measures[p] <= epsilon) {
        freeze(act[p], FreezeCertificate::Reason::epsilon);
        froze = true;
        break;
      }
    }
    if (froze) continue;

    std::vector<StepDensity> sub;
    sub.reserve(act.size());
    for (int i : act) sub.push_back(mus[i]);
    ChoreSubsetResult round = chore_satisfying_subset(sub, work);

    Allocation mapped = Allocation::empty(r);
    for (size_t p = 0; p < act.size(); ++p) mapped.parts[act[p]] = round.local.parts[p];
    pieces.push_back(std::move(mapped));

    const IntervalSet before = work;
    work = set_subtract(work, round.h);
    ++call_index;
    const int lead = act[round.lead];
    ++lead_counts[lead];
    const int a = static_cast<int>(act.size());
    const Rational q = Rational(pow2(a - 1) - 1) / pow2(a - 1);
    if (mus[lead].measure(work) > q * mus[lead].measure(before))
      throw internal_error("chore_division: lead decay breached");
    const Rational bound = pow_rational(q, lead_counts[lead]) * mus[lead].measure(segment_ground);

    TraceRow row;
    row.index = call_index;
    row.cutter = lead;
    Rational row_sum(0);
    for (int j = 0; j < r; ++j) {
      row.remainder_per_player.push_back(mus[j].measure(work));
      row_sum += row.remainder_per_player.back();
    }
    row.averaged = row_sum / r;
    row.bound = bound;
    if (row.remainder_per_player[lead] > bound)
      throw internal_error("chore_division: per-lead decay bound breached");
    res.trace.rows.push_back(std::move(row));
    res.trace.calls.push_back(
        CallSummary{lead, round.floor_value, mus[lead].measure(round.h)});
  }

  res.allocation = pieces.empty() ? Allocation::empty(r) : merge_allocations(pieces);
  res.allocation.parts[absorber] = set_union(res.allocation.parts[absorber], work);
  res.allocation.remainder = IntervalSet();
  res.absorbed_remainder = work;
  for (const auto& mu : mus) res.remainder_at_truncation.push_back(mu.measure(work));

  res.certified_bound = 0;
  for (const FreezeEvent& ev : events) {
    FreezeCertificate cert;
    cert.participant = ev.participant;
    cert.reason = ev.reason;
    cert.remainder_at_freeze = ev.remainder;
    for (int j : ev.still_active) {
      const Rational bound = mus[j].measure(set_intersect(res.allocation.parts[j], ev.remainder));
      if (bound > res.certified_bound) res.certified_bound = bound;
      cert.residual_bounds.emplace_back(j, bound);
    }
    res.freeze_certificates.push_back(std::move(cert));
  }

  // A frozen participant's own condition is exact versus everyone except
  // participants frozen before them; those pairs are the active-versus-frozen
  // deficits of the earlier freeze and carry its certificate rows.
  std::vector<int> freeze_time(r, -1);
  for (size_t t = 0; t < res.freeze_certificates.size(); ++t)
    freeze_time[res.freeze_certificates[t].participant] = static_cast<int>(t);
  const EnvyMatrix matrix = envy_matrix(mus, res.allocation);
  for (const auto& cert : res.freeze_certificates) {
    const int i = cert.participant;
    for (int j = 0; j < r; ++j) {
      if (freeze_time[j] >= 0 && freeze_time[j] < freeze_time[i]) continue;
      if (matrix.values[i][i] > matrix.values[i][j])
        throw internal_error("chore_division: frozen participant's condition not exact");
    }
  }
  if (classify_solution(matrix, Rational(0)).max_gentleman_violation > res.certified_bound)
    throw internal_error("chore_division: certificate breached");
  return res;
}

}  // namespace fairdiv
