#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fairdiv/errors.hpp"
#include "fairdiv/strong_division.hpp"
#include "testing_support.hpp"

using namespace fairdiv;
using namespace fairdiv::testing;

namespace {

Rational rat(long n, long d = 1) { return make_rational(n, d); }

const StepDensity kUniform = StepDensity::constant(rat(1));

StepDensity block(long lo_num, long hi_num, long den, long value) {
  // `value` on [lo,hi), zero elsewhere
  std::vector<DensityPiece> pieces;
  const Rational lo = rat(lo_num, den), hi = rat(hi_num, den);
  if (lo > 0) pieces.push_back({rat(0), lo, rat(0)});
  pieces.push_back({lo, hi, rat(value)});
  if (hi < 1) pieces.push_back({hi, rat(1), rat(0)});
  return StepDensity::from_pieces(pieces);
}

bool exact_strong(const std::vector<StepDensity>& mus, const Allocation& alloc) {
  return classify_solution(envy_matrix(mus, alloc), rat(0)).strong;
}

// Re-checks the bookkeeping invariants of a recorded ledger round against the
// recorded sets, independently of the engine's internal validation.
void check_ledger(const PreferenceLedger& ledger, const std::vector<StepDensity>& by_position,
                  int r) {
  const long n = static_cast<long>(ledger.sets.size());
  std::vector<char> seen(n, 0);
  for (const auto& ks : ledger.claimed)
    for (int k : ks) {
      CHECK_FALSE(seen[k]);
      seen[k] = 1;
    }
  for (int j = 0; j < std::min(ledger.round, r); ++j)
    CHECK(static_cast<long>(ledger.claimed[j].size()) >= (1L << (r - ledger.round)));
  for (int j = 0; j < r; ++j) {
    if (ledger.claimed[j].empty()) continue;
    Rational best = by_position[j].measure(ledger.sets[0]);
    for (long k = 1; k < n; ++k)
      best = std::max(best, by_position[j].measure(ledger.sets[k]));
    for (int k : ledger.claimed[j]) CHECK(by_position[j].measure(ledger.sets[k]) == best);
  }
}

}  // namespace

TEST_CASE("cut_and_choose splits symmetric valuations evenly") {
  const Allocation alloc = cut_and_choose(kUniform, kUniform, IntervalSet::unit());
  CHECK(alloc.parts[1] == IntervalSet::interval(rat(0), rat(1, 2)));  // tie -> first half
  CHECK(alloc.parts[0] == IntervalSet::interval(rat(1, 2), rat(1)));
  CHECK(alloc.remainder.empty());
  CHECK(exact_strong({kUniform, kUniform}, alloc));
}

TEST_CASE("cut_and_choose lets the second participant pick the heavier half") {
  const StepDensity mu1 = block(0, 1, 2, 2);
  const Allocation alloc = cut_and_choose(mu1, kUniform, IntervalSet::unit());
  CHECK(alloc.parts[0] == IntervalSet::interval(rat(0), rat(1, 4)));
  CHECK(alloc.parts[1] == IntervalSet::interval(rat(1, 4), rat(1)));
  CHECK(exact_strong({mu1, kUniform}, alloc));
}

TEST_CASE("cut_and_choose with a zero valuation falls back to the tie rule") {
  const StepDensity zero = StepDensity::constant(rat(0));
  const Allocation alloc = cut_and_choose(kUniform, zero, IntervalSet::unit());
  CHECK(alloc.parts[1] == IntervalSet::interval(rat(0), rat(1, 2)));
  CHECK(exact_strong({kUniform, zero}, alloc));
  CHECK_THROWS_AS(cut_and_choose(StepDensity::constant(rat(-1)), kUniform, IntervalSet::unit()),
                  std::invalid_argument);
}

TEST_CASE("cut_and_choose is exactly envy-free on random instances") {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const StepDensity mu1 = random_density(rng, 8, false);
    const StepDensity mu2 = random_density(rng, 8, false);
    const IntervalSet s = random_set(rng);
    const Allocation alloc = cut_and_choose(mu1, mu2, s);
    CHECK(alloc.ground() == s);
    CHECK(exact_strong({mu1, mu2}, alloc));
  }
}

TEST_CASE("three_player_round with identical uniforms needs no trim") {
  const std::vector<StepDensity> mus{kUniform, kUniform, kUniform};
  const ThreePlayerRound round = three_player_round(mus, IntervalSet::unit(), 0);
  CHECK(round.remainder.empty());
  CHECK(round.partial.parts[2] == IntervalSet::interval(rat(0), rat(1, 3)));
  CHECK(round.partial.parts[1] == IntervalSet::interval(rat(1, 3), rat(2, 3)));
  CHECK(round.partial.parts[0] == IntervalSet::interval(rat(2, 3), rat(1)));
  CHECK(exact_strong(mus, round.partial));
}

TEST_CASE("three_player_round trims a concentrated second valuation to nothing") {
  const std::vector<StepDensity> mus{kUniform, block(0, 1, 3, 3), kUniform};
  const ThreePlayerRound round = three_player_round(mus, IntervalSet::unit(), 0);
  // participant 1 values only the first third; trimming it to the runner-up
  // value 0 empties it, so the whole first third is left over
  CHECK(round.remainder == IntervalSet::interval(rat(0), rat(1, 3)));
  CHECK(exact_strong(mus, round.partial));
  CHECK(round.partial.ground() == IntervalSet::interval(rat(1, 3), rat(1)));
}

TEST_CASE("three_player_round cuts the cutter's own remainder by a factor of three") {
  Rng rng(32);
  for (int i = 0; i < 60; ++i) {
    std::vector<StepDensity> mus;
    for (int k = 0; k < 3; ++k) mus.push_back(random_density(rng, 8, false));
    const IntervalSet s = random_set(rng);
    for (int cutter = 0; cutter < 3; ++cutter) {
      const ThreePlayerRound round = three_player_round(mus, s, cutter);
      CHECK(mus[cutter].measure(round.remainder) * 3 <= mus[cutter].measure(s));
      CHECK(exact_strong(mus, round.partial));
      CHECK(set_union(round.partial.ground(), round.remainder) == s);
    }
  }
  CHECK_THROWS_AS(three_player_round({kUniform, kUniform}, IntervalSet::unit(), 0),
                  std::invalid_argument);
}

TEST_CASE("satisfying_subset hand trace for two participants") {
  const StepDensity mu2 = block(1, 2, 2, 2);
  const SatisfyingSubsetResult res = satisfying_subset({kUniform, mu2}, 0, IntervalSet::unit());
  CHECK(res.h == IntervalSet::unit());
  CHECK(res.local.parts[0] == IntervalSet::interval(rat(0), rat(1, 2)));
  CHECK(res.local.parts[1] == IntervalSet::interval(rat(1, 2), rat(1)));
  CHECK(res.floor_value == rat(1, 2));
  CHECK(exact_strong({kUniform, mu2}, res.local));
}

TEST_CASE("satisfying_subset hand trace for three uniform participants") {
  const std::vector<StepDensity> mus{kUniform, kUniform, kUniform};
  const SatisfyingSubsetResult res = satisfying_subset(mus, 0, IntervalSet::unit());
  // quarters; ties send quarter 1 to participant 3, quarter 2 to participant
  // 2, quarter 3 to the cutter
  CHECK(res.local.parts[2] == IntervalSet::interval(rat(0), rat(1, 4)));
  CHECK(res.local.parts[1] == IntervalSet::interval(rat(1, 4), rat(1, 2)));
  CHECK(res.local.parts[0] == IntervalSet::interval(rat(1, 2), rat(3, 4)));
  CHECK(res.h == IntervalSet::interval(rat(0), rat(3, 4)));
  CHECK(res.floor_value == rat(1, 4));
  CHECK(mus[0].measure(res.h) == rat(3, 4));
  CHECK(exact_strong(mus, res.local));
}

TEST_CASE("satisfying_subset degenerates to nothing when the cutter values nothing") {
  const SatisfyingSubsetResult res =
      satisfying_subset({StepDensity::constant(rat(0)), kUniform}, 0, IntervalSet::unit());
  CHECK(res.h.empty());
  for (const auto& part : res.local.parts) CHECK(part.empty());
}

TEST_CASE("satisfying_subset invariants on random instances") {
  Rng rng(33);
  for (int i = 0; i < 40; ++i) {
    const int r = static_cast<int>(rng.uniform(2, 4));
    std::vector<StepDensity> mus;
    for (int k = 0; k < r; ++k) mus.push_back(random_density(rng, 8, false));
    const IntervalSet s = random_set(rng);
    const int cutter = static_cast<int>(rng.uniform(0, r - 1));
    const SatisfyingSubsetResult res = satisfying_subset(mus, cutter, s);

    CHECK(s.contains(res.h));
    CHECK(mus[cutter].measure(res.h) >= res.floor_value);
    CHECK(mus[cutter].measure(res.local.parts[cutter]) == res.floor_value);
    CHECK(exact_strong(mus, res.local));
    CHECK(res.local.remainder.empty());
    CHECK(res.local.ground() == res.h);

    std::vector<StepDensity> by_position{mus[cutter]};
    for (int k = 0; k < r; ++k)
      if (k != cutter) by_position.push_back(mus[k]);
    for (const PreferenceLedger& ledger : res.ledger_rounds) check_ledger(ledger, by_position, r);
    if (mus[cutter].measure(s) > 0) CHECK(static_cast<int>(res.ledger_rounds.size()) == r);
  }
}

TEST_CASE("strong_division solves two uniform participants in one round") {
  const std::vector<StepDensity> mus{kUniform, kUniform};
  const DivisionResult res = strong_division(mus, IntervalSet::unit(), rat(1, 1000));
  CHECK(res.trace.rows.size() == 1);
  CHECK(res.remainder_at_truncation == std::vector<Rational>{rat(0), rat(0)});
  CHECK(res.certified_bound == rat(0));
  CHECK(res.allocation.ground() == IntervalSet::unit());
  CHECK(exact_strong(mus, res.allocation));
}

TEST_CASE("strong_division r=2 ends exactly after the first round") {
  Rng rng(34);
  for (int i = 0; i < 40; ++i) {
    const std::vector<StepDensity> mus{random_density(rng, 8, false),
                                       random_density(rng, 8, false)};
    const DivisionResult res = strong_division(mus, IntervalSet::unit(), rat(1, 1000));
    // with two participants the satisfying subset covers the whole remainder
    CHECK(res.certified_bound == rat(0));
    CHECK(exact_strong(mus, res.allocation));
    for (const TraceRow& row : res.trace.rows)
      CHECK(row.averaged <= pow_rational(rat(1, 2), row.index) * res.trace.initial_averaged);
  }
}

TEST_CASE("strong_division reaches epsilon for three uniform participants") {
  const std::vector<StepDensity> mus{kUniform, kUniform, kUniform};
  const DivisionResult res = strong_division(mus, IntervalSet::unit(), rat(1, 100));
  CHECK(!res.trace.rows.empty());
  for (const TraceRow& row : res.trace.rows) {
    CHECK(row.averaged <= row.bound);
    CHECK(row.bound == pow_rational(rat(3, 4), row.index) * res.trace.initial_averaged);
  }
  for (const Rational& v : res.remainder_at_truncation) CHECK(v <= rat(1, 100));
  CHECK(res.allocation.ground() == IntervalSet::unit());
  const SolutionClass cls =
      classify_solution(envy_matrix(mus, res.allocation), rat(1, 100));
  CHECK(cls.strong);
  CHECK(cls.max_strong_violation <= res.certified_bound);
}

TEST_CASE("strong_division rejects a nonpositive epsilon") {
  CHECK_THROWS_AS(strong_division({kUniform}, IntervalSet::unit(), rat(0)), std::domain_error);
  CHECK_THROWS_AS(strong_division({kUniform}, IntervalSet::unit(), rat(-1)), std::domain_error);
}

TEST_CASE("three_player_division matches strong_division at epsilon") {
  Rng rng(35);
  for (int i = 0; i < 10; ++i) {
    std::vector<StepDensity> mus;
    for (int k = 0; k < 3; ++k) mus.push_back(random_density(rng, 6, false));
    const Rational epsilon = rat(1, 50);
    const DivisionResult a = three_player_division(mus, IntervalSet::unit(), epsilon);
    const DivisionResult b = strong_division(mus, IntervalSet::unit(), epsilon);
    for (const DivisionResult* res : {&a, &b}) {
      CHECK(res->allocation.ground() == IntervalSet::unit());
      const SolutionClass cls = classify_solution(envy_matrix(mus, res->allocation), epsilon);
      CHECK(cls.strong);
      CHECK(cls.max_strong_violation <= res->certified_bound);
    }
  }
}
