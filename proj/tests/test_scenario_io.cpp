#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "fairdiv/errors.hpp"
#include "fairdiv/scenario_io.hpp"
#include "testing_support.hpp"

using namespace fairdiv;
using namespace fairdiv::testing;

namespace {

Rational rat(long n, long d = 1) { return make_rational(n, d); }

const std::string kTwoUniform =
    R"({"mode":"strong","epsilon":"1/100","players":[)"
    R"({"name":"a","density":[["0","1","1"]]},)"
    R"({"name":"b","density":[["0","1","1"]]}]})";

std::string path_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const parse_error& e) {
    return e.path();
  }
  return "(no error)";
}

Scenario random_scenario(Rng& rng, Mode mode, int r, const Rational& epsilon) {
  Scenario sc;
  sc.mode = mode;
  sc.epsilon = epsilon;
  for (int k = 0; k < r; ++k)
    sc.players.push_back(
        Player{"p" + std::to_string(k), random_density(rng, 8, mode == Mode::charge)});
  return sc;
}

}  // namespace

TEST_CASE("parse_scenario accepts the two-player uniform document") {
  const Scenario sc = parse_scenario(kTwoUniform);
  CHECK(sc.mode == Mode::strong);
  CHECK(sc.epsilon == rat(1, 100));
  REQUIRE(sc.players.size() == 2);
  CHECK(sc.players[0].name == "a");
  CHECK(sc.players[0].density == StepDensity::constant(rat(1)));
}

TEST_CASE("parse_scenario reports the offending field") {
  CHECK(path_of(R"({"mode":"strong","epsilon":"1/100","players":[)"
                R"({"name":"a","density":[["0","1/2","1"]]}]})") == "players[0].density");
  CHECK(path_of(R"({"mode":"strong","epsilon":"1/100","players":[)"
                R"({"name":"a","density":[["0","1","-1"]]}]})") == "players[0].density[0][2]");
  CHECK(path_of(R"({"mode":"soft","epsilon":"1/100","players":[]})") == "mode");
  CHECK(path_of(R"({"mode":"strong","epsilon":"0/1","players":[]})") == "epsilon");
  CHECK(path_of(R"({"mode":"strong","epsilon":"1x","players":[]})") == "epsilon");
  CHECK(path_of(R"({"mode":"strong","epsilon":"1/100"})") == "players");
  CHECK(path_of("not json at all") == "");
  // charges may be negative
  CHECK_NOTHROW(parse_scenario(R"({"mode":"charge","epsilon":"1/100","players":[)"
                               R"({"name":"a","density":[["0","1","-1"]]}]})"));
}

TEST_CASE("scenario serialization round-trips exactly") {
  Rng rng(61);
  for (int i = 0; i < 40; ++i) {
    const Mode mode = static_cast<Mode>(rng.uniform(0, 2));
    const Scenario sc = random_scenario(rng, mode, static_cast<int>(rng.uniform(1, 4)),
                                        rat(1, rng.uniform(2, 1000)));
    const Scenario back = parse_scenario(serialize_scenario(sc));
    CHECK(back.mode == sc.mode);
    CHECK(back.epsilon == sc.epsilon);
    REQUIRE(back.players.size() == sc.players.size());
    for (size_t k = 0; k < sc.players.size(); ++k) {
      CHECK(back.players[k].name == sc.players[k].name);
      CHECK(back.players[k].density == sc.players[k].density);
    }
  }
}

TEST_CASE("allocation documents round-trip exactly") {
  Rng rng(62);
  for (int i = 0; i < 15; ++i) {
    const Mode mode = static_cast<Mode>(rng.uniform(0, 2));
    const Scenario sc = random_scenario(rng, mode, static_cast<int>(rng.uniform(1, 3)),
                                        rat(1, 50));
    const DivideOutcome outcome = run_division(sc);
    const std::string text = serialize_allocation(outcome);
    const AllocationDocument back = parse_allocation(text);
    CHECK(back.names == outcome.document.names);
    CHECK(back.parts == outcome.document.parts);
    CHECK(back.envy_matrix == outcome.document.envy_matrix);
    CHECK(back.max_strong_violation == outcome.document.max_strong_violation);
    CHECK(back.max_gentleman_violation == outcome.document.max_gentleman_violation);
    CHECK(back.remainder_at_truncation == outcome.document.remainder_at_truncation);
    CHECK(back.certified_bound == outcome.document.certified_bound);
    REQUIRE(back.freeze_certificates.size() == outcome.document.freeze_certificates.size());
    for (size_t k = 0; k < back.freeze_certificates.size(); ++k) {
      CHECK(back.freeze_certificates[k].participant ==
            outcome.document.freeze_certificates[k].participant);
      CHECK(back.freeze_certificates[k].residual_bounds ==
            outcome.document.freeze_certificates[k].residual_bounds);
    }
    // serialized form is a fixed point
    CHECK(serialize_allocation(outcome) == text);
  }
}

TEST_CASE("emit_trace writes an empty run as an empty array") {
  ConvergenceTrace trace;
  trace.has_meta = true;
  trace.num_players = 2;
  trace.initial_per_player = {rat(1), rat(1)};
  trace.initial_averaged = rat(1);
  trace.decay_factor = rat(1, 2);
  CHECK(serialize_trace(trace) == "[]");
}

TEST_CASE("emit_trace recomputes the geometric bounds for a two-round trace") {
  ConvergenceTrace trace;
  trace.has_meta = true;
  trace.num_players = 2;
  trace.initial_per_player = {rat(1), rat(1)};
  trace.initial_averaged = rat(1);
  trace.decay_factor = rat(1, 2);
  trace.rows.push_back(TraceRow{1, 0, {rat(1, 3), rat(1, 2)}, rat(5, 12), rat(1, 2)});
  trace.rows.push_back(TraceRow{2, 0, {rat(1, 8), rat(1, 4)}, rat(3, 16), rat(1, 4)});
  const std::string text = serialize_trace(trace);
  const ConvergenceTrace back = parse_trace(text);
  REQUIRE(back.rows.size() == 2);
  CHECK(back.rows[0].bound == rat(1, 2));
  CHECK(back.rows[1].bound == rat(1, 4));
  CHECK(back.rows[1].remainder_per_player == trace.rows[1].remainder_per_player);
  CHECK(back.rows[0].cutter == 0);

  // a stored bound that disagrees with the recomputation is rejected
  trace.rows[1].bound = rat(1, 3);
  CHECK_THROWS_AS(serialize_trace(trace), internal_error);
  // an averaged remainder above the bound is rejected
  trace.rows[1] = TraceRow{2, 0, {rat(1, 2), rat(1, 2)}, rat(1, 2), rat(1, 4)};
  CHECK_THROWS_AS(serialize_trace(trace), internal_error);
}

TEST_CASE("engine traces serialize with valid bounds") {
  Rng rng(63);
  for (int i = 0; i < 10; ++i) {
    const Scenario sc = random_scenario(rng, Mode::strong, 3, rat(1, 40));
    const DivideOutcome outcome = run_division(sc);
    const ConvergenceTrace back = parse_trace(serialize_trace(outcome.division.trace));
    CHECK(back.rows.size() == outcome.division.trace.rows.size());
    for (const TraceRow& row : back.rows) CHECK(row.averaged <= row.bound);
  }
}

TEST_CASE("verify accepts solver output and rejects a grabby allocation") {
  const Scenario sc = parse_scenario(kTwoUniform);
  const DivideOutcome outcome = run_division(sc);
  const AllocationDocument doc = parse_allocation(serialize_allocation(outcome));
  const VerifyReport ok = verify_allocation(sc, doc, sc.epsilon);
  CHECK(ok.structure_ok);
  CHECK(ok.mode_condition_holds);
  CHECK(ok.max_strong_violation == rat(0));

  AllocationDocument grabby;
  grabby.names = {"a", "b"};
  grabby.parts = {IntervalSet::unit(), IntervalSet()};
  const VerifyReport bad = verify_allocation(sc, grabby, rat(0));
  CHECK(bad.structure_ok);
  CHECK_FALSE(bad.mode_condition_holds);
  CHECK(bad.max_strong_violation == rat(1));

  AllocationDocument overlapping;
  overlapping.names = {"a", "b"};
  overlapping.parts = {IntervalSet::unit(), IntervalSet::interval(rat(1, 4), rat(1, 2))};
  CHECK_FALSE(verify_allocation(sc, overlapping, rat(0)).structure_ok);
}

TEST_CASE("verify checks the chore condition under mode chore") {
  Rng rng(64);
  const Scenario sc = random_scenario(rng, Mode::chore, 2, rat(1, 200));
  const DivideOutcome outcome = run_division(sc);
  const AllocationDocument doc = parse_allocation(serialize_allocation(outcome));
  const VerifyReport report = verify_allocation(sc, doc, doc.certified_bound);
  CHECK(report.structure_ok);
  CHECK(report.mode_condition_holds);
  CHECK(report.max_gentleman_violation <= doc.certified_bound);
}

TEST_CASE("run_division emits matching independent verification for all modes") {
  Rng rng(65);
  for (int i = 0; i < 12; ++i) {
    const Mode mode = static_cast<Mode>(rng.uniform(0, 2));
    const Scenario sc = random_scenario(rng, mode, static_cast<int>(rng.uniform(1, 3)),
                                        rat(1, 60));
    const DivideOutcome outcome = run_division(sc);
    const Rational tolerance =
        mode == Mode::strong ? sc.epsilon : outcome.document.certified_bound;
    const VerifyReport report =
        verify_allocation(sc, outcome.document, tolerance);
    CHECK(report.structure_ok);
    CHECK(report.mode_condition_holds);
    // the emitted matrix agrees with the independent recomputation
    CHECK(report.values == outcome.document.envy_matrix);
  }
}
