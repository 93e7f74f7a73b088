#ifndef FAIRDIV_SCENARIO_IO_HPP
#define FAIRDIV_SCENARIO_IO_HPP

#include <string>
#include <vector>

#include "fairdiv/charge_division.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/interval_set.hpp"
#include "fairdiv/rational.hpp"
#include "fairdiv/step_density.hpp"
#include "fairdiv/trace.hpp"

namespace fairdiv {

enum class Mode { strong, chore, charge };

std::string mode_name(Mode mode);

struct Player {
  std::string name;
  StepDensity density;
};

/// A full problem instance: the participants' densities on [0,1), the
/// truncation threshold, and which condition is wanted.
struct Scenario {
  Mode mode = Mode::strong;
  Rational epsilon;
  std::vector<Player> players;

  std::vector<StepDensity> densities() const;
};

/// Per-cell summary emitted with charge-mode allocations.
struct CellSummary {
  IntervalSet cell;
  std::string engine;              // "strong" or "chore"
  std::vector<int> participants;   // indices into the document's parts
  Rational certified_bound;
};

/// Named parts of an emitted (or hand-written) allocation document, plus its
/// certificate block when present.
struct AllocationDocument {
  std::vector<std::string> names;
  std::vector<IntervalSet> parts;
  std::vector<std::vector<Rational>> envy_matrix;
  Rational max_strong_violation;
  Rational max_gentleman_violation;
  std::vector<Rational> remainder_at_truncation;
  Rational certified_bound;
  std::vector<FreezeCertificate> freeze_certificates;
  std::vector<CellSummary> cells;  // charge mode only
};

/// Everything run_divide produces for one scenario.
struct DivideOutcome {
  AllocationDocument document;
  // Exactly one of these is meaningful, per the scenario mode.
  DivisionResult division;        // strong / chore
  ChargeDivisionResult charges;   // charge
  Mode mode = Mode::strong;
};

/// Parses and validates a scenario document. All rationals are exact; each
/// density must tile [0,1); strong and chore modes reject negative values.
/// Throws parse_error with the path to the offending field.
Scenario parse_scenario(const std::string& text);
std::string serialize_scenario(const Scenario& scenario);

/// Runs the mode's engine and assembles the output document.
DivideOutcome run_division(const Scenario& scenario);

std::string serialize_allocation(const DivideOutcome& outcome);
AllocationDocument parse_allocation(const std::string& text);

/// Serializes a convergence trace as a JSON array of rounds. The bound field
/// of strong-style rows is recomputed independently from (s, r, averaged
/// initial measure); every row's bound inequality is re-asserted during
/// emission (internal_error on breach).
std::string serialize_trace(const ConvergenceTrace& trace);
ConvergenceTrace parse_trace(const std::string& text);

/// Composite trace of a charge run: one entry per sign cell.
std::string serialize_charge_trace(const ChargeDivisionResult& result,
                                   const std::vector<std::string>& player_names);

/// Independent verification report. The checker recomputes every comparison
/// value directly from the densities and interval sets (measure-core only; no
/// solver code path) and classifies at the given tolerance.
struct VerifyReport {
  bool structure_ok = false;   // parts inside [0,1) and pairwise disjoint
  std::string structure_message;
  bool strong = false;
  bool weak = false;
  bool gentleman = false;
  Rational max_strong_violation;
  Rational max_gentleman_violation;
  bool mode_condition_holds = false;
  std::vector<std::vector<Rational>> values;
};

VerifyReport verify_allocation(const Scenario& scenario, const AllocationDocument& allocation,
                               const Rational& tolerance);

}  // namespace fairdiv

#endif
