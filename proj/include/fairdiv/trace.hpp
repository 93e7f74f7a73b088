#ifndef FAIRDIV_TRACE_HPP
#define FAIRDIV_TRACE_HPP

#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/interval_set.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

/// What a trace row means and which bound it carries.
enum class TraceKind {
  /// One row per outer round s; bound = decay_factor^s * initial averaged
  /// remainder, and the averaged remainder satisfies averaged <= bound.
  strong_rounds,
  /// One row per satisfying-subset call; cutter is the round's lead and
  /// bound caps the lead's remainder measure (per-lead geometric decay
  /// within the current segment of active participants).
  chore_calls,
};

struct TraceRow {
  int index = 0;    // outer round s, or call index for chore traces
  int cutter = 0;   // 0-based participant index
  std::vector<Rational> remainder_per_player;
  Rational averaged;
  Rational bound;
};

/// Summary of a single satisfying-subset call (in-memory bookkeeping; not
/// part of the serialized trace).
struct CallSummary {
  int cutter = 0;
  Rational floor_value;
  Rational cutter_h_measure;
};

struct ConvergenceTrace {
  TraceKind kind = TraceKind::strong_rounds;
  // True for engine-produced traces, which carry the initial measures needed
  // to recompute bounds independently; false for traces parsed back from JSON
  // (the wire format is the row array alone).
  bool has_meta = false;
  int num_players = 0;
  std::vector<Rational> initial_per_player;
  Rational initial_averaged;
  Rational decay_factor;  // per-round factor for strong_rounds traces
  std::vector<TraceRow> rows;
  std::vector<CallSummary> calls;
};

/// Residual-intersection certificate attached to one freeze event of the
/// chore driver: for every participant j still active when `participant` was
/// frozen, bounds[j] = mu_j(final F_j ∩ remainder-at-freeze), an exact upper
/// bound on j's deficit versus the frozen participant.
struct FreezeCertificate {
  enum class Reason { zero_measure, epsilon };

  int participant = 0;
  Reason reason = Reason::epsilon;
  IntervalSet remainder_at_freeze;
  std::vector<std::pair<int, Rational>> residual_bounds;
};

/// Output of a division engine: a total allocation (empty remainder; the
/// residue was absorbed per the engine's rule), the convergence trace, the
/// per-player measures of the absorbed residue, freeze certificates (chore
/// engine only), and the engine's exact certified bound on the mode's
/// condition.
struct DivisionResult {
  Allocation allocation;
  ConvergenceTrace trace;
  IntervalSet absorbed_remainder;
  std::vector<Rational> remainder_at_truncation;
  std::vector<FreezeCertificate> freeze_certificates;
  Rational certified_bound;
};

}  // namespace fairdiv

#endif
