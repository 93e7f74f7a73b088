#ifndef FAIRDIV_ALLOCATION_HPP
#define FAIRDIV_ALLOCATION_HPP

#include <vector>

#include "fairdiv/interval_set.hpp"
#include "fairdiv/rational.hpp"
#include "fairdiv/step_density.hpp"

namespace fairdiv {

/// Division of a ground set among r participants: parts[i] is participant i's
/// share, remainder is the unassigned residue. Parts and remainder are
/// pairwise disjoint; their union is the ground set.
struct Allocation {
  std::vector<IntervalSet> parts;
  IntervalSet remainder;

  static Allocation empty(int num_players);

  int num_players() const { return static_cast<int>(parts.size()); }

  /// Union of all parts and the remainder.
  IntervalSet ground() const;
};

/// Grid of comparison values: values[i][j] = integral of participant i's
/// density over part j. Row i sums exactly to participant i's value of the
/// union of parts.
struct EnvyMatrix {
  std::vector<std::vector<Rational>> values;
  IntervalSet ground;

  int size() const { return static_cast<int>(values.size()); }
};

/// Classification of an allocation's envy matrix at a given tolerance.
/// Violations are exact maximal deficits (0 when the condition holds).
struct SolutionClass {
  bool strong = false;
  bool weak = false;
  bool gentleman = false;
  Rational max_strong_violation;
  Rational max_gentleman_violation;
};

/// Computes the exact envy matrix. Throws std::invalid_argument when the
/// number of densities differs from the number of parts.
EnvyMatrix envy_matrix(const std::vector<StepDensity>& charges, const Allocation& alloc);

/// strong: values[i][i] >= values[i][j] - tolerance for all i, j.
/// weak:   values[i][i] >= row_sum(i)/r - tolerance for all i.
/// gentleman: values[i][i] <= values[i][j] + tolerance for all i, j.
/// Throws std::domain_error on negative tolerance.
SolutionClass classify_solution(const EnvyMatrix& m, const Rational& tolerance);

/// Componentwise union of per-piece allocations over pairwise disjoint
/// grounds. Throws std::invalid_argument on arity mismatch or overlapping
/// grounds.
Allocation merge_allocations(const std::vector<Allocation>& pieces);

}  // namespace fairdiv

#endif
