#include "fairdiv/allocation.hpp"

#include <stdexcept>

namespace fairdiv {

Allocation Allocation::empty(int num_players) {
  Allocation a;
  a.parts.resize(num_players);
  return a;
}

IntervalSet Allocation::ground() const {
  IntervalSet g = remainder;
  for (const auto& p : parts) g = set_union(g, p);
  return g;
}

EnvyMatrix envy_matrix(const std::vector<StepDensity>& charges, const Allocation& alloc) {
  if (charges.size() != alloc.parts.size())
    throw std::invalid_argument("envy_matrix: allocation arity does not match charge count");
  EnvyMatrix m;
  m.ground = alloc.ground();
  m.values.resize(charges.size());
  for (size_t i = 0; i < charges.size(); ++i) {
    m.values[i].reserve(charges.size());
    for (const auto& part : alloc.parts) m.values[i].push_back(charges[i].measure(part));
  }
  return m;
}

SolutionClass classify_solution(const EnvyMatrix& m, const Rational& tolerance) {
  if (tolerance < 0) throw std::domain_error("classify_solution: negative tolerance");
  const int r = m.size();
  SolutionClass out;
  out.strong = out.weak = out.gentleman = true;
  out.max_strong_violation = 0;
  out.max_gentleman_violation = 0;
  for (int i = 0; i < r; ++i) {
    Rational row_sum(0);
    for (int j = 0; j < r; ++j) {
      row_sum += m.values[i][j];
      const Rational strong_deficit = m.values[i][j] - m.values[i][i];
      const Rational gentleman_deficit = m.values[i][i] - m.values[i][j];
      if (strong_deficit > out.max_strong_violation) out.max_strong_violation = strong_deficit;
      if (gentleman_deficit > out.max_gentleman_violation)
        out.max_gentleman_violation = gentleman_deficit;
      if (strong_deficit > tolerance) out.strong = false;
      if (gentleman_deficit > tolerance) out.gentleman = false;
    }
    if (m.values[i][i] < row_sum / r - tolerance) out.weak = false;
  }
  return out;
}

Allocation merge_allocations(const std::vector<Allocation>& pieces) {
  if (pieces.empty()) throw std::invalid_argument("merge_allocations: nothing to merge");
  const size_t r = pieces.front().parts.size();
  Allocation out = Allocation::empty(static_cast<int>(r));
  IntervalSet seen;
  for (const Allocation& piece : pieces) {
    if (piece.parts.size() != r)
      throw std::invalid_argument("merge_allocations: arity mismatch between pieces");
    const IntervalSet g = piece.ground();
    if (!disjoint(seen, g))
      throw std::invalid_argument("merge_allocations: overlapping ground sets");
    seen = set_union(seen, g);
    for (size_t j = 0; j < r; ++j) out.parts[j] = set_union(out.parts[j], piece.parts[j]);
    out.remainder = set_union(out.remainder, piece.remainder);
  }
  return out;
}

}  // namespace fairdiv
