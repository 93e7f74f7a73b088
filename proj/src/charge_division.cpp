#include "fairdiv/charge_division.hpp"

#include <algorithm>
#include <stdexcept>

#include "fairdiv/chore_division.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/strong_division.hpp"

namespace fairdiv {

std::vector<int> SignCell::i_plus() const {
  std::vector<int> out;
  for (size_t i = 0; i < signs.size(); ++i)
    if (signs[i] == Sign::plus) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> SignCell::i_minus() const {
  std::vector<int> out;
  for (size_t i = 0; i < signs.size(); ++i)
    if (signs[i] == Sign::minus) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<SignCell> sign_cells(const std::vector<StepDensity>& charges) {
  const int r = static_cast<int>(charges.size());
  if (r > 30)
    throw std::invalid_argument("sign_cells: too many participants for the 2^r cell split");
  std::vector<std::pair<IntervalSet, IntervalSet>> split;
  split.reserve(r);
  for (const auto& charge : charges) split.push_back(hahn_jordan(charge));

  std::vector<SignCell> cells;
  for (unsigned long mask = 0; mask < (1ul << r); ++mask) {
    IntervalSet cell = IntervalSet::unit();
    std::vector<Sign> signs(r);
    for (int i = 0; i < r && !cell.empty(); ++i) {
      const bool plus = (mask >> i) & 1ul;
      signs[i] = plus ? Sign::plus : Sign::minus;
      cell = set_intersect(cell, plus ? split[i].first : split[i].second);
    }
    if (!cell.empty()) cells.push_back(SignCell{std::move(cell), std::move(signs)});
  }
  std::sort(cells.begin(), cells.end(), [](const SignCell& a, const SignCell& b) {
    return a.cell.intervals().front().lo < b.cell.intervals().front().lo;
  });
  return cells;
}

CellOutcome divide_cell(const std::vector<StepDensity>& charges, const SignCell& cell,
                        const Rational& epsilon_cell) {
  if (cell.cell.empty()) throw std::domain_error("divide_cell: empty cell");
  if (epsilon_cell <= 0) throw std::domain_error("divide_cell: epsilon must be positive");
  const int r = static_cast<int>(charges.size());

  CellOutcome out;
  out.cell = cell;
  const std::vector<int> positive = cell.i_plus();
  if (!positive.empty()) {
    out.engine = "strong";
    out.sub_participants = positive;
    std::vector<StepDensity> sub;
    sub.reserve(positive.size());
    for (int i : positive) sub.push_back(charges[i]);
    out.detail = strong_division(sub, cell.cell, epsilon_cell);
    out.allocation = Allocation::empty(r);
    for (size_t p = 0; p < positive.size(); ++p)
      out.allocation.parts[positive[p]] = out.detail.allocation.parts[p];
  } else {
    out.engine = "chore";
    out.sub_participants.resize(r);
    for (int i = 0; i < r; ++i) out.sub_participants[i] = i;
    std::vector<StepDensity> costs;
    costs.reserve(r);
    for (const auto& charge : charges) costs.push_back(charge.negated());
    out.detail = chore_division(costs, cell.cell, epsilon_cell);
    out.allocation = out.detail.allocation;
  }
  out.certified_bound = out.detail.certified_bound;
  return out;
}

ChargeDivisionResult divide_charges(const std::vector<StepDensity>& charges,
                                    const Rational& epsilon) {
  if (charges.empty()) throw std::invalid_argument("divide_charges: need at least one participant");
  if (epsilon <= 0) throw std::domain_error("divide_charges: epsilon must be positive");

  ChargeDivisionResult res;
  const std::vector<SignCell> cells = sign_cells(charges);
  const Rational epsilon_cell = epsilon / static_cast<long>(cells.size());

  res.certified_bound = 0;
  std::vector<Allocation> pieces;
  pieces.reserve(cells.size());
  for (const SignCell& cell : cells) {
    CellOutcome outcome = divide_cell(charges, cell, epsilon_cell);
    pieces.push_back(outcome.allocation);
    res.certified_bound += outcome.certified_bound;
    res.absorbed_remainder = set_union(res.absorbed_remainder, outcome.detail.absorbed_remainder);
    res.cells.push_back(std::move(outcome));
  }
  res.allocation = merge_allocations(pieces);
  res.allocation.remainder = IntervalSet();

  res.matrix = envy_matrix(charges, res.allocation);
  res.max_strong_violation = classify_solution(res.matrix, Rational(0)).max_strong_violation;
  if (res.max_strong_violation > res.certified_bound)
    throw internal_error("divide_charges: certified bound breached");
  for (const auto& charge : charges)
    res.remainder_at_truncation.push_back(charge.measure(res.absorbed_remainder));
  return res;
}

}  // namespace fairdiv
