// Independent checker for allocation documents. Deliberately recomputes every
// comparison value from the densities and interval sets alone — no call into
// the division engines or the solver-side matrix/classification helpers — so
// a verification pass shares only the measure core with the solver.

#include "fairdiv/scenario_io.hpp"

namespace fairdiv {

VerifyReport verify_allocation(const Scenario& scenario, const AllocationDocument& allocation,
                               const Rational& tolerance) {
  if (tolerance < 0) throw std::domain_error("verify_allocation: negative tolerance");
  VerifyReport report;

  const size_t r = scenario.players.size();
  if (allocation.parts.size() != r) {
    report.structure_message = "allocation has " + std::to_string(allocation.parts.size()) +
                               " parts for " + std::to_string(r) + " players";
    return report;
  }
  for (size_t i = 0; i < r; ++i) {
    if (allocation.names[i] != scenario.players[i].name) {
      report.structure_message = "part " + std::to_string(i) + " is named '" +
                                 allocation.names[i] + "', scenario player is '" +
                                 scenario.players[i].name + "'";
      return report;
    }
  }
  for (size_t i = 0; i < r; ++i)
    for (size_t j = i + 1; j < r; ++j)
      if (!disjoint(allocation.parts[i], allocation.parts[j])) {
        report.structure_message = "parts '" + allocation.names[i] + "' and '" +
                                   allocation.names[j] + "' overlap";
        return report;
      }
  report.structure_ok = true;

  report.values.assign(r, std::vector<Rational>(r));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j)
      report.values[i][j] = scenario.players[i].density.measure(allocation.parts[j]);

  report.strong = report.weak = report.gentleman = true;
  report.max_strong_violation = 0;
  report.max_gentleman_violation = 0;
  for (size_t i = 0; i < r; ++i) {
    Rational row_sum(0);
    for (size_t j = 0; j < r; ++j) {
      row_sum += report.values[i][j];
      const Rational strong_deficit = report.values[i][j] - report.values[i][i];
      const Rational gentleman_deficit = report.values[i][i] - report.values[i][j];
      if (strong_deficit > report.max_strong_violation)
        report.max_strong_violation = strong_deficit;
      if (gentleman_deficit > report.max_gentleman_violation)
        report.max_gentleman_violation = gentleman_deficit;
      if (strong_deficit > tolerance) report.strong = false;
      if (gentleman_deficit > tolerance) report.gentleman = false;
    }
    if (report.values[i][i] < row_sum / static_cast<long>(r) - tolerance) report.weak = false;
  }

  report.mode_condition_holds =
      scenario.mode == Mode::chore ? report.gentleman : report.strong;
  return report;
}

}  // namespace fairdiv
