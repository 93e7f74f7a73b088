#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "fairdiv/errors.hpp"
#include "fairdiv/scenario_io.hpp"

namespace {

// Exit codes: 0 success, 1 parse/input error, 2 internal-invariant violation,
// 3 structural failure in verify, 4 mode condition fails at the tolerance.

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fairdiv::parse_error("", "cannot read file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fairdiv::parse_error("", "cannot write file '" + path + "'");
  out << content << "\n";
}

struct DivideOptions {
  std::string input, output, trace;
};

int run_divide(const DivideOptions& opt, bool allocation_wanted) {
  const fairdiv::Scenario scenario = fairdiv::parse_scenario(read_file(opt.input));
  const fairdiv::DivideOutcome outcome = fairdiv::run_division(scenario);
  if (allocation_wanted)
    write_file(opt.output, fairdiv::serialize_allocation(outcome));
  if (!opt.trace.empty()) {
    const std::string trace =
        scenario.mode == fairdiv::Mode::charge
            ? fairdiv::serialize_charge_trace(outcome.charges, outcome.document.names)
            : fairdiv::serialize_trace(outcome.division.trace);
    write_file(opt.trace, trace);
  }
  return 0;
}

struct VerifyOptions {
  std::string scenario, allocation, tolerance = "0/1";
};

int run_verify(const VerifyOptions& opt) {
  const fairdiv::Scenario scenario = fairdiv::parse_scenario(read_file(opt.scenario));
  const fairdiv::AllocationDocument doc = fairdiv::parse_allocation(read_file(opt.allocation));
  fairdiv::Rational tolerance;
  try {
    tolerance = fairdiv::parse_rational(opt.tolerance);
  } catch (const std::invalid_argument& e) {
    throw fairdiv::parse_error("--tolerance", e.what());
  }
  if (tolerance < 0) throw fairdiv::parse_error("--tolerance", "tolerance must be nonnegative");

  const fairdiv::VerifyReport report = fairdiv::verify_allocation(scenario, doc, tolerance);
  if (!report.structure_ok) {
    std::cerr << "structural failure: " << report.structure_message << "\n";
    return 3;
  }
  const auto yesno = [](bool b) { return b ? "yes" : "no"; };
  std::cout << "strong: " << yesno(report.strong)
            << " (max violation " << fairdiv::to_string(report.max_strong_violation) << ")\n";
  std::cout << "weak: " << yesno(report.weak) << "\n";
  std::cout << "gentleman: " << yesno(report.gentleman)
            << " (max violation " << fairdiv::to_string(report.max_gentleman_violation) << ")\n";
  std::cout << "mode " << fairdiv::mode_name(scenario.mode) << ": "
            << (report.mode_condition_holds ? "satisfied" : "violated") << " at tolerance "
            << fairdiv::to_string(tolerance) << "\n";
  return report.mode_condition_holds ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact fair division of [0,1) for piecewise-constant valuations"};
  app.require_subcommand(1);

  DivideOptions divide_opt;
  CLI::App* divide = app.add_subcommand("divide", "solve a scenario and write the allocation");
  divide->add_option("--input", divide_opt.input, "scenario JSON")->required();
  divide->add_option("--output", divide_opt.output, "allocation JSON to write")->required();
  divide->add_option("--trace", divide_opt.trace, "also write the convergence trace");

  VerifyOptions verify_opt;
  CLI::App* verify = app.add_subcommand("verify", "independently check an allocation");
  verify->add_option("--scenario", verify_opt.scenario, "scenario JSON")->required();
  verify->add_option("--allocation", verify_opt.allocation, "allocation JSON")->required();
  verify->add_option("--tolerance", verify_opt.tolerance, "tolerance p/q (default 0/1)");

  DivideOptions trace_opt;
  CLI::App* trace = app.add_subcommand("trace", "solve a scenario and write only the trace");
  trace->add_option("--input", trace_opt.input, "scenario JSON")->required();
  trace->add_option("--output", trace_opt.output, "trace JSON to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (divide->parsed()) return run_divide(divide_opt, true);
    if (trace->parsed()) {
      DivideOptions opt;
      opt.input = trace_opt.input;
      opt.trace = trace_opt.output;
      return run_divide(opt, false);
    }
    return run_verify(verify_opt);
  } catch (const fairdiv::internal_error& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
