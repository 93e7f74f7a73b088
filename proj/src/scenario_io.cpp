#include "fairdiv/scenario_io.hpp"

#include <json.hpp>

#include "fairdiv/allocation.hpp"
#include "fairdiv/chore_division.hpp"
#include "fairdiv/strong_division.hpp"

namespace fairdiv {

using json = nlohmann::ordered_json;

namespace {

std::string field(const std::string& base, const std::string& name) {
  return base.empty() ? name : base + "." + name;
}

std::string at_index(const std::string& base, size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

Rational rational_at(const json& j, const std::string& path) {
  if (!j.is_string()) throw parse_error(path, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw parse_error(path, e.what());
  }
}

json rational_json(const Rational& q) { return json(to_string(q)); }

json intervals_json(const IntervalSet& set) {
  json out = json::array();
  for (const Interval& iv : set.intervals())
    out.push_back(json::array({to_string(iv.lo), to_string(iv.hi)}));
  return out;
}

IntervalSet intervals_at(const json& j, const std::string& path) {
  if (!j.is_array()) throw parse_error(path, "expected an array of [start,end] pairs");
  std::vector<std::pair<Rational, Rational>> raw;
  for (size_t k = 0; k < j.size(); ++k) {
    const json& pair = j[k];
    if (!pair.is_array() || pair.size() != 2)
      throw parse_error(at_index(path, k), "expected [start,end]");
    raw.emplace_back(rational_at(pair[0], at_index(path, k) + "[0]"),
                     rational_at(pair[1], at_index(path, k) + "[1]"));
  }
  try {
    return IntervalSet::canonicalize(raw);
  } catch (const std::exception& e) {
    throw parse_error(path, e.what());
  }
}

const json& member(const json& j, const std::string& base, const std::string& name) {
  if (!j.is_object()) throw parse_error(base, "expected a JSON object");
  const auto it = j.find(name);
  if (it == j.end()) throw parse_error(field(base, name), "missing field");
  return *it;
}

}  // namespace

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::strong: return "strong";
    case Mode::chore: return "chore";
    case Mode::charge: return "charge";
  }
  return "strong";
}

std::vector<StepDensity> Scenario::densities() const {
  std::vector<StepDensity> out;
  out.reserve(players.size());
  for (const Player& p : players) out.push_back(p.density);
  return out;
}

Scenario parse_scenario(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error("", std::string("invalid JSON: ") + e.what());
  }

  Scenario sc;
  const json& mode = member(root, "", "mode");
  if (!mode.is_string()) throw parse_error("mode", "expected a string");
  const std::string mode_str = mode.get<std::string>();
  if (mode_str == "strong")
    sc.mode = Mode::strong;
  else if (mode_str == "chore")
    sc.mode = Mode::chore;
  else if (mode_str == "charge")
    sc.mode = Mode::charge;
  else
    throw parse_error("mode", "unknown mode '" + mode_str + "'");

  sc.epsilon = rational_at(member(root, "", "epsilon"), "epsilon");
  if (sc.epsilon <= 0) throw parse_error("epsilon", "epsilon must be positive");

  const json& players = member(root, "", "players");
  if (!players.is_array() || players.empty())
    throw parse_error("players", "expected a nonempty array");
  for (size_t i = 0; i < players.size(); ++i) {
    const std::string base = at_index("players", i);
    const json& name = member(players[i], base, "name");
    if (!name.is_string()) throw parse_error(field(base, "name"), "expected a string");

    const json& density = member(players[i], base, "density");
    const std::string dpath = field(base, "density");
    if (!density.is_array() || density.empty())
      throw parse_error(dpath, "expected a nonempty array of [start,end,value] triples");
    std::vector<DensityPiece> pieces;
    for (size_t k = 0; k < density.size(); ++k) {
      const json& piece = density[k];
      const std::string ppath = at_index(dpath, k);
      if (!piece.is_array() || piece.size() != 3)
        throw parse_error(ppath, "expected [start,end,value]");
      DensityPiece dp{rational_at(piece[0], ppath + "[0]"), rational_at(piece[1], ppath + "[1]"),
                      rational_at(piece[2], ppath + "[2]")};
      if (sc.mode != Mode::charge && dp.value < 0)
        throw parse_error(ppath + "[2]",
                          "negative value not allowed in mode " + mode_name(sc.mode));
      pieces.push_back(std::move(dp));
    }
    try {
      sc.players.push_back(Player{name.get<std::string>(), StepDensity::from_pieces(pieces)});
    } catch (const std::invalid_argument& e) {
      throw parse_error(dpath, e.what());
    }
  }
  return sc;
}

std::string serialize_scenario(const Scenario& sc) {
  json root;
  root["mode"] = mode_name(sc.mode);
  root["epsilon"] = to_string(sc.epsilon);
  root["players"] = json::array();
  for (const Player& p : sc.players) {
    json pj;
    pj["name"] = p.name;
    pj["density"] = json::array();
    for (const DensityPiece& piece : p.density.pieces())
      pj["density"].push_back(
          json::array({to_string(piece.lo), to_string(piece.hi), to_string(piece.value)}));
    root["players"].push_back(std::move(pj));
  }
  return root.dump(2);
}

DivideOutcome run_division(const Scenario& sc) {
  DivideOutcome out;
  out.mode = sc.mode;
  const std::vector<StepDensity> densities = sc.densities();
  const IntervalSet unit = IntervalSet::unit();

  const Allocation* alloc = nullptr;
  if (sc.mode == Mode::charge) {
    out.charges = divide_charges(densities, sc.epsilon);
    alloc = &out.charges.allocation;
  } else {
    out.division = sc.mode == Mode::strong ? strong_division(densities, unit, sc.epsilon)
                                           : chore_division(densities, unit, sc.epsilon);
    alloc = &out.division.allocation;
  }

  AllocationDocument& doc = out.document;
  for (const Player& p : sc.players) doc.names.push_back(p.name);
  doc.parts = alloc->parts;
  const EnvyMatrix matrix =
      sc.mode == Mode::charge ? out.charges.matrix : envy_matrix(densities, *alloc);
  doc.envy_matrix = matrix.values;
  const SolutionClass cls = classify_solution(matrix, Rational(0));
  doc.max_strong_violation = cls.max_strong_violation;
  doc.max_gentleman_violation = cls.max_gentleman_violation;
  if (sc.mode == Mode::charge) {
    doc.remainder_at_truncation = out.charges.remainder_at_truncation;
    doc.certified_bound = out.charges.certified_bound;
    for (const CellOutcome& cell : out.charges.cells)
      doc.cells.push_back(
          CellSummary{cell.cell.cell, cell.engine, cell.sub_participants, cell.certified_bound});
  } else {
    doc.remainder_at_truncation = out.division.remainder_at_truncation;
    doc.certified_bound = out.division.certified_bound;
    doc.freeze_certificates = out.division.freeze_certificates;
  }
  return out;
}

std::string serialize_allocation(const DivideOutcome& outcome) {
  const AllocationDocument& doc = outcome.document;
  json root;
  root["parts"] = json::array();
  for (size_t i = 0; i < doc.parts.size(); ++i) {
    json part;
    part["name"] = doc.names[i];
    part["intervals"] = intervals_json(doc.parts[i]);
    root["parts"].push_back(std::move(part));
  }
  json cert;
  cert["envy_matrix"] = json::array();
  for (const auto& row : doc.envy_matrix) {
    json rj = json::array();
    for (const Rational& v : row) rj.push_back(to_string(v));
    cert["envy_matrix"].push_back(std::move(rj));
  }
  cert["max_strong_violation"] = to_string(doc.max_strong_violation);
  cert["max_gentleman_violation"] = to_string(doc.max_gentleman_violation);
  json rem = json::array();
  for (const Rational& v : doc.remainder_at_truncation) rem.push_back(to_string(v));
  cert["remainder_measures_at_truncation"] = std::move(rem);
  cert["certified_bound"] = to_string(doc.certified_bound);
  if (!doc.freeze_certificates.empty()) {
    json fc = json::array();
    for (const FreezeCertificate& f : doc.freeze_certificates) {
      json fj;
      fj["frozen"] = doc.names[f.participant];
      fj["reason"] =
          f.reason == FreezeCertificate::Reason::zero_measure ? "zero_measure" : "epsilon";
      json bounds = json::array();
      for (const auto& [j, value] : f.residual_bounds)
        bounds.push_back(json::array({doc.names[j], to_string(value)}));
      fj["residual_bounds"] = std::move(bounds);
      fc.push_back(std::move(fj));
    }
    cert["freeze_certificates"] = std::move(fc);
  }
  if (!doc.cells.empty()) {
    json cells = json::array();
    for (const CellSummary& cell : doc.cells) {
      json cj;
      cj["intervals"] = intervals_json(cell.cell);
      cj["engine"] = cell.engine;
      json names = json::array();
      for (int p : cell.participants) names.push_back(doc.names[p]);
      cj["participants"] = std::move(names);
      cj["certified_bound"] = to_string(cell.certified_bound);
      cells.push_back(std::move(cj));
    }
    cert["cells"] = std::move(cells);
  }
  root["certificate"] = std::move(cert);
  return root.dump(2);
}

AllocationDocument parse_allocation(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error("", std::string("invalid JSON: ") + e.what());
  }

  AllocationDocument doc;
  const json& parts = member(root, "", "parts");
  if (!parts.is_array() || parts.empty()) throw parse_error("parts", "expected a nonempty array");
  for (size_t i = 0; i < parts.size(); ++i) {
    const std::string base = at_index("parts", i);
    const json& name = member(parts[i], base, "name");
    if (!name.is_string()) throw parse_error(field(base, "name"), "expected a string");
    doc.names.push_back(name.get<std::string>());
    doc.parts.push_back(intervals_at(member(parts[i], base, "intervals"), field(base, "intervals")));
  }

  const auto index_of = [&](const std::string& name, const std::string& path) {
    for (size_t i = 0; i < doc.names.size(); ++i)
      if (doc.names[i] == name) return static_cast<int>(i);
    throw parse_error(path, "unknown participant '" + name + "'");
  };

  if (root.contains("certificate")) {
    const json& cert = root["certificate"];
    if (!cert.is_object()) throw parse_error("certificate", "expected a JSON object");
    if (cert.contains("envy_matrix")) {
      for (size_t i = 0; i < cert["envy_matrix"].size(); ++i) {
        std::vector<Rational> row;
        const std::string rpath = at_index("certificate.envy_matrix", i);
        for (size_t j = 0; j < cert["envy_matrix"][i].size(); ++j)
          row.push_back(rational_at(cert["envy_matrix"][i][j], at_index(rpath, j)));
        doc.envy_matrix.push_back(std::move(row));
      }
    }
    if (cert.contains("max_strong_violation"))
      doc.max_strong_violation =
          rational_at(cert["max_strong_violation"], "certificate.max_strong_violation");
    if (cert.contains("max_gentleman_violation"))
      doc.max_gentleman_violation =
          rational_at(cert["max_gentleman_violation"], "certificate.max_gentleman_violation");
    if (cert.contains("remainder_measures_at_truncation"))
      for (size_t i = 0; i < cert["remainder_measures_at_truncation"].size(); ++i)
        doc.remainder_at_truncation.push_back(
            rational_at(cert["remainder_measures_at_truncation"][i],
                        at_index("certificate.remainder_measures_at_truncation", i)));
    if (cert.contains("certified_bound"))
      doc.certified_bound = rational_at(cert["certified_bound"], "certificate.certified_bound");
    if (cert.contains("freeze_certificates")) {
      for (size_t i = 0; i < cert["freeze_certificates"].size(); ++i) {
        const json& fj = cert["freeze_certificates"][i];
        const std::string base = at_index("certificate.freeze_certificates", i);
        FreezeCertificate f;
        const json& frozen = member(fj, base, "frozen");
        if (!frozen.is_string()) throw parse_error(field(base, "frozen"), "expected a string");
        f.participant = index_of(frozen.get<std::string>(), field(base, "frozen"));
        const json& reason = member(fj, base, "reason");
        f.reason = reason.is_string() && reason.get<std::string>() == "zero_measure"
                       ? FreezeCertificate::Reason::zero_measure
                       : FreezeCertificate::Reason::epsilon;
        const json& bounds = member(fj, base, "residual_bounds");
        for (size_t k = 0; k < bounds.size(); ++k) {
          const std::string bpath = at_index(field(base, "residual_bounds"), k);
          if (!bounds[k].is_array() || bounds[k].size() != 2)
            throw parse_error(bpath, "expected [participant, bound]");
          f.residual_bounds.emplace_back(
              index_of(bounds[k][0].get<std::string>(), bpath + "[0]"),
              rational_at(bounds[k][1], bpath + "[1]"));
        }
        doc.freeze_certificates.push_back(std::move(f));
      }
    }
    if (cert.contains("cells")) {
      for (size_t i = 0; i < cert["cells"].size(); ++i) {
        const json& cj = cert["cells"][i];
        const std::string base = at_index("certificate.cells", i);
        CellSummary cell;
        cell.cell = intervals_at(member(cj, base, "intervals"), field(base, "intervals"));
        cell.engine = member(cj, base, "engine").get<std::string>();
        const json& names = member(cj, base, "participants");
        for (size_t k = 0; k < names.size(); ++k)
          cell.participants.push_back(index_of(names[k].get<std::string>(),
                                               at_index(field(base, "participants"), k)));
        cell.certified_bound =
            rational_at(member(cj, base, "certified_bound"), field(base, "certified_bound"));
        doc.cells.push_back(std::move(cell));
      }
    }
  }
  return doc;
}

std::string serialize_trace(const ConvergenceTrace& trace) {
  json rows = json::array();
  for (const TraceRow& row : trace.rows) {
    if (trace.has_meta && trace.kind == TraceKind::strong_rounds) {
      const Rational bound =
          pow_rational(trace.decay_factor, static_cast<unsigned long>(row.index)) *
          trace.initial_averaged;
      if (bound != row.bound)
        throw internal_error("serialize_trace: stored bound disagrees with recomputation");
      if (row.averaged > bound)
        throw internal_error("serialize_trace: averaged remainder exceeds bound");
    }
    if (trace.has_meta && trace.kind == TraceKind::chore_calls &&
        row.remainder_per_player[row.cutter] > row.bound)
      throw internal_error("serialize_trace: lead remainder exceeds bound");
    json rj;
    rj["s"] = row.index;
    json rem = json::array();
    for (const Rational& v : row.remainder_per_player) rem.push_back(to_string(v));
    rj["per_player_remainder"] = std::move(rem);
    rj["averaged"] = to_string(row.averaged);
    rj["bound"] = to_string(row.bound);
    rj["cutter"] = row.cutter + 1;  // 1-based on the wire
    rows.push_back(std::move(rj));
  }
  return rows.dump(2);
}

ConvergenceTrace parse_trace(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error("", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_array()) throw parse_error("", "expected a JSON array of rounds");
  ConvergenceTrace trace;
  for (size_t i = 0; i < root.size(); ++i) {
    const std::string base = at_index("", i);
    const json& rj = root[i];
    TraceRow row;
    const json& s = member(rj, base, "s");
    if (!s.is_number_integer()) throw parse_error(field(base, "s"), "expected an integer");
    row.index = s.get<int>();
    const json& rem = member(rj, base, "per_player_remainder");
    for (size_t k = 0; k < rem.size(); ++k)
      row.remainder_per_player.push_back(
          rational_at(rem[k], at_index(field(base, "per_player_remainder"), k)));
    row.averaged = rational_at(member(rj, base, "averaged"), field(base, "averaged"));
    row.bound = rational_at(member(rj, base, "bound"), field(base, "bound"));
    const json& cutter = member(rj, base, "cutter");
    if (!cutter.is_number_integer()) throw parse_error(field(base, "cutter"), "expected an integer");
    row.cutter = cutter.get<int>() - 1;
    trace.num_players = static_cast<int>(row.remainder_per_player.size());
    trace.rows.push_back(std::move(row));
  }
  return trace;
}

std::string serialize_charge_trace(const ChargeDivisionResult& result,
                                   const std::vector<std::string>& player_names) {
  json cells = json::array();
  for (const CellOutcome& cell : result.cells) {
    json cj;
    cj["cell"] = intervals_json(cell.cell.cell);
    cj["engine"] = cell.engine;
    json names = json::array();
    for (int p : cell.sub_participants) names.push_back(player_names[p]);
    cj["participants"] = std::move(names);
    cj["rows"] = json::parse(serialize_trace(cell.detail.trace));
    if (!cell.detail.freeze_certificates.empty()) {
      json fc = json::array();
      for (const FreezeCertificate& f : cell.detail.freeze_certificates) {
        json fj;
        fj["frozen"] = player_names[cell.sub_participants[f.participant]];
        fj["reason"] =
            f.reason == FreezeCertificate::Reason::zero_measure ? "zero_measure" : "epsilon";
        json bounds = json::array();
        for (const auto& [j, value] : f.residual_bounds)
          bounds.push_back(
              json::array({player_names[cell.sub_participants[j]], to_string(value)}));
        fj["residual_bounds"] = std::move(bounds);
        fc.push_back(std::move(fj));
      }
      cj["freeze_certificates"] = std::move(fc);
    }
    cells.push_back(std::move(cj));
  }
  return cells.dump(2);
}

}  // namespace fairdiv
