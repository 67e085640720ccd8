#pragma once

// JSON and text forms of moves, traces, verdicts, reports and catalog records.
//
// Move record:  {"kind": "FR2Remove", "variant": "nested-th", "positions": [0, 1, 4, 5]}
//               text: "FR2Remove nested-th 0 1 4 5"
// Trace:        {"start": <code>, "end": <code>, "steps": [<move>...]}
//               text: "start=<code>" / one move per line / "end=<code>"

#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "flatknot/catalog.hpp"
#include "flatknot/compose.hpp"
#include "flatknot/invariants.hpp"
#include "flatknot/moves.hpp"
#include "flatknot/reduce.hpp"

namespace flatknot {

using json = nlohmann::ordered_json;

inline json to_json(const Move& m) {
  return json{{"kind", std::string(to_string(m.kind))}, {"variant", variant_name(m.kind, m.variant)},
              {"positions", m.positions}};
}

inline Move move_from_json(const json& j) {
  try {
    const auto kind = move_kind_from_string(j.at("kind").get<std::string>());
    if (!kind) throw Error(ErrorCode::MalformedRecord, "unknown move kind");
    const auto variant = variant_from_string(*kind, j.at("variant").get<std::string>());
    if (!variant) throw Error(ErrorCode::MalformedRecord, "unknown move variant");
    return {*kind, *variant, j.at("positions").get<std::vector<std::size_t>>()};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedRecord, e.what());
  }
}

inline std::string to_text(const Move& m) {
  std::string out = std::string(to_string(m.kind)) + " " + variant_name(m.kind, m.variant);
  for (auto p : m.positions) out += " " + std::to_string(p);
  return out;
}

inline Move move_from_text(std::string_view line) {
  const auto tokens = detail::split_ws(line);
  if (tokens.size() < 2) throw Error(ErrorCode::MalformedRecord, "bad move line: " + std::string(line));
  const auto kind = move_kind_from_string(tokens[0]);
  if (!kind) throw Error(ErrorCode::MalformedRecord, "unknown move kind: " + std::string(tokens[0]));
  const auto variant = variant_from_string(*kind, tokens[1]);
  if (!variant) throw Error(ErrorCode::MalformedRecord, "unknown move variant: " + std::string(tokens[1]));
  Move m{*kind, *variant, {}};
  for (std::size_t i = 2; i < tokens.size(); ++i) {
    std::size_t p = 0;
    if (!detail::parse_size(tokens[i], p)) throw Error(ErrorCode::MalformedRecord, "bad position: " + std::string(tokens[i]));
    m.positions.push_back(p);
  }
  return m;
}

inline json to_json(const ReductionTrace& t) {
  json steps = json::array();
  for (const auto& m : t.steps) steps.push_back(to_json(m));
  return json{{"start", t.start.text}, {"end", t.end.text}, {"steps", std::move(steps)}};
}

inline std::string to_text(const ReductionTrace& t) {
  std::string out = "start=" + t.start.text + "\n";
  for (const auto& m : t.steps) out += to_text(m) + "\n";
  out += "end=" + t.end.text + "\n";
  return out;
}

// Accepts either form; JSON is recognised by a leading '{'.
inline ReductionTrace trace_from_string(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw Error(ErrorCode::MalformedRecord, "empty trace");
  ReductionTrace t;
  if (text[first] == '{') {
    try {
      const auto j = json::parse(text);
      t.start = CanonicalCode{j.at("start").get<std::string>()};
      t.end = CanonicalCode{j.at("end").get<std::string>()};
      for (const auto& s : j.at("steps")) t.steps.push_back(move_from_json(s));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::MalformedRecord, e.what());
    }
    return t;
  }
  std::istringstream in{std::string(text)};
  std::string line;
  bool have_start = false, have_end = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.starts_with("start=")) {
      t.start = CanonicalCode{line.substr(6)};
      have_start = true;
    } else if (line.starts_with("end=")) {
      t.end = CanonicalCode{line.substr(4)};
      have_end = true;
    } else {
      t.steps.push_back(move_from_text(line));
    }
  }
  if (!have_start || !have_end) throw Error(ErrorCode::MalformedRecord, "trace needs start= and end= lines");
  return t;
}

inline json to_json(const Split& s) {
  return json{{"gaps", {s.gap_a, s.gap_b}}, {"sides", {s.side_a, s.side_b}}};
}

inline json to_json(const CompositenessVerdict& v) {
  json j{{"verdict", std::string(to_string(v.verdict))},
         {"minimal", canonical_form(v.minimal).text},
         {"cr", v.minimal.arrows()}};
  j["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
  return j;
}

inline json to_json(const SuperadditivityReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json bp = json::array();
    for (auto [a, b] : row.basepoints) bp.push_back({a, b});
    rows.push_back(json{{"code", row.code.text},
                        {"cr", row.cr},
                        {"class", row.class_id},
                        {"minimal", row.minimal},
                        {"basepoints", std::move(bp)}});
  }
  json classes = json::array();
  for (const auto& c : r.classes) classes.push_back(c.text);
  return json{{"inputs", {r.first.text, r.second.text}},
              {"c1", r.c1},
              {"c2", r.c2},
              {"inputs_minimal", {r.first_minimal, r.second_minimal}},
              {"exhaustive", r.exhaustive},
              {"members", std::move(rows)},
              {"inequality", r.inequality_holds},
              {"equality", r.equality_holds ? json(*r.equality_holds) : json(nullptr)},
              {"strict", r.strict_somewhere},
              {"distinct_classes", r.distinct_classes()},
              {"class_keys", std::move(classes)},
              {"violations", r.violations}};
}

inline std::string to_text(const SuperadditivityReport& r) {
  std::ostringstream out;
  out << "inputs: " << r.first.text << " | " << r.second.text << "\n";
  out << "c1=" << r.c1 << " c2=" << r.c2 << " minimal=" << (r.first_minimal ? "yes" : "no") << ","
      << (r.second_minimal ? "yes" : "no") << " exhaustive=" << (r.exhaustive ? "yes" : "no") << "\n";
  for (const auto& row : r.rows) {
    out << "member code=" << row.code.text << " cr=" << row.cr << " class=" << row.class_id
        << " minimal=" << (row.minimal ? "yes" : "no") << "\n";
  }
  out << "inequality=" << (r.inequality_holds ? "holds" : "VIOLATED") << "\n";
  out << "equality=" << (r.equality_holds ? (*r.equality_holds ? "holds" : "VIOLATED") : "n/a") << "\n";
  out << "strict=" << (r.strict_somewhere ? "yes" : "no") << "\n";
  out << "distinct_classes=" << r.distinct_classes() << "\n";
  for (const auto& v : r.violations) out << "violation: " << v << "\n";
  return out.str();
}

inline json to_json(const CatalogRecord& r) {
  return json{{"class", r.class_id},     {"code", r.code.text},
              {"cr", r.cr},              {"u", r.u},
              {"verdict", std::string(1, verdict_letter(r.verdict))}, {"orbit", r.orbit_size}};
}

}  // namespace flatknot
