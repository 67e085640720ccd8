// flatknot: command-line front end for the flatknot library.
//
// Exit codes: 0 = success / positive answer, 1 = negative answer, 2 = error.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flatknot/flatknot.hpp"

namespace {

using flatknot::json;

struct CliConfig {
  std::string format = "text";
  std::size_t max_orbit = flatknot::OrbitLimits{}.max_nodes;
  std::uint64_t seed = 0;
  std::string trace_path;
  bool all_splits = false;

  bool as_json() const { return format == "json"; }
  flatknot::OrbitLimits limits() const { return {max_orbit}; }
};

// Codes from the positional argument, or newline-delimited from stdin.
std::vector<std::string> input_codes(const std::optional<std::string>& code) {
  if (code) return {*code};
  std::vector<std::string> out;
  std::string line;
  while (std::getline(std::cin, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(line);
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw flatknot::Error(flatknot::ErrorCode::IoError, "cannot open " + path);
  out << text;
  if (!out) throw flatknot::Error(flatknot::ErrorCode::IoError, "write failed for " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw flatknot::Error(flatknot::ErrorCode::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string split_text(const flatknot::Split& s) {
  return "gaps=" + std::to_string(s.gap_a) + "," + std::to_string(s.gap_b) + " sides=" + std::to_string(s.side_a) +
         "," + std::to_string(s.side_b);
}

int cmd_canon(const CliConfig& cfg, const std::optional<std::string>& code) {
  for (const auto& c : input_codes(code)) {
    const auto canon = flatknot::canonical_form(flatknot::parse(c)).text;
    if (cfg.as_json()) {
      std::cout << json{{"input", c}, {"canonical", canon}}.dump() << "\n";
    } else {
      std::cout << canon << "\n";
    }
  }
  return 0;
}

int cmd_splits(const CliConfig& cfg, const std::optional<std::string>& code) {
  for (const auto& c : input_codes(code)) {
    const auto d = flatknot::parse(c);
    const auto splits = flatknot::find_splits(d, cfg.all_splits);
    if (cfg.as_json()) {
      json arr = json::array();
      for (const auto& s : splits) arr.push_back(flatknot::to_json(s));
      std::cout << json{{"code", flatknot::serialize(d)}, {"splits", std::move(arr)}}.dump() << "\n";
    } else {
      std::cout << "code=" << flatknot::serialize(d) << " splits=" << splits.size() << "\n";
      for (const auto& s : splits) std::cout << "split " << split_text(s) << "\n";
    }
  }
  return 0;
}

int cmd_upoly(const CliConfig& cfg, const std::optional<std::string>& code) {
  for (const auto& c : input_codes(code)) {
    const auto d = flatknot::parse(c);
    const auto u = flatknot::u_polynomial(d).to_string();
    const auto idx = flatknot::arrow_indices(d);
    if (cfg.as_json()) {
      std::cout << json{{"code", flatknot::serialize(d)}, {"u", u}, {"indices", idx}}.dump() << "\n";
    } else {
      std::cout << "u=" << u << " indices=";
      for (std::size_t i = 0; i < idx.size(); ++i) std::cout << (i ? "," : "") << idx[i];
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_reduce(const CliConfig& cfg, const std::optional<std::string>& code) {
  const auto codes = input_codes(code);
  if (!cfg.trace_path.empty() && codes.size() != 1) {
    throw flatknot::Error(flatknot::ErrorCode::IoError, "--trace needs exactly one input code");
  }
  for (const auto& c : codes) {
    const auto red = flatknot::monotone_reduce(flatknot::parse(c), cfg.limits());
    if (!cfg.trace_path.empty()) write_file(cfg.trace_path, flatknot::to_json(red.trace).dump(2) + "\n");
    if (cfg.as_json()) {
      std::cout << json{{"input", c},
                        {"minimal", red.trace.end.text},
                        {"cr", red.crossing_number()},
                        {"trace", flatknot::to_json(red.trace)}}
                       .dump()
                << "\n";
    } else {
      std::cout << "minimal=" << red.trace.end.text << " cr=" << red.crossing_number()
                << " steps=" << red.trace.steps.size() << "\n";
    }
  }
  return 0;
}

int cmd_equiv(const CliConfig& cfg, const std::string& a, const std::string& b) {
  const auto res = flatknot::equivalent(flatknot::parse(a), flatknot::parse(b), cfg.limits(),
                                        !cfg.trace_path.empty());
  if (res.certificate) write_file(cfg.trace_path, flatknot::to_json(*res.certificate).dump(2) + "\n");
  if (cfg.as_json()) {
    std::cout << json{{"inputs", {a, b}}, {"equivalent", res.equivalent}, {"cr", {res.cr_first, res.cr_second}}}.dump()
              << "\n";
  } else {
    std::cout << (res.equivalent ? "equivalent" : "not equivalent") << " cr=" << res.cr_first << ","
              << res.cr_second << "\n";
  }
  return res.equivalent ? 0 : 1;
}

int cmd_prime(const CliConfig& cfg, const std::optional<std::string>& code) {
  for (const auto& c : input_codes(code)) {
    const auto v = flatknot::is_composite(flatknot::parse(c), cfg.limits());
    if (cfg.as_json()) {
      auto j = flatknot::to_json(v);
      j["input"] = c;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "verdict=" << flatknot::to_string(v.verdict) << " minimal=" << flatknot::serialize(v.minimal)
                << " cr=" << v.minimal.arrows();
      if (v.witness) std::cout << " split " << split_text(*v.witness);
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_csum(const CliConfig& cfg, const std::string& c1, std::size_t g1, const std::string& c2, std::size_t g2) {
  const flatknot::BasedDiagram b1(flatknot::parse(c1), g1);
  const flatknot::BasedDiagram b2(flatknot::parse(c2), g2);
  const auto sum = flatknot::connected_sum(b1, b2);
  if (cfg.as_json()) {
    std::cout << json{{"inputs", {flatknot::serialize(b1), flatknot::serialize(b2)}},
                      {"sum", flatknot::serialize(sum)},
                      {"canonical", flatknot::canonical_form(sum).text}}
                     .dump()
              << "\n";
  } else {
    std::cout << flatknot::serialize(sum) << "\n";
  }
  return 0;
}

int cmd_permutants(const CliConfig& cfg, const std::string& c1, const std::string& c2) {
  const auto set = flatknot::permutant_set(flatknot::parse(c1), flatknot::parse(c2));
  if (cfg.as_json()) {
    json members = json::array();
    for (const auto& [code, sources] : set.members()) {
      json bp = json::array();
      for (auto [a, b] : sources) bp.push_back({a, b});
      members.push_back(json{{"code", code.text}, {"basepoints", std::move(bp)}});
    }
    std::cout << json{{"inputs", {c1, c2}}, {"size", set.size()}, {"members", std::move(members)}}.dump() << "\n";
  } else {
    std::cout << "members=" << set.size() << "\n";
    for (const auto& [code, sources] : set.members()) {
      std::cout << "member code=" << code.text << " basepoints=";
      for (std::size_t i = 0; i < sources.size(); ++i) {
        std::cout << (i ? ";" : "") << sources[i].first << "," << sources[i].second;
      }
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_verify_superadd(const CliConfig& cfg, const std::string& c1, const std::string& c2) {
  flatknot::SamplingPolicy policy;
  policy.seed = cfg.seed;
  const auto rep = flatknot::verify_superadditivity(flatknot::parse(c1), flatknot::parse(c2), cfg.limits(), policy);
  if (cfg.as_json()) {
    std::cout << flatknot::to_json(rep).dump() << "\n";
  } else {
    std::cout << flatknot::to_text(rep);
  }
  return rep.violations.empty() ? 0 : 1;
}

int cmd_tabulate(const CliConfig& cfg, std::size_t n, const std::string& output) {
  const auto records = flatknot::classify(n, cfg.limits());
  if (!output.empty()) flatknot::write_catalog(output, n, records);
  if (cfg.as_json()) {
    json arr = json::array();
    for (const auto& r : records) arr.push_back(flatknot::to_json(r));
    std::cout << json{{"n", n}, {"quotient", "oriented"}, {"records", std::move(arr)}}.dump() << "\n";
  } else if (output.empty()) {
    std::cout << flatknot::format_catalog(n, records);
  } else {
    std::cout << "wrote " << records.size() << " records to " << output << "\n";
  }
  return 0;
}

int cmd_replay(const CliConfig& cfg, const std::string& code, const std::string& trace_file) {
  const auto trace = flatknot::trace_from_string(read_file(trace_file));
  const auto end = flatknot::replay(flatknot::parse(code), trace);
  const auto text = flatknot::serialize(end);
  if (cfg.as_json()) {
    std::cout << json{{"input", code}, {"steps", trace.steps.size()}, {"end", text}}.dump() << "\n";
  } else {
    std::cout << text << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flat virtual knots as Gauss diagrams: reduction, equivalence, connected sums, tabulation"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig cfg;
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--max-orbit", cfg.max_orbit, "Node budget for FR3-orbit search")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Sampling seed for verify-superadd");
  app.add_option("--trace", cfg.trace_path, "Write the reduction trace / equivalence certificate here");
  app.add_flag("--all-splits", cfg.all_splits, "Include degenerate splits");

  std::function<int()> action;
  std::optional<std::string> code;
  std::string a, b, trace_file, output;
  std::size_t g1 = 0, g2 = 0, n = 0;

  auto single = [&](const char* name, const char* help, int (*fn)(const CliConfig&, const std::optional<std::string>&)) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("code", code, "Gauss code (reads stdin lines when omitted)");
    sub->callback([&, fn] { action = [&, fn] { return fn(cfg, code); }; });
  };
  single("canon", "Print the canonical code", cmd_canon);
  single("splits", "List connected-sum splits", cmd_splits);
  single("upoly", "Print the u-polynomial and arrow indices", cmd_upoly);
  single("reduce", "Reduce to a minimal diagram", cmd_reduce);
  single("prime", "Decide Trivial / Prime / Composite", cmd_prime);

  auto* equiv = app.add_subcommand("equiv", "Decide equivalence (exit 0 equivalent, 1 not)");
  equiv->add_option("code_a", a)->required();
  equiv->add_option("code_b", b)->required();
  equiv->callback([&] { action = [&] { return cmd_equiv(cfg, a, b); }; });

  auto* csum = app.add_subcommand("csum", "Connected sum of two based diagrams");
  csum->add_option("code1", a)->required();
  csum->add_option("gap1", g1)->required();
  csum->add_option("code2", b)->required();
  csum->add_option("gap2", g2)->required();
  csum->callback([&] { action = [&] { return cmd_csum(cfg, a, g1, b, g2); }; });

  auto* perm = app.add_subcommand("permutants", "Permutant set of two diagrams");
  perm->add_option("code1", a)->required();
  perm->add_option("code2", b)->required();
  perm->callback([&] { action = [&] { return cmd_permutants(cfg, a, b); }; });

  auto* sup = app.add_subcommand("verify-superadd", "Check crossing-number super-additivity over permutants");
  sup->add_option("code1", a)->required();
  sup->add_option("code2", b)->required();
  sup->callback([&] { action = [&] { return cmd_verify_superadd(cfg, a, b); }; });

  auto* tab = app.add_subcommand("tabulate", "Tabulate flat knot types with exactly n crossings");
  tab->add_option("n", n)->required();
  tab->add_option("--output", output, "Catalog file to write");
  tab->callback([&] { action = [&] { return cmd_tabulate(cfg, n, output); }; });

  auto* rep = app.add_subcommand("replay", "Replay a trace file from a code");
  rep->add_option("code", a)->required();
  rep->add_option("tracefile", trace_file)->required();
  rep->callback([&] { action = [&] { return cmd_replay(cfg, a, trace_file); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return action();
  } catch (const flatknot::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
