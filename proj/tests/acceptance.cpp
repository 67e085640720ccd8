// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
// usage: acceptance <path-to-flatknot-cli>

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "support.hpp"

namespace {

using namespace flatknot;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int k, const Outcome& o) {
  std::cout << "AC" << k << " " << (o.pass ? "PASS" : "FAIL") << " " << o.detail << std::endl;
  if (!o.pass) ++failures;
}

void run_criterion(int k, const std::function<Outcome()>& body) {
  try {
    report(k, body());
  } catch (const std::exception& e) {
    report(k, {false, std::string("exception: ") + e.what()});
  }
}

std::vector<GaussDiagram> diagrams_up_to(std::size_t n) {
  std::vector<GaussDiagram> out;
  for (std::size_t k = 0; k <= n; ++k) {
    for (auto& d : enumerate_diagrams(k)) out.push_back(std::move(d));
  }
  return out;
}

Outcome small_triviality() {
  const auto t0 = Clock::now();
  std::size_t checked = 0, bad = 0;
  for (std::size_t n = 1; n <= 2; ++n) {
    for (const auto& d : enumerate_diagrams(n)) {
      ++checked;
      if (crossing_number(d) != 0) ++bad;
    }
  }
  const double secs = seconds_since(t0);
  return {bad == 0 && checked == 5 && secs < 10.0,
          std::to_string(checked) + " diagrams, " + std::to_string(bad) + " nontrivial, " + std::to_string(secs) + " s"};
}

Outcome first_nontrivial(const std::string& cli);

Outcome trivial_summands_phenomenon() {
  const auto t0 = Clock::now();
  const auto twos = enumerate_diagrams(2);
  std::size_t hits = 0, pairs = 0;
  std::string witness;
  for (const auto& a : twos) {
    for (const auto& b : twos) {
      if (crossing_number(a) != 0 || crossing_number(b) != 0) continue;
      ++pairs;
      std::set<std::size_t> crs;
      const auto set = permutant_set(a, b);
      for (const auto& [code, src] : set.members()) crs.insert(crossing_number(parse(code.text)));
      if (crs.count(0) && crs.count(4)) {
        ++hits;
        if (witness.empty()) witness = serialize(a) + " & " + serialize(b);
      }
    }
  }
  const double secs = seconds_since(t0);
  return {hits > 0 && secs < 60.0, std::to_string(pairs) + " pairs searched, " + std::to_string(hits) +
                                       " with cr 0 and 4 members (first: " + witness + "), " + std::to_string(secs) +
                                       " s"};
}

Outcome superadditivity() {
  const auto t0 = Clock::now();
  std::vector<std::vector<GaussDiagram>> by_n;
  for (std::size_t n = 0; n <= 5; ++n) by_n.push_back(enumerate_diagrams(n));
  std::size_t reports = 0, members = 0, violations = 0, sampled = 0;
  for (std::size_t n1 = 0; n1 <= 5; ++n1) {
    for (std::size_t n2 = 0; n1 + n2 <= 5; ++n2) {
      for (const auto& a : by_n[n1]) {
        for (const auto& b : by_n[n2]) {
          const auto rep = verify_superadditivity(a, b);
          ++reports;
          members += rep.rows.size();
          violations += rep.violations.size();
          sampled += !rep.exhaustive;
          for (const auto& row : rep.rows) violations += row.cr < rep.c1 + rep.c2;
        }
      }
    }
  }
  const auto pair = parse("+1 +2 -1 -2");
  const auto strict = verify_superadditivity(pair, pair);
  const bool ok = violations == 0 && sampled == 0 && strict.strict_somewhere && strict.inequality_holds;
  return {ok, std::to_string(reports) + " ordered pairs, " + std::to_string(members) + " permutant members, " +
                  std::to_string(violations) + " violations, strict on the interleaved 2-arrow pair: " +
                  (strict.strict_somewhere ? "yes" : "no") + ", " + std::to_string(seconds_since(t0)) + " s"};
}

Outcome permutant_minimality() {
  const auto t0 = Clock::now();
  std::vector<std::vector<GaussDiagram>> minimal(7);
  for (std::size_t n = 0; n <= 6; ++n) {
    for_each_diagram(n, [&](const GaussDiagram& d) {
      if (is_minimal(d)) minimal[n].push_back(d);
    });
  }
  std::size_t pairs = 0, members = 0, violations = 0;
  for (std::size_t n1 = 0; n1 <= 6; ++n1) {
    for (std::size_t n2 = 0; n1 + n2 <= 6; ++n2) {
      for (const auto& a : minimal[n1]) {
        for (const auto& b : minimal[n2]) {
          ++pairs;
          const auto set = permutant_set(a, b);
          for (const auto& [code, src] : set.members()) {
            ++members;
            const auto d = parse(code.text);
            if (!is_minimal(d) || crossing_number(d) != n1 + n2) ++violations;
          }
        }
      }
    }
  }
  std::string counts;
  for (std::size_t n = 0; n <= 6; ++n) counts += (n ? "," : "") + std::to_string(minimal[n].size());
  return {violations == 0 && pairs > 0, "minimal diagrams by n=" + counts + "; " + std::to_string(pairs) +
                                            " pairs, " + std::to_string(members) + " members, " +
                                            std::to_string(violations) + " violations, " +
                                            std::to_string(seconds_since(t0)) + " s"};
}

// Starting diagrams are connected sums of two nontrivial long knots: minimal
// composite diagrams at n <= 5, every permutant of two minimal 3-arrow diagrams,
// and sums of non-minimal diagrams of 3-arrow primes.
Outcome split_preservation() {
  std::vector<GaussDiagram> starts;
  for (std::size_t n = 4; n <= 5; ++n) {
    for (const auto& rec : classify(n)) {
      if (rec.verdict != Verdict::Composite) continue;
      const auto orbit = fr3_orbit(parse(rec.code.text));
      for (const auto& node : orbit.nodes()) starts.push_back(node.diagram);
    }
  }
  for (const auto& a : classify(3)) {
    for (const auto& b : classify(3)) {
      const auto set = permutant_set(parse(a.code.text), parse(b.code.text));
      for (const auto& [code, src] : set.members()) starts.push_back(parse(code.text));
    }
  }
  std::mt19937_64 rng(20240601);
  // non-minimal summands: a 3-arrow prime thickened by one or two insertions
  const auto primes = classify(3);
  auto thicken = [&] {
    auto d = parse(primes[testing_support::pick(rng, primes.size())].code.text);
    const std::size_t extra = 1 + testing_support::pick(rng, 2);
    for (std::size_t i = 0; i < extra; ++i) {
      std::vector<Move> ins;
      for (auto& m : enumerate_all(d)) {
        if (m.kind == MoveKind::FR1Insert || m.kind == MoveKind::FR2Insert) ins.push_back(std::move(m));
      }
      d = apply(d, ins[testing_support::pick(rng, ins.size())]);
    }
    return d;
  };
  for (int i = 0; i < 200; ++i) {
    const auto a = thicken();
    const auto b = thicken();
    starts.push_back(connected_sum({a, testing_support::pick(rng, a.gap_count())},
                                   {b, testing_support::pick(rng, b.gap_count())}));
  }
  std::map<MoveKind, std::size_t> kinds;
  std::size_t violations = 0;
  std::string example;
  const int trials = 10000;
  for (int trial = 0; trial < trials; ++trial) {
    auto d = starts[testing_support::pick(rng, starts.size())];
    const std::size_t len = 1 + testing_support::pick(rng, 6);
    for (std::size_t step = 0; step < len; ++step) {
      // kind first, then site, so insertions do not swamp the rarer moves
      std::map<MoveKind, std::vector<Move>> by_kind;
      for (auto& m : enumerate_all(d)) {
        if (m.kind == MoveKind::FR2Insert) continue;
        if (m.kind == MoveKind::FR1Insert && d.arrows() >= 12) continue;
        by_kind[m.kind].push_back(std::move(m));
      }
      if (by_kind.empty()) break;
      const auto& moves = std::next(by_kind.begin(), testing_support::pick(rng, by_kind.size()))->second;
      const auto& m = moves[testing_support::pick(rng, moves.size())];
      d = apply(d, m);
      kinds[m.kind]++;
      if (!has_nontrivial_split(d)) {
        ++violations;
        if (example.empty()) example = serialize(d);
        break;
      }
    }
  }
  std::string mix;
  for (const auto& [k, c] : kinds) mix += " " + std::string(to_string(k)) + "=" + std::to_string(c);
  return {violations == 0, std::to_string(trials) + " trials from " + std::to_string(starts.size()) +
                               " starts, moves:" + mix + ", " + std::to_string(violations) + " violations" +
                               (example.empty() ? "" : " (e.g. " + example + ")")};
}

Outcome compositeness_stability() {
  std::size_t classes = 0, members = 0, violations = 0;
  for (std::size_t n = 0; n <= 5; ++n) {
    for (const auto& rec : classify(n)) {
      if (rec.verdict != Verdict::Composite) continue;
      ++classes;
      const auto orbit = fr3_orbit(parse(rec.code.text));
      for (const auto& node : orbit.nodes()) {
        ++members;
        if (!has_nontrivial_split(node.diagram)) ++violations;
      }
    }
  }
  return {violations == 0 && classes > 0, std::to_string(classes) + " composite classes, " + std::to_string(members) +
                                              " orbit members, " + std::to_string(violations) + " without a split"};
}

Outcome invariant_cross_check() {
  std::mt19937_64 rng(777);
  std::map<MoveKind, std::size_t> kinds;
  std::size_t moves = 0, violations = 0;
  while (moves < 10000) {
    auto d = testing_support::random_diagram(rng, testing_support::pick(rng, 7));
    const auto u = u_polynomial(d);
    for (int step = 0; step < 20 && moves < 10000; ++step) {
      Move m;
      const auto next = testing_support::random_step(rng, d, 6, &m);
      if (next == d && enumerate_all(d).empty()) break;
      d = next;
      kinds[m.kind]++;
      ++moves;
      if (u_polynomial(d) != u) ++violations;
    }
  }
  std::string mix;
  for (const auto& [k, c] : kinds) mix += " " + std::string(to_string(k)) + "=" + std::to_string(c);
  const bool all_kinds = kinds.size() == 5;
  return {violations == 0 && all_kinds,
          std::to_string(moves) + " moves," + mix + ", " + std::to_string(violations) + " violations"};
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  const auto ds = diagrams_up_to(3);
  const oracle::MoveGraph graph;
  std::vector<oracle::Word> starts;
  for (const auto& d : ds) starts.push_back(oracle::from_text(serialize(d)));
  const std::size_t ceiling = 3 + 2;
  const auto ids = graph.components(starts, ceiling);
  std::size_t pairs = 0, disagree = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = 0; j < ds.size(); ++j) {
      ++pairs;
      const bool by_oracle = ids.at(oracle::key(starts[i])) == ids.at(oracle::key(starts[j]));
      if (equivalent(ds[i], ds[j]).equivalent != by_oracle) ++disagree;
    }
  }
  std::set<int> classes;
  for (const auto& s : starts) classes.insert(ids.at(oracle::key(s)));
  return {disagree == 0, std::to_string(ds.size()) + " diagrams, " + std::to_string(pairs) + " ordered pairs, " +
                             std::to_string(classes.size()) + " oracle classes, ceiling " + std::to_string(ceiling) +
                             ", " + std::to_string(disagree) + " disagreements, " + std::to_string(seconds_since(t0)) +
                             " s"};
}

// CLI plumbing

struct Run {
  std::string out;
  int status = -1;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run_cli(const std::string& cli, const std::vector<std::string>& args, const std::string& input = "") {
  const auto in_path = fs::temp_directory_path() / ("flatknot_acceptance_stdin_" + std::to_string(::getpid()));
  std::ofstream(in_path, std::ios::binary) << input;
  std::string cmd = quote(cli);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " < " + quote(in_path.string()) + " 2>&1";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  fs::remove(in_path);
  return r;
}

Outcome first_nontrivial(const std::string& cli) {
  const auto recs = classify(3);
  bool ok = !recs.empty();
  for (const auto& r : recs) ok = ok && r.cr == 3 && r.verdict == Verdict::Prime;
  const auto tab = run_cli(cli, {"tabulate", "3"});
  const bool cli_ok = tab.status == 0 && tab.out == format_catalog(3, recs);
  const std::size_t frozen = 2;
  return {ok && cli_ok && recs.size() == frozen,
          std::to_string(recs.size()) + " classes at n=3 (frozen " + std::to_string(frozen) +
              "), all cr 3 and Prime: " + (ok ? "yes" : "no") + ", CLI tabulate agrees: " + (cli_ok ? "yes" : "no")};
}

Outcome determinism(const std::string& cli) {
  const auto dir = fs::temp_directory_path() / ("flatknot_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string min3 = "+1 +2 +3 -1 -3 -2";
  const std::string composite = "+1 +2 -1 -2 +3 +4 -3 -4";
  const std::string busy = "+1 -2 +3 -1 +4 +2 -3 -4 +5 -5";
  // nine arrows with 18 gaps each side: 324 basepoint pairs, so sampling kicks in
  const std::string wide = "+1 +2 +3 -1 -3 -2 +4 -4 +5 -5 +6 -6 +7 -7 +8 -8 +9 -9";
  const auto trace = (dir / "trace.json").string();
  const auto cert = (dir / "cert.json").string();
  const auto catalog = (dir / "cat.txt").string();
  struct Case {
    std::vector<std::string> args;
    std::string input;
    std::string file;
  };
  std::vector<Case> cases{
      {{"canon", busy}, "", ""},
      {{"canon"}, min3 + "\n" + busy + "\n0\n", ""},
      {{"splits", composite}, "", ""},
      {{"--all-splits", "splits", composite}, "", ""},
      {{"upoly", busy}, "", ""},
      {{"--trace", trace, "reduce", busy}, "", trace},
      {{"reduce"}, busy + "\n" + composite + "\n", ""},
      {{"--trace", cert, "equiv", busy, "+1 -1"}, "", cert},
      {{"equiv", min3, "0"}, "", ""},
      {{"prime", composite}, "", ""},
      {{"csum", min3, "2", composite, "5"}, "", ""},
      {{"permutants", min3, composite}, "", ""},
      {{"verify-superadd", min3, min3}, "", ""},
      {{"--seed", "42", "verify-superadd", wide, wide}, "", ""},
      {{"tabulate", "4"}, "", ""},
      {{"tabulate", "4", "--output", catalog}, "", catalog},
      {{"replay", busy, trace}, "", ""},
      {{"canon", "+1 +1"}, "", ""},
  };
  std::size_t runs = 0, mismatches = 0;
  std::string first_bad;
  for (const auto& base : cases) {
    for (const char* fmt : {"text", "json"}) {
      auto args = base.args;
      args.insert(args.begin(), {"--format", fmt});
      std::string outputs[2], files[2];
      int codes[2];
      for (int rep = 0; rep < 2; ++rep) {
        // replay reads the trace written by the reduce case, so leave that file alone
        if (!base.file.empty()) fs::remove(base.file);
        const auto r = run_cli(cli, args, base.input);
        outputs[rep] = r.out;
        codes[rep] = r.status;
        if (!base.file.empty()) files[rep] = slurp(base.file);
        ++runs;
      }
      if (outputs[0] != outputs[1] || codes[0] != codes[1] || files[0] != files[1] || codes[0] < 0) {
        ++mismatches;
        if (first_bad.empty()) first_bad = base.args.front() + " (" + fmt + ")";
      }
    }
  }
  // the sampled report must actually be sampled, and a different seed must change the sample
  const auto sampled = json::parse(run_cli(cli, {"--format", "json", "--seed", "42", "verify-superadd", wide, wide}).out);
  const auto other = json::parse(run_cli(cli, {"--format", "json", "--seed", "43", "verify-superadd", wide, wide}).out);
  const bool sampling_ok = sampled.at("exhaustive") == false && sampled.at("members") != other.at("members");
  fs::remove_all(dir);
  return {mismatches == 0 && sampling_ok,
          std::to_string(cases.size() * 2) + " command variants, " + std::to_string(runs) + " runs, " +
              std::to_string(mismatches) + " mismatches" + (first_bad.empty() ? "" : " (first: " + first_bad + ")") +
              ", sampled superadditivity seeded: " + (sampling_ok ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <flatknot-cli>\n";
    return 2;
  }
  const std::string cli = argv[1];
  run_criterion(1, small_triviality);
  run_criterion(2, [&] { return first_nontrivial(cli); });
  run_criterion(3, trivial_summands_phenomenon);
  run_criterion(4, superadditivity);
  run_criterion(5, permutant_minimality);
  run_criterion(6, split_preservation);
  run_criterion(7, compositeness_stability);
  run_criterion(8, invariant_cross_check);
  run_criterion(9, oracle_equivalence);
  run_criterion(10, [&] { return determinism(cli); });
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
