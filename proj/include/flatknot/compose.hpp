#pragma once

// Connected sums of based diagrams, permutant sets, and compositeness.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "flatknot/gauss.hpp"
#include "flatknot/reduce.hpp"

namespace flatknot {

// Splices the two circles at their basepoints; both words keep counterclockwise order.
inline GaussDiagram connected_sum(const BasedDiagram& b1, const BasedDiagram& b2) {
  const auto w1 = rebase(b1.diagram, b1.base);
  const auto w2 = rebase(b2.diagram, b2.base);
  const auto shift = static_cast<std::uint32_t>(w1.arrows());
  std::vector<Endpoint> word(w1.word().begin(), w1.word().end());
  for (const auto& e : w2.word()) word.push_back({e.arrow + shift, e.role});
  return GaussDiagram(std::move(word));
}

inline GaussDiagram closure(const BasedDiagram& b) { return b.diagram; }

class PermutantSet {
 public:
  using Basepoints = std::pair<std::size_t, std::size_t>;

  PermutantSet(GaussDiagram d1, GaussDiagram d2) : first_(std::move(d1)), second_(std::move(d2)) {
    for (std::size_t g1 = 0; g1 < first_.gap_count(); ++g1) {
      for (std::size_t g2 = 0; g2 < second_.gap_count(); ++g2) {
        add(g1, g2);
      }
    }
  }

  const GaussDiagram& first() const noexcept { return first_; }
  const GaussDiagram& second() const noexcept { return second_; }
  std::size_t size() const noexcept { return members_.size(); }

  // canonical code -> basepoint pairs producing it (lexicographic order)
  const std::map<CanonicalCode, std::vector<Basepoints>>& members() const noexcept { return members_; }

 private:
  void add(std::size_t g1, std::size_t g2) {
    const auto sum = connected_sum({first_, g1}, {second_, g2});
    members_[canonical_form(sum)].emplace_back(g1, g2);
  }

  GaussDiagram first_;
  GaussDiagram second_;
  std::map<CanonicalCode, std::vector<Basepoints>> members_;
};

inline PermutantSet permutant_set(const GaussDiagram& d1, const GaussDiagram& d2) { return {d1, d2}; }

enum class Verdict { Trivial, Prime, Composite };

constexpr std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Trivial: return "Trivial";
    case Verdict::Prime: return "Prime";
    case Verdict::Composite: return "Composite";
  }
  return "?";
}

constexpr char verdict_letter(Verdict v) noexcept { return to_string(v)[0]; }

struct CompositenessVerdict {
  Verdict verdict = Verdict::Trivial;
  GaussDiagram minimal;
  std::optional<Split> witness;
};

// Decided on the reduced diagram. A minimal diagram with a split into two
// nonempty sides is composite: were the knot equal to one summand, it would have
// fewer crossings than the minimal diagram. Conversely every minimal diagram of
// a composite knot is a connected-sum diagram, so no split means prime.
inline CompositenessVerdict is_composite(const GaussDiagram& d, const OrbitLimits& limits = {}) {
  CompositenessVerdict out;
  out.minimal = monotone_reduce(d, limits).minimal;
  if (out.minimal.empty()) return out;
  const auto splits = find_splits(out.minimal);
  if (splits.empty()) {
    out.verdict = Verdict::Prime;
  } else {
    out.verdict = Verdict::Composite;
    out.witness = splits.front();
  }
  return out;
}

struct SamplingPolicy {
  std::uint64_t seed = 0;
  std::size_t exhaustive_limit = 256;  // basepoint pairs
  std::size_t sample_size = 256;
};

struct PermutantRow {
  CanonicalCode code;
  std::vector<PermutantSet::Basepoints> basepoints;
  std::size_t cr = 0;
  std::size_t class_id = 0;
  bool minimal = false;
};

struct SuperadditivityReport {
  CanonicalCode first;
  CanonicalCode second;
  std::size_t c1 = 0;
  std::size_t c2 = 0;
  bool first_minimal = false;
  bool second_minimal = false;
  bool exhaustive = true;
  std::vector<PermutantRow> rows;  // sorted by code
  std::vector<CanonicalCode> classes;  // class id -> class key
  bool inequality_holds = true;
  std::optional<bool> equality_holds;  // only when both inputs are minimal
  bool strict_somewhere = false;
  std::vector<std::string> violations;

  std::size_t distinct_classes() const noexcept { return classes.size(); }
};

namespace detail {

// Basepoint pairs to examine: all of them, or a seeded sample without replacement.
// Uses raw mt19937_64 output so results agree across standard libraries.
inline std::vector<std::pair<std::size_t, std::size_t>> basepoint_pairs(std::size_t gaps1, std::size_t gaps2,
                                                                        const SamplingPolicy& policy,
                                                                        bool& exhaustive) {
  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t a = 0; a < gaps1; ++a) {
    for (std::size_t b = 0; b < gaps2; ++b) all.emplace_back(a, b);
  }
  exhaustive = all.size() <= policy.exhaustive_limit || all.size() <= policy.sample_size;
  if (exhaustive) return all;
  std::mt19937_64 rng(policy.seed);
  for (std::size_t i = 0; i < policy.sample_size; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (all.size() - i));
    std::swap(all[i], all[j]);
  }
  all.resize(policy.sample_size);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace detail

inline SuperadditivityReport verify_superadditivity(const GaussDiagram& d1, const GaussDiagram& d2,
                                                    const OrbitLimits& limits = {},
                                                    const SamplingPolicy& policy = {}) {
  SuperadditivityReport rep;
  rep.first = canonical_form(d1);
  rep.second = canonical_form(d2);
  rep.c1 = crossing_number(d1, limits);
  rep.c2 = crossing_number(d2, limits);
  rep.first_minimal = is_minimal(d1, limits);
  rep.second_minimal = is_minimal(d2, limits);
  const std::size_t bound = rep.c1 + rep.c2;

  std::map<CanonicalCode, PermutantRow> rows;
  for (auto [g1, g2] : detail::basepoint_pairs(d1.gap_count(), d2.gap_count(), policy, rep.exhaustive)) {
    const auto code = canonical_form(connected_sum({d1, g1}, {d2, g2}));
    auto& row = rows[code];
    row.code = code;
    row.basepoints.emplace_back(g1, g2);
  }

  std::map<CanonicalCode, std::size_t> class_ids;
  const bool check_equality = rep.first_minimal && rep.second_minimal;
  if (check_equality) rep.equality_holds = true;
  for (auto& [code, row] : rows) {
    const auto diagram = parse(code.text);
    const auto red = monotone_reduce(diagram, limits);
    row.cr = red.crossing_number();
    row.minimal = row.cr == diagram.arrows();
    const auto key = fr3_orbit(red.minimal, limits).codes().front();
    auto [it, inserted] = class_ids.try_emplace(key, rep.classes.size());
    if (inserted) rep.classes.push_back(key);
    row.class_id = it->second;
    if (row.cr < bound) {
      rep.inequality_holds = false;
      rep.violations.push_back("cr(" + code.text + ") = " + std::to_string(row.cr) + " < " + std::to_string(bound));
    }
    if (row.cr > bound) rep.strict_somewhere = true;
    if (check_equality && (row.cr != bound || !row.minimal)) {
      rep.equality_holds = false;
      rep.violations.push_back("minimal summands but cr(" + code.text + ") = " + std::to_string(row.cr));
    }
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace flatknot
