#pragma once

// Monotone reduction and equivalence of flat virtual knots.
//
// Every diagram reaches a minimal diagram through FR3 moves and decreasing
// FR1/FR2 moves alone, and any two minimal diagrams of one knot differ by FR3
// moves. Reduction therefore alternates greedy decreasing moves with an
// exhaustive search of the current FR3 orbit, and equivalence is orbit
// membership of the reduced diagrams.
//
// Trace steps act on canonical diagrams: step k applies to the canonical form
// of the result of step k-1, beginning with the canonical form of the input.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "flatknot/gauss.hpp"
#include "flatknot/invariants.hpp"
#include "flatknot/moves.hpp"

namespace flatknot {

struct OrbitLimits {
  std::size_t max_nodes = 1'000'000;
};

struct ReductionTrace {
  CanonicalCode start;
  std::vector<Move> steps;
  CanonicalCode end;
};

struct Reduction {
  GaussDiagram minimal;  // canonical
  ReductionTrace trace;

  std::size_t crossing_number() const noexcept { return minimal.arrows(); }
};

class Fr3Orbit {
 public:
  struct Node {
    GaussDiagram diagram;  // canonical
    CanonicalCode code;
    std::ptrdiff_t parent = -1;
    Move via;  // move on the parent's diagram that reaches this node
  };

  // Nodes in discovery order; each BFS layer is sorted by code.
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  bool complete() const noexcept { return complete_; }

  bool contains(const CanonicalCode& code) const { return index_.count(code.text) != 0; }

  std::optional<std::size_t> find(const CanonicalCode& code) const {
    auto it = index_.find(code.text);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<CanonicalCode> codes() const {
    std::vector<CanonicalCode> out;
    out.reserve(nodes_.size());
    for (const auto& n : nodes_) out.push_back(n.code);
    std::sort(out.begin(), out.end());
    return out;
  }

  // FR3 moves leading from the root to node `target`.
  std::vector<Move> path_to(std::size_t target) const {
    std::vector<Move> rev;
    for (auto i = static_cast<std::ptrdiff_t>(target); nodes_[i].parent >= 0; i = nodes_[i].parent) {
      rev.push_back(nodes_[i].via);
    }
    return {rev.rbegin(), rev.rend()};
  }

  // BFS from `start`; stops at the first node (layer by layer, sorted codes) for
  // which `stop` is true. Throws OrbitBudgetExceeded past `limits.max_nodes`.
  static Fr3Orbit explore(const GaussDiagram& start, const OrbitLimits& limits,
                          const std::function<bool(const GaussDiagram&)>& stop = {}) {
    if (limits.max_nodes < 1) throw Error(ErrorCode::OrbitBudgetExceeded, "max_nodes must be at least 1");
    Fr3Orbit orbit;
    auto root = canonicalize(start);
    orbit.add(Node{std::move(root.diagram), std::move(root.code), -1, {}});
    std::vector<std::size_t> layer{0};
    while (!layer.empty()) {
      std::vector<std::size_t> next_layer;
      for (std::size_t idx : layer) {
        if (stop && stop(orbit.nodes_[idx].diagram)) {
          orbit.hit_ = idx;
          return orbit;
        }
        const GaussDiagram here = orbit.nodes_[idx].diagram;
        for (const auto& m : enumerate_fr3(here)) {
          auto c = canonicalize(apply(here, m));
          if (orbit.index_.count(c.code.text)) continue;
          if (orbit.nodes_.size() >= limits.max_nodes) {
            throw Error(ErrorCode::OrbitBudgetExceeded,
                        "FR3 orbit exceeds " + std::to_string(limits.max_nodes) + " nodes");
          }
          next_layer.push_back(orbit.nodes_.size());
          orbit.add(Node{std::move(c.diagram), std::move(c.code), static_cast<std::ptrdiff_t>(idx), m});
        }
      }
      std::sort(next_layer.begin(), next_layer.end(),
                [&](std::size_t a, std::size_t b) { return orbit.nodes_[a].code < orbit.nodes_[b].code; });
      layer = std::move(next_layer);
    }
    orbit.complete_ = true;
    return orbit;
  }

  std::optional<std::size_t> hit() const noexcept { return hit_; }

 private:
  void add(Node n) {
    index_.emplace(n.code.text, nodes_.size());
    nodes_.push_back(std::move(n));
  }

  std::vector<Node> nodes_;
  std::unordered_map<std::string, std::size_t> index_;
  std::optional<std::size_t> hit_;
  bool complete_ = false;
};

inline Fr3Orbit fr3_orbit(const GaussDiagram& d, const OrbitLimits& limits = {}) {
  return Fr3Orbit::explore(d, limits);
}

inline Reduction monotone_reduce(const GaussDiagram& d, const OrbitLimits& limits = {}) {
  Reduction out;
  auto state = canonicalize(d);
  out.trace.start = state.code;
  for (;;) {
    auto sites = enumerate_decreasing(state.diagram);
    if (!sites.empty()) {
      out.trace.steps.push_back(sites.front());
      state = canonicalize(apply(state.diagram, sites.front()));
      continue;
    }
    auto orbit = Fr3Orbit::explore(state.diagram, limits, has_decreasing_site);
    if (!orbit.hit()) break;
    const auto& node = orbit.nodes()[*orbit.hit()];
    for (auto& m : orbit.path_to(*orbit.hit())) out.trace.steps.push_back(std::move(m));
    const auto site = enumerate_decreasing(node.diagram).front();
    out.trace.steps.push_back(site);
    state = canonicalize(apply(node.diagram, site));
  }
  out.trace.end = state.code;
  out.minimal = std::move(state.diagram);
  return out;
}

inline bool is_minimal(const GaussDiagram& d, const OrbitLimits& limits = {}) {
  return !Fr3Orbit::explore(d, limits, has_decreasing_site).hit().has_value();
}

inline std::size_t crossing_number(const GaussDiagram& d, const OrbitLimits& limits = {}) {
  return monotone_reduce(d, limits).crossing_number();
}

// Least canonical code in the FR3 orbit of the reduced diagram: a complete
// invariant of the knot type.
inline CanonicalCode knot_class_key(const GaussDiagram& d, const OrbitLimits& limits = {}) {
  const auto red = monotone_reduce(d, limits);
  return fr3_orbit(red.minimal, limits).codes().front();
}

// Replays a trace from `start`, validating every step and the end code.
inline GaussDiagram replay(const GaussDiagram& start, const ReductionTrace& trace) {
  auto state = canonicalize(start);
  if (state.code != trace.start) {
    throw Error(ErrorCode::SiteMismatch, "trace starts at '" + trace.start.text + "', input is '" + state.code.text + "'");
  }
  for (const auto& m : trace.steps) state = canonicalize(apply(state.diagram, m));
  if (state.code != trace.end) {
    throw Error(ErrorCode::SiteMismatch, "trace ends at '" + state.code.text + "', expected '" + trace.end.text + "'");
  }
  return state.diagram;
}

// Steps undoing `trace`, starting from its end diagram.
inline std::vector<Move> reversed_steps(const ReductionTrace& trace) {
  std::vector<Canonicalized> states;
  states.push_back(canonicalize(parse(trace.start.text)));
  std::vector<Move> inverses;
  for (const auto& m : trace.steps) {
    const auto& before = states.back().diagram;
    auto raw = apply(before, m);
    auto inv = inverse(before, m);
    auto next = canonicalize(raw);
    inverses.push_back(shift_move(inv, next.offset, raw.size()));
    states.push_back(std::move(next));
  }
  return {inverses.rbegin(), inverses.rend()};
}

struct Equivalence {
  bool equivalent = false;
  std::size_t cr_first = 0;
  std::size_t cr_second = 0;
  std::optional<ReductionTrace> certificate;  // D1 -> M1 -> M2 -> D2
};

inline Equivalence equivalent(const GaussDiagram& d1, const GaussDiagram& d2, const OrbitLimits& limits = {},
                              bool want_certificate = false) {
  Equivalence out;
  const auto r1 = monotone_reduce(d1, limits);
  const auto r2 = monotone_reduce(d2, limits);
  out.cr_first = r1.crossing_number();
  out.cr_second = r2.crossing_number();
  if (out.cr_first != out.cr_second) return out;
  // The invariant can only rule equivalence out.
  if (!(u_polynomial(r1.minimal) == u_polynomial(r2.minimal))) return out;
  const auto orbit = fr3_orbit(r1.minimal, limits);
  const auto hit = orbit.find(r2.trace.end);
  if (!hit) return out;
  out.equivalent = true;
  if (want_certificate) {
    ReductionTrace cert;
    cert.start = r1.trace.start;
    cert.end = r2.trace.start;
    cert.steps = r1.trace.steps;
    for (auto& m : orbit.path_to(*hit)) cert.steps.push_back(std::move(m));
    for (auto& m : reversed_steps(r2.trace)) cert.steps.push_back(std::move(m));
    out.certificate = std::move(cert);
  }
  return out;
}

}  // namespace flatknot
