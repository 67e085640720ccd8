#pragma once

// Flat Reidemeister moves FR1, FR2, FR3 acting on Gauss diagrams.
//
// Legal configurations come from the tangent rule: at a crossing of branches
// s1 and s2, the arrow runs s1 -> s2 iff det(t1, t2) > 0.
//
//  * FR2 (bigon): the two crossings of a bigon have opposite determinant signs,
//    so each of the two adjacent endpoint pairs holds one Tail and one Head.
//  * FR3 (triangle): strands A: y=h, B: y=x, C: y=1-x with crossings r=A∩B,
//    q=A∩C, p=B∩C. Strand tangents are sA(1,0), sB(1,1), sC(-1,1). Sliding A
//    from h=0 to h=1 across p swaps the visit order on every strand.
//
// Move positions always refer to endpoint (or gap) indices of the diagram the
// move is applied to. Results are relabeled by first appearance.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "flatknot/gauss.hpp"

namespace flatknot {

enum class MoveKind : std::uint8_t { FR1Remove, FR1Insert, FR2Remove, FR2Insert, FR3 };

constexpr int crossing_delta(MoveKind k) noexcept {
  switch (k) {
    case MoveKind::FR1Remove: return -1;
    case MoveKind::FR1Insert: return 1;
    case MoveKind::FR2Remove: return -2;
    case MoveKind::FR2Insert: return 2;
    case MoveKind::FR3: return 0;
  }
  return 0;
}

constexpr bool is_decreasing(MoveKind k) noexcept { return crossing_delta(k) < 0; }

// Order of the two endpoints of an FR1 kink.
enum Fr1Variant : int { kTailFirst = 0, kHeadFirst = 1 };

// Bigon shape and the role order of the block listed first.
enum Fr2Variant : int { kNestedTH = 0, kNestedHT = 1, kInterleavedTH = 2, kInterleavedHT = 3 };

constexpr bool fr2_nested(int v) noexcept { return v == kNestedTH || v == kNestedHT; }
constexpr bool fr2_first_block_tail(int v) noexcept { return v == kNestedTH || v == kInterleavedTH; }

struct Move {
  MoveKind kind = MoveKind::FR1Remove;
  int variant = 0;
  std::vector<std::size_t> positions;

  friend bool operator==(const Move&, const Move&) = default;
};

// ---------------------------------------------------------------------------
// FR3 catalog

struct PatternSlot {
  std::uint8_t arrow = 0;
  Role role = Role::Tail;

  friend constexpr bool operator==(const PatternSlot&, const PatternSlot&) = default;
  friend constexpr auto operator<=>(const PatternSlot&, const PatternSlot&) = default;
};

// Three blocks of two consecutive endpoints, in cyclic order around the circle.
using BlockPattern = std::array<std::array<PatternSlot, 2>, 3>;

struct TriangleConfiguration {
  std::array<int, 3> signs{1, 1, 1};  // direction of strands A, B, C
  bool order_abc = true;              // blocks visited A,B,C (else A,C,B)
  bool a_above = false;               // strand A at y=1 (after the slide) instead of y=0
};

struct FR3CatalogEntry {
  int id = 0;
  BlockPattern before{};
  BlockPattern after{};  // before with each block's two endpoints swapped
  int inverse_id = 0;
  int inverse_rotation = 0;  // inverse entry block k sits at this entry's block (k + rotation) % 3
  std::vector<TriangleConfiguration> sources;
};

namespace detail {

struct Vec2 {
  double x, y;
};

inline double det(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// Crossing labels: r = 0, q = 1, p = 2. Strand labels: A = 0, B = 1, C = 2.
inline BlockPattern triangle_pattern_raw(const TriangleConfiguration& cfg) {
  const double h = cfg.a_above ? 1.0 : 0.0;
  const std::array<Vec2, 3> crossing_at{Vec2{h, h}, Vec2{1.0 - h, h}, Vec2{0.5, 0.5}};
  const std::array<Vec2, 3> tangent{Vec2{1.0 * cfg.signs[0], 0.0},
                                    Vec2{1.0 * cfg.signs[1], 1.0 * cfg.signs[1]},
                                    Vec2{-1.0 * cfg.signs[2], 1.0 * cfg.signs[2]}};
  // crossings on each strand, and the two strands of each crossing
  constexpr std::array<std::array<int, 2>, 3> on_strand{{{0, 1}, {0, 2}, {1, 2}}};
  constexpr std::array<std::array<int, 2>, 3> strands_of{{{0, 1}, {0, 2}, {1, 2}}};
  std::array<int, 3> tail_strand{};
  for (int c = 0; c < 3; ++c) {
    const int s1 = strands_of[c][0], s2 = strands_of[c][1];
    tail_strand[c] = det(tangent[s1], tangent[s2]) > 0 ? s1 : s2;
  }
  auto block_for = [&](int s) {
    auto [c1, c2] = on_strand[s];
    auto along = [&](int c) { return crossing_at[c].x * tangent[s].x + crossing_at[c].y * tangent[s].y; };
    if (along(c2) < along(c1)) std::swap(c1, c2);
    std::array<PatternSlot, 2> block{};
    block[0] = {static_cast<std::uint8_t>(c1), tail_strand[c1] == s ? Role::Tail : Role::Head};
    block[1] = {static_cast<std::uint8_t>(c2), tail_strand[c2] == s ? Role::Tail : Role::Head};
    return block;
  };
  const std::array<int, 3> order = cfg.order_abc ? std::array<int, 3>{0, 1, 2} : std::array<int, 3>{0, 2, 1};
  return {block_for(order[0]), block_for(order[1]), block_for(order[2])};
}

inline BlockPattern rotate_blocks(const BlockPattern& p, int r) {
  return {p[r % 3], p[(r + 1) % 3], p[(r + 2) % 3]};
}

inline BlockPattern relabel_pattern(const BlockPattern& p) {
  std::array<int, 3> map{-1, -1, -1};
  int next = 0;
  BlockPattern out = p;
  for (auto& block : out) {
    for (auto& slot : block) {
      if (map[slot.arrow] < 0) map[slot.arrow] = next++;
      slot.arrow = static_cast<std::uint8_t>(map[slot.arrow]);
    }
  }
  return out;
}

inline BlockPattern swap_blocks(const BlockPattern& p) {
  BlockPattern out = p;
  for (auto& block : out) std::swap(block[0], block[1]);
  return out;
}

// Least relabeled block rotation and the rotation r giving it: out = relabel(rotate(p, r)).
inline std::pair<BlockPattern, int> canonical_pattern(const BlockPattern& p) {
  BlockPattern best = relabel_pattern(p);
  int best_r = 0;
  for (int r = 1; r < 3; ++r) {
    auto cand = relabel_pattern(rotate_blocks(p, r));
    if (cand < best) {
      best = cand;
      best_r = r;
    }
  }
  return {best, best_r};
}

inline std::vector<FR3CatalogEntry> generate_fr3_catalog() {
  std::vector<std::pair<BlockPattern, TriangleConfiguration>> found;
  for (int mask = 0; mask < 8; ++mask) {
    for (bool order_abc : {true, false}) {
      for (bool a_above : {false, true}) {
        TriangleConfiguration cfg;
        cfg.signs = {(mask & 1) ? -1 : 1, (mask & 2) ? -1 : 1, (mask & 4) ? -1 : 1};
        cfg.order_abc = order_abc;
        cfg.a_above = a_above;
        found.emplace_back(canonical_pattern(triangle_pattern_raw(cfg)).first, cfg);
      }
    }
  }
  std::vector<BlockPattern> distinct;
  for (const auto& [pat, cfg] : found) distinct.push_back(pat);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<FR3CatalogEntry> catalog(distinct.size());
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    auto& e = catalog[i];
    e.id = static_cast<int>(i);
    e.before = distinct[i];
    e.after = swap_blocks(distinct[i]);
    for (const auto& [pat, cfg] : found) {
      if (pat == distinct[i]) e.sources.push_back(cfg);
    }
  }
  for (auto& e : catalog) {
    auto [canon, r] = canonical_pattern(e.after);
    auto it = std::lower_bound(distinct.begin(), distinct.end(), canon);
    // The slide is reversible, so the after-pattern is always in the catalog.
    e.inverse_id = static_cast<int>(it - distinct.begin());
    e.inverse_rotation = r;
  }
  return catalog;
}

}  // namespace detail

inline BlockPattern triangle_pattern(const TriangleConfiguration& cfg) { return detail::triangle_pattern_raw(cfg); }

inline BlockPattern canonical_pattern(const BlockPattern& p) { return detail::canonical_pattern(p).first; }

inline const std::vector<FR3CatalogEntry>& fr3_catalog() {
  static const std::vector<FR3CatalogEntry> catalog = detail::generate_fr3_catalog();
  return catalog;
}

inline std::vector<FR3CatalogEntry> build_fr3_catalog() { return detail::generate_fr3_catalog(); }

// ---------------------------------------------------------------------------
// Names

constexpr std::string_view to_string(MoveKind k) noexcept {
  switch (k) {
    case MoveKind::FR1Remove: return "FR1Remove";
    case MoveKind::FR1Insert: return "FR1Insert";
    case MoveKind::FR2Remove: return "FR2Remove";
    case MoveKind::FR2Insert: return "FR2Insert";
    case MoveKind::FR3: return "FR3";
  }
  return "?";
}

inline std::optional<MoveKind> move_kind_from_string(std::string_view s) {
  for (auto k : {MoveKind::FR1Remove, MoveKind::FR1Insert, MoveKind::FR2Remove, MoveKind::FR2Insert, MoveKind::FR3}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

inline std::string variant_name(MoveKind k, int variant) {
  switch (k) {
    case MoveKind::FR1Remove:
    case MoveKind::FR1Insert: return variant == kTailFirst ? "tail-first" : "head-first";
    case MoveKind::FR2Remove:
    case MoveKind::FR2Insert: {
      static constexpr std::array<const char*, 4> names{"nested-th", "nested-ht", "interleaved-th",
                                                        "interleaved-ht"};
      return variant >= 0 && variant < 4 ? names[variant] : "?";
    }
    case MoveKind::FR3: return "fr3-" + std::to_string(variant);
  }
  return "?";
}

inline std::optional<int> variant_from_string(MoveKind k, std::string_view s) {
  for (int v = 0; v < 4; ++v) {
    if (variant_name(k, v) == s) return v;
  }
  if (k == MoveKind::FR3 && s.starts_with("fr3-")) {
    std::size_t id = 0;
    if (detail::parse_size(s.substr(4), id) && id < fr3_catalog().size()) return static_cast<int>(id);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Site helpers

namespace detail {

inline std::size_t cyc(std::size_t i, std::size_t len) { return len == 0 ? 0 : i % len; }

[[noreturn]] inline void site_mismatch(const Move& m, const std::string& why) {
  throw Error(ErrorCode::SiteMismatch, std::string(to_string(m.kind)) + ": " + why);
}

// Blocks starting at b[0..k) are pairwise disjoint and appear in the listed cyclic order.
inline bool blocks_in_cyclic_order(std::span<const std::size_t> starts, std::size_t len) {
  std::size_t prev = 0;
  for (std::size_t k = 1; k < starts.size(); ++k) {
    const std::size_t off = (starts[k] + len - starts[0]) % len;
    if (off < prev + 2) return false;
    prev = off;
  }
  return prev + 2 <= len;
}

inline void check_block_positions(const Move& m, const GaussDiagram& d, std::size_t blocks) {
  const std::size_t len = d.size();
  if (m.positions.size() != 2 * blocks) site_mismatch(m, "wrong number of positions");
  std::vector<std::size_t> starts;
  for (std::size_t k = 0; k < blocks; ++k) {
    const std::size_t a = m.positions[2 * k], b = m.positions[2 * k + 1];
    if (a >= len || b >= len || b != cyc(a + 1, len)) site_mismatch(m, "positions are not adjacent pairs");
    starts.push_back(a);
  }
  if (blocks > 1 && !blocks_in_cyclic_order(starts, len)) site_mismatch(m, "blocks overlap or are out of order");
}

inline bool less_site(const Move& a, const Move& b) {
  auto lo = [](const Move& m) {
    return m.positions.empty() ? std::size_t{0} : *std::min_element(m.positions.begin(), m.positions.end());
  };
  return std::tuple(lo(a), a.kind, a.variant, a.positions) < std::tuple(lo(b), b.kind, b.variant, b.positions);
}

inline void sort_sites(std::vector<Move>& moves) { std::stable_sort(moves.begin(), moves.end(), less_site); }

inline bool match_pattern(const GaussDiagram& d, const std::array<std::size_t, 3>& starts, const BlockPattern& pat) {
  const std::size_t len = d.size();
  std::array<std::uint32_t, 3> map{0, 0, 0};
  for (int k = 0; k < 3; ++k) {
    for (int s = 0; s < 2; ++s) {
      const auto& e = d[(starts[k] + s) % len];
      const auto& slot = pat[k][s];
      if (e.role != slot.role) return false;
      if (map[slot.arrow] == 0) {
        for (auto v : map) {
          if (v == e.arrow) return false;
        }
        map[slot.arrow] = e.arrow;
      } else if (map[slot.arrow] != e.arrow) {
        return false;
      }
    }
  }
  return true;
}

// Fresh arrow labels are n+1, n+2; relabeling happens afterwards.
inline std::array<std::array<Endpoint, 2>, 2> fr2_blocks(int variant, std::uint32_t x, std::uint32_t y) {
  switch (variant) {
    case kNestedTH: return {{{tail(x), head(y)}, {tail(y), head(x)}}};
    case kNestedHT: return {{{head(x), tail(y)}, {head(y), tail(x)}}};
    case kInterleavedTH: return {{{tail(x), head(y)}, {head(x), tail(y)}}};
    default: return {{{head(x), tail(y)}, {tail(x), head(y)}}};
  }
}

inline std::vector<Endpoint> erase_positions(const GaussDiagram& d, std::span<const std::size_t> gone) {
  std::vector<bool> drop(d.size(), false);
  for (auto p : gone) drop[p] = true;
  std::vector<Endpoint> w;
  w.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!drop[i]) w.push_back(d[i]);
  }
  return w;
}

// Gap (in the diagram after erasing `gone`) occupied by the endpoints that started at `start`.
inline std::size_t vacated_gap(const GaussDiagram& d, std::span<const std::size_t> gone, std::size_t start) {
  const std::size_t len = d.size();
  std::vector<bool> drop(len, false);
  for (auto p : gone) drop[p] = true;
  const std::size_t remaining = len - gone.size();
  if (remaining == 0) return 0;
  std::size_t k = start;
  while (drop[k]) k = (k + 1) % len;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (!drop[i]) ++idx;
  }
  return idx;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Enumeration

inline std::vector<Move> enumerate_fr1_decreasing(const GaussDiagram& d) {
  std::vector<Move> out;
  const std::size_t len = d.size();
  if (len < 2) return out;
  const std::size_t last = len == 2 ? 1 : len;  // both rotations coincide for a lone kink
  for (std::size_t i = 0; i < last; ++i) {
    const std::size_t j = (i + 1) % len;
    if (d[i].arrow == d[j].arrow) {
      out.push_back({MoveKind::FR1Remove, d[i].role == Role::Tail ? kTailFirst : kHeadFirst, {i, j}});
    }
  }
  return out;
}

inline std::vector<Move> enumerate_fr2_decreasing(const GaussDiagram& d) {
  std::vector<Move> out;
  const std::size_t len = d.size();
  if (len < 4) return out;
  std::vector<std::size_t> mixed;  // blocks holding one Tail and one Head of distinct arrows
  for (std::size_t i = 0; i < len; ++i) {
    const auto& a = d[i];
    const auto& b = d[(i + 1) % len];
    if (a.arrow != b.arrow && a.role != b.role) mixed.push_back(i);
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (std::size_t s = 0; s < mixed.size(); ++s) {
    for (std::size_t t = s + 1; t < mixed.size(); ++t) {
      const std::size_t i = mixed[s], j = mixed[t];
      if (j < i + 2 || i + len < j + 2) continue;
      const std::uint32_t x = d[i].arrow, y = d[(i + 1) % len].arrow;
      const std::uint32_t u = d[j].arrow, v = d[(j + 1) % len].arrow;
      const bool interleaved = (u == x && v == y);
      const bool nested = (u == y && v == x);
      if (!interleaved && !nested) continue;
      const std::pair<std::uint32_t, std::uint32_t> key{std::min(x, y), std::max(x, y)};
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
      seen.push_back(key);
      const bool tail_first = d[i].role == Role::Tail;
      const int variant = nested ? (tail_first ? kNestedTH : kNestedHT) : (tail_first ? kInterleavedTH : kInterleavedHT);
      out.push_back({MoveKind::FR2Remove, variant, {i, (i + 1) % len, j, (j + 1) % len}});
    }
  }
  return out;
}

inline std::vector<Move> enumerate_fr3(const GaussDiagram& d) {
  std::vector<Move> out;
  if (d.arrows() < 3) return out;
  const std::size_t len = d.size();
  const auto& catalog = fr3_catalog();
  std::vector<std::size_t> cands;
  for (std::size_t i = 0; i < len; ++i) {
    if (d[i].arrow != d[(i + 1) % len].arrow) cands.push_back(i);
  }
  for (std::size_t a = 0; a < cands.size(); ++a) {
    for (std::size_t b = a + 1; b < cands.size(); ++b) {
      if (cands[b] < cands[a] + 2) continue;
      for (std::size_t c = b + 1; c < cands.size(); ++c) {
        const std::size_t i = cands[a], j = cands[b], k = cands[c];
        if (k < j + 2 || i + len < k + 2) continue;
        std::array<std::uint32_t, 6> labels{d[i].arrow, d[(i + 1) % len].arrow, d[j].arrow,
                                            d[(j + 1) % len].arrow, d[k].arrow, d[(k + 1) % len].arrow};
        std::sort(labels.begin(), labels.end());
        if (!(labels[0] == labels[1] && labels[2] == labels[3] && labels[4] == labels[5] && labels[1] != labels[2] &&
              labels[3] != labels[4])) {
          continue;
        }
        const std::array<std::size_t, 3> starts{i, j, k};
        for (const auto& e : catalog) {
          for (int r = 0; r < 3; ++r) {
            const std::array<std::size_t, 3> rs{starts[r], starts[(r + 1) % 3], starts[(r + 2) % 3]};
            if (detail::match_pattern(d, rs, e.before)) {
              out.push_back({MoveKind::FR3, e.id, {rs[0], (rs[0] + 1) % len, rs[1], (rs[1] + 1) % len, rs[2],
                                                   (rs[2] + 1) % len}});
              break;
            }
          }
        }
      }
    }
  }
  detail::sort_sites(out);
  return out;
}

// Decreasing FR1 and FR2 sites in tie-break order.
inline std::vector<Move> enumerate_decreasing(const GaussDiagram& d) {
  auto out = enumerate_fr1_decreasing(d);
  auto fr2 = enumerate_fr2_decreasing(d);
  out.insert(out.end(), fr2.begin(), fr2.end());
  detail::sort_sites(out);
  return out;
}

inline bool has_decreasing_site(const GaussDiagram& d) {
  return !enumerate_fr1_decreasing(d).empty() || !enumerate_fr2_decreasing(d).empty();
}

inline std::vector<Move> enumerate_fr1_increasing(const GaussDiagram& d) {
  std::vector<Move> out;
  for (std::size_t g = 0; g < d.gap_count(); ++g) {
    out.push_back({MoveKind::FR1Insert, kTailFirst, {g}});
    out.push_back({MoveKind::FR1Insert, kHeadFirst, {g}});
  }
  return out;
}

inline std::vector<Move> enumerate_fr2_increasing(const GaussDiagram& d) {
  std::vector<Move> out;
  for (std::size_t g1 = 0; g1 < d.gap_count(); ++g1) {
    for (std::size_t g2 = g1; g2 < d.gap_count(); ++g2) {
      for (int v = 0; v < 4; ++v) out.push_back({MoveKind::FR2Insert, v, {g1, g2}});
    }
  }
  return out;
}

inline std::vector<Move> enumerate_all(const GaussDiagram& d) {
  auto out = enumerate_decreasing(d);
  for (auto* part : {&enumerate_fr3, &enumerate_fr1_increasing, &enumerate_fr2_increasing}) {
    auto more = (*part)(d);
    out.insert(out.end(), more.begin(), more.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Application

namespace detail {

inline GaussDiagram apply_fr1_remove(const GaussDiagram& d, const Move& m) {
  check_block_positions(m, d, 1);
  const auto& a = d[m.positions[0]];
  const auto& b = d[m.positions[1]];
  if (a.arrow != b.arrow) site_mismatch(m, "endpoints belong to different arrows");
  if ((a.role == Role::Tail) != (m.variant == kTailFirst)) site_mismatch(m, "kink direction differs from variant");
  return renormalized(erase_positions(d, m.positions));
}

inline GaussDiagram apply_fr1_insert(const GaussDiagram& d, const Move& m) {
  if (m.positions.size() != 1 || m.positions[0] >= d.gap_count()) site_mismatch(m, "invalid gap");
  if (m.variant != kTailFirst && m.variant != kHeadFirst) site_mismatch(m, "unknown variant");
  const auto x = static_cast<std::uint32_t>(d.arrows() + 1);
  const std::array<Endpoint, 2> kink = m.variant == kTailFirst ? std::array{tail(x), head(x)} : std::array{head(x), tail(x)};
  std::vector<Endpoint> w(d.word().begin(), d.word().end());
  w.insert(w.begin() + static_cast<std::ptrdiff_t>(m.positions[0]), kink.begin(), kink.end());
  return renormalized(w);
}

inline GaussDiagram apply_fr2_remove(const GaussDiagram& d, const Move& m) {
  check_block_positions(m, d, 2);
  if (m.variant < 0 || m.variant > 3) site_mismatch(m, "unknown variant");
  const auto& p = m.positions;
  const Endpoint a = d[p[0]], b = d[p[1]], c = d[p[2]], e = d[p[3]];
  if (a.arrow == b.arrow || a.role == b.role) site_mismatch(m, "first block is not a mixed pair");
  const bool nested = c.arrow == b.arrow && e.arrow == a.arrow;
  const bool interleaved = c.arrow == a.arrow && e.arrow == b.arrow;
  if (fr2_nested(m.variant) ? !nested : !interleaved) site_mismatch(m, "bigon shape differs from variant");
  if ((a.role == Role::Tail) != fr2_first_block_tail(m.variant)) site_mismatch(m, "role order differs from variant");
  return renormalized(erase_positions(d, p));
}

struct Fr2Insertion {
  std::vector<Endpoint> word;
  std::size_t first = 0;   // index of the block placed at positions[0]
  std::size_t second = 0;  // index of the block placed at positions[1]
};

inline Fr2Insertion fr2_insert_word(const GaussDiagram& d, const Move& m) {
  if (m.positions.size() != 2 || m.positions[0] >= d.gap_count() || m.positions[1] >= d.gap_count()) {
    site_mismatch(m, "invalid gaps");
  }
  if (m.variant < 0 || m.variant > 3) site_mismatch(m, "unknown variant");
  const auto x = static_cast<std::uint32_t>(d.arrows() + 1);
  const auto blocks = fr2_blocks(m.variant, x, x + 1);
  Fr2Insertion ins;
  ins.word.reserve(d.size() + 4);
  auto emit_blocks_at = [&](std::size_t gap) {
    for (int k = 0; k < 2; ++k) {
      if (m.positions[k] != gap) continue;
      (k == 0 ? ins.first : ins.second) = ins.word.size();
      ins.word.insert(ins.word.end(), blocks[k].begin(), blocks[k].end());
    }
  };
  if (d.empty()) emit_blocks_at(0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    emit_blocks_at(i);
    ins.word.push_back(d[i]);
  }
  return ins;
}

inline GaussDiagram apply_fr3(const GaussDiagram& d, const Move& m) {
  check_block_positions(m, d, 3);
  const auto& catalog = fr3_catalog();
  if (m.variant < 0 || static_cast<std::size_t>(m.variant) >= catalog.size()) site_mismatch(m, "unknown catalog entry");
  const std::array<std::size_t, 3> starts{m.positions[0], m.positions[2], m.positions[4]};
  if (!match_pattern(d, starts, catalog[m.variant].before)) site_mismatch(m, "before-pattern not present");
  std::vector<Endpoint> w(d.word().begin(), d.word().end());
  for (int k = 0; k < 3; ++k) std::swap(w[m.positions[2 * k]], w[m.positions[2 * k + 1]]);
  return renormalized(w);
}

}  // namespace detail

inline GaussDiagram apply(const GaussDiagram& d, const Move& m) {
  switch (m.kind) {
    case MoveKind::FR1Remove: return detail::apply_fr1_remove(d, m);
    case MoveKind::FR1Insert: return detail::apply_fr1_insert(d, m);
    case MoveKind::FR2Remove: return detail::apply_fr2_remove(d, m);
    case MoveKind::FR2Insert: return renormalized(detail::fr2_insert_word(d, m).word);
    case MoveKind::FR3: return detail::apply_fr3(d, m);
  }
  detail::site_mismatch(m, "unknown kind");
}

// The move that undoes `m`, expressed on apply(before, m). Re-applying gives a
// diagram with the canonical code of `before`.
inline Move inverse(const GaussDiagram& before, const Move& m) {
  const std::size_t len = before.size();
  switch (m.kind) {
    case MoveKind::FR1Remove: {
      detail::apply_fr1_remove(before, m);
      return {MoveKind::FR1Insert, m.variant, {detail::vacated_gap(before, m.positions, m.positions[0])}};
    }
    case MoveKind::FR1Insert: {
      detail::apply_fr1_insert(before, m);
      const std::size_t g = m.positions[0];
      return {MoveKind::FR1Remove, m.variant, {g, g + 1}};
    }
    case MoveKind::FR2Remove: {
      detail::apply_fr2_remove(before, m);
      const auto& p = m.positions;
      const std::size_t g1 = detail::vacated_gap(before, p, p[0]);
      const std::size_t g2 = detail::vacated_gap(before, p, p[2]);
      if (g1 == g2 && (p[2] + 2) % len != p[0]) return {MoveKind::FR2Insert, m.variant, {g1, g2}};
      if (g1 != g2) return {MoveKind::FR2Insert, m.variant, {g1, g2}};
      // second block directly precedes the first one: list it first
      int v = m.variant;
      if (!fr2_nested(v)) v = v == kInterleavedTH ? kInterleavedHT : kInterleavedTH;
      return {MoveKind::FR2Insert, v, {g2, g1}};
    }
    case MoveKind::FR2Insert: {
      const auto ins = detail::fr2_insert_word(before, m);
      return {MoveKind::FR2Remove, m.variant, {ins.first, ins.first + 1, ins.second, ins.second + 1}};
    }
    case MoveKind::FR3: {
      detail::apply_fr3(before, m);
      const auto& e = fr3_catalog()[m.variant];
      const int r = e.inverse_rotation;
      Move inv{MoveKind::FR3, e.inverse_id, {}};
      for (int k = 0; k < 3; ++k) {
        const std::size_t s = m.positions[2 * ((k + r) % 3)];
        inv.positions.push_back(s);
        inv.positions.push_back((s + 1) % len);
      }
      return inv;
    }
  }
  detail::site_mismatch(m, "unknown kind");
}

// Re-expresses a move on rotated(d, offset) (same endpoints, shifted indices).
inline Move shift_move(const Move& m, std::size_t offset, std::size_t len) {
  if (len == 0) return m;
  Move out = m;
  for (auto& p : out.positions) p = (p + len - offset % len) % len;
  return out;
}

}  // namespace flatknot
