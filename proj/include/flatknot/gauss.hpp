#pragma once

// Gauss diagrams of oriented flat virtual knots.
//
// A diagram is a cyclic word of 2n endpoints read counterclockwise. Each arrow
// label 1..n occurs once as a Tail and once as a Head. Gap g sits immediately
// before endpoint g; the empty diagram has the single gap 0.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flatknot/error.hpp"

namespace flatknot {

enum class Role : std::uint8_t { Tail = 0, Head = 1 };

constexpr Role opposite(Role r) noexcept { return r == Role::Tail ? Role::Head : Role::Tail; }

struct Endpoint {
  std::uint32_t arrow = 0;
  Role role = Role::Tail;

  friend constexpr bool operator==(const Endpoint&, const Endpoint&) = default;
  friend constexpr auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

constexpr Endpoint tail(std::uint32_t arrow) noexcept { return {arrow, Role::Tail}; }
constexpr Endpoint head(std::uint32_t arrow) noexcept { return {arrow, Role::Head}; }

class GaussDiagram {
 public:
  GaussDiagram() = default;

  // Throws Error{LabelCountMismatch | NonContiguousLabels} on an invalid word.
  explicit GaussDiagram(std::vector<Endpoint> word) : word_(std::move(word)) {
    validate_and_pair();
  }

  std::size_t size() const noexcept { return word_.size(); }
  std::size_t arrows() const noexcept { return word_.size() / 2; }
  bool empty() const noexcept { return word_.empty(); }
  std::size_t gap_count() const noexcept { return word_.empty() ? 1 : word_.size(); }

  const Endpoint& operator[](std::size_t i) const { return word_[i]; }
  std::span<const Endpoint> word() const noexcept { return word_; }

  // Index of the other endpoint of the arrow at position i.
  std::size_t mate(std::size_t i) const { return mate_[i]; }
  std::size_t tail_of(std::uint32_t arrow) const { return tail_pos_[arrow - 1]; }
  std::size_t head_of(std::uint32_t arrow) const { return head_pos_[arrow - 1]; }

  std::size_t next(std::size_t i) const noexcept { return i + 1 == word_.size() ? 0 : i + 1; }

  friend bool operator==(const GaussDiagram& a, const GaussDiagram& b) { return a.word_ == b.word_; }

 private:
  void validate_and_pair() {
    if (word_.size() % 2 != 0) {
      throw Error(ErrorCode::LabelCountMismatch, "odd number of endpoints");
    }
    const std::size_t n = word_.size() / 2;
    std::uint32_t max_label = 0;
    for (const auto& e : word_) max_label = std::max(max_label, e.arrow);
    constexpr std::size_t kMissing = static_cast<std::size_t>(-1);
    std::vector<std::size_t> tails(std::max<std::size_t>(max_label, n), kMissing);
    std::vector<std::size_t> heads(tails.size(), kMissing);
    for (std::size_t i = 0; i < word_.size(); ++i) {
      const auto& e = word_[i];
      if (e.arrow == 0) throw Error(ErrorCode::MalformedToken, "arrow label 0");
      auto& slot = e.role == Role::Tail ? tails[e.arrow - 1] : heads[e.arrow - 1];
      if (slot != kMissing) {
        throw Error(ErrorCode::LabelCountMismatch,
                    "arrow " + std::to_string(e.arrow) + " repeats an endpoint role");
      }
      slot = i;
    }
    for (std::size_t k = 0; k < tails.size(); ++k) {
      if ((tails[k] == kMissing) != (heads[k] == kMissing)) {
        throw Error(ErrorCode::LabelCountMismatch,
                    "arrow " + std::to_string(k + 1) + " lacks a tail or a head");
      }
    }
    if (max_label != n) {
      throw Error(ErrorCode::NonContiguousLabels, "labels must be exactly 1.." + std::to_string(n));
    }
    tails.resize(n);
    heads.resize(n);
    mate_.assign(word_.size(), 0);
    for (std::size_t k = 0; k < n; ++k) {
      mate_[tails[k]] = heads[k];
      mate_[heads[k]] = tails[k];
    }
    tail_pos_ = std::move(tails);
    head_pos_ = std::move(heads);
  }

  std::vector<Endpoint> word_;
  std::vector<std::size_t> mate_;
  std::vector<std::size_t> tail_pos_;
  std::vector<std::size_t> head_pos_;
};

struct CanonicalCode {
  std::string text;

  friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
};

struct BasedDiagram {
  GaussDiagram diagram;
  std::size_t base = 0;

  BasedDiagram() = default;
  BasedDiagram(GaussDiagram d, std::size_t g) : diagram(std::move(d)), base(g) {
    if (base >= diagram.gap_count()) {
      throw Error(ErrorCode::InvalidGap, "gap " + std::to_string(base) + " out of range");
    }
  }
};

// Split of a diagram into two arrow-closed arcs: [gap_a, gap_b) and its complement.
struct Split {
  std::size_t gap_a = 0;
  std::size_t gap_b = 0;
  std::size_t side_a = 0;  // arrows inside [gap_a, gap_b)
  std::size_t side_b = 0;

  friend bool operator==(const Split&, const Split&) = default;
};

// Relabels arrows 1..n in order of first appearance from index 0.
inline std::vector<Endpoint> relabel_by_first_appearance(std::span<const Endpoint> word) {
  std::uint32_t max_label = 0;
  for (const auto& e : word) max_label = std::max(max_label, e.arrow);
  std::vector<std::uint32_t> map(max_label + 1, 0);
  std::uint32_t next = 0;
  std::vector<Endpoint> out;
  out.reserve(word.size());
  for (const auto& e : word) {
    if (map[e.arrow] == 0) map[e.arrow] = ++next;
    out.push_back({map[e.arrow], e.role});
  }
  return out;
}

inline GaussDiagram renormalized(std::span<const Endpoint> word) {
  return GaussDiagram(relabel_by_first_appearance(word));
}

// Rotation that keeps labels: the result starts at endpoint `offset`.
inline GaussDiagram rotated(const GaussDiagram& d, std::size_t offset) {
  if (d.empty()) return d;
  offset %= d.size();
  std::vector<Endpoint> w(d.word().begin(), d.word().end());
  std::rotate(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(offset), w.end());
  return GaussDiagram(std::move(w));
}

inline GaussDiagram rebase(const GaussDiagram& d, std::size_t gap) {
  if (gap >= d.gap_count()) {
    throw Error(ErrorCode::InvalidGap, "gap " + std::to_string(gap) + " out of range");
  }
  return rotated(d, gap);
}

namespace detail {

inline void append_token(std::string& out, const Endpoint& e) {
  if (!out.empty()) out.push_back(' ');
  out.push_back(e.role == Role::Tail ? '+' : '-');
  out += std::to_string(e.arrow);
}

inline std::string write_word(std::span<const Endpoint> word) {
  if (word.empty()) return "0";
  std::string out;
  for (const auto& e : word) append_token(out, e);
  return out;
}

// Relabeled rotation starting at `start`, encoded as label*2+role.
inline void encode_rotation(const GaussDiagram& d, std::size_t start, std::vector<std::uint32_t>& out,
                            std::vector<std::uint32_t>& map) {
  const std::size_t len = d.size();
  std::fill(map.begin(), map.end(), 0u);
  std::uint32_t next = 0;
  out.clear();
  for (std::size_t k = 0; k < len; ++k) {
    const auto& e = d[(start + k) % len];
    if (map[e.arrow] == 0) map[e.arrow] = ++next;
    out.push_back(map[e.arrow] * 2 + static_cast<std::uint32_t>(e.role));
  }
}

inline std::vector<std::string_view> split_ws(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) tokens.push_back(text.substr(i, j - i));
    i = j;
  }
  return tokens;
}

inline bool parse_size(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace detail

struct Canonicalized {
  GaussDiagram diagram;  // relabeled, minimal rotation
  std::size_t offset = 0;  // diagram[j] is the relabeled input[(j + offset) % size]
  CanonicalCode code;
};

inline Canonicalized canonicalize(const GaussDiagram& d) {
  if (d.empty()) return {d, 0, CanonicalCode{"0"}};
  const std::size_t len = d.size();
  std::vector<std::uint32_t> best, cur, map(d.arrows() + 1);
  std::size_t best_start = 0;
  detail::encode_rotation(d, 0, best, map);
  for (std::size_t s = 1; s < len; ++s) {
    detail::encode_rotation(d, s, cur, map);
    if (cur < best) {
      best.swap(cur);
      best_start = s;
    }
  }
  std::vector<Endpoint> w;
  w.reserve(len);
  for (auto v : best) w.push_back({v / 2, static_cast<Role>(v % 2)});
  std::string text = detail::write_word(w);
  return {GaussDiagram(std::move(w)), best_start, CanonicalCode{std::move(text)}};
}

inline CanonicalCode canonical_form(const GaussDiagram& d) { return canonicalize(d).code; }

inline bool is_canonical(const GaussDiagram& d) { return canonicalize(d).diagram == d; }

inline std::string serialize(const GaussDiagram& d, bool canonical = false) {
  return canonical ? canonical_form(d).text : detail::write_word(d.word());
}

inline std::string serialize(const BasedDiagram& b) {
  return detail::write_word(b.diagram.word()) + " base=" + std::to_string(b.base);
}

// Grammar: whitespace-separated "+k" (tail of arrow k) / "-k" (head of arrow k),
// or the single token "0" for the empty diagram.
inline GaussDiagram parse(std::string_view text) {
  const auto tokens = detail::split_ws(text);
  if (tokens.empty()) throw Error(ErrorCode::MalformedToken, "empty code");
  if (tokens.size() == 1 && tokens[0] == "0") return GaussDiagram();
  std::vector<Endpoint> word;
  word.reserve(tokens.size());
  for (auto tok : tokens) {
    std::size_t k = 0;
    if (tok.size() < 2 || (tok[0] != '+' && tok[0] != '-') || !detail::parse_size(tok.substr(1), k) ||
        k == 0 || k > 0xFFFFFFu) {
      throw Error(ErrorCode::MalformedToken, "bad token '" + std::string(tok) + "'");
    }
    word.push_back({static_cast<std::uint32_t>(k), tok[0] == '+' ? Role::Tail : Role::Head});
  }
  return GaussDiagram(std::move(word));
}

// Accepts a Gauss code optionally followed by "base=<g>"; the default base is 0.
inline BasedDiagram parse_based(std::string_view text) {
  auto tokens = detail::split_ws(text);
  std::size_t base = 0;
  if (!tokens.empty() && tokens.back().starts_with("base=")) {
    if (!detail::parse_size(tokens.back().substr(5), base)) {
      throw Error(ErrorCode::MalformedToken, "bad base token '" + std::string(tokens.back()) + "'");
    }
    tokens.pop_back();
  }
  std::string code;
  for (auto t : tokens) {
    if (!code.empty()) code.push_back(' ');
    code += t;
  }
  return BasedDiagram(parse(code), base);
}

// All unordered gap pairs whose two arcs are closed under the arrow pairing.
// Any two distinct gaps bound arcs that each hold at least one arrow when closed;
// `include_degenerate` adds the pairs {g, g}, whose arcs are the empty arc and the
// whole circle.
inline std::vector<Split> find_splits(const GaussDiagram& d, bool include_degenerate = false) {
  std::vector<Split> out;
  const std::size_t len = d.size();
  const std::size_t n = d.arrows();
  if (include_degenerate) {
    for (std::size_t g = 0; g < d.gap_count(); ++g) out.push_back({g, g, 0, n});
  }
  for (std::size_t a = 0; a < len; ++a) {
    std::size_t open = 0;
    for (std::size_t b = a + 1; b < len; ++b) {
      // endpoint b-1 joins the arc [a, b)
      const std::size_t m = d.mate(b - 1);
      if (m >= a && m < b - 1) {
        --open;
      } else {
        ++open;
      }
      if (open == 0) out.push_back({a, b, (b - a) / 2, n - (b - a) / 2});
    }
  }
  if (include_degenerate) {
    std::stable_sort(out.begin(), out.end(), [](const Split& x, const Split& y) {
      return std::pair(x.gap_a, x.gap_b) < std::pair(y.gap_a, y.gap_b);
    });
  }
  return out;
}

inline bool has_nontrivial_split(const GaussDiagram& d) { return !find_splits(d).empty(); }

}  // namespace flatknot
