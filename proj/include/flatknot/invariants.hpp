#pragma once

// Index of an arrow and the u-polynomial built from it.
//
// For an arrow e, let P(e) be the open arc running from Head(e) to Tail(e) along
// the orientation. An arrow f != e with exactly one endpoint in P(e) contributes
// +1 to n(e) when that endpoint is Tail(f) and -1 when it is Head(f).
// u(t) = sum over arrows with n(e) != 0 of sign(n(e)) t^|n(e)|.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "flatknot/gauss.hpp"

namespace flatknot {

class UPolynomial {
 public:
  UPolynomial() = default;

  void add(int exponent, long coefficient) {
    if (coefficient == 0) return;
    auto [it, inserted] = terms_.try_emplace(exponent, coefficient);
    if (!inserted) {
      it->second += coefficient;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const std::map<int, long>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  // Ascending exponents, e.g. "-t^1+2t^3"; "0" for the zero polynomial.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
      if (c < 0) {
        out.push_back('-');
      } else if (!out.empty()) {
        out.push_back('+');
      }
      const long mag = c < 0 ? -c : c;
      if (mag != 1) out += std::to_string(mag);
      out += "t^" + std::to_string(k);
    }
    return out;
  }

  friend bool operator==(const UPolynomial&, const UPolynomial&) = default;

 private:
  std::map<int, long> terms_;
};

namespace detail {

// True when position p lies strictly inside the arc that runs forward from `from` to `to`.
inline bool inside_open_arc(std::size_t from, std::size_t to, std::size_t p, std::size_t len) {
  const std::size_t span = (to + len - from) % len;
  const std::size_t off = (p + len - from) % len;
  return off > 0 && off < span;
}

}  // namespace detail

inline int arrow_index(const GaussDiagram& d, std::uint32_t arrow) {
  if (arrow == 0 || arrow > d.arrows()) {
    throw Error(ErrorCode::UnknownArrow, "arrow " + std::to_string(arrow) + " not in diagram");
  }
  const std::size_t len = d.size();
  const std::size_t h = d.head_of(arrow);
  const std::size_t t = d.tail_of(arrow);
  int index = 0;
  for (std::uint32_t f = 1; f <= d.arrows(); ++f) {
    if (f == arrow) continue;
    const bool tail_in = detail::inside_open_arc(h, t, d.tail_of(f), len);
    const bool head_in = detail::inside_open_arc(h, t, d.head_of(f), len);
    if (tail_in != head_in) index += tail_in ? 1 : -1;
  }
  return index;
}

inline std::vector<int> arrow_indices(const GaussDiagram& d) {
  std::vector<int> out;
  out.reserve(d.arrows());
  for (std::uint32_t e = 1; e <= d.arrows(); ++e) out.push_back(arrow_index(d, e));
  return out;
}

inline UPolynomial u_polynomial(const GaussDiagram& d) {
  UPolynomial u;
  for (int n : arrow_indices(d)) {
    if (n > 0) u.add(n, 1);
    if (n < 0) u.add(-n, -1);
  }
  return u;
}

// Number of arrows interlaced with each arrow.
inline std::vector<int> interlacement_counts(const GaussDiagram& d) {
  const std::size_t len = d.size();
  std::vector<int> out(d.arrows(), 0);
  for (std::uint32_t e = 1; e <= d.arrows(); ++e) {
    const std::size_t a = d.tail_of(e), b = d.head_of(e);
    for (std::uint32_t f = e + 1; f <= d.arrows(); ++f) {
      if (detail::inside_open_arc(a, b, d.tail_of(f), len) !=
          detail::inside_open_arc(a, b, d.head_of(f), len)) {
        ++out[e - 1];
        ++out[f - 1];
      }
    }
  }
  return out;
}

// Hash of (n, sorted indices, sorted interlacement profile). Rotation and relabel
// invariant. Equal keys say nothing about equivalence.
inline std::uint64_t orbit_key(const GaussDiagram& d) {
  auto idx = arrow_indices(d);
  auto lace = interlacement_counts(d);
  std::sort(idx.begin(), idx.end());
  std::sort(lace.begin(), lace.end());
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xFFu;
      h *= 1099511628211ull;
    }
  };
  mix(d.arrows());
  for (int v : idx) mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(v)));
  mix(0xFFFFFFFFull);
  for (int v : lace) mix(static_cast<std::uint64_t>(v));
  return h;
}

}  // namespace flatknot
