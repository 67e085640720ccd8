#pragma once

// Helpers shared by the test binaries.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "flatknot/flatknot.hpp"

namespace testing_support {

// Uniform random word: shuffle 2n endpoints, arrow directions follow the shuffle.
inline flatknot::GaussDiagram random_diagram(std::mt19937_64& rng, std::size_t n) {
  std::vector<flatknot::Endpoint> word;
  for (std::uint32_t k = 1; k <= n; ++k) {
    word.push_back(flatknot::tail(k));
    word.push_back(flatknot::head(k));
  }
  std::shuffle(word.begin(), word.end(), rng);
  return flatknot::GaussDiagram(std::move(word));
}

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Applies a random legal move, keeping the arrow count at or below `cap`.
inline flatknot::GaussDiagram random_step(std::mt19937_64& rng, const flatknot::GaussDiagram& d, std::size_t cap,
                                          flatknot::Move* chosen = nullptr) {
  std::vector<flatknot::Move> moves;
  for (auto& m : flatknot::enumerate_all(d)) {
    if (static_cast<long>(d.arrows()) + flatknot::crossing_delta(m.kind) <= static_cast<long>(cap)) {
      moves.push_back(std::move(m));
    }
  }
  if (moves.empty()) return d;
  const auto& m = moves[pick(rng, moves.size())];
  if (chosen) *chosen = m;
  return flatknot::apply(d, m);
}

}  // namespace testing_support
