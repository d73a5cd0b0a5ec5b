#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ovshift/graph.hpp"

namespace ovshift {

inline constexpr std::uint64_t kDefaultMisBudget = 10'000'000;

struct IndependenceResult {
  std::size_t size = 0;
  std::vector<Vertex> witness;  // ascending
  /// True when no independent set of size + 1 exists.
  bool exact = false;
  std::uint64_t expansions = 0;
};

bool is_independent(const UGraph& g, std::span<const Vertex> vertices);

/// Exact maximum independent set, one connected component at a time: isolated
/// and dominated vertices are reduced first, then a maximum clique search on
/// the complement prunes with clique-cover bounds. When `budget` node
/// expansions run out the best set found so far is returned with
/// exact = false.
IndependenceResult max_independent_set(const UGraph& g, std::uint64_t budget = kDefaultMisBudget);

/// Minimum-degree greedy. exact only when the graph is edgeless.
IndependenceResult greedy_independent_set(const UGraph& g);

}  // namespace ovshift
