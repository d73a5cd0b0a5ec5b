#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ovshift/graph.hpp"

namespace ovshift {

inline constexpr std::size_t kDefaultSizeCap = 2'000'000;

/// The m-th higher vertex graph T_[m] with its induced intersection graph
/// I_[m]. Lifted vertex k stands for the base path vertex_words[k]; words are
/// in lexicographic order.
struct HigherGraph {
  std::size_t m = 1;
  TIGraph base;
  TIGraph lifted;
  std::vector<Word> vertex_words;
};

/// Number of vertex paths with `length` vertices, saturating at `cap + 1`.
std::uint64_t count_paths(const Digraph& t, std::size_t length, std::uint64_t cap);

/// Builds T_[m] and I_[m]. Throws SizeCapExceeded when the path count passes
/// `size_cap`, std::invalid_argument when m == 0.
HigherGraph higher_graph(const TIGraph& g, std::size_t m, std::size_t size_cap = kDefaultSizeCap);

/// Componentwise equal-or-I-adjacent. Throws LengthMismatch on unequal lengths.
bool words_indistinguishable(const TIGraph& g, std::span<const Vertex> a, std::span<const Vertex> b);

/// Renders a word with 1-indexed symbols, e.g. "(1,2,4)".
std::string word_label(std::span<const Vertex> w);

}  // namespace ovshift
