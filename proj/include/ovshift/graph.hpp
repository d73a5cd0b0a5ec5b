#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ovshift/bitset.hpp"

namespace ovshift {

/// Vertex index. 0-based inside the library; every external surface (files,
/// reports, DOT) uses index + 1.
using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// A finite sequence of vertices joined by T-edges.
using Word = std::vector<Vertex>;

inline constexpr std::size_t kDefaultMaxVertices = 4096;

/// Directed graph without parallel edges. Immutable after construction;
/// successor and predecessor lists are sorted.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::size_t n) : succ_(n), pred_(n) {}
  /// Duplicate edges are merged. Throws ValidationError on out-of-range ends.
  Digraph(std::size_t n, std::span<const Edge> edges);

  std::size_t size() const { return succ_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::span<const Vertex> successors(Vertex v) const { return succ_[v]; }
  std::span<const Vertex> predecessors(Vertex v) const { return pred_[v]; }
  std::size_t out_degree(Vertex v) const { return succ_[v].size(); }
  std::size_t in_degree(Vertex v) const { return pred_[v].size(); }
  bool has_edge(Vertex u, Vertex v) const;

  /// Edges in lexicographic order.
  std::vector<Edge> edges() const;
  BitMatrix adjacency() const;

  friend bool operator==(const Digraph& a, const Digraph& b) { return a.succ_ == b.succ_; }

 private:
  std::vector<std::vector<Vertex>> succ_;
  std::vector<std::vector<Vertex>> pred_;
  std::size_t edge_count_ = 0;
};

/// Simple undirected graph: no self-loops, no multi-edges.
class UGraph {
 public:
  UGraph() = default;
  explicit UGraph(std::size_t n) : adj_(n) {}
  /// Throws ValidationError on self-loops or out-of-range ends. Duplicates
  /// (in either orientation) are merged.
  UGraph(std::size_t n, std::span<const Edge> edges);
  /// Adopts adjacency lists directly; they must already be symmetric, sorted,
  /// and loop-free (checked).
  static UGraph from_adjacency(std::vector<std::vector<Vertex>> adj);

  std::size_t size() const { return adj_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }
  bool has_edge(Vertex u, Vertex v) const;

  /// Edges as (i, j) with i < j, lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const UGraph& a, const UGraph& b) { return a.adj_ == b.adj_; }

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::size_t edge_count_ = 0;
};

/// Transition graph T and intersection graph I on one vertex set.
class TIGraph {
 public:
  TIGraph() = default;
  /// Throws ValidationError if the vertex counts differ.
  TIGraph(Digraph t, UGraph i);

  std::size_t size() const { return t_.size(); }
  const Digraph& t() const { return t_; }
  const UGraph& i() const { return i_; }

  friend bool operator==(const TIGraph&, const TIGraph&) = default;

 private:
  Digraph t_;
  UGraph i_;
};

/// Result of a vertex-removing operation. `kept[new] = old`; `old_to_new`
/// holds nullopt for removed vertices.
struct Reindexed {
  TIGraph graph;
  std::vector<Vertex> kept;
  std::vector<std::optional<Vertex>> old_to_new;

  std::vector<Vertex> removed() const;
};

/// Iteratively deletes vertices with zero T-out- or in-degree. Throws
/// EmptyGraph when nothing survives.
Reindexed prune_stranded(const TIGraph& g);

/// True when every vertex has T-in- and out-degree at least one.
bool is_pruned(const Digraph& t);

/// Keeps exactly the T- and I-edges with both ends in `vertices`; new
/// indices follow ascending old index. Throws std::invalid_argument on an
/// empty or out-of-range set.
Reindexed induced_subgraph(const TIGraph& g, std::span<const Vertex> vertices);
Digraph induced_digraph(const Digraph& t, std::span<const Vertex> vertices);
UGraph induced_ugraph(const UGraph& i, std::span<const Vertex> vertices);

enum class GraphFormat { json, text };

/// Parses a TI-graph from JSON ({"n","t_edges","i_edges"}, 1-indexed) or the
/// line format ("n=<int>", "T i j", "I i j", '#' comments).
TIGraph parse_tigraph(std::string_view input, GraphFormat format,
                      std::size_t max_vertices = kDefaultMaxVertices);

/// Picks the format from the file extension: ".json" is JSON, anything else text.
GraphFormat format_for_path(std::string_view path);

std::string to_json(const TIGraph& g);
std::string to_text(const TIGraph& g);

/// Stable 64-bit FNV-1a digest of the canonical JSON, as 16 hex digits.
std::string digest(const TIGraph& g);

/// Graphviz digraph: T-edges solid, I-edges dashed with dir=none and
/// constraint=false. `labels`, when non-empty, supplies one label per vertex.
std::string export_dot(const TIGraph& g, std::span<const std::string> labels = {});

}  // namespace ovshift
