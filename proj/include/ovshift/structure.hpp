#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ovshift/bitset.hpp"
#include "ovshift/graph.hpp"

namespace ovshift {

/// Strongly connected components in topological order of the condensation
/// (sources first). Ties between incomparable components go to the one
/// holding the smallest vertex; vertices inside a component are ascending.
std::vector<std::vector<Vertex>> scc_decompose(const Digraph& t);

/// True for a singleton component without a self-loop. Such components carry
/// no recurrent dynamics and have no period.
bool is_trivial_component(const Digraph& t, std::span<const Vertex> scc);

/// Gcd of the cycle lengths (in edges) through the component. Throws
/// std::invalid_argument for a trivial component.
std::size_t period(const Digraph& t, std::span<const Vertex> scc);

/// One cyclic class of an irreducible component together with the digraph of
/// exact length-p paths between its vertices (the diagonal block of A^p).
struct PrimitiveComponent {
  std::vector<Vertex> vertices;  // original indices, ascending
  Digraph block;                 // local indices into `vertices`
};

/// The p cyclic classes of `scc`; class 0 holds the smallest vertex and T-edges
/// step from class c to class c + 1 (mod p).
std::vector<PrimitiveComponent> primitive_components(const Digraph& t, std::span<const Vertex> scc);

/// n^2 - 2n + 2, the largest index of primitivity an n-vertex primitive graph
/// can have (1 for n = 1).
std::size_t wielandt_bound(std::size_t n);

/// Least k with the boolean power A^k all-positive. Throws NotPrimitive when
/// the Wielandt bound passes without success.
std::size_t primitivity_index(const Digraph& t);

/// Boolean A^k, computed as A * A^(k-1) row by row over successor lists.
BitMatrix boolean_power(const Digraph& t, std::size_t k);

/// Irreducible with period 1.
bool is_primitive(const Digraph& t);

struct StructureReport {
  std::vector<std::vector<Vertex>> sccs;
  /// nullopt for trivial components.
  std::vector<std::optional<std::size_t>> periods;
  /// Per component: its cyclic classes (empty for trivial components).
  std::vector<std::vector<PrimitiveComponent>> primitive_components;
  /// Per component and class: index of primitivity of the class block.
  std::vector<std::vector<std::optional<std::size_t>>> gammas;
};

StructureReport analyze_structure(const Digraph& t);

}  // namespace ovshift
