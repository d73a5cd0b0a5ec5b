#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ovshift/graph.hpp"
#include "ovshift/spectral.hpp"

namespace ovshift {

inline constexpr std::size_t kDefaultStateCap = 100'000;

/// Vertex-labeled digraph. Labels are 0-based internally and cover 0..r-1.
struct LabeledGraph {
  Digraph t;
  std::vector<std::size_t> labels;
  std::size_t label_count = 0;
};

/// Subset-construction output: each state is a nonempty set of same-label
/// vertices of the source graph, and distinct out-neighbors of a state carry
/// distinct labels.
struct RightResolvingPresentation {
  Digraph t;
  std::vector<std::size_t> labels;
  std::vector<std::vector<Vertex>> state_sets;
};

/// Labels vertices by connected component of I, numbered in order of each
/// component's smallest vertex.
LabeledGraph component_labeling(const TIGraph& g);

/// Determinizes on vertex labels. Initial states are the full per-label
/// vertex sets; every reachable state is kept. Throws StateCapExceeded.
RightResolvingPresentation right_resolve(const LabeledGraph& lg,
                                         std::size_t state_cap = kDefaultStateCap);

/// Drops states that cannot lie on a bi-infinite path.
RightResolvingPresentation essential_part(const RightResolvingPresentation& p);

bool is_right_resolving(const RightResolvingPresentation& p);
bool is_label_homogeneous(const RightResolvingPresentation& p, const LabeledGraph& source);

struct SoficEntropy {
  double value = 0;
  SpectralResult spectral;
  RightResolvingPresentation presentation;  // as determinized
  std::size_t essential_states = 0;
  std::size_t pruned_states = 0;
};

/// Entropy of the I-component shift: log of the Perron eigenvalue of the
/// essential part of the right-resolving presentation.
SoficEntropy sofic_entropy(const TIGraph& g, double tol = kDefaultTolerance,
                           std::size_t state_cap = kDefaultStateCap);

/// True when every connected component of I is a clique.
bool clique_components_check(const TIGraph& g);

/// DOT with each state labeled by its symbol and its source vertex set.
std::string export_presentation_dot(const RightResolvingPresentation& p);

}  // namespace ovshift
