#include "ovshift/sofic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <string>

#include "ovshift/errors.hpp"

namespace ovshift {

LabeledGraph component_labeling(const TIGraph& g) {
  const std::size_t n = g.size();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  LabeledGraph lg;
  lg.t = g.t();
  lg.labels.assign(n, kNone);
  for (Vertex s = 0; s < n; ++s) {
    if (lg.labels[s] != kNone) continue;
    const std::size_t label = lg.label_count++;
    std::vector<Vertex> stack{s};
    lg.labels[s] = label;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.i().neighbors(v))
        if (lg.labels[w] == kNone) {
          lg.labels[w] = label;
          stack.push_back(w);
        }
    }
  }
  return lg;
}

RightResolvingPresentation right_resolve(const LabeledGraph& lg, std::size_t state_cap) {
  RightResolvingPresentation out;
  std::map<std::vector<Vertex>, Vertex> ids;
  std::deque<Vertex> work;
  std::vector<Edge> edges;

  auto intern = [&](std::vector<Vertex> set, std::size_t label) -> Vertex {
    auto [it, fresh] = ids.emplace(std::move(set), static_cast<Vertex>(out.state_sets.size()));
    if (fresh) {
      if (out.state_sets.size() >= state_cap)
        throw StateCapExceeded("right-resolving presentation needs more than " +
                               std::to_string(state_cap) + " states");
      out.state_sets.push_back(it->first);
      out.labels.push_back(label);
      work.push_back(it->second);
    }
    return it->second;
  };

  std::vector<std::vector<Vertex>> by_label(lg.label_count);
  for (Vertex v = 0; v < lg.t.size(); ++v) by_label[lg.labels[v]].push_back(v);
  for (std::size_t l = 0; l < lg.label_count; ++l)
    if (!by_label[l].empty()) intern(by_label[l], l);

  std::vector<std::vector<Vertex>> next(lg.label_count);
  while (!work.empty()) {
    const Vertex s = work.front();
    work.pop_front();
    for (auto& bucket : next) bucket.clear();
    for (Vertex v : out.state_sets[s])
      for (Vertex w : lg.t.successors(v)) next[lg.labels[w]].push_back(w);
    for (std::size_t l = 0; l < lg.label_count; ++l) {
      auto& set = next[l];
      if (set.empty()) continue;
      std::sort(set.begin(), set.end());
      set.erase(std::unique(set.begin(), set.end()), set.end());
      edges.emplace_back(s, intern(set, l));
    }
  }
  out.t = Digraph(out.state_sets.size(), edges);
  return out;
}

RightResolvingPresentation essential_part(const RightResolvingPresentation& p) {
  TIGraph as_ti(p.t, UGraph(p.t.size()));
  Reindexed pruned;
  try {
    pruned = prune_stranded(as_ti);
  } catch (const EmptyGraph&) {
    return {};
  }
  RightResolvingPresentation out;
  out.t = pruned.graph.t();
  for (Vertex old : pruned.kept) {
    out.labels.push_back(p.labels[old]);
    out.state_sets.push_back(p.state_sets[old]);
  }
  return out;
}

bool is_right_resolving(const RightResolvingPresentation& p) {
  for (Vertex s = 0; s < p.t.size(); ++s) {
    std::vector<std::size_t> seen;
    for (Vertex w : p.t.successors(s)) seen.push_back(p.labels[w]);
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  }
  return true;
}

bool is_label_homogeneous(const RightResolvingPresentation& p, const LabeledGraph& source) {
  for (Vertex s = 0; s < p.state_sets.size(); ++s) {
    if (p.state_sets[s].empty()) return false;
    for (Vertex v : p.state_sets[s])
      if (v >= source.labels.size() || source.labels[v] != p.labels[s]) return false;
  }
  return true;
}

SoficEntropy sofic_entropy(const TIGraph& g, double tol, std::size_t state_cap) {
  SoficEntropy r;
  r.presentation = right_resolve(component_labeling(g), state_cap);
  const auto essential = essential_part(r.presentation);
  r.essential_states = essential.t.size();
  r.pruned_states = r.presentation.t.size() - r.essential_states;
  if (essential.t.size() == 0) {
    r.value = 0;
    return r;
  }
  r.spectral = perron_eigenvalue(essential.t, {.tol = tol});
  r.value = std::max(0.0, std::log(r.spectral.lambda));
  return r;
}

bool clique_components_check(const TIGraph& g) {
  const auto lg = component_labeling(g);
  std::vector<std::size_t> sizes(lg.label_count, 0);
  for (auto l : lg.labels) ++sizes[l];
  for (Vertex v = 0; v < g.size(); ++v)
    if (g.i().degree(v) + 1 != sizes[lg.labels[v]]) return false;
  return true;
}

std::string export_presentation_dot(const RightResolvingPresentation& p) {
  std::string out = "digraph presentation {\n  node [shape=box];\n";
  for (Vertex s = 0; s < p.t.size(); ++s) {
    std::string set = "{";
    for (std::size_t k = 0; k < p.state_sets[s].size(); ++k) {
      if (k) set += ',';
      set += std::to_string(p.state_sets[s][k] + 1);
    }
    set += "}";
    out += "  s" + std::to_string(s + 1) + " [label=\"A" + std::to_string(p.labels[s] + 1) +
           " " + set + "\"];\n";
  }
  for (const auto& [u, v] : p.t.edges())
    out += "  s" + std::to_string(u + 1) + " -> s" + std::to_string(v + 1) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace ovshift
