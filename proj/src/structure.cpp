#include "ovshift/structure.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

#include "ovshift/errors.hpp"

namespace ovshift {

std::vector<std::vector<Vertex>> scc_decompose(const Digraph& t) {
  const std::size_t n = t.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<char> on_stack(n, 0);
  std::vector<Vertex> stack;
  std::size_t next_index = 0, comp_count = 0;

  // Iterative Tarjan; `frames` holds (vertex, next successor position).
  std::vector<std::pair<Vertex, std::size_t>> frames;
  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto succ = t.successors(v);
      if (pos < succ.size()) {
        const Vertex w = succ[pos++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const Vertex done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == index[done]) {
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = comp_count;
        } while (w != done);
        ++comp_count;
      }
    }
  }

  std::vector<std::vector<Vertex>> members(comp_count);
  for (Vertex v = 0; v < n; ++v) members[comp[v]].push_back(v);

  // Kahn's algorithm on the condensation, smallest member vertex first.
  std::vector<std::vector<std::size_t>> dag(comp_count);
  std::vector<std::size_t> indeg(comp_count, 0);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex w : t.successors(u))
      if (comp[u] != comp[w]) dag[comp[u]].push_back(comp[w]);
  for (auto& out : dag) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (auto c : out) ++indeg[c];
  }
  using Item = std::pair<Vertex, std::size_t>;  // (smallest vertex, component)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> ready;
  for (std::size_t c = 0; c < comp_count; ++c)
    if (indeg[c] == 0) ready.emplace(members[c].front(), c);
  std::vector<std::vector<Vertex>> order;
  order.reserve(comp_count);
  while (!ready.empty()) {
    const auto c = ready.top().second;
    ready.pop();
    order.push_back(std::move(members[c]));
    for (auto d : dag[c])
      if (--indeg[d] == 0) ready.emplace(members[d].front(), d);
  }
  return order;
}

bool is_trivial_component(const Digraph& t, std::span<const Vertex> scc) {
  return scc.size() == 1 && !t.has_edge(scc[0], scc[0]);
}

namespace {

// BFS levels from scc[0] using only edges inside the component.
std::vector<std::size_t> component_levels(const Digraph& t, std::span<const Vertex> scc,
                                          const std::vector<char>& inside) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> level(t.size(), kUnset);
  std::queue<Vertex> q;
  level[scc[0]] = 0;
  q.push(scc[0]);
  while (!q.empty()) {
    const Vertex u = q.front();
    q.pop();
    for (Vertex w : t.successors(u))
      if (inside[w] && level[w] == kUnset) {
        level[w] = level[u] + 1;
        q.push(w);
      }
  }
  return level;
}

std::vector<char> membership(std::size_t n, std::span<const Vertex> scc) {
  std::vector<char> inside(n, 0);
  for (Vertex v : scc) inside[v] = 1;
  return inside;
}

std::size_t period_from_levels(const Digraph& t, std::span<const Vertex> scc,
                               const std::vector<char>& inside,
                               const std::vector<std::size_t>& level) {
  std::size_t g = 0;
  for (Vertex u : scc)
    for (Vertex w : t.successors(u))
      if (inside[w]) {
        const auto a = level[u] + 1, b = level[w];
        g = std::gcd(g, a > b ? a - b : b - a);
      }
  return g;
}

}  // namespace

std::size_t period(const Digraph& t, std::span<const Vertex> scc) {
  if (scc.empty()) throw std::invalid_argument("period: empty component");
  if (is_trivial_component(t, scc))
    throw std::invalid_argument("period: trivial component (no cycle) has no period");
  const auto inside = membership(t.size(), scc);
  return period_from_levels(t, scc, inside, component_levels(t, scc, inside));
}

BitMatrix boolean_power(const Digraph& t, std::size_t k) {
  const std::size_t n = t.size();
  BitMatrix r(n);
  for (Vertex i = 0; i < n; ++i) r.set(i, i);
  for (std::size_t step = 0; step < k; ++step) {
    BitMatrix next(n);
    for (Vertex i = 0; i < n; ++i)
      for (Vertex u : t.successors(i)) next.row(i) |= r.row(u);
    r = std::move(next);
  }
  return r;
}

std::vector<PrimitiveComponent> primitive_components(const Digraph& t,
                                                     std::span<const Vertex> scc) {
  const std::size_t p = period(t, scc);
  const auto inside = membership(t.size(), scc);
  const auto level = component_levels(t, scc, inside);

  std::vector<Vertex> sorted(scc.begin(), scc.end());
  std::sort(sorted.begin(), sorted.end());
  const Digraph sub = induced_digraph(t, sorted);
  const BitMatrix reach = boolean_power(sub, p);

  std::vector<PrimitiveComponent> out(p);
  std::vector<Vertex> local_in_class(sorted.size());
  std::vector<std::size_t> class_of(sorted.size());
  for (Vertex k = 0; k < sorted.size(); ++k) {
    const auto c = level[sorted[k]] % p;
    class_of[k] = c;
    local_in_class[k] = static_cast<Vertex>(out[c].vertices.size());
    out[c].vertices.push_back(sorted[k]);
  }
  std::vector<std::vector<Edge>> edges(p);
  for (Vertex k = 0; k < sorted.size(); ++k)
    reach.row(k).for_each([&](std::size_t j) {
      if (class_of[j] == class_of[k])
        edges[class_of[k]].emplace_back(local_in_class[k], local_in_class[j]);
    });
  for (std::size_t c = 0; c < p; ++c) out[c].block = Digraph(out[c].vertices.size(), edges[c]);
  return out;
}

std::size_t wielandt_bound(std::size_t n) { return n <= 1 ? 1 : n * n - 2 * n + 2; }

bool is_primitive(const Digraph& t) {
  if (t.size() == 0) return false;
  const auto sccs = scc_decompose(t);
  if (sccs.size() != 1 || is_trivial_component(t, sccs[0])) return false;
  return period(t, sccs[0]) == 1;
}

std::size_t primitivity_index(const Digraph& t) {
  const std::size_t n = t.size();
  if (!is_primitive(t))
    throw NotPrimitive("graph on " + std::to_string(n) + " vertices is not primitive");
  const std::size_t cap = wielandt_bound(n);
  BitMatrix r = t.adjacency();
  for (std::size_t k = 1; k <= cap; ++k) {
    if (r.all_positive()) return k;
    BitMatrix next(n);
    for (Vertex i = 0; i < n; ++i)
      for (Vertex u : t.successors(i)) next.row(i) |= r.row(u);
    r = std::move(next);
  }
  throw NotPrimitive("no positive power up to the Wielandt bound " + std::to_string(cap));
}

StructureReport analyze_structure(const Digraph& t) {
  StructureReport rep;
  rep.sccs = scc_decompose(t);
  for (const auto& scc : rep.sccs) {
    if (is_trivial_component(t, scc)) {
      rep.periods.emplace_back(std::nullopt);
      rep.primitive_components.emplace_back();
      rep.gammas.emplace_back();
      continue;
    }
    rep.periods.emplace_back(period(t, scc));
    auto comps = primitive_components(t, scc);
    std::vector<std::optional<std::size_t>> g;
    for (const auto& c : comps) {
      try {
        g.emplace_back(primitivity_index(c.block));
      } catch (const NotPrimitive&) {
        g.emplace_back(std::nullopt);
      }
    }
    rep.primitive_components.push_back(std::move(comps));
    rep.gammas.push_back(std::move(g));
  }
  return rep;
}

}  // namespace ovshift
