#include "ovshift/independence.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <set>
#include <stdexcept>

#include "ovshift/bitset.hpp"

namespace ovshift {

bool is_independent(const UGraph& g, std::span<const Vertex> vertices) {
  std::vector<char> in(g.size(), 0);
  for (Vertex v : vertices) {
    if (v >= g.size() || in[v]) return false;
    in[v] = 1;
  }
  for (Vertex v : vertices)
    for (Vertex w : g.neighbors(v))
      if (in[w]) return false;
  return true;
}

IndependenceResult greedy_independent_set(const UGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> deg(n);
  std::vector<char> alive(n, 1);
  std::set<std::pair<std::size_t, Vertex>> queue;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    queue.emplace(deg[v], v);
  }
  IndependenceResult r;
  auto kill = [&](Vertex v) {
    alive[v] = 0;
    queue.erase({deg[v], v});
    for (Vertex w : g.neighbors(v))
      if (alive[w]) {
        queue.erase({deg[w], w});
        --deg[w];
        queue.emplace(deg[w], w);
      }
  };
  while (!queue.empty()) {
    const Vertex v = queue.begin()->second;
    r.witness.push_back(v);
    std::vector<Vertex> drop;
    for (Vertex w : g.neighbors(v))
      if (alive[w]) drop.push_back(w);
    kill(v);
    for (Vertex w : drop)
      if (alive[w]) kill(w);
  }
  std::sort(r.witness.begin(), r.witness.end());
  r.size = r.witness.size();
  r.exact = r.size == n;
  assert(is_independent(g, r.witness));
  return r;
}

namespace {

// Components above this size skip branch-and-bound: the dense bitset
// adjacency would need size^2 / 8 bytes.
constexpr std::size_t kDenseLimit = 16384;

struct BudgetExhausted {};

// Maximum clique search on the complement (bitset colour-bound style): each
// node partitions its candidates into cliques of G, and a vertex is branched
// on only while the cliques up to its own could still beat the incumbent.
// Vertices that would open a branching clique are first re-numbered into an
// earlier clique when a single blocking vertex can be moved aside.
class BranchAndBound {
 public:
  BranchAndBound(const std::vector<Bitset>& adj, std::uint64_t budget, std::uint64_t& used)
      : n_(adj.size()), budget_(budget), used_(used) {
    // Min-width order for the complement: repeatedly send the vertex with the
    // most remaining G-neighbours to the back.
    std::vector<std::size_t> deg(n_);
    for (Vertex v = 0; v < n_; ++v) deg[v] = adj[v].count();
    std::vector<char> placed(n_, 0);
    order_.assign(n_, 0);
    for (std::size_t slot = n_; slot-- > 0;) {
      Vertex pick = 0;
      bool have = false;
      for (Vertex v = 0; v < n_; ++v)
        if (!placed[v] && (!have || deg[v] > deg[pick])) {
          pick = v;
          have = true;
        }
      placed[pick] = 1;
      order_[slot] = pick;
      adj[pick].for_each([&](std::size_t w) { --deg[w]; });
    }
    pos_.assign(n_, 0);
    for (Vertex k = 0; k < n_; ++k) pos_[order_[k]] = k;
    adj_.assign(n_, Bitset(n_));
    for (Vertex v = 0; v < n_; ++v) adj[v].for_each([&](std::size_t w) { adj_[pos_[v]].set(pos_[w]); });
  }

  /// Returns caller indices of the best set; `complete` reports whether the
  /// search finished within budget.
  std::vector<Vertex> solve(const std::vector<Vertex>& initial, bool& complete) {
    for (Vertex v : initial) best_.push_back(pos_[v]);
    Bitset all(n_);
    all.set_all();
    complete = true;
    try {
      expand(std::move(all));
    } catch (const BudgetExhausted&) {
      complete = false;
    }
    std::vector<Vertex> out;
    for (Vertex v : best_) out.push_back(order_[v]);
    return out;
  }

 private:
  // Tries to place v in one of the first `limit` cliques.
  bool renumber(std::size_t v, std::vector<Bitset>& cliques, std::size_t limit) const {
    for (std::size_t k1 = 0; k1 < limit; ++k1) {
      const std::size_t blocking = cliques[k1].count_outside(adj_[v], 2);
      if (blocking == 0) {
        cliques[k1].set(v);
        return true;
      }
      if (blocking > 1) continue;
      Bitset outside = cliques[k1];
      outside.subtract(adj_[v]);
      const std::size_t w = outside.find_first();
      for (std::size_t k2 = 0; k2 < limit; ++k2) {
        if (k2 == k1 || !cliques[k2].is_subset_of(adj_[w])) continue;
        cliques[k1].reset(w);
        cliques[k2].set(w);
        cliques[k1].set(v);
        return true;
      }
    }
    return false;
  }

  void expand(Bitset p) {
    if (++used_ > budget_) throw BudgetExhausted{};
    const std::size_t depth = chosen_.size();
    const std::size_t need = best_.size() >= depth ? best_.size() - depth : 0;

    std::vector<Bitset> cliques;
    std::vector<Vertex> verts;
    std::vector<std::size_t> bound;
    Bitset uncovered = p;
    while (uncovered.any()) {
      Bitset clique(n_);
      Bitset q = uncovered;
      const bool branching = cliques.size() >= need;
      for (std::size_t v = q.find_first(); v != Bitset::npos; v = q.find_first()) {
        uncovered.reset(v);
        q.reset(v);
        if (branching && need > 0 && renumber(v, cliques, need)) continue;
        q &= adj_[v];
        clique.set(v);
      }
      if (clique.none()) continue;
      cliques.push_back(std::move(clique));
      if (branching) {
        const std::size_t k = cliques.size();
        cliques.back().for_each([&](std::size_t v) {
          verts.push_back(static_cast<Vertex>(v));
          bound.push_back(k);
        });
      }
    }

    for (std::size_t i = verts.size(); i-- > 0;) {
      if (depth + bound[i] <= best_.size()) return;
      const Vertex v = verts[i];
      p.reset(v);
      Bitset next = p;
      next.subtract(adj_[v]);
      chosen_.push_back(v);
      if (next.none()) {
        if (chosen_.size() > best_.size()) best_ = chosen_;
      } else {
        expand(std::move(next));
      }
      chosen_.pop_back();
    }
  }

  std::size_t n_;
  std::vector<Bitset> adj_;
  std::vector<Vertex> order_;  // local index -> caller index
  std::vector<Vertex> pos_;    // caller index -> local index
  std::uint64_t budget_;
  std::uint64_t& used_;
  std::vector<Vertex> chosen_;
  std::vector<Vertex> best_;
};

std::vector<std::vector<Vertex>> connected_components(const UGraph& g) {
  const std::size_t n = g.size();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = 1;
    for (std::size_t k = 0; k < comp.size(); ++k)
      for (Vertex w : g.neighbors(comp[k]))
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

// Exhaustive isolated-vertex and domination reductions. If N[v] is inside
// N[u] for an edge uv, some maximum set avoids u. Returns the vertices forced
// into the solution and leaves the survivors in `alive`.
std::vector<Vertex> reduce(const std::vector<Bitset>& adj, Bitset& alive) {
  std::vector<Vertex> taken;
  Bitset scratch(adj.size());
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t u = alive.find_first(); u != Bitset::npos; u = alive.find_next(u)) {
      if (!adj[u].intersects(alive)) {
        taken.push_back(static_cast<Vertex>(u));
        alive.reset(u);
        changed = true;
        continue;
      }
      bool dominated = false;
      scratch = adj[u];
      scratch &= alive;
      for (std::size_t v = scratch.find_first(); v != Bitset::npos && !dominated; v = scratch.find_next(v)) {
        // N[v] within N[u], restricted to alive vertices.
        Bitset outside = adj[v];
        outside &= alive;
        outside.subtract(adj[u]);
        outside.reset(u);
        dominated = outside.none();
      }
      if (dominated) {
        alive.reset(u);
        changed = true;
      }
    }
  }
  return taken;
}

std::vector<std::vector<Vertex>> bitset_components(const std::vector<Bitset>& adj, const Bitset& alive) {
  Bitset left = alive;
  std::vector<std::vector<Vertex>> out;
  for (std::size_t s = left.find_first(); s != Bitset::npos; s = left.find_first()) {
    std::vector<Vertex> comp{static_cast<Vertex>(s)};
    left.reset(s);
    for (std::size_t k = 0; k < comp.size(); ++k) {
      Bitset next = adj[comp[k]];
      next &= left;
      next.for_each([&](std::size_t w) {
        left.reset(w);
        comp.push_back(static_cast<Vertex>(w));
      });
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace

IndependenceResult max_independent_set(const UGraph& g, std::uint64_t budget) {
  IndependenceResult r;
  r.exact = true;
  for (const auto& comp : connected_components(g)) {
    if (comp.size() <= 2) {
      r.witness.push_back(comp.front());
      continue;
    }
    const UGraph sub = induced_ugraph(g, comp);
    if (comp.size() > kDenseLimit || r.expansions >= budget) {
      r.exact = false;
      for (Vertex v : greedy_independent_set(sub).witness) r.witness.push_back(comp[v]);
      continue;
    }
    std::vector<Bitset> adj(comp.size(), Bitset(comp.size()));
    for (Vertex v = 0; v < comp.size(); ++v)
      for (Vertex w : sub.neighbors(v)) adj[v].set(w);
    Bitset alive(comp.size());
    alive.set_all();
    for (Vertex v : reduce(adj, alive)) r.witness.push_back(comp[v]);
    for (const auto& part : bitset_components(adj, alive)) {
      if (part.size() <= 2) {
        r.witness.push_back(comp[part.front()]);
        continue;
      }
      std::vector<Bitset> local(part.size(), Bitset(part.size()));
      for (Vertex a = 0; a < part.size(); ++a)
        for (Vertex b = a + 1; b < part.size(); ++b)
          if (adj[part[a]].test(part[b])) {
            local[a].set(b);
            local[b].set(a);
          }
      const UGraph part_graph = induced_ugraph(sub, part);
      const auto start = greedy_independent_set(part_graph);
      BranchAndBound bnb(local, budget, r.expansions);
      bool complete = false;
      for (Vertex v : bnb.solve(start.witness, complete)) r.witness.push_back(comp[part[v]]);
      if (!complete) r.exact = false;
    }
  }
  std::sort(r.witness.begin(), r.witness.end());
  r.size = r.witness.size();
  r.expansions = std::min(r.expansions, budget);
  if (!is_independent(g, r.witness)) throw std::logic_error("max_independent_set: witness is not independent");
  return r;
}

}  // namespace ovshift
