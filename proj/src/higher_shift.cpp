#include "ovshift/higher_shift.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ovshift/errors.hpp"

namespace ovshift {

std::uint64_t count_paths(const Digraph& t, std::size_t length, std::uint64_t cap) {
  if (length == 0) return 1;
  const std::uint64_t limit = cap + 1;
  std::vector<std::uint64_t> ends(t.size(), 1), next(t.size());
  for (std::size_t step = 1; step < length; ++step) {
    for (Vertex v = 0; v < t.size(); ++v) {
      std::uint64_t s = 0;
      for (Vertex w : t.successors(v)) s = std::min(limit, s + ends[w]);
      next[v] = s;
    }
    ends.swap(next);
  }
  std::uint64_t total = 0;
  for (auto c : ends) total = std::min(limit, total + c);
  return total;
}

bool words_indistinguishable(const TIGraph& g, std::span<const Vertex> a, std::span<const Vertex> b) {
  if (a.size() != b.size())
    throw LengthMismatch("words of length " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()) + " cannot be compared");
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != b[k] && !g.i().has_edge(a[k], b[k])) return false;
  return true;
}

std::string word_label(std::span<const Vertex> w) {
  std::string s = "(";
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(w[k] + 1);
  }
  return s + ")";
}

namespace {

std::vector<Word> enumerate_paths(const Digraph& t, std::size_t m) {
  std::vector<Word> words;
  Word cur;
  cur.reserve(m);
  // Explicit stack of successor positions keeps the order lexicographic.
  std::vector<std::size_t> pos;
  for (Vertex s = 0; s < t.size(); ++s) {
    cur.assign(1, s);
    pos.assign(1, 0);
    while (!cur.empty()) {
      if (cur.size() == m) {
        words.push_back(cur);
        cur.pop_back();
        pos.pop_back();
        continue;
      }
      const auto succ = t.successors(cur.back());
      if (pos.back() < succ.size()) {
        cur.push_back(succ[pos.back()++]);
        pos.push_back(0);
      } else {
        cur.pop_back();
        pos.pop_back();
      }
    }
  }
  return words;
}

std::size_t index_of(const std::vector<Word>& words, const Word& w) {
  auto it = std::lower_bound(words.begin(), words.end(), w);
  if (it == words.end() || *it != w) throw std::logic_error("higher_graph: word not found");
  return static_cast<std::size_t>(it - words.begin());
}

}  // namespace

HigherGraph higher_graph(const TIGraph& g, std::size_t m, std::size_t size_cap) {
  if (m == 0) throw std::invalid_argument("higher_graph: m must be positive");
  const std::uint64_t count = count_paths(g.t(), m, size_cap);
  if (count > size_cap)
    throw SizeCapExceeded("higher graph at m=" + std::to_string(m) + " needs more than " +
                          std::to_string(size_cap) + " vertices");

  HigherGraph h;
  h.m = m;
  h.base = g;
  h.vertex_words = enumerate_paths(g.t(), m);
  const auto& words = h.vertex_words;
  const std::size_t n = words.size();

  std::vector<Edge> t_edges;
  if (m == 1) {
    t_edges = g.t().edges();
  } else {
    // Successors of (i0..i_{m-1}) are exactly the words with prefix (i1..i_{m-1}).
    Word key(m);
    for (Vertex a = 0; a < n; ++a) {
      std::copy(words[a].begin() + 1, words[a].end(), key.begin());
      key.back() = 0;
      auto lo = std::lower_bound(words.begin(), words.end(), key);
      for (auto it = lo; it != words.end() && std::equal(key.begin(), key.end() - 1, it->begin());
           ++it)
        t_edges.emplace_back(a, static_cast<Vertex>(it - words.begin()));
    }
  }

  std::vector<std::vector<Vertex>> closed(g.size());
  for (Vertex v = 0; v < g.size(); ++v) {
    closed[v].assign(g.i().neighbors(v).begin(), g.i().neighbors(v).end());
    closed[v].push_back(v);
    std::sort(closed[v].begin(), closed[v].end());
  }

  std::vector<std::vector<Vertex>> adj(n);
  Word other(m);
  for (Vertex a = 0; a < n; ++a) {
    const Word& w = words[a];
    // Depth-first over words u with u_k in closed[w_k] and u a T-path.
    std::vector<std::size_t> pos(m, 0);
    std::size_t depth = 0;
    while (true) {
      const auto& choices = closed[w[depth]];
      bool advanced = false;
      while (pos[depth] < choices.size()) {
        const Vertex x = choices[pos[depth]++];
        if (depth > 0 && !g.t().has_edge(other[depth - 1], x)) continue;
        other[depth] = x;
        advanced = true;
        break;
      }
      if (!advanced) {
        if (depth == 0) break;
        pos[depth] = 0;
        --depth;
        continue;
      }
      if (depth + 1 < m) {
        ++depth;
        continue;
      }
      if (other != w) {
        const auto b = static_cast<Vertex>(index_of(words, other));
        if (b > a) {
          adj[a].push_back(b);
          adj[b].push_back(a);
        }
      }
    }
  }
  for (auto& l : adj) std::sort(l.begin(), l.end());

  h.lifted = TIGraph(Digraph(n, t_edges), UGraph::from_adjacency(std::move(adj)));
  return h;
}

}  // namespace ovshift
