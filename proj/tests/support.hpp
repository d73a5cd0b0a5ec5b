#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ovshift/errors.hpp"
#include "ovshift/graph.hpp"

namespace testing {

using namespace ovshift;

inline std::string data_path(const std::string& name) { return std::string(OVSHIFT_DATA_DIR) + "/" + name; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline TIGraph fixture(const std::string& name) {
  return parse_tigraph(slurp(data_path(name)), format_for_path(name));
}

inline TIGraph make_graph(std::size_t n, const std::vector<Edge>& t, const std::vector<Edge>& i) {
  return TIGraph(Digraph(n, t), UGraph(n, i));
}

/// 1-based edge lists, as written in the fixtures.
inline std::vector<Edge> one_based(std::initializer_list<std::pair<int, int>> es) {
  std::vector<Edge> out;
  for (auto [u, v] : es) out.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
  return out;
}

/// reach[u][v]: a walk of at least one edge leads from u to v.
inline std::vector<std::vector<char>> transitive_closure(const Digraph& t) {
  const std::size_t n = t.size();
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : t.successors(u)) r[u][v] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t u = 0; u < n; ++u)
      if (r[u][k])
        for (std::size_t v = 0; v < n; ++v)
          if (r[k][v]) r[u][v] = 1;
  return r;
}

/// Exhaustive independence number over all vertex subsets (n <= 20).
inline std::size_t brute_independence_number(const UGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::uint32_t> nb(n, 0);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : g.neighbors(v)) nb[v] |= 1u << w;
  std::size_t best = 0;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    bool ok = true;
    for (Vertex v = 0; v < n && ok; ++v)
      if ((s >> v & 1u) && (nb[v] & s)) ok = false;
    if (ok) best = std::max<std::size_t>(best, std::popcount(s));
  }
  return best;
}

// Independent oracle: least k with A^k all positive, by dense boolean products.
inline std::size_t gamma_oracle(const Digraph& t) {
  const std::size_t n = t.size();
  std::vector<std::vector<char>> a(n, std::vector<char>(n, 0)), p;
  for (const auto& [u, v] : t.edges()) a[u][v] = 1;
  p = a;
  const std::size_t limit = n * n;
  for (std::size_t k = 1; k <= limit; ++k) {
    bool all = true;
    for (const auto& row : p)
      for (char c : row) all = all && c;
    if (all) return k;
    std::vector<std::vector<char>> q(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (p[i][j])
          for (std::size_t l = 0; l < n; ++l) q[i][l] |= a[j][l];
    p = std::move(q);
  }
  return 0;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t index(std::size_t bound) { return static_cast<std::size_t>(rng_() % bound); }
  std::size_t range(std::size_t lo, std::size_t hi) { return lo + index(hi - lo + 1); }
  bool coin(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }
  double unit() { return std::uniform_real_distribution<double>(0, 1)(rng_); }

  Digraph digraph(std::size_t n, double p) {
    std::vector<Edge> es;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v)
        if (coin(p)) es.emplace_back(u, v);
    return Digraph(n, es);
  }

  UGraph ugraph(std::size_t n, double p) {
    std::vector<Edge> es;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (coin(p)) es.emplace_back(u, v);
    return UGraph(n, es);
  }

  TIGraph tigraph(std::size_t n, double pt, double pi) { return TIGraph(digraph(n, pt), ugraph(n, pi)); }

  /// Random graph with 1..max_n vertices, pruned, with densities drawn per graph.
  TIGraph pruned_tigraph(std::size_t max_n) {
    while (true) {
      const std::size_t n = range(1, max_n);
      const TIGraph g = tigraph(n, 0.15 + 0.5 * unit(), 0.6 * unit());
      try {
        return prune_stranded(g).graph;
      } catch (const EmptyGraph&) {
      }
    }
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testing
