#include <doctest.h>

#include "ovshift/higher_shift.hpp"
#include "ovshift/independence.hpp"
#include "support.hpp"

using namespace ovshift;
using testing::fixture;
using testing::one_based;

namespace {

UGraph cycle(std::size_t n) {
  std::vector<Edge> es;
  for (Vertex v = 0; v < n; ++v) es.emplace_back(v, static_cast<Vertex>((v + 1) % n));
  return UGraph(n, es);
}

UGraph complete(std::size_t n) {
  std::vector<Edge> es;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) es.emplace_back(u, v);
  return UGraph(n, es);
}

// Strong product of a graph with itself, as an intersection graph: distinct
// pairs whose coordinates are each equal or adjacent.
UGraph strong_square(const UGraph& g) {
  const std::size_t n = g.size();
  auto close = [&](Vertex a, Vertex b) { return a == b || g.has_edge(a, b); };
  std::vector<Edge> es;
  for (Vertex x = 0; x < n * n; ++x)
    for (Vertex y = x + 1; y < n * n; ++y)
      if (close(x / n, y / n) && close(x % n, y % n)) es.emplace_back(x, y);
  return UGraph(n * n, es);
}

}  // namespace

TEST_CASE("exact independence: examples") {
  const auto c4 = max_independent_set(cycle(4));
  CHECK(c4.size == 2);
  CHECK(c4.exact);
  CHECK((c4.witness == std::vector<Vertex>{0, 2} || c4.witness == std::vector<Vertex>{1, 3}));

  for (std::size_t n = 1; n <= 6; ++n) {
    const auto edgeless = max_independent_set(UGraph(n));
    CHECK(edgeless.size == n);
    CHECK(edgeless.exact);
    const auto k = max_independent_set(complete(n));
    CHECK(k.size == 1);
    CHECK(k.exact);
  }

  const auto lifted = higher_graph(fixture("dbl.json"), 2).lifted.i();
  CHECK(max_independent_set(lifted).size == 4);
}

TEST_CASE("exact independence on structured graphs") {
  const UGraph petersen(10, one_based({{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                                       {5, 10}, {6, 8}, {8, 10}, {10, 7}, {7, 9}, {9, 6}}));
  CHECK(max_independent_set(petersen).size == 4);
  CHECK(max_independent_set(cycle(7)).size == 3);
  // Shannon's pentagon: five pairwise distinguishable words of length two.
  const auto c5 = max_independent_set(strong_square(cycle(5)));
  CHECK(c5.size == 5);
  CHECK(c5.exact);
  CHECK(max_independent_set(strong_square(cycle(7))).size == 10);
}

TEST_CASE("greedy: examples") {
  const auto edgeless = greedy_independent_set(UGraph(5));
  CHECK(edgeless.size == 5);
  CHECK(edgeless.exact);
  CHECK(greedy_independent_set(cycle(4)).size == 2);
  CHECK_FALSE(greedy_independent_set(cycle(4)).exact);
  for (std::size_t k = 1; k <= 6; ++k) {
    std::vector<Edge> es;
    for (Vertex v = 1; v <= k; ++v) es.emplace_back(0, v);
    CHECK(greedy_independent_set(UGraph(k + 1, es)).size == k);
  }
}

TEST_CASE("exact independence matches brute force") {
  testing::Gen gen(401);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = gen.range(1, 16);
    const auto g = gen.ugraph(n, gen.unit());
    const auto r = max_independent_set(g);
    CHECK(r.exact);
    CHECK(r.size == testing::brute_independence_number(g));
    CHECK(r.size == r.witness.size());
    CHECK(is_independent(g, r.witness));
    CHECK(std::is_sorted(r.witness.begin(), r.witness.end()));
    const auto greedy = greedy_independent_set(g);
    CHECK(is_independent(g, greedy.witness));
    CHECK(greedy.size <= r.size);
  }
}

TEST_CASE("exhausted budgets still return an independent set") {
  testing::Gen gen(402);
  bool saw_inexact = false;
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = gen.ugraph(gen.range(10, 16), 0.3 + 0.3 * gen.unit());
    const auto r = max_independent_set(g, 1);
    CHECK(is_independent(g, r.witness));
    CHECK(r.size <= testing::brute_independence_number(g));
    CHECK(r.expansions <= 1);
    saw_inexact = saw_inexact || !r.exact;
  }
  CHECK(saw_inexact);
}

TEST_CASE("independence checks") {
  const auto g = cycle(5);
  CHECK(is_independent(g, std::vector<Vertex>{0, 2}));
  CHECK_FALSE(is_independent(g, std::vector<Vertex>{0, 1}));
  CHECK_FALSE(is_independent(g, std::vector<Vertex>{0, 0}));
  CHECK_FALSE(is_independent(g, std::vector<Vertex>{9}));
  CHECK(is_independent(g, std::vector<Vertex>{}));
}
