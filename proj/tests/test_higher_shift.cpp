#include <doctest.h>

#include "ovshift/errors.hpp"
#include "ovshift/higher_shift.hpp"
#include "ovshift/spectral.hpp"
#include "support.hpp"

using namespace ovshift;
using testing::fixture;
using testing::make_graph;
using testing::one_based;

namespace {

// All T-paths with m vertices, lexicographic.
std::vector<Word> all_words(const Digraph& t, std::size_t m) {
  std::vector<Word> out;
  Word w;
  auto rec = [&](auto&& self) -> void {
    if (w.size() == m) {
      out.push_back(w);
      return;
    }
    if (w.empty()) {
      for (Vertex v = 0; v < t.size(); ++v) {
        w.push_back(v);
        self(self);
        w.pop_back();
      }
      return;
    }
    for (Vertex v : t.successors(w.back())) {
      w.push_back(v);
      self(self);
      w.pop_back();
    }
  };
  rec(rec);
  return out;
}

bool close(const TIGraph& g, Vertex a, Vertex b) { return a == b || g.i().has_edge(a, b); }

}  // namespace

TEST_CASE("second higher graph of the doubling fixture") {
  const auto h = higher_graph(fixture("dbl.json"), 2);
  CHECK(h.lifted.size() == 8);
  CHECK(h.vertex_words == std::vector<Word>{{0, 0}, {0, 1}, {1, 2}, {1, 3}, {2, 0}, {2, 1}, {3, 2}, {3, 3}});
  CHECK(h.lifted.t().edge_count() == 16);
  CHECK(is_pruned(h.lifted.t()));
}

TEST_CASE("m = 1 reproduces the input") {
  testing::Gen gen(501);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = gen.tigraph(gen.range(1, 6), gen.unit(), gen.unit());
    const auto h = higher_graph(g, 1);
    CHECK(h.lifted == g);
  }
  CHECK_THROWS_AS(higher_graph(fixture("dbl.json"), 0), std::invalid_argument);
}

TEST_CASE("a self-loop lifts to a self-loop") {
  const auto g = make_graph(1, one_based({{1, 1}}), {});
  for (std::size_t m = 1; m <= 6; ++m) {
    const auto h = higher_graph(g, m);
    CHECK(h.lifted == g);
    CHECK(h.vertex_words == std::vector<Word>{Word(m, 0)});
  }
}

TEST_CASE("indistinguishable words") {
  const auto g = make_graph(3, {}, one_based({{1, 2}}));
  CHECK(words_indistinguishable(g, Word{0, 2}, Word{1, 2}));
  CHECK_FALSE(words_indistinguishable(g, Word{0, 2}, Word{2, 2}));
  const auto dbl = fixture("dbl.json");
  const Word w{0, 1, 2};
  CHECK(words_indistinguishable(dbl, w, w));
  CHECK_FALSE(words_indistinguishable(dbl, Word{0, 0}, Word{2, 0}));
  CHECK_THROWS_AS(words_indistinguishable(dbl, Word{0}, Word{0, 1}), LengthMismatch);
  CHECK(word_label(Word{0, 1, 3}) == "(1,2,4)");
}

TEST_CASE("higher graphs match brute-force word enumeration") {
  testing::Gen gen(502);
  for (int trial = 0; trial < 150; ++trial) {
    const auto g = gen.tigraph(gen.range(1, 5), 0.2 + 0.6 * gen.unit(), gen.unit());
    for (std::size_t m = 1; m <= 4; ++m) {
      const auto words = all_words(g.t(), m);
      if (words.empty()) {
        CHECK(higher_graph(g, m).lifted.size() == 0);
        continue;
      }
      const auto h = higher_graph(g, m);
      REQUIRE(h.vertex_words == words);
      const auto a = IntMatrix::from_digraph(g.t());
      std::uint64_t paths = a.size();
      if (m > 1) paths = a.power(static_cast<unsigned>(m - 1)).sum();
      CHECK(h.lifted.size() == paths);
      CHECK(count_paths(g.t(), m, 1u << 20) == paths);
      for (Vertex x = 0; x < words.size(); ++x)
        for (Vertex y = 0; y < words.size(); ++y) {
          const auto& a_w = words[x];
          const auto& b_w = words[y];
          const bool shift = std::equal(a_w.begin() + 1, a_w.end(), b_w.begin()) &&
                             g.t().has_edge(a_w.back(), b_w.back());
          CHECK(h.lifted.t().has_edge(x, y) == shift);
          bool near = x != y;
          for (std::size_t k = 0; k < m && near; ++k) near = close(g, a_w[k], b_w[k]);
          CHECK(h.lifted.i().has_edge(x, y) == near);
          if (x != y) CHECK(words_indistinguishable(g, a_w, b_w) == near);
        }
    }
  }
}

TEST_CASE("size caps") {
  const auto dbl = fixture("dbl.json");
  CHECK(count_paths(dbl.t(), 10, 100) == 101);
  CHECK(count_paths(dbl.t(), 3, 100) == 16);
  CHECK_THROWS_AS(higher_graph(dbl, 10, 100), SizeCapExceeded);
  CHECK(higher_graph(dbl, 5, 64).lifted.size() == 64);
}
