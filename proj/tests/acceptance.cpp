// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "ovshift/bounds.hpp"
#include "ovshift/higher_shift.hpp"
#include "ovshift/ingest.hpp"
#include "ovshift/report.hpp"
#include "ovshift/structure.hpp"
#include "support.hpp"

using namespace ovshift;
using testing::fixture;
using testing::gamma_oracle;
using testing::Gen;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

TIGraph doubling_from_ingest() {
  const auto spec = parse_circle_spec(testing::slurp(testing::data_path("doubling.json")));
  return ti_from_circle(spec.map, spec.cover, spec.margin);
}

Outcome criterion1() {
  Outcome o;
  const TIGraph g = doubling_from_ingest();
  o.check(g == fixture("dbl.json"), "ingest output differs from dbl.json");
  const auto sccs = scc_decompose(g.t());
  o.check(sccs.size() == 1 && sccs[0].size() == 4, "T not irreducible");
  o.check(period(g.t(), sccs[0]) == 1, "period != 1");
  o.check(primitivity_index(g.t()) == 2, "gamma != 2");
  const auto mis = max_independent_set(g.i());
  o.check(mis.size == 2 && mis.exact, "ind(I) != 2");
  const Bound b = primitive_bound(g);
  o.check(std::abs(b.value - 0.5 * std::log(2.0)) <= 1e-9, "primitive_bound = " + num(b.value));
  return o;
}

Outcome criterion2() {
  Outcome o;
  const TIGraph g = fixture("dbl.json");
  const HigherGraph h2 = higher_graph(g, 2);
  o.check(h2.lifted.size() == 8, "|V(T_[2])| = " + std::to_string(h2.lifted.size()));
  o.check(h2.lifted.i().edge_count() == 9, "|E(I_[2])| = " + std::to_string(h2.lifted.i().edge_count()) +
                                               " (expected 9)");
  const auto mis2 = max_independent_set(h2.lifted.i());
  o.check(mis2.size == 4 && mis2.exact, "ind(I_[2]) = " + std::to_string(mis2.size));
  o.check(primitivity_index(h2.lifted.t()) == 3, "gamma(T_[2]) != 3");
  const Bound b2 = primitive_bound(h2.lifted);
  o.check(std::abs(b2.value - 2 * std::log(2.0) / 3) <= 1e-9, "bound at m=2 = " + num(b2.value));
  for (std::size_t m = 1; m <= 8; ++m) {
    const HigherGraph h = higher_graph(g, m);
    const auto mis = max_independent_set(h.lifted.i());
    o.check(mis.exact && mis.size == (std::size_t{1} << m), "ind(I_[" + std::to_string(m) + "]) = " +
                                                                  std::to_string(mis.size));
    o.check(primitivity_index(h.lifted.t()) == m + 1, "gamma(T_[" + std::to_string(m) + "]) != m+1");
  }
  AnalysisConfig cfg;
  cfg.m_max = 8;
  const BoundReport rep = best_bound(g, cfg);
  const double want = 8.0 / 9.0 * std::log(2.0);
  o.check(rep.best && std::abs(rep.bounds[*rep.best].value - want) <= 1e-9,
          "best at m_max=8 = " + (rep.best ? num(rep.bounds[*rep.best].value) : std::string("none")));
  return o;
}

Outcome criterion3() {
  Outcome o;
  const Bound b = sofic_bound(fixture("gm.json"));
  const double phi = (1 + std::sqrt(5.0)) / 2;
  o.check(std::abs(b.value - std::log(phi)) <= 1e-9, "sofic_bound = " + num(b.value));
  o.check(b.exact, "not flagged EXACT");
  return o;
}

Outcome criterion4() {
  Outcome o;
  const Bound b = sofic_bound(fixture("dbl.json"));
  o.check(b.value == 0.0, "sofic_bound = " + num(b.value));
  o.check(!b.exact, "flagged EXACT");
  return o;
}

Outcome criterion5() {
  Outcome o;
  const double h = sft_entropy(fixture("plastic.json").t());
  o.check(std::abs(h - 0.2812) <= 5e-4, "ln lambda = " + num(h));
  return o;
}

Outcome criterion6() {
  Outcome o;
  Gen gen(6006);
  std::size_t compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const TIGraph g = gen.pruned_tigraph(5);
    for (std::size_t m = 1; m <= 5; ++m) {
      const auto sc = oracle_separated_count(g, m, 1 << 20);
      const auto mis = max_independent_set(higher_graph(g, m).lifted.i());
      o.check(sc.exact && mis.exact, "inexact MIS at trial " + std::to_string(trial));
      if (sc.count != mis.size) {
        o.check(false, "trial " + std::to_string(trial) + " m=" + std::to_string(m) + ": oracle " +
                           std::to_string(sc.count) + " vs ind " + std::to_string(mis.size));
      }
      ++compared;
    }
  }
  if (o.pass) o.detail = std::to_string(compared) + " comparisons";
  return o;
}

bool tower_identity(const TIGraph& g, std::size_t m, std::size_t k) {
  const HigherGraph inner = higher_graph(g, m);
  const HigherGraph tower = higher_graph(inner.lifted, k);
  const HigherGraph direct = higher_graph(g, m + k - 1);
  if (tower.lifted.size() != direct.lifted.size()) return false;
  // A tower vertex is k overlapping m-words; flatten it to one (m+k-1)-word.
  std::vector<Vertex> to_direct(tower.lifted.size());
  for (Vertex v = 0; v < tower.lifted.size(); ++v) {
    const Word& outer = tower.vertex_words[v];
    Word flat = inner.vertex_words[outer[0]];
    for (std::size_t s = 1; s < outer.size(); ++s) flat.push_back(inner.vertex_words[outer[s]].back());
    auto it = std::lower_bound(direct.vertex_words.begin(), direct.vertex_words.end(), flat);
    if (it == direct.vertex_words.end() || *it != flat) return false;
    to_direct[v] = static_cast<Vertex>(it - direct.vertex_words.begin());
  }
  std::vector<Edge> t, i;
  for (auto [u, v] : tower.lifted.t().edges()) t.emplace_back(to_direct[u], to_direct[v]);
  for (auto [u, v] : tower.lifted.i().edges()) i.emplace_back(to_direct[u], to_direct[v]);
  const std::size_t n = direct.lifted.size();
  return TIGraph(Digraph(n, t), UGraph(n, i)) == direct.lifted;
}

Outcome criterion7() {
  Outcome o;
  Gen gen(7007);
  AnalysisConfig cfg;
  cfg.m_max = 4;
  std::size_t failures = 0;
  auto fail = [&](int trial, const std::string& what) {
    if (failures++ < 5) o.check(false, "trial " + std::to_string(trial) + ": " + what);
  };
  for (int trial = 0; trial < 500; ++trial) {
    const TIGraph g = gen.pruned_tigraph(6);
    const std::size_t n = g.size();
    const std::size_t ind = max_independent_set(g.i()).size;
    for (std::size_t m = 1; m <= 4; ++m)
      if (max_independent_set(higher_graph(g, m).lifted.i()).size < ind) fail(trial, "ind(I_[m]) < ind(I)");

    // Index of primitivity on a primitive graph of the same size.
    Digraph p;
    do {
      p = gen.digraph(std::max<std::size_t>(n, 2), 0.2 + 0.5 * gen.unit());
    } while (!is_primitive(p));
    const std::size_t gp = gamma_oracle(p);
    if (primitivity_index(p) != gp) fail(trial, "gamma(T) disagrees with dense powers");
    if (gp > wielandt_bound(p.size())) fail(trial, "gamma above the Wielandt bound");
    const TIGraph pg(p, UGraph(p.size()));
    for (std::size_t m = 1; m <= 4; ++m) {
      const HigherGraph h = higher_graph(pg, m);
      const std::size_t gm = primitivity_index(h.lifted.t());
      if (gm != gp - 1 + m) fail(trial, "gamma(T_[m]) != gamma(T) - 1 + m");
      if (gm > wielandt_bound(h.lifted.size())) fail(trial, "gamma(T_[m]) above the Wielandt bound");
    }

    const std::size_t m = gen.range(1, 3), k = gen.range(1, 3);
    if (!tower_identity(g, m, k)) fail(trial, "tower identity");

    const auto report = analyze_structure(g.t());
    for (std::size_t c = 0; c < report.gammas.size(); ++c)
      for (std::size_t k = 0; k < report.gammas[c].size(); ++k) {
        const auto& gam = report.gammas[c][k];
        if (gam && *gam > wielandt_bound(report.primitive_components[c][k].vertices.size()))
          fail(trial, "class gamma above the Wielandt bound");
      }

    const BoundReport rep = best_bound(g, cfg);
    const double h = rep.classical_entropy;
    for (const Bound& b : rep.bounds) {
      if (!b.applicable) continue;
      if (b.certified && b.value > h + 2 * cfg.tol)
        fail(trial, std::string(method_name(b.method)) + " = " + num(b.value) + " exceeds h(T) = " + num(h));
      if (!verify_certificate(g, b, cfg.tol))
        fail(trial, std::string(method_name(b.method)) + " certificate does not re-verify");
    }
  }
  if (failures > 5) o.detail += "; " + std::to_string(failures) + " failures in total";
  if (o.pass) o.detail = "500 instances";
  return o;
}

Outcome criterion8() {
  Outcome o;
  const TIGraph raw = fixture("ex45.json");
  const auto pruned = prune_stranded(raw);
  o.check(pruned.removed() == std::vector<Vertex>{5, 8}, "pruning should remove vertices 6 and 9");
  const Bound b = component_bound(pruned.graph);
  const auto* c = std::get_if<ComponentCertificate>(&b.certificate);
  o.check(c && c->period == 2 && c->gamma == 4 && c->independent_set.size() == 4,
          "certificate is not (p=2, gamma=4, ind=4)");
  o.check(std::abs(b.value - std::log(4.0) / 8) <= 1e-9, "component_bound = " + num(b.value));
  o.check(std::abs(b.value - 0.1733) <= 5e-5, "component_bound does not round to 0.1733");
  o.check(std::abs(sft_entropy(fixture("plastic.json").t()) - 0.281) <= 5e-4, "plastic fixture off");

  // Only the running maximum of the sequence is monotone.
  AnalysisConfig cfg;
  cfg.m_max = 5;
  const auto seq = limit_sequence(pruned.graph, cfg);
  double running = 0;
  for (const auto& e : seq.entries) {
    const double next = std::max(running, e.by_m);
    o.check(next >= running, "running maximum decreased");
    running = next;
  }
  return o;
}

std::string run_cli(const std::string& args) {
  const std::string cmd = std::string(OVSHIFT_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return "";
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  pclose(pipe);
  return out;
}

Outcome criterion9() {
  Outcome o;
  for (const char* f : {"dbl.json", "gm.json", "empty_i.json", "ex45.json", "plastic.json"}) {
    for (const char* fmt : {"text", "json"}) {
      const std::string args = "report " + testing::data_path(f) + " --format " + fmt + " --seed 17";
      const std::string a = run_cli(args), b = run_cli(args);
      o.check(!a.empty() && a == b, std::string(f) + " (" + fmt + ") differs between runs");
    }
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double time_limit;  // seconds; 0 means none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "doubling fixture via ingest: primitive bound", 1.0, criterion1},
      {2, "doubling higher shifts and limit", 10.0, criterion2},
      {3, "golden mean sofic bound, exact", 1.0, criterion3},
      {4, "one-component I gives sofic bound 0", 0, criterion4},
      {5, "x^3 - x - 1 spectral fixture", 0, criterion5},
      {6, "oracle equals ind(I_[m]) on 200 random graphs", 60.0, criterion6},
      {7, "property suite on 500 random instances", 0, criterion7},
      {8, "constructed fixtures for figure-only examples", 0, criterion8},
      {9, "report output is deterministic", 0, criterion9},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = seconds_since(t0);
    if (c.time_limit > 0 && secs >= c.time_limit) o.check(false, "runtime " + num(secs) + " s");
    std::printf("criterion %d: %s  %-48s %8.3f s%s%s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, secs,
                o.detail.empty() ? "" : "  ", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
