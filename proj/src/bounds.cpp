#include "ovshift/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "ovshift/errors.hpp"
#include "ovshift/structure.hpp"

namespace ovshift {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::independent_subshift: return "independent_subshift";
    case Method::complete_digraph: return "complete_digraph";
    case Method::primitive: return "primitive";
    case Method::component: return "component";
    case Method::sofic: return "sofic";
    case Method::higher_limit: return "higher_limit";
    case Method::oracle_exact: return "oracle_exact";
  }
  return "unknown";
}

namespace {

double log_count(std::size_t k) { return k > 1 ? std::log(static_cast<double>(k)) : 0.0; }

struct SubshiftValue {
  double value = 0;
  double lambda = 0;
  std::vector<Vertex> recurrent;
};

// Entropy of the vertex shift on T restricted to `vertices`.
SubshiftValue restricted_entropy(const Digraph& t, const std::vector<Vertex>& vertices, double tol) {
  SubshiftValue r;
  if (vertices.empty()) return r;
  const Digraph sub = induced_digraph(t, vertices);
  Reindexed pruned;
  try {
    pruned = prune_stranded(TIGraph(sub, UGraph(sub.size())));
  } catch (const EmptyGraph&) {
    return r;
  }
  r.lambda = perron_eigenvalue(pruned.graph.t(), {.tol = tol}).lambda;
  r.value = std::max(0.0, std::log(r.lambda));
  for (Vertex k : pruned.kept) r.recurrent.push_back(vertices[k]);
  return r;
}

struct EnumerationLimit {};

// Bron–Kerbosch with pivoting on the complement of I: reports maximal
// independent sets of I in a deterministic order.
class MaximalSets {
 public:
  MaximalSets(const UGraph& i, std::size_t limit) : n_(i.size()), limit_(limit), non_adj_(n_, Bitset(n_)) {
    for (Vertex v = 0; v < n_; ++v) {
      non_adj_[v].set_all();
      non_adj_[v].reset(v);
      for (Vertex w : i.neighbors(v)) non_adj_[v].reset(w);
    }
  }

  template <typename F>
  bool run(F&& visit) {
    Bitset p(n_), x(n_);
    p.set_all();
    std::vector<Vertex> r;
    try {
      expand(r, std::move(p), std::move(x), visit);
    } catch (const EnumerationLimit&) {
      return false;
    }
    return true;
  }

 private:
  template <typename F>
  void expand(std::vector<Vertex>& r, Bitset p, Bitset x, F& visit) {
    if (p.none() && x.none()) {
      if (seen_++ >= limit_) throw EnumerationLimit{};
      visit(r);
      return;
    }
    std::size_t pivot = Bitset::npos, pivot_hits = 0;
    auto consider = [&](std::size_t u) {
      const std::size_t h = p.intersection_count(non_adj_[u]);
      if (pivot == Bitset::npos || h > pivot_hits) {
        pivot = u;
        pivot_hits = h;
      }
    };
    p.for_each(consider);
    x.for_each(consider);
    Bitset branch = p;
    branch.subtract(non_adj_[pivot]);
    branch.for_each([&](std::size_t v) {
      Bitset np = p, nx = x;
      np &= non_adj_[v];
      nx &= non_adj_[v];
      r.push_back(static_cast<Vertex>(v));
      expand(r, std::move(np), std::move(nx), visit);
      r.pop_back();
      p.reset(v);
      x.set(v);
    });
  }

  std::size_t n_;
  std::size_t limit_;
  std::size_t seen_ = 0;
  std::vector<Bitset> non_adj_;
};

std::vector<Vertex> extend_to_maximal(const UGraph& i, std::vector<Vertex> set) {
  std::vector<char> blocked(i.size(), 0);
  for (Vertex v : set) {
    blocked[v] = 1;
    for (Vertex w : i.neighbors(v)) blocked[w] = 1;
  }
  for (Vertex v = 0; v < i.size(); ++v) {
    if (blocked[v]) continue;
    set.push_back(v);
    blocked[v] = 1;
    for (Vertex w : i.neighbors(v)) blocked[w] = 1;
  }
  std::sort(set.begin(), set.end());
  return set;
}

std::vector<Vertex> visit_order(std::size_t n, std::uint64_t seed) {
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (seed == 0) return order;
  std::mt19937_64 rng(seed);
  // Fisher–Yates on raw engine output so the order is identical across
  // standard libraries.
  for (std::size_t k = n; k > 1; --k) std::swap(order[k - 1], order[rng() % k]);
  return order;
}

std::size_t lifted_gamma(std::size_t base_gamma, std::size_t base_size, std::size_t m) {
  return base_size == 1 ? 1 : base_gamma - 1 + m;
}

}  // namespace

Bound independent_subshift_bound(const TIGraph& g, const AnalysisConfig& cfg) {
  const auto mis = max_independent_set(g.i(), cfg.mis_budget);
  std::vector<Vertex> best_set = mis.witness;
  SubshiftValue best = restricted_entropy(g.t(), best_set, cfg.tol);
  std::size_t examined = 1;

  auto offer = [&](const std::vector<Vertex>& set) {
    ++examined;
    auto val = restricted_entropy(g.t(), set, cfg.tol);
    if (val.value > best.value + cfg.tol) {
      best = std::move(val);
      best_set = set;
      return true;
    }
    return false;
  };

  // The largest independent set need not carry the most entropy, so look at
  // maximal ones too.
  MaximalSets sets(g.i(), cfg.independent_set_limit);
  const bool complete = sets.run([&](const std::vector<Vertex>& r) {
    std::vector<Vertex> s = r;
    std::sort(s.begin(), s.end());
    offer(s);
  });

  if (!complete) {
    // Enumeration was cut short: 1-swap local search from the best set.
    const auto order = visit_order(g.size(), cfg.seed);
    std::size_t evaluations = 0;
    for (bool improved = true; improved && evaluations < cfg.independent_set_limit;) {
      improved = false;
      for (Vertex v : order) {
        if (std::binary_search(best_set.begin(), best_set.end(), v)) continue;
        std::vector<Vertex> next{v};
        for (Vertex u : best_set)
          if (!g.i().has_edge(u, v)) next.push_back(u);
        next = extend_to_maximal(g.i(), std::move(next));
        ++evaluations;
        if (offer(next)) {
          improved = true;
          break;
        }
        if (evaluations >= cfg.independent_set_limit) break;
      }
    }
  }

  Bound b;
  b.method = Method::independent_subshift;
  b.value = best.value;
  b.exact = best_set.size() == g.size();
  IndependentSetCertificate cert;
  cert.vertices = best_set;
  cert.recurrent = best.recurrent;
  cert.lambda = best.lambda;
  cert.mis_exact = mis.exact;
  cert.sets_examined = examined;
  b.certificate = std::move(cert);
  if (best.recurrent.empty()) b.note = "no independent set carries a cycle of T";
  if (!complete) b.note = "maximal-set enumeration capped; local search used";
  return b;
}

Bound complete_digraph_bound(const TIGraph& g, const AnalysisConfig& cfg) {
  Bound b;
  b.method = Method::complete_digraph;
  if (g.t().edge_count() != g.size() * g.size()) {
    b.applicable = false;
    b.note = "T is not a complete digraph";
    return b;
  }
  const auto mis = max_independent_set(g.i(), cfg.mis_budget);
  b.value = log_count(mis.size);
  b.exact = mis.size == g.size();
  b.certificate = CompleteDigraphCertificate{mis.witness, mis.exact};
  return b;
}

Bound primitive_bound(const TIGraph& g, const AnalysisConfig& cfg) {
  const std::size_t gamma = primitivity_index(g.t());
  const auto mis = max_independent_set(g.i(), cfg.mis_budget);
  Bound b;
  b.method = Method::primitive;
  b.value = log_count(mis.size) / static_cast<double>(gamma);
  b.exact = gamma == 1 && mis.size == g.size();
  b.certificate = PrimitiveCertificate{mis.witness, gamma, mis.exact};
  return b;
}

Bound component_bound(const TIGraph& g, const AnalysisConfig& cfg) {
  Bound b;
  b.method = Method::component;
  const auto sccs = scc_decompose(g.t());

  struct ClassInfo {
    std::size_t component, index, period;
    PrimitiveComponent pc;
    UGraph i;
  };
  std::vector<ClassInfo> classes;
  bool positive = false;
  for (std::size_t c = 0; c < sccs.size(); ++c) {
    if (is_trivial_component(g.t(), sccs[c])) continue;
    const std::size_t p = period(g.t(), sccs[c]);
    auto comps = primitive_components(g.t(), sccs[c]);
    for (std::size_t k = 0; k < comps.size(); ++k) {
      UGraph sub = induced_ugraph(g.i(), comps[k].vertices);
      const std::size_t m = sub.size();
      if (m >= 2 && sub.edge_count() < m * (m - 1) / 2) positive = true;
      classes.push_back({c, k, p, std::move(comps[k]), std::move(sub)});
    }
  }
  if (classes.empty()) {
    b.applicable = false;
    b.note = "T has no recurrent component";
    return b;
  }

  ComponentCertificate best;
  bool have = false;
  for (const auto& info : classes) {
    IndependenceResult mis;
    if (positive) {
      mis = max_independent_set(info.i, cfg.mis_budget);
    } else {
      mis.size = 1;
      mis.witness = {0};
      mis.exact = true;
    }
    const std::size_t gamma = primitivity_index(info.pc.block);
    const double score = log_count(mis.size) / static_cast<double>(info.period * gamma);
    if (!have || score > b.value) {
      have = true;
      b.value = score;
      best.component = info.component;
      best.cyclic_class = info.index;
      best.class_vertices = info.pc.vertices;
      best.period = info.period;
      best.gamma = gamma;
      best.independent_set.clear();
      for (Vertex v : mis.witness) best.independent_set.push_back(info.pc.vertices[v]);
      best.mis_exact = mis.exact;
    }
  }
  best.positive = positive;
  b.exact = best.period == 1 && best.gamma == 1 && best.class_vertices.size() == g.size() &&
            best.independent_set.size() == g.size();
  b.certificate = std::move(best);
  return b;
}

Bound sofic_bound(const TIGraph& g, const AnalysisConfig& cfg) {
  const auto se = sofic_entropy(g, cfg.tol, cfg.state_cap);
  Bound b;
  b.method = Method::sofic;
  b.value = se.value;
  SoficCertificate cert;
  cert.labels = component_labeling(g).label_count;
  cert.states = se.presentation.t.size();
  cert.essential_states = se.essential_states;
  cert.pruned_states = se.pruned_states;
  cert.lambda = se.spectral.lambda;
  cert.error_bound = se.spectral.error_bound;
  cert.cliques = clique_components_check(g);
  b.exact = cert.cliques;
  if (cert.pruned_states > 0)
    b.note = std::to_string(cert.pruned_states) + " non-essential state(s) pruned before the spectral step";
  b.certificate = cert;
  return b;
}

LimitSequence limit_sequence(const TIGraph& g, const AnalysisConfig& cfg) {
  LimitSequence seq;
  seq.primitive = is_primitive(g.t());
  const std::size_t base_gamma = seq.primitive ? primitivity_index(g.t()) : 0;
  constexpr std::size_t kDirectGammaLimit = 4096;

  for (std::size_t m = 1; m <= cfg.m_max; ++m) {
    HigherGraph h;
    try {
      h = higher_graph(g, m, cfg.size_cap);
    } catch (const SizeCapExceeded& e) {
      seq.truncated = true;
      seq.truncation = e.what();
      break;
    }
    const auto mis = max_independent_set(h.lifted.i(), cfg.mis_budget);
    LimitEntry e;
    e.m = m;
    e.vertices = h.lifted.size();
    e.ind = mis.size;
    e.ind_exact = mis.exact;
    e.by_m = log_count(mis.size) / static_cast<double>(m);
    if (seq.primitive) {
      const std::size_t gamma = lifted_gamma(base_gamma, g.size(), m);
      if (m <= 3 && e.vertices <= kDirectGammaLimit) {
        if (primitivity_index(h.lifted.t()) != gamma)
          throw std::logic_error("index of primitivity of T_[" + std::to_string(m) +
                                 "] disagrees with gamma(T) - 1 + m");
        e.gamma_checked = true;
      }
      e.gamma = gamma;
      e.by_gamma = log_count(mis.size) / static_cast<double>(gamma);
    }
    for (Vertex v : mis.witness) e.witness.push_back(h.vertex_words[v]);
    seq.entries.push_back(std::move(e));
  }
  return seq;
}

Bound higher_limit_bound(const LimitSequence& seq) {
  Bound b;
  b.method = Method::higher_limit;
  if (seq.entries.empty()) {
    b.applicable = false;
    b.note = seq.truncated ? seq.truncation : "no levels computed";
    return b;
  }
  LimitCertificate cert;
  cert.sequence = seq;
  bool inexact = false;
  for (const auto& e : seq.entries) {
    const double v = seq.primitive ? *e.by_gamma : e.by_m;
    if (cert.best_m == 0 || v > b.value) {
      b.value = v;
      cert.best_m = e.m;
    }
    inexact = inexact || !e.ind_exact;
  }
  b.certified = seq.primitive;
  if (!seq.primitive) b.note = "T is not primitive: max of log(ind)/m is a limsup estimate, not a bound";
  if (inexact) b.note += std::string(b.note.empty() ? "" : "; ") + "some ind values are lower bounds (MIS budget exhausted)";
  if (seq.truncated) b.note += std::string(b.note.empty() ? "" : "; ") + "sequence truncated: " + seq.truncation;
  b.certificate = std::move(cert);
  return b;
}

SeparatedCount oracle_separated_count(const TIGraph& g, std::size_t n, std::size_t word_cap,
                                      std::uint64_t mis_budget) {
  if (n == 0) throw std::invalid_argument("oracle_separated_count: n must be positive");
  SeparatedCount sc;
  sc.n = n;
  std::vector<Word> words;
  Word cur;
  auto extend = [&](auto&& self) -> void {
    if (cur.size() == n) {
      if (words.size() == word_cap)
        throw SizeCapExceeded("more than " + std::to_string(word_cap) + " words of length " +
                              std::to_string(n));
      words.push_back(cur);
      return;
    }
    for (Vertex w : g.t().successors(cur.back())) {
      cur.push_back(w);
      self(self);
      cur.pop_back();
    }
  };
  for (Vertex s = 0; s < g.size(); ++s) {
    cur.assign(1, s);
    extend(extend);
  }
  std::vector<Edge> edges;
  for (Vertex a = 0; a < words.size(); ++a)
    for (Vertex b = a + 1; b < words.size(); ++b)
      if (words_indistinguishable(g, words[a], words[b])) edges.emplace_back(a, b);
  const auto mis = max_independent_set(UGraph(words.size(), edges), mis_budget);
  sc.words = words.size();
  sc.count = mis.size;
  sc.exact = mis.exact;
  for (Vertex v : mis.witness) sc.witness.push_back(words[v]);
  return sc;
}

Bound oracle_bound(const TIGraph& g, const LimitSequence& seq, const AnalysisConfig& cfg) {
  Bound b;
  b.method = Method::oracle_exact;
  OracleCertificate cert;
  if (seq.primitive) cert.gamma = primitivity_index(g.t());
  for (std::size_t n = 1; n <= cfg.oracle_max_n; ++n) {
    SeparatedCount sc;
    try {
      sc = oracle_separated_count(g, n, cfg.oracle_word_cap, cfg.mis_budget);
    } catch (const SizeCapExceeded&) {
      cert.truncated = true;
      break;
    }
    for (const auto& e : seq.entries)
      if (e.m == n && e.ind_exact && sc.exact && e.ind != sc.count)
        throw std::logic_error("separated-word count " + std::to_string(sc.count) +
                               " differs from ind(I_[" + std::to_string(n) + "]) = " +
                               std::to_string(e.ind));
    const double v = cert.gamma ? log_count(sc.count) / static_cast<double>(lifted_gamma(*cert.gamma, g.size(), n))
                                : log_count(sc.count) / static_cast<double>(n);
    if (cert.counts.empty() || v > b.value) {
      b.value = v;
      cert.best_n = n;
    }
    cert.counts.push_back(std::move(sc));
  }
  if (cert.counts.empty()) {
    b.applicable = false;
    b.note = "oracle word cap reached at n=1";
    return b;
  }
  b.certified = cert.gamma.has_value();
  if (!b.certified) b.note = "T is not primitive: log|S_n|/n is an estimate";
  if (cert.truncated)
    b.note += std::string(b.note.empty() ? "" : "; ") + "oracle stopped at the word cap";
  b.certificate = std::move(cert);
  return b;
}

namespace {

template <typename F>
Bound guarded(Method method, bool& cap_hit, F&& run) {
  try {
    return run();
  } catch (const CapExceeded& e) {
    cap_hit = true;
    Bound b;
    b.method = method;
    b.applicable = false;
    b.note = e.what();
    return b;
  } catch (const std::exception& e) {
    Bound b;
    b.method = method;
    b.applicable = false;
    b.note = e.what();
    return b;
  }
}

}  // namespace

BoundReport best_bound(const TIGraph& g, const AnalysisConfig& cfg) {
  BoundReport rep;
  rep.config = cfg;
  rep.graph_digest = digest(g);
  rep.vertices = g.size();
  rep.classical_entropy = sft_entropy(g.t(), cfg.tol);

  bool cap = false;
  rep.bounds.push_back(guarded(Method::independent_subshift, cap, [&] { return independent_subshift_bound(g, cfg); }));
  rep.bounds.push_back(guarded(Method::complete_digraph, cap, [&] { return complete_digraph_bound(g, cfg); }));
  rep.bounds.push_back(guarded(Method::primitive, cap, [&] { return primitive_bound(g, cfg); }));
  rep.bounds.push_back(guarded(Method::component, cap, [&] { return component_bound(g, cfg); }));
  rep.bounds.push_back(guarded(Method::sofic, cap, [&] { return sofic_bound(g, cfg); }));
  LimitSequence seq;
  rep.bounds.push_back(guarded(Method::higher_limit, cap, [&] {
    seq = limit_sequence(g, cfg);
    return higher_limit_bound(seq);
  }));
  if (seq.truncated) cap = true;
  rep.bounds.push_back(guarded(Method::oracle_exact, cap, [&] { return oracle_bound(g, seq, cfg); }));
  rep.cap_hit = cap;

  const double tie = 2 * cfg.tol;
  for (std::size_t k = 0; k < rep.bounds.size(); ++k) {
    const Bound& b = rep.bounds[k];
    if (!b.applicable || !b.certified) continue;
    if (!rep.best) {
      rep.best = k;
      continue;
    }
    const Bound& cur = rep.bounds[*rep.best];
    if (b.value > cur.value + tie || (std::abs(b.value - cur.value) <= tie && b.exact && !cur.exact))
      rep.best = k;
  }
  return rep;
}

BoundReport analyze(const TIGraph& raw, const AnalysisConfig& cfg) {
  const auto pruned = prune_stranded(raw);
  BoundReport rep = best_bound(pruned.graph, cfg);
  rep.removed = pruned.removed();
  rep.kept = pruned.kept;
  return rep;
}

// ---------------------------------------------------------------------------
// Certificate re-verification

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool distinguishable_paths(const TIGraph& g, const std::vector<Word>& words, std::size_t length) {
  for (const auto& w : words) {
    if (w.size() != length) return false;
    for (std::size_t k = 0; k + 1 < w.size(); ++k)
      if (w[k] >= g.size() || !g.t().has_edge(w[k], w[k + 1])) return false;
  }
  for (std::size_t a = 0; a < words.size(); ++a)
    for (std::size_t b = a + 1; b < words.size(); ++b)
      if (words_indistinguishable(g, words[a], words[b])) return false;
  return true;
}

struct Verifier {
  const TIGraph& g;
  const Bound& b;
  double tol;

  bool operator()(const std::monostate&) const { return !b.applicable && b.value == 0; }

  bool operator()(const IndependentSetCertificate& c) const {
    if (!is_independent(g.i(), c.vertices)) return false;
    const auto val = restricted_entropy(g.t(), c.vertices, tol);
    if (val.recurrent != c.recurrent) return false;
    if (!near(val.lambda, c.lambda, 2 * tol)) return false;
    return near(b.value, val.value, 2 * tol);
  }

  bool operator()(const CompleteDigraphCertificate& c) const {
    if (g.t().edge_count() != g.size() * g.size()) return false;
    if (!is_independent(g.i(), c.independent_set)) return false;
    return near(b.value, log_count(c.independent_set.size()), tol);
  }

  bool operator()(const PrimitiveCertificate& c) const {
    if (!is_independent(g.i(), c.independent_set)) return false;
    if (primitivity_index(g.t()) != c.gamma) return false;
    return near(b.value, log_count(c.independent_set.size()) / static_cast<double>(c.gamma), tol);
  }

  bool operator()(const ComponentCertificate& c) const {
    const auto sccs = scc_decompose(g.t());
    if (c.component >= sccs.size() || is_trivial_component(g.t(), sccs[c.component])) return false;
    if (period(g.t(), sccs[c.component]) != c.period) return false;
    const auto comps = primitive_components(g.t(), sccs[c.component]);
    if (c.cyclic_class >= comps.size()) return false;
    const auto& pc = comps[c.cyclic_class];
    if (pc.vertices != c.class_vertices) return false;
    if (primitivity_index(pc.block) != c.gamma) return false;
    for (Vertex v : c.independent_set)
      if (!std::binary_search(pc.vertices.begin(), pc.vertices.end(), v)) return false;
    if (!is_independent(g.i(), c.independent_set)) return false;
    return near(b.value,
                log_count(c.independent_set.size()) / static_cast<double>(c.period * c.gamma), tol);
  }

  bool operator()(const SoficCertificate& c) const {
    const auto se = sofic_entropy(g, tol, std::max<std::size_t>(c.states, 1));
    if (se.presentation.t.size() != c.states || se.essential_states != c.essential_states) return false;
    if (!is_right_resolving(se.presentation)) return false;
    if (clique_components_check(g) != c.cliques || b.exact != c.cliques) return false;
    return near(b.value, se.value, 2 * tol);
  }

  bool operator()(const LimitCertificate& c) const {
    const auto& entries = c.sequence.entries;
    auto it = std::find_if(entries.begin(), entries.end(), [&](const LimitEntry& e) { return e.m == c.best_m; });
    if (it == entries.end()) return false;
    if (it->witness.size() != it->ind || !distinguishable_paths(g, it->witness, it->m)) return false;
    if (c.sequence.primitive) {
      const std::size_t gamma = lifted_gamma(primitivity_index(g.t()), g.size(), it->m);
      if (!it->gamma || *it->gamma != gamma) return false;
      return near(b.value, log_count(it->ind) / static_cast<double>(gamma), tol);
    }
    return near(b.value, log_count(it->ind) / static_cast<double>(it->m), tol);
  }

  bool operator()(const OracleCertificate& c) const {
    auto it = std::find_if(c.counts.begin(), c.counts.end(), [&](const SeparatedCount& s) { return s.n == c.best_n; });
    if (it == c.counts.end()) return false;
    if (it->witness.size() != it->count || !distinguishable_paths(g, it->witness, it->n)) return false;
    if (c.gamma) {
      if (primitivity_index(g.t()) != *c.gamma) return false;
      return near(b.value,
                  log_count(it->count) / static_cast<double>(lifted_gamma(*c.gamma, g.size(), it->n)), tol);
    }
    return near(b.value, log_count(it->count) / static_cast<double>(it->n), tol);
  }
};

}  // namespace

bool verify_certificate(const TIGraph& g, const Bound& b, double tol) {
  if (b.value < 0) return false;
  try {
    return std::visit(Verifier{g, b, tol}, b.certificate);
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace ovshift
