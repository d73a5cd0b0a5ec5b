#include "ovshift/report.hpp"

#include <cmath>
#include <cstdio>
#include <span>

namespace ovshift {

namespace {

ordered_json vertices_json(const std::vector<Vertex>& vs, std::span<const Vertex> kept = {}) {
  ordered_json out = ordered_json::array();
  for (Vertex v : vs) out.push_back((kept.empty() ? v : kept[v]) + 1);
  return out;
}

ordered_json words_json(const std::vector<Word>& ws, std::span<const Vertex> kept) {
  ordered_json out = ordered_json::array();
  for (const auto& w : ws) out.push_back(vertices_json(w, kept));
  return out;
}

template <typename T>
ordered_json optional_json(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

double log2_of(double ln) { return ln / std::log(2.0); }

struct CertificateJson {
  std::span<const Vertex> kept;

  ordered_json operator()(const std::monostate&) const { return nullptr; }

  ordered_json operator()(const IndependentSetCertificate& c) const {
    ordered_json j;
    j["independent_set"] = vertices_json(c.vertices, kept);
    j["recurrent"] = vertices_json(c.recurrent, kept);
    j["lambda"] = c.lambda;
    j["mis_exact"] = c.mis_exact;
    j["sets_examined"] = c.sets_examined;
    return j;
  }

  ordered_json operator()(const CompleteDigraphCertificate& c) const {
    ordered_json j;
    j["independent_set"] = vertices_json(c.independent_set, kept);
    j["mis_exact"] = c.mis_exact;
    return j;
  }

  ordered_json operator()(const PrimitiveCertificate& c) const {
    ordered_json j;
    j["independent_set"] = vertices_json(c.independent_set, kept);
    j["gamma"] = c.gamma;
    j["mis_exact"] = c.mis_exact;
    return j;
  }

  ordered_json operator()(const ComponentCertificate& c) const {
    ordered_json j;
    j["component"] = c.component + 1;
    j["cyclic_class"] = c.cyclic_class + 1;
    j["class_vertices"] = vertices_json(c.class_vertices, kept);
    j["period"] = c.period;
    j["gamma"] = c.gamma;
    j["independent_set"] = vertices_json(c.independent_set, kept);
    j["mis_exact"] = c.mis_exact;
    j["positive"] = c.positive;
    return j;
  }

  ordered_json operator()(const SoficCertificate& c) const {
    ordered_json j;
    j["labels"] = c.labels;
    j["states"] = c.states;
    j["essential_states"] = c.essential_states;
    j["pruned_states"] = c.pruned_states;
    j["lambda"] = c.lambda;
    j["error_bound"] = c.error_bound;
    j["cliques"] = c.cliques;
    return j;
  }

  ordered_json operator()(const LimitCertificate& c) const {
    ordered_json j;
    j["primitive"] = c.sequence.primitive;
    j["best_m"] = c.best_m;
    j["truncated"] = c.sequence.truncated;
    ordered_json seq = ordered_json::array();
    for (const auto& e : c.sequence.entries) {
      ordered_json row;
      row["m"] = e.m;
      row["vertices"] = e.vertices;
      row["ind"] = e.ind;
      row["ind_exact"] = e.ind_exact;
      row["gamma"] = optional_json(e.gamma);
      row["gamma_checked"] = e.gamma_checked;
      row["by_gamma"] = optional_json(e.by_gamma);
      row["by_m"] = e.by_m;
      if (e.m == c.best_m) row["witness"] = words_json(e.witness, kept);
      seq.push_back(std::move(row));
    }
    j["sequence"] = std::move(seq);
    return j;
  }

  ordered_json operator()(const OracleCertificate& c) const {
    ordered_json j;
    j["gamma"] = optional_json(c.gamma);
    j["best_n"] = c.best_n;
    j["truncated"] = c.truncated;
    ordered_json counts = ordered_json::array();
    for (const auto& s : c.counts) {
      ordered_json row;
      row["n"] = s.n;
      row["count"] = s.count;
      row["words"] = s.words;
      row["exact"] = s.exact;
      counts.push_back(std::move(row));
    }
    j["counts"] = std::move(counts);
    return j;
  }
};

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string flags(const Bound& b) {
  if (!b.applicable) return "N/A";
  std::string f = b.certified ? "CERTIFIED" : "ESTIMATE";
  if (b.exact) f += " EXACT";
  return f;
}

std::string vertex_list(const std::vector<Vertex>& vs) {
  if (vs.empty()) return "none";
  std::string s;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    if (k) s += ", ";
    s += std::to_string(vs[k] + 1);
  }
  return s;
}

}  // namespace

ordered_json to_json(const Certificate& c, std::span<const Vertex> kept) {
  return std::visit(CertificateJson{kept}, c);
}

ordered_json to_json(const Bound& b, std::span<const Vertex> kept) {
  ordered_json j;
  j["method"] = std::string(method_name(b.method));
  j["value"] = b.value;
  j["certified"] = b.certified;
  j["exact"] = b.exact;
  j["certificate"] = to_json(b.certificate, kept);
  j["value_log2"] = log2_of(b.value);
  j["applicable"] = b.applicable;
  j["note"] = b.note;
  return j;
}

ordered_json to_json(const AnalysisConfig& c) {
  ordered_json j;
  j["m_max"] = c.m_max;
  j["tol"] = c.tol;
  j["mis_budget"] = c.mis_budget;
  j["size_cap"] = c.size_cap;
  j["state_cap"] = c.state_cap;
  j["oracle_max_n"] = c.oracle_max_n;
  j["oracle_word_cap"] = c.oracle_word_cap;
  j["independent_set_limit"] = c.independent_set_limit;
  j["seed"] = c.seed;
  return j;
}

ordered_json to_json(const BoundReport& r) {
  ordered_json j;
  j["graph_digest"] = r.graph_digest;
  j["vertices"] = r.vertices;
  j["removed_vertices"] = vertices_json(r.removed);
  j["classical_entropy"] = r.classical_entropy;
  ordered_json bounds = ordered_json::array();
  for (const auto& b : r.bounds) bounds.push_back(to_json(b, r.kept));
  j["bounds"] = std::move(bounds);
  if (r.best) {
    ordered_json best;
    best["index"] = *r.best;
    best["method"] = std::string(method_name(r.bounds[*r.best].method));
    best["value"] = r.bounds[*r.best].value;
    best["exact"] = r.bounds[*r.best].exact;
    j["best"] = std::move(best);
  } else {
    j["best"] = nullptr;
  }
  j["config"] = to_json(r.config);
  j["cap_hit"] = r.cap_hit;
  return j;
}

ordered_json to_json(const SeparatedCount& s, std::span<const Vertex> kept) {
  ordered_json j;
  j["n"] = s.n;
  j["count"] = s.count;
  j["words"] = s.words;
  j["exact"] = s.exact;
  j["witness"] = words_json(s.witness, kept);
  return j;
}

std::string render_text(const BoundReport& r) {
  std::string out;
  out += "graph      " + r.graph_digest + " (" + std::to_string(r.vertices) + " vertices after pruning)\n";
  out += "removed    " + vertex_list(r.removed) + "\n";
  out += "h(T)       " + fixed(r.classical_entropy) + " (log2 " + fixed(log2_of(r.classical_entropy)) + ")\n\n";
  out += pad("method", 22) + pad("ln", 12) + pad("log2", 12) + "flags\n";
  for (const auto& b : r.bounds) {
    out += pad(std::string(method_name(b.method)), 22) + pad(fixed(b.value), 12) +
           pad(fixed(log2_of(b.value)), 12) + flags(b) + "\n";
  }
  bool notes = false;
  for (const auto& b : r.bounds) {
    if (b.note.empty()) continue;
    if (!notes) out += "\nnotes\n";
    notes = true;
    out += "  " + std::string(method_name(b.method)) + ": " + b.note + "\n";
  }
  out += "\n";
  if (r.best) {
    const Bound& b = r.bounds[*r.best];
    out += "best       " + std::string(method_name(b.method)) + " " + fixed(b.value) + " (log2 " +
           fixed(log2_of(b.value)) + ") " + flags(b) + "\n";
  } else {
    out += "best       none\n";
  }
  if (r.cap_hit) out += "warning    a resource cap was reached; the report is partial\n";
  return out;
}

std::string render_text(const SeparatedCount& s, std::span<const Vertex> kept) {
  std::string out = "n          " + std::to_string(s.n) + "\n";
  out += "words      " + std::to_string(s.words) + "\n";
  out += "separated  " + std::to_string(s.count) + (s.exact ? "" : " (lower bound, MIS budget exhausted)") + "\n";
  out += "witness\n";
  for (const auto& w : s.witness) {
    Word mapped = w;
    if (!kept.empty())
      for (auto& v : mapped) v = kept[v];
    out += "  " + word_label(mapped) + "\n";
  }
  return out;
}

}  // namespace ovshift
