#include "ovshift/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <deque>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ovshift/errors.hpp"

namespace ovshift {

namespace {

void sort_unique(std::vector<Vertex>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string edge_str(const Edge& e) {
  return "[" + std::to_string(e.first + 1) + "," + std::to_string(e.second + 1) + "]";
}

}  // namespace

Digraph::Digraph(std::size_t n, std::span<const Edge> edges) : succ_(n), pred_(n) {
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n)
      throw ValidationError("T-edge " + edge_str({u, v}) + " has an endpoint outside 1.." +
                            std::to_string(n));
    succ_[u].push_back(v);
    pred_[v].push_back(u);
  }
  for (auto& s : succ_) {
    sort_unique(s);
    edge_count_ += s.size();
  }
  for (auto& p : pred_) sort_unique(p);
}

bool Digraph::has_edge(Vertex u, Vertex v) const {
  return std::binary_search(succ_[u].begin(), succ_[u].end(), v);
}

std::vector<Edge> Digraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < size(); ++u)
    for (Vertex v : succ_[u]) out.emplace_back(u, v);
  return out;
}

BitMatrix Digraph::adjacency() const {
  BitMatrix a(size());
  for (Vertex u = 0; u < size(); ++u)
    for (Vertex v : succ_[u]) a.set(u, v);
  return a;
}

UGraph::UGraph(std::size_t n, std::span<const Edge> edges) : adj_(n) {
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n)
      throw ValidationError("I-edge " + edge_str({u, v}) + " has an endpoint outside 1.." +
                            std::to_string(n));
    if (u == v) throw ValidationError("I-edge " + edge_str({u, v}) + " is a self-loop");
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& a : adj_) {
    sort_unique(a);
    edge_count_ += a.size();
  }
  edge_count_ /= 2;
}

UGraph UGraph::from_adjacency(std::vector<std::vector<Vertex>> adj) {
  UGraph g;
  const std::size_t n = adj.size();
  std::size_t total = 0;
  for (Vertex u = 0; u < n; ++u) {
    if (!std::is_sorted(adj[u].begin(), adj[u].end()) ||
        std::adjacent_find(adj[u].begin(), adj[u].end()) != adj[u].end())
      throw std::invalid_argument("adjacency lists must be sorted and duplicate-free");
    for (Vertex v : adj[u]) {
      if (v >= n || v == u) throw std::invalid_argument("bad adjacency entry");
    }
    total += adj[u].size();
  }
  g.adj_ = std::move(adj);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : g.adj_[u])
      if (!g.has_edge(v, u)) throw std::invalid_argument("adjacency lists are not symmetric");
  g.edge_count_ = total / 2;
  return g;
}

bool UGraph::has_edge(Vertex u, Vertex v) const {
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<Edge> UGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < size(); ++u)
    for (Vertex v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

TIGraph::TIGraph(Digraph t, UGraph i) : t_(std::move(t)), i_(std::move(i)) {
  if (t_.size() != i_.size())
    throw ValidationError("T has " + std::to_string(t_.size()) + " vertices but I has " +
                          std::to_string(i_.size()));
}

std::vector<Vertex> Reindexed::removed() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < old_to_new.size(); ++v)
    if (!old_to_new[v]) out.push_back(v);
  return out;
}

bool is_pruned(const Digraph& t) {
  for (Vertex v = 0; v < t.size(); ++v)
    if (t.out_degree(v) == 0 || t.in_degree(v) == 0) return false;
  return true;
}

Digraph induced_digraph(const Digraph& t, std::span<const Vertex> vertices) {
  std::vector<std::optional<Vertex>> map(t.size());
  for (Vertex k = 0; k < vertices.size(); ++k) map[vertices[k]] = k;
  std::vector<Edge> edges;
  for (Vertex k = 0; k < vertices.size(); ++k)
    for (Vertex w : t.successors(vertices[k]))
      if (map[w]) edges.emplace_back(k, *map[w]);
  return Digraph(vertices.size(), edges);
}

UGraph induced_ugraph(const UGraph& i, std::span<const Vertex> vertices) {
  std::vector<std::optional<Vertex>> map(i.size());
  for (Vertex k = 0; k < vertices.size(); ++k) map[vertices[k]] = k;
  std::vector<Edge> edges;
  for (Vertex k = 0; k < vertices.size(); ++k)
    for (Vertex w : i.neighbors(vertices[k]))
      if (map[w] && k < *map[w]) edges.emplace_back(k, *map[w]);
  return UGraph(vertices.size(), edges);
}

Reindexed induced_subgraph(const TIGraph& g, std::span<const Vertex> vertices) {
  if (vertices.empty()) throw std::invalid_argument("induced_subgraph: empty vertex set");
  std::vector<Vertex> kept(vertices.begin(), vertices.end());
  sort_unique(kept);
  if (kept.back() >= g.size()) throw std::invalid_argument("induced_subgraph: vertex out of range");
  Reindexed r;
  r.old_to_new.assign(g.size(), std::nullopt);
  for (Vertex k = 0; k < kept.size(); ++k) r.old_to_new[kept[k]] = k;
  r.graph = TIGraph(induced_digraph(g.t(), kept), induced_ugraph(g.i(), kept));
  r.kept = std::move(kept);
  return r;
}

Reindexed prune_stranded(const TIGraph& g) {
  const std::size_t n = g.size();
  const Digraph& t = g.t();
  std::vector<std::size_t> outdeg(n), indeg(n);
  std::vector<char> alive(n, 1);
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    outdeg[v] = t.out_degree(v);
    indeg[v] = t.in_degree(v);
    if (outdeg[v] == 0 || indeg[v] == 0) {
      alive[v] = 0;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : t.successors(v)) {
      if (alive[w] && --indeg[w] == 0) {
        alive[w] = 0;
        queue.push_back(w);
      }
    }
    for (Vertex u : t.predecessors(v)) {
      if (alive[u] && --outdeg[u] == 0) {
        alive[u] = 0;
        queue.push_back(u);
      }
    }
  }
  std::vector<Vertex> kept;
  for (Vertex v = 0; v < n; ++v)
    if (alive[v]) kept.push_back(v);
  if (kept.empty()) throw EmptyGraph();
  return induced_subgraph(g, kept);
}

// ---------------------------------------------------------------------------
// Parsing and serialization

namespace {

using nlohmann::json;

std::vector<Edge> json_edges(const json& doc, const char* field, std::size_t n) {
  auto it = doc.find(field);
  if (it == doc.end()) return {};
  if (!it->is_array()) throw ParseError(std::string("/") + field, "expected an array of pairs");
  std::vector<Edge> out;
  for (std::size_t k = 0; k < it->size(); ++k) {
    const json& e = (*it)[k];
    const std::string where = std::string("/") + field + "/" + std::to_string(k);
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw ParseError(where, "expected [i, j] with integer endpoints");
    const auto a = e[0].get<std::int64_t>(), b = e[1].get<std::int64_t>();
    if (a < 1 || b < 1 || static_cast<std::uint64_t>(a) > n || static_cast<std::uint64_t>(b) > n)
      throw ValidationError(where + ": endpoint outside 1.." + std::to_string(n));
    out.emplace_back(static_cast<Vertex>(a - 1), static_cast<Vertex>(b - 1));
  }
  return out;
}

void check_vertex_count(std::int64_t n, std::size_t max_vertices, const std::string& where) {
  if (n < 1) throw ValidationError(where + ": n must be at least 1");
  if (static_cast<std::uint64_t>(n) > max_vertices)
    throw ValidationError(where + ": n=" + std::to_string(n) + " exceeds the vertex limit " +
                          std::to_string(max_vertices));
}

TIGraph build(std::size_t n, const std::vector<Edge>& t, const std::vector<Edge>& i,
              const std::string& i_where) {
  for (std::size_t k = 0; k < i.size(); ++k)
    if (i[k].first == i[k].second)
      throw ValidationError(i_where + std::to_string(k) + ": I-edge " + edge_str(i[k]) +
                            " is a self-loop (I must be simple)");
  return TIGraph(Digraph(n, t), UGraph(n, i));
}

TIGraph parse_json_graph(std::string_view input, std::size_t max_vertices) {
  json doc;
  try {
    doc = json::parse(input.begin(), input.end());
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), e.what());
  }
  if (!doc.is_object()) throw ParseError("/", "expected a JSON object");
  auto n_it = doc.find("n");
  if (n_it == doc.end() || !n_it->is_number_integer())
    throw ParseError("/n", "missing or non-integer vertex count");
  const auto n = n_it->get<std::int64_t>();
  check_vertex_count(n, max_vertices, "/n");
  const auto un = static_cast<std::size_t>(n);
  return build(un, json_edges(doc, "t_edges", un), json_edges(doc, "i_edges", un), "/i_edges/");
}

std::int64_t parse_int(std::string_view s, const std::string& where) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw ParseError(where, "bad integer '" + std::string(s) + "'");
  return v;
}

TIGraph parse_text_graph(std::string_view input, std::size_t max_vertices) {
  std::istringstream in{std::string(input)};
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> n;
  std::vector<Edge> t, i;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = "line " + std::to_string(lineno);
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (!n) {
      if (head.rfind("n=", 0) != 0) throw ParseError(where, "expected 'n=<int>' header");
      std::string rest;
      if (ls >> rest) throw ParseError(where, "trailing tokens after header");
      const auto v = parse_int(std::string_view(head).substr(2), where);
      check_vertex_count(v, max_vertices, where);
      n = static_cast<std::size_t>(v);
      continue;
    }
    if (head != "T" && head != "I") throw ParseError(where, "expected 'T i j' or 'I i j'");
    std::string a, b, extra;
    if (!(ls >> a >> b)) throw ParseError(where, "edge needs two endpoints");
    if (ls >> extra) throw ParseError(where, "trailing tokens after edge");
    const auto u = parse_int(a, where), v = parse_int(b, where);
    if (u < 1 || v < 1 || static_cast<std::size_t>(u) > *n || static_cast<std::size_t>(v) > *n)
      throw ValidationError(where + ": endpoint outside 1.." + std::to_string(*n));
    Edge e{static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1)};
    if (head == "T") {
      t.push_back(e);
    } else {
      if (e.first == e.second)
        throw ValidationError(where + ": I-edge " + edge_str(e) + " is a self-loop (I must be simple)");
      i.push_back(e);
    }
  }
  if (!n) throw ParseError("line 1", "missing 'n=<int>' header");
  return build(*n, t, i, "");
}

}  // namespace

TIGraph parse_tigraph(std::string_view input, GraphFormat format, std::size_t max_vertices) {
  return format == GraphFormat::json ? parse_json_graph(input, max_vertices)
                                     : parse_text_graph(input, max_vertices);
}

GraphFormat format_for_path(std::string_view path) {
  constexpr std::string_view ext = ".json";
  if (path.size() >= ext.size() && path.substr(path.size() - ext.size()) == ext) return GraphFormat::json;
  return GraphFormat::text;
}

std::string to_json(const TIGraph& g) {
  // Written by hand so the layout (one edge list per line) stays compact and
  // stable; the result is plain JSON that nlohmann parses back.
  std::string out = "{\"n\":" + std::to_string(g.size()) + ",\"t_edges\":[";
  bool first = true;
  for (const auto& [u, v] : g.t().edges()) {
    if (!first) out += ',';
    first = false;
    out += "[" + std::to_string(u + 1) + "," + std::to_string(v + 1) + "]";
  }
  out += "],\"i_edges\":[";
  first = true;
  for (const auto& [u, v] : g.i().edges()) {
    if (!first) out += ',';
    first = false;
    out += "[" + std::to_string(u + 1) + "," + std::to_string(v + 1) + "]";
  }
  out += "]}";
  return out;
}

std::string to_text(const TIGraph& g) {
  std::string out = "n=" + std::to_string(g.size()) + "\n";
  for (const auto& [u, v] : g.t().edges())
    out += "T " + std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
  for (const auto& [u, v] : g.i().edges())
    out += "I " + std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
  return out;
}

std::string digest(const TIGraph& g) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : to_json(g)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string export_dot(const TIGraph& g, std::span<const std::string> labels) {
  std::string out = "digraph TI {\n  node [shape=circle];\n";
  for (Vertex v = 0; v < g.size(); ++v) {
    out += "  " + std::to_string(v + 1);
    if (!labels.empty()) out += " [label=\"" + dot_escape(labels[v]) + "\"]";
    out += ";\n";
  }
  for (const auto& [u, v] : g.t().edges())
    out += "  " + std::to_string(u + 1) + " -> " + std::to_string(v + 1) + ";\n";
  for (const auto& [u, v] : g.i().edges())
    out += "  " + std::to_string(u + 1) + " -> " + std::to_string(v + 1) +
           " [style=dashed, dir=none, constraint=false];\n";
  out += "}\n";
  return out;
}

}  // namespace ovshift
