#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ovshift/bounds.hpp"
#include "ovshift/errors.hpp"
#include "ovshift/graph.hpp"
#include "ovshift/higher_shift.hpp"
#include "ovshift/ingest.hpp"
#include "ovshift/report.hpp"
#include "ovshift/structure.hpp"

namespace {

using namespace ovshift;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitCap = 3;

struct Options {
  AnalysisConfig cfg;
  std::string format = "text";
  std::string path;
  std::size_t n = 1;
  std::size_t m = 1;
  bool stats = false;
  bool dot = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TIGraph load(const std::string& path) {
  return parse_tigraph(read_file(path), format_for_path(path));
}

bool json_out(const Options& o) { return o.format == "json"; }

int cmd_report(const Options& o) {
  const BoundReport rep = analyze(load(o.path), o.cfg);
  if (json_out(o))
    std::cout << to_json(rep).dump(2) << "\n";
  else
    std::cout << render_text(rep);
  if (rep.cap_hit) {
    std::cerr << "ovshift: a resource cap was reached; the report is partial\n";
    return kExitCap;
  }
  return kExitOk;
}

int cmd_oracle(const Options& o) {
  const auto pruned = prune_stranded(load(o.path));
  const auto sc = oracle_separated_count(pruned.graph, o.n, o.cfg.size_cap, o.cfg.mis_budget);
  if (json_out(o))
    std::cout << to_json(sc, pruned.kept).dump(2) << "\n";
  else
    std::cout << render_text(sc, pruned.kept);
  return kExitOk;
}

std::size_t largest_feasible_m(const Digraph& t, std::size_t cap, std::size_t below) {
  std::size_t m = 0;
  while (m + 1 < below && count_paths(t, m + 1, cap) <= cap) ++m;
  return m;
}

int cmd_higher(const Options& o) {
  const auto pruned = prune_stranded(load(o.path));
  const TIGraph& g = pruned.graph;
  HigherGraph h;
  try {
    h = higher_graph(g, o.m, o.cfg.size_cap);
  } catch (const SizeCapExceeded& e) {
    std::cerr << "ovshift: " << e.what() << "; largest feasible m is "
              << largest_feasible_m(g.t(), o.cfg.size_cap, o.m) << "\n";
    return kExitCap;
  }
  std::vector<std::string> labels;
  for (const auto& w : h.vertex_words) {
    Word mapped = w;
    for (auto& v : mapped) v = pruned.kept[v];
    labels.push_back(word_label(mapped));
  }
  if (o.dot) {
    std::cout << export_dot(h.lifted, labels);
    return kExitOk;
  }
  if (!o.stats) {
    if (json_out(o)) {
      ordered_json j;
      j["m"] = o.m;
      j["graph"] = ordered_json::parse(to_json(h.lifted));
      j["words"] = labels;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << to_text(h.lifted);
    }
    return kExitOk;
  }
  const auto mis = max_independent_set(h.lifted.i(), o.cfg.mis_budget);
  std::optional<std::size_t> gamma;
  if (is_primitive(g.t())) {
    gamma = g.size() == 1 ? 1 : primitivity_index(g.t()) - 1 + o.m;
  }
  if (json_out(o)) {
    ordered_json j;
    j["m"] = o.m;
    j["vertices"] = h.lifted.size();
    j["t_edges"] = h.lifted.t().edge_count();
    j["i_edges"] = h.lifted.i().edge_count();
    j["ind"] = mis.size;
    j["ind_exact"] = mis.exact;
    j["gamma"] = gamma ? ordered_json(*gamma) : ordered_json(nullptr);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "m          " << o.m << "\n"
              << "vertices   " << h.lifted.size() << "\n"
              << "t_edges    " << h.lifted.t().edge_count() << "\n"
              << "i_edges    " << h.lifted.i().edge_count() << "\n"
              << "ind        " << mis.size << (mis.exact ? "" : " (lower bound)") << "\n"
              << "gamma      " << (gamma ? std::to_string(*gamma) : "none (T not primitive)") << "\n";
  }
  return kExitOk;
}

int cmd_ingest(const Options& o) {
  const auto spec = parse_circle_spec(read_file(o.path));
  const TIGraph g = ti_from_circle(spec.map, spec.cover, spec.margin);
  if (json_out(o))
    std::cout << to_json(g) << "\n";
  else
    std::cout << to_text(g);
  return kExitOk;
}

int cmd_export_dot(const Options& o) {
  std::cout << export_dot(load(o.path));
  return kExitOk;
}

void add_config(CLI::App& app, Options& o) {
  app.add_option("--m-max", o.cfg.m_max, "Largest higher-shift level")->check(CLI::PositiveNumber);
  app.add_option("--tol", o.cfg.tol, "Spectral tolerance")->check(CLI::PositiveNumber);
  app.add_option("--mis-budget", o.cfg.mis_budget, "Branch-and-bound node budget")->check(CLI::PositiveNumber);
  app.add_option("--size-cap", o.cfg.size_cap, "Vertex cap for higher graphs and oracle words")
      ->check(CLI::PositiveNumber);
  app.add_option("--state-cap", o.cfg.state_cap, "State cap for the subset construction")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", o.cfg.seed, "Search order seed (0 keeps natural order)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy bounds for shift spaces with overlapping alphabets"};
  app.require_subcommand(1);
  Options o;

  auto* report = app.add_subcommand("report", "Prune, run every bound, print the report");
  report->add_option("path", o.path, "TI-graph (.json or text)")->required();
  add_config(*report, o);

  auto* oracle = app.add_subcommand("oracle", "Brute-force maximum n-separated set");
  oracle->add_option("path", o.path, "TI-graph (.json or text)")->required();
  oracle->add_option("-n", o.n, "Word length")->check(CLI::PositiveNumber);
  add_config(*oracle, o);

  auto* higher = app.add_subcommand("higher", "Higher vertex graph T_[m] with I_[m]");
  higher->add_option("path", o.path, "TI-graph (.json or text)")->required();
  higher->add_option("-m", o.m, "Word length")->check(CLI::PositiveNumber);
  higher->add_flag("--stats", o.stats, "Print sizes, ind and gamma instead of the graph");
  higher->add_flag("--dot", o.dot, "Print Graphviz DOT");
  add_config(*higher, o);

  auto* ingest = app.add_subcommand("ingest", "TI-graph from a circle map and interval cover");
  ingest->add_option("path", o.path, "Map and cover JSON")->required();
  add_config(*ingest, o);

  auto* dot = app.add_subcommand("export-dot", "Graphviz DOT of the input graph");
  dot->add_option("path", o.path, "TI-graph (.json or text)")->required();
  add_config(*dot, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*report) return cmd_report(o);
    if (*oracle) return cmd_oracle(o);
    if (*higher) return cmd_higher(o);
    if (*ingest) {
      if (ingest->count("--format") == 0) o.format = "json";
      return cmd_ingest(o);
    }
    if (*dot) return cmd_export_dot(o);
  } catch (const CapExceeded& e) {
    std::cerr << "ovshift: " << e.what() << "\n";
    return kExitCap;
  } catch (const DegenerateCover& e) {
    std::cerr << "ovshift: DegenerateCover: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const Error& e) {
    std::cerr << "ovshift: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ovshift: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}
