#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ovshift/graph.hpp"
#include "ovshift/higher_shift.hpp"
#include "ovshift/independence.hpp"
#include "ovshift/sofic.hpp"
#include "ovshift/spectral.hpp"

namespace ovshift {

/// Fixed report order; also the tie-break order for the best bound.
enum class Method {
  independent_subshift,
  complete_digraph,
  primitive,
  component,
  sofic,
  higher_limit,
  oracle_exact,
};

std::string_view method_name(Method m);

struct AnalysisConfig {
  std::size_t m_max = 6;
  double tol = kDefaultTolerance;
  std::uint64_t mis_budget = kDefaultMisBudget;
  std::size_t size_cap = kDefaultSizeCap;
  std::size_t state_cap = kDefaultStateCap;
  /// Longest word length the brute-force oracle is run for inside reports.
  std::size_t oracle_max_n = 4;
  /// The oracle stops once a length has more words than this.
  std::size_t oracle_word_cap = 4096;
  /// Maximal independent sets examined by the independent-subshift search.
  std::size_t independent_set_limit = 4096;
  /// 0 keeps the natural vertex order in the independent-subshift local
  /// search; any other value permutes it deterministically.
  std::uint64_t seed = 0;
};

// ---------------------------------------------------------------------------
// Certificates. Vertex indices are 0-based like the rest of the library.

struct IndependentSetCertificate {
  std::vector<Vertex> vertices;   // the independent set V
  std::vector<Vertex> recurrent;  // vertices of V surviving pruning of T|V
  double lambda = 0;              // Perron eigenvalue of pruned T|V (0 if empty)
  bool mis_exact = false;
  std::size_t sets_examined = 0;
};

struct CompleteDigraphCertificate {
  std::vector<Vertex> independent_set;
  bool mis_exact = false;
};

struct PrimitiveCertificate {
  std::vector<Vertex> independent_set;
  std::size_t gamma = 0;
  bool mis_exact = false;
};

struct ComponentCertificate {
  std::size_t component = 0;  // index into scc_decompose order
  std::size_t cyclic_class = 0;
  std::vector<Vertex> class_vertices;
  std::size_t period = 0;
  std::size_t gamma = 0;
  std::vector<Vertex> independent_set;
  bool mis_exact = false;
  /// Some cyclic class has two vertices without an I-edge between them.
  bool positive = false;
};

struct SoficCertificate {
  std::size_t labels = 0;
  std::size_t states = 0;
  std::size_t essential_states = 0;
  std::size_t pruned_states = 0;
  double lambda = 0;
  double error_bound = 0;
  bool cliques = false;
};

struct LimitEntry {
  std::size_t m = 0;
  std::size_t vertices = 0;  // |V(T_[m])|
  std::size_t ind = 0;       // ind(I_[m]) (a lower bound when !ind_exact)
  bool ind_exact = false;
  std::optional<std::size_t> gamma;  // gamma(T_[m]) when T is primitive
  bool gamma_checked = false;        // gamma confirmed by boolean powers
  std::optional<double> by_gamma;    // log(ind) / gamma
  double by_m = 0;                   // log(ind) / m
  std::vector<Word> witness;         // base words of the independent set
};

struct LimitSequence {
  std::vector<LimitEntry> entries;
  bool primitive = false;
  bool truncated = false;
  std::string truncation;
};

struct LimitCertificate {
  LimitSequence sequence;
  std::size_t best_m = 0;
};

/// A maximum n-separated set found by brute force.
struct SeparatedCount {
  std::size_t n = 0;
  std::size_t count = 0;
  std::size_t words = 0;  // |B_n|
  std::vector<Word> witness;
  bool exact = false;
};

struct OracleCertificate {
  std::vector<SeparatedCount> counts;
  std::optional<std::size_t> gamma;  // gamma(T) when primitive
  std::size_t best_n = 0;
  bool truncated = false;
};

using Certificate =
    std::variant<std::monostate, IndependentSetCertificate, CompleteDigraphCertificate,
                 PrimitiveCertificate, ComponentCertificate, SoficCertificate, LimitCertificate,
                 OracleCertificate>;

struct Bound {
  Method method = Method::independent_subshift;
  double value = 0;
  /// A proven lower bound for the overlap entropy (false: estimate only).
  bool certified = true;
  /// The value equals the overlap entropy, not just bounds it.
  bool exact = false;
  bool applicable = true;
  Certificate certificate;
  std::string note;
};

struct BoundReport {
  std::string graph_digest;
  std::size_t vertices = 0;
  std::vector<Vertex> removed;  // stranded vertices of the input (input indices)
  /// kept[k] is the input index of analyzed vertex k; empty means identity.
  std::vector<Vertex> kept;
  double classical_entropy = 0;
  std::vector<Bound> bounds;
  std::optional<std::size_t> best;
  AnalysisConfig config;
  /// A size or state cap cut some computation short.
  bool cap_hit = false;
};

// ---------------------------------------------------------------------------
// Bound operations. Every graph argument must already be pruned.

Bound independent_subshift_bound(const TIGraph& g, const AnalysisConfig& cfg = {});
Bound complete_digraph_bound(const TIGraph& g, const AnalysisConfig& cfg = {});
/// Throws NotPrimitive.
Bound primitive_bound(const TIGraph& g, const AnalysisConfig& cfg = {});
Bound component_bound(const TIGraph& g, const AnalysisConfig& cfg = {});
Bound sofic_bound(const TIGraph& g, const AnalysisConfig& cfg = {});

/// ind(I_[m]) and both normalizations for m = 1..m_max. A size cap ends the
/// sequence early with `truncated` set.
LimitSequence limit_sequence(const TIGraph& g, const AnalysisConfig& cfg = {});
/// Sup of log(ind)/gamma when T is primitive (certified), else the max of
/// log(ind)/m as an estimate.
Bound higher_limit_bound(const LimitSequence& seq);

/// Brute force: all length-n words, pairwise distinguishability, exact
/// independence number. Throws SizeCapExceeded above `word_cap` words.
SeparatedCount oracle_separated_count(const TIGraph& g, std::size_t n, std::size_t word_cap,
                                      std::uint64_t mis_budget = kDefaultMisBudget);
/// Oracle counts for n = 1..oracle_max_n, checked against `seq` where both exist.
Bound oracle_bound(const TIGraph& g, const LimitSequence& seq, const AnalysisConfig& cfg = {});

/// Runs every method on a pruned graph. Failures are recorded per bound.
BoundReport best_bound(const TIGraph& g, const AnalysisConfig& cfg = {});

/// Prunes `raw`, records the removed vertices, then runs best_bound.
/// Throws EmptyGraph.
BoundReport analyze(const TIGraph& raw, const AnalysisConfig& cfg = {});

/// Recomputes the certificate's claims from scratch against `g`.
bool verify_certificate(const TIGraph& g, const Bound& b, double tol = kDefaultTolerance);

}  // namespace ovshift
