#include "ovshift/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ovshift/errors.hpp"
#include "ovshift/structure.hpp"

namespace ovshift {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::uint64_t>> rows)
    : IntMatrix(rows.size()) {
  std::size_t i = 0;
  for (const auto& r : rows) {
    if (r.size() != n_) throw std::invalid_argument("IntMatrix: rows must form a square matrix");
    std::size_t j = 0;
    for (auto x : r) (*this)(i, j++) = x;
    ++i;
  }
}

IntMatrix IntMatrix::from_digraph(const Digraph& t) {
  IntMatrix a(t.size());
  for (const auto& [u, v] : t.edges()) a(u, v) = 1;
  return a;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (o.n_ != n_) throw std::invalid_argument("IntMatrix: size mismatch");
  IntMatrix c(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) {
      const std::uint64_t a = (*this)(i, k);
      if (!a) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        std::uint64_t prod = 0;
        if (__builtin_mul_overflow(a, o(k, j), &prod) ||
            __builtin_add_overflow(c(i, j), prod, &c(i, j)))
          throw std::overflow_error("IntMatrix: entry overflow");
      }
    }
  return c;
}

IntMatrix IntMatrix::power(unsigned k) const {
  IntMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i) r(i, i) = 1;
  for (unsigned s = 0; s < k; ++s) r = r * *this;
  return r;
}

std::uint64_t IntMatrix::sum() const {
  std::uint64_t s = 0;
  for (auto x : data_)
    if (__builtin_add_overflow(s, x, &s)) throw std::overflow_error("IntMatrix: sum overflow");
  return s;
}

namespace {

struct WeightedEntry {
  Vertex col;
  long double weight;
};

struct BlockResult {
  long double lower = 0;
  long double upper = 0;
  std::size_t iterations = 0;
  std::vector<long double> iterate;
};

// rows[i] lists (column, weight) restricted to the block, in local indices.
BlockResult iterate_block(const std::vector<std::vector<WeightedEntry>>& rows, double tol,
                          std::size_t cap) {
  const std::size_t n = rows.size();
  std::vector<long double> v(n, 1.0L), w(n);
  BlockResult r;
  for (std::size_t it = 1; it <= cap; ++it) {
    long double lo = std::numeric_limits<long double>::infinity();
    long double hi = 0, top = 0;
    for (std::size_t i = 0; i < n; ++i) {
      long double s = v[i];  // the +Id shift
      for (const auto& e : rows[i]) s += e.weight * v[e.col];
      w[i] = s;
      const long double ratio = s / v[i];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      top = std::max(top, s);
    }
    r.iterations = it;
    if (hi - lo <= 2.0L * tol) {
      r.lower = lo - 1;
      r.upper = hi - 1;
      r.iterate = v;
      return r;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / top;
  }
  throw NoConvergence("power iteration on a block of size " + std::to_string(n) +
                      " did not certify within " + std::to_string(cap) + " iterations");
}

SpectralResult perron_impl(const Digraph& pattern,
                           const std::vector<std::vector<WeightedEntry>>& rows,
                           SpectralOptions opts) {
  if (!(opts.tol > 0)) throw std::invalid_argument("perron_eigenvalue: tol must be positive");
  const std::size_t n = pattern.size();
  const std::size_t cap = opts.max_iterations ? opts.max_iterations : 100 * n * n + 1000;

  SpectralResult out;
  long double best_lower = 0, best_upper = 0;
  bool have_block = false;
  std::vector<Vertex> local(n);
  for (const auto& scc : scc_decompose(pattern)) {
    for (Vertex k = 0; k < scc.size(); ++k) local[scc[k]] = k;
    std::vector<char> in_block(n, 0);
    for (Vertex v : scc) in_block[v] = 1;
    std::vector<std::vector<WeightedEntry>> block(scc.size());
    bool nonzero = false;
    for (Vertex k = 0; k < scc.size(); ++k)
      for (const auto& e : rows[scc[k]])
        if (in_block[e.col]) {
          block[k].push_back({local[e.col], e.weight});
          nonzero = true;
        }
    BlockResult br;
    if (nonzero) {
      br = iterate_block(block, opts.tol, cap);
    } else {
      br.iterate.assign(scc.size(), 1.0L);
    }
    out.iterations = std::max(out.iterations, br.iterations);
    if (!have_block || br.upper > best_upper) {
      out.certificate = {scc, br.iterate, br.lower, br.upper};
    }
    best_lower = have_block ? std::max(best_lower, br.lower) : br.lower;
    best_upper = have_block ? std::max(best_upper, br.upper) : br.upper;
    have_block = true;
  }
  best_lower = std::max(best_lower, 0.0L);
  out.lambda = static_cast<double>((best_lower + best_upper) / 2);
  out.error_bound = static_cast<double>((best_upper - best_lower) / 2);
  return out;
}

}  // namespace

SpectralResult perron_eigenvalue(const IntMatrix& a, SpectralOptions opts) {
  std::vector<Edge> edges;
  std::vector<std::vector<WeightedEntry>> rows(a.size());
  for (Vertex i = 0; i < a.size(); ++i)
    for (Vertex j = 0; j < a.size(); ++j)
      if (a(i, j)) {
        edges.emplace_back(i, j);
        rows[i].push_back({j, static_cast<long double>(a(i, j))});
      }
  return perron_impl(Digraph(a.size(), edges), rows, opts);
}

SpectralResult perron_eigenvalue(const Digraph& t, SpectralOptions opts) {
  std::vector<std::vector<WeightedEntry>> rows(t.size());
  for (Vertex i = 0; i < t.size(); ++i)
    for (Vertex j : t.successors(i)) rows[i].push_back({j, 1.0L});
  return perron_impl(t, rows, opts);
}

double sft_entropy(const Digraph& t, double tol) {
  const auto r = perron_eigenvalue(t, {.tol = tol});
  // Zero only for a graph with no cycle; pruned graphs always have lambda >= 1.
  return r.lambda > 0 ? std::log(r.lambda) : -std::numeric_limits<double>::infinity();
}

}  // namespace ovshift
