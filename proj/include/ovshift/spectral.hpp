#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ovshift/graph.hpp"

namespace ovshift {

inline constexpr double kDefaultTolerance = 1e-10;

/// Dense square matrix of nonnegative integers, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), data_(n * n, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::uint64_t>> rows);
  static IntMatrix from_digraph(const Digraph& t);

  std::size_t size() const { return n_; }
  std::uint64_t operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::uint64_t& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }

  /// Integer product; throws std::overflow_error if an entry overflows.
  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix power(unsigned k) const;
  std::uint64_t sum() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> data_;
};

/// Collatz–Wielandt witness for the block that attains the maximum: the final
/// positive iterate `vector` on `block` (original indices), with the
/// certified interval min_i (Av)_i/v_i <= lambda <= max_i (Av)_i/v_i.
struct CollatzCertificate {
  std::vector<Vertex> block;
  std::vector<long double> vector;
  long double lower = 0;
  long double upper = 0;
};

struct SpectralResult {
  double lambda = 0;
  double error_bound = 0;
  std::size_t iterations = 0;
  CollatzCertificate certificate;
};

struct SpectralOptions {
  double tol = kDefaultTolerance;
  /// 0 selects 100 n^2 + 1000.
  std::size_t max_iterations = 0;
};

/// Perron eigenvalue of a nonnegative matrix, by power iteration on A' + Id
/// for each irreducible diagonal block A'. Throws NoConvergence if a block's
/// certified interval stays wider than 2 tol within the iteration cap.
SpectralResult perron_eigenvalue(const IntMatrix& a, SpectralOptions opts = {});
SpectralResult perron_eigenvalue(const Digraph& t, SpectralOptions opts = {});

/// Natural-log entropy of the vertex shift on `t`.
double sft_entropy(const Digraph& t, double tol = kDefaultTolerance);

}  // namespace ovshift
