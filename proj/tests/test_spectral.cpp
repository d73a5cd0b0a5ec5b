#include <doctest.h>

#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "ovshift/errors.hpp"
#include "ovshift/spectral.hpp"
#include "support.hpp"

using namespace ovshift;
using testing::make_graph;
using testing::one_based;

namespace {

double eigen_spectral_radius(const IntMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = static_cast<double>(a(i, j));
  const Eigen::VectorXcd ev = m.eigenvalues();
  double r = 0;
  for (Eigen::Index k = 0; k < n; ++k) r = std::max(r, std::abs(ev(k)));
  return r;
}

IntMatrix random_matrix(testing::Gen& gen, std::size_t n, double p, std::uint64_t max_entry) {
  IntMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (gen.coin(p)) a(i, j) = gen.range(1, max_entry);
  return a;
}

IntMatrix permuted(const IntMatrix& a, const std::vector<std::size_t>& perm) {
  IntMatrix b(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) b(perm[i], perm[j]) = a(i, j);
  return b;
}

constexpr double kTol = 1e-10;

}  // namespace

TEST_CASE("golden mean matrix") {
  const auto r = perron_eigenvalue(IntMatrix{{1, 1}, {1, 0}});
  CHECK(std::abs(r.lambda - 1.6180339887) < 1e-9);
}

TEST_CASE("all-ones matrices") {
  for (std::size_t k = 1; k <= 7; ++k) {
    IntMatrix a(k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) a(i, j) = 1;
    CHECK(std::abs(perron_eigenvalue(a).lambda - static_cast<double>(k)) < 1e-9);
  }
}

TEST_CASE("plastic number") {
  const Digraph t(3, one_based({{1, 2}, {2, 3}, {3, 1}, {3, 2}}));
  const auto r = perron_eigenvalue(t);
  CHECK(std::abs(r.lambda - 1.3247179572) < 1e-9);
  CHECK(std::abs(std::log(r.lambda) - 0.281) < 5e-4);
}

TEST_CASE("classical entropy examples") {
  CHECK(sft_entropy(Digraph(1, one_based({{1, 1}}))) == doctest::Approx(0.0));
  for (std::size_t k = 1; k <= 5; ++k) {
    std::vector<Edge> es;
    for (Vertex u = 0; u < k; ++u)
      for (Vertex v = 0; v < k; ++v) es.emplace_back(u, v);
    CHECK(std::abs(sft_entropy(Digraph(k, es)) - std::log(static_cast<double>(k))) < 1e-9);
  }
  const Digraph gm(2, one_based({{1, 1}, {1, 2}, {2, 1}}));
  CHECK(std::abs(sft_entropy(gm) - std::log((1 + std::sqrt(5.0)) / 2)) < 1e-9);
  CHECK(std::abs(sft_entropy(gm) - 0.4812) < 5e-5);
}

TEST_CASE("acyclic and empty matrices have radius 0") {
  CHECK(perron_eigenvalue(IntMatrix(3)).lambda == 0);
  CHECK(perron_eigenvalue(Digraph(3, one_based({{1, 2}, {2, 3}}))).lambda == 0);
}

TEST_CASE("power iteration agrees with a dense eigensolver") {
  testing::Gen gen(201);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_matrix(gen, gen.range(1, 7), gen.unit(), gen.range(1, 3));
    const auto r = perron_eigenvalue(a, {kTol, 0});
    CHECK(std::abs(r.lambda - eigen_spectral_radius(a)) < 1e-7);
  }
}

TEST_CASE("the Collatz-Wielandt certificate brackets the eigenvalue") {
  testing::Gen gen(202);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_matrix(gen, gen.range(1, 7), gen.unit(), 2);
    const auto r = perron_eigenvalue(a, {kTol, 0});
    if (r.lambda == 0) continue;
    const auto& c = r.certificate;
    REQUIRE(c.vector.size() == c.block.size());
    long double lo = INFINITY, hi = 0;
    for (std::size_t i = 0; i < c.block.size(); ++i) {
      REQUIRE(c.vector[i] > 0);
      long double av = 0;
      for (std::size_t j = 0; j < c.block.size(); ++j) av += a(c.block[i], c.block[j]) * c.vector[j];
      lo = std::min(lo, av / c.vector[i]);
      hi = std::max(hi, av / c.vector[i]);
    }
    CHECK(lo <= r.lambda + 1e-9);
    CHECK(r.lambda <= hi + 1e-9);
    CHECK(hi - lo <= 2 * kTol + 1e-12);
    CHECK(r.error_bound <= 2 * kTol + 1e-12);
  }
}

TEST_CASE("lambda(A^k) = lambda(A)^k") {
  testing::Gen gen(203);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_matrix(gen, gen.range(1, 6), gen.unit(), 1);
    const double l = perron_eigenvalue(a).lambda;
    for (unsigned k = 2; k <= 3; ++k)
      CHECK(std::abs(perron_eigenvalue(a.power(k)).lambda - std::pow(l, k)) < 1e-7 * std::max(1.0, std::pow(l, k)));
  }
}

TEST_CASE("invariant under simultaneous permutation") {
  testing::Gen gen(204);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = gen.range(1, 7);
    const auto a = random_matrix(gen, n, gen.unit(), 2);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t k = n; k > 1; --k) std::swap(perm[k - 1], perm[gen.index(k)]);
    CHECK(std::abs(perron_eigenvalue(a).lambda - perron_eigenvalue(permuted(a, perm)).lambda) < 1e-8);
  }
}

TEST_CASE("monotone in the entries") {
  testing::Gen gen(205);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = gen.range(1, 7);
    const auto a = random_matrix(gen, n, gen.unit(), 2);
    auto b = a;
    b(gen.index(n), gen.index(n)) += 1;
    CHECK(perron_eigenvalue(b).lambda >= perron_eigenvalue(a).lambda - 1e-9);
  }
}

TEST_CASE("integer overflow in products is reported") {
  IntMatrix a{{1ull << 40, 0}, {0, 1}};
  CHECK_THROWS_AS(a * a, std::overflow_error);
  CHECK(IntMatrix{{1, 1}, {1, 0}}.power(5)(0, 0) == 8);
}
