// Sparse exact matrices, subspaces and spectral projectors.

#include <random>

#include "doctest.h"
#include "dpg/linexact.hpp"
#include "oracles.hpp"

using namespace dpg;

namespace {

ExactMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int density = 2) {
  std::uniform_int_distribution<long> val(-5, 5), keep(0, density);
  ExactMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (keep(rng) == 0) m.set(i, j, ExactScalar::fraction(val(rng), 1 + static_cast<long>(keep(rng))));
  return m;
}

}  // namespace

TEST_CASE("products agree with the dense triple loop") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    auto a = random_matrix(rng, 7, 5), b = random_matrix(rng, 5, 6);
    CHECK((a * b).to_dense() == oracle::multiply(a.to_dense(), b.to_dense()));
    CHECK((a * b).transpose() == b.transpose() * a.transpose());
    Vector v(6);
    for (std::size_t i = 0; i < 6; ++i) v[i] = ExactScalar(static_cast<long>(i) - 2);
    auto bv = b.apply(v);
    auto dense_b = b.to_dense();
    for (std::size_t i = 0; i < 5; ++i) {
      ExactScalar s;
      for (std::size_t j = 0; j < 6; ++j) s += dense_b[i][j] * v[j];
      CHECK(bv[i] == s);
    }
  }
}

TEST_CASE("sparse storage keeps no explicit zeros") {
  ExactMatrix m(2, 2);
  m.set(0, 0, ExactScalar(1));
  m.set(0, 0, ExactScalar(0));
  CHECK(m.nnz() == 0);
  CHECK(m.is_zero());
  auto a = ExactMatrix::identity(3);
  CHECK((a - a).nnz() == 0);
}

TEST_CASE("rank, kernel and inverse on constructed matrices") {
  std::mt19937_64 rng(11);
  for (std::size_t r = 1; r <= 4; ++r) {
    // a 6 x 6 matrix of rank at most r
    auto m = random_matrix(rng, 6, r, 0) * random_matrix(rng, r, 6, 0);
    auto k = kernel(m);
    CHECK(rank(m) + k.dim() == 6);
    CHECK(rank(m) <= r);
    for (const auto& v : k.basis()) CHECK(is_zero_vector(m.apply(v)));
    CHECK(column_space(m).dim() == rank(m));
  }
  for (int t = 0; t < 10; ++t) {
    auto m = random_matrix(rng, 5, 5, 0) + ExactMatrix::scalar(5, ExactScalar(31));
    auto inv = inverse(m);
    CHECK(m * inv == ExactMatrix::identity(5));
    CHECK(inv * m == ExactMatrix::identity(5));
    Vector v{1, 2, 3, 4, 5};
    CHECK(m.apply(solve(m, v)) == v);
  }
  CHECK_THROWS_AS(inverse(ExactMatrix(3, 3)), SingularMatrix);
}

TEST_CASE("subspace sums and intersections obey the dimension formula") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    auto a = random_matrix(rng, 7, 3, 1), b = random_matrix(rng, 7, 4, 1);
    auto da = a.transpose().to_dense(), db = b.transpose().to_dense();
    auto sa = Subspace::span(7, da), sb = Subspace::span(7, db);
    auto sum = sa.plus(sb), cap = sa.intersect(sb);
    CHECK(sum.dim() + cap.dim() == sa.dim() + sb.dim());
    for (const auto& v : cap.basis()) {
      CHECK(sa.contains(v));
      CHECK(sb.contains(v));
    }
    auto perp = sa.perp();
    CHECK(perp.dim() + sa.dim() == 7);
    for (const auto& u : perp.basis())
      for (const auto& v : sa.basis()) CHECK(dot(u, v).is_zero());
  }
}

TEST_CASE("represent recovers the matrix of a linear map") {
  std::mt19937_64 rng(9);
  auto m = random_matrix(rng, 4, 4, 0);
  std::vector<Vector> basis = {{1, 0, 0, 1}, {0, 1, 1, 0}, {1, 1, 0, 0}, {0, 0, 0, 1}};
  std::vector<Vector> images;
  for (const auto& v : basis) images.push_back(m.apply(v));
  auto rep = represent(basis, images);
  for (std::size_t j = 0; j < 4; ++j) {
    Vector recon(4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t c = 0; c < 4; ++c) recon[c] += rep.at(i, j) * basis[i][c];
    CHECK(recon == images[j]);
  }
  CHECK_THROWS_AS(represent({{1, 0}}, {{0, 1}}), DimensionMismatch);
}

TEST_CASE("spectral projectors of the path on three vertices") {
  // Eigenvalues sqrt2, 0, -sqrt2; the characteristic polynomial is z^3 - 2z.
  ExactMatrix a(3, 3);
  a.set(0, 1, 1);
  a.set(1, 0, 1);
  a.set(1, 2, 1);
  a.set(2, 1, 1);
  auto s = ExactScalar::sqrt_of(2);
  auto d = a.to_dense();
  auto cube = oracle::multiply(oracle::multiply(d, d), d);
  CHECK(oracle::is_zero(oracle::add(cube, d, ExactScalar(-2))));
  auto es = spectral_projectors(a, {s, 0, -s});
  ExactMatrix total(3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    total += es[i];
    CHECK(es[i] * es[i] == es[i]);
    CHECK(rank(es[i]) == 1);
    for (std::size_t j = 0; j < i; ++j) CHECK((es[i] * es[j]).is_zero());
  }
  CHECK(total == ExactMatrix::identity(3));
  CHECK_THROWS_AS(spectral_projectors(a, {ExactScalar(1), 0, ExactScalar(-1)}), SpectrumError);
}

TEST_CASE("orthogonal projector onto a line") {
  auto s = Subspace::span(3, {{1, 1, 0}});
  auto p = orthogonal_projector(s);
  CHECK(p * p == p);
  CHECK(p.is_symmetric());
  CHECK(p.at(0, 1) == ExactScalar::fraction(1, 2));
  CHECK(p.trace() == ExactScalar(1));
}
