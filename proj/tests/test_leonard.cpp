// Parameter arrays, realizations and the dual q-Krawtchouk family.

#include "doctest.h"
#include "dpg/leonard.hpp"
#include "dpg/polar.hpp"
#include "oracles.hpp"

using namespace dpg;

namespace {

std::vector<DqkParams> sample_params(const ExactScalar& q, int d) {
  return {DqkParams{q, 0, 0, 1, 1, 3, d},
          DqkParams{q, ExactScalar::fraction(1, 3), -2, 5, ExactScalar::fraction(-1, 2), 7, d},
          DqkParams{q, 4, 1, -2, 3, ExactScalar::fraction(5, 2), d}};
}

// The reference example: q = 2, d = 3, h = h* = 0, kappa = kappa* = 1, upsilon = 3.
DqkParams example() { return DqkParams{2, 0, 0, 1, 1, 3, 3}; }

oracle::Dense dense_product(std::initializer_list<const ExactMatrix*> ms) {
  auto it = ms.begin();
  auto out = (*it)->to_dense();
  for (++it; it != ms.end(); ++it) out = oracle::multiply(out, (*it)->to_dense());
  return out;
}

void require_all_pass(const CheckList& checks) {
  for (const auto& c : checks) {
    CAPTURE(c.id);
    CAPTURE(c.witness);
    CHECK(c.passed());
  }
}

}  // namespace

TEST_CASE("the reference example") {
  auto pa = dqk_array(example());
  auto v = validate(pa);
  REQUIRE(v.valid);
  REQUIRE(v.beta_plus_one);
  CHECK(*v.beta_plus_one - 1 == ExactScalar::fraction(17, 4));
  // theta_i = kappa q^{3-2i} + upsilon q^{2i-3}, theta*_i = kappa* q^{3-2i}
  for (int i = 0; i <= 3; ++i) {
    CHECK(pa.theta[i] == q_pow(ExactScalar(2), 3 - 2 * i) + 3 * q_pow(ExactScalar(2), 2 * i - 3));
    CHECK(pa.theta_star[i] == q_pow(ExactScalar(2), 3 - 2 * i));
  }
  auto s = td_aw_scalars(pa);
  CHECK(s.beta == ExactScalar::fraction(17, 4));
  CHECK(s.unique_regime);
}

TEST_CASE("dual q-Krawtchouk arrays satisfy PA1-PA5 with beta = q^2 + q^-2") {
  for (ExactScalar q : {ExactScalar(2), ExactScalar(3), ExactScalar::sqrt_of(2)})
    for (int d = 0; d <= 6; ++d)
      for (const auto& p : sample_params(q, d)) {
        auto pa = dqk_array(p);
        auto v = validate(pa);
        CAPTURE(d);
        CHECK(v.valid);
        if (d >= 3) {
          REQUIRE(v.beta_plus_one);
          CHECK(*v.beta_plus_one == q * q + (q * q).inverse() + 1);
        }
        if (d >= 1) CHECK(dqk_from_array(pa, q) == p);
      }
}

TEST_CASE("violations name the first failing condition") {
  auto pa = dqk_array(example());
  auto bad = pa;
  bad.phi[1] = 0;
  auto v = validate(bad);
  CHECK_FALSE(v.valid);
  CHECK(v.condition == "PA2");
  CHECK(v.index == 2);

  bad = pa;
  bad.theta[3] = bad.theta[0];
  v = validate(bad);
  CHECK(v.condition == "PA1");
  CHECK(v.index == 3);

  bad = pa;
  bad.phi[2] += 1;
  v = validate(bad);
  CHECK(v.condition == "PA3");
  CHECK(v.index == 3);

  bad = pa;
  bad.phi2[0] += 1;
  v = validate(bad);
  CHECK_FALSE(v.valid);

  bad = pa;
  bad.theta.pop_back();
  CHECK_THROWS_AS(validate(bad), InputError);
}

TEST_CASE("degenerate parameters are rejected") {
  auto p = example();
  p.upsilon = 1;  // kappa = upsilon q^0
  CHECK_THROWS_AS(dqk_array(p), InputError);
  p = example();
  p.kappa_star = 0;
  CHECK_THROWS_AS(dqk_array(p), InputError);
  p = example();
  p.q = -1;
  CHECK_THROWS_AS(dqk_array(p), InputError);
}

TEST_CASE("realizations satisfy the axioms and round-trip") {
  for (ExactScalar q : {ExactScalar(2), ExactScalar::sqrt_of(2)})
    for (int d = 0; d <= 5; ++d)
      for (const auto& p : sample_params(q, d)) {
        auto pa = dqk_array(p);
        for (BasisKind k : {BasisKind::Split, BasisKind::NormalizedSplit, BasisKind::Standard}) {
          auto r = realize(pa, k);
          require_all_pass(verify_axioms(r));
          CHECK(extract_parameter_array(r) == pa);
          // prod (A - theta_i) = 0 and the tridiagonal shape, by dense products
          std::size_t n = r.dim();
          auto A = r.A.to_dense();
          auto prod = oracle::identity(n);
          for (const auto& th : pa.theta) prod = oracle::multiply(prod, oracle::add(A, oracle::identity(n, -th)));
          CHECK(oracle::is_zero(prod));
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
              auto m = dense_product({&r.E[i], &r.A_star, &r.E[j]});
              auto ms = dense_product({&r.E_star[i], &r.A, &r.E_star[j]});
              std::size_t gap = i > j ? i - j : j - i;
              if (gap > 1) {
                CHECK(oracle::is_zero(m));
                CHECK(oracle::is_zero(ms));
              } else if (gap == 1) {
                CHECK_FALSE(oracle::is_zero(m));
                CHECK_FALSE(oracle::is_zero(ms));
              }
            }
        }
      }
}

TEST_CASE("intersection numbers match the standard basis E*_i v with v in E_0 V") {
  for (int d = 1; d <= 5; ++d)
    for (const auto& p : sample_params(ExactScalar(2), d)) {
      auto pa = dqk_array(p);
      auto r = realize(pa, BasisKind::Split);
      auto E0 = r.E[0].to_dense();
      std::size_t n = r.dim();
      // a nonzero column of E_0
      Vector v(n);
      for (std::size_t j = 0; j < n && is_zero_vector(v); ++j)
        for (std::size_t i = 0; i < n; ++i) v[i] = E0[i][j];
      std::vector<Vector> basis, images;
      for (std::size_t i = 0; i < n; ++i) basis.push_back(r.E_star[i].apply(v));
      for (const auto& w : basis) images.push_back(r.A.apply(w));
      auto M = represent(basis, images);
      auto in = intersection_data(pa);
      auto cl = dqk_intersection_numbers(p);
      for (int i = 0; i <= d; ++i) {
        CHECK(M.at(i, i) == in.a[i]);
        if (i > 0) CHECK(M.at(i - 1, i) == in.b[i - 1]);
        if (i < d) CHECK(M.at(i + 1, i) == in.c[i + 1]);
        CHECK(in.a[i] + in.b[i] + in.c[i] == pa.theta[0]);
        CHECK(in.a[i] == cl.a[i]);
        CHECK(in.b[i] == cl.b[i]);
        CHECK(in.c[i] == cl.c[i]);
      }
    }
}

TEST_CASE("the D4 action on parameter arrays") {
  for (int d = 1; d <= 6; ++d)
    for (const auto& p : sample_params(ExactScalar(3), d)) {
      auto pa = dqk_array(p);
      auto T = [](ParameterArray x, std::initializer_list<D4> word) {
        for (D4 g : word) x = d4_transform(x, g);
        return x;
      };
      using enum D4;
      CHECK(T(pa, {Star, Star}) == pa);
      CHECK(T(pa, {Down, Down}) == pa);
      CHECK(T(pa, {DDown, DDown}) == pa);
      CHECK(T(pa, {DDown, Star}) == T(pa, {Star, Down}));
      CHECK(T(pa, {Down, Star}) == T(pa, {Star, DDown}));
      CHECK(T(pa, {Down, DDown}) == T(pa, {DDown, Down}));
      for (D4 g : {Star, Down, DDown}) CHECK(validate(d4_transform(pa, g)).valid);
      // reversing the eigenvalue order swaps kappa and upsilon
      auto swapped = p;
      std::swap(swapped.kappa, swapped.upsilon);
      CHECK(d4_transform(pa, DDown) == dqk_array(swapped));
      // star swaps the roles of theta and theta*
      auto st = d4_transform(pa, Star);
      CHECK(st.theta == pa.theta_star);
      CHECK(st.theta_star == pa.theta);
    }
}

TEST_CASE("tridiagonal and Askey-Wilson relations with the closed-form scalars") {
  for (ExactScalar q : {ExactScalar(2), ExactScalar(3), ExactScalar::sqrt_of(2)})
    for (int d = 1; d <= 6; ++d)
      for (const auto& p : sample_params(q, d)) {
        auto pa = dqk_array(p);
        auto cl = dqk_aw_scalars(p);
        auto s = d >= 3 ? td_aw_scalars(pa) : td_aw_scalars(pa, AwHint{cl.beta, cl.gamma, cl.gamma_star});
        CHECK(s.beta == cl.beta);
        CHECK(s.gamma == cl.gamma);
        CHECK(s.gamma_star == cl.gamma_star);
        CHECK(s.varrho == cl.varrho);
        CHECK(s.varrho_star == cl.varrho_star);
        CHECK(s.omega == cl.omega);
        CHECK(s.eta == cl.eta);
        CHECK(s.eta_star == cl.eta_star);
        CHECK(s.unique_regime == (d >= 3));
        auto r = realize(pa, BasisKind::Standard);
        require_all_pass(verify_td_aw(r, s));
        // [A, A^2 A* - beta A A* A + A* A^2 - gamma (A A* + A* A) - varrho A*] = 0 by dense products
        auto A = r.A.to_dense(), As = r.A_star.to_dense();
        auto AA = oracle::multiply(A, A);
        auto inner = oracle::multiply(AA, As);
        inner = oracle::add(inner, oracle::multiply(oracle::multiply(A, As), A), -s.beta);
        inner = oracle::add(inner, oracle::multiply(As, AA));
        inner = oracle::add(inner, oracle::multiply(A, As), -s.gamma);
        inner = oracle::add(inner, oracle::multiply(As, A), -s.gamma);
        inner = oracle::add(inner, As, -s.varrho);
        auto comm = oracle::add(oracle::multiply(A, inner), oracle::multiply(inner, A), ExactScalar(-1));
        CHECK(oracle::is_zero(comm));
      }
  auto p = DqkParams{2, 0, 0, 1, 1, 3, 2};
  CHECK_THROWS_AS(td_aw_scalars(dqk_array(p)), InputError);
}

TEST_CASE("the normalized split basis has both characterizations") {
  for (int d = 0; d <= 5; ++d) {
    auto pa = dqk_array(DqkParams{ExactScalar::sqrt_of(2), 1, 2, 3, 4, 5, d});
    auto r = realize(pa, BasisKind::Standard);
    auto ns = normalized_split_basis(r, pa);
    require_all_pass(ns.checks);
    CHECK(ns.basis.size() == static_cast<std::size_t>(d + 1));
  }
}
