// Distance-regularity, the Bose-Mesner algebra and the Q-polynomial data.

#include <tuple>

#include "doctest.h"
#include "dpg/drg.hpp"
#include "oracles.hpp"

using namespace dpg;

namespace {

struct Built {
  FormSpec spec;
  PolarGraph pg;
  IntersectionData data;
  BoseMesnerData bm;
};

Built build(Family f, int D, std::uint32_t b) {
  Built x;
  x.spec = make_form_spec(f, D, b);
  x.pg = build_polar_graph(x.spec);
  x.data = verify_distance_regular(x.pg.graph);
  x.bm = spectral_data(x.pg.graph, x.data, x.spec);
  return x;
}

// b^{i+e} evaluated as q^{2i+2e} with q = sqrt(b)
ExactScalar bpow(const FormSpec& s, int twice_exponent) { return q_pow(s.q(), twice_exponent); }

}  // namespace

TEST_CASE("intersection numbers agree with brute-force counts and the closed form") {
  for (auto [f, D, b] : std::vector<std::tuple<Family, int, std::uint32_t>>{
           {Family::D, 3, 2}, {Family::C, 2, 3}, {Family::TwoAOdd, 2, 4}, {Family::C, 3, 2}}) {
    auto x = build(f, D, b);
    CAPTURE(family_name(f));
    const auto& g = x.pg.graph;
    std::vector<std::vector<int>> dist;
    for (std::size_t y = 0; y < g.n; ++y) dist.push_back(oracle::bfs(g.adj, y));
    for (std::size_t y = 0; y < g.n; y += 7)
      for (std::size_t z = 0; z < g.n; ++z) {
        int h = dist[y][z];
        for (int i = 0; i <= D; ++i)
          for (int j = 0; j <= D; ++j) CHECK(oracle::shell_intersection(dist, y, z, i, j) == x.data.p_at(h, i, j));
      }
    ExactScalar bb(static_cast<long>(b));
    for (int i = 0; i <= D; ++i) {
      ExactScalar c = (q_pow(bb, i) - 1) / (bb - 1);
      ExactScalar bi = bpow(x.spec, 2 * i + x.spec.two_e) * (q_pow(bb, D - i) - 1) / (bb - 1);
      CHECK(ExactScalar(x.data.c[i]) == c);
      CHECK(ExactScalar(x.data.b[i]) == bi);
      CHECK(x.data.a[i] + x.data.b[i] + x.data.c[i] == x.data.k());
    }
  }
}

TEST_CASE("non-regular graphs are rejected") {
  auto path = graph_from_adjacency({{1}, {0, 2}, {1, 3}, {2}});
  CHECK_THROWS_AS(verify_distance_regular(path), NotDistanceRegular);
}

TEST_CASE("eigenvalues annihilate A and the idempotents are exact") {
  for (auto [f, D, b] : std::vector<std::tuple<Family, int, std::uint32_t>>{{Family::D, 3, 2}, {Family::C, 2, 2}}) {
    auto x = build(f, D, b);
    const auto& g = x.pg.graph;
    auto A = oracle::adjacency(g);
    auto prod = oracle::identity(g.n);
    for (const auto& th : x.bm.theta) prod = oracle::multiply(prod, oracle::add(A, oracle::identity(g.n, -th)));
    CHECK(oracle::is_zero(prod));

    BoseMesnerAlgebra M(x.data);
    std::vector<oracle::Dense> E;
    for (const auto& e : x.bm.idempotent) E.push_back(M.materialize(e, g).to_dense());
    auto total = oracle::identity(g.n, 0);
    for (std::size_t i = 0; i < E.size(); ++i) {
      total = oracle::add(total, E[i]);
      CHECK(oracle::multiply(A, E[i]) == oracle::add(oracle::identity(g.n, 0), E[i], x.bm.theta[i]));
      ExactScalar tr;
      for (std::size_t y = 0; y < g.n; ++y) tr += E[i][y][y];
      CHECK(tr == ExactScalar(x.bm.multiplicity[i]));
      for (std::size_t j = 0; j < E.size(); ++j) {
        auto p = oracle::multiply(E[i], E[j]);
        if (i == j) CHECK(p == E[i]);
        else CHECK(oracle::is_zero(p));
      }
    }
    CHECK(total == oracle::identity(g.n));

    // n (E_i o E_j) = sum_h q^h_ij E_h
    ExactScalar n(static_cast<long>(g.n));
    for (std::size_t i = 0; i < E.size(); ++i)
      for (std::size_t j = 0; j < E.size(); ++j) {
        auto rhs = oracle::identity(g.n, 0);
        for (std::size_t h = 0; h < E.size(); ++h) rhs = oracle::add(rhs, E[h], ExactScalar(x.bm.krein[h][i][j]));
        for (std::size_t y = 0; y < g.n; ++y)
          for (std::size_t z = 0; z < g.n; ++z) CHECK(n * E[i][y][z] * E[j][y][z] == rhs[y][z]);
      }
  }
}

TEST_CASE("the symplectic graph on 135 vertices") {
  auto x = build(Family::C, 3, 2);
  CHECK(x.bm.theta == Vector{14, 5, -1, -7});
  CHECK(x.bm.multiplicity == std::vector<long>{1, 35, 84, 15});
  CHECK(x.bm.theta_star[0] == ExactScalar(35));
  CHECK(krein_pattern_violation(x.bm.krein).empty());
  for (int i = 0; i <= 3; ++i) CHECK(x.bm.theta_star[i] == x.bm.zeta + x.bm.xi * q_pow(ExactScalar(2), -i));
}

TEST_CASE("Krein pattern detection") {
  auto x = build(Family::D, 3, 2);
  CHECK(krein_pattern_violation(x.bm.krein).empty());
  auto bad = x.bm.krein;
  bad[3][0][1] = 1;  // 3 > 0 + 1 must vanish
  CHECK_FALSE(krein_pattern_violation(bad).empty());
  bad = x.bm.krein;
  bad[2][1][1] = 0;  // 2 = 1 + 1 must not vanish
  CHECK_FALSE(krein_pattern_violation(bad).empty());
}

TEST_CASE("three-term recurrences of the eigenvalue sequences") {
  for (auto [f, D, b] : std::vector<std::tuple<Family, int, std::uint32_t>>{
           {Family::C, 3, 2}, {Family::D, 4, 2}, {Family::TwoAOdd, 3, 4}, {Family::TwoD, 3, 3}, {Family::B, 4, 5}}) {
    auto s = make_form_spec(f, D, b);
    auto t = td_scalars(s);
    for (const auto& [x, g, r] : {std::tuple{dpg_eigenvalues(s), t.gamma, t.varrho},
                                  std::tuple{dpg_dual_eigenvalues(s), t.gamma_star, t.varrho_star}}) {
      for (int i = 1; i <= D - 1; ++i) CHECK(x[i - 1] - t.beta * x[i] + x[i + 1] == g);
      for (int i = 1; i <= D; ++i)
        CHECK(x[i - 1] * x[i - 1] - t.beta * x[i - 1] * x[i] + x[i] * x[i] - g * (x[i - 1] + x[i]) == r);
    }
    // theta_0 is the valency
    std::vector<Rational> c, a, bb;
    dpg_intersection_numbers(s, c, a, bb);
    CHECK(dpg_eigenvalues(s)[0] == ExactScalar(bb[0]));
  }
}
