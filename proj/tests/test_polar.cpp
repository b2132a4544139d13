// Polar spaces, maximal isotropic subspaces and the dual polar graphs.

#include <set>
#include <tuple>

#include "doctest.h"
#include "dpg/polar.hpp"
#include "oracles.hpp"

using namespace dpg;

namespace {

// Every vector in the row span, by running over all coefficient tuples.
std::set<GfVector> span_set(const FormSpec& s, const IsotropicSubspace& v) {
  const auto& f = s.field;
  std::set<GfVector> out;
  std::size_t count = 1;
  for (std::size_t i = 0; i < v.basis.size(); ++i) count *= f.order();
  for (std::size_t code = 0; code < count; ++code) {
    GfVector w(s.n, 0);
    std::size_t c = code;
    for (const auto& row : v.basis) {
      FieldElement coeff = static_cast<FieldElement>(c % f.order());
      c /= f.order();
      for (int k = 0; k < s.n; ++k) w[k] = f.add(w[k], f.mul(coeff, row[k]));
    }
    out.insert(w);
  }
  return out;
}

int log_base(std::size_t size, std::uint32_t b) {
  int d = 0;
  while (size > 1) {
    size /= b;
    ++d;
  }
  return d;
}

}  // namespace

TEST_CASE("vertex counts follow prod (b^{i+e} + 1)") {
  struct Case {
    Family f;
    int D;
    std::uint32_t b;
  };
  for (auto c : std::vector<Case>{{Family::C, 2, 2}, {Family::C, 3, 2}, {Family::C, 2, 3}, {Family::B, 2, 3},
                                  {Family::D, 3, 2}, {Family::D, 2, 3}, {Family::TwoD, 2, 2}, {Family::TwoAOdd, 2, 4},
                                  {Family::TwoAEven, 1, 4}, {Family::B, 2, 2}}) {
    auto spec = make_form_spec(c.f, c.D, c.b);
    auto pg = build_polar_graph(spec);
    CAPTURE(family_name(c.f));
    CAPTURE(c.D);
    CAPTURE(c.b);
    CHECK(static_cast<long>(pg.graph.n) == oracle::dual_polar_vertex_count(c.D, c.b, spec.two_e));
  }
}

TEST_CASE("the family constants e") {
  CHECK(make_form_spec(Family::D, 2, 2).e() == 0);
  CHECK(make_form_spec(Family::C, 2, 2).e() == 1);
  CHECK(make_form_spec(Family::B, 2, 3).e() == 1);
  CHECK(make_form_spec(Family::TwoD, 2, 2).e() == 2);
  CHECK(make_form_spec(Family::TwoAOdd, 2, 4).e() == Rational(1, 2));
  CHECK(make_form_spec(Family::TwoAEven, 2, 4).e() == Rational(3, 2));
}

TEST_CASE("vertices are totally isotropic and distances match D - dim(y cap z)") {
  for (auto [f, D, b] : std::vector<std::tuple<Family, int, std::uint32_t>>{
           {Family::C, 3, 2}, {Family::D, 3, 2}, {Family::TwoAOdd, 2, 4}, {Family::TwoD, 2, 2}, {Family::B, 2, 3}}) {
    auto spec = make_form_spec(f, D, b);
    auto pg = build_polar_graph(spec);
    CAPTURE(family_name(f));
    std::vector<std::set<GfVector>> spans;
    for (const auto& v : pg.vertices) {
      REQUIRE(v.basis.size() == static_cast<std::size_t>(D));
      for (const auto& u : v.basis) {
        CHECK(form_value(spec, u, std::nullopt) == 0);
        for (const auto& w : v.basis) CHECK(form_value(spec, u, w) == 0);
      }
      spans.push_back(span_set(spec, v));
    }
    std::vector<std::vector<int>> dist;
    for (std::size_t y = 0; y < pg.graph.n; ++y) dist.push_back(oracle::bfs(pg.graph.adj, y));
    for (std::size_t y = 0; y < pg.graph.n; ++y)
      for (std::size_t z = 0; z < pg.graph.n; ++z) {
        std::size_t common = 0;
        for (const auto& w : spans[y]) common += spans[z].count(w);
        int cap = log_base(common, b);
        CHECK(D - cap == dist[y][z]);
        CHECK(pg.graph.d(y, z) == dist[y][z]);
        CHECK(intersection_dim(spec, pg.vertices[y], pg.vertices[z]) == cap);
      }
    CHECK(pg.graph.diameter == D);
  }
}

TEST_CASE("vertex and adjacency hex encodings round-trip") {
  auto spec = make_form_spec(Family::C, 2, 3);
  auto pg = build_polar_graph(spec);
  for (const auto& v : pg.vertices) CHECK(vertex_from_hex(spec, vertex_hex(spec, v)).key() == v.key());
  for (std::size_t y = 0; y < pg.graph.n; ++y) {
    auto hex = adjacency_row_hex(pg.graph, y);
    CHECK(hex.size() == (pg.graph.n + 3) / 4);
    for (std::size_t z = 0; z < pg.graph.n; ++z) {
      char ch = hex[z / 4];
      int nib = ch <= '9' ? ch - '0' : ch - 'a' + 10;
      CHECK(((nib >> (3 - z % 4)) & 1) == (pg.graph.adjacent(y, z) ? 1 : 0));
    }
  }
  CHECK_THROWS_AS(vertex_from_hex(spec, "zz"), InputError);
}

TEST_CASE("vertex order is canonical") {
  auto spec = make_form_spec(Family::D, 3, 2);
  auto a = build_polar_graph(spec), b = build_polar_graph(spec);
  for (std::size_t i = 0; i < a.vertices.size(); ++i) CHECK(a.vertices[i].key() == b.vertices[i].key());
  for (std::size_t i = 1; i < a.vertices.size(); ++i) CHECK(a.vertices[i - 1].key() < a.vertices[i].key());
}

TEST_CASE("breadth-first distances agree with the oracle on an irregular graph") {
  std::vector<std::vector<std::uint32_t>> adj = {{1}, {0, 2, 3}, {1, 4}, {1}, {2}, {}};
  auto g = graph_from_adjacency(adj);
  for (std::size_t y = 0; y < adj.size(); ++y) {
    auto d = oracle::bfs(adj, y);
    for (std::size_t z = 0; z < adj.size(); ++z) CHECK((d[z] < 0 ? 255 : d[z]) == g.d(y, z));
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(make_form_spec(Family::TwoAOdd, 3, 3), InputError);
  CHECK_THROWS_AS(make_form_spec(Family::C, 3, 6), InputError);
  CHECK_THROWS_AS(make_form_spec(Family::C, 0, 2), InputError);
  CHECK_THROWS_AS(parse_family("E8"), InputError);
  CHECK(parse_family("2A_odd") == Family::TwoAOdd);
  CHECK_THROWS_AS(build_polar_graph(make_form_spec(Family::C, 3, 2), 100), BudgetExceeded);
}
