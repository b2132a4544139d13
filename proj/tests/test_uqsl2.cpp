// U_q(sl2): the modules L(d, eps) and the actions on Leonard systems and on
// the standard module of a dual polar graph.

#include <set>

#include "doctest.h"
#include "dpg/uqsl2.hpp"
#include "oracles.hpp"

using namespace dpg;

namespace {

using oracle::Dense;

void require_all_pass(const CheckList& checks) {
  for (const auto& c : checks) {
    CAPTURE(c.id);
    CAPTURE(c.witness);
    CHECK(c.passed());
  }
}

Dense mul(const ExactMatrix& a, const ExactMatrix& b) { return oracle::multiply(a.to_dense(), b.to_dense()); }

// (q ab - q^{-1} ba)/(q - q^{-1})
Dense qweyl(const ExactScalar& q, const ExactMatrix& a, const ExactMatrix& b) {
  auto c = oracle::add(oracle::identity(a.rows(), 0), mul(a, b), q);
  c = oracle::add(c, mul(b, a), -q.inverse());
  auto s = (q - q.inverse()).inverse();
  for (auto& row : c)
    for (auto& x : row) x *= s;
  return c;
}

}  // namespace

TEST_CASE("L(d, eps) satisfies the defining relations") {
  for (ExactScalar q : {ExactScalar(2), ExactScalar(3), ExactScalar::sqrt_of(2)}) {
    std::set<std::string> casimirs;
    for (int d = 0; d <= 6; ++d)
      for (int eps : {1, -1}) {
        auto expected = casimir_scalar(q, d, eps);
        CHECK(expected == ExactScalar(eps) * (q_pow(q, d + 1) + q_pow(q, -d - 1)) / ((q - q.inverse()) * (q - q.inverse())));
        casimirs.insert(expected.to_string());
        for (LdBasis b : {LdBasis::Kef, LdBasis::XEigen, LdBasis::YEigen, LdBasis::ZEigen}) {
          auto a = build_Ld(q, d, eps, b);
          std::size_t n = a.dim();
          CHECK(n == static_cast<std::size_t>(d + 1));
          auto I = oracle::identity(n);
          CHECK(mul(a.Z, a.Z_inv) == I);
          CHECK(qweyl(q, a.X, a.Y) == I);
          CHECK(qweyl(q, a.Y, a.Z) == I);
          CHECK(qweyl(q, a.Z, a.X) == I);
          CHECK(oracle::multiply(mul(a.K, a.E), a.K_inv.to_dense()) == oracle::add(oracle::identity(n, 0), a.E.to_dense(), q * q));
          CHECK(oracle::multiply(mul(a.K, a.F), a.K_inv.to_dense()) == oracle::add(oracle::identity(n, 0), a.F.to_dense(), (q * q).inverse()));
          auto ef = oracle::add(mul(a.E, a.F), mul(a.F, a.E), ExactScalar(-1));
          auto kk = oracle::add(a.K.to_dense(), a.K_inv.to_dense(), ExactScalar(-1));
          CHECK(ef == oracle::add(oracle::identity(n, 0), kk, (q - q.inverse()).inverse()));
          CHECK(casimir(a).to_dense() == oracle::identity(n, expected));
          // the eigenvalues of k are eps q^{d-2i}
          auto prod = I;
          for (int i = 0; i <= d; ++i)
            prod = oracle::multiply(prod, oracle::add(a.K.to_dense(), oracle::identity(n, -ExactScalar(eps) * q_pow(q, d - 2 * i))));
          CHECK(oracle::is_zero(prod));
          require_all_pass(verify_Ld(q, d, eps, b));
        }
      }
    CHECK(casimirs.size() == 14);
  }
}

TEST_CASE("invalid module parameters are rejected") {
  CHECK_THROWS_AS(build_Ld(ExactScalar(1), 2, 1, LdBasis::Kef), InputError);
  CHECK_THROWS_AS(build_Ld(ExactScalar(-1), 1, 1, LdBasis::Kef), InputError);
  CHECK_THROWS_AS(build_Ld(ExactScalar(2), 2, 3, LdBasis::Kef), InputError);
}

TEST_CASE("chevalley and equitable presentations convert both ways") {
  auto a = build_Ld(ExactScalar(3), 4, -1, LdBasis::Kef);
  auto b = UqAction::from_chevalley(a.q, a.K, a.E, a.F);
  auto c = UqAction::from_equitable(b.q, b.X, b.Y, b.Z);
  CHECK(c.E == a.E);
  CHECK(c.F == a.F);
  CHECK(c.K == a.K);
  require_all_pass(verify_uq(c));
  auto broken = c;
  broken.X = broken.X * ExactScalar(2);
  CHECK_FALSE(all_passed(verify_uq(broken)));
}

TEST_CASE("both structures on a Leonard system of dual q-Krawtchouk type") {
  for (ExactScalar q : {ExactScalar(2), ExactScalar::sqrt_of(2)})
    for (int d = 0; d <= 5; ++d) {
      DqkParams p{q, ExactScalar::fraction(1, 3), -2, 5, ExactScalar::fraction(-1, 2), 7, d};
      auto pa = dqk_array(p);
      for (BasisKind k : {BasisKind::Split, BasisKind::Standard}) {
        auto r = realize(pa, k);
        for (int eps : {1, -1})
          for (int v : {1, 2}) {
            auto res = uq_on_leonard(r, p, eps, v);
            require_all_pass(res.checks);
            // A = h + eps kappa X + eps upsilon Y, or with X and Y exchanged, and A* = h* + eps kappa* Z
            const auto& X = v == 1 ? res.action.X : res.action.Y;
            const auto& Y = v == 1 ? res.action.Y : res.action.X;
            auto n = r.dim();
            auto rhs = oracle::identity(n, p.h);
            rhs = oracle::add(rhs, X.to_dense(), ExactScalar(eps) * p.kappa);
            rhs = oracle::add(rhs, Y.to_dense(), ExactScalar(eps) * p.upsilon);
            CHECK(r.A.to_dense() == rhs);
            auto rhs_star = oracle::add(oracle::identity(n, p.h_star), res.action.Z.to_dense(), ExactScalar(eps) * p.kappa_star);
            CHECK(r.A_star.to_dense() == rhs_star);
          }
      }
    }
}

TEST_CASE("both structures on the standard module of a small dual polar graph") {
  auto spec = make_form_spec(Family::D, 3, 2);
  auto pg = build_polar_graph(spec);
  auto data = verify_distance_regular(pg.graph);
  auto bm = spectral_data(pg.graph, data, spec);
  auto ctx = build_context(pg.graph, spec, data, bm, 0);
  auto dec = decompose(ctx);
  for (const auto& c : dec.components) {
    auto rec = extract_module(ctx, c, c.endpoint_basis.at(0));
    auto ops = module_operators(ctx, rec);
    for (int v : {1, 2}) require_all_pass(uq_on_standard(ctx, ops, v).checks);
  }
  auto cm = upsilon_psi_lambda(ctx, dec);
  auto ops = standard_operators(ctx, dec, cm);
  for (int v : {1, 2}) {
    auto res = uq_on_standard(ctx, ops, v);
    require_all_pass(res.checks);
    // The Casimir element acts as Lambda and commutes with A.
    auto cas = casimir(res.action).to_dense();
    CHECK(cas == ops.Lambda.to_dense());
    auto A = ctx.A.to_dense();
    CHECK(oracle::multiply(cas, A) == oracle::multiply(A, cas));
  }
  auto params = standard_module_params(ctx);
  CHECK(params.q == ExactScalar::sqrt_of(2));
}
