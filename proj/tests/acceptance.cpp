// Acceptance run: one PASS or FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include "dpg/drg.hpp"
#include "dpg/leonard.hpp"
#include "dpg/polar.hpp"
#include "dpg/terwilliger.hpp"
#include "dpg/uqsl2.hpp"

using namespace dpg;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct GraphCase {
  std::string name;
  Family family;
  int D;
  std::uint32_t b;
  std::size_t expected_vertices;
  double time_limit_s;

  FormSpec spec;
  PolarGraph pg;
  IntersectionData data;
  BoseMesnerData bm;
  double build_s = 0;
  std::string build_error;
  std::unique_ptr<TerwilligerContext> ctx;
  std::unique_ptr<Decomposition> dec;
};

// Collects failures of one criterion.
struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  std::string first_failure;

  void fail(const std::string& what) {
    if (ok) first_failure = what;
    ok = false;
  }
  void require(const CheckList& checks, const std::string& where) {
    for (const auto& c : checks)
      if (!c.passed()) {
        fail(where + ": " + c.id + " (" + c.anchor + ") " + c.witness);
        return;
      }
  }
  void require(bool cond, const std::string& what) {
    if (!cond) fail(what);
  }
};

int failures = 0;

void report(int number, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome v;
  auto start = Clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.fail(std::string("exception: ") + e.what());
  }
  std::ostringstream line;
  line << (v.ok ? "PASS" : "FAIL") << " criterion " << number << ": " << title;
  std::string d = v.detail.str();
  if (!d.empty()) line << " [" << d << "]";
  if (!v.ok) line << " -- " << v.first_failure;
  line << " (" << static_cast<long>(seconds_since(start)) << " s)";
  std::cout << line.str() << std::endl;
  if (!v.ok) ++failures;
}

std::vector<std::unique_ptr<GraphCase>> graphs;

GraphCase& graph(const std::string& name) {
  for (auto& g : graphs)
    if (g->name == name) return *g;
  throw std::logic_error("unknown graph " + name);
}

TerwilligerContext& context(GraphCase& g) {
  if (!g.ctx) g.ctx = std::make_unique<TerwilligerContext>(build_context(g.pg.graph, g.spec, g.data, g.bm, 0));
  return *g.ctx;
}

Decomposition& decomposition(GraphCase& g) {
  if (!g.dec) g.dec = std::make_unique<Decomposition>(decompose(context(g)));
  return *g.dec;
}

std::string scalar_text(const ExactScalar& x) { return x.to_string(); }

}  // namespace

int main() {
  graphs.push_back(std::make_unique<GraphCase>(GraphCase{"C3(2)", Family::C, 3, 2, 135, 120}));
  graphs.push_back(std::make_unique<GraphCase>(GraphCase{"D3(2)", Family::D, 3, 2, 30, 120}));
  graphs.push_back(std::make_unique<GraphCase>(GraphCase{"2D4(2)", Family::TwoD, 3, 2, 765, 120}));
  graphs.push_back(std::make_unique<GraphCase>(GraphCase{"2A5(2)", Family::TwoAOdd, 3, 4, 891, 900}));

  report(1, "graph construction, distance-regularity and the intersection array", [](Outcome& v) {
    for (auto& gp : graphs) {
      auto& g = *gp;
      auto start = Clock::now();
      g.spec = make_form_spec(g.family, g.D, g.b);
      g.pg = build_polar_graph(g.spec);
      g.data = verify_distance_regular(g.pg.graph);
      g.bm = spectral_data(g.pg.graph, g.data, g.spec);
      g.build_s = seconds_since(start);
      v.detail << g.name << " n=" << g.pg.graph.n << " " << static_cast<long>(g.build_s) << "s; ";
      v.require(g.pg.graph.n == g.expected_vertices, g.name + " vertex count " + std::to_string(g.pg.graph.n));
      v.require(g.build_s < g.time_limit_s, g.name + " construction exceeded its time target");
      // c_i = (b^i - 1)/(b - 1), b_i = b^{i+e}(b^{D-i} - 1)/(b - 1) with b^{i+e} = sqrt(b)^{2i+2e}
      ExactScalar b(static_cast<long>(g.b));
      for (int i = 0; i <= g.D; ++i) {
        ExactScalar c = (q_pow(b, i) - 1) / (b - 1);
        ExactScalar bi = q_pow(g.spec.q(), 2 * i + g.spec.two_e) * (q_pow(b, g.D - i) - 1) / (b - 1);
        v.require(ExactScalar(g.data.c[i]) == c, g.name + " c_" + std::to_string(i));
        v.require(ExactScalar(g.data.b[i]) == bi, g.name + " b_" + std::to_string(i));
      }
    }
  });

  report(2, "spectrum of C3(2) and the idempotent identities", [](Outcome& v) {
    auto& g = graph("C3(2)");
    v.require(g.bm.theta == Vector{14, 5, -1, -7}, "eigenvalues");
    long total = 0;
    for (long m : g.bm.multiplicity) total += m;
    v.require(total == 135, "sum of multiplicities");
    v.require(g.bm.multiplicity[1] == 35 && g.bm.theta_star[0] == ExactScalar(35), "m_1 = 35 = theta*_0");
    BoseMesnerAlgebra M(g.data);
    Vector sum(g.D + 1);
    for (int i = 0; i <= g.D; ++i) {
      const auto& Ei = g.bm.idempotent[i];
      for (int h = 0; h <= g.D; ++h) sum[h] += Ei[h];
      Vector AE = M.multiply(M.adjacency(), Ei), thE = Ei;
      for (auto& x : thE) x *= g.bm.theta[i];
      v.require(AE == thE, "A E_i = theta_i E_i");
      for (int j = 0; j <= g.D; ++j) {
        auto p = M.multiply(Ei, g.bm.idempotent[j]);
        v.require(i == j ? p == Ei : is_zero_vector(p), "E_i E_j = delta_ij E_i");
      }
    }
    v.require(sum == M.one(), "sum E_i = I");
    // one identity on the n x n matrices themselves
    auto E1 = M.materialize(g.bm.idempotent[1], g.pg.graph);
    v.require(E1 * E1 == E1, "E_1^2 = E_1 as a 135 x 135 matrix");
    v.require(E1.trace() == ExactScalar(35), "trace E_1 = 35");
    v.detail << "theta=(14,5,-1,-7) m=(";
    for (std::size_t i = 0; i < g.bm.multiplicity.size(); ++i) v.detail << (i ? "," : "") << g.bm.multiplicity[i];
    v.detail << ")";
  });

  report(3, "Krein vanishing pattern and dual eigenvalues zeta + xi b^-i", [](Outcome& v) {
    for (auto& gp : graphs) {
      auto& g = *gp;
      auto viol = krein_pattern_violation(g.bm.krein);
      v.require(viol.empty(), g.name + " Krein pattern: " + viol);
      for (int i = 0; i <= g.D; ++i)
        v.require(g.bm.theta_star[i] == g.bm.zeta + g.bm.xi * q_pow(ExactScalar(static_cast<long>(g.b)), -i),
                  g.name + " theta*_" + std::to_string(i));
      v.detail << g.name << " ok; ";
    }
  });

  report(4, "the seven L, F, R, K relations on every graph", [](Outcome& v) {
    for (auto& gp : graphs) {
      auto& g = *gp;
      auto& ctx = context(g);
      v.require(verify_context(ctx), g.name);
      auto rel = verify_lfrk(ctx);
      v.require(rel, g.name);
      v.require(verify_triangle_counts(ctx), g.name);
      v.detail << g.name << " e=" << g.spec.e() << "; ";
    }
  });

  report(5, "central elements, entry tables and the Upsilon, Psi, Lambda expressions", [](Outcome& v) {
    for (auto& gp : graphs) {
      auto& g = *gp;
      auto& ctx = context(g);
      auto ce = central_elements(ctx);
      v.require(verify_central(ctx, ce), g.name);
      v.require(verify_tridiagonal_relations(ctx), g.name);
      auto& dec = decomposition(g);
      v.require(verify_upsilon_psi_lambda_scalars(ctx, dec), g.name);
      if (g.pg.graph.n <= 150) {
        auto cm = upsilon_psi_lambda(ctx, dec);
        v.require(verify_upsilon_psi_lambda(ctx, ce, cm), g.name + " dense");
        v.detail << g.name << " dense; ";
      } else {
        v.detail << g.name << " per component; ";
      }
    }
  });

  report(6, "homogeneous decomposition at three base vertices", [](Outcome& v) {
    for (auto& gp : graphs) {
      auto& g = *gp;
      auto& dec = decomposition(g);
      v.require(dec.checks, g.name + " x=0");
      std::size_t total = 0;
      for (const auto& c : dec.components) total += c.dim();
      v.require(total == g.pg.graph.n, g.name + " dimensions sum to |X|");
      auto base = feasible_multiset(dec);
      std::mt19937_64 rng(2024);
      std::uniform_int_distribution<std::size_t> pick(1, g.pg.graph.n - 1);
      std::set<std::size_t> others;
      while (others.size() < 2) others.insert(pick(rng));
      for (auto x : others) {
        auto ctx = build_context(g.pg.graph, g.spec, g.data, g.bm, x);
        auto d = decompose(ctx);
        v.require(d.checks, g.name + " x=" + std::to_string(x));
        v.require(feasible_multiset(d) == base, g.name + " multiset differs at x=" + std::to_string(x));
      }
      v.detail << g.name << " x=0," << *others.begin() << "," << *others.rbegin() << " " << base.size() << " triples; ";
    }
  });

  report(7, "Leonard systems on every T-module of C3(2) and D3(2)", [](Outcome& v) {
    for (const char* name : {"C3(2)", "D3(2)"}) {
      auto& g = graph(name);
      auto& ctx = context(g);
      auto& dec = decomposition(g);
      for (const auto& c : dec.components) {
        auto rec = extract_module(ctx, c, c.endpoint_basis.at(0));
        v.require(rec.checks, g.name + " " + c.triple.to_string());
        auto ml = leonard_from_tmodule(rec, ctx);
        v.require(ml.checks, g.name + " " + c.triple.to_string());
        v.require(ml.array == dqk_array(ml.expected), g.name + " parameter array " + c.triple.to_string());
        // a one-dimensional module only carries theta_0 and theta*_0, so the parameters are identifiable for d >= 1
        if (c.triple.d >= 1)
          v.require(ml.params && *ml.params == ml.expected, g.name + " parameters " + c.triple.to_string());
        if (c.triple == Triple{0, 0, g.D})
          v.detail << g.name << " primary kappa=" << scalar_text(ml.expected.kappa) << "; ";
      }
    }
    auto& c3 = graph("C3(2)");
    auto& ctx = context(c3);
    auto p = module_dqk_params(ctx, Triple{0, 0, 3});
    v.require(p.kappa == ExactScalar(4) * ExactScalar::sqrt_of(2), "kappa = 4 sqrt 2 on the primary module of C3(2)");
  });

  report(8, "both U_q(sl2) structures on the standard module", [](Outcome& v) {
    for (auto& gp : graphs) {
      auto& g = *gp;
      auto& ctx = context(g);
      auto& dec = decomposition(g);
      if (g.pg.graph.n <= 150) {
        auto cm = upsilon_psi_lambda(ctx, dec);
        auto ops = standard_operators(ctx, dec, cm);
        for (int variant : {1, 2}) v.require(uq_on_standard(ctx, ops, variant).checks, g.name + " dense");
        v.detail << g.name << " dense; ";
      } else {
        for (const auto& c : dec.components) {
          auto rec = extract_module(ctx, c, c.endpoint_basis.at(0));
          auto ops = module_operators(ctx, rec);
          for (int variant : {1, 2}) v.require(uq_on_standard(ctx, ops, variant).checks, g.name + " " + c.triple.to_string());
        }
        v.detail << g.name << " per component; ";
      }
    }
  });

  report(9, "abstract Leonard engine on the q = 2 dual q-Krawtchouk family", [](Outcome& v) {
    std::vector<std::array<ExactScalar, 5>> choices = {
        {0, 0, 1, 1, 3},
        {ExactScalar::fraction(1, 3), -2, 5, ExactScalar::fraction(-1, 2), 7},
        {4, 1, -2, 3, ExactScalar::fraction(5, 2)}};
    int systems = 0;
    for (int d = 0; d <= 6; ++d)
      for (const auto& c : choices) {
        DqkParams p{2, c[0], c[1], c[2], c[3], c[4], d};
        auto pa = dqk_array(p);
        std::string where = "d=" + std::to_string(d);
        auto verdict = validate(pa);
        v.require(verdict.valid, where + " " + verdict.condition);
        for (BasisKind k : {BasisKind::Split, BasisKind::NormalizedSplit, BasisKind::Standard}) {
          auto r = realize(pa, k);
          v.require(verify_axioms(r), where);
          v.require(extract_parameter_array(r) == pa, where + " round trip in the " + basis_name(k) + " basis");
        }
        if (d >= 1) {
          auto cl = dqk_aw_scalars(p);
          auto s = d >= 3 ? td_aw_scalars(pa) : td_aw_scalars(pa, AwHint{cl.beta, cl.gamma, cl.gamma_star});
          v.require(s.beta == cl.beta && s.gamma == cl.gamma && s.gamma_star == cl.gamma_star && s.varrho == cl.varrho &&
                        s.varrho_star == cl.varrho_star && s.omega == cl.omega && s.eta == cl.eta &&
                        s.eta_star == cl.eta_star,
                    where + " scalars differ from the closed forms");
          v.require(verify_td_aw(realize(pa, BasisKind::Split), s), where);
        }
        using enum D4;
        auto T = [&](std::initializer_list<D4> word) {
          auto x = pa;
          for (D4 g : word) x = d4_transform(x, g);
          return x;
        };
        v.require(T({Star, Star}) == pa && T({Down, Down}) == pa && T({DDown, DDown}) == pa, where + " involutions");
        v.require(T({DDown, Star}) == T({Star, Down}), where + " ddown star = star down");
        ++systems;
      }
    auto ref = td_aw_scalars(dqk_array(DqkParams{2, 0, 0, 1, 1, 3, 3}));
    v.require(ref.beta == ExactScalar::fraction(17, 4), "beta of the reference example");
    v.detail << systems << " systems, reference beta=" << scalar_text(ref.beta);
  });

  report(10, "U_q(sl2) modules L(d, eps) and distinct Casimir scalars", [](Outcome& v) {
    std::size_t checks = 0;
    for (ExactScalar q : {ExactScalar(2), ExactScalar(3), ExactScalar::sqrt_of(2)}) {
      std::set<std::string> casimirs;
      for (int d = 0; d <= 6; ++d)
        for (int eps : {1, -1}) {
          auto expected = ExactScalar(eps) * (q_pow(q, d + 1) + q_pow(q, -d - 1)) / ((q - q.inverse()) * (q - q.inverse()));
          v.require(casimir_scalar(q, d, eps) == expected, "Casimir scalar formula");
          casimirs.insert(expected.to_string());
          for (LdBasis b : {LdBasis::Kef, LdBasis::XEigen, LdBasis::YEigen, LdBasis::ZEigen}) {
            auto c = verify_Ld(q, d, eps, b);
            checks += c.size();
            v.require(c, "q=" + q.to_string() + " d=" + std::to_string(d) + " " + ld_basis_name(b));
          }
        }
      v.require(casimirs.size() == 14, "Casimir scalars not pairwise distinct for q=" + q.to_string());
    }
    v.detail << checks << " checks";
  });

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " criteria FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
