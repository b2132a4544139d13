#include "dpg/terwilliger.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace dpg {

namespace {

std::string tag(std::size_t y, std::size_t z) {
  return "(" + std::to_string(y) + "," + std::to_string(z) + ")";
}

// Scalars shared by the defining formulas of C0, C1, C2.
struct CentralCoefficients {
  ExactScalar c0;          // (q^{2e} - 1)/(q^2 - 1)
  ExactScalar rl1, lr1;    // q^2/(q^2+1), q^{-2}/(q^2+1)
  ExactScalar c1;          // q^{2e+2D-2}/(q^2 - 1)
  ExactScalar rl2, lr2;    // 1/(q^2+1), q^{-2}/(q^2+1)
  ExactScalar c2;          // q^{2e+2D-2}/(q^4 - 1)
};

CentralCoefficients central_coefficients(const TerwilligerContext& ctx) {
  CentralCoefficients k;
  ExactScalar q2 = ctx.qp(2), q4 = ctx.qp(4), one(1);
  ExactScalar top = ctx.qp(ctx.spec.two_e + 2 * ctx.D - 2);
  k.c0 = (ctx.q2e() - one) / (q2 - one);
  k.rl1 = q2 / (q2 + one);
  k.lr1 = ctx.qp(-2) / (q2 + one);
  k.c1 = top / (q2 - one);
  k.rl2 = one / (q2 + one);
  k.lr2 = ctx.qp(-2) / (q2 + one);
  k.c2 = top / (q4 - one);
  return k;
}

// Vertices w adjacent to y, bucketed by dist(x, w) - dist(x, y) in {-1, 0, 1},
// counted as common neighbours of y and each z.
struct CommonNeighbourCounts {
  std::vector<std::array<int, 3>> count;
  std::vector<std::size_t> touched;

  explicit CommonNeighbourCounts(std::size_t n) : count(n, {0, 0, 0}) {}

  void fill(const TerwilligerContext& ctx, std::size_t y) {
    for (auto z : touched) count[z] = {0, 0, 0};
    touched.clear();
    for (auto w : ctx.graph->adj[y]) {
      int delta = ctx.level[w] - ctx.level[y];
      for (auto z : ctx.graph->adj[w]) {
        auto& c = count[z];
        if (c[0] == 0 && c[1] == 0 && c[2] == 0) touched.push_back(z);
        ++c[static_cast<std::size_t>(delta + 1)];
      }
    }
  }
};

// Matrix with the given diagonal value per level and off-diagonal value per
// level on flattening edges.
ExactMatrix level_matrix(const TerwilligerContext& ctx, const Vector& diag, const Vector& flat) {
  ExactMatrix m(ctx.n(), ctx.n());
  for (std::size_t y = 0; y < ctx.n(); ++y) {
    std::vector<MatEntry> row;
    for (const auto& e : ctx.F.row(y))
      if (e.col < y && !flat[ctx.level[y]].is_zero()) row.push_back({e.col, flat[ctx.level[y]]});
    if (!diag[ctx.level[y]].is_zero()) row.push_back({static_cast<std::uint32_t>(y), diag[ctx.level[y]]});
    for (const auto& e : ctx.F.row(y))
      if (e.col > y && !flat[ctx.level[y]].is_zero()) row.push_back({e.col, flat[ctx.level[y]]});
    m.set_row(y, std::move(row));
  }
  return m;
}

bool block_diagonal(const TerwilligerContext& ctx, const ExactMatrix& m, std::string& witness) {
  for (std::size_t y = 0; y < m.rows(); ++y)
    for (const auto& e : m.row(y))
      if (ctx.level[y] != ctx.level[e.col]) {
        witness = "nonzero entry " + tag(y, e.col) + " across levels";
        return false;
      }
  return true;
}

// Basis of the common kernel of the given square matrices.
Subspace joint_kernel(const std::vector<ExactMatrix>& ops, std::size_t k) {
  Subspace cur = Subspace::whole(k);
  for (const auto& m : ops) {
    if (cur.dim() == 0) break;
    std::vector<Vector> images;
    images.reserve(cur.dim());
    for (const auto& b : cur.basis()) images.push_back(m.apply(b));
    Subspace ker = kernel(ExactMatrix::from_columns(k, images));
    std::vector<Vector> next;
    for (const auto& c : ker.basis()) {
      Vector v(k);
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j].is_zero()) continue;
        for (std::size_t i = 0; i < k; ++i)
          if (!cur.basis()[j][i].is_zero()) v[i].add_product(c[j], cur.basis()[j][i]);
      }
      next.push_back(std::move(v));
    }
    cur = Subspace::span(k, std::move(next));
  }
  return cur;
}

Vector scaled(const Vector& v, const ExactScalar& s) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out[i] = v[i] * s;
  return out;
}

void axpy(Vector& y, const ExactScalar& a, const Vector& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i].add_product(a, x[i]);
}

}  // namespace

std::string Triple::to_string() const {
  return "(" + std::to_string(r) + "," + std::to_string(t) + "," + std::to_string(d) + ")";
}

ExactMatrix TerwilligerContext::dual_idempotent(int i) const {
  Vector diag(n());
  for (auto y : shells[i]) diag[y] = 1;
  return ExactMatrix::diagonal(diag);
}

Vector TerwilligerContext::apply_K(const Vector& v, int m) const {
  std::vector<ExactScalar> pw(D + 1);
  for (int i = 0; i <= D; ++i) pw[i] = qp(-2L * m * i);
  Vector out(v.size());
  for (std::size_t y = 0; y < v.size(); ++y)
    if (!v[y].is_zero()) out[y] = v[y] * pw[level[y]];
  return out;
}

Vector TerwilligerContext::restrict_to_shell(const Vector& v, int i) const {
  Vector out;
  out.reserve(shells[i].size());
  for (auto y : shells[i]) out.push_back(v[y]);
  return out;
}

Vector TerwilligerContext::embed_from_shell(const Vector& v, int i) const {
  Vector out(n());
  for (std::size_t j = 0; j < shells[i].size(); ++j) out[shells[i][j]] = v[j];
  return out;
}

TerwilligerContext build_context(const Graph& g, const FormSpec& spec, const IntersectionData& data,
                                 const BoseMesnerData& bm, std::size_t x) {
  if (x >= g.n) throw std::out_of_range("base vertex out of range");
  TerwilligerContext ctx;
  ctx.graph = &g;
  ctx.spec = spec;
  ctx.data = data;
  ctx.bm = bm;
  ctx.x = x;
  ctx.D = data.D;
  ctx.q = spec.q();
  ctx.zeta = bm.zeta;
  ctx.xi = bm.xi;
  ctx.td = td_scalars(spec);

  std::size_t n = g.n;
  ctx.level.resize(n);
  ctx.shells.assign(ctx.D + 1, {});
  ctx.position.resize(n);
  for (std::size_t y = 0; y < n; ++y) {
    int l = g.d(x, y);
    ctx.level[y] = l;
    ctx.position[y] = ctx.shells[l].size();
    ctx.shells[l].push_back(y);
  }

  ctx.A = ExactMatrix(n, n);
  ctx.L = ExactMatrix(n, n);
  ctx.F = ExactMatrix(n, n);
  ctx.R = ExactMatrix(n, n);
  for (std::size_t y = 0; y < n; ++y) {
    std::vector<std::uint32_t> nb = g.adj[y];
    std::sort(nb.begin(), nb.end());
    std::vector<MatEntry> a, l, f, r;
    for (auto z : nb) {
      a.push_back({z, ExactScalar(1)});
      int diff = ctx.level[z] - ctx.level[y];
      if (diff == 1) l.push_back({z, ExactScalar(1)});
      else if (diff == 0) f.push_back({z, ExactScalar(1)});
      else r.push_back({z, ExactScalar(1)});
    }
    ctx.A.set_row(y, std::move(a));
    ctx.L.set_row(y, std::move(l));
    ctx.F.set_row(y, std::move(f));
    ctx.R.set_row(y, std::move(r));
  }

  Vector k(n), kinv(n), astar(n);
  for (std::size_t y = 0; y < n; ++y) {
    k[y] = ctx.qp(-2L * ctx.level[y]);
    kinv[y] = ctx.qp(2L * ctx.level[y]);
    astar[y] = bm.theta_star[ctx.level[y]];
  }
  ctx.K = ExactMatrix::diagonal(k);
  ctx.K_inv = ExactMatrix::diagonal(kinv);
  ctx.A_star = ExactMatrix::diagonal(astar);
  return ctx;
}

CheckList verify_context(const TerwilligerContext& ctx) {
  CheckList out;
  std::size_t n = ctx.n();
  out.push_back(check_matrices("context.a_split", "A = L + F + R", ctx.A, ctx.L + ctx.F + ctx.R));
  out.push_back(check_matrices("context.l_transpose", "L^T = R", ctx.L.transpose(), ctx.R));
  out.push_back(check_matrices("context.f_symmetric", "F^T = F", ctx.F.transpose(), ctx.F));

  bool kdiag = ctx.K.is_diagonal();
  std::string w;
  for (std::size_t y = 0; y < n && kdiag; ++y)
    if (ctx.K.at(y, y) != ctx.qp(-2L * ctx.graph->d(ctx.x, y))) {
      kdiag = false;
      w = "K(" + std::to_string(y) + "," + std::to_string(y) + ")";
    }
  out.push_back(make_check("context.k_diagonal", "K diagonal with (y,y)-entry q^{-2 dist(x,y)}", kdiag, w));
  out.push_back(make_check("context.k_base", "K(x,x) = 1", ctx.K.at(ctx.x, ctx.x).is_one(),
                           ctx.K.at(ctx.x, ctx.x).to_string()));
  out.push_back(check_matrices("context.astar_in_span", "A* = zeta I + xi K", ctx.A_star,
                               ExactMatrix::scalar(n, ctx.zeta) + ctx.xi * ctx.K));

  // E*_i A E*_j = 0 for |i - j| > 1, read off the level map.
  bool tri = true;
  w.clear();
  for (std::size_t y = 0; y < n && tri; ++y)
    for (auto z : ctx.graph->adj[y])
      if (std::abs(ctx.level[y] - ctx.level[z]) > 1) {
        tri = false;
        w = "edge " + tag(y, z);
        break;
      }
  out.push_back(make_check("context.triple_product", "E*_i A E*_j = 0 for |i - j| > 1", tri, w));

  ExactScalar tr = ctx.D >= 1 ? ctx.dual_idempotent(1).trace() : ExactScalar(0);
  out.push_back(check_scalars("context.trace_e1", "trace E*_1 = k", tr, ExactScalar(ctx.data.k())));

  Vector x_hat(n);
  x_hat[ctx.x] = 1;
  out.push_back(check_vectors("context.subconstituent_zero", "E*_0 V = span{x}",
                              ctx.dual_idempotent(0).apply(x_hat), x_hat));
  return out;
}

CheckList verify_lfrk(const TerwilligerContext& ctx) {
  CheckList out;
  const auto &L = ctx.L, &F = ctx.F, &R = ctx.R, &K = ctx.K, &Ki = ctx.K_inv, &A = ctx.A;
  ExactScalar q = ctx.q, q2 = ctx.qp(2), one(1);
  ExactScalar s = ctx.q2e() - one;
  ExactScalar top = ctx.qp(ctx.spec.two_e + 2 * ctx.D - 2);
  ExactScalar c4 = ctx.qp(4) / (q2 + one), cm2 = ctx.qp(-2) / (q2 + one);

  out.push_back(check_matrices("lfrk.kl", "KL = q^2 LK", K * L, q2 * (L * K)));
  out.push_back(check_matrices("lfrk.kf", "KF = FK", K * F, F * K));
  out.push_back(check_matrices("lfrk.kr", "KR = q^{-2} RK", K * R, ctx.qp(-2) * (R * K)));
  out.push_back(check_matrices("lfrk.lf", "LF - q^2 FL = (q^{2e} - 1) L", L * F - q2 * (F * L), s * L));
  out.push_back(check_matrices("lfrk.fr", "FR - q^2 RF = (q^{2e} - 1) R", F * R - q2 * (R * F), s * R));
  ExactMatrix RL = R * L, LR = L * R;
  ExactMatrix lhs6 = c4 * (RL * L) - L * RL + cm2 * (L * LR);
  out.push_back(check_matrices("lfrk.rll",
                               "q^4/(q^2+1) RL^2 - LRL + q^{-2}/(q^2+1) L^2R = -q^{2e+2D-2} L",
                               lhs6, -top * L));
  ExactMatrix lhs7 = c4 * (R * RL) - RL * R + cm2 * (LR * R);
  out.push_back(check_matrices("lfrk.rrl",
                               "q^4/(q^2+1) R^2L - RLR + q^{-2}/(q^2+1) LR^2 = -q^{2e+2D-2} R",
                               lhs7, -top * R));

  const ExactMatrix* ops[4] = {&LR, &RL, &F, &K};
  const char* names[4] = {"LR", "RL", "F", "K"};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      out.push_back(check_matrices(std::string("lfrk.commute.") + names[i] + "_" + names[j],
                                   std::string("LR, RL, F, K mutually commute: ") + names[i] + names[j] +
                                       " = " + names[j] + names[i],
                                   *ops[i] * *ops[j], *ops[j] * *ops[i]));

  ExactMatrix KiAK = Ki * A * K, KAKi = K * A * Ki;
  ExactScalar qi = ctx.qp(-1), qq = q + qi, d2 = (q - qi) * (q - qi);
  ExactMatrix Lrec = (qi * KiAK + q * KAKi - qq * A) * (one / (d2 * qq));
  ExactMatrix Frec = ((ctx.qp(2) + ctx.qp(-2)) * A - KiAK - KAKi) * (one / d2);
  ExactMatrix Rrec = (q * KiAK + qi * KAKi - qq * A) * (one / (d2 * qq));
  out.push_back(check_matrices("lfrk.recover_l",
                               "L = (q^{-1}K^{-1}AK + qKAK^{-1} - (q+q^{-1})A)/((q-q^{-1})^2(q+q^{-1}))",
                               Lrec, L));
  out.push_back(check_matrices("lfrk.recover_f",
                               "F = ((q^2+q^{-2})A - K^{-1}AK - KAK^{-1})/(q-q^{-1})^2", Frec, F));
  out.push_back(check_matrices("lfrk.recover_r",
                               "R = (qK^{-1}AK + q^{-1}KAK^{-1} - (q+q^{-1})A)/((q-q^{-1})^2(q+q^{-1}))",
                               Rrec, R));
  return out;
}

CheckList verify_triangle_counts(const TerwilligerContext& ctx) {
  const Graph& g = *ctx.graph;
  long a1 = ctx.D >= 1 ? ctx.data.a[1] : 0;
  long b = ctx.spec.b;
  CommonNeighbourCounts cnt(g.n);
  std::string w1, w2;
  std::size_t edges = 0;
  for (std::size_t y = 0; y < g.n; ++y) {
    cnt.fill(ctx, y);
    // c[1]: common neighbours at level dist(x,y); c[2]: at level dist(x,y)+1
    for (auto z : g.adj[y]) {
      if (ctx.level[z] != ctx.level[y] + 1) continue;
      const auto& c = cnt.count[z];
      ++edges;
      if (w1.empty() && (c[1] != 0 || c[2] != a1))
        w1 = "y,z = " + tag(y, z) + ": counts " + std::to_string(c[1]) + "," + std::to_string(c[2]);
    }
    for (auto z : cnt.touched) {
      if (ctx.level[z] != ctx.level[y] + 1) continue;
      const auto& c = cnt.count[z];
      if (g.d(y, z) == 2) {
        if (w2.empty() && (c[1] != 1 || c[2] != b))
          w2 = "y,z = " + tag(y, z) + ": counts " + std::to_string(c[1]) + "," + std::to_string(c[2]);
      }
    }
  }
  CheckList out;
  out.push_back(make_check("counts.near_polygon",
                           "adjacent y,z with dist(x,y) = dist(x,z) - 1 = i: |G_i(x) n G(y) n G(z)| = 0, "
                           "|G_{i+1}(x) n G(y) n G(z)| = a_1",
                           w1.empty() && edges > 0, w1.empty() ? "no such pairs" : w1));
  out.push_back(make_check("counts.quad",
                           "dist(y,z) = 2, dist(x,y) = dist(x,z) - 1 = i: |G_i(x) n G(y) n G(z)| = 1, "
                           "|G_{i+1}(x) n G(y) n G(z)| = b",
                           w2.empty(), w2));
  return out;
}

Check verify_no_k121(const Graph& g) {
  // An induced K_{1,2,1} is an edge u v with two nonadjacent common neighbours.
  for (std::size_t u = 0; u < g.n; ++u)
    for (auto v : g.adj[u]) {
      if (v <= u) continue;
      std::vector<std::size_t> common;
      for (auto w : g.adj[u])
        if (g.adjacent(w, v)) common.push_back(w);
      for (std::size_t i = 0; i < common.size(); ++i)
        for (std::size_t j = i + 1; j < common.size(); ++j)
          if (!g.adjacent(common[i], common[j]))
            return make_check("counts.no_k121", "no induced subgraph K_{1,2,1}", false,
                              "edge " + tag(u, v) + " with nonadjacent " + tag(common[i], common[j]));
    }
  return make_check("counts.no_k121", "no induced subgraph K_{1,2,1}", true);
}

CentralElements central_elements(const TerwilligerContext& ctx) {
  std::size_t n = ctx.n();
  auto k = central_coefficients(ctx);
  const auto &K = ctx.K, &F = ctx.F, &L = ctx.L, &R = ctx.R;
  ExactMatrix KF = K * F, RL = R * L, LR = L * R;
  ExactMatrix KRL = K * RL, KLR = K * LR, K2 = K * K;
  ExactScalar q2 = ctx.qp(2), qm2 = ctx.qp(-2), one(1), q2e = ctx.q2e();
  const auto& td = ctx.td;
  const auto &zeta = ctx.zeta, &xi = ctx.xi;

  CentralElements ce;
  ce.C0 = KF + k.c0 * K;
  ce.C1 = k.rl1 * KRL - k.lr1 * KLR + k.c1 * K;
  ce.C2 = k.rl2 * (K2 * RL) - k.lr2 * (K2 * LR) + k.c2 * K2;

  ExactScalar sq = (q2 - one) * (q2 - one);
  ce.Omega = (-xi * sq * qm2) * KF - (xi * (q2 - one) * (q2e - one) * qm2) * K -
             ExactMatrix::scalar(n, ExactScalar(2) * td.gamma * zeta);
  ce.G = (xi * (one - ctx.qp(4))) * KRL + (xi * (one - ctx.qp(-4))) * KLR +
         (xi * (qm2 - one) * (q2e - one)) * KF - (td.varrho * xi) * K -
         ExactMatrix::scalar(n, td.varrho * zeta);
  ce.G_star = (zeta * xi * sq * qm2) * KF + (zeta * xi * (q2 - one) * (q2e - one) * qm2) * K +
              ExactMatrix::scalar(n, td.gamma * zeta * zeta);
  return ce;
}

CheckList verify_tridiagonal_relations(const TerwilligerContext& ctx) {
  const auto &A = ctx.A, &As = ctx.A_star;
  const auto& td = ctx.td;
  ExactMatrix A2 = A * A, As2 = As * As;
  ExactMatrix AAs = A * As, AsA = As * A;
  ExactMatrix inner = A2 * As - td.beta * (AAs * A) + As * A2 - td.gamma * (AAs + AsA) - td.varrho * As;
  ExactMatrix inner_star =
      As2 * A - td.beta * (AsA * As) + A * As2 - td.gamma_star * (AsA + AAs) - td.varrho_star * A;
  CheckList out;
  ExactMatrix zero(ctx.n(), ctx.n());
  out.push_back(check_matrices("drg.tridiagonal",
                               "[A, A^2A* - beta AA*A + A*A^2 - gamma(AA* + A*A) - varrho A*] = 0",
                               commutator(A, inner), zero));
  out.push_back(check_matrices("drg.tridiagonal_dual",
                               "[A*, A*^2A - beta A*AA* + AA*^2 - gamma*(A*A + AA*) - varrho* A] = 0",
                               commutator(As, inner_star), zero));
  return out;
}

CheckList verify_central(const TerwilligerContext& ctx, const CentralElements& ce, std::uint64_t seed) {
  CheckList out;
  std::size_t n = ctx.n();
  int D = ctx.D;
  const auto& td = ctx.td;
  const auto &zeta = ctx.zeta, &xi = ctx.xi;
  ExactScalar one(1);
  auto bp = [&](long twice) { return ctx.qp(twice); };  // b^{twice/2}
  long te = ctx.spec.two_e;

  const std::pair<const char*, const ExactMatrix*> named[6] = {
      {"C0", &ce.C0}, {"C1", &ce.C1}, {"C2", &ce.C2}, {"Omega", &ce.Omega}, {"G", &ce.G}, {"G*", &ce.G_star}};
  ExactMatrix zero(n, n);
  for (const auto& [name, m] : named) {
    std::string id = std::string("central.") + name;
    out.push_back(check_matrices(id + ".commutes_a", std::string(name) + " commutes with A",
                                 commutator(*m, ctx.A), zero));
    out.push_back(check_matrices(id + ".commutes_astar", std::string(name) + " commutes with A*",
                                 commutator(*m, ctx.A_star), zero));
    std::string w;
    bool bd = block_diagonal(ctx, *m, w);
    out.push_back(make_check(id + ".block_diagonal",
                             std::string(name) + ": (y,z)-entry nonzero only if dist(x,y) = dist(x,z)", bd, w));
    out.push_back(check_matrices(id + ".symmetric", std::string(name) + " is symmetric", m->transpose(), *m));
  }

  // Omega through E*_i A E*_i and E*_i.
  Vector alpha(D + 1), beta(D + 1);
  {
    ExactScalar den = bp(te - 2) + one;
    for (int i = 0; i <= D; ++i) {
      if (i >= 1)
        alpha[i] = (bp(2 * D + te - 2) + one) * (bp(2 * D + te - 4) + one) * (one - bp(2)) * bp(-2 * i) / den;
      beta[i] = (bp(2 * D + te - 4) + one) * (bp(te) - one) *
                (ExactScalar(2) * bp(te - 2) + ExactScalar(2) - (bp(2 * D + te - 2) + one) * bp(-2 * i)) / den;
    }
    ExactMatrix omega(n, n);
    for (int i = 0; i <= D; ++i) {
      ExactMatrix Ei = ctx.dual_idempotent(i);
      if (i >= 1) omega.add_scaled(alpha[i], Ei * ctx.A * Ei);
      omega.add_scaled(beta[i], Ei);
    }
    out.push_back(check_matrices("central.omega_alpha_beta",
                                 "Omega = sum alpha_i E*_i A E*_i + sum beta_i E*_i", ce.Omega, omega));

    // Entry table: beta_s on the diagonal, alpha_s for adjacent y, z at level s.
    ExactMatrix table(n, n);
    const Graph& g = *ctx.graph;
    for (std::size_t y = 0; y < n; ++y) {
      std::vector<MatEntry> row;
      for (auto z : ctx.shells[ctx.level[y]]) {
        if (z == y) {
          if (!beta[ctx.level[y]].is_zero()) row.push_back({static_cast<std::uint32_t>(z), beta[ctx.level[y]]});
        }
        else if (g.d(y, z) == 1 && !alpha[ctx.level[y]].is_zero())
          row.push_back({static_cast<std::uint32_t>(z), alpha[ctx.level[y]]});
      }
      std::sort(row.begin(), row.end(), [](const MatEntry& a, const MatEntry& b) { return a.col < b.col; });
      table.set_row(y, std::move(row));
    }
    out.push_back(check_matrices("central.omega_entry_table", "(y,z)-entry of C from the case table (Omega)",
                                 ce.Omega, table));
  }

  // The centrality characterization: alpha_i = b^{1-i} alpha_1 and
  // beta_i = beta_0 - a_1 b^{1-i}(b^i - 1)/(b - 1) alpha_1.
  auto characterized = [&](const ExactScalar& a1c, const ExactScalar& b0, Vector& al, Vector& be) {
    al.assign(D + 1, ExactScalar());
    be.assign(D + 1, ExactScalar());
    ExactScalar a1 = D >= 1 ? ExactScalar(ctx.data.a[1]) : ExactScalar(0);
    for (int i = 0; i <= D; ++i) {
      if (i >= 1) al[i] = bp(2 - 2 * i) * a1c;
      be[i] = b0 - a1 * bp(2 - 2 * i) * (bp(2 * i) - one) / (bp(2) - one) * a1c;
    }
  };
  if (D >= 1) {
    Vector al, be;
    characterized(alpha[1], beta[0], al, be);
    bool ok = true;
    std::string w;
    for (int i = 0; i <= D && ok; ++i)
      if ((i >= 1 && al[i] != alpha[i]) || be[i] != beta[i]) {
        ok = false;
        w = "index " + std::to_string(i);
      }
    out.push_back(make_check("central.omega_characterized",
                             "alpha_i, beta_i of Omega satisfy the centrality characterization", ok, w));

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-30, 30), den(1, 9);
    for (int trial = 0; trial < 2; ++trial) {
      ExactScalar a1c = ExactScalar::fraction(num(rng), den(rng));
      if (a1c.is_zero()) a1c = 1;
      ExactScalar b0 = ExactScalar::fraction(num(rng), den(rng));
      characterized(a1c, b0, al, be);
      ExactMatrix C = level_matrix(ctx, be, al);
      out.push_back(check_matrices("central.characterization." + std::to_string(trial),
                                   "C central in T if alpha_i = b^{1-i} alpha_1, beta_i = beta_0 - a_1 "
                                   "b^{1-i}(b^i-1)/(b-1) alpha_1 (alpha_1 = " + a1c.to_string() +
                                       ", beta_0 = " + b0.to_string() + ")",
                                   commutator(C, ctx.A), zero));
      if (D >= 2 && trial == 0) {
        // With a_1 = 0 the alpha terms vanish, so beta_2 carries the perturbation.
        bool via_alpha = ctx.data.a[1] != 0;
        Vector bad_al = al, bad_be = be;
        (via_alpha ? bad_al : bad_be)[2] += one;
        ExactMatrix Cb = level_matrix(ctx, bad_be, bad_al);
        bool breaks = !commutator(Cb, ctx.A).is_zero();
        out.push_back(make_check("central.characterization.perturbed",
                                 via_alpha ? "C not central when alpha_2 differs from b^{-1} alpha_1"
                                           : "C not central when beta_2 breaks the characterization",
                                 breaks, "perturbed C still commutes with A"));
      }
    }
  }

  // G through level sums of E*_i A E*_j A E*_i.
  {
    ExactMatrix G(n, n);
    std::vector<ExactMatrix> E;
    for (int i = 0; i <= D; ++i) E.push_back(ctx.dual_idempotent(i));
    const auto& A = ctx.A;
    for (int i = 0; i <= D; ++i) {
      if (i >= 1) G.add_scaled(xi * (one - bp(4)) * bp(-2 * i), E[i] * A * E[i - 1] * A * E[i]);
      if (i < D) G.add_scaled(xi * (one - bp(-4)) * bp(-2 * i), E[i] * A * E[i + 1] * A * E[i]);
      if (i >= 1) G.add_scaled(xi * (bp(-2) - one) * (bp(te) - one) * bp(-2 * i), E[i] * A * E[i]);
    }
    G.add_scaled(-td.varrho, ctx.A_star);
    out.push_back(check_matrices("central.g_level_sums",
                                 "G = xi(1-b^2) sum b^{-i} E*_iAE*_{i-1}AE*_i + xi(1-b^{-2}) sum b^{-i} "
                                 "E*_iAE*_{i+1}AE*_i + xi(b^{-1}-1)(b^e-1) sum b^{-i} E*_iAE*_i - varrho A*",
                                 ce.G, G));
  }

  // G entry table from common-neighbour counts.
  {
    const Graph& g = *ctx.graph;
    CommonNeighbourCounts cnt(n);
    std::string w;
    ExactScalar b = bp(2);
    for (std::size_t y = 0; y < n && w.empty(); ++y) {
      cnt.fill(ctx, y);
      int s = ctx.level[y];
      std::map<std::size_t, ExactScalar> expect;
      expect[y] = xi * bp(-2 * s - 2) * (one - b * b) *
                      (b * ExactScalar(ctx.data.c[s]) - ExactScalar(ctx.data.b[s]) / b) -
                  td.varrho * ctx.bm.theta_star[s];
      for (auto z : cnt.touched) {
        if (z == y || ctx.level[z] != s) continue;
        int dz = g.d(y, z);
        const auto& c = cnt.count[z];
        if (dz == 1) {
          expect[z] = xi * bp(-2 * s - 2) * (one - b) * (b * b + b + bp(te) - one);
        } else if (dz == 2) {
          if (c[2] == 0) expect[z] = xi * bp(-2 * s) * (one - b * b) * ExactScalar(static_cast<long>(c[0]));
          else expect[z] = -xi * bp(-2 * s - 2) * (b + one) * (b - one) * (b - one);
        }
      }
      // Compare the row of G with the table; pairs absent from the map
      // (different level or distance >= 3) must be zero.
      for (const auto& e : ce.G.row(y)) {
        auto it = expect.find(e.col);
        ExactScalar want = it == expect.end() ? ExactScalar() : it->second;
        if (e.val != want) {
          w = "entry " + tag(y, e.col) + ": " + e.val.to_string() + " vs " + want.to_string();
          break;
        }
      }
      if (!w.empty()) break;
      for (const auto& [z, v] : expect)
        if (!v.is_zero() && ce.G.at(y, z) != v) {
          w = "entry " + tag(y, z) + ": " + ce.G.at(y, z).to_string() + " vs " + v.to_string();
          break;
        }
    }
    out.push_back(make_check("central.g_entry_table", "(y,z)-entry of G from the case table", w.empty(), w));
  }

  out.push_back(check_matrices("central.gstar_from_omega", "G* = -gamma zeta^2 I - zeta Omega", ce.G_star,
                               ExactMatrix::scalar(n, -td.gamma * zeta * zeta) - zeta * ce.Omega));

  // Omega, G, G* through C0 and C1.
  {
    ExactScalar q2 = bp(2), qm2 = bp(-2), q2e = bp(te);
    ExactScalar sq = (q2 - one) * (q2 - one);
    out.push_back(check_matrices("central.omega_from_c", "Omega = -xi q^{-2}(q^2-1)^2 C0 - 2 gamma zeta I",
                                 ce.Omega,
                                 (-xi * qm2 * sq) * ce.C0 -
                                     ExactMatrix::scalar(n, ExactScalar(2) * td.gamma * zeta)));
    out.push_back(check_matrices(
        "central.g_from_c", "G = xi(q^{-2}-1)(q^{2e}-1) C0 + xi(q^{-2}-1)(q^2+1)^2 C1 - varrho zeta I", ce.G,
        (xi * (qm2 - one) * (q2e - one)) * ce.C0 + (xi * (qm2 - one) * (q2 + one) * (q2 + one)) * ce.C1 -
            ExactMatrix::scalar(n, td.varrho * zeta)));
    out.push_back(check_matrices("central.gstar_from_c", "G* = zeta xi q^{-2}(q^2-1)^2 C0 + gamma zeta^2 I",
                                 ce.G_star,
                                 (zeta * xi * qm2 * sq) * ce.C0 + ExactMatrix::scalar(n, td.gamma * zeta * zeta)));
  }

  // The Askey-Wilson matrix relations with Omega, G, G*.
  {
    const auto &A = ctx.A, &As = ctx.A_star;
    ExactMatrix A2 = A * A, As2 = As * As, AAs = A * As, AsA = As * A;
    ExactMatrix lhs = A2 * As - td.beta * (AAs * A) + As * A2 - td.gamma * (AAs + AsA) - td.varrho * As;
    ExactMatrix rhs = td.gamma_star * A2 + ce.Omega * A + ce.G;
    out.push_back(check_matrices("central.aw",
                                 "A^2A* - beta AA*A + A*A^2 - gamma(AA* + A*A) - varrho A* = gamma* A^2 + "
                                 "Omega A + G",
                                 lhs, rhs));
    ExactMatrix lhs2 =
        As2 * A - td.beta * (AsA * As) + A * As2 - td.gamma_star * (AsA + AAs) - td.varrho_star * A;
    ExactMatrix rhs2 = td.gamma * As2 + ce.Omega * As + ce.G_star;
    out.push_back(check_matrices("central.aw_dual",
                                 "A*^2A - beta A*AA* + AA*^2 - gamma*(A*A + AA*) - varrho* A = gamma A*^2 + "
                                 "Omega A* + G*",
                                 lhs2, rhs2));
  }
  return out;
}

std::vector<Triple> candidate_triples(int D) {
  std::vector<Triple> out;
  for (int r = 0; r <= D; ++r)
    for (int t = 0; t <= D; ++t)
      for (int d = 0; d <= D; ++d)
        if (r + d <= D && t + d <= D && r + t + d >= D) out.push_back({r, t, d});
  return out;
}

ChiValues chi_values(const TerwilligerContext& ctx, const Triple& w) {
  long te = ctx.spec.two_e, D = ctx.D;
  ExactScalar one(1), q2 = ctx.qp(2), q4 = ctx.qp(4);
  ChiValues c;
  c.chi0 = (ctx.qp(te + 2 * D - 2 * w.d - 2 * w.r - 2 * w.t) - ctx.qp(2 * w.t - 2 * w.r)) / (q2 - one);
  c.chi1 = ctx.qp(te + 2 * D - 1 - w.d - 2 * w.r) * (ctx.qp(w.d + 1) + ctx.qp(-w.d - 1)) / (q4 - one);
  c.chi2 = ctx.qp(te + 2 * D - 2 - 2 * w.d - 4 * w.r) / (q4 - one);
  return c;
}

Vector apply_central(const TerwilligerContext& ctx, int k, const Vector& v) {
  auto co = central_coefficients(ctx);
  if (k == 0) {
    Vector out = ctx.F.apply(v);
    axpy(out, co.c0, v);
    return ctx.apply_K(out);
  }
  Vector rl = ctx.R.apply(ctx.L.apply(v));
  Vector lr = ctx.L.apply(ctx.R.apply(v));
  Vector out(v.size());
  if (k == 1) {
    axpy(out, co.rl1, rl);
    axpy(out, -co.lr1, lr);
    axpy(out, co.c1, v);
    return ctx.apply_K(out);
  }
  if (k == 2) {
    axpy(out, co.rl2, rl);
    axpy(out, -co.lr2, lr);
    axpy(out, co.c2, v);
    return ctx.apply_K(out, 2);
  }
  throw std::invalid_argument("central element index must be 0, 1 or 2");
}

Decomposition decompose(const TerwilligerContext& ctx, bool thorough) {
  Decomposition dec;
  int D = ctx.D;
  std::size_t n = ctx.n();
  auto cands = candidate_triples(D);

  std::vector<ChiValues> chis;
  for (const auto& w : cands) chis.push_back(chi_values(ctx, w));
  {
    std::string w;
    for (std::size_t i = 0; i < cands.size() && w.empty(); ++i)
      for (std::size_t j = i + 1; j < cands.size(); ++j)
        if (chis[i] == chis[j]) {
          w = cands[i].to_string() + " and " + cands[j].to_string();
          break;
        }
    dec.checks.push_back(make_check("decompose.distinct_chi",
                                    "chi values separate the candidate triples", w.empty(), w));
  }

  std::string kernel_witness;
  for (int r = 0; r <= D; ++r) {
    // E*_r applied to the sum of components with endpoint r is the kernel of
    // L restricted to E*_r V.
    std::vector<Vector> kr;
    if (r == 0) {
      kr.push_back(Vector{ExactScalar(1)});
    } else {
      std::vector<std::size_t> rows(ctx.shells[r - 1].begin(), ctx.shells[r - 1].end());
      std::vector<std::size_t> cols(ctx.shells[r].begin(), ctx.shells[r].end());
      kr = kernel(ctx.L.restrict_to(rows, cols)).basis();
    }
    std::size_t k = kr.size();
    if (k == 0) continue;
    std::size_t m = ctx.shells[r].size();

    // Pivot columns of the RREF basis give coordinates inside the kernel.
    std::vector<std::size_t> piv(k);
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t p = 0;
      while (kr[j][p].is_zero()) ++p;
      piv[j] = p;
    }
    std::vector<ExactMatrix> ops(3, ExactMatrix(k, k));
    for (std::size_t j = 0; j < k; ++j) {
      Vector u = ctx.embed_from_shell(kr[j], r);
      for (int c = 0; c < 3; ++c) {
        Vector img = ctx.restrict_to_shell(apply_central(ctx, c, u), r);
        for (std::size_t i = 0; i < k; ++i)
          if (!img[piv[i]].is_zero()) ops[c].set(i, j, img[piv[i]]);
      }
    }

    std::size_t found = 0;
    for (std::size_t ci = 0; ci < cands.size(); ++ci) {
      if (cands[ci].r != r) continue;
      std::vector<ExactMatrix> shifted = ops;
      shifted[0].add_scaled(-chis[ci].chi0, ExactMatrix::identity(k));
      shifted[1].add_scaled(-chis[ci].chi1, ExactMatrix::identity(k));
      shifted[2].add_scaled(-chis[ci].chi2, ExactMatrix::identity(k));
      Subspace joint = joint_kernel(shifted, k);
      if (joint.dim() == 0) continue;
      found += joint.dim();
      std::vector<Vector> vecs;
      for (const auto& c : joint.basis()) {
        Vector v(m);
        for (std::size_t j = 0; j < k; ++j)
          if (!c[j].is_zero()) axpy(v, c[j], kr[j]);
        vecs.push_back(std::move(v));
      }
      rref_in_place(vecs, m);
      HomogeneousComponent comp;
      comp.triple = cands[ci];
      comp.chi = chis[ci];
      comp.multiplicity = vecs.size();
      for (const auto& v : vecs) comp.endpoint_basis.push_back(ctx.embed_from_shell(v, r));
      dec.components.push_back(std::move(comp));
    }
    if (found != k && kernel_witness.empty())
      kernel_witness = "endpoint " + std::to_string(r) + ": " + std::to_string(found) + " of " +
                       std::to_string(k) + " dimensions assigned";
  }
  dec.checks.push_back(make_check("decompose.kernel_exhausted",
                                  "ker L on each E*_r V splits into the joint eigenspaces of C0, C1, C2",
                                  kernel_witness.empty(), kernel_witness));

  // Generators: C_k u = chi_k u and L u = 0.  Raising: L^i R^i acts on
  // E*_r V_lambda as a nonzero scalar, and R^{d+1} kills it.
  std::string eig_w, raise_w;
  for (const auto& comp : dec.components) {
    const Triple& w = comp.triple;
    std::vector<ExactScalar> ratio(w.d + 1);
    for (std::size_t j = 0; j < comp.endpoint_basis.size(); ++j) {
      const Vector& u = comp.endpoint_basis[j];
      const ExactScalar* chi[3] = {&comp.chi.chi0, &comp.chi.chi1, &comp.chi.chi2};
      for (int c = 0; c < 3 && eig_w.empty(); ++c)
        if (apply_central(ctx, c, u) != scaled(u, *chi[c]))
          eig_w = w.to_string() + " generator " + std::to_string(j) + " C" + std::to_string(c);
      if (eig_w.empty() && !is_zero_vector(ctx.L.apply(u)))
        eig_w = w.to_string() + " generator " + std::to_string(j) + " not in ker L";

      std::size_t p = 0;
      while (u[p].is_zero()) ++p;
      Vector cur = u;
      for (int i = 1; i <= w.d + 1 && raise_w.empty(); ++i) {
        cur = ctx.R.apply(cur);
        if (i == w.d + 1) {
          if (!is_zero_vector(cur)) raise_w = w.to_string() + " R^{d+1} u nonzero";
          break;
        }
        Vector back = cur;
        for (int s = 0; s < i; ++s) back = ctx.L.apply(back);
        ExactScalar s = back[p] / u[p];
        if (j == 0) ratio[i] = s;
        if (s.is_zero() || s != ratio[i] || back != scaled(u, s))
          raise_w = w.to_string() + " L^" + std::to_string(i) + "R^" + std::to_string(i) + " on generator " +
                    std::to_string(j);
      }
    }
  }
  dec.checks.push_back(make_check("decompose.generators",
                                  "C_k acts on E*_r V_lambda as chi_k(r,t,d), inside ker L", eig_w.empty(),
                                  eig_w));
  dec.checks.push_back(make_check("decompose.raising",
                                  "L^i R^i is a nonzero scalar on E*_r V_lambda for i <= d and R^{d+1} = 0",
                                  raise_w.empty(), raise_w));

  std::size_t total = 0;
  std::string feas_w;
  for (const auto& c : dec.components) {
    total += c.dim();
    const Triple& w = c.triple;
    if (!(w.r + w.d <= D && w.t + w.d <= D && w.r + w.t + w.d >= D)) feas_w = w.to_string();
  }
  dec.checks.push_back(make_check("decompose.dimension_sum", "sum of dim V_lambda = |X|", total == n,
                                  std::to_string(total) + " vs " + std::to_string(n)));
  dec.checks.push_back(make_check("decompose.feasible", "r + d <= D, t + d <= D, r + t + d >= D",
                                  feas_w.empty(), feas_w));
  dec.checks.push_back(make_check("decompose.multiplicity", "dim V_lambda / (d+1) is an integer", true));

  if (thorough) {
    std::vector<std::vector<Vector>> bases;
    std::string w;
    for (const auto& comp : dec.components) {
      bases.push_back(component_basis(ctx, comp));
      const ExactScalar* chi[3] = {&comp.chi.chi0, &comp.chi.chi1, &comp.chi.chi2};
      for (const auto& v : bases.back()) {
        Vector av = ctx.A.apply(v);
        for (int c = 0; c < 3 && w.empty(); ++c) {
          if (apply_central(ctx, c, v) != scaled(v, *chi[c])) w = comp.triple.to_string() + " basis vector";
          if (apply_central(ctx, c, av) != scaled(av, *chi[c])) w = comp.triple.to_string() + " A-image";
        }
      }
    }
    dec.checks.push_back(make_check("decompose.thorough.eigen",
                                    "every basis vector of V_lambda and its A-image lie in the chi eigenspace",
                                    w.empty(), w));
    std::string ow;
    for (std::size_t i = 0; i < bases.size() && ow.empty(); ++i)
      for (std::size_t j = i + 1; j < bases.size() && ow.empty(); ++j)
        for (const auto& u : bases[i]) {
          for (const auto& v : bases[j])
            if (!dot(u, v).is_zero()) {
              ow = dec.components[i].triple.to_string() + " vs " + dec.components[j].triple.to_string();
              break;
            }
          if (!ow.empty()) break;
        }
    dec.checks.push_back(make_check("decompose.thorough.orthogonal", "distinct components are orthogonal",
                                    ow.empty(), ow));
    std::vector<Vector> all;
    for (const auto& b : bases) all.insert(all.end(), b.begin(), b.end());
    std::size_t rk = Subspace::span(n, all).dim();
    dec.checks.push_back(make_check("decompose.thorough.spans", "the component bases together span V",
                                    rk == n, std::to_string(rk) + " vs " + std::to_string(n)));
  }
  return dec;
}

std::vector<Vector> component_basis(const TerwilligerContext& ctx, const HomogeneousComponent& c) {
  std::vector<Vector> out;
  for (const auto& u : c.endpoint_basis) {
    Vector cur = u;
    out.push_back(cur);
    for (int i = 1; i <= c.triple.d; ++i) {
      cur = ctx.R.apply(cur);
      out.push_back(cur);
    }
  }
  return out;
}

std::vector<std::pair<Triple, std::size_t>> feasible_multiset(const Decomposition& dec) {
  std::vector<std::pair<Triple, std::size_t>> out;
  for (const auto& c : dec.components) out.emplace_back(c.triple, c.multiplicity);
  std::sort(out.begin(), out.end());
  return out;
}

ComponentScalars component_scalars(const TerwilligerContext& ctx, const Triple& w) {
  ComponentScalars s;
  s.upsilon = ctx.qp(w.r + w.t + w.d - ctx.D);
  s.psi = ctx.qp(w.r - w.t);
  ExactScalar diff = ctx.q - ctx.qp(-1);
  s.lambda = (ctx.qp(w.d + 1) + ctx.qp(-w.d - 1)) / (diff * diff);
  return s;
}

AwModuleScalars aw_module_scalars(const TerwilligerContext& ctx, const Triple& w) {
  long te = ctx.spec.two_e, D = ctx.D;
  auto bp = [&](long twice) { return ctx.qp(twice); };
  ExactScalar one(1), b = bp(2);
  const auto& td = ctx.td;
  ExactScalar diff = bp(te + 2 * (D - w.d - w.t - w.r)) - bp(2 * (w.t - w.r));
  AwModuleScalars s;
  s.omega = ctx.xi * (bp(-2) - one) * diff - ExactScalar(2) * td.gamma * ctx.zeta;
  s.eta = ctx.xi * bp(-2) * (one - bp(te)) * diff -
          ctx.xi * bp(te + 2 * (D - w.d - w.r - 2)) * (b + one) * (bp(2 * (w.d + 1)) + one) - td.varrho * ctx.zeta;
  s.eta_star = -td.gamma * ctx.zeta * ctx.zeta - ctx.zeta * s.omega;
  return s;
}

CheckList verify_upsilon_psi_lambda_scalars(const TerwilligerContext& ctx, const Decomposition& dec) {
  ExactScalar one(1), q2 = ctx.qp(2), qm2 = ctx.qp(-2), q2e = ctx.q2e(), q4 = ctx.qp(4);
  const auto& td = ctx.td;
  const auto &xi = ctx.xi, &zeta = ctx.zeta;
  long te = ctx.spec.two_e, D = ctx.D;
  ExactScalar sq = (q2 - one) * (q2 - one);
  CheckList parts[7];
  const char* ids[7] = {"ypl.c0", "ypl.c1", "ypl.c2", "ypl.omega", "ypl.g", "ypl.gstar", "ypl.upsilon_psi"};
  const char* anchors[7] = {
      "C0 = (q^2-1)^{-1}(q^{2e} Upsilon^{-2} - Psi^{-2})",
      "C1 = q^{2e+D-3}(q^2-1)(q^2+1)^{-1} Upsilon^{-1} Psi^{-1} Lambda",
      "C2 = q^{2e-2}(q^4-1)^{-1} Upsilon^{-2} Psi^{-2}",
      "Omega = xi(q^{-2}-1)(q^{2e} Upsilon^{-2} - Psi^{-2}) - 2 gamma zeta I = omega(W) on each module",
      "G = xi q^{-2}(1-q^{2e})(q^{2e} Upsilon^{-2} - Psi^{-2}) - xi q^{D+2e-5}(q^2-1)^2(q^2+1) Upsilon^{-1} "
      "Psi^{-1} Lambda - varrho zeta I = eta(W) on each module",
      "G* = zeta xi(1-q^{-2})(q^{2e} Upsilon^{-2} - Psi^{-2}) + gamma zeta^2 I = eta*(W) on each module",
      "Upsilon, Psi act as q^{r+t+d-D}, q^{r-t}; Lambda as (q^{d+1}+q^{-d-1})/(q-q^{-1})^2"};
  for (const auto& comp : dec.components) {
    const Triple& w = comp.triple;
    auto s = component_scalars(ctx, w);
    ExactScalar ui = s.upsilon.inverse(), pi = s.psi.inverse();
    ExactScalar combo = q2e * ui * ui - pi * pi;
    std::string tw = w.to_string();
    parts[0].push_back(check_scalars(tw, "", comp.chi.chi0, combo / (q2 - one)));
    parts[1].push_back(check_scalars(
        tw, "", comp.chi.chi1, ctx.qp(te + D - 3) * (q2 - one) / (q2 + one) * ui * pi * s.lambda));
    parts[2].push_back(check_scalars(tw, "", comp.chi.chi2, ctx.qp(te - 2) / (q4 - one) * ui * ui * pi * pi));

    auto mod = aw_module_scalars(ctx, w);
    ExactScalar om_c = -xi * qm2 * sq * comp.chi.chi0 - ExactScalar(2) * td.gamma * zeta;
    ExactScalar om_y = xi * (qm2 - one) * combo - ExactScalar(2) * td.gamma * zeta;
    parts[3].push_back(check_scalars(tw + " via C0", "", om_c, mod.omega));
    parts[3].push_back(check_scalars(tw + " via Upsilon, Psi", "", om_y, mod.omega));

    ExactScalar g_c = xi * (qm2 - one) * (q2e - one) * comp.chi.chi0 +
                      xi * (qm2 - one) * (q2 + one) * (q2 + one) * comp.chi.chi1 - td.varrho * zeta;
    ExactScalar g_y = xi * qm2 * (one - q2e) * combo -
                      xi * ctx.qp(D + te - 5) * sq * (q2 + one) * ui * pi * s.lambda - td.varrho * zeta;
    parts[4].push_back(check_scalars(tw + " via C0, C1", "", g_c, mod.eta));
    parts[4].push_back(check_scalars(tw + " via Upsilon, Psi, Lambda", "", g_y, mod.eta));

    ExactScalar gs_c = zeta * xi * qm2 * sq * comp.chi.chi0 + td.gamma * zeta * zeta;
    ExactScalar gs_y = zeta * xi * (one - qm2) * combo + td.gamma * zeta * zeta;
    parts[5].push_back(check_scalars(tw + " via C0", "", gs_c, mod.eta_star));
    parts[5].push_back(check_scalars(tw + " via Upsilon, Psi", "", gs_y, mod.eta_star));

    parts[6].push_back(make_check(tw, "", w.r + w.t + w.d - D >= 0 && w.r - w.t >= -D, "displacement range"));
  }
  CheckList out;
  for (int i = 0; i < 7; ++i) out.push_back(fold_checks(ids[i], anchors[i], parts[i]));

  // Lambda separates diameters.
  std::set<int> diams;
  for (const auto& c : dec.components) diams.insert(c.triple.d);
  std::string w;
  for (int a : diams)
    for (int b : diams)
      if (a < b && component_scalars(ctx, {0, 0, a}).lambda == component_scalars(ctx, {0, 0, b}).lambda)
        w = std::to_string(a) + "," + std::to_string(b);
  out.push_back(make_check("ypl.lambda_distinct", "eigenvalues of Lambda are distinct across diameters",
                           w.empty(), w));
  return out;
}

CentralMatrices upsilon_psi_lambda(const TerwilligerContext& ctx, const Decomposition& dec) {
  std::size_t n = ctx.n();
  CentralMatrices cm;
  cm.Upsilon = cm.Upsilon_inv = cm.Psi = cm.Psi_inv = cm.Lambda = ExactMatrix(n, n);
  for (const auto& comp : dec.components) {
    ExactMatrix P = orthogonal_projector(Subspace::span(n, component_basis(ctx, comp)));
    auto s = component_scalars(ctx, comp.triple);
    cm.Upsilon.add_scaled(s.upsilon, P);
    cm.Upsilon_inv.add_scaled(s.upsilon.inverse(), P);
    cm.Psi.add_scaled(s.psi, P);
    cm.Psi_inv.add_scaled(s.psi.inverse(), P);
    cm.Lambda.add_scaled(s.lambda, P);
    cm.projectors.push_back(std::move(P));
  }
  return cm;
}

CheckList verify_upsilon_psi_lambda(const TerwilligerContext& ctx, const CentralElements& ce,
                                    const CentralMatrices& cm) {
  CheckList out;
  std::size_t n = ctx.n();
  ExactMatrix I = ExactMatrix::identity(n), zero(n, n);
  ExactMatrix sum(n, n);
  for (const auto& P : cm.projectors) sum += P;
  out.push_back(check_matrices("ypl.projector_sum", "sum of E_lambda = I", sum, I));

  const std::pair<const char*, const ExactMatrix*> named[3] = {
      {"Upsilon", &cm.Upsilon}, {"Psi", &cm.Psi}, {"Lambda", &cm.Lambda}};
  for (const auto& [name, m] : named) {
    std::string id = std::string("ypl.") + name;
    out.push_back(check_matrices(id + ".commutes_a", std::string(name) + " commutes with A",
                                 commutator(*m, ctx.A), zero));
    out.push_back(check_matrices(id + ".commutes_astar", std::string(name) + " commutes with A*",
                                 commutator(*m, ctx.A_star), zero));
  }
  out.push_back(check_matrices("ypl.upsilon_inverse", "Upsilon Upsilon^{-1} = I", cm.Upsilon * cm.Upsilon_inv, I));
  out.push_back(check_matrices("ypl.psi_inverse", "Psi Psi^{-1} = I", cm.Psi * cm.Psi_inv, I));

  ExactScalar one(1), q2 = ctx.qp(2), qm2 = ctx.qp(-2), q2e = ctx.q2e(), q4 = ctx.qp(4);
  long te = ctx.spec.two_e, D = ctx.D;
  const auto& td = ctx.td;
  const auto &xi = ctx.xi, &zeta = ctx.zeta;
  ExactMatrix Ui2 = cm.Upsilon_inv * cm.Upsilon_inv, Pi2 = cm.Psi_inv * cm.Psi_inv;
  ExactMatrix combo = q2e * Ui2 - Pi2;
  ExactMatrix UPL = cm.Upsilon_inv * cm.Psi_inv * cm.Lambda;
  ExactScalar sq = (q2 - one) * (q2 - one);
  out.push_back(check_matrices("ypl.matrix.c0", "C0 = (q^2-1)^{-1}(q^{2e} Upsilon^{-2} - Psi^{-2})", ce.C0,
                               (one / (q2 - one)) * combo));
  out.push_back(check_matrices("ypl.matrix.c1", "C1 = q^{2e+D-3}(q^2-1)(q^2+1)^{-1} Upsilon^{-1} Psi^{-1} Lambda",
                               ce.C1, (ctx.qp(te + D - 3) * (q2 - one) / (q2 + one)) * UPL));
  out.push_back(check_matrices("ypl.matrix.c2", "C2 = q^{2e-2}(q^4-1)^{-1} Upsilon^{-2} Psi^{-2}", ce.C2,
                               (ctx.qp(te - 2) / (q4 - one)) * (Ui2 * Pi2)));
  out.push_back(check_matrices("ypl.matrix.omega", "Omega = xi(q^{-2}-1)(q^{2e} Upsilon^{-2} - Psi^{-2}) - 2 gamma zeta I",
                               ce.Omega,
                               (xi * (qm2 - one)) * combo - ExactMatrix::scalar(n, ExactScalar(2) * td.gamma * zeta)));
  out.push_back(check_matrices(
      "ypl.matrix.g",
      "G = xi q^{-2}(1-q^{2e})(q^{2e} Upsilon^{-2} - Psi^{-2}) - xi q^{D+2e-5}(q^2-1)^2(q^2+1) Upsilon^{-1} Psi^{-1} "
      "Lambda - varrho zeta I",
      ce.G,
      (xi * qm2 * (one - q2e)) * combo - (xi * ctx.qp(D + te - 5) * sq * (q2 + one)) * UPL -
          ExactMatrix::scalar(n, td.varrho * zeta)));
  out.push_back(check_matrices("ypl.matrix.gstar",
                               "G* = zeta xi(1-q^{-2})(q^{2e} Upsilon^{-2} - Psi^{-2}) + gamma zeta^2 I", ce.G_star,
                               (zeta * xi * (one - qm2)) * combo + ExactMatrix::scalar(n, td.gamma * zeta * zeta)));
  return out;
}

void module_intersection_numbers(const TerwilligerContext& ctx, const Triple& w, Vector& a, Vector& b,
                                 Vector& c, Vector& a_star, Vector& b_star, Vector& c_star) {
  long te = ctx.spec.two_e, D = ctx.D;
  long r = w.r, t = w.t, d = w.d;
  auto bp = [&](long twice) { return ctx.qp(twice); };
  ExactScalar one(1), bm1 = bp(2) - one;
  a.assign(d + 1, {});
  b.assign(d + 1, {});
  c.assign(d + 1, {});
  a_star.assign(d + 1, {});
  b_star.assign(d + 1, {});
  c_star.assign(d + 1, {});
  for (long i = 0; i <= d; ++i) {
    c[i] = bp(2 * t) * (bp(2 * i) - one) / bm1;
    b[i] = bp(2 * (D - d - t + i) + te) * (bp(2 * (d - i)) - one) / bm1;
    a[i] = (bp(2 * (D - d - t + i) + te) - bp(te) - bp(2 * (t + i)) + one) / bm1;
    c_star[i] = ctx.xi * bp(-2 * (r + i)) * (bp(2 * i) - one) * (bp(2 * (D - 2 * t - d - i) + te) + one) /
                ((bp(2 * (D - 2 * t - 2 * i) + te) + one) * (bp(2 * (D - 2 * t - 2 * i + 1) + te) + one));
    b_star[i] = ctx.xi * bp(-2 * r) * (one - bp(2 * (i - d))) * (bp(2 * (-D + 2 * t + i) - te) + one) /
                ((bp(2 * (-D + 2 * t + 2 * i) - te) + one) * (bp(2 * (-D + 2 * t + 2 * i + 1) - te) + one));
    a_star[i] = ctx.bm.theta_star[r] - b_star[i] - c_star[i];
  }
}

TModuleRecord extract_module(const TerwilligerContext& ctx, const HomogeneousComponent& comp, const Vector& seed) {
  TModuleRecord rec;
  const Triple& w = comp.triple;
  rec.triple = w;
  int r = w.r, t = w.t, d = w.d, D = ctx.D;
  std::size_t n = ctx.n();
  BoseMesnerAlgebra M(ctx.data);
  const Graph& g = *ctx.graph;

  if (is_zero_vector(seed)) throw std::invalid_argument("seed vector is zero");
  for (std::size_t y = 0; y < n; ++y)
    if (!seed[y].is_zero() && ctx.level[y] != r)
      throw std::invalid_argument("seed vector is not in E*_r V");

  // Dual standard basis E_{t+i} seed; the other idempotents must kill the seed.
  std::string w_dual;
  for (int j = 0; j <= D; ++j) {
    Vector v = M.apply(ctx.bm.idempotent[j], g, seed);
    bool inside = j >= t && j <= t + d;
    if (inside) {
      if (is_zero_vector(v)) w_dual = "E_" + std::to_string(j) + " seed = 0";
      rec.dual_standard_basis.push_back(std::move(v));
    } else if (!is_zero_vector(v)) {
      w_dual = "E_" + std::to_string(j) + " seed != 0";
    }
  }
  rec.checks.push_back(make_check("module.dual_support", "E_j v != 0 exactly for t <= j <= t + d", w_dual.empty(),
                                  w_dual));
  if (!w_dual.empty()) throw std::runtime_error("seed generates a module of the wrong shape " + w.to_string());

  // Standard basis E*_{r+i} u with u = E_t seed in E_t W.
  const Vector& u = rec.dual_standard_basis[0];
  std::string w_std;
  for (std::size_t y = 0; y < n; ++y)
    if (!u[y].is_zero() && (ctx.level[y] < r || ctx.level[y] > r + d)) w_std = "support outside levels r..r+d";
  for (int i = 0; i <= d; ++i) {
    Vector v(n);
    for (auto y : ctx.shells[r + i]) v[y] = u[y];
    if (is_zero_vector(v)) w_std = "E*_" + std::to_string(r + i) + " u = 0";
    rec.standard_basis.push_back(std::move(v));
  }
  rec.checks.push_back(make_check("module.standard_support", "E*_j u != 0 exactly for r <= j <= r + d",
                                  w_std.empty(), w_std));
  if (!w_std.empty()) throw std::runtime_error("module standard basis degenerate " + w.to_string());

  auto images = [&](const ExactMatrix& m, const std::vector<Vector>& basis) {
    std::vector<Vector> out;
    for (const auto& v : basis) out.push_back(m.apply(v));
    return out;
  };
  const auto& sb = rec.standard_basis;
  const auto& db = rec.dual_standard_basis;
  rec.A_std = represent(sb, images(ctx.A, sb));
  rec.A_star_std = represent(sb, images(ctx.A_star, sb));
  rec.L_std = represent(sb, images(ctx.L, sb));
  rec.F_std = represent(sb, images(ctx.F, sb));
  rec.R_std = represent(sb, images(ctx.R, sb));
  rec.K_inv_std = represent(sb, images(ctx.K_inv, sb));
  for (int i = 0; i <= d; ++i) {
    std::vector<Vector> img;
    for (const auto& v : sb) img.push_back(M.apply(ctx.bm.idempotent[t + i], g, v));
    rec.E_std.push_back(represent(sb, img));
  }
  rec.A_star_dual = represent(db, images(ctx.A_star, db));
  ExactMatrix A_dual = represent(db, images(ctx.A, db));

  std::size_t m = d + 1;
  Vector theta_t(m), theta_star_r(m);
  for (int i = 0; i <= d; ++i) {
    theta_t[i] = ctx.bm.theta[t + i];
    theta_star_r[i] = ctx.bm.theta_star[r + i];
  }
  rec.checks.push_back(check_matrices("module.astar_diagonal", "A* diagonal on the standard basis",
                                      rec.A_star_std, ExactMatrix::diagonal(theta_star_r)));
  rec.checks.push_back(check_matrices("module.a_diagonal", "A diagonal on the dual standard basis", A_dual,
                                      ExactMatrix::diagonal(theta_t)));

  auto tridiagonal = [&](const ExactMatrix& mat, const ExactScalar& rowsum, Vector& aa, Vector& bb, Vector& cc,
                         const std::string& id, const std::string& anchor) {
    aa.assign(m, {});
    bb.assign(m, {});
    cc.assign(m, {});
    std::string wit;
    for (std::size_t i = 0; i < m; ++i) {
      ExactScalar sum;
      for (const auto& e : mat.row(i)) {
        long off = static_cast<long>(e.col) - static_cast<long>(i);
        if (off > 1 || off < -1) wit = "entry " + tag(i, e.col) + " off the tridiagonal";
        sum += e.val;
      }
      aa[i] = mat.at(i, i);
      if (i + 1 < m) bb[i] = mat.at(i, i + 1);
      if (i >= 1) cc[i] = mat.at(i, i - 1);
      if (i + 1 < m && (bb[i].is_zero() || mat.at(i + 1, i).is_zero())) wit = "vanishing off-diagonal at " + std::to_string(i);
      if (sum != rowsum) wit = "row " + std::to_string(i) + " sums to " + sum.to_string();
    }
    rec.checks.push_back(make_check(id, anchor, wit.empty(), wit));
  };
  tridiagonal(rec.A_std, ctx.bm.theta[t], rec.a, rec.b, rec.c, "module.a_tridiagonal",
              "A irreducible tridiagonal with row sum theta_t on the standard basis");
  tridiagonal(rec.A_star_dual, ctx.bm.theta_star[r], rec.a_star, rec.b_star, rec.c_star, "module.astar_tridiagonal",
              "A* irreducible tridiagonal with row sum theta*_r on the dual standard basis");

  Vector a, b, c, as, bs, cs;
  module_intersection_numbers(ctx, w, a, b, c, as, bs, cs);
  rec.checks.push_back(check_vectors("module.c", "c_i(W) = b^t(b^i-1)/(b-1)", rec.c, c));
  rec.checks.push_back(check_vectors("module.b", "b_i(W) = b^{D+e-d-t+i}(b^{d-i}-1)/(b-1)", rec.b, b));
  rec.checks.push_back(check_vectors("module.a", "a_i(W) = (b^{D+e-d-t+i} - b^e - b^{t+i} + 1)/(b-1)", rec.a, a));
  rec.checks.push_back(check_vectors(
      "module.c_star",
      "c*_i(W) = xi b^{-r-i}(b^i-1)(b^{D+e-2t-d-i}+1)/((b^{D+e-2t-2i}+1)(b^{D+e-2t-2i+1}+1))", rec.c_star, cs));
  rec.checks.push_back(check_vectors(
      "module.b_star",
      "b*_i(W) = xi b^{-r}(1-b^{i-d})(b^{-D-e+2t+i}+1)/((b^{-D-e+2t+2i}+1)(b^{-D-e+2t+2i+1}+1))", rec.b_star, bs));
  rec.checks.push_back(check_vectors("module.a_star", "a*_i(W) = theta*_r - b*_i(W) - c*_i(W)", rec.a_star, as));
  return rec;
}

}  // namespace dpg
