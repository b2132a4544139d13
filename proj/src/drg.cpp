#include "dpg/drg.hpp"

#include <algorithm>

namespace dpg {

IntersectionData verify_distance_regular(const Graph& g) {
  std::size_t n = g.n;
  for (auto v : g.dist)
    if (v == 255) throw NotDistanceRegular("graph is not connected");
  int D = g.diameter;
  std::size_t w = static_cast<std::size_t>(D) + 1;
  IntersectionData data;
  data.D = D;
  data.p.assign(w, std::vector<std::vector<long>>(w, std::vector<long>(w, -1)));
  std::vector<bool> have(w, false);
  std::vector<long> counts(w * w);
  for (std::size_t x = 0; x < n; ++x) {
    const std::uint8_t* dx = &g.dist[x * n];
    for (std::size_t y = x; y < n; ++y) {
      const std::uint8_t* dy = &g.dist[y * n];
      std::fill(counts.begin(), counts.end(), 0);
      for (std::size_t z = 0; z < n; ++z) ++counts[dx[z] * w + dy[z]];
      std::size_t h = dx[y];
      if (!have[h]) {
        for (std::size_t i = 0; i < w; ++i)
          for (std::size_t j = 0; j < w; ++j) data.p[h][i][j] = counts[i * w + j];
        have[h] = true;
        continue;
      }
      for (std::size_t i = 0; i < w; ++i)
        for (std::size_t j = 0; j < w; ++j)
          if (data.p[h][i][j] != counts[i * w + j])
            throw NotDistanceRegular("p^" + std::to_string(h) + "_" + std::to_string(i) + std::to_string(j) +
                                     " differs at x=" + std::to_string(x) + ", y=" + std::to_string(y) +
                                     ": " + std::to_string(counts[i * w + j]) + " vs " +
                                     std::to_string(data.p[h][i][j]));
    }
  }
  // unordered pairs were scanned, so each p^h must be symmetric in i, j
  for (std::size_t h = 0; h < w; ++h)
    for (std::size_t i = 0; i < w; ++i)
      for (std::size_t j = 0; j < w; ++j)
        if (data.p[h][i][j] != data.p[h][j][i])
          throw NotDistanceRegular("p^" + std::to_string(h) + " is not symmetric");
  data.c.assign(w, 0);
  data.a.assign(w, 0);
  data.b.assign(w, 0);
  data.sizes.assign(w, 0);
  for (std::size_t i = 0; i < w; ++i) {
    data.sizes[i] = data.p[0][i][i];
    if (i > 0) data.c[i] = data.p[i][i - 1][1];
    data.a[i] = data.p[i][i][1];
    if (i + 1 < w) data.b[i] = data.p[i][i + 1][1];
  }
  return data;
}

Vector BoseMesnerAlgebra::one() const {
  Vector v(static_cast<std::size_t>(data_.D) + 1);
  v[0] = 1;
  return v;
}

Vector BoseMesnerAlgebra::adjacency() const {
  Vector v(static_cast<std::size_t>(data_.D) + 1);
  if (data_.D >= 1) v[1] = 1;
  return v;
}

Vector BoseMesnerAlgebra::multiply(const Vector& x, const Vector& y) const {
  std::size_t w = static_cast<std::size_t>(data_.D) + 1;
  Vector r(w);
  for (std::size_t i = 0; i < w; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < w; ++j) {
      if (y[j].is_zero()) continue;
      ExactScalar xy = x[i] * y[j];
      for (std::size_t h = 0; h < w; ++h)
        if (data_.p[h][i][j] != 0) r[h].add_product(xy, ExactScalar(data_.p[h][i][j]));
    }
  }
  return r;
}

Vector BoseMesnerAlgebra::hadamard(const Vector& x, const Vector& y) const {
  Vector r(x.size());
  for (std::size_t h = 0; h < x.size(); ++h) r[h] = x[h] * y[h];
  return r;
}

ExactMatrix BoseMesnerAlgebra::materialize(const Vector& x, const Graph& g) const {
  ExactMatrix m(g.n, g.n);
  for (std::size_t y = 0; y < g.n; ++y) {
    std::vector<MatEntry> row;
    for (std::size_t z = 0; z < g.n; ++z) {
      const ExactScalar& v = x[g.d(y, z)];
      if (!v.is_zero()) row.push_back({static_cast<std::uint32_t>(z), v});
    }
    m.set_row(y, std::move(row));
  }
  return m;
}

Vector BoseMesnerAlgebra::apply(const Vector& x, const Graph& g, const Vector& v) const {
  std::size_t w = static_cast<std::size_t>(data_.D) + 1;
  Vector out(g.n);
  Vector sums(w);
  for (std::size_t y = 0; y < g.n; ++y) {
    for (auto& s : sums) s = ExactScalar();
    for (std::size_t z = 0; z < g.n; ++z)
      if (!v[z].is_zero()) sums[g.d(y, z)] += v[z];
    for (std::size_t h = 0; h < w; ++h)
      if (!x[h].is_zero() && !sums[h].is_zero()) out[y].add_product(x[h], sums[h]);
  }
  return out;
}

namespace {

// b^{t/2} = q^t
struct BPow {
  explicit BPow(const FormSpec& s) : qp(s.q()) {}
  ExactScalar operator()(long twice) const { return qp(twice); }
  QPowers qp;
};

}  // namespace

Vector dpg_eigenvalues(const FormSpec& s) {
  BPow B(s);
  ExactScalar b(static_cast<long>(s.b));
  Vector th;
  for (int i = 0; i <= s.D; ++i)
    th.push_back((ExactScalar(1) - B(s.two_e) + B(2 * s.D + s.two_e - 2 * i) - B(2 * i)) / (b - 1));
  return th;
}

std::vector<Rational> dpg_multiplicities(const FormSpec& s) {
  BPow B(s);
  std::vector<Rational> m;
  int D = s.D, e2 = s.two_e;
  for (int i = 0; i <= D; ++i) {
    ExactScalar v = B(2 * i);
    for (int j = D - i + 1; j <= D; ++j) v *= B(2 * j) - 1;
    for (int j = 1; j <= i; ++j) v /= B(2 * j) - 1;
    v *= (ExactScalar(1) + B(2 * D + e2 - 4 * i)) / (ExactScalar(1) + B(2 * D + e2 - 2 * i));
    for (int j = 1; j <= i; ++j) v *= (ExactScalar(1) + B(2 * D + e2 - 2 * j)) / (ExactScalar(1) + B(2 * j - e2));
    if (!v.is_rational()) throw std::logic_error("irrational multiplicity");
    m.push_back(v.rational_part());
  }
  return m;
}

ExactScalar dpg_zeta(const FormSpec& s) {
  BPow B(s);
  ExactScalar b(static_cast<long>(s.b));
  return -b * (B(2 * s.D + s.two_e - 4) + 1) / (b - 1);
}

ExactScalar dpg_xi(const FormSpec& s) {
  BPow B(s);
  ExactScalar b(static_cast<long>(s.b));
  return b * b * (B(2 * s.D + s.two_e - 4) + 1) * (B(2 * s.D + s.two_e - 2) + 1) /
         ((b - 1) * (B(s.two_e) + b));
}

Vector dpg_dual_eigenvalues(const FormSpec& s) {
  BPow B(s);
  ExactScalar zeta = dpg_zeta(s), xi = dpg_xi(s);
  Vector ts;
  for (int i = 0; i <= s.D; ++i) ts.push_back(zeta + xi * B(-2 * i));
  return ts;
}

void dpg_intersection_numbers(const FormSpec& s, std::vector<Rational>& c, std::vector<Rational>& a,
                              std::vector<Rational>& b) {
  BPow B(s);
  ExactScalar bb(static_cast<long>(s.b));
  c.clear();
  a.clear();
  b.clear();
  for (int i = 0; i <= s.D; ++i) {
    ExactScalar ci = (B(2 * i) - 1) / (bb - 1);
    ExactScalar bi = B(2 * i + s.two_e) * (B(2 * (s.D - i)) - 1) / (bb - 1);
    ExactScalar ai = (B(s.two_e) - 1) * (B(2 * i) - 1) / (bb - 1);
    if (!ci.is_rational() || !bi.is_rational() || !ai.is_rational())
      throw std::logic_error("irrational intersection number");
    c.push_back(ci.rational_part());
    b.push_back(bi.rational_part());
    a.push_back(ai.rational_part());
  }
}

TdScalars td_scalars(const FormSpec& s) {
  BPow B(s);
  ExactScalar b(static_cast<long>(s.b));
  ExactScalar be = B(s.two_e), bde2 = B(2 * s.D + s.two_e - 4);
  TdScalars t;
  t.beta = b + b.inverse();
  t.gamma = (be - 1) * (b - 1) / b;
  t.gamma_star = (b - 1) * (bde2 + 1);
  t.varrho = (be - 1) * (be - 1) / b + bde2 * (b + 1) * (b + 1);
  t.varrho_star = b * (bde2 + 1) * (bde2 + 1);
  Vector th = dpg_eigenvalues(s), ts = dpg_dual_eigenvalues(s);
  auto check = [&](const Vector& x, const ExactScalar& g, const ExactScalar& r, const char* which) {
    int D = s.D;
    for (int i = 2; i <= D - 1; ++i)
      if ((x[i - 2] - x[i + 1]) / (x[i - 1] - x[i]) != t.beta + 1)
        throw std::logic_error(std::string("beta recurrence fails for ") + which + " at i=" + std::to_string(i));
    for (int i = 1; i <= D - 1; ++i)
      if (x[i - 1] - t.beta * x[i] + x[i + 1] != g)
        throw std::logic_error(std::string("gamma recurrence fails for ") + which + " at i=" + std::to_string(i));
    for (int i = 1; i <= D; ++i)
      if (x[i - 1] * x[i - 1] - t.beta * x[i - 1] * x[i] + x[i] * x[i] - g * (x[i - 1] + x[i]) != r)
        throw std::logic_error(std::string("varrho recurrence fails for ") + which + " at i=" + std::to_string(i));
  };
  check(th, t.gamma, t.varrho, "theta");
  check(ts, t.gamma_star, t.varrho_star, "theta*");
  return t;
}

std::string krein_pattern_violation(const std::vector<std::vector<std::vector<Rational>>>& krein) {
  int w = static_cast<int>(krein.size());
  for (int h = 0; h < w; ++h)
    for (int i = 0; i < w; ++i)
      for (int j = 0; j < w; ++j) {
        const Rational& v = krein[h][i][j];
        int mx = std::max({h, i, j});
        int rest = h + i + j - mx;
        std::string where = "q^" + std::to_string(h) + "_" + std::to_string(i) + std::to_string(j);
        if (mx > rest && sgn(v) != 0) return where + " should vanish";
        if (mx == rest && sgn(v) == 0) return where + " should be nonzero";
      }
  return "";
}

BoseMesnerData spectral_data(const Graph& g, const IntersectionData& data, const FormSpec& s) {
  auto fail = [](const std::string& m) { throw std::runtime_error("spectral data: " + m); };
  if (data.D != s.D) fail("graph diameter differs from the form diameter");
  BoseMesnerAlgebra M(data);
  std::size_t w = static_cast<std::size_t>(data.D) + 1;
  BoseMesnerData out;
  out.theta = dpg_eigenvalues(s);
  for (std::size_t i = 1; i < w; ++i)
    if (!(out.theta[i - 1] > out.theta[i])) fail("closed-form eigenvalues are not decreasing");
  Vector A = M.adjacency();
  for (std::size_t i = 0; i < w; ++i) {
    Vector e = M.one();
    ExactScalar denom(1);
    for (std::size_t j = 0; j < w; ++j) {
      if (j == i) continue;
      Vector f = A;
      f[0] -= out.theta[j];
      e = M.multiply(e, f);
      denom *= out.theta[i] - out.theta[j];
    }
    for (auto& x : e) x /= denom;
    out.idempotent.push_back(std::move(e));
  }
  Vector sum(w);
  for (std::size_t i = 0; i < w; ++i) {
    for (std::size_t h = 0; h < w; ++h) sum[h] += out.idempotent[i][h];
    Vector ae = M.multiply(A, out.idempotent[i]);
    for (std::size_t h = 0; h < w; ++h)
      if (ae[h] != out.theta[i] * out.idempotent[i][h]) fail("A E_i != theta_i E_i for i=" + std::to_string(i));
    for (std::size_t j = 0; j < w; ++j) {
      Vector ee = M.multiply(out.idempotent[i], out.idempotent[j]);
      for (std::size_t h = 0; h < w; ++h) {
        ExactScalar want = i == j ? out.idempotent[i][h] : ExactScalar();
        if (ee[h] != want) fail("E_i E_j != delta_ij E_i for i=" + std::to_string(i) + ", j=" + std::to_string(j));
      }
    }
  }
  if (sum != M.one()) fail("sum of idempotents is not I");
  ExactScalar nv(static_cast<long>(g.n));
  std::vector<Rational> closed_m = dpg_multiplicities(s);
  for (std::size_t i = 0; i < w; ++i) {
    ExactScalar tr = nv * out.idempotent[i][0];
    if (!tr.is_rational() || tr.rational_part().get_den() != 1) fail("non-integral trace of E_i");
    long mi = tr.rational_part().get_num().get_si();
    if (Rational(mi) != closed_m[i]) fail("rank of E_" + std::to_string(i) + " differs from closed form");
    out.multiplicity.push_back(mi);
  }
  // Krein parameters from E_i o E_j = |X|^{-1} sum_h q^h_ij E_h
  ExactMatrix basis(w, w);
  for (std::size_t h = 0; h < w; ++h)
    for (std::size_t l = 0; l < w; ++l) basis.set(h, l, out.idempotent[l][h]);
  out.krein.assign(w, std::vector<std::vector<Rational>>(w, std::vector<Rational>(w)));
  for (std::size_t i = 0; i < w; ++i)
    for (std::size_t j = 0; j < w; ++j) {
      Vector coeff = solve(basis, M.hadamard(out.idempotent[i], out.idempotent[j]));
      for (std::size_t h = 0; h < w; ++h) {
        ExactScalar qv = nv * coeff[h];
        if (!qv.is_rational()) fail("irrational Krein parameter");
        if (sgn(qv.rational_part()) < 0) fail("negative Krein parameter");
        out.krein[h][i][j] = qv.rational_part();
      }
    }
  std::string bad = krein_pattern_violation(out.krein);
  if (!bad.empty()) fail("Q-polynomial pattern: " + bad);
  if (w >= 2) {
    for (std::size_t i = 0; i < w; ++i) out.theta_star.push_back(nv * out.idempotent[1][i]);
    if (out.theta_star != dpg_dual_eigenvalues(s)) fail("dual eigenvalues differ from zeta + xi b^-i");
    if (out.theta_star[0] != ExactScalar(out.multiplicity[1])) fail("theta*_0 != m_1");
  }
  out.zeta = dpg_zeta(s);
  out.xi = dpg_xi(s);
  return out;
}

}  // namespace dpg
