#include "dpg/leonard.hpp"

#include <stdexcept>

#include "dpg/polar.hpp"

namespace dpg {

namespace {

std::string idx(int i) { return std::to_string(i); }

// (x - s_0)(x - s_1)...(x - s_{i-1})
ExactScalar partial_product(const Vector& s, int i, const ExactScalar& x) {
  ExactScalar p(1);
  for (int h = 0; h < i; ++h) p *= x - s[h];
  return p;
}

Vector reversed(const Vector& v) { return Vector(v.rbegin(), v.rend()); }

// Sum of column spaces of the given projectors.
Subspace image_sum(const std::vector<ExactMatrix>& E, int from, int to) {
  std::size_t n = E.empty() ? 0 : E[0].rows();
  Subspace s(n);
  for (int i = from; i <= to; ++i) s = s.plus(column_space(E[i]));
  return s;
}

// Eigenvalue of (A - a I)(A* - b I) on a one-dimensional subspace.
ExactScalar eigen_on(const LeonardRealization& real, const Subspace& u, const ExactScalar& a,
                     const ExactScalar& b, const std::string& what) {
  if (u.dim() != 1) throw SpectrumError(what + " has dimension " + std::to_string(u.dim()));
  const Vector& v = u.basis()[0];
  std::size_t n = v.size();
  Vector w = real.A_star.apply(v);
  for (std::size_t k = 0; k < n; ++k) w[k] -= b * v[k];
  Vector z = real.A.apply(w);
  for (std::size_t k = 0; k < n; ++k) z[k] -= a * w[k];
  std::size_t p = u.pivots()[0];
  ExactScalar s = z[p] / v[p];
  for (std::size_t k = 0; k < n; ++k)
    if (z[k] != s * v[k]) throw SpectrumError(what + ": product is not scalar");
  return s;
}

ExactMatrix unit_matrix(std::size_t n, std::size_t i) {
  ExactMatrix m(n, n);
  m.set(i, i, ExactScalar(1));
  return m;
}

}  // namespace

void check_shape(const ParameterArray& pa) {
  std::size_t d = static_cast<std::size_t>(pa.d);
  if (pa.d < 0 || pa.theta.size() != d + 1 || pa.theta_star.size() != d + 1 || pa.phi.size() != d ||
      pa.phi2.size() != d)
    throw InputError("parameter array of diameter " + std::to_string(pa.d) +
                     " needs d+1 eigenvalues, d+1 dual eigenvalues and d entries in each split sequence");
}

Verdict validate(const ParameterArray& pa) {
  check_shape(pa);
  int d = pa.d;
  auto fail = [](const char* cond, int i, std::string msg) {
    Verdict v;
    v.valid = false;
    v.condition = cond;
    v.index = i;
    v.message = std::move(msg);
    return v;
  };
  for (const Vector* seq : {&pa.theta, &pa.theta_star})
    for (int j = 1; j <= d; ++j)
      for (int i = 0; i < j; ++i)
        if ((*seq)[i] == (*seq)[j])
          return fail("PA1", j,
                      std::string(seq == &pa.theta ? "theta_" : "theta*_") + idx(i) + " = " +
                          (seq == &pa.theta ? "theta_" : "theta*_") + idx(j));
  for (int i = 1; i <= d; ++i) {
    if (pa.phi[i - 1].is_zero()) return fail("PA2", i, "phi_" + idx(i) + " = 0");
    if (pa.phi2[i - 1].is_zero()) return fail("PA2", i, "second split sequence vanishes at " + idx(i));
  }
  if (d >= 1) {
    const auto &th = pa.theta, &ts = pa.theta_star;
    ExactScalar den = th[0] - th[d];
    ExactScalar sum;
    for (int i = 1; i <= d; ++i) {
      sum += (th[i - 1] - th[d - i + 1]) / den;
      ExactScalar pa3 = pa.phi2[0] * sum + (ts[i] - ts[0]) * (th[i - 1] - th[d]);
      if (pa3 != pa.phi[i - 1])
        return fail("PA3", i, "phi_" + idx(i) + " = " + pa.phi[i - 1].to_string() + ", expected " + pa3.to_string());
      ExactScalar pa4 = pa.phi[0] * sum + (ts[i] - ts[0]) * (th[d - i + 1] - th[0]);
      if (pa4 != pa.phi2[i - 1])
        return fail("PA4", i,
                    "second split sequence at " + idx(i) + " = " + pa.phi2[i - 1].to_string() + ", expected " +
                        pa4.to_string());
    }
  }
  Verdict ok;
  for (int i = 2; i <= d - 1; ++i) {
    ExactScalar r = (pa.theta[i - 2] - pa.theta[i + 1]) / (pa.theta[i - 1] - pa.theta[i]);
    ExactScalar rs = (pa.theta_star[i - 2] - pa.theta_star[i + 1]) / (pa.theta_star[i - 1] - pa.theta_star[i]);
    if (r != rs) return fail("PA5", i, "ratios " + r.to_string() + " and " + rs.to_string() + " differ");
    if (ok.beta_plus_one && *ok.beta_plus_one != r)
      return fail("PA5", i, "ratio " + r.to_string() + " differs from " + ok.beta_plus_one->to_string());
    ok.beta_plus_one = r;
  }
  return ok;
}

void check_params(const DqkParams& p) {
  if (p.d < 0) throw InputError("diameter must be nonnegative");
  if (p.q.is_zero()) throw InputError("q must be nonzero");
  if (p.kappa.is_zero() || p.kappa_star.is_zero() || p.upsilon.is_zero())
    throw InputError("kappa, kappa* and upsilon must be nonzero");
  for (int i = 1; i <= p.d; ++i)
    if (q_pow(p.q, 2 * i).is_one()) throw InputError("q^" + std::to_string(2 * i) + " = 1");
  for (int i = 1; i <= 2 * p.d - 1; ++i)
    if (p.kappa == p.upsilon * q_pow(p.q, 2 * i - 2 * p.d))
      throw InputError("kappa = upsilon q^" + std::to_string(2 * i - 2 * p.d));
}

ParameterArray dqk_array(const DqkParams& p) {
  check_params(p);
  int d = p.d;
  QPowers qp(p.q);
  ParameterArray pa;
  pa.d = d;
  for (int i = 0; i <= d; ++i) {
    pa.theta.push_back(p.h + p.kappa * qp(d - 2 * i) + p.upsilon * qp(2 * i - d));
    pa.theta_star.push_back(p.h_star + p.kappa_star * qp(d - 2 * i));
  }
  for (int i = 1; i <= d; ++i) {
    ExactScalar common = p.kappa_star * qp(d + 1 - 2 * i) * (qp(i) - qp(-i)) * (qp(i - d - 1) - qp(d + 1 - i));
    pa.phi.push_back(p.kappa * common);
    pa.phi2.push_back(p.upsilon * common);
  }
  return pa;
}

const char* d4_name(D4 g) {
  switch (g) {
    case D4::Star: return "star";
    case D4::Down: return "down";
    case D4::DDown: return "double-down";
  }
  return "?";
}

ParameterArray d4_transform(const ParameterArray& pa, D4 g) {
  check_shape(pa);
  ParameterArray out;
  out.d = pa.d;
  switch (g) {
    case D4::Star:
      out.theta = pa.theta_star;
      out.theta_star = pa.theta;
      out.phi = pa.phi;
      out.phi2 = reversed(pa.phi2);
      break;
    case D4::Down:
      out.theta = pa.theta;
      out.theta_star = reversed(pa.theta_star);
      out.phi = reversed(pa.phi2);
      out.phi2 = reversed(pa.phi);
      break;
    case D4::DDown:
      out.theta = reversed(pa.theta);
      out.theta_star = pa.theta_star;
      out.phi = pa.phi2;
      out.phi2 = pa.phi;
      break;
  }
  return out;
}

const char* basis_name(BasisKind k) {
  switch (k) {
    case BasisKind::Split: return "split";
    case BasisKind::NormalizedSplit: return "normalized-split";
    case BasisKind::Standard: return "standard";
  }
  return "?";
}

LeonardRealization realize(const ParameterArray& pa, BasisKind kind) {
  Verdict v = validate(pa);
  if (!v.valid) throw InputError("invalid parameter array: " + v.condition + " at index " + idx(v.index));
  int d = pa.d;
  std::size_t n = d + 1;
  LeonardRealization real;
  real.basis = kind;
  real.theta = pa.theta;
  real.theta_star = pa.theta_star;
  real.A = ExactMatrix(n, n);
  real.A_star = ExactMatrix(n, n);
  const auto &th = pa.theta, &ts = pa.theta_star;
  for (int i = 0; i <= d; ++i) {
    switch (kind) {
      case BasisKind::Split:
        real.A.set(i, i, th[i]);
        if (i >= 1) real.A.set(i, i - 1, ExactScalar(1));
        real.A_star.set(i, i, ts[i]);
        if (i >= 1) real.A_star.set(i - 1, i, pa.phi[i - 1]);
        break;
      case BasisKind::NormalizedSplit:
        real.A.set(i, i, th[i]);
        if (i >= 1) real.A.set(i, i - 1, pa.phi[i - 1] / (ts[d] - ts[i - 1]));
        real.A_star.set(i, i, ts[i]);
        if (i >= 1) real.A_star.set(i - 1, i, ts[d] - ts[i - 1]);
        break;
      case BasisKind::Standard:
        break;
    }
  }
  if (kind == BasisKind::Standard) {
    if (d >= 1) {
      auto in = intersection_data(pa);
      for (int i = 0; i <= d; ++i) {
        real.A.set(i, i, in.a[i]);
        if (i < d) real.A.set(i, i + 1, in.b[i]);
        if (i >= 1) real.A.set(i, i - 1, in.c[i]);
      }
    } else {
      real.A.set(0, 0, th[0]);
    }
    real.A_star = ExactMatrix::diagonal(ts);
  }
  real.E = spectral_projectors(real.A, real.theta);
  real.E_star = spectral_projectors(real.A_star, real.theta_star);
  if (!all_passed(verify_axioms(real))) throw std::logic_error("realization violates the Leonard system axioms");
  return real;
}

CheckList verify_axioms(const LeonardRealization& real) {
  CheckList out;
  std::size_t n = real.dim();
  ExactMatrix I = ExactMatrix::identity(n);

  auto family = [&](const char* id, const char* anchor, const ExactMatrix& M, const std::vector<ExactMatrix>& E,
                    const Vector& eig) {
    std::string w;
    if (E.size() != n || eig.size() != n) w = "wrong number of idempotents";
    for (std::size_t i = 0; i < n && w.empty(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (eig[i] == eig[j]) w = "repeated eigenvalue at " + std::to_string(i);
    ExactMatrix sum(n, n);
    for (std::size_t i = 0; i < E.size() && w.empty(); ++i) {
      sum += E[i];
      if (M * E[i] != eig[i] * E[i]) w = "M E_" + std::to_string(i) + " != eigenvalue E_" + std::to_string(i);
      else if (rank(E[i]) != 1) w = "E_" + std::to_string(i) + " has rank " + std::to_string(rank(E[i]));
    }
    if (w.empty() && sum != I) w = "idempotents do not sum to I";
    out.push_back(make_check(id, anchor, w.empty(), w));
  };
  family("leonard.axiom.a", "A is multiplicity-free with primitive idempotents E_i", real.A, real.E, real.theta);
  family("leonard.axiom.astar", "A* is multiplicity-free with primitive idempotents E*_i", real.A_star, real.E_star,
         real.theta_star);
  if (!all_passed(out)) return out;

  auto pattern = [&](const char* id, const char* anchor, const std::vector<ExactMatrix>& E, const ExactMatrix& M) {
    std::string w;
    for (std::size_t i = 0; i < n && w.empty(); ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::size_t gap = i > j ? i - j : j - i;
        if (gap == 0) continue;
        bool zero = (E[i] * M * E[j]).is_zero();
        if (gap == 1 && zero) w = "(" + std::to_string(i) + "," + std::to_string(j) + ") vanishes";
        if (gap > 1 && !zero) w = "(" + std::to_string(i) + "," + std::to_string(j) + ") nonzero";
        if (!w.empty()) break;
      }
    out.push_back(make_check(id, anchor, w.empty(), w));
  };
  pattern("leonard.axiom.e_astar_e", "E_i A* E_j = 0 if |i-j| > 1 and != 0 if |i-j| = 1", real.E, real.A_star);
  pattern("leonard.axiom.estar_a_estar", "E*_i A E*_j = 0 if |i-j| > 1 and != 0 if |i-j| = 1", real.E_star,
          real.A);
  return out;
}

ParameterArray extract_parameter_array(const LeonardRealization& real) {
  int d = static_cast<int>(real.dim()) - 1;
  ParameterArray pa;
  pa.d = d;
  pa.theta = real.theta;
  pa.theta_star = real.theta_star;
  std::vector<ExactMatrix> E_rev(real.E.rbegin(), real.E.rend());
  for (int i = 1; i <= d; ++i) {
    Subspace lower = image_sum(real.E_star, 0, i);
    Subspace U = lower.intersect(image_sum(real.E, i, d));
    pa.phi.push_back(eigen_on(real, U, real.theta[i - 1], real.theta_star[i], "U_" + idx(i)));
    Subspace U2 = lower.intersect(image_sum(E_rev, i, d));
    pa.phi2.push_back(eigen_on(real, U2, real.theta[d - i + 1], real.theta_star[i], "reversed U_" + idx(i)));
  }
  return pa;
}

IntersectionNumbers intersection_data(const ParameterArray& pa) {
  check_shape(pa);
  int d = pa.d;
  auto one_side = [d](const ParameterArray& p, Vector& a, Vector& b, Vector& c) {
    const auto &th = p.theta, &ts = p.theta_star;
    Vector ts_rev = reversed(ts);
    a.assign(d + 1, {});
    b.assign(d + 1, {});
    c.assign(d + 1, {});
    for (int i = 0; i < d; ++i)
      b[i] = p.phi[i] * partial_product(ts, i, ts[i]) / partial_product(ts, i + 1, ts[i + 1]);
    for (int i = 1; i <= d; ++i)
      c[i] = p.phi2[i - 1] * partial_product(ts_rev, d - i, ts[i]) / partial_product(ts_rev, d - i + 1, ts[i - 1]);
    for (int i = 0; i <= d; ++i) {
      a[i] = th[i];
      if (i >= 1) a[i] += p.phi[i - 1] / (ts[i] - ts[i - 1]);
      if (i < d) a[i] += p.phi[i] / (ts[i] - ts[i + 1]);
    }
  };
  IntersectionNumbers in;
  one_side(pa, in.a, in.b, in.c);
  one_side(d4_transform(pa, D4::Star), in.a_star, in.b_star, in.c_star);
  return in;
}

IntersectionNumbers dqk_intersection_numbers(const DqkParams& p) {
  check_params(p);
  QPowers qp(p.q);
  int d = p.d;
  IntersectionNumbers in;
  in.a.assign(d + 1, {});
  in.b.assign(d + 1, {});
  in.c.assign(d + 1, {});
  for (int i = 0; i <= d; ++i) {
    in.b[i] = p.kappa * qp(i) * (qp(d - i) - qp(i - d));
    in.c[i] = p.upsilon * qp(i - d) * (qp(-i) - qp(i));
    in.a[i] = p.h + (p.kappa + p.upsilon) * qp(2 * i - d);
  }
  return in;
}

AwScalars td_aw_scalars(const ParameterArray& pa, const std::optional<AwHint>& hint) {
  Verdict v = validate(pa);
  if (!v.valid) throw InputError("invalid parameter array: " + v.condition + " at index " + idx(v.index));
  int d = pa.d;
  AwScalars s;
  if (d == 0) {
    s.unique_regime = false;
    s.has_aw = false;
    return s;
  }
  const auto &th = pa.theta, &ts = pa.theta_star;
  auto constant = [](const char* name, std::vector<std::pair<int, ExactScalar>> vals) {
    for (const auto& [i, x] : vals)
      if (x != vals.front().second)
        throw InputError(std::string(name) + " differs between indices " + std::to_string(vals.front().first) +
                         " and " + std::to_string(i));
    return vals.front().second;
  };
  if (d >= 3) {
    s.beta = *v.beta_plus_one - ExactScalar(1);
  } else {
    if (!hint) throw InputError("beta is not determined for d <= 2; supply beta, gamma, gamma*");
    s.beta = hint->beta;
    s.unique_regime = false;
  }
  if (d >= 2) {
    std::vector<std::pair<int, ExactScalar>> g, gs;
    for (int i = 1; i <= d - 1; ++i) {
      g.emplace_back(i, th[i - 1] - s.beta * th[i] + th[i + 1]);
      gs.emplace_back(i, ts[i - 1] - s.beta * ts[i] + ts[i + 1]);
    }
    s.gamma = constant("gamma", g);
    s.gamma_star = constant("gamma*", gs);
  } else {
    s.gamma = hint->gamma;
    s.gamma_star = hint->gamma_star;
  }
  {
    std::vector<std::pair<int, ExactScalar>> r, rs;
    for (int i = 1; i <= d; ++i) {
      r.emplace_back(i, th[i - 1] * th[i - 1] - s.beta * th[i - 1] * th[i] + th[i] * th[i] -
                            s.gamma * (th[i - 1] + th[i]));
      rs.emplace_back(i, ts[i - 1] * ts[i - 1] - s.beta * ts[i - 1] * ts[i] + ts[i] * ts[i] -
                             s.gamma_star * (ts[i - 1] + ts[i]));
    }
    s.varrho = constant("varrho", r);
    s.varrho_star = constant("varrho*", rs);
  }

  // Sequences extended by one term at each end through the gamma relations.
  auto extend = [&](const Vector& x, const ExactScalar& g) {
    Vector e(d + 3);
    for (int i = 0; i <= d; ++i) e[i + 1] = x[i];
    e[0] = g + s.beta * x[0] - x[1];
    e[d + 2] = g + s.beta * x[d] - x[d - 1];
    return e;
  };
  Vector the = extend(th, s.gamma), tse = extend(ts, s.gamma_star);
  auto T = [&](int i) { return the[i + 1]; };
  auto Ts = [&](int i) { return tse[i + 1]; };
  auto in = intersection_data(pa);
  std::vector<std::pair<int, ExactScalar>> om;
  for (int i = 1; i <= d; ++i) {
    om.emplace_back(i, in.a[i] * (Ts(i) - Ts(i + 1)) + in.a[i - 1] * (Ts(i - 1) - Ts(i - 2)) -
                           s.gamma * (Ts(i) + Ts(i - 1)));
    om.emplace_back(i, in.a_star[i] * (T(i) - T(i + 1)) + in.a_star[i - 1] * (T(i - 1) - T(i - 2)) -
                           s.gamma_star * (T(i) + T(i - 1)));
  }
  s.omega = constant("omega", om);
  std::vector<std::pair<int, ExactScalar>> et, ets;
  for (int i = 0; i <= d; ++i) {
    et.emplace_back(i, in.a_star[i] * (T(i) - T(i - 1)) * (T(i) - T(i + 1)) - s.gamma_star * T(i) * T(i) -
                           s.omega * T(i));
    ets.emplace_back(i, in.a[i] * (Ts(i) - Ts(i - 1)) * (Ts(i) - Ts(i + 1)) - s.gamma * Ts(i) * Ts(i) -
                            s.omega * Ts(i));
  }
  s.eta = constant("eta", et);
  s.eta_star = constant("eta*", ets);
  return s;
}

AwScalars dqk_aw_scalars(const DqkParams& p) {
  check_params(p);
  QPowers qp(p.q);
  ExactScalar two(2), four(4);
  AwScalars s;
  s.unique_regime = p.d >= 3;
  s.has_aw = p.d >= 1;
  s.beta = qp(2) + qp(-2);
  ExactScalar bm2 = s.beta - two, bb4 = s.beta * s.beta - four;
  s.gamma = p.h * (two - s.beta);
  s.gamma_star = p.h_star * (two - s.beta);
  s.varrho = p.h * p.h * bm2 - p.kappa * p.upsilon * bb4;
  s.varrho_star = p.h_star * p.h_star * bm2;
  ExactScalar ku = p.kappa + p.upsilon;
  s.omega = bm2 * (two * p.h * p.h_star - ku * p.kappa_star);
  ExactScalar diff = qp(1) - qp(-1);
  s.eta = p.kappa * p.upsilon * p.h_star * bb4 +
          p.kappa * p.upsilon * p.kappa_star * (qp(1) + qp(-1)) * diff * diff * (qp(p.d + 1) + qp(-p.d - 1)) -
          p.h * bm2 * (p.h * p.h_star - ku * p.kappa_star);
  s.eta_star = p.h_star * bm2 * (ku * p.kappa_star - p.h * p.h_star);
  return s;
}

CheckList verify_td_aw(const LeonardRealization& real, const AwScalars& s) {
  CheckList out;
  if (!s.has_aw) {
    out.push_back(skipped_check("leonard.td", "tridiagonal relations", "diameter 0"));
    out.push_back(skipped_check("leonard.aw", "Askey-Wilson relations", "diameter 0"));
    return out;
  }
  std::size_t n = real.dim();
  const auto &A = real.A, &As = real.A_star;
  ExactMatrix I = ExactMatrix::identity(n), zero(n, n);
  ExactMatrix A2 = A * A, As2 = As * As, AAs = A * As, AsA = As * A;
  ExactMatrix lhs = A2 * As - s.beta * (AAs * A) + As * A2 - s.gamma * (AAs + AsA) - s.varrho * As;
  ExactMatrix lhs2 = As2 * A - s.beta * (AsA * As) + A * As2 - s.gamma_star * (AsA + AAs) - s.varrho_star * A;
  std::string note = s.unique_regime ? "" : " (non-unique regime)";
  out.push_back(check_matrices("leonard.td" + std::string(s.unique_regime ? "" : ".non_unique"),
                               "[A, A^2A* - beta AA*A + A*A^2 - gamma(AA* + A*A) - varrho A*] = 0" + note,
                               commutator(A, lhs), zero));
  out.push_back(check_matrices("leonard.td_dual" + std::string(s.unique_regime ? "" : ".non_unique"),
                               "[A*, A*^2A - beta A*AA* + AA*^2 - gamma*(A*A + AA*) - varrho* A] = 0" + note,
                               commutator(As, lhs2), zero));
  out.push_back(check_matrices("leonard.aw" + std::string(s.unique_regime ? "" : ".non_unique"),
                               "A^2A* - beta AA*A + A*A^2 - gamma(AA* + A*A) - varrho A* = gamma* A^2 + omega A + "
                               "eta I" + note,
                               lhs, s.gamma_star * A2 + s.omega * A + s.eta * I));
  out.push_back(check_matrices("leonard.aw_dual" + std::string(s.unique_regime ? "" : ".non_unique"),
                               "A*^2A - beta A*AA* + AA*^2 - gamma*(A*A + AA*) - varrho* A = gamma A*^2 + omega A* + "
                               "eta* I" + note,
                               lhs2, s.gamma * As2 + s.omega * As + s.eta_star * I));
  return out;
}

std::optional<DqkParams> dqk_from_array(const ParameterArray& pa, const ExactScalar& q) {
  check_shape(pa);
  int d = pa.d;
  if (d == 0) return std::nullopt;
  QPowers qp(q);
  DqkParams p;
  p.q = q;
  p.d = d;
  p.kappa_star = (pa.theta_star[0] - pa.theta_star[1]) / (qp(d) * (ExactScalar(1) - qp(-2)));
  p.h_star = pa.theta_star[0] - p.kappa_star * qp(d);
  ExactScalar common = p.kappa_star * qp(d - 1) * (qp(1) - qp(-1)) * (qp(-d) - qp(d));
  p.kappa = pa.phi[0] / common;
  p.upsilon = pa.phi2[0] / common;
  p.h = pa.theta[0] - p.kappa * qp(d) - p.upsilon * qp(-d);
  try {
    if (dqk_array(p) != pa) return std::nullopt;
  } catch (const InputError&) {
    return std::nullopt;
  }
  return p;
}

NormalizedSplit normalized_split_basis(const LeonardRealization& real, const ParameterArray& pa) {
  int d = pa.d;
  std::size_t n = real.dim();
  std::vector<Subspace> U;
  for (int i = 0; i <= d; ++i) U.push_back(image_sum(real.E_star, 0, i).intersect(image_sum(real.E, i, d)));
  NormalizedSplit ns;
  std::vector<Vector> gens;
  for (const auto& u : U) {
    if (u.dim() != 1) throw SpectrumError("split decomposition component of dimension " + std::to_string(u.dim()));
    gens.push_back(u.basis()[0]);
  }
  // Coordinates of a nonzero vector of E*_dV in the split basis.
  Vector w = column_space(real.E_star[d]).basis()[0];
  Vector coords = solve(ExactMatrix::from_columns(n, gens), w);
  for (int i = 0; i <= d; ++i) {
    Vector u(n);
    for (std::size_t k = 0; k < n; ++k) u[k] = coords[i] * gens[i][k];
    ns.basis.push_back(std::move(u));
  }
  const auto &th = pa.theta, &ts = pa.theta_star;
  std::string wa, ws;
  for (int i = 0; i <= d; ++i) {
    const Vector& u = ns.basis[i];
    if (is_zero_vector(u)) wa = ws = "u_" + idx(i) + " = 0";
    Vector a_want(n), s_want(n);
    for (std::size_t k = 0; k < n; ++k) {
      a_want[k] = th[i] * u[k];
      s_want[k] = ts[i] * u[k];
      if (i < d) a_want[k] += pa.phi[i] / (ts[d] - ts[i]) * ns.basis[i + 1][k];
      if (i >= 1) s_want[k] += (ts[d] - ts[i - 1]) * ns.basis[i - 1][k];
    }
    if (wa.empty() && real.A.apply(u) != a_want) wa = "A u_" + idx(i);
    if (ws.empty() && real.A_star.apply(u) != s_want) ws = "A* u_" + idx(i);
  }
  ns.checks.push_back(make_check("leonard.normalized_split.a",
                                 "A u_i = theta_i u_i + phi_{i+1}(theta*_d - theta*_i)^{-1} u_{i+1}", wa.empty(), wa));
  ns.checks.push_back(make_check("leonard.normalized_split.astar",
                                 "A* u_i = theta*_i u_i + (theta*_d - theta*_{i-1}) u_{i-1}", ws.empty(), ws));
  return ns;
}

DqkParams module_dqk_params(const TerwilligerContext& ctx, const Triple& w) {
  long te = ctx.spec.two_e, D = ctx.D;
  ExactScalar one(1), q2m1 = ctx.qp(2) - one;
  DqkParams p;
  p.q = ctx.q;
  p.d = w.d;
  p.h = (one - ctx.q2e()) / q2m1;
  p.h_star = ctx.zeta;
  p.kappa = ctx.qp(te + 2 * D - 2 * w.t - w.d) / q2m1;
  p.kappa_star = ctx.xi * ctx.qp(-2 * w.r - w.d);
  p.upsilon = -ctx.qp(2 * w.t + w.d) / q2m1;
  return p;
}

ModuleLeonard leonard_from_tmodule(const TModuleRecord& rec, const TerwilligerContext& ctx) {
  ModuleLeonard ml;
  const Triple& w = rec.triple;
  int d = w.d;
  std::size_t n = d + 1;
  LeonardRealization& real = ml.realization;
  real.basis = BasisKind::Standard;
  real.A = rec.A_std;
  real.A_star = rec.A_star_std;
  real.E = rec.E_std;
  for (std::size_t i = 0; i < n; ++i) {
    real.E_star.push_back(unit_matrix(n, i));
    real.theta.push_back(ctx.bm.theta[w.t + i]);
    real.theta_star.push_back(ctx.bm.theta_star[w.r + i]);
  }
  std::string tw = w.to_string();
  ml.checks = verify_axioms(real);
  if (!all_passed(ml.checks)) return ml;

  ml.array = extract_parameter_array(real);
  Verdict v = validate(ml.array);
  ml.checks.push_back(make_check("module_ls.valid", "the extracted parameter array satisfies PA1-PA5", v.valid,
                                 v.condition + " at index " + idx(v.index) + ": " + v.message));

  ml.expected = module_dqk_params(ctx, w);
  ParameterArray predicted = dqk_array(ml.expected);
  bool same = predicted == ml.array;
  ml.checks.push_back(make_check(
      "module_ls.array",
      "parameter array equals the dual q-Krawtchouk array of h = (1-q^{2e})/(q^2-1), h* = zeta, "
      "kappa = q^{2e+2D-2t-d}/(q^2-1), kappa* = xi q^{-2r-d}, upsilon = -q^{2t+d}/(q^2-1)",
      same, same ? "" : "extracted and predicted arrays differ"));

  if (d >= 1) {
    ml.params = dqk_from_array(ml.array, ctx.q);
    bool ok = ml.params && *ml.params == ml.expected;
    ml.checks.push_back(make_check("module_ls.params", "recovered h, h*, kappa, kappa*, upsilon match the closed form",
                                   ok, ml.params ? "recovered parameters differ" : "array is not of dual q-Krawtchouk type"));
    long te = ctx.spec.two_e, D = ctx.D;
    ExactScalar phi1 = -ctx.xi * (ctx.qp(2 * d) - ExactScalar(1)) * ctx.qp(te + 2 * (D - d - w.t - w.r - 1));
    ExactScalar phi1b = ctx.xi * (ctx.qp(2 * d) - ExactScalar(1)) * ctx.qp(2 * (w.t - w.r - 1));
    ml.checks.push_back(check_scalars("module_ls.phi1", "phi_1 = -xi(q^{2d}-1)q^{2(e+D-d-t-r-1)}", ml.array.phi[0], phi1));
    ml.checks.push_back(check_scalars("module_ls.phi1_second", "second split sequence at 1 = xi(q^{2d}-1)q^{2(t-r-1)}",
                                      ml.array.phi2[0], phi1b));
    auto in = intersection_data(ml.array);
    bool inter = in.a == rec.a && in.b == rec.b && in.c == rec.c && in.a_star == rec.a_star &&
                 in.b_star == rec.b_star && in.c_star == rec.c_star;
    ml.checks.push_back(make_check("module_ls.intersection",
                                   "intersection numbers of the array equal those of the module", inter,
                                   "intersection numbers differ"));
  } else {
    bool ok = real.theta[0] == ml.expected.h + ml.expected.kappa + ml.expected.upsilon &&
              real.theta_star[0] == ml.expected.h_star + ml.expected.kappa_star;
    ml.checks.push_back(make_check("module_ls.params",
                                   "theta_0 = h + kappa + upsilon and theta*_0 = h* + kappa* for d = 0", ok,
                                   "eigenvalues differ from the closed form"));
  }
  for (auto& c : ml.checks)
    if (!c.passed()) c.witness = "module " + tw + ": " + c.witness;
  return ml;
}

}  // namespace dpg
