#include "dpg/uqsl2.hpp"

#include <stdexcept>

#include "dpg/polar.hpp"

namespace dpg {

namespace {

// The three matrices of the normalized eigenbasis in the order (a, b, c) of
// the lemma: a diagonal, b lower bidiagonal, c upper bidiagonal.
void eigenbasis_matrices(const QPowers& qp, int d, int eps, ExactMatrix& a, ExactMatrix& b, ExactMatrix& c) {
  std::size_t n = d + 1;
  ExactScalar e(eps);
  a = b = c = ExactMatrix(n, n);
  for (int i = 0; i <= d; ++i) {
    a.set(i, i, e * qp(d - 2 * i));
    b.set(i, i, e * qp(2 * i - d));
    c.set(i, i, e * qp(2 * i - d));
    if (i < d) b.set(i + 1, i, e * (qp(-d) - qp(2 * i + 2 - d)));
    if (i >= 1) c.set(i - 1, i, e * (qp(d) - qp(2 * i - 2 - d)));
  }
}

void require_generic(const ExactScalar& q, int d, int eps) {
  if (eps != 1 && eps != -1) throw InputError("eps must be 1 or -1");
  if (d < 0) throw InputError("d must be nonnegative");
  if (q.is_zero()) throw InputError("q must be nonzero");
  for (int i = 1; i <= d; ++i)
    if (q_pow(q, 2 * i).is_one()) throw InputError("q^" + std::to_string(2 * i) + " = 1");
}

// Variant 1 construction of X, Y, Z from B = A - h and B* = A* - h*.
UqAction leonard_action(const LeonardRealization& real, const DqkParams& p, int eps) {
  std::size_t n = real.dim();
  QPowers qp(p.q);
  ExactScalar e(eps), one(1);
  ExactMatrix I = ExactMatrix::identity(n);
  ExactMatrix B = real.A - p.h * I, Bs = real.A_star - p.h_star * I;
  ExactMatrix Bs_inv = inverse(Bs);
  ExactScalar q = qp(1), qi = qp(-1), den = qp(2) - qp(-2), qq = q + qi;
  const auto &k = p.kappa, &ks = p.kappa_star, &u = p.upsilon;
  ExactMatrix X = (q * B - qi * (Bs * B * Bs_inv)) * (one / (k * qi * den)) + (ks * (k * qi - u * q) / (k * qq)) * Bs_inv;
  ExactMatrix Y = (q * B - qi * (Bs_inv * B * Bs)) * (one / (u * qi * den)) + (ks * (u * qi - k * q) / (u * qq)) * Bs_inv;
  ExactMatrix Z = (one / ks) * Bs;
  // eps^{-1} = eps
  return UqAction::from_equitable(p.q, e * X, e * Y, e * Z, (e * ks) * Bs_inv);
}

}  // namespace

UqAction UqAction::from_equitable(const ExactScalar& q, ExactMatrix X, ExactMatrix Y, ExactMatrix Z,
                                  std::optional<ExactMatrix> Z_inv) {
  UqAction a;
  a.q = q;
  a.X = std::move(X);
  a.Y = std::move(Y);
  a.Z = std::move(Z);
  a.Z_inv = Z_inv ? std::move(*Z_inv) : inverse(a.Z);
  ExactScalar one(1), diff = q - one / q;
  ExactMatrix I = ExactMatrix::identity(a.dim());
  a.K = a.Z;
  a.K_inv = a.Z_inv;
  a.E = (one / (q * diff)) * (I - a.Z * a.Y);
  a.F = (one / diff) * (a.X - a.Z_inv);
  return a;
}

UqAction UqAction::from_chevalley(const ExactScalar& q, ExactMatrix K, ExactMatrix E, ExactMatrix F,
                                  std::optional<ExactMatrix> K_inv) {
  UqAction a;
  a.q = q;
  a.K = std::move(K);
  a.E = std::move(E);
  a.F = std::move(F);
  a.K_inv = K_inv ? std::move(*K_inv) : inverse(a.K);
  ExactScalar diff = q - ExactScalar(1) / q;
  a.Z = a.K;
  a.Z_inv = a.K_inv;
  a.Y = a.K_inv - (q * diff) * (a.K_inv * a.E);
  a.X = a.K_inv + diff * a.F;
  return a;
}

CheckList verify_uq(const UqAction& a) {
  CheckList out;
  const ExactScalar& q = a.q;
  ExactScalar one(1), qi = one / q, diff = q - qi, q2 = q * q;
  ExactMatrix I = ExactMatrix::identity(a.dim());
  out.push_back(check_matrices("uq.z_inverse", "z z^{-1} = z^{-1} z = 1", a.Z * a.Z_inv, I));
  out.push_back(check_matrices("uq.z_inverse_left", "z^{-1} z = 1", a.Z_inv * a.Z, I));
  auto weyl = [&](const ExactMatrix& u, const ExactMatrix& v) {
    return (one / diff) * (q * (u * v) - qi * (v * u));
  };
  out.push_back(check_matrices("uq.equitable_xy", "(qxy - q^{-1}yx)/(q - q^{-1}) = 1", weyl(a.X, a.Y), I));
  out.push_back(check_matrices("uq.equitable_yz", "(qyz - q^{-1}zy)/(q - q^{-1}) = 1", weyl(a.Y, a.Z), I));
  out.push_back(check_matrices("uq.equitable_zx", "(qzx - q^{-1}xz)/(q - q^{-1}) = 1", weyl(a.Z, a.X), I));
  out.push_back(check_matrices("uq.chevalley_ke", "ke = q^2 ek", a.K * a.E, q2 * (a.E * a.K)));
  out.push_back(check_matrices("uq.chevalley_kf", "kf = q^{-2} fk", a.K * a.F, (one / q2) * (a.F * a.K)));
  out.push_back(check_matrices("uq.chevalley_ef", "ef - fe = (k - k^{-1})/(q - q^{-1})", a.E * a.F - a.F * a.E,
                               (one / diff) * (a.K - a.K_inv)));
  return out;
}

ExactMatrix casimir(const UqAction& a) {
  ExactScalar one(1), qi = one / a.q, diff = a.q - qi;
  return a.E * a.F + (one / (diff * diff)) * (qi * a.K + a.q * a.K_inv);
}

ExactScalar casimir_scalar(const ExactScalar& q, int d, int eps) {
  ExactScalar diff = q - ExactScalar(1) / q;
  return ExactScalar(eps) * (q_pow(q, d + 1) + q_pow(q, -d - 1)) / (diff * diff);
}

CheckList verify_casimir(const UqAction& a, const ExactScalar& expected) {
  CheckList out;
  ExactMatrix C = casimir(a);
  ExactMatrix zero(a.dim(), a.dim());
  out.push_back(check_matrices("uq.casimir_k", "Delta commutes with k", commutator(C, a.K), zero));
  out.push_back(check_matrices("uq.casimir_e", "Delta commutes with e", commutator(C, a.E), zero));
  out.push_back(check_matrices("uq.casimir_f", "Delta commutes with f", commutator(C, a.F), zero));
  out.push_back(check_matrices("uq.casimir_scalar", "Delta acts as eps(q^{d+1} + q^{-d-1})/(q - q^{-1})^2", C,
                               ExactMatrix::scalar(a.dim(), expected)));
  return out;
}

const char* ld_basis_name(LdBasis b) {
  switch (b) {
    case LdBasis::Kef: return "kef";
    case LdBasis::XEigen: return "x-eigen";
    case LdBasis::YEigen: return "y-eigen";
    case LdBasis::ZEigen: return "z-eigen";
  }
  return "?";
}

UqAction build_Ld(const ExactScalar& q, int d, int eps, LdBasis basis) {
  require_generic(q, d, eps);
  QPowers qp(q);
  std::size_t n = d + 1;
  ExactScalar e(eps);
  if (basis == LdBasis::Kef) {
    ExactMatrix K(n, n), Ki(n, n), E(n, n), F(n, n);
    for (int i = 0; i <= d; ++i) {
      K.set(i, i, e * qp(d - 2 * i));
      Ki.set(i, i, e * qp(2 * i - d));
      if (i < d) F.set(i + 1, i, qp.bracket(i + 1));
      if (i >= 1) E.set(i - 1, i, e * qp.bracket(d - i + 1));
    }
    return UqAction::from_chevalley(q, K, E, F, Ki);
  }
  ExactMatrix a, b, c;
  eigenbasis_matrices(qp, d, eps, a, b, c);
  switch (basis) {
    case LdBasis::XEigen: return UqAction::from_equitable(q, a, b, c);
    case LdBasis::YEigen: return UqAction::from_equitable(q, c, a, b);
    case LdBasis::ZEigen: return UqAction::from_equitable(q, b, c, a);
    default: break;
  }
  throw std::logic_error("unreachable");
}

CheckList verify_Ld(const ExactScalar& q, int d, int eps, LdBasis basis) {
  UqAction a = build_Ld(q, d, eps, basis);
  CheckList out = verify_uq(a);
  append(out, verify_casimir(a, casimir_scalar(q, d, eps)));
  QPowers qp(q);
  std::size_t n = d + 1;
  ExactScalar e(eps);

  // Spectrum of k: the characteristic polynomial prod (k - eps q^{d-2i}) vanishes
  // and each factor is singular.
  ExactMatrix I = ExactMatrix::identity(n), prod = I;
  std::string w;
  for (int i = 0; i <= d; ++i) {
    ExactMatrix f = a.K - (e * qp(d - 2 * i)) * I;
    if (rank(f) != n - 1) w = "eps q^" + std::to_string(d - 2 * i) + " is not a simple eigenvalue";
    prod = prod * f;
  }
  if (w.empty() && !prod.is_zero()) w = "k has further eigenvalues";
  out.push_back(make_check("ld.k_spectrum", "k has eigenvalues eps q^{d-2i}, 0 <= i <= d", w.empty(), w));

  if (basis == LdBasis::Kef) {
    std::string wk;
    Vector v0(n), vd(n);
    v0[0] = 1;
    vd[d] = 1;
    if (!is_zero_vector(a.F.apply(vd))) wk = "f v_d != 0";
    if (!is_zero_vector(a.E.apply(v0))) wk = "e v_0 != 0";
    out.push_back(make_check("ld.kef_ends", "f v_d = 0 and e v_0 = 0", wk.empty(), wk));
  } else {
    // Sum vector normalization: for the x-eigenbasis eps y u = q^{-d} u and
    // eps z u = q^d u, and cyclically.
    Vector u(n, ExactScalar(1));
    const ExactMatrix *lo = nullptr, *hi = nullptr;
    const char* anchor = "";
    if (basis == LdBasis::XEigen) lo = &a.Y, hi = &a.Z, anchor = "eps y u = q^{-d} u and eps z u = q^d u";
    if (basis == LdBasis::YEigen) lo = &a.Z, hi = &a.X, anchor = "eps z u = q^{-d} u and eps x u = q^d u";
    if (basis == LdBasis::ZEigen) lo = &a.X, hi = &a.Y, anchor = "eps x u = q^{-d} u and eps y u = q^d u";
    Vector l = lo->apply(u), h = hi->apply(u);
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i)
      ok = ok && e * l[i] == qp(-d) && e * h[i] == qp(d);
    out.push_back(make_check("ld.sum_vector", anchor, ok, "sum vector not normalized"));
  }
  return out;
}

Check check_normalized_eigenbasis(const UqAction& a, const std::vector<Vector>& basis, int eps, LdBasis which) {
  int d = static_cast<int>(basis.size()) - 1;
  UqAction ref = build_Ld(a.q, d, eps, which);
  auto images = [&](const ExactMatrix& m) {
    std::vector<Vector> out;
    for (const auto& v : basis) out.push_back(m.apply(v));
    return out;
  };
  std::string id = std::string("uq.normalized_") + ld_basis_name(which);
  std::string anchor = std::string("the basis is a normalized ") + (which == LdBasis::XEigen ? "x" : which == LdBasis::YEigen ? "y" : "z") +
           "-eigenbasis";
  try {
    if (represent(basis, images(a.X)) != ref.X) return make_check(id, anchor, false, "x differs");
    if (represent(basis, images(a.Y)) != ref.Y) return make_check(id, anchor, false, "y differs");
    if (represent(basis, images(a.Z)) != ref.Z) return make_check(id, anchor, false, "z differs");
  } catch (const DimensionMismatch& e) {
    return make_check(id, anchor, false, e.what());
  }
  return make_check(id, anchor, true);
}

UqResult uq_on_leonard(const LeonardRealization& real, const DqkParams& p, int eps, int variant) {
  require_generic(p.q, p.d, eps);
  if (variant != 1 && variant != 2) throw InputError("variant must be 1 or 2");
  std::size_t n = real.dim();
  ExactScalar e(eps);
  ExactMatrix I = ExactMatrix::identity(n);

  DqkParams pv = p;
  if (variant == 2) std::swap(pv.kappa, pv.upsilon);
  UqResult res{leonard_action(real, pv, eps), {}};
  const UqAction& a = res.action;
  res.checks = verify_uq(a);
  append(res.checks, verify_casimir(a, casimir_scalar(p.q, p.d, eps)));

  if (variant == 1)
    res.checks.push_back(check_matrices("uq_leonard.recover_a", "A = h + eps kappa x + eps upsilon y", real.A,
                                        p.h * I + (e * p.kappa) * a.X + (e * p.upsilon) * a.Y));
  else
    res.checks.push_back(check_matrices("uq_leonard.recover_a", "A = h + eps kappa y + eps upsilon x", real.A,
                                        p.h * I + (e * p.kappa) * a.Y + (e * p.upsilon) * a.X));
  res.checks.push_back(check_matrices("uq_leonard.recover_astar", "A* = h* + eps kappa* z", real.A_star,
                                      p.h_star * I + (e * p.kappa_star) * a.Z));

  // Z acts on E*_iV as eps q^{d-2i}.
  QPowers qp(p.q);
  std::string wz;
  for (int i = 0; i <= p.d; ++i)
    if (a.Z * real.E_star[i] != (e * qp(p.d - 2 * i)) * real.E_star[i]) wz = "E*_" + std::to_string(i);
  res.checks.push_back(make_check("uq_leonard.z_spectrum", "z acts on E*_iV as eps q^{d-2i}", wz.empty(), wz));

  // The inversion of a normalized split basis is a normalized y-eigenbasis.
  // For variant 2 the split basis belongs to the reversed eigenvalue order.
  ParameterArray pa = dqk_array(p);
  LeonardRealization rv = real;
  if (variant == 2) {
    rv.E.assign(real.E.rbegin(), real.E.rend());
    rv.theta.assign(real.theta.rbegin(), real.theta.rend());
    pa = d4_transform(pa, D4::DDown);
  }
  NormalizedSplit ns = normalized_split_basis(rv, pa);
  append(res.checks, ns.checks);
  std::vector<Vector> inv(ns.basis.rbegin(), ns.basis.rend());
  Check c = check_normalized_eigenbasis(a, inv, eps, LdBasis::YEigen);
  c.id = "uq_leonard.inverted_split_is_y_eigenbasis";
  c.anchor = "the inversion of a normalized split basis is a normalized y-eigenbasis";
  res.checks.push_back(c);

  if (variant == 2) {
    UqAction one = leonard_action(real, p, eps);
    ExactScalar r = p.kappa / p.upsilon, ri = p.upsilon / p.kappa, u1(1);
    res.checks.push_back(check_matrices("uq_leonard.cross_x",
                                        "x of the reversed order = kappa upsilon^{-1} x + (1 - kappa upsilon^{-1}) z^{-1}",
                                        a.X, r * one.X + (u1 - r) * one.Z_inv));
    res.checks.push_back(check_matrices("uq_leonard.cross_y",
                                        "y of the reversed order = upsilon kappa^{-1} y + (1 - upsilon kappa^{-1}) z^{-1}",
                                        a.Y, ri * one.Y + (u1 - ri) * one.Z_inv));
    res.checks.push_back(check_matrices("uq_leonard.cross_z", "z is shared by both structures", a.Z, one.Z));
  }
  return res;
}

StandardOperators standard_operators(const TerwilligerContext& ctx, const Decomposition& dec,
                                     const CentralMatrices& cm) {
  StandardOperators ops;
  ops.A = ctx.A;
  ops.A_star = ctx.A_star;
  ops.K = ctx.K;
  ops.K_inv = ctx.K_inv;
  ops.L = ctx.L;
  ops.R = ctx.R;
  ops.Upsilon = cm.Upsilon;
  ops.Upsilon_inv = cm.Upsilon_inv;
  ops.Psi = cm.Psi;
  ops.Psi_inv = cm.Psi_inv;
  ops.Lambda = cm.Lambda;
  for (int d = 0; d <= ctx.D; ++d) {
    ExactMatrix rho(ctx.n(), ctx.n());
    bool any = false;
    for (std::size_t i = 0; i < dec.components.size(); ++i)
      if (dec.components[i].triple.d == d) {
        rho += cm.projectors[i];
        any = true;
      }
    if (any) ops.rho.emplace_back(d, std::move(rho));
  }
  return ops;
}

StandardOperators module_operators(const TerwilligerContext& ctx, const TModuleRecord& rec) {
  StandardOperators ops;
  std::size_t n = rec.standard_basis.size();
  ops.A = rec.A_std;
  ops.A_star = rec.A_star_std;
  ops.K_inv = rec.K_inv_std;
  ops.K = inverse(rec.K_inv_std);
  ops.L = rec.L_std;
  ops.R = rec.R_std;
  auto s = component_scalars(ctx, rec.triple);
  ops.Upsilon = ExactMatrix::scalar(n, s.upsilon);
  ops.Upsilon_inv = ExactMatrix::scalar(n, s.upsilon.inverse());
  ops.Psi = ExactMatrix::scalar(n, s.psi);
  ops.Psi_inv = ExactMatrix::scalar(n, s.psi.inverse());
  ops.Lambda = ExactMatrix::scalar(n, s.lambda);
  ops.rho.emplace_back(rec.triple.d, ExactMatrix::identity(n));
  return ops;
}

DqkParams standard_module_params(const TerwilligerContext& ctx) {
  ExactScalar one(1), q2m1 = ctx.qp(2) - one;
  DqkParams p;
  p.q = ctx.q;
  p.d = ctx.D;
  p.h = (one - ctx.q2e()) / q2m1;
  p.h_star = ctx.zeta;
  p.kappa = ctx.qp(ctx.spec.two_e + ctx.D) / q2m1;
  p.kappa_star = ctx.xi * ctx.qp(-ctx.D);
  p.upsilon = -ctx.qp(ctx.D) / q2m1;
  return p;
}

UqResult uq_on_standard(const TerwilligerContext& ctx, const StandardOperators& o, int variant) {
  if (variant != 1 && variant != 2) throw InputError("variant must be 1 or 2");
  std::size_t n = o.A.rows();
  long D = ctx.D, te = ctx.spec.two_e;
  ExactScalar one(1), q2m1 = ctx.qp(2) - one;
  ExactMatrix I = ExactMatrix::identity(n);
  const auto &U = o.Upsilon, &Ui = o.Upsilon_inv, &P = o.Psi, &Pi = o.Psi_inv;

  // x, y, z and z^{-1} of either structure.
  auto build = [&](int v) {
    ExactMatrix base = ctx.qp(-D) * (Ui * Pi * o.K_inv);
    ExactMatrix up = (ctx.qp(-te - D) * q2m1) * (U * Pi);
    ExactMatrix down = (ctx.qp(-D) * q2m1) * (Ui * P);
    ExactMatrix X = v == 1 ? base + up * o.R : base - down * o.R;
    ExactMatrix Y = v == 1 ? base - down * o.L : base + up * o.L;
    ExactMatrix Z = ctx.qp(D) * (U * P * o.K);
    return UqAction::from_equitable(ctx.q, X, Y, Z, base);
  };
  UqResult res{build(variant), {}};
  const UqAction& a = res.action;
  res.checks = verify_uq(a);

  if (variant == 1) {
    res.checks.push_back(check_matrices("uq_std.e", "e = Psi^2 K L", a.E, P * P * o.K * o.L));
    res.checks.push_back(check_matrices("uq_std.f", "f = q^{1-2e-D} Upsilon Psi^{-1} R", a.F,
                                        ctx.qp(1 - te - D) * (U * Pi * o.R)));
  } else {
    res.checks.push_back(check_matrices("uq_std.e", "e = -q^{-2e} Upsilon^2 K L", a.E,
                                        (-ctx.qp(-te)) * (U * U * o.K * o.L)));
    res.checks.push_back(check_matrices("uq_std.f", "f = -q^{1-D} Upsilon^{-1} Psi R", a.F,
                                        (-ctx.qp(1 - D)) * (Ui * P * o.R)));
  }

  DqkParams p = standard_module_params(ctx);
  ExactMatrix first = p.kappa * (Ui * P), second = p.upsilon * (U * Pi);
  if (variant == 1)
    res.checks.push_back(check_matrices("uq_std.recover_a", "A = h + kappa Upsilon^{-1} Psi x + upsilon Upsilon Psi^{-1} y",
                                        o.A, p.h * I + first * a.X + second * a.Y));
  else
    res.checks.push_back(check_matrices("uq_std.recover_a", "A = h + kappa Upsilon^{-1} Psi y + upsilon Upsilon Psi^{-1} x",
                                        o.A, p.h * I + first * a.Y + second * a.X));
  res.checks.push_back(check_matrices("uq_std.recover_astar", "A* = h* + kappa* Upsilon^{-1} Psi^{-1} z", o.A_star,
                                      p.h_star * I + p.kappa_star * (Ui * Pi * a.Z)));

  ExactMatrix C = casimir(a);
  res.checks.push_back(check_matrices("uq_std.casimir", "the Casimir element acts as Lambda", C, o.Lambda));

  // Homogeneous components: rho_d V carries only L(d, 1).
  ExactMatrix sum(n, n);
  std::string w;
  for (const auto& [d, rho] : o.rho) {
    sum += rho;
    for (const ExactMatrix* g : {&a.X, &a.Y, &a.Z})
      if (w.empty() && !commutator(*g, rho).is_zero()) w = "rho_" + std::to_string(d) + " is not a submodule";
    if (w.empty() && C * rho != casimir_scalar(ctx.q, d, 1) * rho)
      w = "Delta differs from the L(" + std::to_string(d) + ",1) scalar on rho_" + std::to_string(d) + " V";
  }
  for (int d = 0; d <= D && w.empty(); ++d)
    for (int d2 = 0; d2 <= D && w.empty(); ++d2)
      for (int e1 : {1, -1})
        for (int e2 : {1, -1})
          if ((d != d2 || e1 != e2) && casimir_scalar(ctx.q, d, e1) == casimir_scalar(ctx.q, d2, e2))
            w = "Casimir scalars coincide";
  bool full = sum == I;
  res.checks.push_back(make_check("uq_std.homogeneous", "V_{d,-1} = 0 and V_{d,1} = rho_d V", w.empty() && full,
                                  w.empty() ? "rho_d do not sum to I" : w));

  if (variant == 2) {
    UqAction b = build(1);
    ExactMatrix S = ctx.qp(te) * (Ui * Ui * P * P);   // q^{2e} Upsilon^{-2} Psi^2
    ExactMatrix Si = ctx.qp(-te) * (U * U * Pi * Pi);  // its inverse
    res.checks.push_back(check_matrices("uq_std.cross_e", "e' = -q^{-2e} Upsilon^2 Psi^{-2} e", a.E, -(Si * b.E)));
    res.checks.push_back(check_matrices("uq_std.cross_f", "f' = -q^{2e} Upsilon^{-2} Psi^2 f", a.F, -(S * b.F)));
    res.checks.push_back(check_matrices("uq_std.cross_x",
                                        "x' = -q^{2e} Upsilon^{-2} Psi^2 x + (1 + q^{2e} Upsilon^{-2} Psi^2) z^{-1}", a.X,
                                        -(S * b.X) + (I + S) * b.Z_inv));
    res.checks.push_back(check_matrices("uq_std.cross_y",
                                        "y' = -q^{-2e} Upsilon^2 Psi^{-2} y + (1 + q^{-2e} Upsilon^2 Psi^{-2}) z^{-1}", a.Y,
                                        -(Si * b.Y) + (I + Si) * b.Z_inv));
    res.checks.push_back(check_matrices("uq_std.cross_z", "z' = z", a.Z, b.Z));
  }
  return res;
}

}  // namespace dpg
