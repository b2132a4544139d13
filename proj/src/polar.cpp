#include "dpg/polar.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace dpg {

std::string family_name(Family f) {
  switch (f) {
    case Family::C: return "C";
    case Family::B: return "B";
    case Family::D: return "D";
    case Family::TwoD: return "2D";
    case Family::TwoAEven: return "2A_even";
    case Family::TwoAOdd: return "2A_odd";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::C, Family::B, Family::D, Family::TwoD, Family::TwoAEven, Family::TwoAOdd})
    if (family_name(f) == name) return f;
  throw InputError("unknown family '" + name + "' (expected C, B, D, 2D, 2A_even, 2A_odd)");
}

namespace {

// b = p^m with p prime, or nullopt.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint32_t b) {
  if (b < 2) return std::nullopt;
  std::uint32_t p = 2;
  while (b % p != 0) ++p;
  std::uint32_t m = 0, r = b;
  while (r % p == 0) {
    r /= p;
    ++m;
  }
  if (r != 1) return std::nullopt;
  return std::make_pair(p, m);
}

}  // namespace

FormSpec make_form_spec(Family family, int D, std::uint32_t b) {
  if (D < 1) throw InputError("D must be at least 1");
  auto pp = prime_power(b);
  if (!pp) throw InputError("b = " + std::to_string(b) + " is not a prime power");
  FormSpec s;
  s.family = family;
  s.D = D;
  s.b = b;
  switch (family) {
    case Family::C: s.n = 2 * D; s.two_e = 2; break;
    case Family::B: s.n = 2 * D + 1; s.two_e = 2; break;
    case Family::D: s.n = 2 * D; s.two_e = 0; break;
    case Family::TwoD: s.n = 2 * D + 2; s.two_e = 4; break;
    case Family::TwoAEven: s.n = 2 * D + 1; s.two_e = 3; break;
    case Family::TwoAOdd: s.n = 2 * D; s.two_e = 1; break;
  }
  if (s.hermitean() && pp->second % 2 != 0)
    throw InputError("b must be a perfect square for Hermitean families (got b = " +
                     std::to_string(b) + ")");
  if (pp->second > 8) throw InputError("field degree too large");
  s.field = build_field(pp->first, pp->second);
  if (s.hermitean()) s.conj_q = s.field.sqrt_order();
  if (family == Family::TwoD) {
    // smallest c with x^2 + x + c free of roots
    for (FieldElement c = 0; c < s.field.order(); ++c) {
      bool root = false;
      for (FieldElement x = 0; x < s.field.order() && !root; ++x)
        root = s.field.add(s.field.add(s.field.mul(x, x), x), c) == 0;
      if (!root) {
        s.anisotropic_c = c;
        break;
      }
    }
  }
  return s;
}

namespace {

FieldElement quad_value(const FormSpec& s, const GfVector& x) {
  const FieldSpec& f = s.field;
  FieldElement v = 0;
  int D = s.D;
  switch (s.family) {
    case Family::B:
      v = f.mul(x[0], x[0]);
      for (int i = 1; i <= D; ++i) v = f.add(v, f.mul(x[i], x[D + i]));
      return v;
    case Family::D:
      for (int i = 0; i < D; ++i) v = f.add(v, f.mul(x[i], x[D + i]));
      return v;
    case Family::TwoD: {
      for (int i = 0; i < D; ++i) v = f.add(v, f.mul(x[i], x[D + i]));
      FieldElement a = x[2 * D], b = x[2 * D + 1];
      FieldElement nv = f.add(f.add(f.mul(a, a), f.mul(a, b)), f.mul(s.anisotropic_c, f.mul(b, b)));
      return f.add(v, nv);
    }
    default: break;
  }
  return 0;
}

FieldElement pair_value(const FormSpec& s, const GfVector& u, const GfVector& v) {
  const FieldSpec& f = s.field;
  int D = s.D;
  FieldElement r = 0;
  switch (s.family) {
    case Family::C:
      for (int i = 0; i < D; ++i)
        r = f.add(r, f.sub(f.mul(u[i], v[D + i]), f.mul(u[D + i], v[i])));
      return r;
    case Family::TwoAOdd:
      for (int i = 0; i < D; ++i) {
        r = f.add(r, f.mul(u[i], f.frobenius(v[D + i], s.conj_q)));
        r = f.add(r, f.mul(u[D + i], f.frobenius(v[i], s.conj_q)));
      }
      return r;
    case Family::TwoAEven:
      for (int i = 0; i < s.n; ++i) r = f.add(r, f.mul(u[i], f.frobenius(v[i], s.conj_q)));
      return r;
    default: {
      GfVector w(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) w[i] = f.add(u[i], v[i]);
      return f.sub(f.sub(quad_value(s, w), quad_value(s, u)), quad_value(s, v));
    }
  }
}

}  // namespace

FieldElement form_value(const FormSpec& spec, const GfVector& u, const std::optional<GfVector>& v) {
  if (static_cast<int>(u.size()) != spec.n || (v && static_cast<int>(v->size()) != spec.n))
    throw InputError("vector length does not match the ambient dimension " + std::to_string(spec.n));
  if (!v) return spec.quadratic() ? quad_value(spec, u) : pair_value(spec, u, u);
  return pair_value(spec, u, *v);
}

std::size_t gf_rref(const FieldSpec& f, std::vector<GfVector>& rows) {
  if (rows.empty()) return 0;
  std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    FieldElement inv = f.inv(rows[r][c]);
    for (std::size_t j = c; j < cols; ++j) rows[r][j] = f.mul(rows[r][j], inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      FieldElement m = rows[i][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(m, rows[r][j]));
    }
    ++r;
  }
  rows.resize(r);
  return r;
}

std::string IsotropicSubspace::key() const {
  static const char* digits = "0123456789abcdef";
  std::string k;
  for (const auto& row : basis)
    for (FieldElement x : row) {
      k.push_back(digits[(x >> 4) & 15]);
      k.push_back(digits[x & 15]);
    }
  return k;
}

namespace {

bool is_singular(const FormSpec& s, const GfVector& v) {
  return form_value(s, v, std::nullopt) == 0;
}

bool orthogonal_to(const FormSpec& s, const std::vector<GfVector>& basis, const GfVector& v) {
  for (const auto& w : basis)
    if (form_value(s, w, v) != 0) return false;
  return true;
}

}  // namespace

std::vector<IsotropicSubspace> enumerate_maximal_isotropic(const FormSpec& spec, std::size_t budget) {
  const FieldSpec& f = spec.field;
  std::size_t n = static_cast<std::size_t>(spec.n);
  // all nonzero singular vectors, normalised so the first nonzero coordinate is 1
  std::vector<GfVector> points;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= f.order();
  for (std::uint64_t code = 1; code < total; ++code) {
    GfVector v(n);
    std::uint64_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = static_cast<FieldElement>(c % f.order());
      c /= f.order();
    }
    std::size_t lead = 0;
    while (v[lead] == 0) ++lead;
    if (v[lead] != 1) continue;
    if (is_singular(spec, v)) points.push_back(std::move(v));
  }
  std::vector<std::set<std::string>> seen(static_cast<std::size_t>(spec.D) + 1);
  std::vector<IsotropicSubspace> found;
  std::size_t discovered = 0;
  std::function<void(const std::vector<GfVector>&)> extend = [&](const std::vector<GfVector>& w) {
    std::size_t k = w.size();
    if (static_cast<int>(k) == spec.D) {
      found.push_back(IsotropicSubspace{w});
      return;
    }
    for (const auto& v : points) {
      if (!orthogonal_to(spec, w, v)) continue;
      std::vector<GfVector> next = w;
      next.push_back(v);
      if (gf_rref(f, next) != k + 1) continue;
      IsotropicSubspace probe{next};
      if (!seen[k + 1].insert(probe.key()).second) continue;
      if (++discovered > budget)
        throw BudgetExceeded("enumeration exceeded the budget of " + std::to_string(budget) +
                             " subspaces");
      extend(next);
    }
  };
  extend({});
  std::sort(found.begin(), found.end(),
            [](const IsotropicSubspace& a, const IsotropicSubspace& b) { return a.key() < b.key(); });
  return found;
}

int intersection_dim(const FormSpec& spec, const IsotropicSubspace& y, const IsotropicSubspace& z) {
  std::vector<GfVector> rows = y.basis;
  rows.insert(rows.end(), z.basis.begin(), z.basis.end());
  std::size_t r = gf_rref(spec.field, rows);
  return static_cast<int>(y.basis.size() + z.basis.size() - r);
}

Graph graph_from_adjacency(std::vector<std::vector<std::uint32_t>> adj) {
  Graph g;
  g.n = adj.size();
  g.adj = std::move(adj);
  g.dist.assign(g.n * g.n, 255);
  for (std::size_t s = 0; s < g.n; ++s) {
    std::deque<std::uint32_t> queue{static_cast<std::uint32_t>(s)};
    g.dist[s * g.n + s] = 0;
    while (!queue.empty()) {
      std::uint32_t u = queue.front();
      queue.pop_front();
      for (auto w : g.adj[u])
        if (g.dist[s * g.n + w] == 255) {
          g.dist[s * g.n + w] = static_cast<std::uint8_t>(g.dist[s * g.n + u] + 1);
          g.diameter = std::max<int>(g.diameter, g.dist[s * g.n + w]);
          queue.push_back(w);
        }
    }
  }
  return g;
}

PolarGraph build_polar_graph(const FormSpec& spec, std::size_t budget) {
  PolarGraph pg;
  pg.spec = spec;
  pg.vertices = enumerate_maximal_isotropic(spec, budget);
  std::size_t n = pg.vertices.size();
  std::vector<std::vector<std::uint32_t>> adj(n);
  std::vector<std::uint8_t> subspace_dist(n * n, 0);
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t z = y + 1; z < n; ++z) {
      int d = spec.D - intersection_dim(spec, pg.vertices[y], pg.vertices[z]);
      subspace_dist[y * n + z] = subspace_dist[z * n + y] = static_cast<std::uint8_t>(d);
      if (d == 1) {
        adj[y].push_back(static_cast<std::uint32_t>(z));
        adj[z].push_back(static_cast<std::uint32_t>(y));
      }
    }
  pg.graph = graph_from_adjacency(std::move(adj));
  if (pg.graph.dist != subspace_dist)
    throw std::logic_error("graph distance differs from D - dim(y cap z)");
  return pg;
}

std::string vertex_hex(const FormSpec& spec, const IsotropicSubspace& v) {
  static const char* digits = "0123456789abcdef";
  int width = spec.field.order() <= 16 ? 1 : 2;
  std::string s;
  for (const auto& row : v.basis)
    for (FieldElement x : row) {
      if (width == 2) s.push_back(digits[(x >> 4) & 15]);
      s.push_back(digits[x & 15]);
    }
  return s;
}

IsotropicSubspace vertex_from_hex(const FormSpec& spec, const std::string& hex) {
  int width = spec.field.order() <= 16 ? 1 : 2;
  std::size_t need = static_cast<std::size_t>(spec.D * spec.n * width);
  if (hex.size() != need) throw InputError("vertex string has length " + std::to_string(hex.size()) +
                                           ", expected " + std::to_string(need));
  IsotropicSubspace v;
  std::size_t pos = 0;
  for (int i = 0; i < spec.D; ++i) {
    GfVector row(static_cast<std::size_t>(spec.n));
    for (int j = 0; j < spec.n; ++j) {
      FieldElement x = 0;
      for (int w = 0; w < width; ++w) {
        char ch = hex[pos++];
        int d = (ch >= '0' && ch <= '9') ? ch - '0' : (ch >= 'a' && ch <= 'f') ? ch - 'a' + 10 : -1;
        if (d < 0) throw InputError("bad hex digit in vertex string");
        x = x * 16 + static_cast<FieldElement>(d);
      }
      if (x >= spec.field.order()) throw InputError("vertex entry outside the field");
      row[static_cast<std::size_t>(j)] = x;
    }
    v.basis.push_back(std::move(row));
  }
  return v;
}

std::string adjacency_row_hex(const Graph& g, std::size_t y) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (std::size_t z = 0; z < g.n; z += 4) {
    int nib = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      nib <<= 1;
      if (z + k < g.n && g.adjacent(y, z + k)) nib |= 1;
    }
    s.push_back(digits[nib]);
  }
  return s;
}

}  // namespace dpg
