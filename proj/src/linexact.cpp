#include "dpg/linexact.hpp"

#include <algorithm>
#include <string>

namespace dpg {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DimensionMismatch(what);
}

// Merge two sorted sparse rows into s*x + y.
std::vector<MatEntry> merge_rows(const std::vector<MatEntry>& x, const ExactScalar& s,
                                 const std::vector<MatEntry>& y) {
  std::vector<MatEntry> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  bool unit = s.is_one();
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].col < y[j].col)) {
      out.push_back({x[i].col, unit ? x[i].val : s * x[i].val});
      ++i;
    } else if (i == x.size() || y[j].col < x[i].col) {
      out.push_back(y[j]);
      ++j;
    } else {
      ExactScalar v = y[j].val;
      v.add_product(s, x[i].val);
      if (!v.is_zero()) out.push_back({x[i].col, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

ExactMatrix ExactMatrix::scalar(std::size_t n, const ExactScalar& s) {
  ExactMatrix m(n, n);
  if (s.is_zero()) return m;
  for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back({static_cast<std::uint32_t>(i), s});
  return m;
}

ExactMatrix ExactMatrix::diagonal(const Vector& d) {
  ExactMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!d[i].is_zero()) m.data_[i].push_back({static_cast<std::uint32_t>(i), d[i]});
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<Vector>& rows) {
  std::size_t c = rows.empty() ? 0 : rows.front().size();
  ExactMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == c, "ragged rows");
    for (std::size_t j = 0; j < c; ++j)
      if (!rows[i][j].is_zero()) m.data_[i].push_back({static_cast<std::uint32_t>(j), rows[i][j]});
  }
  return m;
}

ExactMatrix ExactMatrix::from_columns(std::size_t n, const std::vector<Vector>& cols) {
  ExactMatrix m(n, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    require(cols[j].size() == n, "column length");
    for (std::size_t i = 0; i < n; ++i)
      if (!cols[j][i].is_zero()) m.data_[i].push_back({static_cast<std::uint32_t>(j), cols[j][i]});
  }
  return m;
}

ExactScalar ExactMatrix::at(std::size_t i, std::size_t j) const {
  const auto& r = data_[i];
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const MatEntry& e, std::size_t c) { return e.col < c; });
  if (it != r.end() && it->col == j) return it->val;
  return ExactScalar();
}

void ExactMatrix::set(std::size_t i, std::size_t j, ExactScalar v) {
  require(i < rows_ && j < cols_, "index out of range");
  auto& r = data_[i];
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const MatEntry& e, std::size_t c) { return e.col < c; });
  bool present = it != r.end() && it->col == j;
  if (v.is_zero()) {
    if (present) r.erase(it);
    return;
  }
  if (present)
    it->val = std::move(v);
  else
    r.insert(it, {static_cast<std::uint32_t>(j), std::move(v)});
}

std::size_t ExactMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

bool ExactMatrix::is_zero() const {
  for (const auto& r : data_)
    if (!r.empty()) return false;
  return true;
}

bool ExactMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& e : data_[i])
      if (e.col != i) return false;
  return true;
}

bool ExactMatrix::is_symmetric() const { return is_square() && *this == transpose(); }

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& e : data_[i]) t.data_[e.col].push_back({static_cast<std::uint32_t>(i), e.val});
  return t;
}

ExactMatrix& ExactMatrix::operator+=(const ExactMatrix& m) {
  add_scaled(ExactScalar(1), m);
  return *this;
}

ExactMatrix& ExactMatrix::operator-=(const ExactMatrix& m) {
  add_scaled(ExactScalar(-1), m);
  return *this;
}

void ExactMatrix::add_scaled(const ExactScalar& s, const ExactMatrix& m) {
  require(rows_ == m.rows_ && cols_ == m.cols_, "matrix sum shape");
  if (s.is_zero()) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (m.data_[i].empty()) continue;
    data_[i] = merge_rows(m.data_[i], s, data_[i]);
  }
}

ExactMatrix& ExactMatrix::operator*=(const ExactScalar& s) {
  if (s.is_zero()) {
    for (auto& r : data_) r.clear();
    return *this;
  }
  if (s.is_one()) return *this;
  for (auto& r : data_)
    for (auto& e : r) e.val *= s;
  return *this;
}

ExactMatrix ExactMatrix::operator-() const {
  ExactMatrix m = *this;
  for (auto& r : m.data_)
    for (auto& e : r) e.val = -e.val;
  return m;
}

Vector ExactMatrix::apply(const Vector& v) const {
  require(v.size() == cols_, "matrix-vector shape");
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& e : data_[i]) {
      if (v[e.col].is_zero()) continue;
      if (e.val.is_one())
        out[i] += v[e.col];
      else
        out[i].add_product(e.val, v[e.col]);
    }
  return out;
}

ExactScalar ExactMatrix::trace() const {
  ExactScalar t;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
  return t;
}

ExactMatrix ExactMatrix::hadamard(const ExactMatrix& m) const {
  require(rows_ == m.rows_ && cols_ == m.cols_, "hadamard shape");
  ExactMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    const auto& x = data_[i];
    const auto& y = m.data_[i];
    std::size_t a = 0, b = 0;
    while (a < x.size() && b < y.size()) {
      if (x[a].col < y[b].col)
        ++a;
      else if (y[b].col < x[a].col)
        ++b;
      else {
        out.data_[i].push_back({x[a].col, x[a].val * y[b].val});
        ++a;
        ++b;
      }
    }
  }
  return out;
}

ExactMatrix ExactMatrix::restrict_to(const std::vector<std::size_t>& row_idx,
                                     const std::vector<std::size_t>& col_idx) const {
  std::vector<std::int64_t> where(cols_, -1);
  for (std::size_t j = 0; j < col_idx.size(); ++j) where[col_idx[j]] = static_cast<std::int64_t>(j);
  ExactMatrix out(row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i) {
    for (const auto& e : data_[row_idx[i]])
      if (where[e.col] >= 0) out.data_[i].push_back({static_cast<std::uint32_t>(where[e.col]), e.val});
    std::sort(out.data_[i].begin(), out.data_[i].end(),
              [](const MatEntry& p, const MatEntry& q) { return p.col < q.col; });
  }
  return out;
}

std::vector<Vector> ExactMatrix::to_dense() const {
  std::vector<Vector> d(rows_, Vector(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& e : data_[i]) d[i][e.col] = e.val;
  return d;
}

std::optional<std::pair<std::size_t, std::size_t>> ExactMatrix::first_difference(
    const ExactMatrix& m) const {
  require(rows_ == m.rows_ && cols_ == m.cols_, "comparison shape");
  for (std::size_t i = 0; i < rows_; ++i) {
    const auto& x = data_[i];
    const auto& y = m.data_[i];
    std::size_t n = std::min(x.size(), y.size());
    for (std::size_t k = 0; k < n; ++k)
      if (x[k].col != y[k].col || x[k].val != y[k].val)
        return std::make_pair(i, static_cast<std::size_t>(std::min(x[k].col, y[k].col)));
    if (x.size() != y.size())
      return std::make_pair(i, static_cast<std::size_t>(x.size() > n ? x[n].col : y[n].col));
  }
  return std::nullopt;
}

ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y) {
  require(x.cols_ == y.rows_, "matrix product shape");
  ExactMatrix r(x.rows_, y.cols_);
  Vector acc(y.cols_);
  std::vector<char> used(y.cols_, 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t i = 0; i < x.rows_; ++i) {
    touched.clear();
    for (const auto& xe : x.data_[i]) {
      bool unit = xe.val.is_one();
      for (const auto& ye : y.data_[xe.col]) {
        if (!used[ye.col]) {
          used[ye.col] = 1;
          touched.push_back(ye.col);
        }
        if (unit)
          acc[ye.col] += ye.val;
        else
          acc[ye.col].add_product(xe.val, ye.val);
      }
    }
    std::sort(touched.begin(), touched.end());
    auto& row = r.data_[i];
    for (auto j : touched) {
      if (!acc[j].is_zero()) row.push_back({j, std::move(acc[j])});
      acc[j] = ExactScalar();
      used[j] = 0;
    }
  }
  return r;
}

ExactMatrix commutator(const ExactMatrix& a, const ExactMatrix& b) { return a * b - b * a; }

ExactMatrix product(std::initializer_list<const ExactMatrix*> factors) {
  auto it = factors.begin();
  ExactMatrix r = **it;
  for (++it; it != factors.end(); ++it) r = r * **it;
  return r;
}

std::vector<std::size_t> rref_in_place(std::vector<Vector>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  std::vector<std::size_t> nz;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Vector& pr = rows[r];
    if (!pr[c].is_one()) {
      ExactScalar inv = pr[c].inverse();
      for (std::size_t j = c; j < cols; ++j)
        if (!pr[j].is_zero()) pr[j] *= inv;
    }
    nz.clear();
    for (std::size_t j = c; j < cols; ++j)
      if (!pr[j].is_zero()) nz.push_back(j);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      ExactScalar f = rows[i][c];
      Vector& ri = rows[i];
      for (auto j : nz) ri[j].sub_product(f, pr[j]);
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

Subspace Subspace::span(std::size_t ambient, std::vector<Vector> vectors) {
  for (const auto& v : vectors) require(v.size() == ambient, "span vector length");
  Subspace s(ambient);
  s.pivots_ = rref_in_place(vectors, ambient);
  s.basis_ = std::move(vectors);
  return s;
}

Subspace Subspace::whole(std::size_t ambient) {
  Subspace s(ambient);
  for (std::size_t i = 0; i < ambient; ++i) {
    Vector v(ambient);
    v[i] = 1;
    s.basis_.push_back(std::move(v));
    s.pivots_.push_back(i);
  }
  return s;
}

Vector Subspace::coordinates(const Vector& v) const {
  require(v.size() == ambient_, "coordinate vector length");
  Vector c(basis_.size());
  Vector rest = v;
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    c[k] = v[pivots_[k]];
    if (c[k].is_zero()) continue;
    for (std::size_t j = 0; j < ambient_; ++j)
      if (!basis_[k][j].is_zero()) rest[j].sub_product(c[k], basis_[k][j]);
  }
  if (!is_zero_vector(rest)) throw DimensionMismatch("vector not in subspace");
  return c;
}

bool Subspace::contains(const Vector& v) const {
  try {
    coordinates(v);
    return true;
  } catch (const DimensionMismatch&) {
    return false;
  }
}

Subspace Subspace::perp() const {
  if (basis_.empty()) return whole(ambient_);
  return kernel(ExactMatrix::from_rows(basis_));
}

Subspace Subspace::intersect(const Subspace& other) const {
  require(ambient_ == other.ambient_, "intersect ambient");
  std::vector<Vector> rows = perp().basis_;
  for (const auto& v : other.perp().basis_) rows.push_back(v);
  if (rows.empty()) return whole(ambient_);
  return kernel(ExactMatrix::from_rows(rows));
}

Subspace Subspace::plus(const Subspace& other) const {
  require(ambient_ == other.ambient_, "sum ambient");
  std::vector<Vector> v = basis_;
  v.insert(v.end(), other.basis_.begin(), other.basis_.end());
  return span(ambient_, std::move(v));
}

Subspace kernel(const ExactMatrix& m) {
  std::vector<Vector> rows = m.to_dense();
  std::vector<std::size_t> piv = rref_in_place(rows, m.cols());
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto p : piv) is_pivot[p] = 1;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r)
      if (!rows[r][f].is_zero()) v[piv[r]] = -rows[r][f];
    basis.push_back(std::move(v));
  }
  return Subspace::span(m.cols(), std::move(basis));
}

Subspace column_space(const ExactMatrix& m) {
  return Subspace::span(m.rows(), m.transpose().to_dense());
}

std::size_t rank(const ExactMatrix& m) {
  std::vector<Vector> rows = m.to_dense();
  return rref_in_place(rows, m.cols()).size();
}

ExactMatrix inverse(const ExactMatrix& m) {
  require(m.is_square(), "inverse of non-square matrix");
  std::size_t n = m.rows();
  std::vector<Vector> rows = m.to_dense();
  for (std::size_t i = 0; i < n; ++i) {
    rows[i].resize(2 * n);
    rows[i][n + i] = 1;
  }
  std::vector<std::size_t> piv = rref_in_place(rows, 2 * n);
  if (piv.size() < n || piv[n - 1] != n - 1) throw SingularMatrix("matrix is singular");
  ExactMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<MatEntry> r;
    for (std::size_t j = 0; j < n; ++j)
      if (!rows[i][n + j].is_zero()) r.push_back({static_cast<std::uint32_t>(j), rows[i][n + j]});
    inv.set_row(i, std::move(r));
  }
  return inv;
}

Vector solve(const ExactMatrix& m, const Vector& v) {
  require(m.is_square() && v.size() == m.rows(), "solve shape");
  std::size_t n = m.rows();
  std::vector<Vector> rows = m.to_dense();
  for (std::size_t i = 0; i < n; ++i) rows[i].push_back(v[i]);
  std::vector<std::size_t> piv = rref_in_place(rows, n + 1);
  if (piv.size() != n || (n > 0 && piv[n - 1] != n - 1)) throw SingularMatrix("singular system");
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rows[i][n];
  return x;
}

ExactMatrix represent(const std::vector<Vector>& basis, const std::vector<Vector>& images) {
  std::size_t m = basis.size();
  if (m == 0) return ExactMatrix(0, images.size());
  std::size_t n = basis.front().size();
  std::vector<Vector> rows = basis;
  std::vector<std::size_t> piv = rref_in_place(rows, n);
  if (piv.size() != m) throw DimensionMismatch("basis is linearly dependent");
  // The pivot coordinates of the basis form an invertible m x m block.
  ExactMatrix block(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (!basis[j][piv[i]].is_zero()) block.set(i, j, basis[j][piv[i]]);
  ExactMatrix block_inv = inverse(block);
  ExactMatrix out(m, images.size());
  for (std::size_t j = 0; j < images.size(); ++j) {
    require(images[j].size() == n, "image length");
    Vector rhs(m);
    for (std::size_t i = 0; i < m; ++i) rhs[i] = images[j][piv[i]];
    Vector c = block_inv.apply(rhs);
    Vector rest = images[j];
    for (std::size_t k = 0; k < m; ++k) {
      if (c[k].is_zero()) continue;
      out.set(k, j, c[k]);
      for (std::size_t y = 0; y < n; ++y)
        if (!basis[k][y].is_zero()) rest[y].sub_product(c[k], basis[k][y]);
    }
    if (!is_zero_vector(rest)) throw DimensionMismatch("image outside the span of the basis");
  }
  return out;
}

ExactMatrix spectral_projector(const ExactMatrix& a, const Vector& eigs, std::size_t i) {
  require(a.is_square(), "spectral projector of non-square matrix");
  require(i < eigs.size(), "eigenvalue index");
  for (std::size_t j = 0; j < eigs.size(); ++j)
    for (std::size_t k = j + 1; k < eigs.size(); ++k)
      if (eigs[j] == eigs[k])
        throw SpectrumError("repeated eigenvalue " + eigs[j].to_string() + " at indices " +
                            std::to_string(j) + ", " + std::to_string(k));
  ExactMatrix p = ExactMatrix::identity(a.rows());
  ExactScalar denom(1);
  bool first = true;
  for (std::size_t j = 0; j < eigs.size(); ++j) {
    if (j == i) continue;
    ExactMatrix f = a;
    f.add_scaled(-eigs[j], ExactMatrix::identity(a.rows()));
    p = first ? f : p * f;
    first = false;
    denom *= eigs[i] - eigs[j];
  }
  p *= denom.inverse();
  return p;
}

std::vector<ExactMatrix> spectral_projectors(const ExactMatrix& a, const Vector& eigs) {
  std::vector<ExactMatrix> es;
  ExactMatrix sum(a.rows(), a.cols());
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    es.push_back(spectral_projector(a, eigs, i));
    sum += es.back();
    if (a * es.back() != es.back() * eigs[i])
      throw SpectrumError("A E_" + std::to_string(i) + " != theta_" + std::to_string(i) + " E_" +
                          std::to_string(i));
  }
  if (sum != ExactMatrix::identity(a.rows()))
    throw SpectrumError("projectors do not sum to I; eigenvalue list is not the full spectrum");
  return es;
}

ExactMatrix orthogonal_projector(const Subspace& s) {
  std::size_t n = s.ambient();
  if (s.dim() == 0) return ExactMatrix(n, n);
  ExactMatrix bt = ExactMatrix::from_rows(s.basis());
  ExactMatrix b = bt.transpose();
  ExactMatrix gram = bt * b;
  ExactMatrix ginv;
  try {
    ginv = inverse(gram);
  } catch (const SingularMatrix&) {
    throw SingularMatrix("degenerate basis: Gram matrix is singular");
  }
  return b * (ginv * bt);
}

ExactScalar dot(const Vector& u, const Vector& v) {
  require(u.size() == v.size(), "dot length");
  ExactScalar s;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!u[i].is_zero() && !v[i].is_zero()) s.add_product(u[i], v[i]);
  return s;
}

bool is_zero_vector(const Vector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace dpg
