// Exact linear algebra over ExactScalar.
//
// ExactMatrix keeps each row as a sorted list of its nonzero entries.  Graph
// matrices at base vertex x are mostly sparse, and products iterate over the
// stored entries only, so A, L, F, R, K and their short words stay cheap on
// graphs with several hundred vertices.  Elimination works on dense rows.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dpg/exact.hpp"

namespace dpg {

using Vector = std::vector<ExactScalar>;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularMatrix : std::domain_error {
  using std::domain_error::domain_error;
};

struct SpectrumError : std::domain_error {
  using std::domain_error::domain_error;
};

struct MatEntry {
  std::uint32_t col;
  ExactScalar val;
};

class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

  static ExactMatrix identity(std::size_t n) { return scalar(n, ExactScalar(1)); }
  static ExactMatrix scalar(std::size_t n, const ExactScalar& s);
  static ExactMatrix diagonal(const Vector& d);
  static ExactMatrix from_rows(const std::vector<Vector>& rows);
  // Matrix whose columns are the given vectors.
  static ExactMatrix from_columns(std::size_t n, const std::vector<Vector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  ExactScalar at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, ExactScalar v);
  const std::vector<MatEntry>& row(std::size_t i) const { return data_[i]; }
  // Replace row i; entries must be sorted by column and nonzero.
  void set_row(std::size_t i, std::vector<MatEntry> entries) { data_[i] = std::move(entries); }
  std::size_t nnz() const;
  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }
  bool is_diagonal() const;
  bool is_symmetric() const;

  ExactMatrix transpose() const;
  ExactMatrix& operator+=(const ExactMatrix& m);
  ExactMatrix& operator-=(const ExactMatrix& m);
  ExactMatrix& operator*=(const ExactScalar& s);
  ExactMatrix operator-() const;
  // this += s*m
  void add_scaled(const ExactScalar& s, const ExactMatrix& m);

  Vector apply(const Vector& v) const;
  ExactScalar trace() const;
  ExactMatrix hadamard(const ExactMatrix& m) const;
  ExactMatrix restrict_to(const std::vector<std::size_t>& row_idx,
                          const std::vector<std::size_t>& col_idx) const;
  std::vector<Vector> to_dense() const;

  // First (i, j) at which the two matrices differ.
  std::optional<std::pair<std::size_t, std::size_t>> first_difference(const ExactMatrix& m) const;

  friend bool operator==(const ExactMatrix& x, const ExactMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && !x.first_difference(y);
  }
  friend bool operator!=(const ExactMatrix& x, const ExactMatrix& y) { return !(x == y); }

  friend ExactMatrix operator+(ExactMatrix x, const ExactMatrix& y) { return x += y; }
  friend ExactMatrix operator-(ExactMatrix x, const ExactMatrix& y) { return x -= y; }
  friend ExactMatrix operator*(ExactMatrix x, const ExactScalar& s) { return x *= s; }
  friend ExactMatrix operator*(const ExactScalar& s, ExactMatrix x) { return x *= s; }
  friend ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<MatEntry>> data_;
};

ExactMatrix commutator(const ExactMatrix& a, const ExactMatrix& b);
// Product of a list of factors, left to right.
ExactMatrix product(std::initializer_list<const ExactMatrix*> factors);

// A subspace of an ambient coordinate space, stored as an RREF basis.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}
  static Subspace span(std::size_t ambient, std::vector<Vector> vectors);
  static Subspace whole(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const Vector& v) const;
  // Coordinates of v in the RREF basis; v must lie in the subspace.
  Vector coordinates(const Vector& v) const;
  Subspace intersect(const Subspace& other) const;
  Subspace plus(const Subspace& other) const;
  // Orthogonal complement for the standard dot product.
  Subspace perp() const;

  friend bool operator==(const Subspace& x, const Subspace& y) {
    return x.ambient_ == y.ambient_ && x.basis_ == y.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

// Reduce the rows in place to reduced row echelon form, dropping zero rows.
// The pivot of each row is its first nonzero column.  Returns pivot columns.
std::vector<std::size_t> rref_in_place(std::vector<Vector>& rows, std::size_t cols);

Subspace kernel(const ExactMatrix& m);
Subspace column_space(const ExactMatrix& m);
std::size_t rank(const ExactMatrix& m);
ExactMatrix inverse(const ExactMatrix& m);
// Solve m x = v for a square invertible m.
Vector solve(const ExactMatrix& m, const Vector& v);

// Matrix M with images[j] = sum_i M(i, j) basis[i]; the basis must be linearly
// independent.  Throws DimensionMismatch if an image leaves the span.
ExactMatrix represent(const std::vector<Vector>& basis, const std::vector<Vector>& images);

// E_i = prod_{j != i} (A - eigs[j] I) / (eigs[i] - eigs[j]).
ExactMatrix spectral_projector(const ExactMatrix& a, const Vector& eigs, std::size_t i);
// All projectors; throws SpectrumError unless they sum to I and A E_i = eigs[i] E_i.
std::vector<ExactMatrix> spectral_projectors(const ExactMatrix& a, const Vector& eigs);

// P = B (B^T B)^{-1} B^T for a basis B of S.
ExactMatrix orthogonal_projector(const Subspace& s);

ExactScalar dot(const Vector& u, const Vector& v);
bool is_zero_vector(const Vector& v);

}  // namespace dpg
