// Distance-regular graph data: intersection numbers, the Bose-Mesner algebra,
// primitive idempotents, Krein parameters and dual eigenvalues.
//
// Elements of the Bose-Mesner algebra M are handled in the basis A_0..A_D of
// distance matrices.  Products use the intersection numbers p^h_ij, which
// verify_distance_regular has counted on the graph itself, so a coordinate
// identity in M is an identity between the actual n x n matrices.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dpg/linexact.hpp"
#include "dpg/polar.hpp"

namespace dpg {

struct NotDistanceRegular : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IntersectionData {
  int D = 0;
  std::vector<long> c, a, b;
  std::vector<long> sizes;  // k_i = |Gamma_i(x)|
  // p[h][i][j] = |Gamma_i(x) cap Gamma_j(y)| for dist(x, y) = h
  std::vector<std::vector<std::vector<long>>> p;

  long k() const { return b.empty() ? 0 : b[0]; }
  long p_at(int h, int i, int j) const { return p[h][i][j]; }
};

IntersectionData verify_distance_regular(const Graph& g);

// The algebra M in the basis A_0..A_D.
class BoseMesnerAlgebra {
 public:
  explicit BoseMesnerAlgebra(const IntersectionData& data) : data_(data) {}
  int D() const { return data_.D; }
  Vector one() const;
  Vector adjacency() const;
  Vector multiply(const Vector& x, const Vector& y) const;
  Vector hadamard(const Vector& x, const Vector& y) const;
  // sum_h x_h A_h as a concrete matrix.
  ExactMatrix materialize(const Vector& x, const Graph& g) const;
  // (sum_h x_h A_h) v
  Vector apply(const Vector& x, const Graph& g, const Vector& v) const;

 private:
  IntersectionData data_;
};

struct BoseMesnerData {
  Vector theta;                  // theta_0 > ... > theta_D
  std::vector<Vector> idempotent;  // E_i in the A-basis
  std::vector<long> multiplicity;  // m_i = rank E_i
  // krein[h][i][j] = q^h_ij
  std::vector<std::vector<std::vector<Rational>>> krein;
  Vector theta_star;            // dual eigenvalues for E_1
  ExactScalar zeta, xi;
};

// Closed forms for a dual polar graph.
Vector dpg_eigenvalues(const FormSpec& s);
std::vector<Rational> dpg_multiplicities(const FormSpec& s);
ExactScalar dpg_zeta(const FormSpec& s);
ExactScalar dpg_xi(const FormSpec& s);
Vector dpg_dual_eigenvalues(const FormSpec& s);
void dpg_intersection_numbers(const FormSpec& s, std::vector<Rational>& c, std::vector<Rational>& a,
                              std::vector<Rational>& b);

struct TdScalars {
  ExactScalar beta, gamma, gamma_star, varrho, varrho_star;
};

// Closed forms for beta, gamma, gamma*, varrho, varrho*; checked against the
// three-term recurrences of theta and theta* before returning.
TdScalars td_scalars(const FormSpec& s);

struct SpectralCheck {
  bool ok = true;
  std::string failure;
};

// Idempotents from the closed-form eigenvalues; verifies sum E_i = I,
// A E_i = theta_i E_i, E_i E_j = delta_ij E_i, ranks against the closed-form
// multiplicities, Krein parameters with the Q-polynomial vanishing pattern, and
// the dual eigenvalues zeta + xi b^{-i}.  Throws std::runtime_error on failure.
BoseMesnerData spectral_data(const Graph& g, const IntersectionData& data, const FormSpec& s);

// Q-polynomial test: q^h_ij = 0 when one index exceeds the sum of the other
// two and nonzero when it equals it.  Returns the first violating triple as text.
std::string krein_pattern_violation(const std::vector<std::vector<std::vector<Rational>>>& krein);

}  // namespace dpg
