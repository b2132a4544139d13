// The subconstituent algebra T = T(x) of a dual polar graph at a base vertex.
//
// The context holds the dual idempotents as a level map, the generators
// L, F, R, K and the derived scalars.  Central elements are assembled from
// L, F, R, K and checked against the independent entry tables.  The
// homogeneous decomposition of the standard module is computed inside the
// kernel of L on each subconstituent, where the central elements reduce to
// short words in F, L, R.

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "dpg/check.hpp"
#include "dpg/drg.hpp"
#include "dpg/linexact.hpp"
#include "dpg/polar.hpp"

namespace dpg {

struct TerwilligerContext {
  const Graph* graph = nullptr;
  FormSpec spec;
  IntersectionData data;
  BoseMesnerData bm;
  std::size_t x = 0;
  int D = 0;
  ExactScalar q;

  std::vector<int> level;                        // level[y] = dist(x, y)
  std::vector<std::vector<std::size_t>> shells;  // vertices at each distance, increasing
  std::vector<std::size_t> position;             // index of y inside its shell

  ExactMatrix A, A_star, L, F, R, K, K_inv;
  TdScalars td;
  ExactScalar zeta, xi;

  std::size_t n() const { return level.size(); }
  // q^m
  ExactScalar qp(long m) const { return q_pow(q, m); }
  // q^{2e}, which is b^e
  ExactScalar q2e() const { return qp(spec.two_e); }
  // E*_i as a 0/1 diagonal matrix
  ExactMatrix dual_idempotent(int i) const;

  // K^{m} v, a diagonal scaling by q^{-2m dist(x, y)}
  Vector apply_K(const Vector& v, int m = 1) const;
  // Restriction of a full-length vector to shell i and the inverse embedding.
  Vector restrict_to_shell(const Vector& v, int i) const;
  Vector embed_from_shell(const Vector& v, int i) const;
};

TerwilligerContext build_context(const Graph& g, const FormSpec& spec, const IntersectionData& data,
                                 const BoseMesnerData& bm, std::size_t x);

// A = L + F + R, L^T = R, F^T = F, the diagonal of K, A* = zeta I + xi K,
// E*_i A E*_j = 0 for |i - j| > 1 and trace E*_1 = k.
CheckList verify_context(const TerwilligerContext& ctx);

// The seven L, F, R, K relations, mutual commutativity of LR, RL, F, K and
// the recovery of L, F, R from A and K.
CheckList verify_lfrk(const TerwilligerContext& ctx);

// Near-polygon and quad counts relative to the base vertex.
CheckList verify_triangle_counts(const TerwilligerContext& ctx);
// No induced K_{1,2,1}; scans all quadruples, so meant for small graphs.
Check verify_no_k121(const Graph& g);

struct CentralElements {
  ExactMatrix C0, C1, C2, Omega, G, G_star;
};

// Assembled from L, F, R, K by their defining formulas.
CentralElements central_elements(const TerwilligerContext& ctx);

// Centrality, block diagonality, symmetry, the entry tables for Omega and G,
// the alpha/beta form of Omega, the level-sum form of G, G* = -gamma zeta^2 I
// - zeta Omega, the expressions through C0 and C1, the Askey-Wilson matrix
// relations and the centrality characterization on random coefficients.
CheckList verify_central(const TerwilligerContext& ctx, const CentralElements& ce,
                         std::uint64_t seed = 1);

// The tridiagonal relations of A and A* as matrix identities.
CheckList verify_tridiagonal_relations(const TerwilligerContext& ctx);

struct Triple {
  int r = 0, t = 0, d = 0;  // endpoint, dual endpoint, diameter
  friend auto operator<=>(const Triple&, const Triple&) = default;
  std::string to_string() const;
};

struct ChiValues {
  ExactScalar chi0, chi1, chi2;
  friend bool operator==(const ChiValues&, const ChiValues&) = default;
};

// r + d <= D, t + d <= D and r + t + d >= D.
std::vector<Triple> candidate_triples(int D);
ChiValues chi_values(const TerwilligerContext& ctx, const Triple& w);

// C_k v evaluated through the defining words in L, F, R, K.
Vector apply_central(const TerwilligerContext& ctx, int k, const Vector& v);

struct HomogeneousComponent {
  Triple triple;
  ChiValues chi;
  std::size_t multiplicity = 0;
  // RREF basis of E*_r V_lambda, as full-length vectors
  std::vector<Vector> endpoint_basis;

  std::size_t dim() const { return multiplicity * static_cast<std::size_t>(triple.d + 1); }
};

struct Decomposition {
  std::vector<HomogeneousComponent> components;
  CheckList checks;
};

// With thorough set, every basis vector of every component is also checked
// directly: eigenvalues of C0, C1, C2, A-invariance and mutual orthogonality.
Decomposition decompose(const TerwilligerContext& ctx, bool thorough = false);

// R^i u_j for i = 0..d and u_j in the endpoint basis.
std::vector<Vector> component_basis(const TerwilligerContext& ctx, const HomogeneousComponent& c);

// Multiset of (triple, multiplicity) pairs, sorted.
std::vector<std::pair<Triple, std::size_t>> feasible_multiset(const Decomposition& dec);

// Eigenvalues of Upsilon, Psi and Lambda on a component.
struct ComponentScalars {
  ExactScalar upsilon, psi, lambda;
};
ComponentScalars component_scalars(const TerwilligerContext& ctx, const Triple& w);

// Scalars of Omega, G, G* on an irreducible module with the given triple.
struct AwModuleScalars {
  ExactScalar omega, eta, eta_star;
};
AwModuleScalars aw_module_scalars(const TerwilligerContext& ctx, const Triple& w);

// On each component: C0, C1, C2 through Upsilon, Psi, Lambda; Omega, G, G*
// through C0, C1 and through Upsilon, Psi, Lambda, against the module scalars.
CheckList verify_upsilon_psi_lambda_scalars(const TerwilligerContext& ctx, const Decomposition& dec);

struct CentralMatrices {
  std::vector<ExactMatrix> projectors;  // E_lambda in component order
  ExactMatrix Upsilon, Upsilon_inv, Psi, Psi_inv, Lambda;
};

// Dense assembly through orthogonal projectors; intended for small graphs.
CentralMatrices upsilon_psi_lambda(const TerwilligerContext& ctx, const Decomposition& dec);

// Projector identities, centrality of Upsilon, Psi, Lambda and the matrix
// forms of C0, C1, C2, Omega, G, G*.
CheckList verify_upsilon_psi_lambda(const TerwilligerContext& ctx, const CentralElements& ce,
                                    const CentralMatrices& cm);

struct TModuleRecord {
  Triple triple;
  std::vector<Vector> dual_standard_basis;  // E_{t+i} v
  std::vector<Vector> standard_basis;       // E*_{r+i} u with u in E_t W
  // Matrices on the standard basis: A tridiagonal, A* diagonal, and the
  // restrictions of L, F, R, K^{-1} and of E_{t+i}.
  ExactMatrix A_std, A_star_std, L_std, F_std, R_std, K_inv_std;
  std::vector<ExactMatrix> E_std;
  // A* on the dual standard basis.
  ExactMatrix A_star_dual;
  Vector a, b, c, a_star, b_star, c_star;
  CheckList checks;
};

// seed must be a nonzero vector of E*_r V_lambda.
TModuleRecord extract_module(const TerwilligerContext& ctx, const HomogeneousComponent& comp,
                             const Vector& seed);

// Closed forms for the module intersection numbers.
void module_intersection_numbers(const TerwilligerContext& ctx, const Triple& w, Vector& a, Vector& b,
                                 Vector& c, Vector& a_star, Vector& b_star, Vector& c_star);

}  // namespace dpg
