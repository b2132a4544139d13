// U_q(sl2) in the equitable and Chevalley presentations.
//
// An action is stored through both sets of generators.  The modules L(d, eps)
// are built in the k/e/f basis and in the normalized x-, y- and z-eigenbases.
// Two module structures are attached to a Leonard system of dual
// q-Krawtchouk type, and two to the standard module of a dual polar graph,
// where the central elements Upsilon, Psi, Lambda enter the formulas.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpg/check.hpp"
#include "dpg/leonard.hpp"
#include "dpg/linexact.hpp"
#include "dpg/terwilliger.hpp"

namespace dpg {

struct UqAction {
  ExactScalar q;
  ExactMatrix X, Y, Z, Z_inv;   // equitable generators
  ExactMatrix K, K_inv, E, F;   // Chevalley generators

  std::size_t dim() const { return X.rows(); }

  // k = z, e = q^{-1}(q-q^{-1})^{-1}(1 - zy), f = (q-q^{-1})^{-1}(x - z^{-1}).
  // Z_inv is computed when not supplied.
  static UqAction from_equitable(const ExactScalar& q, ExactMatrix X, ExactMatrix Y, ExactMatrix Z,
                                 std::optional<ExactMatrix> Z_inv = std::nullopt);
  // z = k, y = k^{-1} - q(q-q^{-1})k^{-1}e, x = k^{-1} + (q-q^{-1})f.
  static UqAction from_chevalley(const ExactScalar& q, ExactMatrix K, ExactMatrix E, ExactMatrix F,
                                 std::optional<ExactMatrix> K_inv = std::nullopt);
};

// zz^{-1} = 1, the three equitable relations and the three Chevalley relations.
CheckList verify_uq(const UqAction& a);

// ef + (q^{-1}k + qk^{-1})/(q-q^{-1})^2
ExactMatrix casimir(const UqAction& a);
// eps(q^{d+1} + q^{-d-1})/(q-q^{-1})^2
ExactScalar casimir_scalar(const ExactScalar& q, int d, int eps);
// Centrality of the Casimir element and its value expected * I.
CheckList verify_casimir(const UqAction& a, const ExactScalar& expected);

enum class LdBasis { Kef, XEigen, YEigen, ZEigen };
const char* ld_basis_name(LdBasis b);

// Throws InputError if q^{2i} = 1 for some 1 <= i <= d or eps is not +-1.
UqAction build_Ld(const ExactScalar& q, int d, int eps, LdBasis basis);

// Relations, Casimir scalar, spectrum of k and, for the eigenbases, the
// normalization of the sum vector.
CheckList verify_Ld(const ExactScalar& q, int d, int eps, LdBasis basis);

// Whether the given vectors form a normalized eigenbasis of the given kind:
// X, Y, Z in that basis must equal the matrices of build_Ld.
Check check_normalized_eigenbasis(const UqAction& a, const std::vector<Vector>& basis, int eps, LdBasis which);

struct UqResult {
  UqAction action;
  CheckList checks;
};

// Variant 1: A = h + eps kappa X + eps upsilon Y, A* = h* + eps kappa* Z.
// Variant 2: A = h + eps kappa Y + eps upsilon X, built from the array of the
// Leonard system with the eigenvalue order reversed.  Variant 2 also checks
// the translation between the two structures.
UqResult uq_on_leonard(const LeonardRealization& real, const DqkParams& p, int eps, int variant);

// Operators on a space carrying the standard-module data: all of V, or the
// standard basis of one irreducible T-module, where the central elements act
// as scalars.  rho lists (d, projector onto the sum of components of diameter d).
struct StandardOperators {
  ExactMatrix A, A_star, K, K_inv, L, R;
  ExactMatrix Upsilon, Upsilon_inv, Psi, Psi_inv, Lambda;
  std::vector<std::pair<int, ExactMatrix>> rho;
};

StandardOperators standard_operators(const TerwilligerContext& ctx, const Decomposition& dec,
                                     const CentralMatrices& cm);
StandardOperators module_operators(const TerwilligerContext& ctx, const TModuleRecord& rec);

// h, h*, kappa, kappa*, upsilon of the standard module.
DqkParams standard_module_params(const TerwilligerContext& ctx);

// Equitable relations, the Chevalley form of e and f, the recoveries of A and
// A*, the Casimir element acting as Lambda, the diameter decomposition of the
// Casimir eigenspaces and, for variant 2, the translation table to variant 1.
UqResult uq_on_standard(const TerwilligerContext& ctx, const StandardOperators& ops, int variant);

}  // namespace dpg
