// Abstract Leonard systems given by parameter arrays.
//
// A parameter array is validated against PA1-PA5, moved around by the D4
// action, realized as matrices in the split, normalized split and standard
// bases, and read back from a realization through the split decomposition.
// The dual q-Krawtchouk family is available in closed form, and a T-module
// of a dual polar graph can be turned into a Leonard system and compared with
// its predicted parameters.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dpg/check.hpp"
#include "dpg/linexact.hpp"
#include "dpg/terwilliger.hpp"

namespace dpg {

struct ParameterArray {
  int d = 0;
  Vector theta, theta_star;  // indices 0..d
  Vector phi, phi2;          // phi[i-1] is phi_i, phi2[i-1] is the second split sequence at i

  friend bool operator==(const ParameterArray&, const ParameterArray&) = default;
};

// Throws InputError unless the four sequences have lengths d+1, d+1, d, d.
void check_shape(const ParameterArray& pa);

struct Verdict {
  bool valid = true;
  std::string condition;  // "PA1".."PA5" on failure
  int index = 0;          // offending index on failure
  std::optional<ExactScalar> beta_plus_one;  // common PA5 value, for d >= 3
  std::string message;
};

Verdict validate(const ParameterArray& pa);

struct DqkParams {
  ExactScalar q, h, h_star, kappa, kappa_star, upsilon;
  int d = 0;

  friend bool operator==(const DqkParams&, const DqkParams&) = default;
};

// Throws InputError if kappa, kappa*, upsilon vanish, q^{2i} = 1 for some
// 1 <= i <= d, or kappa = upsilon q^{2i-2d} for some 1 <= i <= 2d-1.
void check_params(const DqkParams& p);

ParameterArray dqk_array(const DqkParams& p);

enum class D4 { Star, Down, DDown };
const char* d4_name(D4 g);
ParameterArray d4_transform(const ParameterArray& pa, D4 g);

enum class BasisKind { Split, NormalizedSplit, Standard };
const char* basis_name(BasisKind k);

struct LeonardRealization {
  BasisKind basis = BasisKind::Split;
  ExactMatrix A, A_star;
  std::vector<ExactMatrix> E, E_star;  // E_i for theta_i, E*_i for theta*_i
  Vector theta, theta_star;
  std::size_t dim() const { return theta.size(); }
};

// Throws InputError if the array is invalid.
LeonardRealization realize(const ParameterArray& pa, BasisKind kind);

// The five axioms: A and A* multiplicity-free with the given idempotents,
// E_i A* E_j and E*_i A E*_j zero for |i - j| > 1 and nonzero for |i - j| = 1.
CheckList verify_axioms(const LeonardRealization& real);

// phi_i is the eigenvalue of (A - theta_{i-1})(A* - theta*_i) on U_i, where
// U_i = (E*_0V + ... + E*_iV) n (E_iV + ... + E_dV); the second sequence uses
// the reversed ordering of the E_i.  Throws SpectrumError when some U_i is not
// one-dimensional or the product does not act on it as a scalar.
ParameterArray extract_parameter_array(const LeonardRealization& real);

struct IntersectionNumbers {
  Vector a, b, c, a_star, b_star, c_star;
};

IntersectionNumbers intersection_data(const ParameterArray& pa);
// a_i, b_i, c_i of the dual q-Krawtchouk closed forms (the dual ones are left empty).
IntersectionNumbers dqk_intersection_numbers(const DqkParams& p);

struct AwScalars {
  ExactScalar beta, gamma, gamma_star, varrho, varrho_star, omega, eta, eta_star;
  // false when d <= 2, where beta is not determined by the array
  bool unique_regime = true;
  // false when d = 0
  bool has_aw = true;
};

struct AwHint {
  ExactScalar beta, gamma, gamma_star;
};

// Throws InputError when a scalar is not constant across the admissible
// indices, naming them, or when d <= 2 and no hint is given.
AwScalars td_aw_scalars(const ParameterArray& pa, const std::optional<AwHint>& hint = std::nullopt);
AwScalars dqk_aw_scalars(const DqkParams& p);

// Tridiagonal and Askey-Wilson relations as matrix identities.
CheckList verify_td_aw(const LeonardRealization& real, const AwScalars& s);

// Parameters reproducing the array exactly for the given q, if any.  For
// d = 0 the array does not determine them and nullopt is returned.
std::optional<DqkParams> dqk_from_array(const ParameterArray& pa, const ExactScalar& q);

// The basis u_0..u_d with u_i in U_i and u_0 + ... + u_d in E*_dV.  Checks
// both characterizations: A*u_i = theta*_i u_i + (theta*_d - theta*_{i-1}) u_{i-1}
// and A u_i = theta_i u_i + phi_{i+1}(theta*_d - theta*_i)^{-1} u_{i+1}.
struct NormalizedSplit {
  std::vector<Vector> basis;
  CheckList checks;
};
NormalizedSplit normalized_split_basis(const LeonardRealization& real, const ParameterArray& pa);

// Parameters of the Leonard system on a T-module with triple (r, t, d).
DqkParams module_dqk_params(const TerwilligerContext& ctx, const Triple& w);

struct ModuleLeonard {
  ParameterArray array;
  std::optional<DqkParams> params;  // recovered from the array
  DqkParams expected;               // closed form for the triple
  LeonardRealization realization;
  CheckList checks;
};

ModuleLeonard leonard_from_tmodule(const TModuleRecord& rec, const TerwilligerContext& ctx);

}  // namespace dpg
