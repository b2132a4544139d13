// Polar spaces over finite fields and their dual polar graphs.
//
// Each family uses fixed standard coordinates on U = GF(b)^n (0-based):
//   C       f(u,v) = sum_{i<D} u_i v_{D+i} - u_{D+i} v_i                  n = 2D
//   B       Q(x) = x_0^2 + sum_{1<=i<=D} x_i x_{D+i}                       n = 2D+1
//   D       Q(x) = sum_{i<D} x_i x_{D+i}                                   n = 2D
//   2D      Q(x) = sum_{i<D} x_i x_{D+i} + N(x_{2D}, x_{2D+1})             n = 2D+2
//   2A_odd  h(u,v) = sum_{i<D} u_i conj(v_{D+i}) + u_{D+i} conj(v_i)       n = 2D
//   2A_even h(u,v) = sum_i u_i conj(v_i)                                   n = 2D+1
// where N(s,t) = s^2 + st + c t^2 with c the smallest field element making
// x^2 + x + c irreducible, and conj(x) = x^q for b = q^2.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpg/exact.hpp"
#include "dpg/gf.hpp"

namespace dpg {

enum class Family { C, B, D, TwoD, TwoAEven, TwoAOdd };

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string family_name(Family f);
Family parse_family(const std::string& name);

using GfVector = std::vector<FieldElement>;

struct FormSpec {
  Family family = Family::C;
  int D = 1;
  std::uint32_t b = 2;
  int n = 2;       // ambient dimension
  int two_e = 2;   // 2e, so e = two_e / 2
  FieldSpec field;
  std::uint32_t conj_q = 0;     // q with b = q^2 for Hermitean families, else 0
  FieldElement anisotropic_c = 0;  // constant c of N for the 2D family

  Rational e() const {
    Rational r(two_e, 2);
    r.canonicalize();
    return r;
  }
  bool quadratic() const { return family == Family::B || family == Family::D || family == Family::TwoD; }
  bool hermitean() const { return family == Family::TwoAEven || family == Family::TwoAOdd; }
  // q = sqrt(b) as an exact scalar; collapses to an integer when b is a square.
  ExactScalar q() const { return ExactScalar::sqrt_of(b); }
};

// Validates (family, D, b) and fills the derived fields.
FormSpec make_form_spec(Family family, int D, std::uint32_t b);

// Bilinear, sesquilinear or polar value of (u, v); with v absent, the value
// on (u, u) for C and Hermitean families and Q(u) for quadratic families.
FieldElement form_value(const FormSpec& spec, const GfVector& u, const std::optional<GfVector>& v);

// Reduced row echelon form over the field; returns the rank.
std::size_t gf_rref(const FieldSpec& f, std::vector<GfVector>& rows);

struct IsotropicSubspace {
  std::vector<GfVector> basis;  // D rows of length n in RREF
  std::string key() const;      // row-major hex digits
};

struct Graph {
  std::size_t n = 0;
  std::vector<std::vector<std::uint32_t>> adj;
  std::vector<std::uint8_t> dist;  // row-major n x n; 255 = unreachable
  int diameter = 0;

  std::uint8_t d(std::size_t y, std::size_t z) const { return dist[y * n + z]; }
  bool adjacent(std::size_t y, std::size_t z) const { return dist[y * n + z] == 1; }
};

// Graph from adjacency lists with BFS distances.
Graph graph_from_adjacency(std::vector<std::vector<std::uint32_t>> adj);

struct PolarGraph {
  FormSpec spec;
  std::vector<IsotropicSubspace> vertices;
  Graph graph;
};

std::vector<IsotropicSubspace> enumerate_maximal_isotropic(const FormSpec& spec,
                                                           std::size_t budget = 100000);
PolarGraph build_polar_graph(const FormSpec& spec, std::size_t budget = 100000);
// dim(y cap z) for two vertices.
int intersection_dim(const FormSpec& spec, const IsotropicSubspace& y, const IsotropicSubspace& z);

// Hex encodings used by the graph file format.
std::string vertex_hex(const FormSpec& spec, const IsotropicSubspace& v);
IsotropicSubspace vertex_from_hex(const FormSpec& spec, const std::string& hex);
std::string adjacency_row_hex(const Graph& g, std::size_t y);

}  // namespace dpg
