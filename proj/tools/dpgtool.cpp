// dpgtool: builds dual polar graphs, verifies the identities of their
// subconstituent algebras and checks abstract Leonard systems.
//
// Exit codes: 0 when every check passes, 1 when some check fails, 2 on
// malformed input.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "dpg/drg.hpp"
#include "dpg/leonard.hpp"
#include "dpg/polar.hpp"
#include "dpg/terwilliger.hpp"
#include "dpg/uqsl2.hpp"
#include "report.hpp"

using namespace dpg;
using dpgtool::json;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void append_prefixed(CheckList& into, const CheckList& more, const std::string& prefix) {
  for (auto c : more) {
    c.id = prefix + c.id;
    into.push_back(std::move(c));
  }
}

json multiset_to_json(const std::vector<std::pair<Triple, std::size_t>>& ms) {
  json a = json::array();
  for (const auto& [w, m] : ms) a.push_back({{"triple", {w.r, w.t, w.d}}, {"multiplicity", m}});
  return a;
}

std::string multiset_text(const std::vector<std::pair<Triple, std::size_t>>& ms) {
  std::string s;
  for (const auto& [w, m] : ms) s += (s.empty() ? "" : " ") + w.to_string() + "x" + std::to_string(m);
  return s;
}

// ---------------------------------------------------------------- build

int cmd_build(const std::string& family, int D, std::uint32_t b, const std::string& out, std::size_t budget) {
  auto spec = make_form_spec(parse_family(family), D, b);
  auto pg = build_polar_graph(spec, budget);
  json j = dpgtool::graph_to_json(pg);
  std::size_t valency = pg.graph.n ? pg.graph.adj[0].size() : 0;
  std::string echo = std::to_string(pg.graph.n) + " vertices, valency " + std::to_string(valency);
  if (out.empty() || out == "-") {
    std::cout << j.dump() << "\n";
    std::cerr << echo << "\n";
  } else {
    std::ofstream f(out);
    if (!f) throw InputError("cannot write '" + out + "'");
    f << j.dump() << "\n";
    std::cout << echo << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
  std::string graph_path;
  std::string suite = "all";
  std::size_t base_vertex = 0;
  int variant = 0;  // 0 runs both
  std::size_t sample = 0;
  std::uint64_t seed = 1;
  std::size_t dense_limit = 150;
};

class Verifier {
 public:
  Verifier(const dpgtool::LoadedGraph& lg, const VerifyOptions& opt) : lg_(lg), opt_(opt) {}

  // False when the graph is too broken for the algebraic suites.
  bool prepare(CheckList& out) {
    const char* anchor = "Gamma is distance-regular";
    try {
      data_ = verify_distance_regular(lg_.graph);
      out.push_back(make_check("drg.distance_regular", anchor, true));
    } catch (const NotDistanceRegular& e) {
      out.push_back(make_check("drg.distance_regular", anchor, false, e.what()));
      return false;
    }
    const char* sanchor = "E_i E_j = delta_ij E_i, sum E_i = I, A E_i = theta_i E_i, rank E_i = m_i";
    try {
      bm_ = spectral_data(lg_.graph, *data_, lg_.spec);
      out.push_back(make_check("drg.spectral", sanchor, true));
    } catch (const std::exception& e) {
      out.push_back(make_check("drg.spectral", sanchor, false, e.what()));
      return false;
    }
    return true;
  }

  void drg_suite(CheckList& out) {
    const auto& s = lg_.spec;
    const auto& d = *data_;
    out.push_back(make_check("drg.diameter", "the diameter of Gamma is D", d.D == s.D,
                             std::to_string(d.D) + " vs " + std::to_string(s.D)));
    std::vector<Rational> c, a, b;
    dpg_intersection_numbers(s, c, a, b);
    auto cmp = [&](const char* id, const char* anchor, const std::vector<long>& got, const std::vector<Rational>& want) {
      Vector g, w;
      for (long x : got) g.push_back(ExactScalar(x));
      for (const auto& x : want) w.push_back(ExactScalar(x));
      out.push_back(check_vectors(id, anchor, g, w));
    };
    cmp("drg.c", "c_i = (b^i-1)/(b-1)", d.c, c);
    cmp("drg.b", "b_i = b^{i+e}(b^{D-i}-1)/(b-1)", d.b, b);
    cmp("drg.a", "a_i = b_0 - b_i - c_i", d.a, a);
    out.push_back(check_vectors("drg.eigenvalues", "theta_i = b^e [D-i] - [i] with the natural ordering",
                                bm_->theta, dpg_eigenvalues(s)));
    Vector mg, mw;
    for (long m : bm_->multiplicity) mg.push_back(ExactScalar(m));
    for (const auto& m : dpg_multiplicities(s)) mw.push_back(ExactScalar(m));
    out.push_back(check_vectors("drg.multiplicities", "m_i = rank E_i agrees with the closed form", mg, mw));
    long total = 0;
    for (long m : bm_->multiplicity) total += m;
    out.push_back(make_check("drg.multiplicity_sum", "sum m_i = |X|", total == static_cast<long>(lg_.graph.n),
                             std::to_string(total) + " vs " + std::to_string(lg_.graph.n)));
    if (bm_->multiplicity.size() > 1)
      out.push_back(check_scalars("drg.m1_theta_star0", "m_1 = theta*_0", ExactScalar(bm_->multiplicity[1]),
                                  bm_->theta_star[0]));
    auto viol = krein_pattern_violation(bm_->krein);
    out.push_back(make_check("drg.krein_pattern",
                             "q^h_ij = 0 if one index exceeds the sum of the others, nonzero if equal",
                             viol.empty(), viol));
    Vector zx;
    for (int i = 0; i <= s.D; ++i) zx.push_back(bm_->zeta + bm_->xi * q_pow(ExactScalar(static_cast<long>(s.b)), -i));
    out.push_back(check_vectors("drg.dual_eigenvalues", "theta*_i = zeta + xi b^{-i}", bm_->theta_star, zx));
    out.push_back(check_vectors("drg.dual_eigenvalues_closed", "theta*_i agrees with the closed form",
                                bm_->theta_star, dpg_dual_eigenvalues(s)));
  }

  void lfrk_suite(CheckList& out) {
    auto& c = ctx();
    append(out, verify_context(c));
    append(out, verify_lfrk(c));
    append(out, verify_triangle_counts(c));
    if (lg_.graph.n <= opt_.dense_limit)
      out.push_back(verify_no_k121(lg_.graph));
    else
      out.push_back(skipped_check("graph.no_k121", "Gamma has no induced K_{1,2,1}",
                                  "quadruple scan skipped above the dense limit"));
  }

  void central_suite(CheckList& out) {
    auto& c = ctx();
    auto ce = central_elements(c);
    append(out, verify_central(c, ce, opt_.seed));
    append(out, verify_tridiagonal_relations(c));
    auto& dec = decomposition();
    append(out, verify_upsilon_psi_lambda_scalars(c, dec));
    if (lg_.graph.n <= opt_.dense_limit) {
      auto cm = upsilon_psi_lambda(c, dec);
      append(out, verify_upsilon_psi_lambda(c, ce, cm));
    }
  }

  void modules_suite(CheckList& out, json& summary) {
    auto& c = ctx();
    auto& dec = decomposition();
    append(out, dec.checks);
    json mods = json::array();
    for (const auto& comp : dec.components) {
      std::string prefix = "module" + comp.triple.to_string() + ".";
      auto rec = extract_module(c, comp, comp.endpoint_basis.at(0));
      append_prefixed(out, rec.checks, prefix);
      auto ml = leonard_from_tmodule(rec, c);
      append_prefixed(out, ml.checks, prefix);
      json m = {{"triple", {comp.triple.r, comp.triple.t, comp.triple.d}},
                {"multiplicity", comp.multiplicity},
                {"expected", dpgtool::params_to_json(ml.expected)}};
      m["recovered"] = ml.params ? dpgtool::params_to_json(*ml.params) : json(nullptr);
      mods.push_back(std::move(m));
    }
    summary["modules"] = std::move(mods);
    auto ms = feasible_multiset(dec);
    summary["multiset"] = multiset_to_json(ms);
    if (opt_.sample > 0) sample_base_vertices(out, summary, ms);
  }

  void uq_suite(CheckList& out) {
    auto& c = ctx();
    auto& dec = decomposition();
    std::vector<int> variants = opt_.variant ? std::vector<int>{opt_.variant} : std::vector<int>{1, 2};
    for (const auto& comp : dec.components) {
      std::string prefix = "module" + comp.triple.to_string() + ".";
      auto rec = extract_module(c, comp, comp.endpoint_basis.at(0));
      auto ops = module_operators(c, rec);
      for (int v : variants)
        append_prefixed(out, uq_on_standard(c, ops, v).checks, prefix + "v" + std::to_string(v) + ".");
      auto ml = leonard_from_tmodule(rec, c);
      for (int v : variants)
        for (int eps : {1, -1})
          append_prefixed(out, uq_on_leonard(ml.realization, ml.expected, eps, v).checks,
                          prefix + "v" + std::to_string(v) + (eps > 0 ? ".eps+." : ".eps-."));
    }
    if (lg_.graph.n <= opt_.dense_limit) {
      auto cm = upsilon_psi_lambda(c, dec);
      auto ops = standard_operators(c, dec, cm);
      for (int v : variants)
        append_prefixed(out, uq_on_standard(c, ops, v).checks, "standard.v" + std::to_string(v) + ".");
    }
  }

 private:
  TerwilligerContext& ctx() {
    if (!ctx_) ctx_ = build_context(lg_.graph, lg_.spec, *data_, *bm_, opt_.base_vertex);
    return *ctx_;
  }

  Decomposition& decomposition() {
    if (!dec_) dec_ = decompose(ctx(), lg_.graph.n <= opt_.dense_limit);
    return *dec_;
  }

  void sample_base_vertices(CheckList& out, json& summary, const std::vector<std::pair<Triple, std::size_t>>& base) {
    std::vector<std::size_t> others;
    for (std::size_t y = 0; y < lg_.graph.n; ++y)
      if (y != opt_.base_vertex) others.push_back(y);
    std::vector<std::size_t> picked;
    std::mt19937_64 rng(opt_.seed);
    std::sample(others.begin(), others.end(), std::back_inserter(picked), opt_.sample, rng);
    json used = json::array();
    CheckList parts;
    for (auto y : picked) {
      used.push_back(y);
      auto c = build_context(lg_.graph, lg_.spec, *data_, *bm_, y);
      auto dec = decompose(c);
      for (auto ch : dec.checks) {
        ch.id = "base_vertex." + ch.id;
        ch.witness = ch.passed() ? "" : "vertex " + std::to_string(y) + ": " + ch.witness;
        parts.push_back(std::move(ch));
      }
      auto ms = feasible_multiset(dec);
      parts.push_back(make_check("base_vertex.multiset", "the feasible-triple multiset does not depend on x",
                                 ms == base,
                                 "vertex " + std::to_string(y) + ": " + multiset_text(ms) + " vs " +
                                     multiset_text(base)));
    }
    // One record per id keeps the report size independent of N.
    std::map<std::string, CheckList> by_id;
    std::vector<std::string> order;
    for (auto& p : parts) {
      if (!by_id.count(p.id)) order.push_back(p.id);
      by_id[p.id].push_back(p);
    }
    for (const auto& id : order) {
      const auto& group = by_id[id];
      Check folded = group.front();
      for (const auto& g : group)
        if (!g.passed()) {
          folded = g;
          break;
        }
      out.push_back(folded);
    }
    summary["sampled_base_vertices"] = std::move(used);
  }

  const dpgtool::LoadedGraph& lg_;
  VerifyOptions opt_;
  std::optional<IntersectionData> data_;
  std::optional<BoseMesnerData> bm_;
  std::optional<TerwilligerContext> ctx_;
  std::optional<Decomposition> dec_;
};

int cmd_verify(const VerifyOptions& opt) {
  auto start = Clock::now();
  static const std::set<std::string> suites = {"drg", "lfrk", "central", "modules", "uq", "all"};
  if (!suites.count(opt.suite)) throw InputError("unknown suite '" + opt.suite + "'");
  if (opt.variant < 0 || opt.variant > 2) throw InputError("variant must be 1 or 2");
  auto lg = dpgtool::graph_from_json(dpgtool::read_json_file(opt.graph_path));
  if (opt.base_vertex >= lg.graph.n) throw InputError("base vertex out of range");
  if (opt.sample >= lg.graph.n) throw InputError("sample size must be smaller than the vertex count");

  json input = {{"command", "verify"},
                {"graph", {{"family", family_name(lg.spec.family)}, {"D", lg.spec.D}, {"b", lg.spec.b}}},
                {"vertices", lg.graph.n},
                {"suite", opt.suite},
                {"base_vertex", opt.base_vertex},
                {"variant", opt.variant},
                {"sample", opt.sample},
                {"seed", opt.seed},
                {"dense_limit", opt.dense_limit}};
  CheckList checks;
  json summary = json::object();
  Verifier v(lg, opt);
  bool all = opt.suite == "all";
  if (v.prepare(checks)) {
    if (all || opt.suite == "drg") v.drg_suite(checks);
    if (all || opt.suite == "lfrk") v.lfrk_suite(checks);
    if (all || opt.suite == "central") v.central_suite(checks);
    if (all || opt.suite == "modules") v.modules_suite(checks, summary);
    if (all || opt.suite == "uq") v.uq_suite(checks);
  }
  std::cout << dpgtool::make_report(input, checks, summary, elapsed_ms(start)).dump(2) << "\n";
  return dpgtool::exit_code(checks);
}

// ---------------------------------------------------------------- leonard

void d4_action(const ParameterArray& pa, CheckList& out, json& summary) {
  auto T = [](const ParameterArray& p, std::initializer_list<D4> word) {
    ParameterArray r = p;
    for (D4 g : word) r = d4_transform(r, g);
    return r;
  };
  json table = json::object();
  table["identity"] = dpgtool::array_to_json(pa);
  for (D4 g : {D4::Star, D4::Down, D4::DDown}) {
    auto img = T(pa, {g});
    table[d4_name(g)] = dpgtool::array_to_json(img);
    auto v = validate(img);
    out.push_back(make_check(std::string("d4.valid.") + d4_name(g), "the D4 image of a parameter array is a parameter array",
                             v.valid, v.condition + " at " + std::to_string(v.index) + ": " + v.message));
  }
  summary["d4_orbit"] = std::move(table);
  auto rel = [&](const char* id, const char* anchor, const ParameterArray& l, const ParameterArray& r) {
    out.push_back(make_check(id, anchor, l == r, "arrays differ"));
  };
  using enum D4;
  rel("d4.star_squared", "*^2 = 1", T(pa, {Star, Star}), pa);
  rel("d4.down_squared", "↓^2 = 1", T(pa, {Down, Down}), pa);
  rel("d4.ddown_squared", "⇓^2 = 1", T(pa, {DDown, DDown}), pa);
  rel("d4.ddown_star", "⇓* = *↓", T(pa, {DDown, Star}), T(pa, {Star, Down}));
  rel("d4.down_star", "↓* = *⇓", T(pa, {Down, Star}), T(pa, {Star, DDown}));
  rel("d4.down_ddown", "↓⇓ = ⇓↓", T(pa, {Down, DDown}), T(pa, {DDown, Down}));
  // Closure under the three generators.
  std::vector<ParameterArray> orbit = {pa};
  for (std::size_t i = 0; i < orbit.size() && orbit.size() <= 16; ++i)
    for (D4 g : {Star, Down, DDown}) {
      auto img = d4_transform(orbit[i], g);
      if (std::find(orbit.begin(), orbit.end(), img) == orbit.end()) orbit.push_back(img);
    }
  out.push_back(make_check("d4.orbit_size", "the D4 orbit has at most 8 arrays", orbit.size() <= 8,
                           std::to_string(orbit.size()) + " arrays"));
  summary["d4_orbit_size"] = orbit.size();
}

void realize_action(const ParameterArray& pa, const std::optional<DqkParams>& dqk, CheckList& out) {
  for (BasisKind k : {BasisKind::Split, BasisKind::NormalizedSplit, BasisKind::Standard}) {
    std::string prefix = std::string(basis_name(k)) + ".";
    auto r = realize(pa, k);
    append_prefixed(out, verify_axioms(r), prefix);
    try {
      auto back = extract_parameter_array(r);
      out.push_back(make_check(prefix + "leonard.roundtrip",
                               "the parameter array of the realized Leonard system is the input array", back == pa,
                               "extracted array differs"));
    } catch (const std::exception& e) {
      out.push_back(make_check(prefix + "leonard.roundtrip",
                               "the parameter array of the realized Leonard system is the input array", false,
                               e.what()));
    }
    if (k == BasisKind::Split) append(out, normalized_split_basis(r, pa).checks);
  }
  auto in = intersection_data(pa);
  Vector sums;
  for (int i = 0; i <= pa.d; ++i) sums.push_back(in.a[i] + in.b[i] + in.c[i]);
  out.push_back(check_vectors("leonard.row_sum", "a_i + b_i + c_i = theta_0", sums, Vector(pa.d + 1, pa.theta[0])));
  if (dqk) {
    auto cl = dqk_intersection_numbers(*dqk);
    out.push_back(check_vectors("leonard.dqk_b", "b_i of the dual q-Krawtchouk closed form", in.b, cl.b));
    out.push_back(check_vectors("leonard.dqk_c", "c_i of the dual q-Krawtchouk closed form", in.c, cl.c));
    out.push_back(check_vectors("leonard.dqk_a", "a_i of the dual q-Krawtchouk closed form", in.a, cl.a));
  }
}

json aw_to_json(const AwScalars& s) {
  using dpgtool::scalar_to_json;
  json j = {{"beta", scalar_to_json(s.beta)},
            {"gamma", scalar_to_json(s.gamma)},
            {"gamma_star", scalar_to_json(s.gamma_star)},
            {"varrho", scalar_to_json(s.varrho)},
            {"varrho_star", scalar_to_json(s.varrho_star)},
            {"unique_regime", s.unique_regime}};
  if (s.has_aw) {
    j["omega"] = scalar_to_json(s.omega);
    j["eta"] = scalar_to_json(s.eta);
    j["eta_star"] = scalar_to_json(s.eta_star);
  }
  return j;
}

void scalars_action(const ParameterArray& pa, const dpgtool::LeonardInput& in, CheckList& out, json& summary) {
  std::optional<AwHint> hint = in.hint;
  if (!hint && in.dqk && pa.d <= 2) {
    auto cl = dqk_aw_scalars(*in.dqk);
    hint = AwHint{cl.beta, cl.gamma, cl.gamma_star};
  }
  const char* anchor = "beta, gamma, gamma*, varrho, varrho* are determined by the parameter array";
  AwScalars s;
  try {
    s = td_aw_scalars(pa, hint);
    out.push_back(make_check("leonard.scalars", anchor, true));
  } catch (const InputError& e) {
    out.push_back(make_check("leonard.scalars", anchor, false, e.what()));
    return;
  }
  summary["scalars"] = aw_to_json(s);
  append(out, verify_td_aw(realize(pa, BasisKind::Split), s));
  if (in.dqk) {
    auto cl = dqk_aw_scalars(*in.dqk);
    const char* a = "the scalars agree with the dual q-Krawtchouk closed forms";
    bool ok = s.beta == cl.beta && s.gamma == cl.gamma && s.gamma_star == cl.gamma_star && s.varrho == cl.varrho &&
              s.varrho_star == cl.varrho_star && (!s.has_aw || (s.omega == cl.omega && s.eta == cl.eta &&
                                                                 s.eta_star == cl.eta_star));
    out.push_back(make_check("leonard.scalars_closed_form", a, ok, aw_to_json(s).dump() + " vs " + aw_to_json(cl).dump()));
  }
}

void uq_action(const ParameterArray& pa, const dpgtool::LeonardInput& in, CheckList& out) {
  const char* anchor = "the array is of dual q-Krawtchouk type with the given parameters";
  if (!in.dqk) {
    out.push_back(skipped_check("leonard.uq", anchor, "no 'dqk' block in the input"));
    return;
  }
  auto rec = dqk_from_array(pa, in.dqk->q);
  out.push_back(make_check("leonard.uq.params", anchor, pa.d == 0 || (rec && *rec == *in.dqk),
                           "parameters recovered from the array differ"));
  for (BasisKind k : {BasisKind::Split, BasisKind::Standard}) {
    auto r = realize(pa, k);
    for (int v : {1, 2})
      for (int eps : {1, -1})
        append_prefixed(out, uq_on_leonard(r, *in.dqk, eps, v).checks,
                        std::string(basis_name(k)) + ".v" + std::to_string(v) + (eps > 0 ? ".eps+." : ".eps-."));
  }
}

int cmd_leonard(const std::string& path, const std::string& actions_text) {
  auto start = Clock::now();
  static const std::vector<std::string> known = {"validate", "realize", "d4", "scalars", "uq"};
  auto actions = split_list(actions_text);
  for (const auto& a : actions)
    if (std::find(known.begin(), known.end(), a) == known.end()) throw InputError("unknown action '" + a + "'");
  auto raw = dpgtool::read_json_file(path);
  auto in = dpgtool::leonard_input_from_json(raw);
  const auto& pa = in.array;

  json input = {{"command", "leonard"}, {"params", raw}, {"actions", actions}};
  CheckList checks;
  json summary = json::object();

  auto v = validate(pa);
  summary["valid"] = v.valid;
  if (!v.valid) {
    summary["condition"] = v.condition;
    summary["index"] = v.index;
  }
  if (v.beta_plus_one) summary["beta"] = dpgtool::scalar_to_json(*v.beta_plus_one - ExactScalar(1));
  else if (in.hint) summary["beta"] = dpgtool::scalar_to_json(in.hint->beta);

  auto wants = [&](const char* a) { return std::find(actions.begin(), actions.end(), a) != actions.end(); };
  if (wants("validate")) {
    checks.push_back(make_check("leonard.pa", "PA1-PA5 hold", v.valid,
                                "condition " + v.condition + ", index " + std::to_string(v.index) + ": " + v.message));
    if (in.dqk && raw.contains("theta"))
      checks.push_back(make_check("leonard.dqk_array", "the array equals the dual q-Krawtchouk closed form",
                                  pa == dqk_array(*in.dqk), "arrays differ"));
  }
  for (const char* a : {"realize", "d4", "scalars", "uq"}) {
    if (!wants(a)) continue;
    if (!v.valid) {
      checks.push_back(skipped_check(std::string("leonard.") + a, "the parameter array is valid",
                                     "array fails " + v.condition));
      continue;
    }
    std::string act = a;
    if (act == "realize") realize_action(pa, in.dqk, checks);
    if (act == "d4") d4_action(pa, checks, summary);
    if (act == "scalars") scalars_action(pa, in, checks, summary);
    if (act == "uq") uq_action(pa, in, checks);
  }
  if (!summary.contains("beta") && summary.contains("scalars")) summary["beta"] = summary["scalars"]["beta"];
  std::cout << dpgtool::make_report(input, checks, summary, elapsed_ms(start)).dump(2) << "\n";
  return dpgtool::exit_code(checks);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual polar graphs, Leonard systems and U_q(sl2) actions in exact arithmetic"};
  app.require_subcommand(1);

  auto* build = app.add_subcommand("build", "enumerate a dual polar graph and write it as JSON");
  std::string family, out;
  int D = 0;
  std::uint32_t b = 0;
  std::size_t budget = 100000;
  build->add_option("--family", family, "C, B, D, 2D, 2A_odd or 2A_even")->required();
  build->add_option("--D", D, "rank")->required();
  build->add_option("--b", b, "field size")->required();
  build->add_option("--out", out, "output path, stdout when omitted");
  build->add_option("--budget", budget, "maximum number of vertices");

  auto* verify = app.add_subcommand("verify", "verify the identities on a graph file");
  VerifyOptions vo;
  verify->add_option("graph", vo.graph_path, "graph JSON file")->required();
  verify->add_option("--suite", vo.suite, "drg, lfrk, central, modules, uq or all");
  verify->add_option("--base-vertex", vo.base_vertex, "index of the base vertex");
  verify->add_option("--variant", vo.variant, "U_q(sl2) structure, 1 or 2; both when omitted");
  verify->add_option("--all-vertices-sample", vo.sample, "rerun the decomposition on N sampled base vertices");
  verify->add_option("--seed", vo.seed, "seed for sampling and random coefficients");
  verify->add_option("--dense-limit", vo.dense_limit, "largest vertex count for dense n x n checks");

  auto* leonard = app.add_subcommand("leonard", "check an abstract parameter array");
  std::string params, actions = "validate,realize,d4,scalars,uq";
  leonard->add_option("params", params, "parameter JSON file")->required();
  leonard->add_option("--actions", actions, "comma-separated subset of validate,realize,d4,scalars,uq");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*build) return cmd_build(family, D, b, out, budget);
    if (*verify) return cmd_verify(vo);
    if (*leonard) return cmd_leonard(params, actions);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
