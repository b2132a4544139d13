#include "report.hpp"

#include <fstream>

namespace dpgtool {

using namespace dpg;

json graph_to_json(const PolarGraph& pg) {
  json j;
  j["family"] = family_name(pg.spec.family);
  j["D"] = pg.spec.D;
  j["b"] = pg.spec.b;
  j["e"] = scalar_to_json(ExactScalar(pg.spec.e()));
  json verts = json::array(), rows = json::array();
  for (const auto& v : pg.vertices) verts.push_back(vertex_hex(pg.spec, v));
  for (std::size_t y = 0; y < pg.graph.n; ++y) rows.push_back(adjacency_row_hex(pg.graph, y));
  j["vertices"] = std::move(verts);
  j["adjacency"] = std::move(rows);
  return j;
}

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("field '") + key + "' has the wrong type");
  }
}

Vector vector_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw InputError(std::string("missing array '") + key + "'");
  Vector v;
  for (const auto& x : j.at(key)) v.push_back(scalar_from_json(x, key));
  return v;
}

}  // namespace

LoadedGraph graph_from_json(const json& j) {
  LoadedGraph g;
  g.spec = make_form_spec(parse_family(field<std::string>(j, "family")), field<int>(j, "D"),
                          field<std::uint32_t>(j, "b"));
  if (j.contains("e") && scalar_from_json(j.at("e"), "e") != ExactScalar(g.spec.e()))
    throw InputError("field 'e' disagrees with the family");
  auto rows = field<std::vector<std::string>>(j, "adjacency");
  std::size_t n = rows.size();
  if (j.contains("vertices") && field<std::vector<std::string>>(j, "vertices").size() != n)
    throw InputError("vertex list and adjacency rows differ in length");
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::size_t y = 0; y < n; ++y) {
    if (rows[y].size() != (n + 3) / 4) throw InputError("adjacency row " + std::to_string(y) + " has the wrong length");
    for (std::size_t k = 0; k < rows[y].size(); ++k) {
      int nib = hex_value(rows[y][k]);
      if (nib < 0) throw InputError("adjacency row " + std::to_string(y) + " is not hexadecimal");
      for (int bit = 0; bit < 4; ++bit)
        if (nib & (8 >> bit)) {
          std::size_t z = 4 * k + bit;
          if (z >= n) throw InputError("adjacency row " + std::to_string(y) + " has padding bits set");
          adj[y].push_back(static_cast<std::uint32_t>(z));
        }
    }
  }
  for (std::size_t y = 0; y < n; ++y)
    for (auto z : adj[y]) {
      if (z == y) throw InputError("loop at vertex " + std::to_string(y));
      bool back = false;
      for (auto w : adj[z]) back = back || w == y;
      if (!back) throw InputError("adjacency is not symmetric at " + std::to_string(y));
    }
  g.graph = graph_from_adjacency(std::move(adj));
  return g;
}

ExactScalar scalar_from_json(const json& j, const std::string& what) {
  try {
    if (j.is_number_integer()) return ExactScalar(j.get<long>());
    if (j.is_string()) return ExactScalar::parse(j.get<std::string>());
  } catch (const ParseError& e) {
    throw InputError("cannot parse " + what + ": " + e.what());
  }
  throw InputError(what + " must be an integer or an exact scalar string");
}

json scalar_to_json(const ExactScalar& x) { return x.to_string(); }

json vector_to_json(const Vector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(scalar_to_json(x));
  return a;
}

LeonardInput leonard_input_from_json(const json& j) {
  if (!j.is_object()) throw InputError("parameter file must hold a JSON object");
  LeonardInput in;
  if (j.contains("dqk")) {
    const json& p = j.at("dqk");
    DqkParams d;
    d.q = scalar_from_json(field<json>(p, "q"), "q");
    d.d = field<int>(p, "d");
    d.h = scalar_from_json(field<json>(p, "h"), "h");
    d.h_star = scalar_from_json(field<json>(p, "h_star"), "h_star");
    d.kappa = scalar_from_json(field<json>(p, "kappa"), "kappa");
    d.kappa_star = scalar_from_json(field<json>(p, "kappa_star"), "kappa_star");
    d.upsilon = scalar_from_json(field<json>(p, "upsilon"), "upsilon");
    check_params(d);
    in.dqk = d;
  }
  if (j.contains("theta")) {
    in.array.d = field<int>(j, "d");
    in.array.theta = vector_field(j, "theta");
    in.array.theta_star = vector_field(j, "theta_star");
    in.array.phi = vector_field(j, "phi");
    in.array.phi2 = vector_field(j, "phi2");
    check_shape(in.array);
  } else if (in.dqk) {
    in.array = dqk_array(*in.dqk);
  } else {
    throw InputError("parameter file needs a parameter array or a 'dqk' block");
  }
  if (j.contains("scalars")) {
    const json& s = j.at("scalars");
    AwHint h;
    h.beta = scalar_from_json(field<json>(s, "beta"), "beta");
    h.gamma = s.contains("gamma") ? scalar_from_json(s.at("gamma"), "gamma") : ExactScalar();
    h.gamma_star = s.contains("gamma_star") ? scalar_from_json(s.at("gamma_star"), "gamma_star") : ExactScalar();
    in.hint = h;
  }
  return in;
}

json array_to_json(const ParameterArray& pa) {
  return {{"d", pa.d},
          {"theta", vector_to_json(pa.theta)},
          {"theta_star", vector_to_json(pa.theta_star)},
          {"phi", vector_to_json(pa.phi)},
          {"phi2", vector_to_json(pa.phi2)}};
}

json params_to_json(const DqkParams& p) {
  return {{"q", scalar_to_json(p.q)},
          {"d", p.d},
          {"h", scalar_to_json(p.h)},
          {"h_star", scalar_to_json(p.h_star)},
          {"kappa", scalar_to_json(p.kappa)},
          {"kappa_star", scalar_to_json(p.kappa_star)},
          {"upsilon", scalar_to_json(p.upsilon)}};
}

json check_to_json(const Check& c) {
  return {{"id", c.id}, {"anchor", c.anchor}, {"status", status_name(c.status)}, {"witness", c.witness}};
}

json make_report(const json& input, const CheckList& checks, const json& extra, double elapsed_ms) {
  json list = json::array();
  std::size_t pass = 0, fail = 0, skip = 0;
  for (const auto& c : checks) {
    list.push_back(check_to_json(c));
    if (c.status == Status::Pass) ++pass;
    else if (c.status == Status::Fail) ++fail;
    else ++skip;
  }
  json summary = extra.is_object() ? extra : json::object();
  summary["total"] = checks.size();
  summary["passed"] = pass;
  summary["failed"] = fail;
  summary["skipped"] = skip;
  summary["status"] = fail == 0 ? "pass" : "fail";
  summary["timing_ms"] = static_cast<long>(elapsed_ms);
  return {{"version", kReportVersion}, {"input", input}, {"checks", std::move(list)}, {"summary", std::move(summary)}};
}

int exit_code(const CheckList& checks) { return all_passed(checks) ? 0 : 1; }

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace dpgtool
