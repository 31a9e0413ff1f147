#include "sparsos/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>

#include "sparsos/error.hpp"

namespace sparsos {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::kFormat, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) bad(std::string("field '") + key + "' must be an array");
  return a;
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  const auto v = j.get<long long>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) bad(std::string(what) + " out of range");
  return static_cast<int>(v);
}

double as_double(const Json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

Json coefficient_list(const std::map<GroupElement, Complex>& coeffs) {
  Json out = Json::array();
  for (const auto& [chi, c] : coeffs) {
    out.push_back({{"index", to_json(chi)}, {"re", c.real()}, {"im", c.imag()}});
  }
  return out;
}

std::map<GroupElement, Complex> coefficients_from(const Json& list, const GroupSpec& group) {
  if (!list.is_array()) bad("coefficient list must be an array");
  std::map<GroupElement, Complex> out;
  for (const auto& entry : list) {
    const GroupElement chi = element_from_json(field(entry, "index"), group);
    const Complex c(as_double(field(entry, "re"), "re"), as_double(field(entry, "im"), "im"));
    if (!out.emplace(chi, c).second) bad("repeated index in coefficient list");
  }
  return out;
}

Json element_list(const auto& elements) {
  Json out = Json::array();
  for (const auto& g : elements) out.push_back(to_json(g));
  return out;
}

std::vector<GroupElement> elements_from(const Json& list, const GroupSpec& group) {
  if (!list.is_array()) bad("element list must be an array");
  std::vector<GroupElement> out;
  for (const auto& e : list) out.push_back(element_from_json(e, group));
  return out;
}

std::set<GroupElement> element_set_from(const Json& list, const GroupSpec& group) {
  const auto v = elements_from(list, group);
  std::set<GroupElement> out(v.begin(), v.end());
  if (out.size() != v.size()) bad("repeated element in set");
  return out;
}

std::vector<int> int_list(const Json& list, const char* what) {
  if (!list.is_array()) bad(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& e : list) out.push_back(as_int(e, what));
  return out;
}

Json edge_list(const Graph& g) {
  Json out = Json::array();
  for (const auto& [u, v] : g.edges()) out.push_back({u, v});
  return out;
}

Graph graph_from(const Json& list, const GroupSpec& group) {
  std::vector<VertexLabel> labels;
  for (const auto& e : group.elements()) labels.push_back(e.coords);
  Graph g(std::move(labels));
  if (!list.is_array()) bad("edge list must be an array");
  const auto n = static_cast<int>(group.order());
  for (const auto& e : list) {
    const auto uv = int_list(e, "edge endpoint");
    if (uv.size() != 2 || uv[0] < 0 || uv[1] < 0 || uv[0] >= n || uv[1] >= n || uv[0] == uv[1]) bad("invalid edge");
    g.add_edge(uv[0], uv[1]);
  }
  return g;
}

// Runs a reader, reporting structural problems of well-formed JSON as
// format errors.
template <class F>
auto as_format_error(const char* what, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kFormat) throw;
    bad(std::string("invalid ") + what + ": " + e.what());
  } catch (const Json::exception& e) {
    bad(std::string("invalid ") + what + ": " + e.what());
  }
}

}  // namespace

GroupSpec parse_group_spec(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) fail(ErrorKind::kInvalidSpec, "empty group spec");
  std::vector<int> moduli;
  auto number = [&](std::size_t& pos) {
    int v = 0;
    const auto res = std::from_chars(s.data() + pos, s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr == s.data() + pos) fail(ErrorKind::kInvalidSpec, "expected a number in '" + text + "'");
    pos = static_cast<std::size_t>(res.ptr - s.data());
    return v;
  };
  std::size_t pos = 0;
  while (true) {
    if (pos >= s.size() || (s[pos] != 'Z' && s[pos] != 'z')) fail(ErrorKind::kInvalidSpec, "expected 'Z<n>' in '" + text + "'");
    ++pos;
    const int n = number(pos);
    int power = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      power = number(pos);
    }
    if (n < 1 || power < 1 || power > 64) fail(ErrorKind::kInvalidSpec, "bad factor in '" + text + "'");
    for (int k = 0; k < power; ++k) moduli.push_back(n);
    if (pos == s.size()) break;
    if (s[pos] != 'x' && s[pos] != 'X') fail(ErrorKind::kInvalidSpec, "expected 'x' between factors in '" + text + "'");
    ++pos;
  }
  double order = 1.0;
  for (int n : moduli) order *= n;
  if (order > 1 << 24) fail(ErrorKind::kInvalidSpec, "group of order " + std::to_string(order) + " is too large");
  return GroupSpec::make(std::move(moduli));
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

Json to_json(const GroupSpec& g) { return Json(g.moduli()); }

GroupSpec group_from_json(const Json& j) {
  const auto moduli = int_list(j, "modulus");
  for (int n : moduli) {
    if (n < 1) bad("modulus must be positive");
  }
  double order = 1.0;
  for (int n : moduli) order *= n;
  if (order > 1 << 24) bad("group too large");
  return GroupSpec::make(moduli);
}

Json to_json(const GroupElement& g) { return Json(g.coords); }

GroupElement element_from_json(const Json& j, const GroupSpec& group) {
  GroupElement g{int_list(j, "coordinate")};
  if (!group.contains(g)) bad("element " + j.dump() + " is not in " + group.to_string());
  return g;
}

Json to_json(const FourierFunction& f) {
  return {{"group", to_json(f.group())}, {"coefficients", coefficient_list(f.coefficients())}};
}

FourierFunction function_from_json(const Json& j) {
  return as_format_error("function", [&] {
    const GroupSpec g = group_from_json(field(j, "group"));
    return FourierFunction(g, coefficients_from(field(j, "coefficients"), g));
  });
}

Json to_json(const ChordalCover& c) {
  Json cliques = Json::array();
  for (std::size_t i = 0; i < c.cliques.size(); ++i) {
    cliques.push_back({{"vertices", c.cliques[i]}, {"translation", to_json(c.translations[i])}});
  }
  return {{"group", to_json(c.group)},
          {"connection_set", element_list(c.connection_set)},
          {"base_edges", edge_list(c.base)},
          {"cover_edges", edge_list(c.cover)},
          {"peo", c.peo.order},
          {"cliques", std::move(cliques)},
          {"fourier_support", element_list(c.fourier_support)}};
}

ChordalCover cover_from_json(const Json& j) {
  return as_format_error("cover", [&] {
    ChordalCover c;
    c.group = group_from_json(field(j, "group"));
    c.connection_set = element_set_from(array_field(j, "connection_set"), c.group);
    c.base = graph_from(array_field(j, "base_edges"), c.group);
    if (c.base.edges() != cayley_graph(c.group, c.connection_set).edges()) {
      bad("base_edges differ from the Cayley graph of connection_set");
    }
    c.cover = graph_from(array_field(j, "cover_edges"), c.group);
    c.peo.order = int_list(array_field(j, "peo"), "peo entry");
    for (const auto& entry : array_field(j, "cliques")) {
      c.cliques.push_back(int_list(field(entry, "vertices"), "clique vertex"));
      c.translations.push_back(element_from_json(field(entry, "translation"), c.group));
    }
    c.fourier_support = element_set_from(array_field(j, "fourier_support"), c.group);
    validate_cover(c);
    return c;
  });
}

Json to_json(const SosCertificate& cert, std::optional<double> residual) {
  Json terms = Json::array();
  for (const auto& t : cert.terms) terms.push_back(coefficient_list(t.coefficients()));
  Json out = {{"group", to_json(cert.group)},
              {"support", element_list(cert.declared_support)},
              {"scale", cert.scale},
              {"terms", std::move(terms)}};
  if (residual) out["residual"] = *residual;
  return out;
}

SosCertificate certificate_from_json(const Json& j) {
  return as_format_error("certificate", [&] {
    SosCertificate cert;
    cert.group = group_from_json(field(j, "group"));
    cert.declared_support = element_set_from(array_field(j, "support"), cert.group);
    cert.scale = as_double(field(j, "scale"), "scale");
    if (!(cert.scale > 0.0)) bad("scale must be positive");
    for (const auto& t : array_field(j, "terms")) {
      cert.terms.emplace_back(cert.group, coefficients_from(t, cert.group));
    }
    return cert;
  });
}

Json to_json(const LiftDescription& lift) {
  Json map = Json::array();
  for (const auto& row : lift.matrix_map) map.push_back(element_list(row));
  Json out = {{"group", to_json(lift.group)},
              {"connection_set", element_list(lift.connection_set)},
              {"t", element_list(lift.t)},
              {"size", lift.size()},
              {"variable_index", element_list(lift.variables)},
              {"pins", element_list(lift.pins())},
              {"matrix_map", std::move(map)},
              {"mode", lift.mode == LiftMode::kReal ? "real" : "hermitian"}};
  if (lift.mode == LiftMode::kReal) {
    out["sigma"] = lift.sigma;
    out["sigma_constant"] = to_json(*lift.sigma_constant);
  }
  return out;
}

LiftDescription lift_from_json(const Json& j) {
  return as_format_error("lift", [&] {
    LiftDescription lift;
    lift.group = group_from_json(field(j, "group"));
    const auto& g = lift.group;
    lift.connection_set = element_set_from(array_field(j, "connection_set"), g);
    if (lift.connection_set.contains(g.identity())) bad("connection_set must exclude the identity");
    lift.t = elements_from(array_field(j, "t"), g);
    if (lift.t.empty() || !std::is_sorted(lift.t.begin(), lift.t.end()) ||
        std::adjacent_find(lift.t.begin(), lift.t.end()) != lift.t.end()) {
      bad("t must be nonempty, sorted and free of repeats");
    }
    if (as_int(field(j, "size"), "size") != static_cast<int>(lift.t.size())) bad("size differs from |t|");
    lift.variables = elements_from(array_field(j, "variable_index"), g);
    const auto& map = array_field(j, "matrix_map");
    if (map.size() != lift.t.size()) bad("matrix_map must have |t| rows");
    std::set<GroupElement> expected_vars;
    for (std::size_t i = 0; i < lift.t.size(); ++i) {
      auto row = elements_from(map[i], g);
      if (row.size() != lift.t.size()) bad("matrix_map rows must have |t| entries");
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (row[k] != g.mul(g.inv(lift.t[i]), lift.t[k])) bad("matrix_map entry differs from conj(t_i) t_j");
        expected_vars.insert(row[k]);
      }
      lift.matrix_map.push_back(std::move(row));
    }
    if (std::vector<GroupElement>(expected_vars.begin(), expected_vars.end()) != lift.variables) {
      bad("variable_index differs from the entries of matrix_map");
    }
    for (const auto& s : lift.connection_set) {
      if (!expected_vars.contains(s)) bad("connection_set not contained in variable_index");
    }
    if (elements_from(array_field(j, "pins"), g) != lift.pins()) bad("pins differ from the identity and connection_set");
    const Json& mode = field(j, "mode");
    if (mode == "hermitian") {
      lift.mode = LiftMode::kHermitian;
      if (j.contains("sigma") || j.contains("sigma_constant")) bad("hermitian lift carries an involution");
    } else if (mode == "real") {
      const auto sigma = int_list(array_field(j, "sigma"), "sigma entry");
      lift = real_lift(lift, sigma);
      if (element_from_json(field(j, "sigma_constant"), g) != *lift.sigma_constant) bad("sigma_constant is wrong");
    } else {
      bad("mode must be 'hermitian' or 'real'");
    }
    return lift;
  });
}

Json to_json(const MomentMap& y) { return coefficient_list(y); }

MomentMap moments_from_json(const Json& j, const GroupSpec& group) {
  return as_format_error("moments", [&] { return coefficients_from(j, group); });
}

std::set<GroupElement> support_from_json(const Json& j, const GroupSpec& group) {
  return as_format_error("support", [&] {
    if (!(group_from_json(field(j, "group")) == group)) bad("support file is for a different group");
    return element_set_from(array_field(j, "support"), group);
  });
}

}  // namespace sparsos
