#include "spinelab/io.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "spinelab/error.hpp"

namespace spinelab {

namespace {

int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) fail_input("ParseError", std::string(what) + " must be an integer");
  return j.get<int>();
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail_input("ParseError", std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string short_hash(const std::string& key) {
  std::ostringstream os;
  os << std::hex << std::hash<std::string>{}(key);
  return os.str();
}

std::string label_text(const VertexLabel& L) {
  if (L.trivial()) return "1";
  std::string c = to_string(L.conj);
  return L.conj.empty() ? "A" + std::to_string(L.factor) : c + " A" + std::to_string(L.factor) + " " + c + "^-1";
}

}  // namespace

FiniteGroup group_from_json(const json& j) {
  if (!j.is_object()) fail_input("ParseError", "group descriptor must be an object");
  if (j.contains("cyclic")) return cyclic(as_int(j.at("cyclic"), "cyclic"));
  if (j.contains("symmetric")) return symmetric(as_int(j.at("symmetric"), "symmetric"));
  const json& t = field(j, "table");
  if (!t.is_array()) fail_input("ParseError", "table must be an array of rows");
  std::vector<std::vector<int>> table;
  for (const auto& row : t) {
    if (!row.is_array()) fail_input("ParseError", "table rows must be arrays");
    std::vector<int> r;
    for (const auto& x : row) r.push_back(as_int(x, "table entry"));
    table.push_back(std::move(r));
  }
  std::string name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>() : "G";
  return build_group(table, name);
}

FactorSystem factors_from_json(const json& j) {
  const json& fs = field(j, "factors");
  if (!fs.is_array()) fail_input("ParseError", "factors must be an array");
  std::vector<FiniteGroup> groups;
  for (const auto& g : fs) groups.push_back(group_from_json(g));
  return make_system(std::move(groups));
}

FactorSystem load_factors(const std::string& spec_or_path) {
  std::ifstream in(spec_or_path);
  if (in) return factors_from_json(read_json_file(spec_or_path));
  return parse_factor_spec(spec_or_path);
}

Word word_from_json(const FactorSystem& sys, const json& j) {
  if (!j.is_array()) fail_input("ParseError", "word must be an array of [factor, elem] pairs");
  std::vector<Letter> raw;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) fail_input("ParseError", "word letters must be [factor, elem] pairs");
    raw.push_back({as_int(p[0], "factor"), as_int(p[1], "elem")});
  }
  return reduce(sys, raw);
}

json word_to_json(const Word& w) {
  json j = json::array();
  for (const auto& l : w.letters) j.push_back({l.factor, l.elem});
  return j;
}

OuterAutoWord auto_from_json(const FactorSystem& sys, const json& j) {
  if (!j.is_array()) fail_input("ParseError", "automorphism must be an array of generators");
  OuterAutoWord f;
  for (const auto& g : j) {
    const int exp = g.contains("exp") ? as_int(g.at("exp"), "exp") : 1;
    f = compose(f, gen(sys, as_int(field(g, "i"), "i"), word_from_json(sys, field(g, "w")), exp));
  }
  return f;
}

json auto_to_json(const OuterAutoWord& f) {
  json j = json::array();
  for (const auto& g : f.gens) j.push_back({{"i", g.i}, {"w", word_to_json(g.w)}, {"exp", g.exp}});
  return j;
}

GraphOfGroups marking_from_json(const FactorSystem& sys, const json& j) {
  GraphOfGroups X;
  const json& vs = field(j, "vertices");
  const json& es = field(j, "edges");
  if (!vs.is_array() || !es.is_array()) fail_input("ParseError", "vertices and edges must be arrays");
  for (const auto& v : vs) {
    const json& L = field(v, "label");
    if (L.is_null()) {
      X.vertices.push_back({});
      continue;
    }
    const int k = as_int(field(L, "factor"), "factor");
    if (k < 1 || k > sys.n()) fail_input("SystemMismatch", "label names factor " + std::to_string(k));
    Word c = L.contains("conj") ? word_from_json(sys, L.at("conj")) : Word{};
    X.vertices.push_back(VertexLabel::peripheral(k, normalize_conj(sys, k, c)));
  }
  for (const auto& e : es) {
    if (!e.is_array() || e.size() != 2) fail_input("ParseError", "edges must be [u, v] pairs");
    X.edges.push_back({as_int(e[0], "edge end"), as_int(e[1], "edge end")});
  }
  validate_or_throw(sys, X);
  return X;
}

json marking_to_json(const GraphOfGroups& X) {
  json vs = json::array();
  for (const auto& L : X.vertices) {
    if (L.trivial()) vs.push_back({{"label", nullptr}});
    else vs.push_back({{"label", {{"factor", L.factor}, {"conj", word_to_json(L.conj)}}}});
  }
  json es = json::array();
  for (auto [u, v] : X.edges) es.push_back({u, v});
  return {{"vertices", vs}, {"edges", es}};
}

std::string marking_to_dot(const GraphOfGroups& X) {
  std::ostringstream os;
  os << "graph marking {\n";
  for (int v = 0; v < X.num_vertices(); ++v)
    os << "  v" << v << " [label=\"" << label_text(X.vertices[v]) << "\"" << (X.vertices[v].trivial() ? ", shape=point" : "")
       << "];\n";
  for (auto [u, v] : X.edges) os << "  v" << u << " -- v" << v << ";\n";
  os << "}\n";
  return os.str();
}

json spine_ball_to_json(const FactorSystem& sys, const SpineBall& B) {
  json vs = json::array();
  for (size_t i = 0; i < B.vertices.size(); ++i) {
    const auto& v = B.vertices[i];
    json tags = json::array();
    for (const auto& t : classify(sys, v.rep)) tags.push_back(t);
    vs.push_back({{"id", i},
                  {"hash", short_hash(v.key)},
                  {"key", v.key},
                  {"depth", B.depth[i]},
                  {"tags", tags},
                  {"marking", marking_to_json(v.rep)}});
  }
  json es = json::array();
  for (const auto& e : B.edges) es.push_back({e.a, e.b});
  return {{"radius", B.radius}, {"truncated", B.truncated}, {"vertices", vs}, {"edges", es}};
}

std::string spine_ball_to_dot(const FactorSystem& sys, const SpineBall& B) {
  std::ostringstream os;
  os << "graph spine {\n";
  for (size_t i = 0; i < B.vertices.size(); ++i) {
    std::string tags;
    for (const auto& t : classify(sys, B.vertices[i].rep)) tags += (tags.empty() ? "" : " ") + t;
    os << "  s" << i << " [label=\"" << short_hash(B.vertices[i].key) << "\\n" << tags << "\"];\n";
  }
  for (const auto& e : B.edges) os << "  s" << e.a << " -- s" << e.b << ";\n";
  os << "}\n";
  return os.str();
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail_input("ParseError", "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail_input("ParseError", path + ": " + e.what());
  }
}

}  // namespace spinelab
