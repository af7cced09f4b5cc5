#include "zsc/codec.hpp"

#include <set>
#include <utility>

#include "zsc/error.hpp"

namespace zsc {

std::string to_string(CodecErrc code) {
  switch (code) {
    case CodecErrc::kMalformedJson: return "malformed-json";
    case CodecErrc::kSchemaViolation: return "schema-violation";
    case CodecErrc::kResidueOutOfRange: return "residue-out-of-range";
    case CodecErrc::kVertexOutOfRange: return "vertex-out-of-range";
    case CodecErrc::kDuplicateEdge: return "duplicate-edge";
    case CodecErrc::kSelfLoop: return "self-loop";
  }
  return "unknown";
}

namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& what) { throw CodecError(CodecErrc::kSchemaViolation, what); }

const json& field(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) schema(std::string("missing field \"") + name + "\"");
  return *it;
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) schema(where + ": expected an integer");
  return j.get<int>();
}

GroupElem parse_elem(const GroupSpec& group, const json& j, const std::string& where) {
  if (!j.is_array()) schema(where + ": expected a residue array");
  if (j.size() != group.factors().size()) {
    schema(where + ": expected " + std::to_string(group.factors().size()) + " residues");
  }
  std::vector<int> r;
  for (std::size_t i = 0; i < j.size(); ++i) {
    int x = as_int(j[i], where);
    if (x < 0 || x >= group.factors()[i]) {
      throw CodecError(CodecErrc::kResidueOutOfRange,
                       where + ": residue " + std::to_string(x) + " not in [0," +
                           std::to_string(group.factors()[i]) + ")");
    }
    r.push_back(x);
  }
  return group.from_residues(r);
}

template <class Graph>
Graph parse_body(const json& doc, GroupSpec group, int n, bool directed) {
  Graph g(group, n);
  const json& vw = field(doc, "vertex_weights");
  if (!vw.is_array() || vw.size() != static_cast<std::size_t>(n)) {
    schema("vertex_weights must be an array of length n");
  }
  for (int v = 0; v < n; ++v) {
    g.set_vertex_weight(v, parse_elem(group, vw[v], "vertex_weights[" + std::to_string(v) + "]"));
  }
  const json& edges = field(doc, "edges");
  if (!edges.is_array()) schema("edges must be an array");
  std::set<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const json& e = edges[i];
    if (!e.is_array() || e.size() != 3) schema(where + ": expected [u, v, [residues]]");
    int u = as_int(e[0], where);
    int v = as_int(e[1], where);
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw CodecError(CodecErrc::kVertexOutOfRange, where + ": endpoint outside [0,n)");
    }
    if (u == v) throw CodecError(CodecErrc::kSelfLoop, where + ": self-loop at " + std::to_string(u));
    auto key = directed ? std::pair{u, v} : std::pair{std::min(u, v), std::max(u, v)};
    if (!seen.insert(key).second) {
      throw CodecError(CodecErrc::kDuplicateEdge,
                       where + ": duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
    }
    g.set_edge(u, v, parse_elem(group, e[2], where));
  }
  return g;
}

}  // namespace

AnyGraph graph_from_json(const json& doc) {
  if (!doc.is_object()) schema("document must be an object");
  const json& directed = field(doc, "directed");
  if (!directed.is_boolean()) schema("\"directed\" must be a boolean");
  const json& factors = field(doc, "group");
  if (!factors.is_array() || factors.empty()) schema("\"group\" must be a nonempty array");
  std::vector<int> fs;
  for (const auto& f : factors) fs.push_back(as_int(f, "group"));
  std::optional<GroupSpec> group;
  try {
    group.emplace(fs);
  } catch (const DomainError& e) {
    schema(std::string("group: ") + e.what());
  }
  int n = as_int(field(doc, "n"), "n");
  if (n < 0 || n > kMaxVertices) schema("n must be in [0,64]");
  if (directed.get<bool>()) return parse_body<WeightedDigraph>(doc, *group, n, true);
  return parse_body<WeightedGraph>(doc, *group, n, false);
}

AnyGraph parse_graph(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CodecError(CodecErrc::kMalformedJson, e.what());
  }
  return graph_from_json(doc);
}

nlohmann::ordered_json elem_to_json(const GroupSpec& group, GroupElem a) {
  return nlohmann::ordered_json(group.residues(a));
}

namespace {

template <class Graph>
nlohmann::ordered_json header(const Graph& g, bool directed) {
  nlohmann::ordered_json doc;
  doc["directed"] = directed;
  doc["group"] = g.group().factors();
  doc["n"] = g.size();
  auto vw = nlohmann::ordered_json::array();
  for (int v = 0; v < g.size(); ++v) vw.push_back(elem_to_json(g.group(), g.vertex_weight(v)));
  doc["vertex_weights"] = std::move(vw);
  return doc;
}

}  // namespace

nlohmann::ordered_json to_json(const WeightedDigraph& g) {
  auto doc = header(g, true);
  auto edges = nlohmann::ordered_json::array();
  for (int u = 0; u < g.size(); ++u) {
    for (int v = 0; v < g.size(); ++v) {
      if (g.has_edge(u, v)) edges.push_back({u, v, elem_to_json(g.group(), g.weight(u, v))});
    }
  }
  doc["edges"] = std::move(edges);
  return doc;
}

nlohmann::ordered_json to_json(const WeightedGraph& g) {
  auto doc = header(g, false);
  auto edges = nlohmann::ordered_json::array();
  for (int u = 0; u < g.size(); ++u) {
    for (int v = u + 1; v < g.size(); ++v) {
      if (g.has_edge(u, v)) edges.push_back({u, v, elem_to_json(g.group(), g.weight(u, v))});
    }
  }
  doc["edges"] = std::move(edges);
  return doc;
}

nlohmann::ordered_json to_json(const AnyGraph& g) {
  return std::visit([](const auto& x) { return to_json(x); }, g);
}

std::string serialize_graph(const AnyGraph& g) { return to_json(g).dump(); }

}  // namespace zsc
