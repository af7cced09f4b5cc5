#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "zsc/graph.hpp"

namespace zsc {

using AnyGraph = std::variant<WeightedDigraph, WeightedGraph>;

enum class CodecErrc {
  kMalformedJson,
  kSchemaViolation,
  kResidueOutOfRange,
  kVertexOutOfRange,
  kDuplicateEdge,
  kSelfLoop,
};

std::string to_string(CodecErrc code);

class CodecError : public std::runtime_error {
 public:
  CodecError(CodecErrc code, const std::string& what)
      : std::runtime_error(to_string(code) + ": " + what), code_(code) {}
  CodecErrc code() const { return code_; }

 private:
  CodecErrc code_;
};

// Graph document:
//   {"directed": bool, "group": [k_1, ...], "n": int,
//    "vertex_weights": [[residues], ...], "edges": [[u, v, [residues]], ...]}
// Undirected edges are written with u < v. Edges are sorted by (u, v).

AnyGraph parse_graph(std::string_view text);
AnyGraph graph_from_json(const nlohmann::json& doc);

nlohmann::ordered_json to_json(const WeightedDigraph& g);
nlohmann::ordered_json to_json(const WeightedGraph& g);
nlohmann::ordered_json to_json(const AnyGraph& g);

/// Canonical compact form; serialize(parse(x)) == x for canonical x.
std::string serialize_graph(const AnyGraph& g);

nlohmann::ordered_json elem_to_json(const GroupSpec& group, GroupElem a);

}  // namespace zsc
