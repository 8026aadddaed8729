// Copyright 2026 The hetdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Instance and mechanism files, plus the two instance generators. An
// instance file is one JSON document carrying the graph, the query, and
// optionally the partial mechanism (conventional extension: .dpg.json).
// Serialization is canonical - vertices and edges in identifier order,
// numbers in shortest round-trip decimal - so equal inputs produce byte
// identical files.

#ifndef HETDP_IO_HPP_
#define HETDP_IO_HPP_

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hetdp/edge_bounds.hpp"
#include "hetdp/error.hpp"
#include "hetdp/extension.hpp"
#include "hetdp/graph.hpp"

namespace hetdp {

namespace detail {

// Shortest decimal form that parses back to the same double.
inline std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

}  // namespace detail

struct InstanceVertex {
  VertexId id;
  int query = 1;
};

// In-memory form of an instance file.
struct InstanceFile {
  std::vector<InstanceVertex> vertices;
  std::vector<EdgeInput> edges;
  std::map<VertexId, double> partial_mechanism;  // empty when absent

  std::string to_text() const {
    nlohmann::json doc;
    doc["vertices"] = nlohmann::json::array();
    for (const InstanceVertex& vertex : vertices) {
      doc["vertices"].push_back({{"id", vertex.id}, {"query", vertex.query}});
    }
    doc["edges"] = nlohmann::json::array();
    for (const EdgeInput& edge : edges) {
      doc["edges"].push_back(
          {{"u", edge.u}, {"v", edge.v}, {"epsilon", edge.epsilon}});
    }
    if (!partial_mechanism.empty()) {
      doc["partial_mechanism"] = nlohmann::json::object();
      for (const auto& [id, value] : partial_mechanism) {
        doc["partial_mechanism"][id] = value;
      }
    }
    return doc.dump(2) + "\n";
  }
};

// Validated domain objects for one instance.
struct Instance {
  DatasetGraph graph;
  QueryAssignment query;
  std::optional<PartialMechanism> partial;
};

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& object,
                                           const char* key,
                                           const std::string& path) {
  const auto it = object.find(key);
  if (it == object.end()) {
    throw Error(ErrorKind::ParseError, path + " is missing field '" + key +
                                           "'");
  }
  return *it;
}

inline std::string require_string(const nlohmann::json& value,
                                  const std::string& path) {
  if (!value.is_string()) {
    throw Error(ErrorKind::ParseError, path + " must be a string");
  }
  return value.get<std::string>();
}

inline double require_number(const nlohmann::json& value,
                             const std::string& path) {
  if (!value.is_number()) {
    throw Error(ErrorKind::ParseError, path + " must be a number");
  }
  return value.get<double>();
}

inline nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace detail

inline InstanceFile parse_instance_file(const std::string& text) {
  const nlohmann::json doc = detail::parse_json(text);
  if (!doc.is_object()) {
    throw Error(ErrorKind::ParseError, "instance must be a JSON object");
  }
  InstanceFile file;

  const auto& vertices = detail::require_field(doc, "vertices", "instance");
  if (!vertices.is_array()) {
    throw Error(ErrorKind::ParseError, "vertices must be an array");
  }
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::string path = "vertices[" + std::to_string(i) + "]";
    const auto& row = vertices[i];
    if (!row.is_object()) {
      throw Error(ErrorKind::ParseError, path + " must be an object");
    }
    InstanceVertex vertex;
    vertex.id =
        detail::require_string(detail::require_field(row, "id", path),
                               path + ".id");
    const auto& query = detail::require_field(row, "query", path);
    if (!query.is_number_integer() ||
        (query.get<int>() != 1 && query.get<int>() != 2)) {
      throw Error(ErrorKind::ParseError, path + ".query must be 1 or 2");
    }
    vertex.query = query.get<int>();
    file.vertices.push_back(std::move(vertex));
  }

  const auto& edges = detail::require_field(doc, "edges", "instance");
  if (!edges.is_array()) {
    throw Error(ErrorKind::ParseError, "edges must be an array");
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string path = "edges[" + std::to_string(i) + "]";
    const auto& row = edges[i];
    if (!row.is_object()) {
      throw Error(ErrorKind::ParseError, path + " must be an object");
    }
    EdgeInput edge;
    edge.u = detail::require_string(detail::require_field(row, "u", path),
                                    path + ".u");
    edge.v = detail::require_string(detail::require_field(row, "v", path),
                                    path + ".v");
    edge.epsilon = detail::require_number(
        detail::require_field(row, "epsilon", path), path + ".epsilon");
    if (!(std::isfinite(edge.epsilon) && edge.epsilon >= 0.0)) {
      throw Error(ErrorKind::NegativeEpsilon,
                  path + ".epsilon: " + detail::format_double(edge.epsilon) +
                      " must be finite and nonnegative");
    }
    file.edges.push_back(std::move(edge));
  }

  if (doc.contains("partial_mechanism")) {
    const auto& partial = doc["partial_mechanism"];
    if (!partial.is_object()) {
      throw Error(ErrorKind::ParseError,
                  "partial_mechanism must be an object");
    }
    for (const auto& [id, value] : partial.items()) {
      const std::string path = "partial_mechanism['" + id + "']";
      file.partial_mechanism[id] = detail::require_number(value, path);
    }
  }
  return file;
}

// Builds the validated domain objects from an instance file; all graph and
// probability validation errors surface with the offending element named.
inline Instance instantiate(const InstanceFile& file) {
  std::vector<VertexId> ids;
  std::map<VertexId, int> labels;
  ids.reserve(file.vertices.size());
  for (const InstanceVertex& vertex : file.vertices) {
    ids.push_back(vertex.id);
    labels[vertex.id] = vertex.query;
  }
  Instance instance{build_graph(ids, file.edges), {}, std::nullopt};
  instance.query = QueryAssignment::from_labels(instance.graph, labels);
  if (!file.partial_mechanism.empty()) {
    PartialMechanism partial;
    for (const auto& [id, value] : file.partial_mechanism) {
      instance.graph.index_of(id);
      try {
        partial.values.emplace(id, Probability(value));
      } catch (const Error& e) {
        throw Error(e.kind(),
                    "partial_mechanism['" + id + "']: " + e.what());
      }
    }
    instance.partial = std::move(partial);
  }
  return instance;
}

inline Instance parse_instance(const std::string& text) {
  return instantiate(parse_instance_file(text));
}

inline std::string serialize_instance(
    const DatasetGraph& graph, const QueryAssignment& query,
    const std::optional<PartialMechanism>& partial = std::nullopt) {
  InstanceFile file;
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    file.vertices.push_back({graph.id_of(i), query.label(i)});
  }
  for (const EdgeRecord& edge : graph.edges()) {
    file.edges.push_back({edge.u, edge.v, edge.epsilon});
  }
  if (partial.has_value()) {
    for (const auto& [id, value] : partial->values) {
      file.partial_mechanism[id] = value.value();
    }
  }
  return file.to_text();
}

// A computed mechanism with the settings and witnesses of its computation.
struct MechanismFile {
  std::map<VertexId, double> mechanism;
  double tolerance = kDefaultTolerance;
  bool compatible = true;
  std::map<VertexId, VertexId> origin;

  std::string to_text() const {
    nlohmann::json doc;
    doc["mechanism"] = nlohmann::json::object();
    for (const auto& [id, value] : mechanism) {
      doc["mechanism"][id] = value;
    }
    doc["metadata"]["tolerance"] = tolerance;
    doc["metadata"]["compatible"] = compatible;
    doc["metadata"]["origin"] = nlohmann::json::object();
    for (const auto& [id, seed] : origin) {
      doc["metadata"]["origin"][id] = seed;
    }
    return doc.dump(2) + "\n";
  }
};

inline MechanismFile parse_mechanism_file(const std::string& text) {
  const nlohmann::json doc = detail::parse_json(text);
  if (!doc.is_object()) {
    throw Error(ErrorKind::ParseError, "mechanism file must be a JSON object");
  }
  MechanismFile file;
  const auto& mechanism =
      detail::require_field(doc, "mechanism", "mechanism file");
  if (!mechanism.is_object()) {
    throw Error(ErrorKind::ParseError, "mechanism must be an object");
  }
  for (const auto& [id, value] : mechanism.items()) {
    file.mechanism[id] =
        detail::require_number(value, "mechanism['" + id + "']");
  }
  if (doc.contains("metadata")) {
    const auto& metadata = doc["metadata"];
    if (metadata.contains("tolerance")) {
      file.tolerance =
          detail::require_number(metadata["tolerance"], "metadata.tolerance");
    }
    if (metadata.contains("compatible")) {
      if (!metadata["compatible"].is_boolean()) {
        throw Error(ErrorKind::ParseError,
                    "metadata.compatible must be a boolean");
      }
      file.compatible = metadata["compatible"].get<bool>();
    }
    if (metadata.contains("origin")) {
      for (const auto& [id, seed] : metadata["origin"].items()) {
        file.origin[id] = detail::require_string(
            seed, "metadata.origin['" + id + "']");
      }
    }
  }
  return file;
}

// Totality-checked mechanism for a given graph.
inline Mechanism make_mechanism(const DatasetGraph& graph,
                                const MechanismFile& file) {
  Mechanism mech;
  for (const auto& [id, value] : file.mechanism) {
    graph.index_of(id);
    try {
      mech.values.emplace(id, Probability(value));
    } catch (const Error& e) {
      throw Error(e.kind(), "mechanism['" + id + "']: " + e.what());
    }
  }
  for (const VertexId& id : graph.ids()) {
    if (!mech.values.contains(id)) {
      throw Error(ErrorKind::IncompleteMechanism,
                  "no mechanism value for vertex '" + id + "'");
    }
  }
  return mech;
}

// Hypercube instance over {1,2}^n with edges between ids at Hamming
// distance one, all carrying eps_default except the listed overrides, and
// the majority vote as query. n must be odd so the majority is never tied.
inline InstanceFile generate_hypercube(
    int n, double eps_default, const std::vector<EdgeInput>& eps_overrides,
    const std::string& query_rule = "majority") {
  if (query_rule != "majority") {
    throw Error(ErrorKind::ParseError,
                "unknown query rule '" + query_rule + "'");
  }
  if (n < 1) {
    throw Error(ErrorKind::EvenDimension,
                "dimension must be a positive odd integer, got " +
                    std::to_string(n));
  }
  if (n % 2 == 0) {
    throw Error(ErrorKind::EvenDimension,
                "majority needs an odd dimension, got " + std::to_string(n));
  }
  if (!(std::isfinite(eps_default) && eps_default > 0.0)) {
    throw Error(ErrorKind::NonPositiveEpsilon,
                "default epsilon must be positive");
  }

  const std::size_t count = std::size_t{1} << n;
  const auto id_for = [n](std::size_t mask) {
    std::string id(static_cast<std::size_t>(n), '1');
    for (int bit = 0; bit < n; ++bit) {
      if (mask & (std::size_t{1} << bit)) id[bit] = '2';
    }
    return id;
  };

  InstanceFile file;
  for (std::size_t mask = 0; mask < count; ++mask) {
    const std::string id = id_for(mask);
    const int ones = n - static_cast<int>(std::popcount(mask));
    file.vertices.push_back({id, ones > n / 2 ? 1 : 2});
  }
  std::sort(file.vertices.begin(), file.vertices.end(),
            [](const InstanceVertex& a, const InstanceVertex& b) {
              return a.id < b.id;
            });

  std::map<std::pair<VertexId, VertexId>, double> budget;
  for (std::size_t mask = 0; mask < count; ++mask) {
    for (int bit = 0; bit < n; ++bit) {
      const std::size_t other = mask ^ (std::size_t{1} << bit);
      if (other < mask) continue;
      auto key = std::minmax(id_for(mask), id_for(other));
      budget.emplace(key, eps_default);
    }
  }
  for (const EdgeInput& override_edge : eps_overrides) {
    if (!(std::isfinite(override_edge.epsilon) &&
          override_edge.epsilon >= 0.0)) {
      throw Error(ErrorKind::NegativeEpsilon,
                  "override for (" + override_edge.u + ", " +
                      override_edge.v + ") must be finite and nonnegative");
    }
    const auto key = std::minmax(override_edge.u, override_edge.v);
    const auto it = budget.find(key);
    if (it == budget.end()) {
      throw Error(ErrorKind::UnknownOverrideEdge,
                  "(" + override_edge.u + ", " + override_edge.v +
                      ") is not a hypercube edge");
    }
    it->second = override_edge.epsilon;
  }
  for (const auto& [key, epsilon] : budget) {
    file.edges.push_back({key.first, key.second, epsilon});
  }
  return file;
}

// Path instance v0 - v1 - ... - vn with query 1 everywhere and the seed
// alpha at v0. Identifiers are zero padded so their lexicographic order is
// the path order.
inline InstanceFile generate_path(int n, Probability alpha,
                                  const EpsilonSeq& eps_list) {
  if (n < 0 || eps_list.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorKind::LengthMismatch,
                "path of length " + std::to_string(n) + " needs " +
                    std::to_string(n) + " budgets, got " +
                    std::to_string(eps_list.size()));
  }
  for (double eps : eps_list) {
    if (!(std::isfinite(eps) && eps >= 0.0)) {
      throw Error(ErrorKind::NegativeEpsilon,
                  "epsilon " + detail::format_double(eps) +
                      " must be finite and nonnegative");
    }
  }
  const std::size_t width = std::to_string(n).size();
  const auto id_for = [width](int index) {
    std::string digits = std::to_string(index);
    return "v" + std::string(width - digits.size(), '0') + digits;
  };
  InstanceFile file;
  for (int i = 0; i <= n; ++i) {
    file.vertices.push_back({id_for(i), 1});
  }
  for (int i = 0; i < n; ++i) {
    file.edges.push_back({id_for(i), id_for(i + 1), eps_list[i]});
  }
  file.partial_mechanism[id_for(0)] = alpha.value();
  return file;
}

}  // namespace hetdp

#endif  // HETDP_IO_HPP_
