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
// Dataset graphs: simple connected undirected graphs whose vertices are
// datasets and whose edges carry a symmetric privacy budget epsilon >= 0.
// Vertex identifiers are opaque strings; their lexicographic order is the
// canonical order used for every tie-break in the library.

#ifndef HETDP_GRAPH_HPP_
#define HETDP_GRAPH_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hetdp/error.hpp"

namespace hetdp {

using VertexId = std::string;
using VertexSet = std::set<VertexId>;

// An edge as supplied to build_graph.
struct EdgeInput {
  VertexId u;
  VertexId v;
  double epsilon = 0.0;
};

// An edge in canonical form: u < v lexicographically.
struct EdgeRecord {
  VertexId u;
  VertexId v;
  double epsilon = 0.0;

  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

class DatasetGraph {
 public:
  struct Neighbor {
    std::size_t to = 0;
    double epsilon = 0.0;
  };

  std::size_t vertex_count() const { return ids_.size(); }

  // Vertex identifiers in canonical (lexicographic) order. Index i in every
  // per-vertex structure refers to ids()[i].
  const std::vector<VertexId>& ids() const { return ids_; }

  const VertexId& id_of(std::size_t index) const { return ids_[index]; }

  bool has_vertex(const VertexId& id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id);
  }

  std::size_t index_of(const VertexId& id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) {
      throw Error(ErrorKind::UnknownVertex, "vertex '" + id + "'");
    }
    return static_cast<std::size_t>(it - ids_.begin());
  }

  std::span<const Neighbor> neighbors(std::size_t index) const {
    return adjacency_[index];
  }

  // Edges in canonical order: (u, v) with u < v, sorted lexicographically.
  const std::vector<EdgeRecord>& edges() const { return edges_; }

  friend DatasetGraph build_graph(const std::vector<VertexId>& vertex_list,
                                  const std::vector<EdgeInput>& edge_list);

 private:
  std::vector<VertexId> ids_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<EdgeRecord> edges_;
};

// Validates and builds a dataset graph. Rejects duplicate vertices, self
// loops, duplicate edges (in either orientation), negative or non-finite
// budgets, and disconnected inputs, naming the offending element.
inline DatasetGraph build_graph(const std::vector<VertexId>& vertex_list,
                                const std::vector<EdgeInput>& edge_list) {
  DatasetGraph graph;
  graph.ids_ = vertex_list;
  std::sort(graph.ids_.begin(), graph.ids_.end());
  for (std::size_t i = 1; i < graph.ids_.size(); ++i) {
    if (graph.ids_[i] == graph.ids_[i - 1]) {
      throw Error(ErrorKind::DuplicateVertex, "vertex '" + graph.ids_[i] + "'");
    }
  }

  graph.adjacency_.resize(graph.ids_.size());
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const EdgeInput& edge : edge_list) {
    if (!(std::isfinite(edge.epsilon) && edge.epsilon >= 0.0)) {
      throw Error(ErrorKind::NegativeEpsilon,
                  "edge (" + edge.u + ", " + edge.v + ") has epsilon " +
                      std::to_string(edge.epsilon));
    }
    const std::size_t a = graph.index_of(edge.u);
    const std::size_t b = graph.index_of(edge.v);
    if (a == b) {
      throw Error(ErrorKind::SelfLoop, "vertex '" + edge.u + "'");
    }
    const auto key = std::minmax(a, b);
    if (!seen.insert(key).second) {
      throw Error(ErrorKind::DuplicateEdge,
                  "edge (" + edge.u + ", " + edge.v + ")");
    }
    graph.adjacency_[a].push_back({b, edge.epsilon});
    graph.adjacency_[b].push_back({a, edge.epsilon});
    graph.edges_.push_back({graph.ids_[key.first], graph.ids_[key.second],
                            edge.epsilon});
  }
  for (auto& list : graph.adjacency_) {
    std::sort(list.begin(), list.end(),
              [](const DatasetGraph::Neighbor& x,
                 const DatasetGraph::Neighbor& y) { return x.to < y.to; });
  }
  std::sort(graph.edges_.begin(), graph.edges_.end(),
            [](const EdgeRecord& x, const EdgeRecord& y) {
              return std::tie(x.u, x.v) < std::tie(y.u, y.v);
            });

  // Connectivity check by depth-first search from the first vertex.
  if (!graph.ids_.empty()) {
    std::vector<bool> reached(graph.ids_.size(), false);
    std::vector<std::size_t> stack = {0};
    reached[0] = true;
    while (!stack.empty()) {
      const std::size_t at = stack.back();
      stack.pop_back();
      for (const auto& nbr : graph.adjacency_[at]) {
        if (!reached[nbr.to]) {
          reached[nbr.to] = true;
          stack.push_back(nbr.to);
        }
      }
    }
    for (std::size_t i = 0; i < reached.size(); ++i) {
      if (!reached[i]) {
        throw Error(ErrorKind::Disconnected, "vertex '" + graph.ids_[i] + "'");
      }
    }
  }
  return graph;
}

// The true query value T(v) in {1, 2} for every vertex of a companion
// graph, stored positionally in the graph's canonical vertex order.
class QueryAssignment {
 public:
  QueryAssignment() = default;

  static QueryAssignment from_labels(const DatasetGraph& graph,
                                     const std::map<VertexId, int>& labels) {
    QueryAssignment query;
    query.labels_.reserve(graph.vertex_count());
    for (const VertexId& id : graph.ids()) {
      auto it = labels.find(id);
      if (it == labels.end()) {
        throw Error(ErrorKind::IncompleteQuery,
                    "no query value for vertex '" + id + "'");
      }
      if (it->second != 1 && it->second != 2) {
        throw Error(ErrorKind::ParseError,
                    "query value for vertex '" + id + "' must be 1 or 2");
      }
      query.labels_.push_back(it->second);
    }
    if (labels.size() != graph.vertex_count()) {
      for (const auto& [id, value] : labels) {
        if (!graph.has_vertex(id)) {
          throw Error(ErrorKind::UnknownVertex, "vertex '" + id + "'");
        }
      }
    }
    return query;
  }

  int label(std::size_t index) const { return labels_[index]; }

  std::size_t size() const { return labels_.size(); }

 private:
  std::vector<int> labels_;
};

namespace detail {

inline void require_query_matches(const DatasetGraph& graph,
                                  const QueryAssignment& query) {
  if (query.size() != graph.vertex_count()) {
    throw Error(ErrorKind::IncompleteQuery,
                "query covers " + std::to_string(query.size()) +
                    " vertices, graph has " +
                    std::to_string(graph.vertex_count()));
  }
}

}  // namespace detail

// N(s): the vertices outside s adjacent to at least one member of s.
inline VertexSet neighborhood(const DatasetGraph& graph, const VertexSet& s) {
  std::vector<bool> inside(graph.vertex_count(), false);
  for (const VertexId& id : s) {
    inside[graph.index_of(id)] = true;
  }
  VertexSet result;
  for (const VertexId& id : s) {
    for (const auto& nbr : graph.neighbors(graph.index_of(id))) {
      if (!inside[nbr.to]) {
        result.insert(graph.id_of(nbr.to));
      }
    }
  }
  return result;
}

// The boundary set: vertices with at least one neighbor whose true query
// value differs. These are exactly the places where an individual's data
// can flip the query, and where a partial mechanism must be specified.
inline VertexSet boundary_set(const DatasetGraph& graph,
                              const QueryAssignment& query) {
  detail::require_query_matches(graph, query);
  VertexSet result;
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    for (const auto& nbr : graph.neighbors(i)) {
      if (query.label(nbr.to) != query.label(i)) {
        result.insert(graph.id_of(i));
        break;
      }
    }
  }
  return result;
}

}  // namespace hetdp

#endif  // HETDP_GRAPH_HPP_
