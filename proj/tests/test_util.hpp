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
// Shared fixtures: random connected graphs, random private mechanisms (and
// therefore compatible seed sets), and a grid search over free-vertex
// values used to confirm infeasibility on small instances.

#ifndef HETDP_TESTS_TEST_UTIL_HPP_
#define HETDP_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hetdp/edge_bounds.hpp"
#include "hetdp/extension.hpp"
#include "hetdp/graph.hpp"
#include "hetdp/propagation.hpp"

namespace hetdp::testing {

inline VertexId vid(int index) {
  const std::string digits = std::to_string(index);
  return "v" + std::string(digits.size() < 2 ? 2 - digits.size() : 0, '0') +
         digits;
}

// Path graph over vid(0) .. vid(n) with the given per-edge budgets.
inline DatasetGraph make_path_graph(const EpsilonSeq& eps_seq) {
  std::vector<VertexId> ids;
  std::vector<EdgeInput> edges;
  for (std::size_t i = 0; i <= eps_seq.size(); ++i) {
    ids.push_back(vid(static_cast<int>(i)));
  }
  for (std::size_t i = 0; i < eps_seq.size(); ++i) {
    edges.push_back({ids[i], ids[i + 1], eps_seq[i]});
  }
  return build_graph(ids, edges);
}

inline QueryAssignment make_query(const DatasetGraph& graph,
                                  const std::vector<int>& labels) {
  std::map<VertexId, int> by_id;
  for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
    by_id[graph.id_of(i)] = labels[i];
  }
  return QueryAssignment::from_labels(graph, by_id);
}

inline QueryAssignment constant_query(const DatasetGraph& graph, int label) {
  return make_query(graph,
                    std::vector<int>(graph.vertex_count(), label));
}

inline DatasetGraph random_connected_graph(std::mt19937& rng, int min_v,
                                           int max_v, int max_edges,
                                           double eps_lo, double eps_hi) {
  const int n = std::uniform_int_distribution<int>(min_v, max_v)(rng);
  std::vector<VertexId> ids;
  for (int i = 0; i < n; ++i) ids.push_back(vid(i));

  std::uniform_real_distribution<double> eps(eps_lo, eps_hi);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::set<std::pair<int, int>> used;
  std::vector<EdgeInput> edges;
  for (int i = 1; i < n; ++i) {
    const int j = std::uniform_int_distribution<int>(0, i - 1)(rng);
    const auto key = std::minmax(order[i], order[j]);
    used.insert(key);
    edges.push_back({ids[key.first], ids[key.second], eps(rng)});
  }

  const int full = n * (n - 1) / 2;
  const int cap = std::min(max_edges, full);
  if (cap > static_cast<int>(edges.size())) {
    const int extras = std::uniform_int_distribution<int>(
        0, cap - static_cast<int>(edges.size()))(rng);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int added = 0, attempts = 0; added < extras && attempts < 20 * extras;
         ++attempts) {
      const int a = pick(rng);
      const int b = pick(rng);
      if (a == b) continue;
      const auto key = std::minmax(a, b);
      if (!used.insert(key).second) continue;
      edges.push_back({ids[key.first], ids[key.second], eps(rng)});
      ++added;
    }
  }
  return build_graph(ids, edges);
}

// Random labels, forced non-constant whenever the graph has two vertices.
inline QueryAssignment random_query(std::mt19937& rng,
                                    const DatasetGraph& graph) {
  const std::size_t n = graph.vertex_count();
  std::vector<int> labels(n);
  std::bernoulli_distribution coin(0.5);
  for (auto& label : labels) label = coin(rng) ? 1 : 2;
  if (n >= 2 &&
      std::adjacent_find(labels.begin(), labels.end(),
                         std::not_equal_to<>()) == labels.end()) {
    labels[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)] =
        3 - labels[0];
  }
  return make_query(graph, labels);
}

// A random private mechanism: a convex combination of singleton-seeded
// optimal extensions and their complements. Each component is private by
// construction and privacy is preserved under complement and mixture, so
// any restriction of the result is a compatible seed set.
inline Mechanism random_dp_mechanism(std::mt19937& rng,
                                     const DatasetGraph& graph,
                                     int components = 3) {
  std::uniform_real_distribution<double> alpha_dist(0.05, 0.95);
  std::uniform_real_distribution<double> weight_dist(0.1, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0,
                                                  graph.vertex_count() - 1);
  std::bernoulli_distribution flip(0.5);

  std::vector<std::map<VertexId, Probability>> parts;
  std::vector<double> weights;
  for (int c = 0; c < components; ++c) {
    const VertexId source = graph.id_of(pick(rng));
    const BoundMap bounds =
        strongest_bounds_from(graph, source, Probability(alpha_dist(rng)));
    parts.push_back(bounds.bounds);
    if (flip(rng)) {
      for (auto& [id, value] : parts.back()) {
        value = Probability(1.0 - value.value());
      }
    }
    weights.push_back(weight_dist(rng));
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);

  // A constant share keeps every value in [0.075, 0.925]. Complementing a
  // seed next to 0 or 1 rounds, and folds amplify that by value/seed, so
  // mechanisms with extreme values make complement-symmetry checks at
  // 1e-12 meaningless rather than wrong.
  constexpr double kConstantShare = 0.15;

  Mechanism mech;
  for (const VertexId& id : graph.ids()) {
    double value = kConstantShare * 0.5;
    for (std::size_t c = 0; c < parts.size(); ++c) {
      value += (1.0 - kConstantShare) * weights[c] / total *
               parts[c].at(id).value();
    }
    mech.values.emplace(id, Probability(value));
  }
  return mech;
}

struct RandomInstance {
  DatasetGraph graph;
  QueryAssignment query;
  PartialMechanism partial;
};

// Compatible instance: seeds are the restriction of a random private
// mechanism to the boundary plus a few extra vertices. max_free, when
// nonnegative, caps the number of unseeded vertices by seeding more.
inline RandomInstance random_compatible_instance(std::mt19937& rng, int min_v,
                                                 int max_v, int max_edges,
                                                 double eps_lo, double eps_hi,
                                                 int max_free = -1) {
  DatasetGraph graph =
      random_connected_graph(rng, min_v, max_v, max_edges, eps_lo, eps_hi);
  QueryAssignment query = random_query(rng, graph);
  const Mechanism mech = random_dp_mechanism(rng, graph);

  VertexSet seeded = boundary_set(graph, query);
  std::uniform_int_distribution<std::size_t> pick(0,
                                                  graph.vertex_count() - 1);
  const int extras = std::uniform_int_distribution<int>(0, 2)(rng);
  for (int e = 0; e < extras; ++e) seeded.insert(graph.id_of(pick(rng)));
  if (seeded.empty()) seeded.insert(graph.id_of(pick(rng)));
  if (max_free >= 0) {
    for (const VertexId& id : graph.ids()) {
      if (static_cast<int>(graph.vertex_count() - seeded.size()) <= max_free) {
        break;
      }
      seeded.insert(id);
    }
  }

  PartialMechanism partial;
  for (const VertexId& id : seeded) {
    partial.values.emplace(id, mech.values.at(id));
  }
  return RandomInstance{std::move(graph), std::move(query),
                        std::move(partial)};
}

// Smallest bound any other seed induces on `target`, by per-seed settling.
inline double tightest_pairwise_bound(const DatasetGraph& graph,
                                      const PartialMechanism& partial,
                                      const VertexId& target) {
  double best = 2.0;
  for (const auto& [seed, value] : partial.values) {
    if (seed == target) continue;
    best = std::min(
        best,
        strongest_bounds_from(graph, seed, value).bounds.at(target).value());
  }
  return best;
}

struct IndexedEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double grow = 1.0;  // e^epsilon
};

inline std::vector<IndexedEdge> indexed_edges(const DatasetGraph& graph) {
  std::vector<IndexedEdge> edges;
  edges.reserve(graph.edges().size());
  for (const EdgeRecord& edge : graph.edges()) {
    edges.push_back({graph.index_of(edge.u), graph.index_of(edge.v),
                     std::exp(edge.epsilon)});
  }
  return edges;
}

// True when every edge inequality holds with additive slack tol; stops at
// the first violation.
inline bool edges_ok(const std::vector<IndexedEdge>& edges,
                     const std::vector<double>& value, double tol) {
  for (const IndexedEdge& edge : edges) {
    const double pu = value[edge.u];
    const double pv = value[edge.v];
    if (pu > edge.grow * pv + tol) return false;
    if (pv > edge.grow * pu + tol) return false;
    if (1.0 - pu > edge.grow * (1.0 - pv) + tol) return false;
    if (1.0 - pv > edge.grow * (1.0 - pu) + tol) return false;
  }
  return true;
}

// Exhaustive grid search over the free vertices at the given resolution;
// returns a private completion if any grid point yields one.
inline std::optional<std::vector<double>> grid_search_completion(
    const DatasetGraph& graph, const PartialMechanism& partial, int steps,
    double tol) {
  const std::size_t n = graph.vertex_count();
  const std::vector<IndexedEdge> edges = indexed_edges(graph);
  std::vector<double> value(n, 0.0);
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < n; ++i) {
    const auto it = partial.values.find(graph.id_of(i));
    if (it != partial.values.end()) {
      value[i] = it->second.value();
    } else {
      free.push_back(i);
    }
  }

  std::vector<int> knob(free.size(), 0);
  while (true) {
    for (std::size_t k = 0; k < free.size(); ++k) {
      value[free[k]] = static_cast<double>(knob[k]) / steps;
    }
    if (edges_ok(edges, value, tol)) return value;
    std::size_t k = 0;
    for (; k < knob.size(); ++k) {
      if (++knob[k] <= steps) break;
      knob[k] = 0;
    }
    if (k == knob.size()) return std::nullopt;
  }
}

}  // namespace hetdp::testing

#endif  // HETDP_TESTS_TEST_UTIL_HPP_
