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
// Strongest induced bounds. A seed value alpha at vertex u upper-bounds the
// mechanism value at every other vertex through each connecting path; the
// strongest (smallest) of those bounds over all paths is what any valid
// mechanism must respect and what the optimal extension attains. Because
// edge_upper_bound never decreases a value, settling vertices greedily in
// order of their best known bound is sound, exactly as in shortest paths
// with nonnegative weights. Three schedules are provided: a priority-queue
// one, a literal linear-scan one kept as the reference, and a multi-seed
// one that minimizes over several seeds in a single pass.

#ifndef HETDP_PROPAGATION_HPP_
#define HETDP_PROPAGATION_HPP_

#include <cassert>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <utility>
#include <vector>

#include "hetdp/edge_bounds.hpp"
#include "hetdp/error.hpp"
#include "hetdp/graph.hpp"

namespace hetdp {

// Strongest induced bounds from a single seed. predecessor holds the
// penultimate vertex of a path realizing each bound (the seed maps to
// itself); settle_order records the order vertices were finalized in.
struct BoundMap {
  VertexId source;
  Probability alpha;
  std::map<VertexId, Probability> bounds;
  std::map<VertexId, VertexId> predecessor;
  std::vector<VertexId> settle_order;
};

// Strongest induced bounds over a set of seeds, with the seed achieving
// each vertex's bound.
struct MultiSourceBounds {
  std::map<VertexId, Probability> bounds;
  std::map<VertexId, VertexId> origin;
};

namespace detail {

constexpr double kUnreached = std::numeric_limits<double>::infinity();

// Min-heap entry ordering: smaller bound first, then smaller vertex index,
// which is the canonical identifier order.
using HeapEntry = std::pair<double, std::size_t>;
using MinHeap =
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>>;

struct IndexedBounds {
  std::vector<double> bound;
  std::vector<std::size_t> predecessor;
  std::vector<std::size_t> origin;
  std::vector<std::size_t> settle_order;
};

// Greedy settling from one or more seeds. Stale heap entries are skipped
// instead of decrease-keyed. At settle time the predecessor (and origin) is
// recomputed over the settled neighbors so that witnesses do not depend on
// relaxation order: among neighbors reproducing the settled bound exactly,
// the smallest (origin, predecessor) pair wins.
inline IndexedBounds settle_from_seeds(
    const DatasetGraph& graph, const std::vector<std::size_t>& seed_vertices,
    const std::vector<double>& seed_values) {
  const std::size_t n = graph.vertex_count();
  IndexedBounds out;
  out.bound.assign(n, kUnreached);
  out.predecessor.assign(n, n);
  out.origin.assign(n, n);
  out.settle_order.reserve(n);
  std::vector<bool> settled(n, false);
  std::vector<double> tentative(n, kUnreached);
  std::vector<bool> is_seed(n, false);
  std::vector<double> seed_value(n, kUnreached);

  MinHeap heap;
  for (std::size_t i = 0; i < seed_vertices.size(); ++i) {
    const std::size_t v = seed_vertices[i];
    is_seed[v] = true;
    if (seed_values[i] < seed_value[v]) seed_value[v] = seed_values[i];
    if (seed_values[i] < tentative[v]) {
      tentative[v] = seed_values[i];
      heap.emplace(seed_values[i], v);
    }
  }

  while (!heap.empty()) {
    const auto [bound, v] = heap.top();
    heap.pop();
    if (settled[v]) continue;
    settled[v] = true;
    out.bound[v] = bound;
    out.settle_order.push_back(v);

    std::size_t best_origin = n;
    std::size_t best_pred = n;
    if (is_seed[v] && seed_value[v] == bound) {
      best_origin = v;
      best_pred = v;
    }
    for (const auto& nbr : graph.neighbors(v)) {
      if (!settled[nbr.to]) continue;
      const double via =
          edge_upper_bound(Probability(out.bound[nbr.to]), nbr.epsilon)
              .value();
      if (via == bound) {
        const std::size_t o = out.origin[nbr.to];
        if (o < best_origin || (o == best_origin && nbr.to < best_pred)) {
          best_origin = o;
          best_pred = nbr.to;
        }
      }
    }
    assert(best_pred < n || (is_seed[v] && seed_value[v] == bound));
    out.origin[v] = best_origin;
    out.predecessor[v] = best_pred;

    for (const auto& nbr : graph.neighbors(v)) {
      if (settled[nbr.to]) continue;
      const double via =
          edge_upper_bound(Probability(bound), nbr.epsilon).value();
      if (via < tentative[nbr.to]) {
        tentative[nbr.to] = via;
        heap.emplace(via, nbr.to);
      }
    }
  }
  return out;
}

inline BoundMap to_bound_map(const DatasetGraph& graph,
                             const VertexId& source, Probability alpha,
                             const IndexedBounds& indexed) {
  BoundMap map;
  map.source = source;
  map.alpha = alpha;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    map.bounds.emplace(graph.id_of(v), Probability(indexed.bound[v]));
    map.predecessor.emplace(graph.id_of(v),
                            graph.id_of(indexed.predecessor[v]));
  }
  map.settle_order.reserve(indexed.settle_order.size());
  for (std::size_t v : indexed.settle_order) {
    map.settle_order.push_back(graph.id_of(v));
  }
  return map;
}

}  // namespace detail

// Strongest induced bound from a single seed to every vertex, priority
// queue schedule.
inline BoundMap strongest_bounds_from(const DatasetGraph& graph,
                                      const VertexId& source,
                                      Probability alpha) {
  const std::size_t s = graph.index_of(source);
  const auto indexed =
      detail::settle_from_seeds(graph, {s}, {alpha.value()});
  return detail::to_bound_map(graph, source, alpha, indexed);
}

// Same contract as strongest_bounds_from, with the literal schedule: every
// iteration rescans the whole frontier, computes each frontier vertex's
// best bound over its settled neighbors, and settles the minimizer
// (smallest bound, then smallest identifier). Quadratic, kept as the
// reference the fast variant is tested against.
inline BoundMap strongest_bounds_from_naive(const DatasetGraph& graph,
                                            const VertexId& source,
                                            Probability alpha) {
  const std::size_t n = graph.vertex_count();
  const std::size_t s = graph.index_of(source);
  detail::IndexedBounds out;
  out.bound.assign(n, detail::kUnreached);
  out.predecessor.assign(n, n);
  out.origin.assign(n, s);
  std::vector<bool> settled(n, false);

  out.bound[s] = alpha.value();
  out.predecessor[s] = s;
  settled[s] = true;
  out.settle_order.push_back(s);

  for (std::size_t settled_count = 1; settled_count < n; ++settled_count) {
    std::size_t best_vertex = n;
    double best_bound = detail::kUnreached;
    std::size_t best_pred = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (settled[v]) continue;
      // alpha*(v): best bound over settled neighbors, if any.
      double candidate = detail::kUnreached;
      std::size_t pred = n;
      for (const auto& nbr : graph.neighbors(v)) {
        if (!settled[nbr.to]) continue;
        const double via =
            edge_upper_bound(Probability(out.bound[nbr.to]), nbr.epsilon)
                .value();
        if (via < candidate) {
          candidate = via;
          pred = nbr.to;
        }
      }
      if (candidate < best_bound) {
        best_bound = candidate;
        best_vertex = v;
        best_pred = pred;
      }
    }
    assert(best_vertex < n);
    settled[best_vertex] = true;
    out.bound[best_vertex] = best_bound;
    out.predecessor[best_vertex] = best_pred;
    out.settle_order.push_back(best_vertex);
  }
  return detail::to_bound_map(graph, source, alpha, out);
}

// Vertex-wise minimum of the single-seed bounds over a nonempty seed map,
// computed in one settling pass. origin[v] is a seed achieving the bound;
// ties go to the smallest origin identifier, then the smallest predecessor.
inline MultiSourceBounds strongest_bounds_multi(
    const DatasetGraph& graph, const std::map<VertexId, Probability>& seeds) {
  if (seeds.empty()) {
    throw Error(ErrorKind::EmptySeeds, "seed map is empty");
  }
  std::vector<std::size_t> seed_vertices;
  std::vector<double> seed_values;
  seed_vertices.reserve(seeds.size());
  for (const auto& [id, value] : seeds) {
    seed_vertices.push_back(graph.index_of(id));
    seed_values.push_back(value.value());
  }
  const auto indexed =
      detail::settle_from_seeds(graph, seed_vertices, seed_values);
  MultiSourceBounds result;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    result.bounds.emplace(graph.id_of(v), Probability(indexed.bound[v]));
    result.origin.emplace(graph.id_of(v), graph.id_of(indexed.origin[v]));
  }
  return result;
}

}  // namespace hetdp

#endif  // HETDP_PROPAGATION_HPP_
