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
// Brute-force references. These deliberately share nothing with the
// settling schedule in propagation.hpp beyond the scalar bound maps, so
// that agreement between the two is meaningful evidence of correctness.
// Desk-scale only: path enumeration is exponential and capped.

#ifndef HETDP_ORACLE_HPP_
#define HETDP_ORACLE_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "hetdp/edge_bounds.hpp"
#include "hetdp/error.hpp"
#include "hetdp/extension.hpp"
#include "hetdp/graph.hpp"

namespace hetdp {

inline constexpr std::size_t kDefaultEnumerationCap = 12;

// A simple path realizing the strongest induced bound.
struct PathWitness {
  std::vector<VertexId> path;
  Probability bound;
};

// Exhaustive minimization over every simple (u, v)-path of the composed
// upper bound. Ties go to the lexicographically smallest vertex sequence.
// Prunes branches whose running bound already reached the incumbent, which
// is sound because composing more edges never lowers the bound.
inline PathWitness enumerate_strongest_bound(
    const DatasetGraph& graph, const VertexId& u, const VertexId& v,
    Probability alpha, std::size_t cap = kDefaultEnumerationCap) {
  if (graph.vertex_count() > cap) {
    throw Error(ErrorKind::GraphTooLarge,
                std::to_string(graph.vertex_count()) +
                    " vertices exceeds enumeration cap " +
                    std::to_string(cap));
  }
  const std::size_t start = graph.index_of(u);
  const std::size_t goal = graph.index_of(v);
  if (start == goal) {
    throw Error(ErrorKind::UnknownVertex,
                "enumeration requires distinct endpoints, got '" + u + "'");
  }

  std::vector<bool> on_path(graph.vertex_count(), false);
  std::vector<std::size_t> current;
  std::vector<std::size_t> best_path;
  double best_bound = 2.0;  // above any probability

  auto descend = [&](auto&& self, std::size_t at, double bound) -> void {
    if (bound >= best_bound) return;
    if (at == goal) {
      best_bound = bound;
      best_path = current;
      return;
    }
    for (const auto& nbr : graph.neighbors(at)) {
      if (on_path[nbr.to]) continue;
      const double via =
          edge_upper_bound(Probability(bound), nbr.epsilon).value();
      on_path[nbr.to] = true;
      current.push_back(nbr.to);
      self(self, nbr.to, via);
      current.pop_back();
      on_path[nbr.to] = false;
    }
  };
  on_path[start] = true;
  current.push_back(start);
  descend(descend, start, alpha.value());

  PathWitness witness;
  witness.bound = Probability(best_bound);
  witness.path.reserve(best_path.size());
  for (std::size_t index : best_path) {
    witness.path.push_back(graph.id_of(index));
  }
  return witness;
}

struct FixedPointRun {
  ExtensionResult result;
  int sweeps = 0;
};

// Monotone relaxation reference for extend_mechanism. Free vertices start
// at the utility-ideal value for their label (1 or 0) and are pushed toward
// feasibility one edge at a time: down through upper bounds for label 1, up
// through lower bounds for label 2. Values move monotonically and settle
// hop level by hop level, so the loop converges within |V| sweeps; the
// final assignment is then verified edge by edge, and any residual
// violation means the seeds themselves were inconsistent.
inline FixedPointRun fixed_point_extension(
    const DatasetGraph& graph, const QueryAssignment& query,
    const PartialMechanism& partial, double tolerance = kDefaultTolerance) {
  detail::require_query_matches(graph, query);
  detail::require_seeds_in_graph(graph, partial);
  for (const VertexId& id : boundary_set(graph, query)) {
    if (!partial.values.contains(id)) {
      throw Error(ErrorKind::BoundaryNotCovered,
                  "boundary vertex '" + id + "' has no seed value");
    }
  }

  const std::size_t n = graph.vertex_count();
  std::vector<bool> seeded(n, false);
  std::vector<double> value(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto it = partial.values.find(graph.id_of(i));
    if (it != partial.values.end()) {
      seeded[i] = true;
      value[i] = it->second.value();
    } else {
      value[i] = query.label(i) == 1 ? 1.0 : 0.0;
    }
  }

  constexpr double kConvergence = 1e-12;
  const int max_sweeps = static_cast<int>(n) + 2;
  int sweeps = 0;
  for (;; ++sweeps) {
    if (sweeps >= max_sweeps) {
      throw Error(ErrorKind::NonConvergence,
                  "relaxation did not settle after " +
                      std::to_string(sweeps) + " sweeps");
    }
    double largest_change = 0.0;
    for (const EdgeRecord& edge : graph.edges()) {
      const std::size_t a = graph.index_of(edge.u);
      const std::size_t b = graph.index_of(edge.v);
      const auto relax = [&](std::size_t from, std::size_t to) {
        if (seeded[to]) return;
        const double old = value[to];
        if (query.label(to) == 1) {
          value[to] = std::min(
              old, edge_upper_bound(Probability(value[from]), edge.epsilon)
                       .value());
        } else {
          value[to] = std::max(
              old, edge_lower_bound(Probability(value[from]), edge.epsilon)
                       .value());
        }
        largest_change = std::max(largest_change, std::abs(value[to] - old));
      };
      relax(a, b);
      relax(b, a);
    }
    if (largest_change <= kConvergence) {
      ++sweeps;
      break;
    }
  }

  Mechanism mech;
  for (std::size_t i = 0; i < n; ++i) {
    mech.values.emplace(graph.id_of(i), Probability(value[i]));
  }
  ViolationReport report = verify_dp(graph, mech, tolerance);
  if (!report.ok()) {
    return FixedPointRun{NoExtension{std::nullopt, std::move(report)},
                         sweeps};
  }
  return FixedPointRun{Extension{std::move(mech), {}}, sweeps};
}

}  // namespace hetdp

#endif  // HETDP_ORACLE_HPP_
