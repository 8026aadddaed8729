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

#ifndef HETDP_VERIFY_HPP_
#define HETDP_VERIFY_HPP_

#include <cstddef>
#include <optional>
#include <string>

#include "hetdp/edge_bounds.hpp"
#include "hetdp/extension.hpp"
#include "hetdp/graph.hpp"
#include "hetdp/oracle.hpp"
#include "hetdp/propagation.hpp"

namespace hetdp {

inline constexpr double kDefaultProbeDelta = 1e-6;

// Checks that `mech` is the optimal extension of `partial`: it must agree
// with the fixed point reference, and nudging any free vertex toward higher
// utility by `delta` must break the strongest induced bound some seed
// places on it. Bounds come from path enumeration when the graph is within
// the enumeration cap, otherwise from the settling algorithm. Returns
// nullopt when optimal, else a description of the first failure.
inline std::optional<std::string> verify_optimal(
    const DatasetGraph& graph, const QueryAssignment& query,
    const PartialMechanism& partial, const Mechanism& mech,
    double delta = kDefaultProbeDelta, double tolerance = kDefaultTolerance,
    std::size_t enumeration_cap = kDefaultEnumerationCap) {
  detail::require_query_matches(graph, query);
  for (const VertexId& id : graph.ids()) {
    if (!mech.values.contains(id)) {
      return "mechanism has no value for vertex '" + id + "'";
    }
  }
  for (const auto& [id, value] : partial.values) {
    if (mech.values.at(id) != value) {
      return "mechanism does not extend the partial mechanism at vertex '" +
             id + "'";
    }
  }

  const FixedPointRun reference =
      fixed_point_extension(graph, query, partial, tolerance);
  const auto* extension = std::get_if<Extension>(&reference.result);
  if (extension == nullptr) {
    return "fixed point reference reports that no extension exists";
  }
  for (const VertexId& id : graph.ids()) {
    const double got = mech.values.at(id).value();
    const double want = extension->mechanism.values.at(id).value();
    if (std::abs(got - want) > 1e-9) {
      return "vertex '" + id + "' deviates from the fixed point reference: " +
             std::to_string(got) + " vs " + std::to_string(want);
    }
  }

  const bool enumerable = graph.vertex_count() <= enumeration_cap;
  // Strongest bound any seed induces on `target`, with each seed's value
  // passed through `seed_value`.
  const auto tightest_bound = [&](const VertexId& target,
                                  auto&& seed_value) -> double {
    double best = 2.0;
    for (const auto& [seed, value] : partial.values) {
      if (seed == target) continue;
      const Probability alpha = seed_value(value);
      const double bound =
          enumerable
              ? enumerate_strongest_bound(graph, seed, target, alpha,
                                          enumeration_cap)
                    .bound.value()
              : strongest_bounds_from(graph, seed, alpha).bounds.at(target)
                    .value();
      best = std::min(best, bound);
    }
    return best;
  };

  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    const VertexId& id = graph.id_of(v);
    if (partial.values.contains(id)) continue;
    const double current = mech.values.at(id).value();
    if (query.label(v) == 1) {
      const double probed = current + delta;
      const double bound =
          tightest_bound(id, [](Probability p) { return p; });
      if (probed <= bound + tolerance) {
        return "raising vertex '" + id + "' to " + std::to_string(probed) +
               " stays within the induced bound " + std::to_string(bound) +
               "; the mechanism is not optimal there";
      }
    } else {
      const double probed = (1.0 - current) + delta;
      const double bound = tightest_bound(
          id, [](Probability p) { return Probability(1.0 - p.value()); });
      if (probed <= bound + tolerance) {
        return "lowering vertex '" + id + "' by " + std::to_string(delta) +
               " stays within the induced complement bound " +
               std::to_string(bound) + "; the mechanism is not optimal there";
      }
    }
  }
  return std::nullopt;
}

}  // namespace hetdp

#endif  // HETDP_VERIFY_HPP_
