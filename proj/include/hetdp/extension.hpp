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
// Extending a partial mechanism. A mechanism seeded on a vertex set S
// covering the boundary either violates some strongest induced bound
// between two seeds, in which case no private extension exists at all, or
// extends uniquely and optimally: every free vertex receives the tightest
// bound any seed imposes on it (for query value 1), or the complement of
// the tightest bound on its complement (for query value 2).

#ifndef HETDP_EXTENSION_HPP_
#define HETDP_EXTENSION_HPP_

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hetdp/edge_bounds.hpp"
#include "hetdp/error.hpp"
#include "hetdp/graph.hpp"
#include "hetdp/propagation.hpp"

namespace hetdp {

// A mechanism defined only on a subset of vertices; the seed to extend.
struct PartialMechanism {
  std::map<VertexId, Probability> values;

  VertexSet domain() const {
    VertexSet keys;
    for (const auto& [id, value] : values) keys.insert(id);
    return keys;
  }
};

// A total mechanism: Pr[M(v) = 1] for every vertex.
struct Mechanism {
  std::map<VertexId, Probability> values;
};

// One violated per-edge inequality. The tags follow the file-format
// numbering documented for `check` output: Eq3/Eq5 are the two upper bound
// conditions p(u) <= e^eps p(v) and p(v) <= e^eps p(u); Eq4/Eq6 the
// matching conditions on the complements.
enum class DpInequality { Eq3, Eq4, Eq5, Eq6 };

inline std::string_view to_string(DpInequality inequality) {
  switch (inequality) {
    case DpInequality::Eq3: return "Eq3";
    case DpInequality::Eq4: return "Eq4";
    case DpInequality::Eq5: return "Eq5";
    case DpInequality::Eq6: return "Eq6";
  }
  return "Eq?";
}

struct DpViolation {
  VertexId u;
  VertexId v;
  DpInequality inequality = DpInequality::Eq3;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs; negative beyond tolerance when listed
};

struct ViolationReport {
  std::vector<DpViolation> violations;

  bool ok() const { return violations.empty(); }
};

// Two seeds whose values cannot coexist: actual = p(target) exceeds the
// strongest bound the source seed induces on the target.
struct IncompatibilityWitness {
  VertexId source;
  VertexId target;
  Probability bound;
  Probability actual;
};

struct NoExtension {
  // Set when the failure was found as a seed pair (extend_mechanism).
  std::optional<IncompatibilityWitness> witness;
  // Set when the failure surfaced as edge-level violations (the fixed
  // point oracle).
  ViolationReport violations;
};

// A successful extension together with, for every vertex, the seed whose
// induced bound determined its value (seeds map to themselves).
struct Extension {
  Mechanism mechanism;
  std::map<VertexId, VertexId> origin;
};

using ExtensionResult = std::variant<Extension, NoExtension>;

// Checks the four per-edge inequalities on every edge, each with additive
// slack `tolerance`, and reports every violated one in canonical edge
// order.
inline ViolationReport verify_dp(const DatasetGraph& graph,
                                 const Mechanism& mech,
                                 double tolerance = kDefaultTolerance) {
  ViolationReport report;
  for (const EdgeRecord& edge : graph.edges()) {
    const auto pu_it = mech.values.find(edge.u);
    const auto pv_it = mech.values.find(edge.v);
    if (pu_it == mech.values.end() || pv_it == mech.values.end()) {
      throw Error(ErrorKind::IncompleteMechanism,
                  "no mechanism value for edge (" + edge.u + ", " + edge.v +
                      ")");
    }
    const double pu = pu_it->second.value();
    const double pv = pv_it->second.value();
    const double grow = std::exp(edge.epsilon);
    const auto check = [&](DpInequality tag, double lhs, double rhs) {
      const double slack = rhs - lhs;
      if (slack < -tolerance) {
        report.violations.push_back({edge.u, edge.v, tag, lhs, rhs, slack});
      }
    };
    check(DpInequality::Eq3, pu, grow * pv);
    check(DpInequality::Eq4, 1.0 - pu, grow * (1.0 - pv));
    check(DpInequality::Eq5, pv, grow * pu);
    check(DpInequality::Eq6, 1.0 - pv, grow * (1.0 - pu));
  }
  return report;
}

namespace detail {

inline void require_seeds_in_graph(const DatasetGraph& graph,
                                   const PartialMechanism& partial) {
  if (partial.values.empty()) {
    throw Error(ErrorKind::EmptySeeds, "partial mechanism is empty");
  }
  for (const auto& [id, value] : partial.values) {
    graph.index_of(id);
  }
}

}  // namespace detail

// Compatibility of the seeds: nullopt when, for every ordered seed pair
// (u, v), p(v) stays within the strongest bound u induces on v (plus
// tolerance); otherwise the first violating pair in canonical order.
//
// A single multi-seed pass decides the verdict: p(v) exceeds some seed's
// bound exactly when it exceeds the minimum over all seeds. Only on
// failure are per-seed passes run to locate the canonically first pair.
inline std::optional<IncompatibilityWitness> is_compatible(
    const DatasetGraph& graph, const PartialMechanism& partial,
    double tolerance = kDefaultTolerance) {
  detail::require_seeds_in_graph(graph, partial);
  const MultiSourceBounds merged =
      strongest_bounds_multi(graph, partial.values);
  bool failed = false;
  for (const auto& [id, value] : partial.values) {
    if (value.value() > merged.bounds.at(id).value() + tolerance) {
      failed = true;
      break;
    }
  }
  if (!failed) return std::nullopt;

  for (const auto& [source, source_value] : partial.values) {
    const BoundMap from_source =
        strongest_bounds_from(graph, source, source_value);
    for (const auto& [target, target_value] : partial.values) {
      if (target == source) continue;
      const Probability bound = from_source.bounds.at(target);
      if (target_value.value() > bound.value() + tolerance) {
        return IncompatibilityWitness{source, target, bound, target_value};
      }
    }
  }
  throw Error(ErrorKind::NonConvergence,
              "compatibility fast path and pair scan disagree");
}

// Extends a partial mechanism covering the boundary to the whole graph, or
// reports that no private extension exists. Free vertices with query value
// 1 get the tightest induced bound over all seeds; free vertices with query
// value 2 get the complement of the tightest bound induced by the
// complemented seeds. Two multi-seed passes replace the per-seed schedule.
inline ExtensionResult extend_mechanism(const DatasetGraph& graph,
                                        const QueryAssignment& query,
                                        const PartialMechanism& partial,
                                        double tolerance = kDefaultTolerance) {
  detail::require_query_matches(graph, query);
  detail::require_seeds_in_graph(graph, partial);
  for (const VertexId& id : boundary_set(graph, query)) {
    if (!partial.values.contains(id)) {
      throw Error(ErrorKind::BoundaryNotCovered,
                  "boundary vertex '" + id + "' has no seed value");
    }
  }

  if (auto witness = is_compatible(graph, partial, tolerance)) {
    return NoExtension{*witness, {}};
  }

  Extension extension;
  for (const auto& [id, value] : partial.values) {
    extension.mechanism.values.emplace(id, value);
    extension.origin.emplace(id, id);
  }

  bool need_direct = false;
  bool need_complement = false;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    if (partial.values.contains(graph.id_of(v))) continue;
    (query.label(v) == 1 ? need_direct : need_complement) = true;
  }

  std::optional<MultiSourceBounds> direct;
  if (need_direct) {
    direct = strongest_bounds_multi(graph, partial.values);
  }
  std::optional<MultiSourceBounds> complement;
  if (need_complement) {
    std::map<VertexId, Probability> flipped;
    for (const auto& [id, value] : partial.values) {
      flipped.emplace(id, Probability(1.0 - value.value()));
    }
    complement = strongest_bounds_multi(graph, flipped);
  }

  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    const VertexId& id = graph.id_of(v);
    if (partial.values.contains(id)) continue;
    if (query.label(v) == 1) {
      extension.mechanism.values.emplace(id, direct->bounds.at(id));
      extension.origin.emplace(id, direct->origin.at(id));
    } else {
      extension.mechanism.values.emplace(
          id, Probability(1.0 - complement->bounds.at(id).value()));
      extension.origin.emplace(id, complement->origin.at(id));
    }
  }
  return extension;
}

}  // namespace hetdp

#endif  // HETDP_EXTENSION_HPP_
