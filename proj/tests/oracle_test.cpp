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

#include "hetdp/oracle.hpp"

#include <cmath>
#include <random>
#include <variant>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace hetdp {
namespace {

using testing::make_path_graph;
using testing::make_query;

const double kLn2 = std::log(2.0);

DatasetGraph triangle() {
  return build_graph({"u", "v", "w"}, {{"u", "v", kLn2},
                                       {"v", "w", kLn2},
                                       {"u", "w", std::log(8.0)}});
}

TEST(Enumerate, TriangleDetour) {
  const PathWitness witness =
      enumerate_strongest_bound(triangle(), "u", "w", Probability(0.1));
  EXPECT_EQ(witness.path, (std::vector<VertexId>{"u", "v", "w"}));
  EXPECT_NEAR(witness.bound.value(), 0.4, 1e-12);
}

TEST(Enumerate, SingleEdge) {
  const DatasetGraph graph = build_graph({"u", "v"}, {{"u", "v", 1.3}});
  const PathWitness witness =
      enumerate_strongest_bound(graph, "u", "v", Probability(0.2));
  EXPECT_EQ(witness.path, (std::vector<VertexId>{"u", "v"}));
  EXPECT_EQ(witness.bound.value(),
            edge_upper_bound(Probability(0.2), 1.3).value());
}

TEST(Enumerate, FourEdgePath) {
  const DatasetGraph graph = make_path_graph(EpsilonSeq(4, kLn2));
  const PathWitness witness = enumerate_strongest_bound(
      graph, graph.id_of(0), graph.id_of(4), Probability(0.1));
  EXPECT_NEAR(witness.bound.value(), 0.85, 1e-12);
}

TEST(Enumerate, TiesPickTheLexSmallestPath) {
  // With alpha = 1 every path gives bound 1; [u, v, w] precedes [u, w].
  const PathWitness witness =
      enumerate_strongest_bound(triangle(), "u", "w", Probability(1.0));
  EXPECT_EQ(witness.bound.value(), 1.0);
  EXPECT_EQ(witness.path, (std::vector<VertexId>{"u", "v", "w"}));
}

TEST(Enumerate, CapAndEndpointValidation) {
  std::mt19937 rng(2);
  const DatasetGraph graph =
      testing::random_connected_graph(rng, 13, 13, 20, 0.1, 1.0);
  EXPECT_THROW(enumerate_strongest_bound(graph, graph.id_of(0),
                                         graph.id_of(1), Probability(0.5)),
               Error);
  EXPECT_NO_THROW(enumerate_strongest_bound(
      graph, graph.id_of(0), graph.id_of(1), Probability(0.5), 13));
  EXPECT_THROW(
      enumerate_strongest_bound(triangle(), "u", "u", Probability(0.5)),
      Error);
}

TEST(FixedPoint, PathWithAllOnesQuery) {
  const DatasetGraph graph = make_path_graph(EpsilonSeq(3, kLn2));
  const FixedPointRun run =
      fixed_point_extension(graph, testing::constant_query(graph, 1),
                            {{{"v00", Probability(0.1)}}});
  const auto& extension = std::get<Extension>(run.result);
  const std::vector<double> want = {0.1, 0.2, 0.4, 0.7};
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_NEAR(extension.mechanism.values.at(graph.id_of(i)).value(),
                want[i], 1e-12);
  }
  EXPECT_LE(run.sweeps, static_cast<int>(graph.vertex_count()));
}

TEST(FixedPoint, ComplementLabelsWorkedExample) {
  const DatasetGraph graph = make_path_graph({kLn2, kLn2});
  const QueryAssignment query = make_query(graph, {2, 2, 1});
  const FixedPointRun run = fixed_point_extension(
      graph, query,
      {{{"v01", Probability(0.4)}, {"v02", Probability(0.7)}}});
  const auto& extension = std::get<Extension>(run.result);
  EXPECT_NEAR(extension.mechanism.values.at("v00").value(), 0.2, 1e-9);
}

TEST(FixedPoint, FullySeededIncompatibleEdge) {
  const DatasetGraph graph = build_graph({"u", "v"}, {{"u", "v", kLn2}});
  const FixedPointRun run = fixed_point_extension(
      graph, testing::constant_query(graph, 1),
      {{{"u", Probability(0.1)}, {"v", Probability(0.5)}}});
  const auto& failure = std::get<NoExtension>(run.result);
  EXPECT_FALSE(failure.violations.ok());
}

TEST(FixedPoint, BoundaryMustBeCovered) {
  const DatasetGraph graph = make_path_graph({kLn2});
  const QueryAssignment query = make_query(graph, {1, 2});
  EXPECT_THROW(
      fixed_point_extension(graph, query, {{{"v00", Probability(0.5)}}}),
      Error);
}

TEST(FixedPoint, AgreesWithExtendMechanism) {
  std::mt19937 rng(20260809);
  for (int trial = 0; trial < 80; ++trial) {
    testing::RandomInstance instance =
        testing::random_compatible_instance(rng, 2, 25, 50, 0.05, 2.5);

    // Half the trials are made infeasible by bumping one seed.
    const bool bump = trial % 2 == 1;
    if (bump) {
      const VertexId target = instance.partial.values.begin()->first;
      const double tightest = testing::tightest_pairwise_bound(
          instance.graph, instance.partial, target);
      if (tightest > 0.9) continue;
      instance.partial.values.at(target) = Probability(tightest + 0.05);
    }

    const ExtensionResult fast = extend_mechanism(
        instance.graph, instance.query, instance.partial);
    const FixedPointRun slow = fixed_point_extension(
        instance.graph, instance.query, instance.partial);
    ASSERT_EQ(fast.index(), slow.result.index()) << "trial " << trial;
    EXPECT_LE(slow.sweeps,
              static_cast<int>(instance.graph.vertex_count()));
    if (std::holds_alternative<Extension>(fast)) {
      EXPECT_FALSE(bump);
      const auto& a = std::get<Extension>(fast).mechanism.values;
      const auto& b = std::get<Extension>(slow.result).mechanism.values;
      for (const auto& [id, value] : a) {
        EXPECT_NEAR(value.value(), b.at(id).value(), 1e-9) << id;
      }
    } else {
      EXPECT_TRUE(bump);
    }
  }
}

}  // namespace
}  // namespace hetdp
