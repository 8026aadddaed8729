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

#include "hetdp/graph.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "hetdp/io.hpp"
#include "test_util.hpp"

namespace hetdp {
namespace {

using testing::make_path_graph;
using testing::make_query;
using testing::random_connected_graph;
using testing::random_query;

ErrorKind kind_of(const std::function<void()>& action) {
  try {
    action();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::ParseError;
}

TEST(BuildGraph, MinimalConnectedGraph) {
  const DatasetGraph graph = build_graph({"a", "b"}, {{"a", "b", 0.693}});
  EXPECT_EQ(graph.vertex_count(), 2u);
  ASSERT_EQ(graph.edges().size(), 1u);
  EXPECT_EQ(graph.edges()[0].u, "a");
  EXPECT_EQ(graph.edges()[0].v, "b");
  EXPECT_EQ(graph.edges()[0].epsilon, 0.693);
}

TEST(BuildGraph, NamesOffendingElement) {
  EXPECT_EQ(kind_of([] {
              build_graph({"a", "b", "c"}, {{"a", "b", 0.5}});
            }),
            ErrorKind::Disconnected);
  try {
    build_graph({"a", "b", "c"}, {{"a", "b", 0.5}});
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("'c'"), std::string::npos);
  }

  EXPECT_EQ(kind_of([] { build_graph({"a"}, {{"a", "a", 0.1}}); }),
            ErrorKind::SelfLoop);
  EXPECT_EQ(kind_of([] { build_graph({"a", "a"}, {}); }),
            ErrorKind::DuplicateVertex);
  EXPECT_EQ(kind_of([] {
              build_graph({"a", "b"},
                          {{"a", "b", 0.1}, {"b", "a", 0.2}});
            }),
            ErrorKind::DuplicateEdge);
  EXPECT_EQ(kind_of([] { build_graph({"a", "b"}, {{"a", "b", -0.5}}); }),
            ErrorKind::NegativeEpsilon);
  EXPECT_EQ(kind_of([] { build_graph({"a", "b"}, {{"a", "x", 0.5}}); }),
            ErrorKind::UnknownVertex);
  EXPECT_EQ(kind_of([] {
              build_graph({"a", "b"}, {{"a", "b", std::nan("")}});
            }),
            ErrorKind::NegativeEpsilon);
}

TEST(BuildGraph, ZeroEpsilonAccepted) {
  EXPECT_NO_THROW(build_graph({"a", "b"}, {{"a", "b", 0.0}}));
}

TEST(BuildGraph, EmptyGraphAndSingleVertex) {
  EXPECT_EQ(build_graph({}, {}).vertex_count(), 0u);
  EXPECT_EQ(build_graph({"a"}, {}).vertex_count(), 1u);
}

TEST(Neighborhood, PathExamples) {
  const DatasetGraph graph = make_path_graph({0.7, 0.7});  // v00-v01-v02
  EXPECT_EQ(neighborhood(graph, {"v00"}), (VertexSet{"v01"}));
  EXPECT_EQ(neighborhood(graph, {"v00", "v01", "v02"}), VertexSet{});
  EXPECT_EQ(neighborhood(graph, {"v01"}), (VertexSet{"v00", "v02"}));
  EXPECT_THROW(neighborhood(graph, {"zz"}), Error);
}

TEST(Neighborhood, CubeCorner) {
  const Instance cube = instantiate(generate_hypercube(3, 1.0, {}));
  EXPECT_EQ(neighborhood(cube.graph, {"111"}),
            (VertexSet{"211", "121", "112"}));
}

TEST(BoundarySet, PathEndpointsDiffer) {
  const DatasetGraph graph = make_path_graph({0.5});
  const QueryAssignment query = make_query(graph, {1, 2});
  EXPECT_EQ(boundary_set(graph, query), (VertexSet{"v00", "v01"}));
}

TEST(BoundarySet, ConstantQueryHasEmptyBoundary) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const DatasetGraph graph =
        random_connected_graph(rng, 1, 8, 16, 0.0, 2.0);
    EXPECT_EQ(boundary_set(graph, testing::constant_query(graph, 1)),
              VertexSet{});
  }
}

// Independent evaluation of the definition on the 3-cube with the majority
// query: scan the 12 edges directly.
TEST(BoundarySet, MajorityCubeMatchesDirectScan) {
  const Instance cube = instantiate(generate_hypercube(3, 1.0, {}));
  VertexSet expected;
  for (const EdgeRecord& edge : cube.graph.edges()) {
    const int tu = cube.query.label(cube.graph.index_of(edge.u));
    const int tv = cube.query.label(cube.graph.index_of(edge.v));
    if (tu != tv) {
      expected.insert(edge.u);
      expected.insert(edge.v);
    }
  }
  EXPECT_EQ(expected,
            (VertexSet{"211", "121", "112", "221", "212", "122"}));
  EXPECT_EQ(boundary_set(cube.graph, cube.query), expected);
}

TEST(BoundarySet, RandomProperties) {
  std::mt19937 rng(20260809);
  for (int trial = 0; trial < 50; ++trial) {
    const DatasetGraph graph =
        random_connected_graph(rng, 2, 10, 20, 0.0, 2.0);
    const QueryAssignment query = random_query(rng, graph);
    const VertexSet boundary = boundary_set(graph, query);

    // Relabeling 1 <-> 2 leaves the boundary unchanged.
    std::vector<int> flipped;
    for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
      flipped.push_back(3 - query.label(i));
    }
    EXPECT_EQ(boundary_set(graph, make_query(graph, flipped)), boundary);

    // Every boundary vertex really has a differently labeled neighbor.
    for (const VertexId& id : boundary) {
      const std::size_t index = graph.index_of(id);
      bool found = false;
      for (const auto& nbr : graph.neighbors(index)) {
        found = found || query.label(nbr.to) != query.label(index);
      }
      EXPECT_TRUE(found) << id;
    }

    // neighborhood(s) is disjoint from s.
    VertexSet s;
    std::uniform_int_distribution<std::size_t> pick(
        0, graph.vertex_count() - 1);
    for (int i = 0; i < 3; ++i) s.insert(graph.id_of(pick(rng)));
    for (const VertexId& id : neighborhood(graph, s)) {
      EXPECT_FALSE(s.contains(id));
    }
  }
}

TEST(QueryAssignment, Validation) {
  const DatasetGraph graph = make_path_graph({0.5});
  EXPECT_THROW(QueryAssignment::from_labels(graph, {{"v00", 1}}), Error);
  EXPECT_THROW(QueryAssignment::from_labels(graph, {{"v00", 1},
                                                    {"v01", 7}}),
               Error);
  EXPECT_NO_THROW(
      QueryAssignment::from_labels(graph, {{"v00", 1}, {"v01", 2}}));
}

TEST(Serialization, GraphRoundTripsBitExact) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const DatasetGraph graph =
        random_connected_graph(rng, 1, 9, 18, 0.0, 2.5);
    const QueryAssignment query = random_query(rng, graph);
    const std::string text = serialize_instance(graph, query);
    const Instance parsed = parse_instance(text);
    ASSERT_EQ(parsed.graph.ids(), graph.ids());
    ASSERT_EQ(parsed.graph.edges().size(), graph.edges().size());
    for (std::size_t i = 0; i < graph.edges().size(); ++i) {
      EXPECT_EQ(parsed.graph.edges()[i], graph.edges()[i]);
    }
    for (std::size_t i = 0; i < graph.vertex_count(); ++i) {
      EXPECT_EQ(parsed.query.label(i), query.label(i));
    }
    EXPECT_EQ(serialize_instance(parsed.graph, parsed.query), text);
  }
}

}  // namespace
}  // namespace hetdp
