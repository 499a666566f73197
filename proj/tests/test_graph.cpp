#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <unistd.h>
#include <fstream>
#include <numeric>
#include <queue>

#include "layerperc/graph.hpp"
#include "layerperc/serialize.hpp"

using namespace layerperc;

namespace {

std::vector<Edge> sorted_edges(const Graph& g) {
  auto e = g.edges();
  std::sort(e.begin(), e.end());
  return e;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::invalid_argument;
}

/// Lexicographically smallest adjacency string over all vertex relabelings.
std::string canonical_form(const Graph& g) {
  const int k = g.vertex_count();
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::string s(static_cast<std::size_t>(k * k), '0');
    for (auto [u, v] : g.edges()) {
      s[static_cast<std::size_t>(perm[u] * k + perm[v])] = '1';
      s[static_cast<std::size_t>(perm[v] * k + perm[u])] = '1';
    }
    if (best.empty() || s < best) best = s;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST(Builtin, CycleThreeIsTriangle) {
  auto g = make_cycle(3);
  EXPECT_EQ(g.vertex_count(), 3);
  EXPECT_EQ(sorted_edges(g), (std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}}));
}

TEST(Builtin, CycleTwoIsSingleEdge) {
  auto g = make_cycle(2);
  EXPECT_EQ(g.vertex_count(), 2);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}}));
  EXPECT_EQ(g, make_path(2));
}

TEST(Builtin, PathFour) {
  EXPECT_EQ(sorted_edges(make_path(4)), (std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}}));
}

TEST(Builtin, BelowMinimumSizeRejected) {
  EXPECT_THROW(make_cycle(1), Error);
  EXPECT_THROW(make_path(0), Error);
  EXPECT_THROW(make_builtin("cycle:1"), Error);
  EXPECT_THROW(make_builtin("star:4"), Error);
  EXPECT_THROW(make_builtin("cycle:x"), Error);
}

TEST(Builtin, DescriptorAndOrigin) {
  auto g = make_builtin("path:3", 2);
  EXPECT_EQ(g.origin(), 2);
  EXPECT_EQ(g.descriptor(), "path:3");
  EXPECT_EQ(make_builtin("cycle:5"), make_cycle(5));
  EXPECT_EQ(code_of([] { make_builtin("cycle:3", 3); }), ErrorCode::origin_out_of_range);
}

TEST(Builtin, PathOneHasNoEdges) {
  auto g = make_path(1);
  EXPECT_EQ(g.vertex_count(), 1);
  EXPECT_EQ(g.edge_count(), 0);
  EXPECT_EQ(g.bonds_per_layer(), 1);
}

TEST(Product, SquareFromTwoEdges) {
  auto g = cartesian_product(make_path(2), make_path(2));
  EXPECT_EQ(g.vertex_count(), 4);
  EXPECT_EQ(g.edge_count(), 4);
  EXPECT_EQ(canonical_form(g), canonical_form(make_cycle(4)));
}

TEST(Product, SingleVertexIsIdentity) {
  auto g = cartesian_product(make_cycle(3), make_path(1));
  EXPECT_EQ(sorted_edges(g), sorted_edges(make_cycle(3)));
}

TEST(Product, GridEdgeCount) {
  auto g = cartesian_product(make_path(2), make_path(3));
  EXPECT_EQ(g.vertex_count(), 6);
  // Independent count: |V1||E2| + |E1||V2|.
  EXPECT_EQ(g.edge_count(), 2 * 2 + 1 * 3);
}

TEST(Product, OriginIsPairOfOrigins) {
  auto g = cartesian_product(make_path(3, 1), make_cycle(4, 2));
  EXPECT_EQ(g.origin(), 1 * 4 + 2);
}

TEST(Product, CommutativeUpToIsomorphism) {
  const std::vector<std::pair<Graph, Graph>> cases{{make_path(2), make_path(3)},
                                                    {make_cycle(3), make_path(2)},
                                                    {make_path(4), make_path(2)},
                                                    {make_cycle(4), make_path(2)}};
  for (const auto& [a, b] : cases)
    EXPECT_EQ(canonical_form(cartesian_product(a, b)), canonical_form(cartesian_product(b, a)));
}

TEST(Validation, DistinctErrorCodes) {
  EXPECT_EQ(code_of([] { Graph(2, {}, 0); }), ErrorCode::disconnected_graph);
  EXPECT_EQ(code_of([] { Graph(2, {{0, 0}, {0, 1}}, 0); }), ErrorCode::self_loop);
  EXPECT_EQ(code_of([] { Graph(2, {{0, 1}, {1, 0}}, 0); }), ErrorCode::duplicate_edge);
  EXPECT_EQ(code_of([] { Graph(2, {{0, 1}}, 2); }), ErrorCode::origin_out_of_range);
  EXPECT_EQ(code_of([] { Graph(2, {{0, 5}}, 0); }), ErrorCode::invalid_argument);
}

TEST(Invariants, DegreesAndReachability) {
  std::vector<Graph> graphs{make_cycle(2), make_cycle(5), make_path(4), cartesian_product(make_path(2), make_cycle(3))};
  for (const auto& g : graphs) {
    std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
    std::queue<Vertex> q;
    q.push(g.origin());
    seen[static_cast<std::size_t>(g.origin())] = true;
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!seen[static_cast<std::size_t>(v)] && g.adjacent(u, v)) {
          seen[static_cast<std::size_t>(v)] = true;
          q.push(v);
        }
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      EXPECT_GE(g.degree(v), 1);
      EXPECT_TRUE(seen[static_cast<std::size_t>(v)]);
    }
  }
}

TEST(Invariants, MaxDegreeOfCyclesAndPaths) {
  for (int k = 3; k <= 9; ++k) {
    EXPECT_EQ(make_cycle(k).max_degree(), 2);
    EXPECT_EQ(make_path(k).max_degree(), 2);
  }
  EXPECT_EQ(make_cycle(2).max_degree(), 1);
}

class GraphFile : public ::testing::Test {
 protected:
  std::filesystem::path write(const std::string& body) {
    auto path = std::filesystem::temp_directory_path() /
                ("layerperc_graph_" + std::to_string(counter_++) + "_" + std::to_string(::getpid()) + ".json");
    std::ofstream(path) << body;
    files_.push_back(path);
    return path;
  }
  void TearDown() override {
    for (const auto& f : files_) std::filesystem::remove(f);
  }

 private:
  int counter_ = 0;
  std::vector<std::filesystem::path> files_;
};

TEST_F(GraphFile, TriangleLoads) {
  auto g = load_graph(write(R"({"vertices": 3, "edges": [[0,1],[1,2],[2,0]], "origin": 0})"));
  EXPECT_EQ(sorted_edges(g), sorted_edges(make_cycle(3)));
  EXPECT_EQ(g.origin(), 0);
}

TEST_F(GraphFile, LabelsRenumberedInOrder) {
  auto g = load_graph(write(R"({"vertices": ["a","b","c"], "edges": [["c","a"],["a","b"]], "origin": "c"})"));
  EXPECT_EQ(g.origin(), 2);
  EXPECT_EQ(sorted_edges(g), (std::vector<Edge>{{0, 1}, {0, 2}}));
}

TEST_F(GraphFile, ErrorsAreDistinct) {
  EXPECT_EQ(code_of([&] { load_graph(write(R"({"vertices": 2, "edges": [], "origin": 0})")); }),
            ErrorCode::disconnected_graph);
  EXPECT_EQ(code_of([&] { load_graph(write(R"({"vertices": 2, "edges": [[0,0]], "origin": 0})")); }),
            ErrorCode::self_loop);
  EXPECT_EQ(code_of([&] { load_graph(write(R"({"vertices": 2, "edges": [[0,1],[1,0]], "origin": 0})")); }),
            ErrorCode::duplicate_edge);
  EXPECT_EQ(code_of([&] { load_graph(write(R"({"vertices": 2, "edges": [[0,1]], "origin": 7})")); }),
            ErrorCode::origin_out_of_range);
  EXPECT_EQ(code_of([&] { load_graph(write(R"({"vertices": 2, "edges": [[0,1,3]], "origin": 0})")); }),
            ErrorCode::parse_error);
  EXPECT_EQ(code_of([&] { load_graph(write(R"({"vertices": 2, "edges": [[0,1]], "origin": 0, "directed": true})")); }),
            ErrorCode::parse_error);
  EXPECT_EQ(code_of([&] { load_graph(write("not json")); }), ErrorCode::parse_error);
}

TEST_F(GraphFile, RoundTrip) {
  auto g = cartesian_product(make_path(2), make_cycle(3));
  Json j = g;
  EXPECT_EQ(graph_from_json(j), g);
}
