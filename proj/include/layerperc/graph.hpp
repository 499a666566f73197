#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"

namespace layerperc {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Finite simple connected graph on vertices 0..k-1 with a distinguished origin.
/// Edges are stored with first < second, in insertion order; that order fixes the
/// horizontal bit positions of a layer's bond configuration.
class Graph {
 public:
  Graph(int vertex_count, std::vector<Edge> edges, Vertex origin = 0, std::string name = {})
      : vertex_count_(vertex_count), edges_(std::move(edges)), origin_(origin), name_(std::move(name)) {
    validate();
  }

  int vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  Vertex origin() const { return origin_; }

  /// Builtin descriptor ("cycle:4") or empty for graphs loaded from data.
  const std::string& name() const { return name_; }

  /// Number of bonds in one layer: horizontal edges plus one vertical bond per vertex.
  int bonds_per_layer() const { return edge_count() + vertex_count_; }

  int degree(Vertex v) const {
    return static_cast<int>(std::count_if(edges_.begin(), edges_.end(),
                                          [v](const Edge& e) { return e.first == v || e.second == v; }));
  }

  int max_degree() const {
    int d = 0;
    for (Vertex v = 0; v < vertex_count_; ++v) d = std::max(d, degree(v));
    return d;
  }

  bool adjacent(Vertex u, Vertex v) const {
    Edge e = std::minmax(u, v);
    return std::find(edges_.begin(), edges_.end(), e) != edges_.end();
  }

  /// Copy with a different origin.
  Graph with_origin(Vertex origin) const { return Graph(vertex_count_, edges_, origin, name_); }

  /// Short label used in certificates: the builtin name or "graph(k,E)".
  std::string descriptor() const {
    if (!name_.empty()) return name_;
    return "graph(" + std::to_string(vertex_count_) + "," + std::to_string(edges_.size()) + ")";
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_ && a.origin_ == b.origin_;
  }

 private:
  void validate() {
    if (vertex_count_ < 1) throw Error(ErrorCode::invalid_argument, "graph needs at least one vertex");
    if (origin_ < 0 || origin_ >= vertex_count_)
      throw Error(ErrorCode::origin_out_of_range, "origin " + std::to_string(origin_));
    std::set<Edge> seen;
    for (auto& e : edges_) {
      if (e.first < 0 || e.second < 0 || e.first >= vertex_count_ || e.second >= vertex_count_)
        throw Error(ErrorCode::invalid_argument, "edge endpoint out of range");
      if (e.first == e.second) throw Error(ErrorCode::self_loop, "self-loop at " + std::to_string(e.first));
      if (e.first > e.second) std::swap(e.first, e.second);
      if (!seen.insert(e).second)
        throw Error(ErrorCode::duplicate_edge,
                    "duplicate edge " + std::to_string(e.first) + "-" + std::to_string(e.second));
    }
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(vertex_count_));
    for (auto [u, v] : edges_) {
      adj[static_cast<std::size_t>(u)].push_back(v);
      adj[static_cast<std::size_t>(v)].push_back(u);
    }
    std::vector<bool> reached(static_cast<std::size_t>(vertex_count_), false);
    std::queue<Vertex> frontier;
    frontier.push(origin_);
    reached[static_cast<std::size_t>(origin_)] = true;
    int count = 1;
    while (!frontier.empty()) {
      Vertex u = frontier.front();
      frontier.pop();
      for (Vertex w : adj[static_cast<std::size_t>(u)])
        if (!reached[static_cast<std::size_t>(w)]) {
          reached[static_cast<std::size_t>(w)] = true;
          ++count;
          frontier.push(w);
        }
    }
    if (count != vertex_count_) throw Error(ErrorCode::disconnected_graph, "graph is not connected");
  }

  int vertex_count_;
  std::vector<Edge> edges_;
  Vertex origin_;
  std::string name_;
};

/// Cycle C_k (k >= 2). C_2 is the single edge {0,1}.
inline Graph make_cycle(int k, Vertex origin = 0) {
  if (k < 2) throw Error(ErrorCode::invalid_argument, "cycle needs k >= 2");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < k; ++i) edges.emplace_back(i, i + 1);
  if (k >= 3) edges.emplace_back(0, k - 1);
  return Graph(k, std::move(edges), origin, "cycle:" + std::to_string(k));
}

/// Path L_k (k >= 1).
inline Graph make_path(int k, Vertex origin = 0) {
  if (k < 1) throw Error(ErrorCode::invalid_argument, "path needs k >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < k; ++i) edges.emplace_back(i, i + 1);
  return Graph(k, std::move(edges), origin, "path:" + std::to_string(k));
}

/// Parses "cycle:k" or "path:k".
inline Graph make_builtin(std::string_view descriptor, Vertex origin = 0) {
  auto colon = descriptor.find(':');
  if (colon == std::string_view::npos) throw Error(ErrorCode::parse_error, "expected family:k");
  std::string family(descriptor.substr(0, colon));
  int k = 0;
  try {
    std::size_t used = 0;
    std::string num(descriptor.substr(colon + 1));
    k = std::stoi(num, &used);
    if (used != num.size()) throw std::invalid_argument(num);
  } catch (const std::exception&) {
    throw Error(ErrorCode::parse_error, "bad size in " + std::string(descriptor));
  }
  if (family == "cycle") return make_cycle(k, origin);
  if (family == "path") return make_path(k, origin);
  throw Error(ErrorCode::parse_error, "unknown graph family " + family);
}

/// Cartesian product; vertex (a, b) becomes a * |V2| + b.
inline Graph cartesian_product(const Graph& g1, const Graph& g2) {
  const int n2 = g2.vertex_count();
  auto id = [n2](Vertex a, Vertex b) { return a * n2 + b; };
  std::vector<Edge> edges;
  for (Vertex a = 0; a < g1.vertex_count(); ++a)
    for (auto [u, v] : g2.edges()) edges.emplace_back(id(a, u), id(a, v));
  for (auto [u, v] : g1.edges())
    for (Vertex b = 0; b < n2; ++b) edges.emplace_back(id(u, b), id(v, b));
  std::sort(edges.begin(), edges.end());
  std::string name;
  if (!g1.name().empty() && !g2.name().empty()) name = g1.name() + "x" + g2.name();
  return Graph(g1.vertex_count() * n2, std::move(edges), id(g1.origin(), g2.origin()), name);
}

}  // namespace layerperc
