#pragma once

// Single-layer transition kernels of the infection-pattern chain.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "parallel.hpp"
#include "pattern.hpp"
#include "polynomial.hpp"

namespace layerperc {

/// Small union-find with path halving.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0U); }

  std::size_t find(std::size_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

  bool same(std::size_t a, std::size_t b) { return find(a) == find(b); }

 private:
  std::vector<std::size_t> parent_;
};

/// Open/closed state of one layer's bonds: bit i < |E| is horizontal edge i (graph edge
/// order), bit |E| + v is the vertical bond below vertex v. Bit set = open.
struct BondConfig {
  std::uint32_t bits = 0;

  bool open(int bit) const { return (bits >> static_cast<unsigned>(bit)) & 1U; }
  int open_count() const { return std::popcount(bits); }
  int closed_count(const Graph& g) const { return g.bonds_per_layer() - open_count(); }

  bool horizontal_all_closed(const Graph& g) const {
    return (bits & ((1U << static_cast<unsigned>(g.edge_count())) - 1U)) == 0;
  }
  bool vertical_all_open(const Graph& g) const {
    std::uint32_t mask = ((1U << static_cast<unsigned>(g.vertex_count())) - 1U) << static_cast<unsigned>(g.edge_count());
    return (bits & mask) == mask;
  }

  static BondConfig all_open(const Graph& g) { return {(1U << static_cast<unsigned>(g.bonds_per_layer())) - 1U}; }
  static BondConfig all_closed() { return {0}; }

  friend bool operator==(const BondConfig&, const BondConfig&) = default;
};

inline constexpr int max_bonds_per_layer = 24;

/// Number of distinct configurations of one layer.
inline std::uint32_t config_count(const Graph& g) {
  if (g.bonds_per_layer() > max_bonds_per_layer)
    throw Error(ErrorCode::size_guard_exceeded, "too many bonds per layer");
  return 1U << static_cast<unsigned>(g.bonds_per_layer());
}

/// Deterministic successor of pattern y through one layer with bonds z.
inline Pattern step_pattern(const Graph& graph, const Pattern& y, BondConfig z) {
  const int k = graph.vertex_count();
  const auto below = [](Vertex v) { return static_cast<std::size_t>(1 + v); };
  const auto above = [k](Vertex v) { return static_cast<std::size_t>(1 + k + v); };
  UnionFind uf(static_cast<std::size_t>(2 * k + 1));
  // Connections of the previous layer are carried by the pattern itself.
  std::vector<int> first_in_block(static_cast<std::size_t>(k + 1), -1);
  for (Vertex v = 0; v < k; ++v) {
    int b = y.block_of_vertex(v);
    if (b == 0) uf.unite(0, below(v));
    if (first_in_block[static_cast<std::size_t>(b)] < 0) first_in_block[static_cast<std::size_t>(b)] = v;
    else uf.unite(below(first_in_block[static_cast<std::size_t>(b)]), below(v));
  }
  const auto& edges = graph.edges();
  for (int i = 0; i < graph.edge_count(); ++i)
    if (z.open(i)) uf.unite(above(edges[static_cast<std::size_t>(i)].first), above(edges[static_cast<std::size_t>(i)].second));
  for (Vertex v = 0; v < k; ++v)
    if (z.open(graph.edge_count() + v)) uf.unite(below(v), above(v));
  std::vector<int> labels(static_cast<std::size_t>(k + 1));
  labels[0] = static_cast<int>(uf.find(0));
  for (Vertex v = 0; v < k; ++v) labels[static_cast<std::size_t>(v + 1)] = static_cast<int>(uf.find(above(v)));
  return Pattern::from_labels(labels);
}

/// Square matrix of integer polynomials indexed by pattern classes (row = source).
struct PolyMatrix {
  std::vector<PatternClass> states;
  std::vector<IntPolynomial> entries;  // row-major

  PolyMatrix() = default;
  explicit PolyMatrix(std::vector<PatternClass> s)
      : states(std::move(s)), entries(states.size() * states.size()) {}

  std::size_t size() const { return states.size(); }
  IntPolynomial& at(std::size_t i, std::size_t j) { return entries[i * size() + j]; }
  const IntPolynomial& at(std::size_t i, std::size_t j) const { return entries[i * size() + j]; }

  std::size_t index_of(const PatternClass& s) const {
    auto it = std::find(states.begin(), states.end(), s);
    if (it == states.end()) throw Error(ErrorCode::unknown_state, to_string(s));
    return static_cast<std::size_t>(it - states.begin());
  }
  std::size_t index_of(const Pattern& x) const { return index_of(PatternClass::full(x)); }

  IntPolynomial row_sum(std::size_t i) const {
    IntPolynomial s;
    for (std::size_t j = 0; j < size(); ++j) s += at(i, j);
    return s;
  }

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;
};

/// Indices reachable from `from` (including itself) along entries that are not identically zero.
inline std::vector<std::size_t> reachable_indices(const PolyMatrix& m, std::size_t from) {
  std::vector<bool> seen(m.size(), false);
  std::queue<std::size_t> frontier;
  seen[from] = true;
  frontier.push(from);
  while (!frontier.empty()) {
    auto i = frontier.front();
    frontier.pop();
    for (std::size_t j = 0; j < m.size(); ++j)
      if (!seen[j] && !m.at(i, j).is_zero()) {
        seen[j] = true;
        frontier.push(j);
      }
  }
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < m.size(); ++j)
    if (seen[j]) out.push_back(j);
  return out;
}

/// For one source pattern: each successor and how many configurations with each
/// open-bond count lead there.
struct TransitionHistogram {
  std::map<Pattern, std::vector<std::uint64_t>> by_target;  // target -> count per open-bond number
};

inline TransitionHistogram transition_histogram(const Graph& graph, const Pattern& y) {
  TransitionHistogram h;
  const auto configs = config_count(graph);
  const auto width = static_cast<std::size_t>(graph.bonds_per_layer()) + 1;
  for (std::uint32_t bits = 0; bits < configs; ++bits) {
    BondConfig z{bits};
    auto& counts = h.by_target[step_pattern(graph, y, z)];
    if (counts.empty()) counts.assign(width, 0);
    ++counts[static_cast<std::size_t>(z.open_count())];
  }
  return h;
}

/// sum_k counts[k] p^k (1-p)^(b-k), built from precomputed weights.
inline IntPolynomial weigh(const std::vector<std::uint64_t>& counts, const std::vector<IntPolynomial>& weights) {
  IntPolynomial out;
  for (std::size_t k = 0; k < counts.size(); ++k)
    if (counts[k] != 0) out += weights[k] * Integer(static_cast<unsigned long>(counts[k]));
  return out;
}

inline std::vector<IntPolynomial> layer_weights(int bonds) {
  std::vector<IntPolynomial> w;
  for (int k = 0; k <= bonds; ++k) w.push_back(bernoulli_weight(static_cast<unsigned>(k), static_cast<unsigned>(bonds - k)));
  return w;
}

namespace detail {

inline std::vector<PatternClass> as_states(std::vector<Pattern> patterns) {
  std::sort(patterns.begin(), patterns.end(), kernel_order);
  std::vector<PatternClass> states;
  states.reserve(patterns.size());
  for (auto& p : patterns) states.push_back(PatternClass::full(std::move(p)));
  return states;
}

/// Kernel over an explicit list of full-pattern states (closed under transitions).
inline PolyMatrix kernel_over(const Graph& graph, std::vector<PatternClass> states, unsigned threads) {
  PolyMatrix m(std::move(states));
  const auto weights = layer_weights(graph.bonds_per_layer());
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < m.size(); ++i) index.emplace(m.states[i].pattern.key(), i);
  parallel_for(m.size(), threads, [&](std::size_t i) {
    auto h = transition_histogram(graph, m.states[i].pattern);
    for (const auto& [target, counts] : h.by_target) {
      auto it = index.find(target.key());
      if (it == index.end()) throw Error(ErrorCode::unknown_state, "state set not closed: " + to_string(target));
      m.at(i, it->second) = weigh(counts, weights);
    }
  });
  return m;
}

}  // namespace detail

/// pi_p over all of M.
inline PolyMatrix build_full_kernel(const Graph& graph, unsigned threads = 1) {
  return detail::kernel_over(graph, detail::as_states(enumerate_patterns(graph)), threads);
}

/// Uninfected kernel over all of M† (before restriction to the reachable set).
inline PolyMatrix build_uninfected_kernel(const Graph& graph, unsigned threads = 1) {
  std::vector<Pattern> uninfected;
  for (auto& x : enumerate_patterns(graph))
    if (!x.is_infected()) uninfected.push_back(x);
  return detail::kernel_over(graph, detail::as_states(std::move(uninfected)), threads);
}

/// Restriction of a kernel to a subset of its states (given as indices, kept in order).
inline PolyMatrix restrict_kernel(const PolyMatrix& m, const std::vector<std::size_t>& keep) {
  std::vector<PatternClass> states;
  for (auto i : keep) states.push_back(m.states[i]);
  PolyMatrix out(std::move(states));
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = 0; b < keep.size(); ++b) out.at(a, b) = m.at(keep[a], keep[b]);
  return out;
}

/// pi_p^- on M^- = states reachable from x_† in the uninfected chain.
inline PolyMatrix build_reduced_kernel(const Graph& graph, unsigned threads = 1) {
  PolyMatrix all = build_uninfected_kernel(graph, threads);
  auto from = all.index_of(Pattern::all_singletons(graph.vertex_count()));
  return restrict_kernel(all, reachable_indices(all, from));
}

/// pi_p' on M' = {†} ∪ infected patterns whose uninfected shadow lies in M^-.
/// State 0 is †.
inline PolyMatrix build_lumped_kernel(const Graph& graph, unsigned threads = 1) {
  PolyMatrix reduced = build_reduced_kernel(graph, threads);
  std::vector<Pattern> infected;
  for (auto& x : enumerate_patterns(graph))
    if (x.is_infected() && std::find(reduced.states.begin(), reduced.states.end(),
                                     PatternClass::full(delete_infection(x))) != reduced.states.end())
      infected.push_back(x);
  std::sort(infected.begin(), infected.end(), kernel_order);
  std::vector<PatternClass> states{PatternClass::lumped()};
  for (auto& x : infected) states.push_back(PatternClass::full(x));
  PolyMatrix m(std::move(states));
  const auto weights = layer_weights(graph.bonds_per_layer());
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 1; i < m.size(); ++i) index.emplace(m.states[i].pattern.key(), i);
  m.at(0, 0) = IntPolynomial(1);
  parallel_for(m.size() - 1, threads, [&](std::size_t r) {
    const std::size_t i = r + 1;
    auto h = transition_histogram(graph, m.states[i].pattern);
    std::vector<std::uint64_t> to_dagger(static_cast<std::size_t>(graph.bonds_per_layer()) + 1, 0);
    for (const auto& [target, counts] : h.by_target) {
      if (!target.is_infected()) {
        for (std::size_t k = 0; k < counts.size(); ++k) to_dagger[k] += counts[k];
        continue;
      }
      auto it = index.find(target.key());
      if (it == index.end()) throw Error(ErrorCode::unknown_state, "lumped state set not closed: " + to_string(target));
      m.at(i, it->second) = weigh(counts, weights);
    }
    m.at(i, 0) = weigh(to_dagger, weights);
  });
  return m;
}

/// Entrywise evaluation at a rational point, as doubles.
inline std::vector<double> evaluate_matrix(const PolyMatrix& m, const Rational& p) {
  std::vector<double> out(m.entries.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = m.entries[i](p).get_d();
  return out;
}

}  // namespace layerperc
