#pragma once

// Monte Carlo oracle: perfect sampling of the infection-pattern chain.
//
// Layers are drawn downward from layer 0 until one has every bond closed. Nothing below
// such a layer influences it, so its uninfected pattern is x_† and replaying the drawn
// layers upward gives an exact sample of the stationary uninfected pattern at layer 0.
// The origin's block is then infected and fresh layers are drawn upward. Drawing further
// up to the next all-closed layer gives a finite window on which connection events in
// the infinite graph can be decided by plain union-find.

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "parallel.hpp"
#include "pattern.hpp"
#include "rational.hpp"
#include "transition.hpp"

namespace layerperc {

inline constexpr const char* mc_generator_name = "mt19937_64";
inline constexpr const char* mc_seed_scheme = "splitmix64(seed + golden * (chunk + 1)), 4096 samples per chunk";
inline constexpr std::uint64_t mc_chunk_size = 4096;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31U);
}

inline std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) {
  return splitmix64(seed + 0x9E3779B97F4A7C15ULL * (chunk + 1));
}

struct SampleStats {
  std::uint64_t samples = 0;
  std::uint64_t successes = 0;
  double estimate = 0.0;
  double standard_error = 0.0;

  static SampleStats from_counts(std::uint64_t samples, std::uint64_t successes) {
    SampleStats s{samples, successes, 0.0, 0.0};
    if (samples > 0) {
      s.estimate = static_cast<double>(successes) / static_cast<double>(samples);
      s.standard_error = std::sqrt(s.estimate * (1.0 - s.estimate) / static_cast<double>(samples));
    }
    return s;
  }
};

struct LayerSample {
  std::vector<Pattern> patterns;  // X_0 .. X_n
  int depth = 0;                  // layers drawn below layer 1 before the all-closed one
};

/// Explicit bonds of the layers that can matter for connections from (o, 0) up to layer
/// n_max: layer -depth (all closed, not stored) cuts off everything below, layer `top`
/// (all closed) everything above. configs[i] holds the bonds of layer i - depth + 1.
struct BondWindow {
  int depth = 0;
  int top = 0;
  std::vector<BondConfig> configs;

  int first_layer() const { return -depth; }
  const BondConfig& layer(int l) const { return configs[static_cast<std::size_t>(l + depth - 1)]; }
};

/// Draws layers and steps patterns through them, with a successor table when it is small.
class ChainSampler {
 public:
  using Engine = std::mt19937_64;

  ChainSampler(const Graph& graph, const Rational& p) : graph_(graph), bonds_(graph.bonds_per_layer()) {
    if (p <= 0 || p >= 1) throw Error(ErrorCode::invalid_argument, "p must lie in (0,1)");
    // A bond is open when a 32-bit uniform falls below floor(p * 2^32); each engine
    // output supplies two uniforms.
    Integer scaled = (Integer(p.get_num()) << 32U) / p.get_den();
    threshold_ = static_cast<std::uint32_t>(scaled.get_ui());
    const auto configs = config_count(graph);
    patterns_ = enumerate_patterns(graph);
    if (patterns_.size() * configs <= (std::size_t{1} << 22U)) {
      for (std::size_t i = 0; i < patterns_.size(); ++i) index_[patterns_[i].key()] = static_cast<std::uint32_t>(i);
      table_.resize(patterns_.size() * configs);
      for (std::size_t i = 0; i < patterns_.size(); ++i)
        for (std::uint32_t z = 0; z < configs; ++z)
          table_[i * configs + z] = index_.at(step_pattern(graph, patterns_[i], BondConfig{z}).key());
    }
  }

  const Graph& graph() const { return graph_; }

  BondConfig draw(Engine& rng) const {
    std::uint32_t bits = 0;
    for (int i = 0; i < bonds_; i += 2) {
      const std::uint64_t r = rng();
      if (static_cast<std::uint32_t>(r) < threshold_) bits |= 1U << static_cast<unsigned>(i);
      if (i + 1 < bonds_ && static_cast<std::uint32_t>(r >> 32U) < threshold_) bits |= 1U << static_cast<unsigned>(i + 1);
    }
    return {bits};
  }

  /// Layers 0, -1, ... until an all-closed one, then layers 1 .. n_max, then upward
  /// until an all-closed one.
  BondWindow draw_window(int n_max, Engine& rng) const {
    if (n_max < 0) throw Error(ErrorCode::invalid_argument, "n must be >= 0");
    BondWindow w;
    std::vector<BondConfig> below;
    for (;;) {
      auto z = draw(rng);
      if (z.bits == 0) break;
      below.push_back(z);
    }
    w.depth = static_cast<int>(below.size());
    w.configs.assign(below.rbegin(), below.rend());
    for (int l = 1; l <= n_max; ++l) w.configs.push_back(draw(rng));
    w.top = n_max + 1;
    for (;; ++w.top) {
      auto z = draw(rng);
      if (z.bits == 0) break;
      w.configs.push_back(z);
    }
    return w;
  }

  /// X_0 .. X_n read off a window drawn with n_max >= n.
  std::vector<Pattern> patterns(const BondWindow& w, int n) const {
    Pattern y = Pattern::all_singletons(graph_.vertex_count());
    if (table_.empty()) {
      for (int l = w.first_layer() + 1; l <= 0; ++l) y = step_pattern(graph_, y, w.layer(l));
    } else {
      auto i = index_.at(y.key());
      const auto configs = config_count(graph_);
      for (int l = w.first_layer() + 1; l <= 0; ++l) i = table_[static_cast<std::size_t>(i) * configs + w.layer(l).bits];
      y = patterns_[i];
    }
    std::vector<Pattern> out{infect_origin(y)};
    for (int l = 1; l <= n; ++l) out.push_back(step(out.back(), w.layer(l)));
    return out;
  }

  LayerSample sample(int n, Engine& rng) const {
    auto w = draw_window(n, rng);
    return {patterns(w, n), w.depth};
  }

 private:
  Pattern step(const Pattern& y, BondConfig z) const {
    if (table_.empty()) return step_pattern(graph_, y, z);
    auto i = index_.at(y.key());
    return patterns_[table_[static_cast<std::size_t>(i) * config_count(graph_) + z.bits]];
  }

  /// Merges * into the origin's block of an uninfected pattern.
  Pattern infect_origin(const Pattern& y) const {
    const auto& e = y.encoding();
    std::vector<int> labels(e.begin(), e.end());
    labels[0] = e[static_cast<std::size_t>(graph_.origin()) + 1];
    return Pattern::from_labels(labels);
  }

  Graph graph_;
  int bonds_;
  std::uint32_t threshold_ = 0;
  std::vector<Pattern> patterns_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::vector<std::uint32_t> table_;
};

/// Direct percolation on the window: which (v, n), n <= n_max, are joined to (o, 0).
/// Independent of the pattern machinery.
inline std::vector<std::vector<bool>> window_connections(const Graph& graph, const BondWindow& w, int n_max) {
  const int k = graph.vertex_count();
  const int layers = w.top + w.depth;  // layers -depth .. top - 1
  auto node = [&](int layer, Vertex v) { return static_cast<std::size_t>((layer + w.depth) * k + v); };
  UnionFind uf(static_cast<std::size_t>(layers * k));
  const auto& edges = graph.edges();
  for (int l = w.first_layer() + 1; l < w.top; ++l) {
    const auto& z = w.layer(l);
    for (int i = 0; i < graph.edge_count(); ++i)
      if (z.open(i)) uf.unite(node(l, edges[static_cast<std::size_t>(i)].first), node(l, edges[static_cast<std::size_t>(i)].second));
    for (Vertex v = 0; v < k; ++v)
      if (z.open(graph.edge_count() + v)) uf.unite(node(l - 1, v), node(l, v));
  }
  std::vector<std::vector<bool>> out(static_cast<std::size_t>(n_max) + 1, std::vector<bool>(static_cast<std::size_t>(k)));
  const auto root = uf.find(node(0, graph.origin()));
  for (int n = 0; n <= n_max; ++n)
    for (Vertex v = 0; v < k; ++v) out[static_cast<std::size_t>(n)][static_cast<std::size_t>(v)] = uf.find(node(n, v)) == root;
  return out;
}

/// One chain sample X_0..X_n, reproducible from the seed.
inline LayerSample sample_layer_chain(const Graph& graph, const Rational& p, int n, std::uint64_t seed) {
  ChainSampler sampler(graph, p);
  ChainSampler::Engine rng(seed);
  return sampler.sample(n, rng);
}

/// Integer tallies over many samples; totals do not depend on the thread count.
struct SimulationSummary {
  std::uint64_t samples = 0;
  std::vector<std::vector<std::uint64_t>> connected;  // [n][v]: (v, n) joined to (o, 0)
  std::vector<std::vector<std::uint64_t>> infected;   // [n][v]: v ~ * in X_n
  std::map<Pattern, std::uint64_t> initial_counts;     // histogram of X_0
  std::uint64_t total_depth = 0;

  SampleStats connection(Vertex v, int n) const {
    return SampleStats::from_counts(samples, connected.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(v)));
  }
  SampleStats pattern_infection(Vertex v, int n) const {
    return SampleStats::from_counts(samples, infected.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(v)));
  }
  double mean_depth() const { return samples == 0 ? 0.0 : static_cast<double>(total_depth) / static_cast<double>(samples); }
};

inline SimulationSummary simulate(const Graph& graph, const Rational& p, int n_max, std::uint64_t samples,
                                  std::uint64_t seed, unsigned threads = 1) {
  ChainSampler sampler(graph, p);
  const std::uint64_t chunks = (samples + mc_chunk_size - 1) / mc_chunk_size;
  const auto k = static_cast<std::size_t>(graph.vertex_count());
  const auto layers = static_cast<std::size_t>(n_max) + 1;
  std::vector<SimulationSummary> parts(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    auto& part = parts[c];
    part.infected.assign(layers, std::vector<std::uint64_t>(k, 0));
    part.connected = part.infected;
    ChainSampler::Engine rng(chunk_seed(seed, c));
    const auto count = std::min(mc_chunk_size, samples - c * mc_chunk_size);
    for (std::uint64_t s = 0; s < count; ++s) {
      auto window = sampler.draw_window(n_max, rng);
      auto xs = sampler.patterns(window, n_max);
      auto joined = window_connections(graph, window, n_max);
      ++part.samples;
      part.total_depth += static_cast<std::uint64_t>(window.depth);
      ++part.initial_counts[xs.front()];
      for (std::size_t n = 0; n < layers; ++n)
        for (std::size_t v = 0; v < k; ++v) {
          if (xs[n].vertex_infected(static_cast<Vertex>(v))) ++part.infected[n][v];
          if (joined[n][v]) ++part.connected[n][v];
        }
    }
  });
  SimulationSummary total;
  total.infected.assign(layers, std::vector<std::uint64_t>(k, 0));
  total.connected = total.infected;
  for (const auto& part : parts) {
    total.samples += part.samples;
    total.total_depth += part.total_depth;
    for (const auto& [x, c] : part.initial_counts) total.initial_counts[x] += c;
    for (std::size_t n = 0; n < layers; ++n)
      for (std::size_t v = 0; v < k; ++v) {
        total.infected[n][v] += part.infected[n][v];
        total.connected[n][v] += part.connected[n][v];
      }
  }
  return total;
}

/// Frequency of (v, n) being joined to (o, 0) in the whole layered graph.
inline SampleStats estimate_connection(const Graph& graph, const Rational& p, Vertex v, int n, std::uint64_t samples,
                                       std::uint64_t seed, unsigned threads = 1) {
  if (v < 0 || v >= graph.vertex_count()) throw Error(ErrorCode::invalid_argument, "vertex out of range");
  return simulate(graph, p, n, samples, seed, threads).connection(v, n);
}

}  // namespace layerperc
