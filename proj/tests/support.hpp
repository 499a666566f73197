#pragma once

// Exhaustive checks shared by the unit suites and the acceptance runner. Each returns
// an empty string on success, otherwise a description of the first violation.

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "layerperc/chain.hpp"
#include "layerperc/transition.hpp"

namespace layerperc::testing_support {

inline int layer_count(const Graph& g, BondConfig z, BondKind kind) {
  return kind == BondKind::open ? z.open_count() : z.closed_count(g);
}

/// Calls visit(configs, x) for every walk of 1..depth layers from y that stays infected.
inline void for_each_walk(const Graph& g, const Pattern& y, int depth,
                          const std::function<void(const std::vector<BondConfig>&, const Pattern&)>& visit) {
  std::vector<BondConfig> stack;
  std::function<void(const Pattern&)> rec = [&](const Pattern& u) {
    if (static_cast<int>(stack.size()) == depth) return;
    for (std::uint32_t bits = 0; bits < config_count(g); ++bits) {
      BondConfig z{bits};
      Pattern v = step_pattern(g, u, z);
      if (!v.is_infected()) continue;
      stack.push_back(z);
      visit(stack, v);
      rec(v);
      stack.pop_back();
    }
  };
  rec(y);
}

struct MinimalLayerStats {
  std::string violation;
  long walks = 0;
  long minimal_layers = 0;
};

/// Over every walk of at most `depth` layers between infected patterns: no layer goes
/// below m_{y,x}; a layer at the minimum has all horizontal bonds closed (open kind) or
/// all vertical bonds open (closed kind); two adjacent minimal layers coincide; and the
/// shortest walk showing a minimal layer has length l_{y,x} whenever l_{y,x} <= depth.
inline MinimalLayerStats check_minimal_layers(const Graph& g, int depth) {
  MinimalLayerStats out;
  LayerMoves moves(g);
  const auto n = moves.size();
  auto fail = [&](const std::string& what, const Pattern& y, const Pattern& x, BondKind kind) {
    if (!out.violation.empty()) return;
    std::ostringstream s;
    s << what << " (" << to_string(kind) << ", " << to_string(y) << " -> " << to_string(x) << ")";
    out.violation = s.str();
  };
  for (auto kind : {BondKind::open, BondKind::closed}) {
    std::vector<int> m(n * n, -1), l(n * n, -1);
    for (std::size_t a = 0; a < n; ++a) {
      auto fwd = moves.forward(a);
      for (std::size_t b = 0; b < n; ++b)
        if (fwd[b]) {
          auto r = extremal_constants(moves, moves.patterns()[a], moves.patterns()[b], kind);
          m[a * n + b] = r.m;
          l[a * n + b] = r.l;
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
      const auto& y = moves.patterns()[a];
      std::vector<int> first_seen(n, -1);
      for_each_walk(g, y, depth, [&](const std::vector<BondConfig>& zs, const Pattern& x) {
        ++out.walks;
        auto b = moves.index_of(x);
        int target = m[a * n + b];
        if (target < 0) return fail("walk ends in a pattern the search calls unreachable", y, x, kind);
        for (std::size_t i = 0; i < zs.size(); ++i) {
          int c = layer_count(g, zs[i], kind);
          if (c < target) return fail("layer below the minimum", y, x, kind);
          if (c != target) continue;
          ++out.minimal_layers;
          int len = static_cast<int>(zs.size());
          if (first_seen[b] < 0 || len < first_seen[b]) first_seen[b] = len;
          if (kind == BondKind::open && !zs[i].horizontal_all_closed(g))
            return fail("minimal open layer with an open horizontal bond", y, x, kind);
          if (kind == BondKind::closed && !zs[i].vertical_all_open(g))
            return fail("minimal closed layer with a closed vertical bond", y, x, kind);
          if (i + 1 < zs.size() && layer_count(g, zs[i + 1], kind) == target && !(zs[i] == zs[i + 1]))
            return fail("adjacent minimal layers differ", y, x, kind);
        }
      });
      for (std::size_t b = 0; b < n; ++b) {
        int lb = l[a * n + b];
        if (lb < 0) continue;
        int want = lb <= depth ? lb : -1;
        if (first_seen[b] != want) fail("shortest minimal walk disagrees with l", y, moves.patterns()[b], kind);
      }
    }
  }
  if (out.violation.empty() && out.minimal_layers == 0) out.violation = "no minimal layer was ever observed";
  return out;
}

/// Row sums, the zero uninfected-to-infected block, positive self-loops and positive
/// jumps to x_dagger at p = 1/2, and the lumping identity against the uninfected kernel.
inline std::string structural_violation(const Graph& g) {
  const Rational half(1, 2);
  auto full = build_full_kernel(g);
  auto shadow = build_uninfected_kernel(g);
  auto reduced = build_reduced_kernel(g);
  auto lumped = build_lumped_kernel(g);
  for (const auto* k : {&full, &shadow, &reduced, &lumped})
    for (std::size_t i = 0; i < k->size(); ++i)
      if (!(k->row_sum(i) == IntPolynomial(1))) return "row " + to_string(k->states[i]) + " does not sum to 1";
  const auto dag = full.index_of(Pattern::all_singletons(g.vertex_count()));
  for (std::size_t i = 0; i < full.size(); ++i) {
    const auto& x = full.states[i].pattern;
    if (sign_at(full.at(i, i), half) <= 0) return "self-loop of " + to_string(x) + " not positive";
    if (sign_at(full.at(i, dag), half) <= 0) return "jump " + to_string(x) + " -> x_dagger not positive";
    for (std::size_t j = 0; j < full.size(); ++j)
      if (!x.is_infected() && full.states[j].pattern.is_infected() && !full.at(i, j).is_zero())
        return "uninfected " + to_string(x) + " reaches infected " + to_string(full.states[j].pattern);
    std::vector<IntPolynomial> collapsed(shadow.size());
    for (std::size_t j = 0; j < full.size(); ++j)
      collapsed[shadow.index_of(delete_infection(full.states[j].pattern))] += full.at(i, j);
    auto xs = shadow.index_of(delete_infection(x));
    for (std::size_t w = 0; w < shadow.size(); ++w)
      if (!(collapsed[w] == shadow.at(xs, w))) return "lumping identity fails at " + to_string(x);
  }
  for (std::size_t a = 0; a < reduced.size(); ++a)
    for (std::size_t b = 0; b < reduced.size(); ++b)
      if (!(reduced.at(a, b) == shadow.at(shadow.index_of(reduced.states[a]), shadow.index_of(reduced.states[b]))))
        return "reduced kernel is not the restriction of the uninfected kernel";
  return {};
}

}  // namespace layerperc::testing_support
