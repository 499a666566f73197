#pragma once

// Reachability, stationary and initial distributions, extremal layer constants and
// decay-rate estimation for the pattern chain.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "pattern.hpp"
#include "polynomial.hpp"
#include "transition.hpp"

namespace layerperc {

/// Polynomial entries over a shared normalizer: the distribution is entries / c_p.
struct PolyVector {
  std::vector<PatternClass> states;
  std::vector<IntPolynomial> entries;
  IntPolynomial normalizer;  // c_p

  const IntPolynomial& operator[](const PatternClass& s) const {
    auto it = std::find(states.begin(), states.end(), s);
    if (it == states.end()) throw Error(ErrorCode::unknown_state, to_string(s));
    return entries[static_cast<std::size_t>(it - states.begin())];
  }
  const IntPolynomial& operator[](const Pattern& x) const { return (*this)[PatternClass::full(x)]; }

  IntPolynomial sum() const {
    IntPolynomial s;
    for (const auto& e : entries) s += e;
    return s;
  }

  friend bool operator==(const PolyVector&, const PolyVector&) = default;
};

/// States reachable from `from` (including itself).
inline std::vector<PatternClass> reachable(const PolyMatrix& kernel, const PatternClass& from) {
  std::vector<PatternClass> out;
  for (auto i : reachable_indices(kernel, kernel.index_of(from))) out.push_back(kernel.states[i]);
  return out;
}

/// Row vector times matrix.
inline std::vector<IntPolynomial> multiply(const std::vector<IntPolynomial>& row, const PolyMatrix& m) {
  std::vector<IntPolynomial> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (row[i].is_zero()) continue;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (!m.at(i, j).is_zero()) out[j] += row[i] * m.at(i, j);
  }
  return out;
}

namespace detail {

inline void require_stochastic(const PolyMatrix& kernel) {
  for (std::size_t i = 0; i < kernel.size(); ++i)
    if (!(kernel.row_sum(i) == IntPolynomial(1)))
      throw Error(ErrorCode::not_stochastic, "row " + to_string(kernel.states[i]) + " does not sum to 1");
}

/// Divides every entry by their common polynomial gcd and integer content, then fixes
/// the sign so the sum is positive at p = 1/2.
inline void normalize_vector(std::vector<IntPolynomial>& v) {
  IntPolynomial g;
  for (const auto& e : v)
    if (!e.is_zero()) g = g.is_zero() ? primitive_part(e) : gcd(g, e);
  if (g.is_zero()) return;
  if (g.leading() < 0) g = -g;
  if (g.degree() > 0)
    for (auto& e : v) e = e.is_zero() ? e : exact_div(e, g);
  Integer c = 0;
  for (const auto& e : v) {
    Integer ce = content(e);
    mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), ce.get_mpz_t());
  }
  IntPolynomial total;
  for (const auto& e : v) total += e;
  bool flip = sign_at(total, Rational(1, 2)) < 0;
  for (auto& e : v) {
    if (c > 1) e = exact_div(e, IntPolynomial(c));
    if (flip) e = -e;
  }
}

}  // namespace detail

/// Unique stationary row vector of an irreducible kernel, as polynomial entries over
/// a common normalizer c_p.
///
/// Solves (pi^T - I) a = 0 by fraction-free (Bareiss) elimination over Z[p], choosing
/// the lowest-degree nonzero pivot, and back-substitutes once with the free unknown set
/// to the last pivot so every division is exact.
inline PolyVector stationary_distribution(const PolyMatrix& kernel) {
  detail::require_stochastic(kernel);
  const std::size_t n = kernel.size();
  // a[r][c] = pi(c, r) - [r == c]
  std::vector<std::vector<IntPolynomial>> a(n, std::vector<IntPolynomial>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a[r][c] = kernel.at(c, r) - IntPolynomial(r == c ? 1 : 0);
  std::vector<std::size_t> col(n);
  for (std::size_t c = 0; c < n; ++c) col[c] = c;

  IntPolynomial prev(1);
  std::size_t rank = 0;
  for (std::size_t s = 0; s < n; ++s) {
    // Pivot: lowest-degree nonzero entry in the trailing block, preferring column s.
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t c = s; c < n && !best; ++c) {
      for (std::size_t r = s; r < n; ++r) {
        if (a[r][c].is_zero()) continue;
        if (!best || a[r][c].degree() < a[best->first][best->second].degree()) best = {r, c};
      }
    }
    if (!best) break;
    auto [pr, pc] = *best;
    std::swap(a[s], a[pr]);
    if (pc != s) {
      for (auto& row : a) std::swap(row[s], row[pc]);
      std::swap(col[s], col[pc]);
    }
    ++rank;
    const IntPolynomial pivot = a[s][s];
    for (std::size_t r = s + 1; r < n; ++r) {
      for (std::size_t c = s + 1; c < n; ++c) {
        IntPolynomial v = pivot * a[r][c] - a[r][s] * a[s][c];
        a[r][c] = prev == IntPolynomial(1) ? std::move(v) : exact_div(v, prev);
      }
      a[r][s] = IntPolynomial();
    }
    prev = pivot;
  }
  if (rank + 1 != n)
    throw Error(ErrorCode::eigenspace_dimension,
                "eigenvalue-1 eigenspace has dimension " + std::to_string(n - rank));

  // Free unknown (permuted column n-1) := determinant of the leading (n-1)-minor.
  std::vector<IntPolynomial> x(n);
  x[n - 1] = n >= 2 ? a[n - 2][n - 2] : IntPolynomial(1);
  for (std::size_t i = n - 1; i-- > 0;) {
    IntPolynomial acc;
    for (std::size_t j = i + 1; j < n; ++j) acc += a[i][j] * x[j];
    x[i] = exact_div(-acc, a[i][i]);
  }
  std::vector<IntPolynomial> entries(n);
  for (std::size_t c = 0; c < n; ++c) entries[col[c]] = std::move(x[c]);
  detail::normalize_vector(entries);

  PolyVector out{kernel.states, std::move(entries), {}};
  out.normalizer = out.sum();
  return out;
}

/// Initial distribution of the lumped chain: the stationary weight of f_†(x) when the
/// origin is infected in x, zero otherwise (in particular zero on †).
inline PolyVector initial_distribution(const PolyVector& stationary, const PolyMatrix& lumped, const Graph& graph) {
  PolyVector out{lumped.states, std::vector<IntPolynomial>(lumped.size()), stationary.normalizer};
  for (std::size_t i = 0; i < lumped.size(); ++i) {
    const auto& s = lumped.states[i];
    if (s.dagger || !s.pattern.vertex_infected(graph.origin())) continue;
    out.entries[i] = stationary[delete_infection(s.pattern)];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Extremal layer constants

enum class BondKind { open, closed };

inline const char* to_string(BondKind k) { return k == BondKind::open ? "open" : "closed"; }

struct ExtremalReport {
  Pattern y;
  Pattern x;
  BondKind kind = BondKind::open;
  int m = 0;  // minimal number of open (closed) bonds in some layer of a walk y -> x
  int l = 0;  // minimal walk length realizing such a layer

  friend bool operator==(const ExtremalReport&, const ExtremalReport&) = default;
};

/// One-step structure of the full chain restricted to infected patterns, with the
/// minimal open- and closed-bond counts of the configurations realizing each move.
class LayerMoves {
 public:
  explicit LayerMoves(const Graph& graph) : graph_(graph) {
    for (auto& x : enumerate_patterns(graph))
      if (x.is_infected()) {
        index_.emplace(x.key(), patterns_.size());
        patterns_.push_back(x);
      }
    const auto n = patterns_.size();
    const int bonds = graph.bonds_per_layer();
    min_open_.assign(n * n, -1);
    min_closed_.assign(n * n, -1);
    const auto configs = config_count(graph);
    for (std::size_t u = 0; u < n; ++u)
      for (std::uint32_t bits = 0; bits < configs; ++bits) {
        BondConfig z{bits};
        Pattern v = step_pattern(graph, patterns_[u], z);
        if (!v.is_infected()) continue;
        auto j = index_.at(v.key());
        auto& mo = min_open_[u * n + j];
        auto& mc = min_closed_[u * n + j];
        int open = z.open_count();
        if (mo < 0 || open < mo) mo = open;
        if (mc < 0 || bonds - open < mc) mc = bonds - open;
      }
  }

  const Graph& graph() const { return graph_; }
  const std::vector<Pattern>& patterns() const { return patterns_; }
  std::size_t size() const { return patterns_.size(); }

  std::size_t index_of(const Pattern& x) const {
    auto it = index_.find(x.key());
    if (it == index_.end() || !x.is_infected() || x.vertex_count() != graph_.vertex_count())
      throw Error(ErrorCode::unknown_state, "not an infected pattern: " + to_string(x));
    return it->second;
  }

  /// Minimal count of the given kind over configurations moving u to v, or -1.
  int min_count(std::size_t u, std::size_t v, BondKind kind) const {
    return (kind == BondKind::open ? min_open_ : min_closed_)[u * size() + v];
  }
  bool move(std::size_t u, std::size_t v) const { return min_open_[u * size() + v] >= 0; }

  /// Indices reachable from u in zero or more steps.
  std::vector<bool> forward(std::size_t u) const { return closure(u, false); }
  /// Indices from which v is reachable in zero or more steps.
  std::vector<bool> backward(std::size_t v) const { return closure(v, true); }

  bool reaches(std::size_t y, std::size_t x) const { return forward(y)[x]; }

 private:
  std::vector<bool> closure(std::size_t start, bool reverse) const {
    std::vector<bool> seen(size(), false);
    std::deque<std::size_t> q{start};
    seen[start] = true;
    while (!q.empty()) {
      auto a = q.front();
      q.pop_front();
      for (std::size_t b = 0; b < size(); ++b)
        if (!seen[b] && (reverse ? move(b, a) : move(a, b))) {
          seen[b] = true;
          q.push_back(b);
        }
    }
    return seen;
  }

  Graph graph_;
  std::vector<Pattern> patterns_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<int> min_open_, min_closed_;
};

/// m and l (or m' and l') for a pair y -> x of infected patterns.
inline ExtremalReport extremal_constants(const LayerMoves& moves, const Pattern& y, const Pattern& x, BondKind kind) {
  const auto yi = moves.index_of(y);
  const auto xi = moves.index_of(x);
  auto fwd = moves.forward(yi);
  if (!fwd[xi]) throw Error(ErrorCode::unreachable, to_string(x) + " is not reachable from " + to_string(y));
  auto bwd = moves.backward(xi);
  const auto n = moves.size();

  int m = std::numeric_limits<int>::max();
  for (std::size_t u = 0; u < n; ++u) {
    if (!fwd[u]) continue;
    for (std::size_t v = 0; v < n; ++v)
      if (bwd[v] && moves.move(u, v)) m = std::min(m, moves.min_count(u, v, kind));
  }

  // BFS over (pattern, minimal layer seen yet).
  std::vector<int> dist(2 * n, -1);
  std::deque<std::size_t> q{2 * yi};
  dist[2 * yi] = 0;
  while (!q.empty()) {
    auto s = q.front();
    q.pop_front();
    auto u = s / 2;
    bool seen_min = s % 2 == 1;
    for (std::size_t v = 0; v < n; ++v) {
      if (!moves.move(u, v)) continue;
      for (bool flag : {seen_min, true}) {
        if (flag && !seen_min && moves.min_count(u, v, kind) != m) continue;
        auto t = 2 * v + (flag ? 1 : 0);
        if (dist[t] < 0) {
          dist[t] = dist[s] + 1;
          q.push_back(t);
        }
      }
    }
  }
  // On walks that end in x every configuration has count >= m, so a move carries a
  // count-m layer exactly when its minimal count equals m.
  return ExtremalReport{y, x, kind, m, dist[2 * xi + 1]};
}

inline ExtremalReport extremal_constants(const Graph& graph, const Pattern& y, const Pattern& x, BondKind kind) {
  return extremal_constants(LayerMoves(graph), y, x, kind);
}

/// max of l_{y,x} (or l'_{y,x}) over all reachable pairs of infected patterns.
inline int max_walk_length(const LayerMoves& moves, BondKind kind) {
  int best = 0;
  for (std::size_t y = 0; y < moves.size(); ++y) {
    auto fwd = moves.forward(y);
    for (std::size_t x = 0; x < moves.size(); ++x)
      if (fwd[x]) best = std::max(best, extremal_constants(moves, moves.patterns()[y], moves.patterns()[x], kind).l);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Decay rate

struct DecayEstimate {
  double rate = 0.0;
  long iterations = 0;
};

/// Spectral radius of a nonnegative n x n matrix (row-major) by power iteration from the
/// uniform vector.
inline DecayEstimate spectral_radius(const std::vector<double>& a, std::size_t n, double tolerance = 1e-10,
                                     long max_iterations = 1'000'000) {
  if (n == 0) return {};
  std::vector<double> v(n, 1.0 / static_cast<double>(n)), w(n);
  double lambda = 0.0;
  for (long it = 1; it <= max_iterations; ++it) {
    std::fill(w.begin(), w.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) w[j] += v[i] * a[i * n + j];
    double norm = 0.0;
    for (double e : w) norm += e;
    if (norm == 0.0) return {0.0, it};
    double change = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      w[j] /= norm;
      change += std::abs(w[j] - v[j]);
    }
    std::swap(v, w);
    bool settled = std::abs(norm - lambda) <= tolerance * norm && change <= tolerance;
    lambda = norm;
    if (settled) return {lambda, it};
  }
  throw Error(ErrorCode::no_convergence, "power iteration did not converge");
}

/// Spectral radius of the infected (non-†) block of a lumped kernel evaluated at p.
inline DecayEstimate estimate_decay_rate(const PolyMatrix& kernel, const Rational& p) {
  if (!(p > 0 && p < 1)) throw Error(ErrorCode::invalid_argument, "p must lie in (0,1)");
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < kernel.size(); ++i)
    if (!kernel.states[i].dagger) keep.push_back(i);
  const auto n = keep.size();
  std::vector<double> q(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) q[a * n + b] = kernel.at(keep[a], keep[b])(p).get_d();
  return spectral_radius(q, n);
}

}  // namespace layerperc
