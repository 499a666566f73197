#pragma once

// Onset of monotonicity, layered-graph connection polynomials, and the degree bound for
// the expected number of infected vertices per layer.

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "chain.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "parallel.hpp"
#include "pattern.hpp"
#include "polynomial.hpp"
#include "sturm.hpp"
#include "transition.hpp"

namespace layerperc {

inline constexpr int default_onset_cap = 64;

/// Everything the engine needs about one graph: the reduced and lumped kernels, the
/// stationary vector c_p alpha^- and the initial vector c_p alpha'.
struct ChainModel {
  Graph graph;
  PolyMatrix reduced;
  PolyMatrix lumped;
  PolyVector stationary;
  PolyVector initial;

  explicit ChainModel(const Graph& g, unsigned threads = 1)
      : graph(g),
        reduced(build_reduced_kernel(g, threads)),
        lumped(build_lumped_kernel(g, threads)),
        stationary(stationary_distribution(reduced)),
        initial(initial_distribution(stationary, lumped, g)) {}

  const IntPolynomial& normalizer() const { return stationary.normalizer; }

  /// c_p alpha' (pi')^n over the lumped states.
  std::vector<IntPolynomial> distribution(int n) const {
    std::lock_guard lock(*cache_mutex_);
    if (cache_.empty()) cache_.push_back(initial.entries);
    while (static_cast<int>(cache_.size()) <= n) cache_.push_back(multiply(cache_.back(), lumped));
    return cache_[static_cast<std::size_t>(n)];
  }

 private:
  mutable std::vector<std::vector<IntPolynomial>> cache_;
  std::shared_ptr<std::mutex> cache_mutex_ = std::make_shared<std::mutex>();
};

// ---------------------------------------------------------------------------
// Onset certificates

struct StateCertificate {
  std::string state;
  SignCertificate certificate;
  friend bool operator==(const StateCertificate&, const StateCertificate&) = default;
};

struct PairCertificate {
  std::string y;
  std::string x;
  SignCertificate certificate;
  friend bool operator==(const PairCertificate&, const PairCertificate&) = default;
};

struct StepCertificate {
  int n = 0;
  std::vector<StateCertificate> entries;

  bool nonnegative() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.certificate.nonnegative(); });
  }
  friend bool operator==(const StepCertificate&, const StepCertificate&) = default;
};

struct MatrixOnset {
  bool reached = false;  // false: cap hit before the matrix condition held
  int n_matrix = 0;      // when reached: smallest N with (pi'^N - pi'^{N+1}) >= 0 on the infected block
  int cap = default_onset_cap;
  std::vector<PairCertificate> verdicts;  // all infected pairs at n_matrix
  friend bool operator==(const MatrixOnset&, const MatrixOnset&) = default;
};

struct OnsetCertificate {
  std::string graph;
  bool reached = false;
  int n_matrix = 0;
  int n = 0;  // N(G)
  int cap = default_onset_cap;
  std::vector<StepCertificate> steps;      // n = 0 .. n_matrix - 1
  std::vector<PairCertificate> matrix_verdicts;
  std::string note;
  friend bool operator==(const OnsetCertificate&, const OnsetCertificate&) = default;
};

namespace detail {

inline const std::array<Rational, 7>& probe_points() {
  static const std::array<Rational, 7> points{Rational(1, 100), Rational(1, 10), Rational(1, 4), Rational(1, 2),
                                              Rational(3, 4),   Rational(9, 10), Rational(99, 100)};
  return points;
}

/// Cheap refutation: negative at one of a few rational points.
inline bool negative_somewhere(const IntPolynomial& q) {
  for (const auto& p : probe_points())
    if (sign_at(q, p) < 0) return true;
  return false;
}

inline std::vector<std::size_t> infected_indices(const PolyMatrix& lumped) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < lumped.size(); ++i)
    if (!lumped.states[i].dagger) out.push_back(i);
  return out;
}

}  // namespace detail

/// Smallest N such that pi'^N(y,x) - pi'^{N+1}(y,x) is nonnegative on (0,1) for all
/// infected y, x. Certificates are kept for the successful N only.
inline MatrixOnset matrix_onset(const PolyMatrix& lumped, int cap = default_onset_cap, unsigned threads = 1) {
  const auto idx = detail::infected_indices(lumped);
  const auto n = idx.size();
  std::vector<IntPolynomial> q(n * n), power(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) q[a * n + b] = lumped.at(idx[a], idx[b]);
    power[a * n + a] = IntPolynomial(1);
  }
  MatrixOnset out;
  out.cap = cap;
  for (int step = 0; step <= cap; ++step) {
    std::vector<IntPolynomial> next(n * n);
    parallel_for(n, threads, [&](std::size_t a) {
      for (std::size_t k = 0; k < n; ++k) {
        const auto& pk = power[a * n + k];
        if (pk.is_zero()) continue;
        for (std::size_t b = 0; b < n; ++b)
          if (!q[k * n + b].is_zero()) next[a * n + b] += pk * q[k * n + b];
      }
    });
    std::vector<IntPolynomial> diff(n * n);
    bool refuted = false;
    for (std::size_t e = 0; e < n * n && !refuted; ++e) {
      diff[e] = power[e] - next[e];
      refuted = detail::negative_somewhere(diff[e]);
    }
    if (!refuted) {
      std::vector<SignCertificate> certs(n * n);
      parallel_for(n * n, threads, [&](std::size_t e) { certs[e] = certify_sign(diff[e], Interval::unit()); });
      if (std::all_of(certs.begin(), certs.end(), [](const auto& c) { return c.nonnegative(); })) {
        out.reached = true;
        out.n_matrix = step;
        for (std::size_t e = 0; e < n * n; ++e)
          out.verdicts.push_back({to_string(lumped.states[idx[e / n]]), to_string(lumped.states[idx[e % n]]), certs[e]});
        return out;
      }
    }
    power = std::move(next);
  }
  return out;
}

/// Certifies A(p,n) = c_p alpha' pi'^n - c_p alpha' pi'^{n+1} on the infected states for
/// n < N_matrix and derives N(G).
inline OnsetCertificate vector_onset(const ChainModel& model, const MatrixOnset& matrix, unsigned threads = 1) {
  OnsetCertificate out;
  out.graph = model.graph.descriptor();
  out.reached = matrix.reached;
  out.cap = matrix.cap;
  out.n_matrix = matrix.n_matrix;
  out.matrix_verdicts = matrix.verdicts;
  out.note =
      "entries are certified on infected states only; the dagger coordinate absorbs mass and is excluded";
  if (!matrix.reached) {
    out.n = matrix.cap;
    return out;
  }
  const auto idx = detail::infected_indices(model.lumped);
  for (int n = 0; n < matrix.n_matrix; ++n) {
    auto now = model.distribution(n);
    auto next = model.distribution(n + 1);
    StepCertificate step;
    step.n = n;
    step.entries.resize(idx.size());
    parallel_for(idx.size(), threads, [&](std::size_t k) {
      auto i = idx[k];
      step.entries[k] = {to_string(model.lumped.states[i]), certify_sign(now[i] - next[i], Interval::unit())};
    });
    out.steps.push_back(std::move(step));
  }
  out.n = matrix.n_matrix;
  while (out.n > 0 && out.steps[static_cast<std::size_t>(out.n - 1)].nonnegative()) --out.n;
  return out;
}

inline OnsetCertificate compute_onset(const ChainModel& model, int cap = default_onset_cap, unsigned threads = 1) {
  return vector_onset(model, matrix_onset(model.lumped, cap, threads), threads);
}

// ---------------------------------------------------------------------------
// Connection probabilities

/// For each lumped state x (infected pattern at layer n): the c_p-scaled probability
/// that (v, n) is infected given X_n = x, summing over the uninfected pattern y of
/// layer n+1 seen from above (distributed as alpha^-) and the vertical bonds z between
/// the two layers.
inline std::vector<IntPolynomial> connection_weights(const ChainModel& model, Vertex v) {
  const Graph& g = model.graph;
  const int k = g.vertex_count();
  if (v < 0 || v >= k) throw Error(ErrorCode::invalid_argument, "vertex out of range");
  const auto weights = layer_weights(k);
  std::vector<IntPolynomial> out(model.lumped.size());
  for (std::size_t i = 0; i < model.lumped.size(); ++i) {
    const auto& sx = model.lumped.states[i];
    if (sx.dagger) continue;
    const Pattern& x = sx.pattern;
    IntPolynomial total;
    for (std::size_t j = 0; j < model.stationary.states.size(); ++j) {
      const Pattern& y = model.stationary.states[j].pattern;
      std::vector<std::uint64_t> hits(static_cast<std::size_t>(k) + 1, 0);
      for (std::uint32_t bits = 0; bits < (1U << static_cast<unsigned>(k)); ++bits) {
        // 0 = *, 1..k = layer n, k+1..2k = layer n+1
        UnionFind uf(static_cast<std::size_t>(2 * k + 1));
        std::vector<int> first_x(static_cast<std::size_t>(k + 1), -1), first_y(static_cast<std::size_t>(k + 1), -1);
        for (Vertex u = 0; u < k; ++u) {
          auto low = static_cast<std::size_t>(1 + u), high = static_cast<std::size_t>(1 + k + u);
          int bx = x.block_of_vertex(u);
          if (bx == 0) uf.unite(0, low);
          if (first_x[static_cast<std::size_t>(bx)] < 0) first_x[static_cast<std::size_t>(bx)] = u;
          else uf.unite(static_cast<std::size_t>(1 + first_x[static_cast<std::size_t>(bx)]), low);
          int by = y.block_of_vertex(u);
          if (first_y[static_cast<std::size_t>(by)] < 0) first_y[static_cast<std::size_t>(by)] = u;
          else uf.unite(static_cast<std::size_t>(1 + k + first_y[static_cast<std::size_t>(by)]), high);
          if ((bits >> static_cast<unsigned>(u)) & 1U) uf.unite(low, high);
        }
        if (uf.same(0, static_cast<std::size_t>(1 + v))) ++hits[static_cast<std::size_t>(std::popcount(bits))];
      }
      IntPolynomial w = weigh(hits, weights);
      if (!w.is_zero()) total += w * model.stationary.entries[j];
    }
    out[i] = std::move(total);
  }
  return out;
}

/// c_p^2 P_p((o,0) <-> (v,n)) from precomputed connection_weights(model, v).
inline IntPolynomial connection_polynomial(const ChainModel& model, int n, const std::vector<IntPolynomial>& weights) {
  if (n < 0) throw Error(ErrorCode::invalid_argument, "n must be >= 0");
  auto dist = model.distribution(n);
  IntPolynomial out;
  for (std::size_t i = 0; i < dist.size(); ++i)
    if (!dist[i].is_zero() && !weights[i].is_zero()) out += dist[i] * weights[i];
  return out;
}

inline IntPolynomial connection_polynomial(const ChainModel& model, Vertex v, int n) {
  return connection_polynomial(model, n, connection_weights(model, v));
}

/// c_p^2 E_p(W_n).
inline IntPolynomial expected_infected_polynomial(const ChainModel& model, int n) {
  IntPolynomial out;
  for (Vertex v = 0; v < model.graph.vertex_count(); ++v) out += connection_polynomial(model, v, n);
  return out;
}

// ---------------------------------------------------------------------------
// Conjecture certificate

enum class ConjectureVerdict { proven, counterexample, inconclusive };

inline const char* to_string(ConjectureVerdict v) {
  switch (v) {
    case ConjectureVerdict::proven: return "proven";
    case ConjectureVerdict::counterexample: return "counterexample";
    case ConjectureVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct ConnectionCheck {
  Vertex v = 0;
  int n = 0;
  SignCertificate certificate;  // of c_p^2 (P(o <-> (v,n)) - P(o <-> (v,n+1)))
  friend bool operator==(const ConnectionCheck&, const ConnectionCheck&) = default;
};

struct ConjectureWitness {
  Vertex v = 0;
  int n = 0;
  Interval interval;
  friend bool operator==(const ConjectureWitness&, const ConjectureWitness&) = default;
};

struct ConjectureCertificate {
  std::string graph;
  OnsetCertificate onset;
  std::vector<ConnectionCheck> finite_range;
  ConjectureVerdict verdict = ConjectureVerdict::inconclusive;
  std::optional<ConjectureWitness> witness;
  friend bool operator==(const ConjectureCertificate&, const ConjectureCertificate&) = default;
};

/// Onset plus exact checks of P((o,0) <-> (v,n)) >= P((o,0) <-> (v,n+1)) for n < N(G);
/// steps n >= N(G) follow from pattern monotonicity.
inline ConjectureCertificate verify_conjecture(const ChainModel& model, int cap = default_onset_cap,
                                               unsigned threads = 1) {
  ConjectureCertificate out;
  out.graph = model.graph.descriptor();
  out.onset = compute_onset(model, cap, threads);
  if (!out.onset.reached) {
    out.verdict = ConjectureVerdict::inconclusive;
    return out;
  }
  const int k = model.graph.vertex_count();
  out.finite_range.resize(static_cast<std::size_t>(out.onset.n * k));
  parallel_for(static_cast<std::size_t>(k), threads, [&](std::size_t vi) {
    auto v = static_cast<Vertex>(vi);
    auto w = connection_weights(model, v);
    for (int n = 0; n < out.onset.n; ++n) {
      auto diff = connection_polynomial(model, n, w) - connection_polynomial(model, n + 1, w);
      out.finite_range[static_cast<std::size_t>(n * k) + vi] = {v, n, certify_sign(diff, Interval::unit())};
    }
  });
  out.verdict = ConjectureVerdict::proven;
  for (const auto& c : out.finite_range)
    if (!c.certificate.nonnegative()) {
      out.verdict = ConjectureVerdict::counterexample;
      out.witness = ConjectureWitness{c.v, c.n, c.certificate.witness.value_or(c.certificate.interval)};
      break;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Degree bound

struct DegreeBoundRow {
  int max_degree = 0;
  Rational p;  // 1 / (Delta + 1.4)
  Rational g;  // f_Delta(p)
  Rational h;  // upper bound for g, decreasing in Delta
  bool g_ok = false;
  bool h_ok = false;
  friend bool operator==(const DegreeBoundRow&, const DegreeBoundRow&) = default;
};

inline Rational degree_bound_p(int max_degree) { return make_rational(10, 10L * max_degree + 14); }

/// f_Delta(p) = A + A^2 Delta p^2 / (1 - (Delta+1) p) with A = p(1+p) / (1 - (Delta-1) p).
inline Rational f_delta(int max_degree, const Rational& p) {
  const Rational d(max_degree);
  Rational a = p * (1 + p) / (1 - (d - 1) * p);
  return a + a * a * d * p * p / (1 - (d + 1) * p);
}

inline Rational h_delta(int max_degree) {
  Rational p = degree_bound_p(max_degree);
  // ((1 + p) / 2.4) (1 + 1 / 0.96)
  return (1 + p) / Rational(12, 5) * (1 + Rational(25, 24));
}

inline std::vector<DegreeBoundRow> degree_bound_report(int max_degree) {
  if (max_degree < 0) throw Error(ErrorCode::invalid_argument, "max degree must be >= 0");
  std::vector<DegreeBoundRow> rows;
  for (int d = 0; d <= max_degree; ++d) {
    DegreeBoundRow r;
    r.max_degree = d;
    r.p = degree_bound_p(d);
    r.g = f_delta(d, r.p);
    r.h = h_delta(d);
    r.g_ok = r.g <= 1;
    r.h_ok = r.h <= 1;
    rows.push_back(r);
  }
  return rows;
}

struct ExpectedCountCheck {
  int n = 0;
  SignCertificate certificate;  // of c_p^2 (E(W_n) - E(W_{n+1}))
  friend bool operator==(const ExpectedCountCheck&, const ExpectedCountCheck&) = default;
};

/// Certifies E_p(W_n) >= E_p(W_{n+1}) for n = 0..n_max on (0, 1/(Delta + 1.4)]. Delta
/// defaults to the graph's maximum degree.
inline std::vector<ExpectedCountCheck> verify_expected_count_monotonicity(const ChainModel& model, int n_max,
                                                                          std::optional<int> max_degree = {}) {
  const int d = max_degree.value_or(model.graph.max_degree());
  const Interval range = Interval::open_closed(0, degree_bound_p(d));
  std::vector<IntPolynomial> expected;
  for (int n = 0; n <= n_max + 1; ++n) expected.push_back(expected_infected_polynomial(model, n));
  std::vector<ExpectedCountCheck> out;
  for (int n = 0; n <= n_max; ++n)
    out.push_back({n, certify_sign(expected[static_cast<std::size_t>(n)] - expected[static_cast<std::size_t>(n + 1)], range)});
  return out;
}

}  // namespace layerperc
