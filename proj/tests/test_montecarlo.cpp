#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

#include "layerperc/monotonicity.hpp"
#include "layerperc/montecarlo.hpp"

using namespace layerperc;

namespace {

double ratio(const IntPolynomial& num, const IntPolynomial& den, const Rational& t) {
  return Rational(num(t) / den(t)).get_d();
}

}  // namespace

TEST(Sampler, ReproducibleFromSeed) {
  auto g = make_cycle(3);
  const Rational p(1, 2);
  auto a = sample_layer_chain(g, p, 4, 99);
  auto b = sample_layer_chain(g, p, 4, 99);
  EXPECT_EQ(a.patterns, b.patterns);
  EXPECT_EQ(a.depth, b.depth);
  auto s1 = simulate(g, p, 3, 5000, 7, 1);
  auto s2 = simulate(g, p, 3, 5000, 7, 1);
  auto s3 = simulate(g, p, 3, 5000, 7, 3);
  EXPECT_EQ(s1.connected, s2.connected);
  EXPECT_EQ(s1.connected, s3.connected);
  EXPECT_EQ(s1.infected, s3.infected);
  EXPECT_EQ(s1.initial_counts, s3.initial_counts);
  EXPECT_EQ(s1.total_depth, s3.total_depth);
  EXPECT_NE(simulate(g, p, 3, 5000, 8, 1).connected, s1.connected);
}

TEST(Sampler, RejectsDegenerateP) {
  EXPECT_THROW(ChainSampler(make_cycle(2), Rational(0)), Error);
  EXPECT_THROW(ChainSampler(make_cycle(2), Rational(1)), Error);
  EXPECT_THROW(estimate_connection(make_cycle(2), Rational(1, 2), 5, 0, 10, 1), Error);
}

TEST(Sampler, OriginAlwaysInfectedAtLayerZero) {
  for (Vertex o : {0, 2}) {
    auto g = make_cycle(4, o);
    auto s = simulate(g, Rational(3, 5), 0, 3000, 1);
    for (const auto& [x, c] : s.initial_counts) EXPECT_TRUE(x.vertex_infected(o)) << to_string(x);
    EXPECT_EQ(s.connection(o, 0).estimate, 1.0);
    EXPECT_EQ(s.pattern_infection(o, 0).estimate, 1.0);
  }
}

TEST(Sampler, SparseBondsLeaveOriginAlone) {
  auto g = make_cycle(2);
  auto s = simulate(g, Rational(1, 100), 0, 4000, 3);
  EXPECT_GT(static_cast<double>(s.initial_counts[parse_pattern("*,0|1", 2)]) / 4000.0, 0.9);
}

TEST(Sampler, InfectedImpliesConnected) {
  auto g = make_cycle(3);
  ChainSampler sampler(g, Rational(1, 2));
  ChainSampler::Engine rng(5);
  for (int s = 0; s < 2000; ++s) {
    auto w = sampler.draw_window(3, rng);
    auto xs = sampler.patterns(w, 3);
    auto joined = window_connections(g, w, 3);
    for (int n = 0; n <= 3; ++n)
      for (Vertex v = 0; v < 3; ++v)
        if (xs[static_cast<std::size_t>(n)].vertex_infected(v)) {
          ASSERT_TRUE(joined[static_cast<std::size_t>(n)][static_cast<std::size_t>(v)]);
        }
  }
}

TEST(Window, HandBuiltConnections) {
  auto g = make_cycle(2);  // bit 0: edge, bit 1: vertical at 0, bit 2: vertical at 1
  BondWindow w;
  w.depth = 0;
  w.top = 2;
  w.configs = {BondConfig{0b011}};
  auto j = window_connections(g, w, 1);
  EXPECT_TRUE(j[0][0]);
  EXPECT_FALSE(j[0][1]);
  EXPECT_TRUE(j[1][0]);
  EXPECT_TRUE(j[1][1]);
  w.configs = {BondConfig{0b101}};
  j = window_connections(g, w, 1);
  EXPECT_FALSE(j[1][0]);
  EXPECT_FALSE(j[1][1]);
  EXPECT_FALSE(j[0][1]);
  // a path that dips below layer 0 and comes back
  w.depth = 1;
  w.top = 2;
  w.configs = {BondConfig{0b111}, BondConfig{0b000}};  // layers 0 and 1
  j = window_connections(g, w, 1);
  EXPECT_TRUE(j[0][1]);
  EXPECT_FALSE(j[1][0]);
}

TEST(Sampler, DepthIsGeometric) {
  for (const Rational& p : {Rational(3, 10), Rational(1, 2)}) {
    auto g = make_cycle(2);
    auto s = simulate(g, p, 0, 20000, 11);
    double closed = std::pow(1.0 - p.get_d(), g.bonds_per_layer());
    double want = (1.0 - closed) / closed;
    EXPECT_GT(s.mean_depth(), want / 1.2);
    EXPECT_LT(s.mean_depth(), want * 1.2);
  }
}

TEST(Oracle, InitialPatternsFitStationaryLaw) {
  ChainModel m(make_cycle(2));
  for (const Rational& p : {Rational(3, 10), Rational(1, 2), Rational(7, 10)}) {
    const std::uint64_t samples = 20000;
    auto s = simulate(m.graph, p, 0, samples, 17);
    double stat = 0.0;
    int cells = 0;
    std::uint64_t seen = 0;
    for (std::size_t i = 0; i < m.lumped.size(); ++i) {
      double prob = ratio(m.initial.entries[i], m.normalizer(), p);
      if (m.lumped.states[i].dagger) continue;
      auto it = s.initial_counts.find(m.lumped.states[i].pattern);
      std::uint64_t observed = it == s.initial_counts.end() ? 0 : it->second;
      seen += observed;
      if (prob == 0.0) {
        EXPECT_EQ(observed, 0U);
        continue;
      }
      double expected = prob * static_cast<double>(samples);
      stat += (static_cast<double>(observed) - expected) * (static_cast<double>(observed) - expected) / expected;
      ++cells;
    }
    EXPECT_EQ(seen, samples);
    boost::math::chi_squared dist(cells - 1);
    EXPECT_GT(boost::math::cdf(boost::math::complement(dist, stat)), 1e-4) << p.get_d();
  }
}

TEST(Oracle, ConnectionAgreesWithExactValue) {
  ChainModel m(make_cycle(2));
  const Rational p(1, 2);
  const auto c2 = m.normalizer() * m.normalizer();
  auto s = simulate(m.graph, p, 2, 20000, 23);
  for (int n = 0; n <= 2; ++n)
    for (Vertex v = 0; v < 2; ++v) {
      double exact = ratio(connection_polynomial(m, v, n), c2, p);
      auto est = s.connection(v, n);
      double sigma = std::max(est.standard_error, 1e-3);
      EXPECT_LT(std::abs(est.estimate - exact), 4 * sigma) << v << " " << n << " exact " << exact;
    }
  double expected_one = ratio(expected_infected_polynomial(m, 1), c2, p);
  double mc = s.connection(0, 1).estimate + s.connection(1, 1).estimate;
  EXPECT_NEAR(mc, expected_one, 0.03);
}

TEST(Oracle, OriginAtLayerZeroIsCertain) {
  auto st = estimate_connection(make_cycle(3), Rational(1, 3), 0, 0, 1000, 2);
  EXPECT_EQ(st.samples, 1000U);
  EXPECT_EQ(st.successes, 1000U);
  EXPECT_EQ(st.estimate, 1.0);
  EXPECT_EQ(st.standard_error, 0.0);
}

TEST(Seeding, ChunkSeedsDiffer) {
  EXPECT_NE(chunk_seed(1, 0), chunk_seed(1, 1));
  EXPECT_NE(chunk_seed(1, 0), chunk_seed(2, 0));
  // reference value of splitmix64 on input 0
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
}
