#pragma once

// JSON forms of every artifact, plus the graph-file loader. Polynomials are arrays of
// exact "num/den" coefficient strings in ascending degree.

#include <algorithm>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "chain.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "monotonicity.hpp"
#include "montecarlo.hpp"
#include "pattern.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "sturm.hpp"
#include "transition.hpp"

namespace layerperc {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Scalars and polynomials

inline Json rational_json(const Rational& q) { return to_string(q); }

inline Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw Error(ErrorCode::parse_error, "expected a rational string");
  return parse_rational(j.get<std::string>());
}

template <class Coeff>
Json polynomial_json(const BasicPolynomial<Coeff>& q) {
  Json out = Json::array();
  for (const auto& c : q.coefficients()) out.push_back(to_string(Rational(c)));
  return out;
}

inline Polynomial polynomial_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::parse_error, "polynomial must be an array");
  std::vector<Rational> coeffs;
  for (const auto& c : j) coeffs.push_back(rational_from_json(c));
  return Polynomial(std::move(coeffs));
}

/// Integer-coefficient polynomial; rejects fractional coefficients.
inline IntPolynomial int_polynomial_from_json(const Json& j) {
  auto q = polynomial_from_json(j);
  std::vector<Integer> coeffs;
  for (const auto& c : q.coefficients()) {
    if (c.get_den() != 1) throw Error(ErrorCode::parse_error, "expected integer coefficients");
    coeffs.push_back(c.get_num());
  }
  return IntPolynomial(std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Patterns

/// Number of vertices named in a serialized pattern ("*,0|1" has 2).
inline int pattern_vertex_count(std::string_view text) {
  return static_cast<int>(std::count(text.begin(), text.end(), ',') + std::count(text.begin(), text.end(), '|'));
}

inline Pattern pattern_from_string(const std::string& text) { return parse_pattern(text, pattern_vertex_count(text)); }

inline void to_json(Json& j, const Pattern& x) { j = to_string(x); }
inline void from_json(const Json& j, Pattern& x) { x = pattern_from_string(j.get<std::string>()); }

inline void to_json(Json& j, const PatternClass& c) { j = to_string(c); }
inline void from_json(const Json& j, PatternClass& c) {
  auto s = j.get<std::string>();
  c = s == "dagger" ? PatternClass::lumped() : PatternClass::full(pattern_from_string(s));
}

// ---------------------------------------------------------------------------
// Matrices and vectors

inline void to_json(Json& j, const PolyMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.size(); ++k) row.push_back(polynomial_json(m.at(i, k)));
    rows.push_back(std::move(row));
  }
  j = Json{{"states", m.states}, {"entries", std::move(rows)}};
}

inline void from_json(const Json& j, PolyMatrix& m) {
  m = PolyMatrix(j.at("states").get<std::vector<PatternClass>>());
  const auto& rows = j.at("entries");
  if (rows.size() != m.size()) throw Error(ErrorCode::parse_error, "matrix is not square");
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (rows[i].size() != m.size()) throw Error(ErrorCode::parse_error, "matrix is not square");
    for (std::size_t k = 0; k < m.size(); ++k) m.at(i, k) = int_polynomial_from_json(rows[i][k]);
  }
}

inline void to_json(Json& j, const PolyVector& v) {
  Json entries = Json::array();
  for (const auto& e : v.entries) entries.push_back(polynomial_json(e));
  j = Json{{"states", v.states}, {"c_p", polynomial_json(v.normalizer)}, {"entries", std::move(entries)}};
}

inline void from_json(const Json& j, PolyVector& v) {
  v.states = j.at("states").get<std::vector<PatternClass>>();
  v.normalizer = int_polynomial_from_json(j.at("c_p"));
  v.entries.clear();
  for (const auto& e : j.at("entries")) v.entries.push_back(int_polynomial_from_json(e));
  if (v.entries.size() != v.states.size()) throw Error(ErrorCode::parse_error, "entries and states differ in length");
}

// ---------------------------------------------------------------------------
// Sign certificates

inline void to_json(Json& j, const Interval& i) {
  j = Json{{"lower", rational_json(i.lower)},
           {"upper", rational_json(i.upper)},
           {"lower_closed", i.lower_closed},
           {"upper_closed", i.upper_closed}};
}

inline void from_json(const Json& j, Interval& i) {
  i.lower = rational_from_json(j.at("lower"));
  i.upper = rational_from_json(j.at("upper"));
  i.lower_closed = j.at("lower_closed").get<bool>();
  i.upper_closed = j.at("upper_closed").get<bool>();
}

inline void to_json(Json& j, const SignCertificate& c) {
  j = Json{{"verdict", to_string(c.verdict)}, {"interval", c.interval}};
  if (c.witness) j["witness"] = *c.witness;
}

inline void from_json(const Json& j, SignCertificate& c) {
  c.verdict = parse_verdict(j.at("verdict").get<std::string>());
  c.interval = j.at("interval").get<Interval>();
  c.witness.reset();
  if (j.contains("witness")) c.witness = j.at("witness").get<Interval>();
}

inline void to_json(Json& j, const StateCertificate& c) { j = Json{{"state", c.state}, {"certificate", c.certificate}}; }
inline void from_json(const Json& j, StateCertificate& c) {
  c.state = j.at("state").get<std::string>();
  c.certificate = j.at("certificate").get<SignCertificate>();
}

inline void to_json(Json& j, const PairCertificate& c) {
  j = Json{{"y", c.y}, {"x", c.x}, {"certificate", c.certificate}};
}
inline void from_json(const Json& j, PairCertificate& c) {
  c.y = j.at("y").get<std::string>();
  c.x = j.at("x").get<std::string>();
  c.certificate = j.at("certificate").get<SignCertificate>();
}

inline void to_json(Json& j, const StepCertificate& c) { j = Json{{"n", c.n}, {"entries", c.entries}}; }
inline void from_json(const Json& j, StepCertificate& c) {
  c.n = j.at("n").get<int>();
  c.entries = j.at("entries").get<std::vector<StateCertificate>>();
}

inline void to_json(Json& j, const OnsetCertificate& c) {
  j = Json{{"graph", c.graph},   {"reached", c.reached}, {"N_matrix", c.n_matrix},
           {"N", c.n},           {"cap", c.cap},         {"steps", c.steps},
           {"matrix_verdicts", c.matrix_verdicts},       {"note", c.note}};
}

inline void from_json(const Json& j, OnsetCertificate& c) {
  c.graph = j.at("graph").get<std::string>();
  c.reached = j.at("reached").get<bool>();
  c.n_matrix = j.at("N_matrix").get<int>();
  c.n = j.at("N").get<int>();
  c.cap = j.at("cap").get<int>();
  c.steps = j.at("steps").get<std::vector<StepCertificate>>();
  c.matrix_verdicts = j.at("matrix_verdicts").get<std::vector<PairCertificate>>();
  c.note = j.at("note").get<std::string>();
}

inline void to_json(Json& j, const ConnectionCheck& c) {
  j = Json{{"v", c.v}, {"n", c.n}, {"certificate", c.certificate}};
}
inline void from_json(const Json& j, ConnectionCheck& c) {
  c.v = j.at("v").get<Vertex>();
  c.n = j.at("n").get<int>();
  c.certificate = j.at("certificate").get<SignCertificate>();
}

inline ConjectureVerdict parse_conjecture_verdict(const std::string& s) {
  for (auto v : {ConjectureVerdict::proven, ConjectureVerdict::counterexample, ConjectureVerdict::inconclusive})
    if (s == to_string(v)) return v;
  throw Error(ErrorCode::parse_error, "unknown conjecture verdict " + s);
}

inline void to_json(Json& j, const ConjectureCertificate& c) {
  j = Json{{"graph", c.graph},
           {"onset", c.onset},
           {"finite_range", c.finite_range},
           {"verdict", to_string(c.verdict)}};
  if (c.witness) j["witness"] = Json{{"v", c.witness->v}, {"n", c.witness->n}, {"interval", c.witness->interval}};
}

inline void from_json(const Json& j, ConjectureCertificate& c) {
  c.graph = j.at("graph").get<std::string>();
  c.onset = j.at("onset").get<OnsetCertificate>();
  c.finite_range = j.at("finite_range").get<std::vector<ConnectionCheck>>();
  c.verdict = parse_conjecture_verdict(j.at("verdict").get<std::string>());
  c.witness.reset();
  if (j.contains("witness")) {
    const auto& w = j.at("witness");
    c.witness = ConjectureWitness{w.at("v").get<Vertex>(), w.at("n").get<int>(), w.at("interval").get<Interval>()};
  }
}

inline void to_json(Json& j, const ExpectedCountCheck& c) { j = Json{{"n", c.n}, {"certificate", c.certificate}}; }
inline void from_json(const Json& j, ExpectedCountCheck& c) {
  c.n = j.at("n").get<int>();
  c.certificate = j.at("certificate").get<SignCertificate>();
}

// ---------------------------------------------------------------------------
// Reports

inline void to_json(Json& j, const ExtremalReport& r) {
  j = Json{{"y", r.y}, {"x", r.x}, {"kind", r.kind == BondKind::open ? "open" : "closed"}, {"m", r.m}, {"l", r.l}};
}

inline void from_json(const Json& j, ExtremalReport& r) {
  r.y = j.at("y").get<Pattern>();
  r.x = j.at("x").get<Pattern>();
  auto kind = j.at("kind").get<std::string>();
  if (kind != "open" && kind != "closed") throw Error(ErrorCode::parse_error, "unknown bond kind " + kind);
  r.kind = kind == "open" ? BondKind::open : BondKind::closed;
  r.m = j.at("m").get<int>();
  r.l = j.at("l").get<int>();
}

inline void to_json(Json& j, const DegreeBoundRow& r) {
  j = Json{{"max_degree", r.max_degree}, {"p", rational_json(r.p)}, {"g", rational_json(r.g)},
           {"h", rational_json(r.h)},    {"g_le_1", r.g_ok},      {"h_le_1", r.h_ok}};
}

inline void from_json(const Json& j, DegreeBoundRow& r) {
  r.max_degree = j.at("max_degree").get<int>();
  r.p = rational_from_json(j.at("p"));
  r.g = rational_from_json(j.at("g"));
  r.h = rational_from_json(j.at("h"));
  r.g_ok = j.at("g_le_1").get<bool>();
  r.h_ok = j.at("h_le_1").get<bool>();
}

inline void to_json(Json& j, const SampleStats& s) {
  j = Json{{"samples", s.samples},
           {"successes", s.successes},
           {"estimate", s.estimate},
           {"standard_error", s.standard_error}};
}

inline void from_json(const Json& j, SampleStats& s) {
  s.samples = j.at("samples").get<std::uint64_t>();
  s.successes = j.at("successes").get<std::uint64_t>();
  s.estimate = j.at("estimate").get<double>();
  s.standard_error = j.at("standard_error").get<double>();
}

// ---------------------------------------------------------------------------
// Graph files

inline void to_json(Json& j, const Graph& g) {
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  j = Json{{"vertices", g.vertex_count()}, {"edges", std::move(edges)}, {"origin", g.origin()}};
}

/// Reads {"vertices", "edges", "origin"}. "vertices" is a count or a list of labels;
/// labels are renumbered 0..k-1 in listed order and edges/origin refer to them.
inline Graph graph_from_json(const Json& doc) {
  auto fail = [](const std::string& why) -> Graph { throw Error(ErrorCode::parse_error, "graph file: " + why); };
  if (!doc.is_object()) return fail("expected an object");
  for (const auto& key : {"vertices", "edges", "origin"})
    if (!doc.contains(key)) return fail(std::string("missing field ") + key);
  if (doc.contains("directed") && doc.at("directed").is_boolean() && doc.at("directed").get<bool>())
    return fail("directed graphs are not supported");
  if (doc.contains("weights")) return fail("weighted graphs are not supported");

  std::map<std::string, Vertex> label_index;
  int count = 0;
  const auto& vertices = doc.at("vertices");
  if (vertices.is_number_integer()) {
    count = vertices.get<int>();
    for (int v = 0; v < count; ++v) label_index[std::to_string(v)] = v;
  } else if (vertices.is_array()) {
    for (const auto& label : vertices) {
      auto key = label.is_string() ? label.get<std::string>() : label.dump();
      if (label_index.count(key) != 0) return fail("repeated vertex label " + key);
      label_index[key] = count++;
    }
  } else {
    return fail("vertices must be a count or a list");
  }
  auto vertex = [&](const Json& label, ErrorCode missing) -> Vertex {
    auto key = label.is_string() ? label.get<std::string>() : label.dump();
    auto it = label_index.find(key);
    if (it == label_index.end()) throw Error(missing, "unknown vertex " + key);
    return it->second;
  };
  std::vector<Edge> edges;
  if (!doc.at("edges").is_array()) return fail("edges must be a list");
  for (const auto& e : doc.at("edges")) {
    if (!e.is_array() || e.size() != 2) return fail("each edge must be a pair");
    edges.emplace_back(vertex(e[0], ErrorCode::invalid_argument), vertex(e[1], ErrorCode::invalid_argument));
  }
  const Vertex origin = vertex(doc.at("origin"), ErrorCode::origin_out_of_range);
  return Graph(count, std::move(edges), origin);
}

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot open " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::parse_error, path + ": " + e.what());
  }
  return graph_from_json(doc);
}

}  // namespace layerperc
