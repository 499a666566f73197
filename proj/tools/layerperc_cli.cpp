// Command-line front end: layerperc <command> [graph] [options]

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "layerperc/layerperc.hpp"

namespace lp = layerperc;

namespace {

struct Config {
  std::string command;
  std::string graph;
  std::optional<int> origin;
  std::optional<int> n;
  std::optional<int> n_max;
  std::optional<int> vertex;
  std::optional<std::string> p;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  int cap = lp::default_onset_cap;
  std::string out;
  std::string format = "json";
  unsigned threads = 0;
  std::optional<int> max_degree;
  std::string kind;
  std::optional<std::string> y;
  std::optional<std::string> x;
};

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_counterexample = 2;
constexpr int exit_inconclusive = 3;

struct Output {
  lp::Json json;
  std::string csv;  // set by table commands when --format csv
  int code = exit_ok;
};

lp::Graph resolve_graph(const Config& c) {
  if (c.graph.empty()) throw lp::Error(lp::ErrorCode::invalid_argument, "a graph is required (cycle:k, path:k or a JSON file)");
  lp::Graph g = c.graph.find(':') != std::string::npos && c.graph.find('/') == std::string::npos &&
                        c.graph.find(".json") == std::string::npos
                    ? lp::make_builtin(c.graph)
                    : lp::load_graph(c.graph);
  return c.origin ? g.with_origin(*c.origin) : g;
}

template <class T>
const T& require(const std::optional<T>& v, const char* flag) {
  if (!v) throw lp::Error(lp::ErrorCode::invalid_argument, std::string(flag) + " is required for this command");
  return *v;
}

lp::Rational require_p(const Config& c) { return lp::parse_rational(require(c.p, "--p")); }

lp::BondKind parse_kind(const std::string& s) {
  if (s.empty() || s == "open") return lp::BondKind::open;
  if (s == "closed") return lp::BondKind::closed;
  throw lp::Error(lp::ErrorCode::invalid_argument, "--kind must be open or closed");
}

Output cmd_states(const Config& c) {
  auto g = resolve_graph(c);
  auto all = lp::enumerate_patterns(g);
  std::size_t infected = 0;
  for (const auto& x : all) infected += x.is_infected() ? 1 : 0;
  auto reduced = lp::build_reduced_kernel(g, c.threads);
  auto lumped = lp::build_lumped_kernel(g, c.threads);
  Output o;
  o.json = {{"graph", g.descriptor()},
            {"vertices", g.vertex_count()},
            {"M", all.size()},
            {"M_star", infected},
            {"M_dagger", all.size() - infected},
            {"M_minus", reduced.size()},
            {"M_prime", lumped.size()},
            {"M_minus_states", reduced.states},
            {"M_prime_states", lumped.states}};
  std::ostringstream csv;
  csv << "set,count\nM," << all.size() << "\nM_star," << infected << "\nM_dagger," << all.size() - infected
      << "\nM_minus," << reduced.size() << "\nM_prime," << lumped.size() << "\n";
  o.csv = csv.str();
  return o;
}

Output cmd_kernel(const Config& c) {
  auto g = resolve_graph(c);
  const std::string kind = c.kind.empty() ? "lumped" : c.kind;
  lp::PolyMatrix m;
  if (kind == "full") m = lp::build_full_kernel(g, c.threads);
  else if (kind == "reduced") m = lp::build_reduced_kernel(g, c.threads);
  else if (kind == "lumped") m = lp::build_lumped_kernel(g, c.threads);
  else throw lp::Error(lp::ErrorCode::invalid_argument, "--kind must be full, reduced or lumped");
  Output o;
  o.json = {{"graph", g.descriptor()}, {"kind", kind}, {"kernel", m}};
  return o;
}

Output cmd_stationary(const Config& c) {
  lp::ChainModel model(resolve_graph(c), c.threads);
  Output o;
  o.json = {{"graph", model.graph.descriptor()}, {"stationary", model.stationary}, {"initial", model.initial}};
  return o;
}

Output cmd_onset(const Config& c) {
  lp::ChainModel model(resolve_graph(c), c.threads);
  auto cert = lp::compute_onset(model, c.cap, c.threads);
  Output o;
  o.json = cert;
  o.code = cert.reached ? exit_ok : exit_inconclusive;
  if (cert.reached)
    std::cerr << cert.graph << ": N(G) = " << cert.n << ", N_matrix = " << cert.n_matrix << "\n";
  else
    std::cerr << cert.graph << ": cap " << cert.cap << " reached before the matrix condition held\n";
  return o;
}

Output cmd_verify(const Config& c) {
  lp::ChainModel model(resolve_graph(c), c.threads);
  auto cert = lp::verify_conjecture(model, c.cap, c.threads);
  Output o;
  o.json = cert;
  switch (cert.verdict) {
    case lp::ConjectureVerdict::proven: o.code = exit_ok; break;
    case lp::ConjectureVerdict::counterexample: o.code = exit_counterexample; break;
    case lp::ConjectureVerdict::inconclusive: o.code = exit_inconclusive; break;
  }
  std::cerr << cert.graph << ": " << lp::to_string(cert.verdict);
  if (cert.onset.reached) std::cerr << " (N(G) = " << cert.onset.n << ")";
  std::cerr << "\n";
  return o;
}

/// Exact value of c_p^2 * P at p, divided through by c_p^2.
lp::Json evaluate_scaled(const lp::IntPolynomial& scaled, const lp::IntPolynomial& normalizer, const lp::Rational& p) {
  lp::Rational c = normalizer(p);
  lp::Rational value = scaled(p) / (c * c);
  return {{"p", lp::to_string(p)}, {"value", lp::to_string(value)}, {"approx", value.get_d()}};
}

Output cmd_connection(const Config& c) {
  lp::ChainModel model(resolve_graph(c), c.threads);
  const int v = require(c.vertex, "--vertex");
  const int n = require(c.n, "--n");
  auto poly = lp::connection_polynomial(model, v, n);
  Output o;
  o.json = {{"graph", model.graph.descriptor()},
            {"vertex", v},
            {"n", n},
            {"c_p", lp::polynomial_json(model.normalizer())},
            {"scaled_probability", lp::polynomial_json(poly)}};
  if (c.p) o.json["at"] = evaluate_scaled(poly, model.normalizer(), require_p(c));
  return o;
}

Output cmd_expected(const Config& c) {
  lp::ChainModel model(resolve_graph(c), c.threads);
  const int n = c.n.value_or(0);
  auto poly = lp::expected_infected_polynomial(model, n);
  Output o;
  o.json = {{"graph", model.graph.descriptor()},
            {"n", n},
            {"c_p", lp::polynomial_json(model.normalizer())},
            {"scaled_expectation", lp::polynomial_json(poly)}};
  if (c.p) o.json["at"] = evaluate_scaled(poly, model.normalizer(), require_p(c));
  if (c.n_max) {
    const int delta = c.max_degree.value_or(model.graph.max_degree());
    auto checks = lp::verify_expected_count_monotonicity(model, *c.n_max, delta);
    o.json["max_degree"] = delta;
    o.json["monotonicity"] = checks;
    for (const auto& check : checks)
      if (!check.certificate.nonnegative()) o.code = exit_counterexample;
  }
  return o;
}

Output cmd_extremal(const Config& c) {
  auto g = resolve_graph(c);
  lp::LayerMoves moves(g);
  auto kind = parse_kind(c.kind);
  Output o;
  if (c.y || c.x) {
    auto y = lp::parse_pattern(require(c.y, "--y"), g.vertex_count());
    auto x = lp::parse_pattern(require(c.x, "--x"), g.vertex_count());
    o.json = lp::extremal_constants(moves, y, x, kind);
    return o;
  }
  lp::Json reports = lp::Json::array();
  int l_max = 0;
  for (std::size_t yi = 0; yi < moves.size(); ++yi) {
    auto fwd = moves.forward(yi);
    for (std::size_t xi = 0; xi < moves.size(); ++xi) {
      if (!fwd[xi]) continue;
      auto r = lp::extremal_constants(moves, moves.patterns()[yi], moves.patterns()[xi], kind);
      l_max = std::max(l_max, r.l);
      reports.push_back(r);
    }
  }
  o.json = {{"graph", g.descriptor()}, {"kind", lp::to_string(kind)}, {"l_max", l_max}, {"pairs", reports}};
  return o;
}

Output cmd_decay(const Config& c) {
  auto g = resolve_graph(c);
  auto p = require_p(c);
  auto est = lp::estimate_decay_rate(lp::build_lumped_kernel(g, c.threads), p);
  Output o;
  o.json = {{"graph", g.descriptor()},
            {"p", lp::to_string(p)},
            {"approximate", true},
            {"rate", est.rate},
            {"iterations", est.iterations}};
  return o;
}

Output cmd_bound(const Config& c) {
  auto rows = lp::degree_bound_report(c.max_degree.value_or(5));
  Output o;
  o.json = {{"rows", rows}};
  std::ostringstream csv;
  csv << "max_degree,p,g,h,g_le_1,h_le_1\n";
  for (const auto& r : rows)
    csv << r.max_degree << ',' << lp::to_string(r.p) << ',' << lp::to_string(r.g) << ',' << lp::to_string(r.h) << ','
        << (r.g_ok ? "true" : "false") << ',' << (r.h_ok ? "true" : "false") << '\n';
  o.csv = csv.str();
  return o;
}

Output cmd_mc(const Config& c) {
  auto g = resolve_graph(c);
  auto p = require_p(c);
  const int n = c.n.value_or(0);
  auto summary = lp::simulate(g, p, n, c.samples, c.seed, c.threads);
  lp::Json connections = lp::Json::array();
  for (int layer = 0; layer <= n; ++layer)
    for (lp::Vertex v = 0; v < g.vertex_count(); ++v) {
      if (c.vertex && *c.vertex != v) continue;
      lp::Json entry = summary.connection(v, layer);
      entry["vertex"] = v;
      entry["n"] = layer;
      connections.push_back(entry);
    }
  lp::Json initial = lp::Json::object();
  for (const auto& [x, count] : summary.initial_counts) initial[lp::to_string(x)] = count;
  Output o;
  o.json = {{"graph", g.descriptor()},
            {"p", lp::to_string(p)},
            {"approximate", true},
            {"generator", lp::mc_generator_name},
            {"seed_scheme", lp::mc_seed_scheme},
            {"seed", c.seed},
            {"samples", c.samples},
            {"connections", connections},
            {"initial_patterns", initial},
            {"mean_depth", summary.mean_depth()}};
  return o;
}

Output dispatch(const Config& c) {
  if (c.command == "states") return cmd_states(c);
  if (c.command == "kernel") return cmd_kernel(c);
  if (c.command == "stationary") return cmd_stationary(c);
  if (c.command == "onset") return cmd_onset(c);
  if (c.command == "verify") return cmd_verify(c);
  if (c.command == "connection") return cmd_connection(c);
  if (c.command == "expected") return cmd_expected(c);
  if (c.command == "extremal") return cmd_extremal(c);
  if (c.command == "decay") return cmd_decay(c);
  if (c.command == "bound") return cmd_bound(c);
  if (c.command == "mc") return cmd_mc(c);
  throw lp::Error(lp::ErrorCode::invalid_argument, "unknown command " + c.command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact layer-pattern chain verification for percolation on G x Z"};
  Config c;
  const std::vector<std::string> commands{"states",   "kernel",   "stationary", "onset", "verify", "connection",
                                          "expected", "extremal", "decay",      "bound", "mc"};
  app.add_option("command", c.command, "states|kernel|stationary|onset|verify|connection|expected|extremal|decay|bound|mc")
      ->required()
      ->check(CLI::IsMember(commands));
  auto* positional_graph = app.add_option("graph_positional", c.graph, "cycle:k, path:k or a graph JSON file");
  app.add_option("--graph", c.graph, "cycle:k, path:k or a graph JSON file")->excludes(positional_graph);
  app.add_option("--origin", c.origin, "origin vertex override");
  app.add_option("--n", c.n, "layer index")->check(CLI::NonNegativeNumber);
  app.add_option("--n-max", c.n_max, "last n for expected-count monotonicity checks")->check(CLI::NonNegativeNumber);
  app.add_option("--vertex", c.vertex, "target vertex")->check(CLI::NonNegativeNumber);
  app.add_option("--p", c.p, "edge probability as num/den");
  app.add_option("--samples", c.samples, "Monte Carlo sample count");
  app.add_option("--seed", c.seed, "Monte Carlo seed");
  app.add_option("--cap", c.cap, "onset search cap")->check(CLI::NonNegativeNumber);
  app.add_option("--out", c.out, "write the artifact here instead of stdout");
  app.add_option("--format", c.format, "json or csv (csv only for states and bound)")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", c.threads, "worker threads, 0 = available parallelism");
  app.add_option("--max-degree", c.max_degree, "Delta for bound and expected")->check(CLI::NonNegativeNumber);
  app.add_option("--kind", c.kind, "kernel: full|reduced|lumped; extremal: open|closed");
  app.add_option("--y", c.y, "source pattern for extremal, e.g. \"*,1|0,2\"");
  app.add_option("--x", c.x, "target pattern for extremal");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    Output o = dispatch(c);
    std::string text;
    if (c.format == "csv") {
      if (o.csv.empty()) throw lp::Error(lp::ErrorCode::invalid_argument, "--format csv is only available for states and bound");
      text = o.csv;
    } else {
      text = o.json.dump(2) + "\n";
    }
    if (c.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream file(c.out);
      if (!file) throw lp::Error(lp::ErrorCode::invalid_argument, "cannot write " + c.out);
      file << text;
    }
    return o.code;
  } catch (const lp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
}
