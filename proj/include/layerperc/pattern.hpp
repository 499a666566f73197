#pragma once

// Infection patterns: partitions of V ∪ {*}.
//
// A pattern on k vertices is stored as a restricted growth string over k + 1 elements,
// element 0 being the infection symbol * and element v + 1 being vertex v. Block labels
// are assigned in order of first appearance, so the *-block is always block 0 and blocks
// are ordered by their minimal element.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "graph.hpp"

namespace layerperc {

inline constexpr int max_pattern_vertices = 12;

class Pattern {
 public:
  Pattern() = default;

  /// Any labelling of the k + 1 elements; relabelled to canonical form.
  static Pattern from_labels(const std::vector<int>& labels) {
    Pattern p;
    p.rgs_.resize(labels.size());
    std::vector<std::pair<int, std::uint8_t>> seen;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto it = std::find_if(seen.begin(), seen.end(), [&](const auto& s) { return s.first == labels[i]; });
      if (it == seen.end()) {
        seen.emplace_back(labels[i], static_cast<std::uint8_t>(seen.size()));
        p.rgs_[i] = seen.back().second;
      } else {
        p.rgs_[i] = it->second;
      }
    }
    return p;
  }

  /// x_†: every element a singleton.
  static Pattern all_singletons(int vertex_count) {
    std::vector<int> labels(static_cast<std::size_t>(vertex_count) + 1);
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(i);
    return from_labels(labels);
  }

  /// x_*: one block holding * and every vertex.
  static Pattern all_infected(int vertex_count) {
    return from_labels(std::vector<int>(static_cast<std::size_t>(vertex_count) + 1, 0));
  }

  int vertex_count() const { return static_cast<int>(rgs_.size()) - 1; }

  /// Canonical byte encoding (the restricted growth string).
  const std::vector<std::uint8_t>& encoding() const { return rgs_; }

  int block_of_vertex(Vertex v) const { return rgs_[static_cast<std::size_t>(v) + 1]; }
  bool vertex_infected(Vertex v) const { return block_of_vertex(v) == 0; }
  bool connected(Vertex u, Vertex v) const { return block_of_vertex(u) == block_of_vertex(v); }

  int block_count() const { return rgs_.empty() ? 0 : *std::max_element(rgs_.begin(), rgs_.end()) + 1; }

  /// True iff some vertex shares the *-block.
  bool is_infected() const {
    return std::any_of(rgs_.begin() + 1, rgs_.end(), [](std::uint8_t b) { return b == 0; });
  }

  /// Blocks as element lists; * is rendered as -1.
  std::vector<std::vector<int>> blocks() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(block_count()));
    for (std::size_t i = 0; i < rgs_.size(); ++i) out[rgs_[i]].push_back(static_cast<int>(i) - 1);
    return out;
  }

  /// Packed 4-bit key, unique for up to 15 elements.
  std::uint64_t key() const {
    std::uint64_t k = rgs_.size();
    for (auto b : rgs_) k = (k << 4U) | b;
    return k;
  }

  friend auto operator<=>(const Pattern&, const Pattern&) = default;
  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  std::vector<std::uint8_t> rgs_;
};

/// "*,0|1,2": blocks joined by '|', elements by ','.
inline std::string to_string(const Pattern& x) {
  std::string out;
  for (const auto& block : x.blocks()) {
    if (!out.empty()) out += '|';
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i > 0) out += ',';
      out += block[i] < 0 ? std::string("*") : std::to_string(block[i]);
    }
  }
  return out;
}

inline Pattern parse_pattern(std::string_view text, int vertex_count) {
  std::vector<int> labels(static_cast<std::size_t>(vertex_count) + 1, -1);
  int block = 0;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) { throw Error(ErrorCode::parse_error, why + " in '" + std::string(text) + "'"); };
  while (pos <= text.size()) {
    auto bar = text.find('|', pos);
    auto chunk = text.substr(pos, bar == std::string_view::npos ? std::string_view::npos : bar - pos);
    std::size_t cpos = 0;
    if (chunk.empty()) fail("empty block");
    while (cpos <= chunk.size()) {
      auto comma = chunk.find(',', cpos);
      std::string item(chunk.substr(cpos, comma == std::string_view::npos ? std::string_view::npos : comma - cpos));
      int element = 0;
      if (item == "*") {
        element = 0;
      } else {
        try {
          std::size_t used = 0;
          int v = std::stoi(item, &used);
          if (used != item.size()) fail("bad element");
          element = v + 1;
        } catch (const std::invalid_argument&) {
          fail("bad element");
        } catch (const std::out_of_range&) {
          fail("bad element");
        }
      }
      if (element < 0 || element > vertex_count) fail("element out of range");
      if (labels[static_cast<std::size_t>(element)] != -1) fail("repeated element");
      labels[static_cast<std::size_t>(element)] = block;
      if (comma == std::string_view::npos) break;
      cpos = comma + 1;
    }
    ++block;
    if (bar == std::string_view::npos) break;
    pos = bar + 1;
  }
  if (std::find(labels.begin(), labels.end(), -1) != labels.end()) fail("elements missing");
  return Pattern::from_labels(labels);
}

/// Bell(n) for small n.
inline std::uint64_t bell_number(int n) {
  std::vector<std::uint64_t> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

/// All patterns on k vertices in lexicographic order of encoding; Bell(k + 1) of them.
inline std::vector<Pattern> enumerate_patterns(int vertex_count) {
  if (vertex_count > max_pattern_vertices)
    throw Error(ErrorCode::size_guard_exceeded, "at most " + std::to_string(max_pattern_vertices) + " vertices");
  const std::size_t n = static_cast<std::size_t>(vertex_count) + 1;
  std::vector<Pattern> out;
  std::vector<int> rgs(n, 0);
  std::vector<int> prefix_max(n, 0);
  for (;;) {
    out.push_back(Pattern::from_labels(rgs));
    for (std::size_t i = 1; i < n; ++i) prefix_max[i] = std::max(prefix_max[i - 1], rgs[i - 1]);
    std::size_t i = n - 1;
    while (i >= 1 && rgs[i] > prefix_max[i]) --i;
    if (i == 0) return out;
    ++rgs[i];
    std::fill(rgs.begin() + static_cast<long>(i) + 1, rgs.end(), 0);
  }
}

inline std::vector<Pattern> enumerate_patterns(const Graph& graph) { return enumerate_patterns(graph.vertex_count()); }

/// f_†: detaches * into its own block, keeping every other connection.
inline Pattern delete_infection(const Pattern& x) {
  const auto& e = x.encoding();
  std::vector<int> labels(e.size());
  labels[0] = -1;
  for (std::size_t i = 1; i < e.size(); ++i) labels[i] = e[i];
  return Pattern::from_labels(labels);
}

/// Either a full pattern or the lumped absorbing state † standing for all of M†.
struct PatternClass {
  bool dagger = false;
  Pattern pattern;

  static PatternClass lumped() { return {true, {}}; }
  static PatternClass full(Pattern p) { return {false, std::move(p)}; }

  friend auto operator<=>(const PatternClass&, const PatternClass&) = default;
  friend bool operator==(const PatternClass&, const PatternClass&) = default;
};

inline std::string to_string(const PatternClass& c) { return c.dagger ? "dagger" : to_string(c.pattern); }

inline PatternClass parse_pattern_class(std::string_view text, int vertex_count) {
  if (text == "dagger") return PatternClass::lumped();
  return PatternClass::full(parse_pattern(text, vertex_count));
}

/// f_*: infected patterns map to themselves, uninfected ones to †.
inline PatternClass lump(const Pattern& x) {
  return x.is_infected() ? PatternClass::full(x) : PatternClass::lumped();
}

/// Ordering used for kernel state lists: more blocks first, then encoding.
inline bool kernel_order(const Pattern& a, const Pattern& b) {
  int ba = a.block_count(), bb = b.block_count();
  if (ba != bb) return ba > bb;
  return a < b;
}

}  // namespace layerperc
