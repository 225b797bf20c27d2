#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qmg/error.hpp"
#include "qmg/graph.hpp"
#include "qmg/groups.hpp"

namespace qmg {

struct Syllable {
  Vertex vertex;
  FiniteGroup::Element element;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

using SyllableWord = std::vector<Syllable>;

/// A simplicial graph gamma with one vertex group per vertex.
class GraphProductPresentation {
 public:
  GraphProductPresentation(Graph gamma, std::vector<GroupSpec> groups)
      : gamma_(std::move(gamma)), groups_(std::move(groups)) {
    if (groups_.size() != gamma_.size())
      throw Error(Errc::InvalidArgument, "need exactly one vertex group per vertex of gamma");
    for (const auto& g : groups_)
      if (auto* f = std::get_if<FiniteGroup>(&g); f && f->order() < 2)
        throw Error(Errc::InvalidArgument, "vertex groups must be nontrivial");
  }

  const Graph& gamma() const { return gamma_; }
  const std::vector<GroupSpec>& groups() const { return groups_; }
  bool is_finite_vertex(Vertex v) const { return std::holds_alternative<FiniteGroup>(groups_.at(v)); }

  const FiniteGroup& group(Vertex v) const {
    if (v >= groups_.size()) throw Error(Errc::OutOfRange, "vertex " + std::to_string(v) + " not in gamma");
    if (auto* f = std::get_if<FiniteGroup>(&groups_[v])) return *f;
    throw Error(Errc::SymbolicInfinite, "vertex " + gamma_.label(v) + " carries a symbolic infinite group");
  }

  /// Gamma complete and every vertex group finite.
  bool is_finite_product() const {
    for (Vertex v = 0; v < gamma_.size(); ++v)
      if (!is_finite_vertex(v)) return false;
    return gamma_.edge_count() * 2 == gamma_.size() * (gamma_.size() - (gamma_.size() > 0 ? 1 : 0));
  }

 private:
  Graph gamma_;
  std::vector<GroupSpec> groups_;
};

namespace detail {

inline void validate_syllable(const GraphProductPresentation& p, Syllable s) {
  const FiniteGroup& g = p.group(s.vertex);
  if (s.element >= g.order())
    throw Error(Errc::OutOfRange, "element " + std::to_string(s.element) + " not in the group of vertex " +
                                      p.gamma().label(s.vertex));
}

/// Append s to a reduced word, keeping it reduced: merge with the last
/// syllable of the same vertex if everything after it commutes with that
/// vertex, dropping the syllable when the product is trivial.
inline void push_reduced(const GraphProductPresentation& p, SyllableWord& w, Syllable s) {
  const FiniteGroup& g = p.group(s.vertex);
  if (s.element == g.identity()) return;
  for (std::size_t i = w.size(); i-- > 0;) {
    if (w[i].vertex == s.vertex) {
      auto merged = g.multiply(w[i].element, s.element);
      if (merged == g.identity())
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
      else
        w[i].element = merged;
      return;
    }
    if (!p.gamma().adjacent(w[i].vertex, s.vertex)) break;
  }
  w.push_back(s);
}

/// Lexicographic normal form of a reduced word: repeatedly emit, among the
/// syllables that commute past everything before them, the one with the
/// smallest vertex.
inline SyllableWord lex_normal_form(const GraphProductPresentation& p, SyllableWord w) {
  SyllableWord out;
  out.reserve(w.size());
  while (!w.empty()) {
    std::size_t best = w.size();
    for (std::size_t i = 0; i < w.size(); ++i) {
      bool front = true;
      for (std::size_t k = 0; k < i && front; ++k) front = p.gamma().adjacent(w[k].vertex, w[i].vertex);
      if (front && (best == w.size() || w[i].vertex < w[best].vertex)) best = i;
    }
    out.push_back(w[best]);
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

}  // namespace detail

/// Canonical form of the element represented by `w`: identity syllables are
/// dropped, same-vertex syllables that can be brought together through
/// commutations are merged, and the result is put in lexicographic normal
/// form. Two words represent the same element iff their canonical forms are
/// equal.
inline SyllableWord reduce_word(const GraphProductPresentation& p, const SyllableWord& w) {
  SyllableWord reduced;
  for (Syllable s : w) {
    detail::validate_syllable(p, s);
    detail::push_reduced(p, reduced, s);
  }
  return detail::lex_normal_form(p, std::move(reduced));
}

inline bool word_equal(const GraphProductPresentation& p, const SyllableWord& a, const SyllableWord& b) {
  return reduce_word(p, a) == reduce_word(p, b);
}

inline std::size_t syllable_length(const GraphProductPresentation& p, const SyllableWord& w) {
  return reduce_word(p, w).size();
}

inline SyllableWord multiply(const GraphProductPresentation& p, const SyllableWord& a, const SyllableWord& b) {
  SyllableWord w = a;
  w.insert(w.end(), b.begin(), b.end());
  return reduce_word(p, w);
}

inline SyllableWord inverse(const GraphProductPresentation& p, const SyllableWord& w) {
  SyllableWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    detail::validate_syllable(p, *it);
    out.push_back({it->vertex, p.group(it->vertex).inverse(it->element)});
  }
  return reduce_word(p, out);
}

// ---------------------------------------------------------------------------
// Text form: syllables separated by whitespace, each `<name><element>` where
// name is the gamma label (or index) and element a decimal index. `name:k` is
// accepted too and is what formatting uses when a label ends in a digit.

inline SyllableWord parse_word(const GraphProductPresentation& p, std::string_view text) {
  std::map<std::string, Vertex> by_name;
  for (Vertex v = 0; v < p.gamma().size(); ++v) by_name.emplace(p.gamma().label(v), v);
  SyllableWord out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    std::string name, digits;
    if (auto colon = token.rfind(':'); colon != std::string::npos) {
      name = token.substr(0, colon);
      digits = token.substr(colon + 1);
    } else {
      std::size_t cut = token.size();
      while (cut > 0 && std::isdigit(static_cast<unsigned char>(token[cut - 1]))) --cut;
      name = token.substr(0, cut);
      digits = token.substr(cut);
    }
    if (name.empty() || digits.empty() ||
        !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw Error(Errc::MalformedInput, "cannot parse syllable '" + token + "'");
    auto it = by_name.find(name);
    if (it == by_name.end()) throw Error(Errc::MalformedInput, "unknown vertex '" + name + "' in syllable '" + token + "'");
    unsigned long element = 0;
    try {
      element = std::stoul(digits);
    } catch (const std::exception&) {
      throw Error(Errc::MalformedInput, "element index too large in syllable '" + token + "'");
    }
    out.push_back({it->second, static_cast<FiniteGroup::Element>(element)});
  }
  return out;
}

inline std::string format_word(const GraphProductPresentation& p, const SyllableWord& w) {
  std::string out;
  for (Syllable s : w) {
    if (!out.empty()) out += ' ';
    std::string name = p.gamma().label(s.vertex);
    bool digit_end = !name.empty() && std::isdigit(static_cast<unsigned char>(name.back()));
    out += name + (digit_end ? ":" : "") + std::to_string(s.element);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cayley graphs for the generating set of all nontrivial vertex-group elements

struct CayleyGraph {
  Graph graph;
  std::vector<SyllableWord> elements;  // canonical form per vertex, BFS order
  std::vector<std::uint32_t> length;   // syllable length per vertex
  VertexSet interior;
  bool complete = false;               // the ball exhausts the group
};

inline constexpr std::size_t kDefaultBallCap = 1'000'000;

namespace detail {

inline CayleyGraph cayley_bfs(const GraphProductPresentation& p, std::optional<std::uint32_t> radius,
                              std::size_t cap) {
  std::vector<Syllable> generators;
  for (Vertex v = 0; v < p.gamma().size(); ++v) {
    const FiniteGroup& g = p.group(v);
    for (FiniteGroup::Element x = 0; x < g.order(); ++x)
      if (x != g.identity()) generators.push_back({v, x});
  }

  CayleyGraph out;
  std::map<SyllableWord, Vertex> index;
  index.emplace(SyllableWord{}, 0);
  out.elements.push_back({});
  out.length.push_back(0);
  std::vector<Edge> edges;
  bool truncated = false;
  for (std::size_t head = 0; head < out.elements.size(); ++head) {
    const std::uint32_t len = out.length[head];
    for (Syllable s : generators) {
      SyllableWord w = out.elements[head];
      push_reduced(p, w, s);
      w = lex_normal_form(p, std::move(w));
      auto it = index.find(w);
      if (it == index.end()) {
        if (radius && len + 1 > *radius) {
          truncated = true;
          continue;
        }
        if (out.elements.size() >= cap)
          throw Error(Errc::CapExceeded, "Cayley ball exceeds " + std::to_string(cap) + " vertices");
        it = index.emplace(w, static_cast<Vertex>(out.elements.size())).first;
        out.elements.push_back(std::move(w));
        out.length.push_back(len + 1);
      }
      if (head < it->second) edges.push_back({static_cast<Vertex>(head), it->second});
    }
  }
  std::vector<std::string> labels;
  for (const auto& w : out.elements) labels.push_back(w.empty() ? "1" : format_word(p, w));
  out.graph = Graph(out.elements.size(), edges, std::move(labels));
  out.complete = !truncated;
  out.interior = VertexSet(out.elements.size());
  for (Vertex v = 0; v < out.elements.size(); ++v)
    if (out.complete || out.length[v] + 2 <= *radius) out.interior.insert(v);
  return out;
}

}  // namespace detail

/// The whole Cayley graph; requires gamma complete with finite vertex groups.
inline CayleyGraph full_cayley_graph(const GraphProductPresentation& p, std::size_t cap = kDefaultBallCap) {
  if (!p.is_finite_product())
    throw Error(Errc::InfiniteGroup, "graph product is infinite: gamma is not complete or a vertex group is infinite");
  return detail::cayley_bfs(p, std::nullopt, cap);
}

/// Ball of the given syllable radius around the identity. Interior vertices
/// sit at distance <= radius - 2 (all of them when the ball is the whole
/// group), so local conditions around them are not distorted by truncation.
inline CayleyGraph cayley_ball(const GraphProductPresentation& p, std::uint32_t radius,
                               std::size_t cap = kDefaultBallCap) {
  if (radius == 0) throw Error(Errc::InvalidArgument, "Cayley ball radius must be at least 1");
  return detail::cayley_bfs(p, radius, cap);
}

}  // namespace qmg
