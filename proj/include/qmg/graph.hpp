#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qmg/error.hpp"
#include "qmg/vertex_set.hpp"

namespace qmg {

using EdgeId = std::uint32_t;

inline constexpr std::uint32_t kInfinity = std::numeric_limits<std::uint32_t>::max();

struct Edge {
  Vertex u;
  Vertex v;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Finite simple undirected graph on the vertices 0..size()-1.
///
/// Immutable after construction. Neighbour lists are sorted (CSR layout) and
/// every undirected edge has an id equal to its position in `edges()`, which
/// is sorted lexicographically with u < v. Small graphs additionally keep
/// bitset adjacency rows for O(1) `adjacent()`.
class Graph {
 public:
  Graph() = default;

  explicit Graph(std::size_t n, std::span<const Edge> edge_list = {},
                 std::vector<std::string> labels = {})
      : n_(n), labels_(std::move(labels)) {
    if (!labels_.empty() && labels_.size() != n)
      throw Error(Errc::InvalidArgument, "label count does not match vertex count");
    edges_.reserve(edge_list.size());
    for (Edge e : edge_list) {
      if (e.u >= n || e.v >= n)
        throw Error(Errc::OutOfRange, "edge endpoint outside [0, " + std::to_string(n) + ")");
      if (e.u == e.v) throw Error(Errc::InvalidArgument, "self-loop at vertex " + std::to_string(e.u));
      edges_.push_back(e.u < e.v ? e : Edge{e.v, e.u});
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    offsets_.assign(n + 1, 0);
    for (Edge e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
    neighbors_.resize(offsets_[n]);
    slot_edge_.resize(offsets_[n]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    // Edges are sorted, so pushing in order keeps each row sorted for the
    // smaller endpoint; the larger endpoint's row needs a sort afterwards.
    for (EdgeId id = 0; id < edges_.size(); ++id) {
      auto [u, v] = edges_[id];
      neighbors_[fill[u]] = v;
      slot_edge_[fill[u]++] = id;
      neighbors_[fill[v]] = u;
      slot_edge_[fill[v]++] = id;
    }
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<std::pair<Vertex, EdgeId>> row;
      for (std::size_t s = offsets_[v]; s < offsets_[v + 1]; ++s) row.emplace_back(neighbors_[s], slot_edge_[s]);
      std::sort(row.begin(), row.end());
      for (std::size_t i = 0; i < row.size(); ++i) {
        neighbors_[offsets_[v] + i] = row[i].first;
        slot_edge_[offsets_[v] + i] = row[i].second;
      }
    }
    if (n <= kBitsetLimit) {
      words_ = (n + 63) / 64;
      rows_.assign(n * words_, 0);
      for (Edge e : edges_) {
        rows_[e.u * words_ + e.v / 64] |= std::uint64_t{1} << (e.v % 64);
        rows_[e.v * words_ + e.u / 64] |= std::uint64_t{1} << (e.u % 64);
      }
    }
  }

  Graph(std::size_t n, std::initializer_list<Edge> edge_list)
      : Graph(n, std::span<const Edge>(edge_list.begin(), edge_list.size())) {}

  std::size_t size() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    check(v);
    return {neighbors_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  /// Edge ids parallel to `neighbors(v)`.
  std::span<const EdgeId> incident_edges(Vertex v) const {
    check(v);
    return {slot_edge_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(Vertex v) const {
    check(v);
    return offsets_[v + 1] - offsets_[v];
  }

  bool adjacent(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_) return false;
    if (!rows_.empty()) return (rows_[u * words_ + v / 64] >> (v % 64)) & 1U;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  std::optional<EdgeId> edge_id(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_) return std::nullopt;
    auto nb = neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) return std::nullopt;
    return slot_edge_[offsets_[u] + static_cast<std::size_t>(it - nb.begin())];
  }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(Vertex v) const {
    check(v);
    return labels_.empty() ? std::to_string(v) : labels_[v];
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  static constexpr std::size_t kBitsetLimit = 4096;

  void check(Vertex v) const {
    if (v >= n_)
      throw Error(Errc::OutOfRange, "vertex " + std::to_string(v) + " not in graph of size " + std::to_string(n_));
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> neighbors_;
  std::vector<EdgeId> slot_edge_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
  std::vector<std::string> labels_;
};

// ---------------------------------------------------------------------------
// Traversal

/// Shortest-path distances from `source`; kInfinity marks unreachable vertices.
inline std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex source) {
  if (source >= g.size())
    throw Error(Errc::OutOfRange, "BFS source " + std::to_string(source) + " out of range");
  std::vector<std::uint32_t> dist(g.size(), kInfinity);
  std::vector<Vertex> queue{source};
  queue.reserve(g.size());
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex v = queue[head];
    for (Vertex w : g.neighbors(v)) {
      if (dist[w] == kInfinity) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

/// Dense all-pairs distance table, one BFS per vertex.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(const Graph& g) : n_(g.size()), d_(g.size() * g.size()) {
    for (Vertex s = 0; s < n_; ++s) {
      auto row = bfs_distances(g, s);
      std::copy(row.begin(), row.end(), d_.begin() + static_cast<std::ptrdiff_t>(s * n_));
    }
  }
  std::size_t size() const { return n_; }
  std::uint32_t operator()(Vertex u, Vertex v) const { return d_[u * n_ + v]; }
  std::span<const std::uint32_t> row(Vertex u) const { return {d_.data() + u * n_, n_}; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint32_t> d_;
};

/// Components of `g` after ignoring every edge for which `skip(edge_id)` holds.
/// Returns a component index per vertex; components are numbered in order of
/// their smallest vertex.
template <typename SkipEdge>
std::pair<std::vector<std::uint32_t>, std::uint32_t> component_labels(const Graph& g, SkipEdge&& skip) {
  std::vector<std::uint32_t> comp(g.size(), kInfinity);
  std::uint32_t count = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.size(); ++s) {
    if (comp[s] != kInfinity) continue;
    comp[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      auto nb = g.neighbors(v);
      auto ids = g.incident_edges(v);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (comp[nb[i]] != kInfinity || skip(ids[i])) continue;
        comp[nb[i]] = count;
        stack.push_back(nb[i]);
      }
    }
    ++count;
  }
  return {std::move(comp), count};
}

inline std::vector<VertexSet> connected_components(const Graph& g) {
  auto [comp, count] = component_labels(g, [](EdgeId) { return false; });
  std::vector<VertexSet> out(count, VertexSet(g.size()));
  for (Vertex v = 0; v < g.size(); ++v) out[comp[v]].insert(v);
  return out;
}

inline bool is_connected(const Graph& g) { return g.size() > 0 && connected_components(g).size() == 1; }

/// I(u,v): vertices lying on some geodesic between u and v.
inline VertexSet interval(const Graph& g, Vertex u, Vertex v) {
  auto du = bfs_distances(g, u);
  if (v >= g.size()) throw Error(Errc::OutOfRange, "interval endpoint out of range");
  if (du[v] == kInfinity) throw Error(Errc::Disconnected, "interval endpoints lie in different components");
  auto dv = bfs_distances(g, v);
  VertexSet out(g.size());
  for (Vertex w = 0; w < g.size(); ++w)
    if (du[w] != kInfinity && dv[w] != kInfinity && du[w] + dv[w] == du[v]) out.insert(w);
  return out;
}

inline VertexSet interval(const DistanceMatrix& d, Vertex u, Vertex v) {
  if (d(u, v) == kInfinity) throw Error(Errc::Disconnected, "interval endpoints lie in different components");
  VertexSet out(d.size());
  for (Vertex w = 0; w < d.size(); ++w)
    if (d(u, w) != kInfinity && d(w, v) != kInfinity && d(u, w) + d(w, v) == d(u, v)) out.insert(w);
  return out;
}

// ---------------------------------------------------------------------------
// Constructions

/// (a,b) is numbered a * h.size() + b.
inline Graph cartesian_product(const Graph& g, const Graph& h) {
  const std::size_t m = h.size();
  std::vector<Edge> edges;
  edges.reserve(g.size() * h.edge_count() + h.size() * g.edge_count());
  for (Vertex a = 0; a < g.size(); ++a)
    for (Edge e : h.edges()) edges.push_back({static_cast<Vertex>(a * m + e.u), static_cast<Vertex>(a * m + e.v)});
  for (Edge e : g.edges())
    for (Vertex b = 0; b < m; ++b) edges.push_back({static_cast<Vertex>(e.u * m + b), static_cast<Vertex>(e.v * m + b)});
  return Graph(g.size() * m, edges);
}

struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_host;  // subgraph vertex -> host vertex, ascending
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& vs) {
  InducedSubgraph out;
  out.to_host = vs.members();
  std::vector<Vertex> local(g.size(), kInfinity);
  for (Vertex i = 0; i < out.to_host.size(); ++i) local[out.to_host[i]] = i;
  std::vector<Edge> edges;
  std::vector<std::string> labels;
  for (Vertex i = 0; i < out.to_host.size(); ++i) {
    Vertex v = out.to_host[i];
    if (g.has_labels()) labels.push_back(g.labels()[v]);
    for (Vertex w : g.neighbors(v))
      if (local[w] != kInfinity && i < local[w]) edges.push_back({i, local[w]});
  }
  out.graph = Graph(out.to_host.size(), edges, std::move(labels));
  return out;
}

// ---------------------------------------------------------------------------
// Induced subgraph search

/// Backtracking search for an induced copy of `pattern` in `g`. The result is
/// indexed by pattern vertex. Pattern vertices are matched in BFS order so
/// that, after the first, candidates come from the neighbourhood of an
/// already-placed image; degree bounds prune the rest. The first embedding in
/// that search order is returned, which makes witnesses reproducible.
inline std::optional<std::vector<Vertex>> find_induced_subgraph(const Graph& g, const Graph& pattern) {
  const std::size_t k = pattern.size();
  if (k == 0) return std::vector<Vertex>{};
  if (k > g.size()) return std::nullopt;

  std::vector<Vertex> order;
  std::vector<Vertex> anchor(k, kInfinity);  // earlier-placed neighbour, if any
  {
    std::vector<bool> seen(k, false);
    for (Vertex s = 0; s < k; ++s) {
      if (seen[s]) continue;
      seen[s] = true;
      order.push_back(s);
      for (std::size_t head = order.size() - 1; head < order.size(); ++head) {
        for (Vertex w : pattern.neighbors(order[head])) {
          if (seen[w]) continue;
          seen[w] = true;
          anchor[w] = order[head];
          order.push_back(w);
        }
      }
    }
  }

  std::vector<Vertex> image(k, kInfinity);
  std::vector<bool> used(g.size(), false);

  auto consistent = [&](std::size_t depth, Vertex cand) {
    Vertex p = order[depth];
    if (used[cand] || g.degree(cand) < pattern.degree(p)) return false;
    for (std::size_t i = 0; i < depth; ++i) {
      Vertex q = order[i];
      if (pattern.adjacent(p, q) != g.adjacent(cand, image[q])) return false;
    }
    return true;
  };

  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == k) return true;
    Vertex p = order[depth];
    auto try_candidate = [&](Vertex cand) {
      if (!consistent(depth, cand)) return false;
      image[p] = cand;
      used[cand] = true;
      if (self(self, depth + 1)) return true;
      used[cand] = false;
      image[p] = kInfinity;
      return false;
    };
    if (anchor[p] != kInfinity) {
      for (Vertex cand : g.neighbors(image[anchor[p]]))
        if (try_candidate(cand)) return true;
    } else {
      for (Vertex cand = 0; cand < g.size(); ++cand)
        if (try_candidate(cand)) return true;
    }
    return false;
  };

  if (search(search, 0)) return image;
  return std::nullopt;
}

enum class ForbiddenPattern { K4Minus, K32 };

inline std::string_view to_string(ForbiddenPattern p) { return p == ForbiddenPattern::K4Minus ? "K4minus" : "K32"; }

/// K4 minus the edge {2,3}; K3,2 with parts {0,1,2} and {3,4}.
inline Graph pattern_graph(ForbiddenPattern p) {
  if (p == ForbiddenPattern::K4Minus) return Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  return Graph(5, {{0, 3}, {0, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}});
}

inline std::optional<std::vector<Vertex>> find_forbidden_subgraph(const Graph& g, ForbiddenPattern p) {
  return find_induced_subgraph(g, pattern_graph(p));
}

// ---------------------------------------------------------------------------
// Isomorphism (small instances)

namespace detail {

/// Joint colour refinement of two graphs; colours are comparable across them.
inline std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> refine_colours(const Graph& g,
                                                                                        const Graph& h) {
  std::vector<std::uint32_t> cg(g.size()), ch(h.size());
  for (Vertex v = 0; v < g.size(); ++v) cg[v] = static_cast<std::uint32_t>(g.degree(v));
  for (Vertex v = 0; v < h.size(); ++v) ch[v] = static_cast<std::uint32_t>(h.degree(v));
  std::size_t classes = 0;
  for (;;) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> palette;
    auto signature = [](const Graph& x, const std::vector<std::uint32_t>& c, Vertex v) {
      std::vector<std::uint32_t> sig;
      for (Vertex w : x.neighbors(v)) sig.push_back(c[w]);
      std::sort(sig.begin(), sig.end());
      sig.insert(sig.begin(), c[v]);
      return sig;
    };
    std::vector<std::vector<std::uint32_t>> sg(g.size()), sh(h.size());
    for (Vertex v = 0; v < g.size(); ++v) palette.emplace(sg[v] = signature(g, cg, v), 0);
    for (Vertex v = 0; v < h.size(); ++v) palette.emplace(sh[v] = signature(h, ch, v), 0);
    std::uint32_t next = 0;
    for (auto& [sig, id] : palette) id = next++;
    for (Vertex v = 0; v < g.size(); ++v) cg[v] = palette[sg[v]];
    for (Vertex v = 0; v < h.size(); ++v) ch[v] = palette[sh[v]];
    if (palette.size() == classes) break;
    classes = palette.size();
  }
  return {std::move(cg), std::move(ch)};
}

}  // namespace detail

/// An isomorphism g -> h (indexed by g's vertices), or nullopt.
inline std::optional<std::vector<Vertex>> find_isomorphism(const Graph& g, const Graph& h) {
  if (g.size() != h.size() || g.edge_count() != h.edge_count()) return std::nullopt;
  const std::size_t n = g.size();
  auto [cg, ch] = detail::refine_colours(g, h);
  {
    auto a = cg, b = ch;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }

  std::vector<Vertex> order;
  std::vector<Vertex> anchor(n, kInfinity);
  std::vector<bool> seen(n, false);
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    seen[s] = true;
    order.push_back(s);
    for (std::size_t head = order.size() - 1; head < order.size(); ++head)
      for (Vertex w : g.neighbors(order[head]))
        if (!seen[w]) {
          seen[w] = true;
          anchor[w] = order[head];
          order.push_back(w);
        }
  }

  std::vector<Vertex> image(n, kInfinity);
  std::vector<bool> used(n, false);
  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    Vertex p = order[depth];
    auto attempt = [&](Vertex c) {
      if (used[c] || ch[c] != cg[p]) return false;
      for (std::size_t i = 0; i < depth; ++i)
        if (g.adjacent(p, order[i]) != h.adjacent(c, image[order[i]])) return false;
      image[p] = c;
      used[c] = true;
      if (self(self, depth + 1)) return true;
      used[c] = false;
      return false;
    };
    if (anchor[p] != kInfinity) {
      for (Vertex c : h.neighbors(image[anchor[p]]))
        if (attempt(c)) return true;
    } else {
      for (Vertex c = 0; c < n; ++c)
        if (attempt(c)) return true;
    }
    return false;
  };
  if (search(search, 0)) return image;
  return std::nullopt;
}

inline bool is_isomorphic(const Graph& g, const Graph& h) { return find_isomorphism(g, h).has_value(); }

// ---------------------------------------------------------------------------
// Cliques

/// All maximal cliques (Bron–Kerbosch with pivoting), each sorted, list sorted.
inline std::vector<std::vector<Vertex>> maximal_cliques(const Graph& g) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> current;
  auto nbr_set = [&](Vertex v) { return VertexSet(g.size(), g.neighbors(v)); };
  auto bk = [&](auto&& self, VertexSet p, VertexSet x) -> void {
    if (p.empty() && x.empty()) {
      auto c = current;
      std::sort(c.begin(), c.end());
      out.push_back(std::move(c));
      return;
    }
    Vertex pivot = (p | x).first();
    std::size_t best = 0;
    (p | x).for_each([&](Vertex u) {
      std::size_t k = (p & nbr_set(u)).size();
      if (k >= best) {
        best = k;
        pivot = u;
      }
    });
    VertexSet candidates = p - nbr_set(pivot);
    candidates.for_each([&](Vertex v) {
      VertexSet nv = nbr_set(v);
      current.push_back(v);
      self(self, p & nv, x & nv);
      current.pop_back();
      p.erase(v);
      x.insert(v);
    });
  };
  if (g.size() > 0) bk(bk, VertexSet::full(g.size()), VertexSet(g.size()));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Export

inline std::string dot_quote(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string to_dot(const Graph& g, const std::string& name = "G") {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (Vertex v = 0; v < g.size(); ++v) {
    os << "  " << v;
    if (g.has_labels()) os << " [label=" << dot_quote(g.labels()[v]) << "]";
    os << ";\n";
  }
  for (Edge e : g.edges()) os << "  " << e.u << " -- " << e.v << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace qmg
