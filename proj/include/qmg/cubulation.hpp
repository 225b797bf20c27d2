#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "qmg/error.hpp"
#include "qmg/graph.hpp"
#include "qmg/hyperplanes.hpp"

namespace qmg {

struct Wall {
  VertexSet sector;
  VertexSet complement;
  ClassId hyperplane;
};

struct Wallspace {
  Graph host;
  std::vector<Wall> walls;
};

enum class Side : std::uint8_t { Sector, Complement };

/// One side per wall. Bit i set means wall i is oriented towards its
/// complement side.
class Orientation {
 public:
  Orientation() = default;
  explicit Orientation(std::size_t walls) : bits_(walls) {}

  std::size_t size() const { return bits_.size(); }
  Side side(std::size_t wall) const { return bits_.test(wall) ? Side::Complement : Side::Sector; }
  void set(std::size_t wall, Side s) { bits_.set(wall, s == Side::Complement); }
  void flip(std::size_t wall) { bits_.flip(wall); }
  /// Number of walls on which the two orientations disagree.
  std::size_t distance(const Orientation& o) const { return (bits_ ^ o.bits_).count(); }

  friend bool operator==(const Orientation&, const Orientation&) = default;
  std::size_t hash() const { return boost::hash_value(bits_); }

 private:
  boost::dynamic_bitset<std::uint64_t> bits_;
};

struct OrientationHash {
  std::size_t operator()(const Orientation& o) const { return o.hash(); }
};

/// One wall {S, V \ S} per sector S, hyperplane by hyperplane; a partition
/// already produced (both sectors of a two-sector hyperplane give the same
/// one) is kept once. Partitions with an empty side are skipped.
inline Wallspace walls_from_graph(const Graph& g, const HyperplaneDecomposition& d) {
  if (!(d.host() == g)) throw Error(Errc::InvalidArgument, "decomposition was computed for another graph");
  Wallspace ws;
  ws.host = g;
  std::unordered_map<VertexSet, std::size_t, VertexSetHash> seen;
  for (ClassId j = 0; j < d.size(); ++j) {
    for (const VertexSet& s : d.sectors(j)) {
      VertexSet rest = s.complement();
      if (s.empty() || rest.empty()) continue;
      // Key on the side holding vertex 0 so both orderings collide.
      const VertexSet& key = s.contains(0) ? s : rest;
      if (!seen.emplace(key, ws.walls.size()).second) continue;
      ws.walls.push_back({s, std::move(rest), j});
    }
  }
  return ws;
}

inline Orientation principal_orientation(const Wallspace& ws, Vertex x) {
  if (x >= ws.host.size()) throw Error(Errc::OutOfRange, "vertex out of range");
  Orientation o(ws.walls.size());
  for (std::size_t i = 0; i < ws.walls.size(); ++i)
    o.set(i, ws.walls[i].sector.contains(x) ? Side::Sector : Side::Complement);
  return o;
}

/// Pairwise intersection table of wall sides, for O(1) consistency queries.
class SideCompatibility {
 public:
  explicit SideCompatibility(const Wallspace& ws) : w_(ws.walls.size()), table_(4 * w_ * w_) {
    for (std::size_t i = 0; i < w_; ++i)
      for (std::size_t j = 0; j < w_; ++j)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            table_[index(i, a, j, b)] = side_set(ws, i, a).intersects(side_set(ws, j, b));
  }

  bool compatible(std::size_t i, Side a, std::size_t j, Side b) const {
    return table_[index(i, static_cast<int>(a), j, static_cast<int>(b))];
  }

  bool consistent(const Orientation& o) const {
    for (std::size_t i = 0; i < w_; ++i)
      for (std::size_t j = i + 1; j < w_; ++j)
        if (!compatible(i, o.side(i), j, o.side(j))) return false;
    return true;
  }

  /// Whether o stays consistent after moving wall i to side s.
  bool can_set(const Orientation& o, std::size_t i, Side s) const {
    for (std::size_t j = 0; j < w_; ++j)
      if (j != i && !compatible(i, s, j, o.side(j))) return false;
    return true;
  }

 private:
  static const VertexSet& side_set(const Wallspace& ws, std::size_t i, int a) {
    return a == 0 ? ws.walls[i].sector : ws.walls[i].complement;
  }
  std::size_t index(std::size_t i, int a, std::size_t j, int b) const {
    return ((i * 2 + static_cast<std::size_t>(a)) * w_ + j) * 2 + static_cast<std::size_t>(b);
  }

  std::size_t w_;
  std::vector<bool> table_;
};

inline bool is_consistent(const Wallspace& ws, const Orientation& o) {
  if (o.size() != ws.walls.size()) throw Error(Errc::InvalidArgument, "orientation has the wrong number of walls");
  return SideCompatibility(ws).consistent(o);
}

struct Cubulation {
  Graph cx;
  std::vector<Vertex> vertex_map;          // host vertex -> cx vertex
  std::vector<Orientation> orientations;   // cx vertex -> orientation
};

inline constexpr std::size_t kDefaultOrientationCap = 200'000;

/// Vertices of C(X): consistent orientations, found by BFS over single-wall
/// flips starting from the principal orientations (numbered first, in host
/// vertex order). Edges join orientations that differ on one wall.
inline Cubulation cubulate(const Wallspace& ws, std::size_t cap = kDefaultOrientationCap) {
  if (!is_connected(ws.host)) throw Error(Errc::Disconnected, "cubulation needs a connected host");
  const std::size_t w = ws.walls.size();
  SideCompatibility compat(ws);
  Cubulation out;
  std::unordered_map<Orientation, Vertex, OrientationHash> index;
  auto add = [&](Orientation o) {
    auto [it, fresh] = index.emplace(o, static_cast<Vertex>(out.orientations.size()));
    if (fresh) {
      if (out.orientations.size() >= cap)
        throw Error(Errc::CapExceeded, "more than " + std::to_string(cap) + " consistent orientations");
      out.orientations.push_back(std::move(o));
    }
    return it->second;
  };

  for (Vertex x = 0; x < ws.host.size(); ++x) out.vertex_map.push_back(add(principal_orientation(ws, x)));

  std::vector<Edge> edges;
  for (std::size_t head = 0; head < out.orientations.size(); ++head) {
    for (std::size_t i = 0; i < w; ++i) {
      Orientation next = out.orientations[head];
      Side target = next.side(i) == Side::Sector ? Side::Complement : Side::Sector;
      if (!compat.can_set(next, i, target)) continue;
      next.set(i, target);
      Vertex v = add(std::move(next));
      if (head < v) edges.push_back({static_cast<Vertex>(head), v});
    }
  }
  out.cx = Graph(out.orientations.size(), edges);
  return out;
}

struct QuasiIsometryReport {
  /// max |d_X(x,y) - d_C(f x, f y)|, i.e. the best epsilon with lambda = 1.
  std::uint32_t max_additive_error = 0;
  /// Best lambda with epsilon = 0: max over x != y of max(d_C/d_X, d_X/d_C);
  /// empty when some pair collapses (f not injective).
  std::optional<double> lambda;
  /// Largest distance from a vertex of C to the image of f.
  std::uint32_t coboundedness = 0;
  bool injective = true;
};

inline QuasiIsometryReport quasi_isometry_report(const Graph& g, const Graph& c, const std::vector<Vertex>& map) {
  if (map.size() != g.size()) throw Error(Errc::InvalidArgument, "vertex map does not cover the host");
  QuasiIsometryReport rep;
  double lambda = 1.0;
  for (Vertex x = 0; x < g.size(); ++x) {
    auto dg = bfs_distances(g, x);
    auto dc = bfs_distances(c, map[x]);
    for (Vertex y = x + 1; y < g.size(); ++y) {
      std::uint32_t a = dg[y], b = dc[map[y]];
      if (a == kInfinity || b == kInfinity) throw Error(Errc::Disconnected, "distance audit needs connected graphs");
      rep.max_additive_error = std::max(rep.max_additive_error, a > b ? a - b : b - a);
      if (b == 0) {
        rep.injective = false;
      } else {
        lambda = std::max({lambda, static_cast<double>(a) / b, static_cast<double>(b) / a});
      }
    }
  }
  if (rep.injective) rep.lambda = lambda;

  // Multi-source BFS from the image.
  std::vector<std::uint32_t> dist(c.size(), kInfinity);
  std::vector<Vertex> queue;
  for (Vertex v : map)
    if (dist[v] == kInfinity) {
      dist[v] = 0;
      queue.push_back(v);
    }
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (Vertex w : c.neighbors(queue[head]))
      if (dist[w] == kInfinity) {
        dist[w] = dist[queue[head]] + 1;
        queue.push_back(w);
      }
  for (auto d : dist) {
    if (d == kInfinity) throw Error(Errc::Disconnected, "cube complex is not connected");
    rep.coboundedness = std::max(rep.coboundedness, d);
  }
  return rep;
}

}  // namespace qmg
