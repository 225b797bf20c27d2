#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qmg/error.hpp"
#include "qmg/graph.hpp"

namespace qmg {

using ClassId = std::uint32_t;

class HyperplaneDecomposition;
HyperplaneDecomposition compute_hyperplanes(const Graph& g);

/// Partition of the edges of a host graph into hyperplanes, with sectors,
/// fibers and carriers precomputed for every class. Classes are numbered by
/// their smallest edge id, sectors and fibers by their smallest vertex.
class HyperplaneDecomposition {
 public:
  const Graph& host() const { return host_; }
  std::size_t size() const { return class_edges_.size(); }

  ClassId class_of(EdgeId e) const {
    if (e >= edge_class_.size()) throw Error(Errc::OutOfRange, "edge id out of range");
    return edge_class_[e];
  }
  ClassId class_of(Vertex u, Vertex v) const {
    auto id = host_.edge_id(u, v);
    if (!id)
      throw Error(Errc::InvalidArgument, std::to_string(u) + " and " + std::to_string(v) + " are not adjacent");
    return edge_class_[*id];
  }

  const std::vector<EdgeId>& edges(ClassId j) const { return class_edges_[check(j)]; }
  const VertexSet& carrier(ClassId j) const { return carriers_[check(j)]; }
  const std::vector<VertexSet>& sectors(ClassId j) const { return sectors_[check(j)]; }
  const std::vector<VertexSet>& fibers(ClassId j) const { return fibers_[check(j)]; }

  std::uint32_t sector_of(ClassId j, Vertex v) const {
    if (v >= host_.size()) throw Error(Errc::OutOfRange, "vertex out of range");
    return sector_index_[check(j) * host_.size() + v];
  }

  bool are_transverse(ClassId a, ClassId b) const {
    check(a);
    check(b);
    if (a == b) throw Error(Errc::InvalidArgument, "transversality needs two distinct hyperplanes");
    return transverse_.count({std::min(a, b), std::max(a, b)}) > 0;
  }

 private:
  friend HyperplaneDecomposition compute_hyperplanes(const Graph& g);

  ClassId check(ClassId j) const {
    if (j >= class_edges_.size())
      throw Error(Errc::OutOfRange, "hyperplane " + std::to_string(j) + " does not exist");
    return j;
  }

  Graph host_;
  std::vector<ClassId> edge_class_;
  std::vector<std::vector<EdgeId>> class_edges_;
  std::vector<VertexSet> carriers_;
  std::vector<std::vector<VertexSet>> sectors_;
  std::vector<std::vector<VertexSet>> fibers_;
  std::vector<std::uint32_t> sector_index_;  // class-major, host_.size() per class
  std::set<std::pair<ClassId, ClassId>> transverse_;
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0U); }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::uint32_t> parent_;
};

/// Calls f(a, b, c, d) for every induced 4-cycle a-b-c-d-a, once per
/// orientation-free square up to the choice of the b corner.
template <typename F>
void for_each_square(const Graph& g, F&& f) {
  for (Vertex b = 0; b < g.size(); ++b) {
    auto nb = g.neighbors(b);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        Vertex a = nb[i], c = nb[j];
        if (g.adjacent(a, c)) continue;
        for (Vertex d : g.neighbors(a)) {
          if (d == b || g.adjacent(d, b) || !g.adjacent(d, c)) continue;
          f(a, b, c, d);
        }
      }
    }
  }
}

}  // namespace detail

/// Union-find closure of "opposite sides of an induced square" and "two sides
/// of a triangle". The closure is well defined on any graph; the structural
/// guarantees (sectors gated, carrier a product, distance = separating count)
/// only hold when the host is quasi-median.
inline HyperplaneDecomposition compute_hyperplanes(const Graph& g) {
  HyperplaneDecomposition d;
  d.host_ = g;
  const std::size_t m = g.edge_count();
  const std::size_t n = g.size();
  detail::UnionFind uf(m);
  auto id = [&](Vertex a, Vertex b) { return *g.edge_id(a, b); };

  for (Edge e : g.edges())
    for (Vertex w : g.neighbors(e.u))
      if (w > e.u && g.adjacent(e.v, w)) {
        uf.unite(id(e.u, e.v), id(e.u, w));
        uf.unite(id(e.u, e.v), id(e.v, w));
      }
  detail::for_each_square(g, [&](Vertex a, Vertex b, Vertex c, Vertex dd) {
    uf.unite(id(a, b), id(dd, c));
    uf.unite(id(b, c), id(a, dd));
  });

  // Renumber by smallest edge id.
  std::vector<ClassId> root_class(m, kInfinity);
  d.edge_class_.resize(m);
  for (EdgeId e = 0; e < m; ++e) {
    auto r = uf.find(e);
    if (root_class[r] == kInfinity) {
      root_class[r] = static_cast<ClassId>(d.class_edges_.size());
      d.class_edges_.emplace_back();
    }
    d.edge_class_[e] = root_class[r];
    d.class_edges_[root_class[r]].push_back(e);
  }

  detail::for_each_square(g, [&](Vertex a, Vertex b, Vertex c, Vertex) {
    ClassId x = d.edge_class_[id(a, b)];
    ClassId y = d.edge_class_[id(b, c)];
    if (x != y) d.transverse_.insert({std::min(x, y), std::max(x, y)});
  });

  const std::size_t classes = d.class_edges_.size();
  d.sector_index_.resize(classes * n);
  for (ClassId j = 0; j < classes; ++j) {
    VertexSet carrier(n);
    for (EdgeId e : d.class_edges_[j]) {
      carrier.insert(g.edges()[e].u);
      carrier.insert(g.edges()[e].v);
    }
    auto [comp, count] = component_labels(g, [&](EdgeId e) { return d.edge_class_[e] == j; });
    std::vector<VertexSet> sectors(count, VertexSet(n));
    for (Vertex v = 0; v < n; ++v) {
      sectors[comp[v]].insert(v);
      d.sector_index_[j * n + v] = comp[v];
    }
    // Fibers: components of the induced carrier once J's edges are removed.
    auto fiber_of = component_labels(g, [&](EdgeId e) {
      Edge ed = g.edges()[e];
      return d.edge_class_[e] == j || !carrier.contains(ed.u) || !carrier.contains(ed.v);
    });
    std::vector<std::uint32_t> remap(fiber_of.second, kInfinity);
    std::vector<VertexSet> fibers;
    carrier.for_each([&](Vertex v) {
      auto c = fiber_of.first[v];
      if (remap[c] == kInfinity) {
        remap[c] = static_cast<std::uint32_t>(fibers.size());
        fibers.emplace_back(n);
      }
      fibers[remap[c]].insert(v);
    });
    d.carriers_.push_back(std::move(carrier));
    d.sectors_.push_back(std::move(sectors));
    d.fibers_.push_back(std::move(fibers));
  }
  return d;
}

inline const std::vector<VertexSet>& sectors(const HyperplaneDecomposition& d, ClassId j) { return d.sectors(j); }
inline const std::vector<VertexSet>& fibers(const HyperplaneDecomposition& d, ClassId j) { return d.fibers(j); }
inline bool are_transverse(const HyperplaneDecomposition& d, ClassId a, ClassId b) { return d.are_transverse(a, b); }

/// Hyperplanes whose sectors put x and y apart, ascending.
inline std::vector<ClassId> separating_hyperplanes(const HyperplaneDecomposition& d, Vertex x, Vertex y) {
  const std::size_t n = d.host().size();
  if (x >= n || y >= n) throw Error(Errc::OutOfRange, "vertex out of range");
  std::vector<ClassId> out;
  for (ClassId j = 0; j < d.size(); ++j)
    if (d.sector_of(j, x) != d.sector_of(j, y)) out.push_back(j);
  return out;
}

struct GeodesicCheck {
  bool geodesic = true;
  std::optional<ClassId> repeated;  // first hyperplane crossed twice
};

inline GeodesicCheck is_geodesic(const HyperplaneDecomposition& d, std::span<const Vertex> path) {
  GeodesicCheck out;
  std::vector<bool> crossed(d.size(), false);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!d.host().adjacent(path[i], path[i + 1]))
      throw Error(Errc::InvalidArgument,
                  "not a path: " + std::to_string(path[i]) + " and " + std::to_string(path[i + 1]) + " are not adjacent");
    ClassId j = d.class_of(path[i], path[i + 1]);
    if (crossed[j] && out.geodesic) {
      out.geodesic = false;
      out.repeated = j;
    }
    crossed[j] = true;
  }
  if (path.size() == 1 && path[0] >= d.host().size()) throw Error(Errc::OutOfRange, "vertex out of range");
  return out;
}

// ---------------------------------------------------------------------------
// Gates

/// Gated: `gate` is the gate of x. Otherwise `gate` is the nearest candidate
/// (smallest index among nearest) and `violator` a vertex of Y with no
/// geodesic from x through the candidate.
struct GateResult {
  bool gated = false;
  Vertex x = 0;
  Vertex gate = 0;
  std::optional<Vertex> violator;
};

inline GateResult gate(const DistanceMatrix& dist, const VertexSet& y, Vertex x) {
  if (y.empty()) throw Error(Errc::InvalidArgument, "gate target is empty");
  if (x >= dist.size()) throw Error(Errc::OutOfRange, "vertex out of range");
  GateResult r;
  r.x = x;
  std::uint32_t best = kInfinity;
  y.for_each([&](Vertex v) {
    if (dist(x, v) < best) {
      best = dist(x, v);
      r.gate = v;
    }
  });
  if (best == kInfinity) throw Error(Errc::Disconnected, "target unreachable from vertex " + std::to_string(x));
  r.gated = true;
  y.for_each([&](Vertex z) {
    if (r.gated && dist(x, r.gate) + dist(r.gate, z) != dist(x, z)) {
      r.gated = false;
      r.violator = z;
    }
  });
  return r;
}

inline GateResult gate(const Graph& g, const VertexSet& y, Vertex x) {
  if (y.empty()) throw Error(Errc::InvalidArgument, "gate target is empty");
  auto dx = bfs_distances(g, x);
  GateResult r;
  r.x = x;
  std::uint32_t best = kInfinity;
  y.for_each([&](Vertex v) {
    if (dx[v] < best) {
      best = dx[v];
      r.gate = v;
    }
  });
  if (best == kInfinity) throw Error(Errc::Disconnected, "target unreachable from vertex " + std::to_string(x));
  auto dy = bfs_distances(g, r.gate);
  r.gated = true;
  y.for_each([&](Vertex z) {
    if (r.gated && dx[r.gate] + dy[z] != dx[z]) {
      r.gated = false;
      r.violator = z;
    }
  });
  return r;
}

inline bool is_gated(const DistanceMatrix& dist, const VertexSet& y) {
  if (y.empty()) throw Error(Errc::InvalidArgument, "gatedness of the empty set is undefined");
  for (Vertex x = 0; x < dist.size(); ++x)
    if (!y.contains(x) && !gate(dist, y, x).gated) return false;
  return true;
}

inline bool is_gated(const Graph& g, const VertexSet& y) { return is_gated(DistanceMatrix(g), y); }

// ---------------------------------------------------------------------------
// Carrier = fiber x clique

struct CarrierReport {
  bool ok = false;
  std::string failure;
  VertexSet fiber;
  VertexSet clique;
  Graph product;  // induced(fiber) x induced(clique)
  /// (carrier vertex, product vertex) pairs, ascending in the carrier vertex.
  std::vector<std::pair<Vertex, Vertex>> isomorphism;
};

/// Builds the natural map N(J) -> F x C, x -> (gate of x in F, the vertex of C
/// in x's fiber), where F is the fiber holding the smallest carrier vertex
/// and C the clique of J-edges at that vertex, and checks that it is a graph
/// isomorphism onto the product.
inline CarrierReport verify_carrier_decomposition(const HyperplaneDecomposition& d, ClassId j,
                                                  const DistanceMatrix& dist) {
  const Graph& g = d.host();
  CarrierReport rep;
  const auto& fibers = d.fibers(j);
  const VertexSet& carrier = d.carrier(j);
  rep.fiber = fibers.front();
  const Vertex base = rep.fiber.first();

  rep.clique = VertexSet(g.size(), {base});
  auto nb = g.neighbors(base);
  auto ids = g.incident_edges(base);
  for (std::size_t i = 0; i < nb.size(); ++i)
    if (d.class_of(ids[i]) == j) rep.clique.insert(nb[i]);
  auto fail = [&](std::string why) {
    rep.ok = false;
    rep.failure = std::move(why);
    return rep;
  };
  auto clique_members = rep.clique.members();
  for (std::size_t a = 0; a < clique_members.size(); ++a)
    for (std::size_t b = a + 1; b < clique_members.size(); ++b)
      if (!g.adjacent(clique_members[a], clique_members[b])) return fail("J-edges at the base vertex do not span a clique");

  std::vector<std::uint32_t> fiber_index(g.size(), kInfinity);
  for (std::uint32_t f = 0; f < fibers.size(); ++f) fibers[f].for_each([&](Vertex v) { fiber_index[v] = f; });
  std::vector<Vertex> clique_in_fiber(fibers.size(), kInfinity);
  for (Vertex c : clique_members) {
    if (clique_in_fiber[fiber_index[c]] != kInfinity) return fail("clique meets a fiber twice");
    clique_in_fiber[fiber_index[c]] = c;
  }
  if (clique_members.size() != fibers.size()) return fail("clique does not meet every fiber");

  auto fiber_sub = induced_subgraph(g, rep.fiber);
  auto clique_sub = induced_subgraph(g, rep.clique);
  rep.product = cartesian_product(fiber_sub.graph, clique_sub.graph);
  std::vector<Vertex> fiber_local(g.size(), kInfinity), clique_local(g.size(), kInfinity);
  for (Vertex i = 0; i < fiber_sub.to_host.size(); ++i) fiber_local[fiber_sub.to_host[i]] = i;
  for (Vertex i = 0; i < clique_sub.to_host.size(); ++i) clique_local[clique_sub.to_host[i]] = i;

  const std::size_t width = clique_members.size();
  std::vector<Vertex> image(g.size(), kInfinity);
  std::vector<bool> hit(rep.product.size(), false);
  bool bad = false;
  std::string why;
  carrier.for_each([&](Vertex x) {
    if (bad) return;
    auto gr = gate(dist, rep.fiber, x);
    if (!gr.gated) {
      bad = true;
      why = "fiber is not gated for vertex " + std::to_string(x);
      return;
    }
    Vertex p = static_cast<Vertex>(fiber_local[gr.gate] * width + clique_local[clique_in_fiber[fiber_index[x]]]);
    if (hit[p]) {
      bad = true;
      why = "map to the product is not injective at vertex " + std::to_string(x);
      return;
    }
    hit[p] = true;
    image[x] = p;
    rep.isomorphism.emplace_back(x, p);
  });
  if (bad) return fail(why);
  if (rep.isomorphism.size() != rep.product.size()) return fail("carrier and product differ in size");

  std::size_t carrier_edges = 0;
  for (Edge e : g.edges()) {
    if (!carrier.contains(e.u) || !carrier.contains(e.v)) continue;
    ++carrier_edges;
    if (!rep.product.adjacent(image[e.u], image[e.v]))
      return fail("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is not mapped to a product edge");
  }
  if (carrier_edges != rep.product.edge_count()) return fail("carrier and product differ in edge count");
  rep.ok = true;
  return rep;
}

inline CarrierReport verify_carrier_decomposition(const HyperplaneDecomposition& d, ClassId j) {
  return verify_carrier_decomposition(d, j, DistanceMatrix(d.host()));
}

/// One vertex per hyperplane, edges between transverse pairs.
inline Graph crossing_graph(const HyperplaneDecomposition& d) {
  std::vector<Edge> edges;
  for (ClassId a = 0; a < d.size(); ++a)
    for (ClassId b = a + 1; b < d.size(); ++b)
      if (d.are_transverse(a, b)) edges.push_back({a, b});
  return Graph(d.size(), edges);
}

}  // namespace qmg
