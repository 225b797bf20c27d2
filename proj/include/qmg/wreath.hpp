#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qmg/error.hpp"
#include "qmg/graph.hpp"
#include "qmg/groups.hpp"
#include "qmg/hyperplanes.hpp"
#include "qmg/recognition.hpp"

namespace qmg {

/// Lamps sit on the vertices of `omega`; the lamplighter is a nonempty convex
/// subgraph of the median `host`; lamps take colours in `lamp_group`. The
/// trivial group is allowed here.
struct WreathConfig {
  Graph host;
  VertexSet omega;
  FiniteGroup lamp_group = FiniteGroup::cyclic(2);
};

inline void validate(const WreathConfig& cfg) {
  if (cfg.omega.universe() != cfg.host.size()) throw Error(Errc::InvalidArgument, "omega does not belong to the host");
  if (cfg.omega.empty()) throw Error(Errc::InvalidArgument, "omega must be nonempty");
  if (!is_median(cfg.host).positive()) throw Error(Errc::NotMedian, "wreath host must be a median graph");
}

/// Support plus the non-identity lamp colours, sorted by lamp vertex.
struct Wreath {
  VertexSet support;
  std::vector<std::pair<Vertex, FiniteGroup::Element>> coloring;

  friend bool operator==(const Wreath&, const Wreath&) = default;
};

inline constexpr std::size_t kDefaultConvexCap = 100'000;

/// Every nonempty interval-closed vertex set of a median host, ordered by
/// size and then lexicographically. Sets are grown from singletons by adding
/// an adjacent vertex and closing under intervals; every convex set is
/// reachable that way because convex sets are connected.
inline std::vector<VertexSet> enumerate_convex_subgraphs(const Graph& host, std::size_t cap = kDefaultConvexCap) {
  if (!is_median(host).positive()) throw Error(Errc::NotMedian, "convex enumeration requires a median host");
  const std::size_t n = host.size();
  DistanceMatrix dist(host);
  std::vector<VertexSet> intervals(n * n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v) intervals[u * n + v] = interval(dist, u, v);

  auto hull = [&](VertexSet s) {
    for (bool grew = true; grew;) {
      grew = false;
      auto members = s.members();
      for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t k = i + 1; k < members.size(); ++k) {
          const VertexSet& iv = intervals[members[i] * n + members[k]];
          if (!iv.is_subset_of(s)) {
            s |= iv;
            grew = true;
          }
        }
    }
    return s;
  };

  std::set<VertexSet> found;
  std::vector<VertexSet> frontier;
  auto record = [&](VertexSet s) {
    if (found.count(s)) return;
    if (found.size() >= cap)
      throw Error(Errc::CapExceeded, "more than " + std::to_string(cap) + " convex subgraphs");
    found.insert(s);
    frontier.push_back(std::move(s));
  };
  for (Vertex v = 0; v < n; ++v) record(VertexSet(n, {v}));
  while (!frontier.empty()) {
    VertexSet c = std::move(frontier.back());
    frontier.pop_back();
    VertexSet boundary(n);
    c.for_each([&](Vertex v) {
      for (Vertex w : host.neighbors(v))
        if (!c.contains(w)) boundary.insert(w);
    });
    boundary.for_each([&](Vertex w) {
      VertexSet grown = c;
      grown.insert(w);
      record(hull(std::move(grown)));
    });
  }
  std::vector<VertexSet> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const VertexSet& a, const VertexSet& b) { return a.size() < b.size(); });
  return out;
}

/// Hyperplanes with an edge inside `s`, ascending.
inline std::vector<ClassId> hyperplanes_meeting(const HyperplaneDecomposition& d, const VertexSet& s) {
  std::vector<bool> meets(d.size(), false);
  for (EdgeId e = 0; e < d.host().edge_count(); ++e) {
    Edge ed = d.host().edges()[e];
    if (s.contains(ed.u) && s.contains(ed.v)) meets[d.class_of(e)] = true;
  }
  std::vector<ClassId> out;
  for (ClassId j = 0; j < d.size(); ++j)
    if (meets[j]) out.push_back(j);
  return out;
}

/// The two readings of "a unique hyperplane meets exactly one of the supports".
struct MoveTest {
  bool incidence = false;  // supports differ and exactly one hyperplane meets only one of them
  bool transform = false;  // additionally the smaller is the larger cut down to one sector of that hyperplane
};

inline MoveTest move_test(const HyperplaneDecomposition& d, const VertexSet& s1, const VertexSet& s2) {
  MoveTest t;
  if (s1 == s2) return t;
  auto h1 = hyperplanes_meeting(d, s1);
  auto h2 = hyperplanes_meeting(d, s2);
  std::vector<ClassId> diff;
  std::set_symmetric_difference(h1.begin(), h1.end(), h2.begin(), h2.end(), std::back_inserter(diff));
  if (diff.size() != 1) return t;
  t.incidence = true;
  const bool first_small = h1.size() < h2.size();
  const VertexSet& small = first_small ? s1 : s2;
  const VertexSet& large = first_small ? s2 : s1;
  if (!small.is_subset_of(large)) return t;
  const ClassId j = diff.front();
  const auto sector = d.sector_of(j, small.first());
  VertexSet cut(large.universe());
  large.for_each([&](Vertex v) {
    if (d.sector_of(j, v) == sector) cut.insert(v);
  });
  t.transform = cut == small;
  return t;
}

/// Move edge: equal colourings and supports related by one hyperplane (both
/// readings must agree). Recolour edge: equal supports and colourings that
/// differ at exactly one lamp inside the support.
inline bool wreath_edge(const WreathConfig& cfg, const HyperplaneDecomposition& d, const Wreath& w1, const Wreath& w2) {
  if (w1.support.universe() != cfg.host.size() || w2.support.universe() != cfg.host.size() ||
      !(d.host() == cfg.host))
    throw Error(Errc::InvalidArgument, "wreaths and decomposition must come from the same configuration");
  if (w1.coloring == w2.coloring) {
    auto t = move_test(d, w1.support, w2.support);
    return t.incidence && t.transform;
  }
  if (!(w1.support == w2.support)) return false;
  const auto identity = cfg.lamp_group.identity();
  auto colour = [&](const Wreath& w, Vertex p) {
    auto it = std::lower_bound(w.coloring.begin(), w.coloring.end(), std::make_pair(p, FiniteGroup::Element{0}));
    return it != w.coloring.end() && it->first == p ? it->second : identity;
  };
  std::size_t differing = 0;
  Vertex where = 0;
  cfg.omega.for_each([&](Vertex p) {
    if (colour(w1, p) != colour(w2, p)) {
      ++differing;
      where = p;
    }
  });
  return differing == 1 && w1.support.contains(where);
}

struct WreathCaps {
  std::size_t convex_cap = kDefaultConvexCap;
  std::size_t vertex_cap = 1'000'000;
};

struct WreathGraph {
  Graph graph;
  std::vector<VertexSet> convex_sets;
  std::vector<Wreath> wreaths;  // per graph vertex
  /// Convex-set pairs where the incidence reading holds but the transform
  /// reading fails; such pairs are not joined.
  std::vector<std::pair<std::size_t, std::size_t>> disagreements;
};

/// Vertex index = convex index * |G|^|omega| + colouring index, the colouring
/// read as a base-|G| number over omega in ascending order (first lamp most
/// significant).
inline WreathGraph build_wreath_graph(const WreathConfig& cfg, const WreathCaps& caps = {}) {
  validate(cfg);
  WreathGraph out;
  out.convex_sets = enumerate_convex_subgraphs(cfg.host, caps.convex_cap);
  const auto lamps = cfg.omega.members();
  const std::uint32_t q = cfg.lamp_group.order();
  std::size_t colourings = 1;
  for (std::size_t i = 0; i < lamps.size(); ++i) {
    if (colourings > caps.vertex_cap / q) throw Error(Errc::CapExceeded, "too many lamp colourings");
    colourings *= q;
  }
  if (out.convex_sets.size() > caps.vertex_cap / colourings)
    throw Error(Errc::CapExceeded, "graph of wreaths exceeds " + std::to_string(caps.vertex_cap) + " vertices");

  auto d = compute_hyperplanes(cfg.host);
  std::vector<std::size_t> radix(lamps.size(), 1);
  for (std::size_t i = lamps.size(); i-- > 1;) radix[i - 1] = radix[i] * q;

  std::vector<Edge> edges;
  const std::size_t sets = out.convex_sets.size();
  for (std::size_t a = 0; a < sets; ++a)
    for (std::size_t b = a + 1; b < sets; ++b) {
      auto t = move_test(d, out.convex_sets[a], out.convex_sets[b]);
      if (t.incidence && !t.transform) out.disagreements.emplace_back(a, b);
      if (!(t.incidence && t.transform)) continue;
      for (std::size_t k = 0; k < colourings; ++k)
        edges.push_back({static_cast<Vertex>(a * colourings + k), static_cast<Vertex>(b * colourings + k)});
    }
  for (std::size_t a = 0; a < sets; ++a)
    for (std::size_t k = 0; k < colourings; ++k)
      for (std::size_t i = 0; i < lamps.size(); ++i) {
        if (!out.convex_sets[a].contains(lamps[i])) continue;
        const std::size_t digit = (k / radix[i]) % q;
        for (std::size_t other = digit + 1; other < q; ++other)
          edges.push_back({static_cast<Vertex>(a * colourings + k),
                           static_cast<Vertex>(a * colourings + k + (other - digit) * radix[i])});
      }

  out.wreaths.reserve(sets * colourings);
  for (std::size_t a = 0; a < sets; ++a)
    for (std::size_t k = 0; k < colourings; ++k) {
      Wreath w{out.convex_sets[a], {}};
      for (std::size_t i = 0; i < lamps.size(); ++i) {
        auto x = static_cast<FiniteGroup::Element>((k / radix[i]) % q);
        if (x != cfg.lamp_group.identity()) w.coloring.emplace_back(lamps[i], x);
      }
      out.wreaths.push_back(std::move(w));
    }
  out.graph = Graph(sets * colourings, edges);
  return out;
}

}  // namespace qmg
