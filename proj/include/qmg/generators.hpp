#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qmg/error.hpp"
#include "qmg/graph.hpp"
#include "qmg/hyperplanes.hpp"
#include "qmg/random.hpp"

namespace qmg {

// ---------------------------------------------------------------------------
// Named small graphs

inline Graph empty_graph(std::size_t n) { return Graph(n); }

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) e.push_back({a, b});
  return Graph(n, e);
}

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex a = 0; a + 1 < n; ++a) e.push_back({a, a + 1});
  return Graph(n, e);
}

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw Error(Errc::InvalidArgument, "a cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (Vertex a = 0; a < n; ++a) e.push_back({a, static_cast<Vertex>((a + 1) % n)});
  return Graph(n, e);
}

/// Parts {0..p-1} and {p..p+q-1}.
inline Graph complete_bipartite(std::size_t p, std::size_t q) {
  std::vector<Edge> e;
  for (Vertex a = 0; a < p; ++a)
    for (Vertex b = 0; b < q; ++b) e.push_back({a, static_cast<Vertex>(p + b)});
  return Graph(p + q, e);
}

/// K_{s1} x ... x K_{sk}. Vertex index is the mixed-radix number of the
/// coordinate tuple, first coordinate most significant.
inline Graph prism(const std::vector<std::uint32_t>& sizes) {
  if (sizes.empty()) throw Error(Errc::InvalidArgument, "prism needs at least one factor");
  Graph out = complete_graph(1);
  for (auto s : sizes) {
    if (s == 0) throw Error(Errc::InvalidArgument, "prism factors must have size >= 1");
    out = cartesian_product(out, complete_graph(s));
  }
  return out;
}

inline Graph hypercube(std::size_t dim) {
  if (dim == 0) return complete_graph(1);
  return prism(std::vector<std::uint32_t>(dim, 2));
}

// ---------------------------------------------------------------------------
// Gated amalgams

/// Glue g1 and g2 by identifying `correspondence[i].first` in g1 with
/// `correspondence[i].second` in g2.
struct AmalgamSpec {
  Graph g1;
  Graph g2;
  std::vector<std::pair<Vertex, Vertex>> correspondence;
};

struct AmalgamResult {
  Graph graph;
  /// g2 vertex -> result vertex. g1 vertices keep their indices; the
  /// unmatched g2 vertices follow in ascending order.
  std::vector<Vertex> second_to_result;
};

inline AmalgamResult gated_amalgam(const AmalgamSpec& spec) {
  const Graph& g1 = spec.g1;
  const Graph& g2 = spec.g2;
  if (spec.correspondence.empty()) throw Error(Errc::InvalidArgument, "gated amalgam along an empty subgraph");

  VertexSet side1(g1.size()), side2(g2.size());
  for (auto [a, b] : spec.correspondence) {
    if (a >= g1.size() || b >= g2.size()) throw Error(Errc::OutOfRange, "correspondence vertex out of range");
    if (side1.contains(a) || side2.contains(b))
      throw Error(Errc::NotIsomorphic, "correspondence is not a bijection");
    side1.insert(a);
    side2.insert(b);
  }
  const auto& corr = spec.correspondence;
  for (std::size_t i = 0; i < corr.size(); ++i)
    for (std::size_t k = i + 1; k < corr.size(); ++k)
      if (g1.adjacent(corr[i].first, corr[k].first) != g2.adjacent(corr[i].second, corr[k].second))
        throw Error(Errc::NotIsomorphic, "correspondence is not an isomorphism of the induced subgraphs");
  if (!is_gated(g1, side1)) throw Error(Errc::NotGated, "glued subgraph is not gated in the first graph");
  if (!is_gated(g2, side2)) throw Error(Errc::NotGated, "glued subgraph is not gated in the second graph");

  AmalgamResult out;
  out.second_to_result.assign(g2.size(), kInfinity);
  for (auto [a, b] : corr) out.second_to_result[b] = a;
  Vertex next = static_cast<Vertex>(g1.size());
  for (Vertex b = 0; b < g2.size(); ++b)
    if (out.second_to_result[b] == kInfinity) out.second_to_result[b] = next++;

  std::vector<Edge> edges(g1.edges().begin(), g1.edges().end());
  for (Edge e : g2.edges()) edges.push_back({out.second_to_result[e.u], out.second_to_result[e.v]});
  out.graph = Graph(next, edges);
  return out;
}

// ---------------------------------------------------------------------------
// Random quasi-median graphs

struct RandomQuasiMedianOptions {
  std::uint64_t seed = 1;
  std::uint32_t steps = 1;
  std::uint32_t max_prism = 3;    // largest clique factor
  std::uint32_t max_factors = 3;  // most factors in one prism
  std::size_t max_vertices = 300;
};

namespace detail {

struct PrismBlock {
  std::vector<std::uint32_t> sizes;
  std::vector<Vertex> vertex_of;  // mixed-radix coordinate index -> graph vertex
};

inline std::size_t product_of(const std::vector<std::uint32_t>& s) {
  return std::accumulate(s.begin(), s.end(), std::size_t{1}, [](std::size_t a, std::uint32_t b) { return a * b; });
}

inline std::vector<std::uint32_t> decode(std::size_t index, const std::vector<std::uint32_t>& sizes) {
  std::vector<std::uint32_t> c(sizes.size());
  for (std::size_t i = sizes.size(); i-- > 0;) {
    c[i] = static_cast<std::uint32_t>(index % sizes[i]);
    index /= sizes[i];
  }
  return c;
}

inline std::size_t encode(const std::vector<std::uint32_t>& coords, const std::vector<std::uint32_t>& sizes) {
  std::size_t index = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) index = index * sizes[i] + coords[i];
  return index;
}

}  // namespace detail

/// Start from a random prism, then repeatedly glue a fresh prism along a
/// coordinate sub-prism of some earlier block (a single vertex when every
/// coordinate is fixed, a clique when one is free). Blocks stay gated in the
/// growing graph, so each gluing is a gated amalgam. Steps that would push
/// the graph past `max_vertices` fall back to gluing a pendant edge at a
/// vertex, or are skipped when even that does not fit.
inline Graph random_quasi_median(const RandomQuasiMedianOptions& opt) {
  if (opt.steps == 0) throw Error(Errc::InvalidArgument, "random_quasi_median needs at least one step");
  if (opt.max_prism < 2) throw Error(Errc::InvalidArgument, "max_prism must be at least 2");
  if (opt.max_factors == 0) throw Error(Errc::InvalidArgument, "max_factors must be at least 1");
  SplitMix64 rng(opt.seed);

  auto random_sizes = [&](std::size_t count) {
    std::vector<std::uint32_t> s(count);
    for (auto& x : s) x = static_cast<std::uint32_t>(rng.between(2, opt.max_prism));
    return s;
  };

  std::vector<std::uint32_t> first = random_sizes(rng.between(1, opt.max_factors));
  while (detail::product_of(first) > opt.max_vertices && first.size() > 1) first.pop_back();
  Graph g = prism(first);
  std::vector<detail::PrismBlock> blocks;
  {
    detail::PrismBlock b{first, {}};
    b.vertex_of.resize(g.size());
    std::iota(b.vertex_of.begin(), b.vertex_of.end(), 0U);
    blocks.push_back(std::move(b));
  }

  for (std::uint32_t step = 1; step < opt.steps; ++step) {
    const detail::PrismBlock& host = blocks[rng.below(blocks.size())];
    std::vector<bool> free(host.sizes.size());
    std::vector<std::uint32_t> fixed(host.sizes.size());
    std::vector<std::uint32_t> glue_sizes;
    for (std::size_t i = 0; i < host.sizes.size(); ++i) {
      free[i] = rng.below(2) == 1;
      fixed[i] = static_cast<std::uint32_t>(rng.below(host.sizes[i]));
      if (free[i]) glue_sizes.push_back(host.sizes[i]);
    }
    std::size_t room = opt.max_factors > glue_sizes.size() ? opt.max_factors - glue_sizes.size() : 0;
    std::vector<std::uint32_t> extra = random_sizes(rng.between(1, std::max<std::size_t>(room, 1)));

    auto growth = [&] { return detail::product_of(glue_sizes) * (detail::product_of(extra) - 1); };
    if (g.size() + growth() > opt.max_vertices) {
      std::fill(free.begin(), free.end(), false);
      glue_sizes.clear();
      extra = {2};
      if (g.size() + growth() > opt.max_vertices) continue;
    }

    std::vector<std::uint32_t> new_sizes = glue_sizes;
    new_sizes.insert(new_sizes.end(), extra.begin(), extra.end());
    AmalgamSpec spec{g, prism(new_sizes), {}};
    const std::size_t glue_count = detail::product_of(glue_sizes);
    for (std::size_t t = 0; t < glue_count; ++t) {
      auto local = detail::decode(t, glue_sizes);
      std::vector<std::uint32_t> host_coords = fixed;
      std::size_t k = 0;
      for (std::size_t i = 0; i < host.sizes.size(); ++i)
        if (free[i]) host_coords[i] = local[k++];
      std::vector<std::uint32_t> new_coords = local;
      new_coords.resize(new_sizes.size(), 0);
      spec.correspondence.emplace_back(host.vertex_of[detail::encode(host_coords, host.sizes)],
                                       static_cast<Vertex>(detail::encode(new_coords, new_sizes)));
    }
    auto glued = gated_amalgam(spec);
    g = std::move(glued.graph);
    blocks.push_back({new_sizes, std::move(glued.second_to_result)});
  }
  return g;
}

inline Graph random_quasi_median(std::uint64_t seed, std::uint32_t steps, std::uint32_t max_prism = 3) {
  RandomQuasiMedianOptions opt;
  opt.seed = seed;
  opt.steps = steps;
  opt.max_prism = max_prism;
  return random_quasi_median(opt);
}

}  // namespace qmg
