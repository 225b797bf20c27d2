#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qmg/graph.hpp"

namespace testutil {

inline qmg::Graph random_graph(std::size_t n, double p, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<qmg::Edge> edges;
  for (qmg::Vertex u = 0; u < n; ++u)
    for (qmg::Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) edges.push_back({u, v});
  return qmg::Graph(n, edges);
}

// The graph on n vertices whose edge set is encoded by the bits of `code`,
// pairs (u, v), u < v, taken in lexicographic order.
inline qmg::Graph graph_from_code(std::size_t n, std::uint32_t code) {
  std::vector<qmg::Edge> edges;
  std::size_t bit = 0;
  for (qmg::Vertex u = 0; u < n; ++u)
    for (qmg::Vertex v = u + 1; v < n; ++v, ++bit)
      if (code >> bit & 1U) edges.push_back({u, v});
  return qmg::Graph(n, edges);
}

inline std::uint32_t pair_count(std::size_t n) { return static_cast<std::uint32_t>(n * (n - 1) / 2); }

}  // namespace testutil
