#pragma once

// Slow, literal reference implementations. They share nothing with the
// library beyond the Graph container, and are used to validate it and to
// derive the frozen constants in the tests.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "qmg/graph.hpp"

namespace oracle {

using qmg::Graph;
using qmg::Vertex;
using Dist = std::vector<std::vector<std::uint32_t>>;
constexpr std::uint32_t kInf = 1U << 30;

inline bool adj(const Graph& g, Vertex a, Vertex b) {
  for (auto e : g.edges())
    if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) return true;
  return false;
}

inline std::vector<std::vector<bool>> adjacency(const Graph& g) {
  std::vector<std::vector<bool>> a(g.size(), std::vector<bool>(g.size(), false));
  for (auto e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = true;
  return a;
}

inline Dist floyd_warshall(const Graph& g) {
  const std::size_t n = g.size();
  Dist d(n, std::vector<std::uint32_t>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (auto e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

inline bool connected(const Graph& g) {
  if (g.size() == 0) return false;
  auto d = floyd_warshall(g);
  for (auto x : d[0])
    if (x >= kInf) return false;
  return true;
}

// Smallest (u, v, w), v < w, violating the triangle condition.
inline std::optional<std::vector<Vertex>> triangle_violation(const Graph& g) {
  auto d = floyd_warshall(g);
  auto a = adjacency(g);
  const Vertex n = static_cast<Vertex>(g.size());
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      for (Vertex w = v + 1; w < n; ++w) {
        if (!a[v][w] || d[u][v] != d[u][w] || d[u][v] == 0) continue;
        bool found = false;
        for (Vertex x = 0; x < n && !found; ++x) found = a[x][v] && a[x][w] && d[u][x] + 1 == d[u][v];
        if (!found) return std::vector<Vertex>{u, v, w};
      }
  return std::nullopt;
}

// Smallest (u, z, v, w), v < w, violating the quadrangle condition.
inline std::optional<std::vector<Vertex>> quadrangle_violation(const Graph& g) {
  auto d = floyd_warshall(g);
  auto a = adjacency(g);
  const Vertex n = static_cast<Vertex>(g.size());
  for (Vertex u = 0; u < n; ++u)
    for (Vertex z = 0; z < n; ++z)
      for (Vertex v = 0; v < n; ++v)
        for (Vertex w = v + 1; w < n; ++w) {
          const auto k = d[u][z];
          if (k < 2 || !a[z][v] || !a[z][w] || d[u][v] + 1 != k || d[u][w] + 1 != k) continue;
          bool found = false;
          for (Vertex x = 0; x < n && !found; ++x) found = a[x][v] && a[x][w] && d[u][x] + 2 == k;
          if (!found) return std::vector<Vertex>{u, z, v, w};
        }
  return std::nullopt;
}

// Tries every injective map of the pattern into g.
inline bool has_induced(const Graph& g, const Graph& pattern) {
  const std::size_t k = pattern.size(), n = g.size();
  if (k > n) return false;
  auto a = adjacency(g), p = adjacency(pattern);
  std::vector<Vertex> pick(k);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == k) return true;
    for (Vertex v = 0; v < n; ++v) {
      if (used[v]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = a[v][pick[j]] == p[i][j];
      if (!ok) continue;
      used[v] = true;
      pick[i] = v;
      if (self(self, i + 1)) return true;
      used[v] = false;
    }
    return false;
  };
  return rec(rec, 0);
}

inline bool is_embedding(const Graph& g, const Graph& pattern, const std::vector<Vertex>& map) {
  if (map.size() != pattern.size()) return false;
  auto a = adjacency(g), p = adjacency(pattern);
  for (std::size_t i = 0; i < map.size(); ++i)
    for (std::size_t j = 0; j < map.size(); ++j) {
      if (i != j && map[i] == map[j]) return false;
      if (i != j && a[map[i]][map[j]] != p[i][j]) return false;
    }
  return true;
}

inline Graph k4_minus() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}); }
inline Graph k32() { return Graph(5, {{0, 3}, {0, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}}); }

inline bool quasi_median_by_definition(const Graph& g) {
  return connected(g) && !triangle_violation(g) && !quadrangle_violation(g) && !has_induced(g, k4_minus()) &&
         !has_induced(g, k32());
}

inline std::size_t median_count(const Dist& d, Vertex u, Vertex v, Vertex w) {
  std::size_t c = 0;
  for (Vertex m = 0; m < d.size(); ++m)
    if (d[u][m] + d[m][v] == d[u][v] && d[v][m] + d[m][w] == d[v][w] && d[u][m] + d[m][w] == d[u][w]) ++c;
  return c;
}

inline bool median_by_definition(const Graph& g) {
  if (!connected(g)) return false;
  auto d = floyd_warshall(g);
  const Vertex n = static_cast<Vertex>(g.size());
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      for (Vertex w = 0; w < n; ++w)
        if (median_count(d, u, v, w) != 1) return false;
  return true;
}

// Edge classes of the closure of "share a triangle" and "opposite in an
// induced square", as sorted lists of (u, v) pairs, sorted by first edge.
inline std::vector<std::vector<std::pair<Vertex, Vertex>>> hyperplane_classes(const Graph& g) {
  const auto& es = g.edges();
  const std::size_t m = es.size();
  auto a = adjacency(g);
  std::vector<std::vector<bool>> rel(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      Vertex p = es[i].u, q = es[i].v, r = es[j].u, s = es[j].v;
      std::set<Vertex> all{p, q, r, s};
      if (all.size() == 3) {
        // two edges sharing a vertex, closing a triangle
        Vertex x = p == r || p == s ? q : p;
        Vertex y = r == p || r == q ? s : r;
        if (a[x][y]) rel[i][j] = true;
      } else if (all.size() == 4) {
        for (int flip = 0; flip < 2; ++flip) {
          Vertex c = flip ? s : r, d = flip ? r : s;
          if (a[p][c] && a[q][d] && !a[p][d] && !a[q][c]) rel[i][j] = true;
        }
      }
    }
  std::vector<int> cls(m, -1);
  int next = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (cls[i] >= 0) continue;
    std::vector<std::size_t> stack{i};
    cls[i] = next;
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      for (std::size_t y = 0; y < m; ++y)
        if (rel[x][y] && cls[y] < 0) {
          cls[y] = next;
          stack.push_back(y);
        }
    }
    ++next;
  }
  std::vector<std::vector<std::pair<Vertex, Vertex>>> out(next);
  for (std::size_t i = 0; i < m; ++i) out[cls[i]].push_back({es[i].u, es[i].v});
  return out;
}

// Components of g minus the given edges, as a label per vertex.
inline std::vector<int> components_without(const Graph& g, const std::vector<std::pair<Vertex, Vertex>>& removed) {
  std::set<std::pair<Vertex, Vertex>> cut(removed.begin(), removed.end());
  std::vector<int> label(g.size(), -1);
  int next = 0;
  for (Vertex s = 0; s < g.size(); ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    bool grew = true;
    while (grew) {
      grew = false;
      for (auto e : g.edges()) {
        if (cut.count({e.u, e.v})) continue;
        if (label[e.u] == next && label[e.v] < 0) label[e.v] = next, grew = true;
        if (label[e.v] == next && label[e.u] < 0) label[e.u] = next, grew = true;
      }
    }
    ++next;
  }
  return label;
}

inline std::optional<Vertex> gate(const Dist& d, const std::vector<Vertex>& y, Vertex x) {
  for (Vertex g : y) {
    bool ok = true;
    for (Vertex t : y) ok = ok && d[x][t] == d[x][g] + d[g][t];
    if (ok) return g;
  }
  return std::nullopt;
}

inline bool gated(const Dist& d, const std::vector<Vertex>& y) {
  for (Vertex x = 0; x < d.size(); ++x)
    if (!gate(d, y, x)) return false;
  return true;
}

// All nonempty vertex subsets closed under geodesic intervals (n <= 20).
inline std::vector<std::vector<Vertex>> convex_subsets(const Graph& g) {
  auto d = floyd_warshall(g);
  const std::size_t n = g.size();
  std::vector<std::vector<Vertex>> out;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    bool ok = true;
    for (Vertex u = 0; u < n && ok; ++u)
      for (Vertex v = 0; v < n && ok; ++v) {
        if (!(mask >> u & 1) || !(mask >> v & 1)) continue;
        for (Vertex x = 0; x < n && ok; ++x)
          if (d[u][x] + d[x][v] == d[u][v] && !(mask >> x & 1)) ok = false;
      }
    if (!ok) continue;
    std::vector<Vertex> s;
    for (Vertex v = 0; v < n; ++v)
      if (mask >> v & 1) s.push_back(v);
    out.push_back(s);
  }
  return out;
}

// Every consistent orientation of the walls {side, complement}: one side per
// wall, chosen sides pairwise intersecting. Bit i set = complement side.
inline std::vector<std::uint32_t> consistent_orientations(const std::vector<std::vector<bool>>& sides) {
  const std::size_t w = sides.size();
  std::vector<std::uint32_t> out;
  for (std::uint32_t o = 0; o < (1U << w); ++o) {
    bool ok = true;
    for (std::size_t i = 0; i < w && ok; ++i)
      for (std::size_t j = i + 1; j < w && ok; ++j) {
        bool meet = false;
        for (std::size_t v = 0; v < sides[i].size() && !meet; ++v)
          meet = sides[i][v] != static_cast<bool>(o >> i & 1) && sides[j][v] != static_cast<bool>(o >> j & 1);
        ok = meet;
      }
    if (ok) out.push_back(o);
  }
  return out;
}

// Same set as consistent_orientations, by depth-first search over the 2^w
// assignments with pairwise pruning. Usable up to about 20 walls.
inline std::vector<std::uint32_t> consistent_orientations_pruned(const std::vector<std::vector<bool>>& sides) {
  const std::size_t w = sides.size();
  // meet[(2i + a) * 2w + 2j + b]: side a of wall i meets side b of wall j
  std::vector<bool> meet(4 * w * w, false);
  for (std::size_t i = 0; i < w; ++i)
    for (std::size_t j = 0; j < w; ++j)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (std::size_t v = 0; v < sides[i].size(); ++v)
            if (sides[i][v] != static_cast<bool>(a) && sides[j][v] != static_cast<bool>(b)) {
              meet[(2 * i + a) * 2 * w + 2 * j + b] = true;
              break;
            }
  std::vector<std::uint32_t> out;
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t o) -> void {
    if (i == w) {
      out.push_back(o);
      return;
    }
    for (int a = 0; a < 2; ++a) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = meet[(2 * i + a) * 2 * w + 2 * j + (o >> j & 1)];
      if (ok) self(self, i + 1, o | (static_cast<std::uint32_t>(a) << i));
    }
  };
  rec(rec, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// Free product of cyclic groups Z/orders[i]: elements of syllable length
// <= radius, enumerated as alternating words.
inline std::set<std::vector<std::pair<int, int>>> free_product_ball(const std::vector<int>& orders, int radius) {
  std::set<std::vector<std::pair<int, int>>> out{{}};
  std::vector<std::vector<std::pair<int, int>>> layer{{}};
  for (int r = 0; r < radius; ++r) {
    std::vector<std::vector<std::pair<int, int>>> next;
    for (const auto& w : layer)
      for (int v = 0; v < static_cast<int>(orders.size()); ++v) {
        if (!w.empty() && w.back().first == v) continue;
        for (int x = 1; x < orders[v]; ++x) {
          auto u = w;
          u.push_back({v, x});
          if (out.insert(u).second) next.push_back(u);
        }
      }
    layer = std::move(next);
  }
  return out;
}

// Graph product over gamma of cyclic groups: reduce a word by brute-force
// search over all commutation-equivalent rearrangements. Canonical form =
// the lexicographically smallest reduced arrangement. Only for short words.
inline std::vector<std::pair<int, int>> brute_normal_form(const Graph& gamma, const std::vector<int>& orders,
                                                          std::vector<std::pair<int, int>> w) {
  auto a = adjacency(gamma);
  std::set<std::vector<std::pair<int, int>>> seen;
  std::vector<std::vector<std::pair<int, int>>> queue{w};
  seen.insert(w);
  std::vector<std::pair<int, int>> best;
  std::size_t best_len = SIZE_MAX;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    auto cur = queue[h];
    // drop identities
    cur.erase(std::remove_if(cur.begin(), cur.end(), [&](auto s) { return s.second % orders[s.first] == 0; }), cur.end());
    if (cur.size() < best_len || (cur.size() == best_len && cur < best)) {
      best = cur;
      best_len = cur.size();
    }
    auto push = [&](std::vector<std::pair<int, int>> x) {
      if (seen.insert(x).second) queue.push_back(std::move(x));
    };
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      if (cur[i].first == cur[i + 1].first) {
        auto x = cur;
        x[i].second = (x[i].second + x[i + 1].second) % orders[x[i].first];
        x.erase(x.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        push(x);
      } else if (a[cur[i].first][cur[i + 1].first]) {
        auto x = cur;
        std::swap(x[i], x[i + 1]);
        push(x);
      }
    }
    if (cur != queue[h]) push(cur);
  }
  return best;
}

// Peripheral collection over std::set, straight from the definitions.
struct LiteralPeripherals {
  using Set = std::set<Vertex>;

  const Graph& g;
  std::vector<bool> infinite;

  bool vast(const Set& s) const {
    for (Vertex v : s)
      if (infinite[v]) return true;
    for (Vertex a : s)
      for (Vertex b : s)
        if (a != b && !g.adjacent(a, b)) return true;
    return false;
  }
  Set cp(const Set& s) const {
    Set out = s;
    for (Vertex v = 0; v < g.size(); ++v) {
      Set link;
      for (Vertex w : s)
        if (g.adjacent(v, w)) link.insert(w);
      if (vast(link)) out.insert(v);
    }
    return out;
  }
  std::set<Set> supports() const {
    const std::size_t n = g.size();
    std::set<Set> out;
    const std::uint32_t all = (1U << n) - 1;
    for (std::uint32_t a = 1; a <= all; ++a)
      for (std::uint32_t b = all & ~a; b != 0; b = (b - 1) & all & ~a) {
        Set A, B;
        bool join = true;
        for (Vertex x = 0; x < n; ++x) {
          if (a >> x & 1) A.insert(x);
          if (b >> x & 1) B.insert(x);
        }
        for (Vertex x : A)
          for (Vertex y : B) join = join && g.adjacent(x, y);
        if (!join || !vast(A) || !vast(B)) continue;
        Set u = A;
        u.insert(B.begin(), B.end());
        out.insert(u);
      }
    return out;
  }
  std::set<Set> collection() const {
    std::set<Set> stage = supports();
    for (;;) {
      std::vector<Set> items(stage.begin(), stage.end());
      std::vector<int> comp(items.size());
      std::iota(comp.begin(), comp.end(), 0);
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t i = 0; i < items.size(); ++i)
          for (std::size_t j = 0; j < items.size(); ++j) {
            Set inter;
            std::set_intersection(items[i].begin(), items[i].end(), items[j].begin(), items[j].end(),
                                  std::inserter(inter, inter.end()));
            if (vast(inter) && comp[i] != comp[j]) {
              int lo = std::min(comp[i], comp[j]), hi = std::max(comp[i], comp[j]);
              for (auto& c : comp)
                if (c == hi) c = lo;
              changed = true;
            }
          }
      }
      std::map<int, Set> unions;
      for (std::size_t i = 0; i < items.size(); ++i) unions[comp[i]].insert(items[i].begin(), items[i].end());
      std::set<Set> next;
      for (auto& [k, u] : unions) next.insert(cp(u));
      if (next == stage) break;
      stage = next;
    }
    Set covered;
    for (const auto& s : stage) covered.insert(s.begin(), s.end());
    for (Vertex v = 0; v < g.size(); ++v)
      if (!covered.count(v)) stage.insert(Set{v});
    return stage;
  }
};

}  // namespace oracle
