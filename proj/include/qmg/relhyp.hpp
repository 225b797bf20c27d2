#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmg/error.hpp"
#include "qmg/graph.hpp"

namespace qmg {

enum class Finiteness { Finite, Infinite };

/// Gamma together with which vertex groups are infinite. Finiteness is an
/// input, so symbolic groups such as Z work without any table.
struct LabelledGamma {
  Graph gamma;
  std::vector<Finiteness> finiteness;

  LabelledGamma(Graph g, std::vector<Finiteness> f) : gamma(std::move(g)), finiteness(std::move(f)) {
    if (gamma.size() == 0) throw Error(Errc::InvalidArgument, "gamma must be nonempty");
    if (finiteness.size() != gamma.size())
      throw Error(Errc::InvalidArgument, "need one finiteness flag per vertex of gamma");
  }
};

struct LargeJoin {
  VertexSet a;
  VertexSet b;
};

enum class JoinMode {
  All,               // every large join, as in the definition
  InclusionMaximal,  // only inclusion-maximal join supports
};

struct RelhypOptions {
  std::size_t vertex_cap = 16;
  JoinMode mode = JoinMode::All;
};

/// The members of the final collection (fixed point plus uncovered
/// singletons), sorted; `history[n]` is the n-th stage of the iteration, so
/// history.front() holds the join supports and history.back() the fixed point.
struct PeripheralCollection {
  std::vector<VertexSet> members;
  std::vector<std::vector<VertexSet>> history;
  std::size_t iterations = 0;  // first n with stage n+1 == stage n
  bool is_whole = false;       // members == { V(gamma) }
};

namespace detail {

using Mask = std::uint64_t;

class MaskView {
 public:
  MaskView(const LabelledGamma& lg, std::size_t cap) : n_(lg.gamma.size()) {
    if (n_ > cap || n_ > 64)
      throw Error(Errc::VertexCapExceeded, "gamma has " + std::to_string(n_) + " vertices, cap is " +
                                               std::to_string(std::min<std::size_t>(cap, 64)));
    adj_.resize(n_, 0);
    for (Edge e : lg.gamma.edges()) {
      adj_[e.u] |= Mask{1} << e.v;
      adj_[e.v] |= Mask{1} << e.u;
    }
    for (std::size_t v = 0; v < n_; ++v)
      if (lg.finiteness[v] == Finiteness::Infinite) infinite_ |= Mask{1} << v;
  }

  std::size_t size() const { return n_; }
  Mask all() const { return n_ == 64 ? ~Mask{0} : (Mask{1} << n_) - 1; }
  Mask link(std::size_t v) const { return adj_[v]; }

  /// Narrow iff complete with only finite vertex groups; the empty set is narrow.
  bool vast(Mask s) const {
    if (s & infinite_) return true;
    for (Mask rest = s; rest; rest &= rest - 1) {
      auto v = static_cast<std::size_t>(std::countr_zero(rest));
      if ((s & ~(Mask{1} << v) & ~adj_[v]) != 0) return true;
    }
    return false;
  }

  Mask cp(Mask s) const {
    Mask out = s;
    for (std::size_t v = 0; v < n_; ++v)
      if (vast(adj_[v] & s)) out |= Mask{1} << v;
    return out;
  }

  Mask from(const VertexSet& s) const {
    if (s.universe() != n_) throw Error(Errc::OutOfRange, "vertex set does not belong to gamma");
    Mask m = 0;
    s.for_each([&](Vertex v) { m |= Mask{1} << v; });
    return m;
  }

  VertexSet to_set(Mask m) const {
    VertexSet s(n_);
    for (; m; m &= m - 1) s.insert(static_cast<Vertex>(std::countr_zero(m)));
    return s;
  }

  /// Every unordered large join (A, B), ordered so the smallest vertex of A
  /// is below the smallest vertex of B.
  template <typename F>
  void for_each_large_join(F&& f) const {
    for (Mask a = 1; a <= all() && a != 0; ++a) {
      if (!vast(a)) continue;
      Mask common = all();
      for (Mask rest = a; rest; rest &= rest - 1) common &= adj_[std::countr_zero(rest)];
      const Mask low_a = a & -a;
      // B ranges over nonempty submasks of the common neighbourhood.
      for (Mask b = common; b; b = (b - 1) & common) {
        if ((b & -b) < low_a || !vast(b)) continue;
        f(a, b);
      }
      if (a == all()) break;
    }
  }

 private:
  std::size_t n_;
  std::vector<Mask> adj_;
  Mask infinite_ = 0;
};

inline std::vector<Mask> sorted_unique(std::vector<Mask> v, const MaskView& mv) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::sort(v.begin(), v.end(), [&](Mask x, Mask y) { return mv.to_set(x) < mv.to_set(y); });
  return v;
}

inline std::vector<Mask> join_supports(const MaskView& mv, JoinMode mode) {
  std::vector<Mask> supports;
  mv.for_each_large_join([&](Mask a, Mask b) { supports.push_back(a | b); });
  supports = sorted_unique(std::move(supports), mv);
  if (mode == JoinMode::InclusionMaximal) {
    std::vector<Mask> maximal;
    for (Mask s : supports) {
      bool dominated = std::any_of(supports.begin(), supports.end(), [&](Mask t) { return t != s && (s & t) == s; });
      if (!dominated) maximal.push_back(s);
    }
    supports = std::move(maximal);
  }
  return supports;
}

}  // namespace detail

inline bool is_vast(const LabelledGamma& lg, const VertexSet& sub) {
  if (sub.universe() != lg.gamma.size()) throw Error(Errc::OutOfRange, "vertex set does not belong to gamma");
  bool narrow = true;
  sub.for_each([&](Vertex v) {
    if (lg.finiteness[v] == Finiteness::Infinite) narrow = false;
  });
  if (!narrow) return true;
  auto members = sub.members();
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t k = i + 1; k < members.size(); ++k)
      if (!lg.gamma.adjacent(members[i], members[k])) return true;
  return false;
}

inline std::vector<LargeJoin> large_joins(const LabelledGamma& lg, std::size_t vertex_cap = 16) {
  detail::MaskView mv(lg, vertex_cap);
  std::vector<std::pair<detail::Mask, detail::Mask>> raw;
  mv.for_each_large_join([&](detail::Mask a, detail::Mask b) { raw.emplace_back(a, b); });
  std::vector<LargeJoin> out;
  out.reserve(raw.size());
  for (auto [a, b] : raw) out.push_back({mv.to_set(a), mv.to_set(b)});
  std::sort(out.begin(), out.end(), [](const LargeJoin& x, const LargeJoin& y) {
    if (!(x.a == y.a)) return x.a < y.a;
    return x.b < y.b;
  });
  return out;
}

/// sub together with every vertex whose link meets sub in a vast set.
inline VertexSet cp(const LabelledGamma& lg, const VertexSet& sub) {
  detail::MaskView mv(lg, 64);
  return mv.to_set(mv.cp(mv.from(sub)));
}

/// Stage 0 is the set of large-join supports A ∪ B. Each stage links members
/// with vast intersection, and every connected component is replaced by cp of
/// its union. Stops at the first repeated stage, then adds the singletons of
/// vertices not covered by the fixed point.
inline PeripheralCollection compute_J(const LabelledGamma& lg, const RelhypOptions& opt = {}) {
  using detail::Mask;
  detail::MaskView mv(lg, opt.vertex_cap);
  PeripheralCollection out;
  auto to_sets = [&](const std::vector<Mask>& ms) {
    std::vector<VertexSet> v;
    for (Mask m : ms) v.push_back(mv.to_set(m));
    return v;
  };

  std::vector<Mask> stage = detail::join_supports(mv, opt.mode);
  out.history.push_back(to_sets(stage));
  for (;;) {
    const std::size_t k = stage.size();
    std::vector<std::uint32_t> comp(k);
    for (std::uint32_t i = 0; i < k; ++i) comp[i] = i;
    auto find = [&](std::uint32_t x) {
      while (comp[x] != x) x = comp[x] = comp[comp[x]];
      return x;
    };
    for (std::uint32_t i = 0; i < k; ++i)
      for (std::uint32_t j = i + 1; j < k; ++j)
        if (mv.vast(stage[i] & stage[j])) {
          auto a = find(i), b = find(j);
          if (a != b) comp[std::max(a, b)] = std::min(a, b);
        }
    std::vector<Mask> unions(k, 0);
    for (std::uint32_t i = 0; i < k; ++i) unions[find(i)] |= stage[i];
    std::vector<Mask> next;
    for (std::uint32_t i = 0; i < k; ++i)
      if (find(i) == i) next.push_back(mv.cp(unions[i]));
    next = detail::sorted_unique(std::move(next), mv);
    if (next == stage) break;
    stage = std::move(next);
    out.history.push_back(to_sets(stage));
    ++out.iterations;
  }

  Mask covered = 0;
  std::vector<Mask> members = stage;
  for (Mask m : stage) covered |= m;
  for (std::size_t v = 0; v < mv.size(); ++v)
    if (!(covered >> v & 1U)) members.push_back(Mask{1} << v);
  members = detail::sorted_unique(std::move(members), mv);
  out.members = to_sets(members);
  out.is_whole = members.size() == 1 && members.front() == mv.all();
  return out;
}

enum class RelhypVerdict { NotRelativelyHyperbolic, RelativelyHyperbolic };

constexpr std::string_view to_string(RelhypVerdict v) {
  return v == RelhypVerdict::NotRelativelyHyperbolic ? "NotRelativelyHyperbolic" : "RelativelyHyperbolic";
}

struct Classification {
  RelhypVerdict verdict;
  PeripheralCollection peripherals;
  /// Gamma complete with only finite vertex groups: the product is finite and
  /// the verdict holds only in the trivial sense.
  bool degenerate = false;
};

inline Classification classify(const LabelledGamma& lg, const RelhypOptions& opt = {}) {
  if (lg.gamma.size() < 2) throw Error(Errc::SingleVertex, "classification needs gamma with at least two vertices");
  Classification c;
  c.peripherals = compute_J(lg, opt);
  c.verdict = c.peripherals.is_whole ? RelhypVerdict::NotRelativelyHyperbolic : RelhypVerdict::RelativelyHyperbolic;
  c.degenerate = !is_vast(lg, VertexSet::full(lg.gamma.size()));
  return c;
}

}  // namespace qmg
