#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "qmg/error.hpp"

namespace qmg {

using Vertex = std::uint32_t;

/// A subset of the vertices {0, ..., universe-1} of some graph.
///
/// Backed by a bitset so membership, intersection and subset tests are
/// word-parallel. Ordering (`operator<`) is lexicographic on the sorted member
/// lists, which is what every deterministic output in the library sorts by.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : bits_(universe) {}
  VertexSet(std::size_t universe, std::span<const Vertex> members) : bits_(universe) {
    for (Vertex v : members) insert(v);
  }
  VertexSet(std::size_t universe, std::initializer_list<Vertex> members) : bits_(universe) {
    for (Vertex v : members) insert(v);
  }

  static VertexSet full(std::size_t universe) {
    VertexSet s(universe);
    s.bits_.set();
    return s;
  }

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  bool contains(Vertex v) const { return v < bits_.size() && bits_.test(v); }

  void insert(Vertex v) {
    if (v >= bits_.size())
      throw Error(Errc::OutOfRange, "vertex " + std::to_string(v) + " outside universe of size " +
                                        std::to_string(bits_.size()));
    bits_.set(v);
  }
  void erase(Vertex v) {
    if (v < bits_.size()) bits_.reset(v);
  }

  /// Smallest member; universe() when empty.
  Vertex first() const {
    auto p = bits_.find_first();
    return p == Bits::npos ? static_cast<Vertex>(bits_.size()) : static_cast<Vertex>(p);
  }

  template <typename F>
  void for_each(F&& f) const {
    for (auto p = bits_.find_first(); p != Bits::npos; p = bits_.find_next(p))
      f(static_cast<Vertex>(p));
  }

  std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    out.reserve(size());
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
  }

  bool intersects(const VertexSet& o) const { return bits_.intersects(o.bits_); }
  bool is_subset_of(const VertexSet& o) const { return bits_.is_subset_of(o.bits_); }

  VertexSet complement() const {
    VertexSet s(*this);
    s.bits_.flip();
    return s;
  }

  VertexSet& operator&=(const VertexSet& o) { bits_ &= o.bits_; return *this; }
  VertexSet& operator|=(const VertexSet& o) { bits_ |= o.bits_; return *this; }
  VertexSet& operator-=(const VertexSet& o) { bits_ -= o.bits_; return *this; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.bits_ == b.bits_; }

  friend bool operator<(const VertexSet& a, const VertexSet& b) {
    auto pa = a.bits_.find_first();
    auto pb = b.bits_.find_first();
    while (pa != Bits::npos && pb != Bits::npos) {
      if (pa != pb) return pa < pb;
      pa = a.bits_.find_next(pa);
      pb = b.bits_.find_next(pb);
    }
    if (pa == Bits::npos && pb == Bits::npos) return a.universe() < b.universe();
    return pa == Bits::npos;
  }

  std::size_t hash() const { return boost::hash_value(bits_); }

 private:
  using Bits = boost::dynamic_bitset<std::uint64_t>;
  Bits bits_;
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

}  // namespace qmg
