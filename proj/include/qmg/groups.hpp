#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qmg/error.hpp"
#include "qmg/random.hpp"

namespace qmg {

/// A finite group given by its multiplication table over elements 0..order-1.
class FiniteGroup {
 public:
  using Element = std::uint32_t;

  /// Z/n with element i standing for i (mod n); identity 0.
  static FiniteGroup cyclic(std::uint32_t n) {
    if (n == 0) throw Error(Errc::InvalidArgument, "cyclic group of order 0");
    std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return FiniteGroup(std::move(t));
  }

  /// Validates the group axioms. Associativity is checked exhaustively up to
  /// order 64 and on 100000 seeded random triples above that.
  static FiniteGroup from_table(std::vector<std::vector<Element>> table) {
    const std::size_t n = table.size();
    if (n == 0) throw Error(Errc::InvalidArgument, "empty multiplication table");
    for (const auto& row : table) {
      if (row.size() != n) throw Error(Errc::InvalidArgument, "multiplication table is not square");
      for (Element x : row)
        if (x >= n) throw Error(Errc::InvalidArgument, "multiplication table entry out of range");
    }
    FiniteGroup g(std::move(table));
    auto assoc = [&](Element a, Element b, Element c) {
      return g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c));
    };
    if (n <= 64) {
      for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
          for (Element c = 0; c < n; ++c)
            if (!assoc(a, b, c)) throw Error(Errc::InvalidArgument, "multiplication table is not associative");
    } else {
      SplitMix64 rng(0x5eed);
      for (int i = 0; i < 100000; ++i)
        if (!assoc(static_cast<Element>(rng.below(n)), static_cast<Element>(rng.below(n)),
                   static_cast<Element>(rng.below(n))))
          throw Error(Errc::InvalidArgument, "multiplication table is not associative");
    }
    return g;
  }

  std::uint32_t order() const { return static_cast<std::uint32_t>(table_.size()); }
  Element identity() const { return identity_; }
  Element multiply(Element a, Element b) const { return table_[check(a)][check(b)]; }
  Element inverse(Element a) const { return inverse_[check(a)]; }
  const std::vector<std::vector<Element>>& table() const { return table_; }

  friend bool operator==(const FiniteGroup&, const FiniteGroup&) = default;

 private:
  explicit FiniteGroup(std::vector<std::vector<Element>> table) : table_(std::move(table)) {
    const auto n = static_cast<Element>(table_.size());
    identity_ = n;
    for (Element e = 0; e < n && identity_ == n; ++e) {
      bool ok = true;
      for (Element a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
      if (ok) identity_ = e;
    }
    if (identity_ == n) throw Error(Errc::InvalidArgument, "multiplication table has no identity");
    inverse_.assign(n, n);
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
    for (Element a = 0; a < n; ++a)
      if (inverse_[a] == n) throw Error(Errc::InvalidArgument, "element " + std::to_string(a) + " has no inverse");
  }

  Element check(Element a) const {
    if (a >= table_.size())
      throw Error(Errc::OutOfRange, "element " + std::to_string(a) + " not in group of order " +
                                        std::to_string(table_.size()));
    return a;
  }

  std::vector<std::vector<Element>> table_;
  Element identity_ = 0;
  std::vector<Element> inverse_;
};

/// Marker for a vertex group handled only symbolically (known to be infinite).
struct SymbolicInfinite {
  friend bool operator==(const SymbolicInfinite&, const SymbolicInfinite&) = default;
};

using GroupSpec = std::variant<FiniteGroup, SymbolicInfinite>;

}  // namespace qmg
