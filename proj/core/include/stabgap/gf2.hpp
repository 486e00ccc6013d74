#pragma once

#include <vector>

#include "stabgap/pauli.hpp"

namespace stabgap {

/// Reduced-row-echelon basis of a set of GF(2) vectors, each row carrying an
/// opaque tag that is XOR-combined along with the row. Tags track preimages
/// through the elimination (e.g. a Pauli word whose syndrome is the row).
template <typename Tag>
struct Gf2Basis {
  std::vector<BitVec> rows;
  std::vector<Tag> tags;
  std::vector<int> pivots;  // strictly increasing pivot column per row

  int rank() const { return static_cast<int>(rows.size()); }

  /// Eliminates all pivot bits from v; the remainder is zero iff v is in the span.
  BitVec reduce(const BitVec& v) const {
    BitVec r = v;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (r.get(pivots[i])) r ^= rows[i];
    return r;
  }
  bool in_span(const BitVec& v) const { return !reduce(v).any(); }

  /// Inserts v if independent; returns true when the basis grew.
  bool insert(BitVec v, Tag tag) {
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (v.get(pivots[i])) { v ^= rows[i]; tag = tag ^ tags[i]; }
    int p = -1;
    for (int j = 0; j < v.size(); ++j)
      if (v.get(j)) { p = j; break; }
    if (p < 0) return false;
    // back-substitute to keep reduced form
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i].get(p)) { rows[i] ^= v; tags[i] = tags[i] ^ tag; }
    std::size_t pos = 0;
    while (pos < pivots.size() && pivots[pos] < p) ++pos;
    rows.insert(rows.begin() + pos, v);
    tags.insert(tags.begin() + pos, tag);
    pivots.insert(pivots.begin() + pos, p);
    return true;
  }

  /// Combination of basis rows selected by the low rank() bits of mask.
  BitVec combine(std::uint64_t mask) const {
    BitVec v(rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      if ((mask >> i) & 1) v ^= rows[i];
    return v;
  }
  Tag combine_tags(std::uint64_t mask, Tag zero) const {
    Tag t = zero;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if ((mask >> i) & 1) t = t ^ tags[i];
    return t;
  }

  /// Coordinates of an in-span vector: for a reduced basis these are just the
  /// bits of v at the pivot columns.
  std::uint64_t coords(const BitVec& v) const {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (v.get(pivots[i])) m |= std::uint64_t(1) << i;
    return m;
  }
};

}  // namespace stabgap
