#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvnet/core.hpp"

namespace mvnet {

// Bit vector of length m = sum m_i, addressed by index pairs; bit (1,1) is
// the most significant digit of the corresponding Boolean state rank.
using BoolState = std::vector<int>;

// Boolean space B^m associated with a multivalued source space: one binary
// component per (i, j) pair, named after the source components.
inline MultiSpace boolean_space(const MultiSpace& source,
                                std::uint64_t state_budget = kDefaultStateBudget) {
  const int m = source.boolean_dim();
  if (m >= 64 || (std::uint64_t{1} << m) > state_budget)
    throw BudgetExceeded("boolean_space: 2^m exceeds the enumeration budget");
  std::vector<std::string> names;
  names.reserve(m);
  for (int i = 1; i <= source.component_count(); ++i)
    for (int j = 1; j <= source.level(i); ++j)
      names.push_back(source.component_name(i) + "_" + std::to_string(j));
  return MultiSpace(std::vector<int>(m, 1), std::move(names), state_budget);
}

// Threshold embedding b: bit (i,j) is set iff x_i >= j, so each component
// becomes a descending staircase of exactly x_i ones.
inline BoolState embed(const MultiSpace& source, const MultiState& x) {
  if (static_cast<int>(x.size()) != source.component_count())
    throw SpaceMismatch("embed: coordinate count does not match the space");
  BoolState bits;
  bits.reserve(source.boolean_dim());
  for (int i = 1; i <= source.component_count(); ++i) {
    const int v = x[i - 1];
    if (v < 0 || v > source.level(i)) throw CoordinateOutOfRange("embed: coordinate out of range");
    for (int j = 1; j <= source.level(i); ++j) bits.push_back(v >= j ? 1 : 0);
  }
  return bits;
}

inline bool is_admissible(const MultiSpace& source, const BoolState& y) {
  if (static_cast<int>(y.size()) != source.boolean_dim())
    throw SpaceMismatch("is_admissible: bit count does not match the space");
  int pos = 0;
  for (int i = 1; i <= source.component_count(); ++i) {
    bool seen_zero = false;
    for (int j = 1; j <= source.level(i); ++j, ++pos) {
      if (y[pos] == 0)
        seen_zero = true;
      else if (seen_zero)
        return false;
    }
  }
  return true;
}

// Inverse of the embedding on the admissible region.
inline MultiState project(const MultiSpace& source, const BoolState& y) {
  if (!is_admissible(source, y))
    throw NonAdmissibleState("project: state is not in the admissible region");
  MultiState x(source.component_count());
  int pos = 0;
  for (int i = 1; i <= source.component_count(); ++i) {
    int count = 0;
    for (int j = 1; j <= source.level(i); ++j, ++pos) count += y[pos];
    x[i - 1] = count;
  }
  return x;
}

// Projection of B^m onto the admissible region that preserves the number of
// set bits in every component block.
inline BoolState psi(const MultiSpace& source, const BoolState& y) {
  if (static_cast<int>(y.size()) != source.boolean_dim())
    throw SpaceMismatch("psi: bit count does not match the space");
  BoolState z(y.size());
  int pos = 0;
  for (int i = 1; i <= source.component_count(); ++i) {
    int count = 0;
    for (int j = 0; j < source.level(i); ++j) count += y[pos + j];
    for (int j = 0; j < source.level(i); ++j) z[pos + j] = j < count ? 1 : 0;
    pos += source.level(i);
  }
  return z;
}

// Rank-level counterparts over B^m, usable once 2^m fits the budget.
namespace bits {

inline StateRank rank_of(const MultiSpace& source, const BoolState& y) {
  StateRank r = 0;
  for (int b : y) r = (r << 1) | static_cast<StateRank>(b != 0);
  if (y.size() != static_cast<std::size_t>(source.boolean_dim()))
    throw SpaceMismatch("bits::rank_of: bit count does not match the space");
  return r;
}

inline BoolState unrank(const MultiSpace& source, StateRank y) {
  const int m = source.boolean_dim();
  BoolState bits(m);
  for (int p = 0; p < m; ++p) bits[p] = static_cast<int>((y >> (m - 1 - p)) & 1u);
  return bits;
}

inline int bit_at(const MultiSpace& source, StateRank y, int position) {
  return static_cast<int>((y >> (source.boolean_dim() - 1 - position)) & 1u);
}

inline StateRank embed_rank(const MultiSpace& source, StateRank x) {
  StateRank r = 0;
  for (int i = 1; i <= source.component_count(); ++i) {
    const int v = source.coordinate(x, i);
    for (int j = 1; j <= source.level(i); ++j) r = (r << 1) | static_cast<StateRank>(v >= j);
  }
  return r;
}

inline bool is_admissible_rank(const MultiSpace& source, StateRank y) {
  const int m = source.boolean_dim();
  int pos = 0;
  for (int i = 1; i <= source.component_count(); ++i) {
    bool seen_zero = false;
    for (int j = 1; j <= source.level(i); ++j, ++pos) {
      const bool bit = ((y >> (m - 1 - pos)) & 1u) != 0;
      if (!bit)
        seen_zero = true;
      else if (seen_zero)
        return false;
    }
  }
  return true;
}

// Per-block popcount, i.e. the multivalued value psi assigns to component i.
inline int block_sum(const MultiSpace& source, StateRank y, int component) {
  const int m = source.boolean_dim();
  const int pos = source.pair_position(IndexPair{component, 1});
  int count = 0;
  for (int j = 0; j < source.level(component); ++j) count += static_cast<int>((y >> (m - 1 - pos - j)) & 1u);
  return count;
}

inline StateRank psi_rank(const MultiSpace& source, StateRank y) {
  StateRank r = 0;
  for (int i = 1; i <= source.component_count(); ++i) {
    const int count = block_sum(source, y, i);
    for (int j = 1; j <= source.level(i); ++j) r = (r << 1) | static_cast<StateRank>(j <= count);
  }
  return r;
}

// Multivalued rank of b^{-1}(y) for admissible y.
inline StateRank project_rank(const MultiSpace& source, StateRank y) {
  if (!is_admissible_rank(source, y))
    throw NonAdmissibleState("project: state is not in the admissible region");
  std::uint64_t r = 0;
  for (int i = 1; i <= source.component_count(); ++i)
    r = r * (static_cast<std::uint64_t>(source.level(i)) + 1) +
        static_cast<std::uint64_t>(block_sum(source, y, i));
  return static_cast<StateRank>(r);
}

// psi* = b^{-1} o psi, defined on all of B^m.
inline StateRank psi_project_rank(const MultiSpace& source, StateRank y) {
  std::uint64_t r = 0;
  for (int i = 1; i <= source.component_count(); ++i)
    r = r * (static_cast<std::uint64_t>(source.level(i)) + 1) +
        static_cast<std::uint64_t>(block_sum(source, y, i));
  return static_cast<StateRank>(r);
}

}  // namespace bits

// Sorted Boolean ranks of the admissible region; the embedding is rank
// monotone, so this is just the image of 0..|X|-1 in order.
inline std::vector<StateRank> admissible_ranks(const MultiSpace& source) {
  std::vector<StateRank> out;
  out.reserve(source.state_count());
  for (StateRank x = 0; x < source.state_count(); ++x) out.push_back(bits::embed_rank(source, x));
  return out;
}

enum class ConversionDomain { kAdmissibleOnly, kTotal };

// Boolean map on B^m tied to a multivalued source space. Admissible-only
// tables are defined exactly on the admissible region and refuse queries
// outside it; total tables cover all 2^m states.
class BooleanConversion {
 public:
  static constexpr StateRank kUndefined = 0xFFFFFFFFu;

  BooleanConversion(MultiSpace source, ConversionDomain domain, std::vector<StateRank> table,
                    std::uint64_t state_budget = kDefaultStateBudget)
      : source_(std::move(source)),
        bit_space_(boolean_space(source_, state_budget)),
        domain_(domain),
        table_(std::move(table)) {
    const std::uint64_t size = bit_space_.state_count();
    if (table_.size() != size) throw Error("BooleanConversion: table must cover all of B^m");
    for (StateRank y = 0; y < size; ++y) {
      const bool adm = bits::is_admissible_rank(source_, y);
      const StateRank img = table_[y];
      if (domain_ == ConversionDomain::kAdmissibleOnly) {
        if (adm != (img != kUndefined))
          throw Error("BooleanConversion: admissible-only table must be defined exactly on the admissible region");
        if (adm && !bits::is_admissible_rank(source_, img))
          throw NonAdmissibleState("BooleanConversion: admissible-only image leaves the admissible region");
      } else if (img >= size) {
        throw CoordinateOutOfRange("BooleanConversion: image out of range");
      }
    }
  }

  const MultiSpace& source_space() const { return source_; }
  const MultiSpace& bit_space() const { return bit_space_; }
  ConversionDomain domain() const { return domain_; }
  bool total() const { return domain_ == ConversionDomain::kTotal; }
  const std::vector<StateRank>& table() const { return table_; }

  bool defined(StateRank y) const { return table_[y] != kUndefined; }

  StateRank image(StateRank y) const {
    const StateRank img = table_[y];
    if (img == kUndefined)
      throw NonAdmissibleState("BooleanConversion: queried outside the admissible region");
    return img;
  }

  BoolState image_state(const BoolState& y) const {
    return bits::unrank(source_, image(bits::rank_of(source_, y)));
  }

  // F_{i,j}(y) as a bit, with (i,j) given by flat position.
  int image_bit(StateRank y, int position) const {
    return bits::bit_at(source_, image(y), position);
  }

  // View a total conversion as a plain Boolean map for dynamics/graph reuse.
  MultivaluedMap as_boolean_map() const {
    if (!total())
      throw PartialMapNotSupported("as_boolean_map: conversion is defined on the admissible region only");
    return MultivaluedMap(bit_space_, table_);
  }

  friend bool operator==(const BooleanConversion& a, const BooleanConversion& b) {
    return a.source_ == b.source_ && a.domain_ == b.domain_ && a.table_ == b.table_;
  }

 private:
  MultiSpace source_;
  MultiSpace bit_space_;
  ConversionDomain domain_;
  std::vector<StateRank> table_;
};

// Partial Boolean conversion f^b = b o f o b^{-1}, defined on the
// admissible region only.
inline BooleanConversion partial_conversion(const MultivaluedMap& f,
                                            std::uint64_t state_budget = kDefaultStateBudget) {
  const MultiSpace& sp = f.space();
  const MultiSpace bsp = boolean_space(sp, state_budget);
  std::vector<StateRank> table(bsp.state_count(), BooleanConversion::kUndefined);
  for (StateRank x = 0; x < sp.state_count(); ++x)
    table[bits::embed_rank(sp, x)] = bits::embed_rank(sp, f.image(x));
  return BooleanConversion(sp, ConversionDomain::kAdmissibleOnly, std::move(table), state_budget);
}

// Total extension F = f^b o psi: non-admissible states borrow the image of
// the sum-preserving admissible state.
inline BooleanConversion extend_via_psi(const MultivaluedMap& f,
                                        std::uint64_t state_budget = kDefaultStateBudget) {
  const MultiSpace& sp = f.space();
  const MultiSpace bsp = boolean_space(sp, state_budget);
  std::vector<StateRank> partial(bsp.state_count(), BooleanConversion::kUndefined);
  for (StateRank x = 0; x < sp.state_count(); ++x)
    partial[bits::embed_rank(sp, x)] = bits::embed_rank(sp, f.image(x));
  std::vector<StateRank> table(bsp.state_count());
  for (StateRank y = 0; y < bsp.state_count(); ++y) table[y] = partial[bits::psi_rank(sp, y)];
  return BooleanConversion(sp, ConversionDomain::kTotal, std::move(table), state_budget);
}

// Total conversion driven by the sign of f_i(psi*(y)) - psi*_i(y): the
// whole block saturates to 0 or 1, or is copied unchanged.
inline BooleanConversion binarise(const MultivaluedMap& f,
                                  std::uint64_t state_budget = kDefaultStateBudget) {
  const MultiSpace& sp = f.space();
  const MultiSpace bsp = boolean_space(sp, state_budget);
  const int m = sp.boolean_dim();
  std::vector<StateRank> table(bsp.state_count());
  for (StateRank y = 0; y < bsp.state_count(); ++y) {
    const StateRank x = bits::psi_project_rank(sp, y);
    StateRank img = 0;
    int pos = 0;
    for (int i = 1; i <= sp.component_count(); ++i) {
      const int d = sign_of(f.image_component(x, i) - sp.coordinate(x, i));
      for (int j = 1; j <= sp.level(i); ++j, ++pos) {
        int bit;
        if (d < 0)
          bit = 0;
        else if (d > 0)
          bit = 1;
        else
          bit = static_cast<int>((y >> (m - 1 - pos)) & 1u);
        img = (img << 1) | static_cast<StateRank>(bit);
      }
    }
    table[y] = img;
  }
  return BooleanConversion(sp, ConversionDomain::kTotal, std::move(table), state_budget);
}

// Does the conversion diagram F o b = b o f commute on the admissible region?
inline bool is_boolean_conversion_of(const BooleanConversion& F, const MultivaluedMap& f) {
  if (!(F.source_space() == f.space())) throw SpaceMismatch("conversion and map live on different spaces");
  const MultiSpace& sp = f.space();
  for (StateRank x = 0; x < sp.state_count(); ++x)
    if (F.image(bits::embed_rank(sp, x)) != bits::embed_rank(sp, f.image(x))) return false;
  return true;
}

// Compatible conversion test: the diagram commutes, the admissible region is
// a trap set of the asynchronous dynamics of F, and every state can reach
// the admissible region. The last condition is checked with one backward
// breadth-first search from the admissible region.
inline bool is_compatible(const BooleanConversion& F, const MultivaluedMap& f) {
  if (!(F.source_space() == f.space())) throw SpaceMismatch("is_compatible: space mismatch");
  if (!F.total()) throw PartialMapNotSupported("is_compatible: needs a total conversion");
  if (!is_boolean_conversion_of(F, f)) return false;

  const MultiSpace& sp = f.space();
  const int m = sp.boolean_dim();
  const StateRank size = static_cast<StateRank>(F.bit_space().state_count());

  // Trap condition: asynchronous successors of admissible states stay
  // admissible.
  for (StateRank x = 0; x < sp.state_count(); ++x) {
    const StateRank y = bits::embed_rank(sp, x);
    const StateRank img = F.image(y);
    for (int p = 0; p < m; ++p) {
      const StateRank mask = StateRank{1} << (m - 1 - p);
      if (((y ^ img) & mask) == 0) continue;
      if (!bits::is_admissible_rank(sp, y ^ mask)) return false;
    }
  }

  // Reachability: walk the asynchronous edges backwards from the admissible
  // region and require full coverage.
  std::vector<char> reached(size, 0);
  std::vector<StateRank> queue;
  queue.reserve(size);
  for (StateRank x = 0; x < sp.state_count(); ++x) {
    const StateRank y = bits::embed_rank(sp, x);
    reached[y] = 1;
    queue.push_back(y);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const StateRank z = queue[head];
    for (int p = 0; p < m; ++p) {
      const StateRank mask = StateRank{1} << (m - 1 - p);
      const StateRank pred = z ^ mask;
      if (reached[pred]) continue;
      // pred -> z is an edge iff F flips bit p at pred.
      if (((pred ^ F.image(pred)) & mask) != 0) {
        reached[pred] = 1;
        queue.push_back(pred);
      }
    }
  }
  for (StateRank y = 0; y < size; ++y)
    if (!reached[y]) return false;
  return true;
}

}  // namespace mvnet
