#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mvnet {

// Dense index of a state inside its enumerated space.
using StateRank = std::uint32_t;

// Default ceiling on enumerable state spaces (multivalued and Boolean alike).
inline constexpr std::uint64_t kDefaultStateBudget = std::uint64_t{1} << 24;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CoordinateOutOfRange : public Error {
 public:
  using Error::Error;
};
class SpaceMismatch : public Error {
 public:
  using Error::Error;
};
class NonAdmissibleState : public Error {
 public:
  using Error::Error;
};
class PartialMapNotSupported : public Error {
 public:
  using Error::Error;
};
class EmptySet : public Error {
 public:
  using Error::Error;
};
class IdenticalStates : public Error {
 public:
  using Error::Error;
};
class UnknownExample : public Error {
 public:
  using Error::Error;
};
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};
class CycleBudgetExceeded : public Error {
 public:
  using Error::Error;
};

inline int sign_of(long long value) { return value > 0 ? 1 : (value < 0 ? -1 : 0); }

// Coordinate vector x with 0 <= x_i <= m_i; component i lives at index i-1.
using MultiState = std::vector<int>;

// Position (i, j) inside the flattened Boolean index set: component i in
// 1..n, level j in 1..m_i. Flat positions are component-major,
// level-ascending, so (1,1) comes first.
struct IndexPair {
  int component = 0;
  int level = 0;
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

// Mixed-radix product space X = {0..m_1} x ... x {0..m_n}. State ranks
// enumerate X with component 1 as the most significant digit, so the last
// component is the least significant one.
class MultiSpace {
 public:
  MultiSpace() = default;

  explicit MultiSpace(std::vector<int> levels, std::vector<std::string> names = {},
                      std::uint64_t state_budget = kDefaultStateBudget)
      : levels_(std::move(levels)), names_(std::move(names)) {
    if (levels_.empty()) throw Error("MultiSpace: need at least one component");
    if (!names_.empty() && names_.size() != levels_.size())
      throw Error("MultiSpace: name count does not match component count");
    std::uint64_t count = 1;
    long long dim = 0;
    for (int m : levels_) {
      if (m < 1) throw Error("MultiSpace: every level bound must be >= 1");
      const std::uint64_t radix = static_cast<std::uint64_t>(m) + 1;
      if (count > state_budget / radix) throw BudgetExceeded("MultiSpace: state count exceeds enumeration budget");
      count *= radix;
      dim += m;
    }
    state_count_ = count;
    boolean_dim_ = static_cast<int>(dim);
    place_.resize(levels_.size());
    std::uint64_t p = 1;
    for (int i = static_cast<int>(levels_.size()) - 1; i >= 0; --i) {
      place_[i] = static_cast<StateRank>(p);
      p *= static_cast<std::uint64_t>(levels_[i]) + 1;
    }
    offset_.resize(levels_.size());
    int off = 0;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      offset_[i] = off;
      off += levels_[i];
    }
  }

  int component_count() const { return static_cast<int>(levels_.size()); }
  const std::vector<int>& levels() const { return levels_; }
  int level(int component) const { return levels_[component - 1]; }
  const std::vector<std::string>& names() const { return names_; }

  std::string component_name(int component) const {
    if (!names_.empty()) return names_[component - 1];
    return "x" + std::to_string(component);
  }

  std::uint64_t state_count() const { return state_count_; }

  // Dimension m of the Boolean image space, m = sum of the level bounds.
  int boolean_dim() const { return boolean_dim_; }

  // Place value of a component inside the mixed-radix rank.
  StateRank place(int component) const { return place_[component - 1]; }

  int coordinate(StateRank state, int component) const {
    return static_cast<int>((state / place_[component - 1]) %
                            static_cast<StateRank>(levels_[component - 1] + 1));
  }

  MultiState coordinates(StateRank state) const {
    MultiState x(levels_.size());
    for (int i = 1; i <= component_count(); ++i) x[i - 1] = coordinate(state, i);
    return x;
  }

  // Flat 0-based position of an index pair; inverse below.
  int pair_position(IndexPair p) const {
    if (p.component < 1 || p.component > component_count())
      throw CoordinateOutOfRange("pair_position: component out of range");
    if (p.level < 1 || p.level > levels_[p.component - 1])
      throw CoordinateOutOfRange("pair_position: level out of range");
    return offset_[p.component - 1] + (p.level - 1);
  }

  IndexPair position_pair(int position) const {
    if (position < 0 || position >= boolean_dim_)
      throw CoordinateOutOfRange("position_pair: position out of range");
    int i = static_cast<int>(std::upper_bound(offset_.begin(), offset_.end(), position) -
                             offset_.begin());
    return IndexPair{i, position - offset_[i - 1] + 1};
  }

  friend bool operator==(const MultiSpace& a, const MultiSpace& b) {
    return a.levels_ == b.levels_;
  }

 private:
  std::vector<int> levels_;
  std::vector<std::string> names_;
  std::vector<StateRank> place_;
  std::vector<int> offset_;
  std::uint64_t state_count_ = 0;
  int boolean_dim_ = 0;
};

// Compact textual form of a state: digits concatenated when every level
// fits one digit (Boolean states come out as plain bit strings), comma
// separated otherwise.
inline std::string state_label(const MultiSpace& space, StateRank state) {
  bool compact = true;
  for (int m : space.levels())
    if (m > 9) compact = false;
  std::string out;
  for (int i = 1; i <= space.component_count(); ++i) {
    if (!compact && i > 1) out += ',';
    out += std::to_string(space.coordinate(state, i));
  }
  return out;
}

inline StateRank rank(const MultiSpace& space, const MultiState& x) {
  if (static_cast<int>(x.size()) != space.component_count())
    throw SpaceMismatch("rank: coordinate count does not match the space");
  std::uint64_t r = 0;
  for (int i = 1; i <= space.component_count(); ++i) {
    const int v = x[i - 1];
    if (v < 0 || v > space.level(i)) throw CoordinateOutOfRange("rank: coordinate out of range");
    r = r * (static_cast<std::uint64_t>(space.level(i)) + 1) + static_cast<std::uint64_t>(v);
  }
  return static_cast<StateRank>(r);
}

inline MultiState unrank(const MultiSpace& space, StateRank state) {
  if (state >= space.state_count()) throw CoordinateOutOfRange("unrank: rank out of range");
  return space.coordinates(state);
}

// Total mapping table f: X -> X. Boolean maps are the all-m_i=1 case.
class MultivaluedMap {
 public:
  MultivaluedMap(MultiSpace space, std::vector<StateRank> table)
      : space_(std::move(space)), table_(std::move(table)) {
    if (table_.size() != space_.state_count())
      throw Error("MultivaluedMap: table must cover the whole space");
    for (StateRank img : table_)
      if (img >= space_.state_count()) throw CoordinateOutOfRange("MultivaluedMap: image out of range");
  }

  template <typename Fn>
  static MultivaluedMap from_function(const MultiSpace& space, Fn&& fn) {
    std::vector<StateRank> table(space.state_count());
    for (StateRank s = 0; s < space.state_count(); ++s)
      table[s] = rank(space, fn(space.coordinates(s)));
    return MultivaluedMap(space, std::move(table));
  }

  static MultivaluedMap identity(const MultiSpace& space) {
    std::vector<StateRank> table(space.state_count());
    for (StateRank s = 0; s < space.state_count(); ++s) table[s] = s;
    return MultivaluedMap(space, std::move(table));
  }

  const MultiSpace& space() const { return space_; }
  const std::vector<StateRank>& table() const { return table_; }

  StateRank image(StateRank state) const { return table_[state]; }

  MultiState image_state(const MultiState& x) const {
    return space_.coordinates(table_[rank(space_, x)]);
  }

  // f_i(x): component i of the image.
  int image_component(StateRank state, int component) const {
    return space_.coordinate(table_[state], component);
  }

  friend bool operator==(const MultivaluedMap& a, const MultivaluedMap& b) {
    return a.space_ == b.space_ && a.table_ == b.table_;
  }

 private:
  MultiSpace space_;
  std::vector<StateRank> table_;
};

// Stepwise normal form: every component moves at most one level per
// application, keeping the asynchronous dynamics of f unchanged.
inline MultivaluedMap stepwise(const MultivaluedMap& f) {
  const MultiSpace& sp = f.space();
  std::vector<StateRank> table(sp.state_count());
  for (StateRank s = 0; s < sp.state_count(); ++s) {
    long long img = s;
    for (int i = 1; i <= sp.component_count(); ++i) {
      const int d = sign_of(f.image_component(s, i) - sp.coordinate(s, i));
      img += static_cast<long long>(d) * sp.place(i);
    }
    table[s] = static_cast<StateRank>(img);
  }
  return MultivaluedMap(sp, std::move(table));
}

inline bool is_stepwise(const MultivaluedMap& f) {
  const MultiSpace& sp = f.space();
  for (StateRank s = 0; s < sp.state_count(); ++s)
    for (int i = 1; i <= sp.component_count(); ++i)
      if (std::abs(f.image_component(s, i) - sp.coordinate(s, i)) > 1) return false;
  return true;
}

// Asymptotic normal form: each component saturates to 0 or m_i in the
// direction it would move, and stays put otherwise.
inline MultivaluedMap asymptotic(const MultivaluedMap& f) {
  const MultiSpace& sp = f.space();
  std::vector<StateRank> table(sp.state_count());
  for (StateRank s = 0; s < sp.state_count(); ++s) {
    long long img = s;
    for (int i = 1; i <= sp.component_count(); ++i) {
      const int xi = sp.coordinate(s, i);
      const int d = sign_of(f.image_component(s, i) - xi);
      if (d < 0)
        img -= static_cast<long long>(xi) * sp.place(i);
      else if (d > 0)
        img += static_cast<long long>(sp.level(i) - xi) * sp.place(i);
    }
    table[s] = static_cast<StateRank>(img);
  }
  return MultivaluedMap(sp, std::move(table));
}

inline bool is_asymptotic(const MultivaluedMap& f) { return asymptotic(f) == f; }

// Single asynchronous step of component i: x + sign(f_i(x) - x_i) e^i.
inline StateRank component_step_rank(const MultivaluedMap& f, StateRank state, int component) {
  const MultiSpace& sp = f.space();
  if (component < 1 || component > sp.component_count())
    throw CoordinateOutOfRange("component_step: component out of range");
  const int d = sign_of(f.image_component(state, component) - sp.coordinate(state, component));
  return static_cast<StateRank>(static_cast<long long>(state) + static_cast<long long>(d) * sp.place(component));
}

inline MultiState component_step(const MultivaluedMap& f, const MultiState& x, int component) {
  return f.space().coordinates(component_step_rank(f, rank(f.space(), x), component));
}

}  // namespace mvnet
