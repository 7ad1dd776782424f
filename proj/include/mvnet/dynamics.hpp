#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "mvnet/conversion.hpp"
#include "mvnet/core.hpp"

namespace mvnet {

// Asynchronous state transition graph: one vertex per state of the
// universe, one edge per single-component move toward the image value.
// The universe is either a full space or the admissible region of one.
class AsyncDynamics {
 public:
  AsyncDynamics(MultiSpace space, bool boolean_labels, std::vector<StateRank> states,
                std::vector<std::vector<int>> successors)
      : space_(std::move(space)),
        boolean_labels_(boolean_labels),
        states_(std::move(states)),
        succ_(std::move(successors)) {
    full_ = states_.size() == space_.state_count();
    if (full_)
      for (std::size_t i = 0; i < states_.size(); ++i)
        if (states_[i] != static_cast<StateRank>(i)) {
          full_ = false;
          break;
        }
  }

  const MultiSpace& space() const { return space_; }
  bool boolean_labels() const { return boolean_labels_; }
  int size() const { return static_cast<int>(states_.size()); }
  StateRank state_at(int index) const { return states_[index]; }
  const std::vector<StateRank>& states() const { return states_; }
  const std::vector<int>& successors(int index) const { return succ_[index]; }

  int index_of(StateRank state) const {
    if (full_) return state < states_.size() ? static_cast<int>(state) : -1;
    auto it = std::lower_bound(states_.begin(), states_.end(), state);
    if (it == states_.end() || *it != state) return -1;
    return static_cast<int>(it - states_.begin());
  }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& s : succ_) n += s.size();
    return n;
  }

 private:
  MultiSpace space_;
  bool boolean_labels_;
  bool full_;
  std::vector<StateRank> states_;
  std::vector<std::vector<int>> succ_;
};

inline AsyncDynamics build_async(const MultivaluedMap& f) {
  const MultiSpace& sp = f.space();
  std::vector<StateRank> states(sp.state_count());
  for (StateRank s = 0; s < sp.state_count(); ++s) states[s] = s;
  std::vector<std::vector<int>> succ(sp.state_count());
  const bool boolean = *std::max_element(sp.levels().begin(), sp.levels().end()) == 1;
  for (StateRank s = 0; s < sp.state_count(); ++s) {
    auto& out = succ[s];
    for (int i = 1; i <= sp.component_count(); ++i) {
      const int d = sign_of(f.image_component(s, i) - sp.coordinate(s, i));
      if (d != 0)
        out.push_back(static_cast<int>(static_cast<long long>(s) +
                                       static_cast<long long>(d) * sp.place(i)));
    }
    std::sort(out.begin(), out.end());
  }
  return AsyncDynamics(sp, boolean, std::move(states), std::move(succ));
}

inline AsyncDynamics build_async(const BooleanConversion& F) {
  if (!F.total())
    throw PartialMapNotSupported(
        "build_async: conversion is defined on the admissible region only; "
        "use build_async_admissible");
  return build_async(F.as_boolean_map());
}

// Asynchronous dynamics of a partial conversion on the admissible region:
// vertices are the admissible states and edges are the bit flips toward the
// image that stay admissible.
inline AsyncDynamics build_async_admissible(const BooleanConversion& F) {
  const MultiSpace& src = F.source_space();
  const int m = src.boolean_dim();
  std::vector<StateRank> states = admissible_ranks(src);
  std::vector<std::vector<int>> succ(states.size());
  for (std::size_t idx = 0; idx < states.size(); ++idx) {
    const StateRank y = states[idx];
    const StateRank img = F.image(y);
    auto& out = succ[idx];
    for (int p = 0; p < m; ++p) {
      const StateRank mask = StateRank{1} << (m - 1 - p);
      if (((y ^ img) & mask) == 0) continue;
      const StateRank z = y ^ mask;
      if (!bits::is_admissible_rank(src, z)) continue;
      auto it = std::lower_bound(states.begin(), states.end(), z);
      out.push_back(static_cast<int>(it - states.begin()));
    }
    std::sort(out.begin(), out.end());
  }
  return AsyncDynamics(boolean_space(src), true, std::move(states), std::move(succ));
}

enum class AttractorKind { kFixedPoint, kCyclic };

// Minimal trap set, i.e. terminal strongly connected component.
struct Attractor {
  AttractorKind kind = AttractorKind::kFixedPoint;
  std::vector<StateRank> states;  // sorted by rank
};

namespace detail {

// Iterative Tarjan: returns the component id of every vertex. Component ids
// are assigned in reverse topological order of the condensation.
inline std::vector<int> strongly_connected_components(const AsyncDynamics& ad, int* count_out) {
  const int n = ad.size();
  std::vector<int> index(n, -1), lowlink(n, 0), component(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  stack.reserve(n);
  int next_index = 0;
  int components = 0;

  struct Frame {
    int vertex;
    std::size_t child;
  };
  std::vector<Frame> frames;

  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    frames.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& fr = frames.back();
      const auto& succ = ad.successors(fr.vertex);
      if (fr.child < succ.size()) {
        const int w = succ[fr.child++];
        if (index[w] == -1) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[fr.vertex] = std::min(lowlink[fr.vertex], index[w]);
        }
      } else {
        const int v = fr.vertex;
        frames.pop_back();
        if (!frames.empty())
          lowlink[frames.back().vertex] = std::min(lowlink[frames.back().vertex], lowlink[v]);
        if (lowlink[v] == index[v]) {
          while (true) {
            const int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            component[w] = components;
            if (w == v) break;
          }
          ++components;
        }
      }
    }
  }
  if (count_out) *count_out = components;
  return component;
}

}  // namespace detail

// Attractors as terminal strongly connected components, sorted by their
// smallest member rank; members sorted by rank.
inline std::vector<Attractor> attractors(const AsyncDynamics& ad) {
  int count = 0;
  const std::vector<int> component = detail::strongly_connected_components(ad, &count);
  std::vector<char> terminal(count, 1);
  for (int v = 0; v < ad.size(); ++v)
    for (int w : ad.successors(v))
      if (component[w] != component[v]) terminal[component[v]] = 0;
  std::vector<Attractor> out(count);
  for (int v = 0; v < ad.size(); ++v)
    if (terminal[component[v]]) out[component[v]].states.push_back(ad.state_at(v));
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const Attractor& a) { return a.states.empty(); }),
            out.end());
  for (auto& a : out) {
    std::sort(a.states.begin(), a.states.end());
    a.kind = a.states.size() == 1 ? AttractorKind::kFixedPoint : AttractorKind::kCyclic;
  }
  std::sort(out.begin(), out.end(),
            [](const Attractor& a, const Attractor& b) { return a.states.front() < b.states.front(); });
  return out;
}

// Literal trap-set check: no edge leaves A.
inline bool is_trap_set(const AsyncDynamics& ad, const std::vector<StateRank>& set) {
  if (set.empty()) throw EmptySet("is_trap_set: the empty set is not a trap set");
  std::vector<char> member(ad.size(), 0);
  for (StateRank s : set) {
    const int idx = ad.index_of(s);
    if (idx < 0) throw Error("is_trap_set: state outside the universe");
    member[idx] = 1;
  }
  for (int v = 0; v < ad.size(); ++v) {
    if (!member[v]) continue;
    for (int w : ad.successors(v))
      if (!member[w]) return false;
  }
  return true;
}

inline bool reaches(const AsyncDynamics& ad, StateRank from, const std::vector<StateRank>& target) {
  const int start = ad.index_of(from);
  if (start < 0) throw Error("reaches: state outside the universe");
  std::vector<char> is_target(ad.size(), 0);
  for (StateRank s : target) {
    const int idx = ad.index_of(s);
    if (idx >= 0) is_target[idx] = 1;
  }
  if (is_target[start]) return true;
  std::vector<char> seen(ad.size(), 0);
  std::vector<int> queue{start};
  seen[start] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (int w : ad.successors(queue[head])) {
      if (seen[w]) continue;
      if (is_target[w]) return true;
      seen[w] = 1;
      queue.push_back(w);
    }
  }
  return false;
}

inline std::vector<StateRank> fixed_points(const MultivaluedMap& f) {
  std::vector<StateRank> out;
  for (StateRank s = 0; s < f.space().state_count(); ++s)
    if (f.image(s) == s) out.push_back(s);
  return out;
}

inline std::vector<StateRank> fixed_points(const BooleanConversion& F) {
  std::vector<StateRank> out;
  const StateRank size = static_cast<StateRank>(F.bit_space().state_count());
  for (StateRank y = 0; y < size; ++y)
    if (F.defined(y) && F.image(y) == y) out.push_back(y);
  return out;
}

// States with no outgoing transition.
inline std::vector<StateRank> fixed_points(const AsyncDynamics& ad) {
  std::vector<StateRank> out;
  for (int v = 0; v < ad.size(); ++v)
    if (ad.successors(v).empty()) out.push_back(ad.state_at(v));
  return out;
}

}  // namespace mvnet
