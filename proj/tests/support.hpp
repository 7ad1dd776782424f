#pragma once

// Shared test utilities: deterministic random instances and brute-force
// oracles kept independent of the library's own algorithms.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "mvnet/mvnet.hpp"

namespace testutil {

using mvnet::AsyncDynamics;
using mvnet::BooleanConversion;
using mvnet::ConversionDomain;
using mvnet::MultiSpace;
using mvnet::MultivaluedMap;
using mvnet::StateRank;

// Deterministic random instance: n in 1..3 components, levels in 1..3,
// uniformly random transition table. Raw engine draws keep the sequence
// stable across standard library implementations.
inline MultivaluedMap random_instance(std::uint32_t seed) {
  std::mt19937 rng(seed);
  const int n = 1 + static_cast<int>(rng() % 3);
  std::vector<int> levels(n);
  for (int& m : levels) m = 1 + static_cast<int>(rng() % 3);
  MultiSpace sp(levels);
  std::vector<StateRank> table(sp.state_count());
  for (StateRank& img : table)
    img = static_cast<StateRank>(rng() % static_cast<std::uint32_t>(sp.state_count()));
  return MultivaluedMap(sp, std::move(table));
}

// Random total Boolean conversion of f: forced to the embedded images on the
// admissible region, arbitrary elsewhere.
inline BooleanConversion random_conversion(const MultivaluedMap& f, std::uint32_t seed) {
  std::mt19937 rng(seed ^ 0x9e3779b9u);
  const MultiSpace& sp = f.space();
  const std::uint32_t size = std::uint32_t{1} << sp.boolean_dim();
  std::vector<StateRank> table(size);
  for (StateRank& img : table) img = static_cast<StateRank>(rng() % size);
  for (StateRank x = 0; x < sp.state_count(); ++x)
    table[mvnet::bits::embed_rank(sp, x)] = mvnet::bits::embed_rank(sp, f.image(x));
  return BooleanConversion(sp, ConversionDomain::kTotal, std::move(table));
}

// Exhaustive minimal trap sets over all nonempty subsets; usable up to 12
// states. Output sorted the same way the library sorts attractors.
inline std::vector<std::vector<StateRank>> brute_force_minimal_trap_sets(
    const AsyncDynamics& ad) {
  const int n = ad.size();
  if (n > 12) throw mvnet::BudgetExceeded("brute-force trap sets capped at 12 states");
  std::vector<std::uint32_t> succ_mask(n, 0);
  for (int v = 0; v < n; ++v)
    for (int w : ad.successors(v)) succ_mask[v] |= std::uint32_t{1} << w;

  std::vector<std::uint32_t> traps;
  const std::uint32_t all = (std::uint32_t{1} << n) - 1;
  for (std::uint32_t mask = 1; mask <= all; ++mask) {
    bool trap = true;
    for (int v = 0; v < n && trap; ++v)
      if ((mask >> v) & 1u) trap = (succ_mask[v] & ~mask) == 0;
    if (trap) traps.push_back(mask);
  }
  std::vector<std::vector<StateRank>> minimal;
  for (std::uint32_t mask : traps) {
    bool is_minimal = true;
    for (std::uint32_t other : traps)
      if (other != mask && (other & ~mask) == 0) {
        is_minimal = false;
        break;
      }
    if (!is_minimal) continue;
    std::vector<StateRank> members;
    for (int v = 0; v < n; ++v)
      if ((mask >> v) & 1u) members.push_back(ad.state_at(v));
    std::sort(members.begin(), members.end());
    minimal.push_back(std::move(members));
  }
  std::sort(minimal.begin(), minimal.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return minimal;
}

// Terminal strongly connected components via pairwise reachability; an
// oracle for the library's Tarjan-based attractor computation.
inline std::vector<std::vector<StateRank>> reachability_terminal_sccs(const AsyncDynamics& ad) {
  const int n = ad.size();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (int v = 0; v < n; ++v) {
    std::vector<int> queue{v};
    reach[v][v] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (int w : ad.successors(queue[head]))
        if (!reach[v][w]) {
          reach[v][w] = 1;
          queue.push_back(w);
        }
  }
  std::vector<int> component(n, -1);
  int count = 0;
  for (int v = 0; v < n; ++v) {
    if (component[v] != -1) continue;
    component[v] = count;
    for (int w = v + 1; w < n; ++w)
      if (reach[v][w] && reach[w][v]) component[w] = count;
    ++count;
  }
  std::vector<char> terminal(count, 1);
  for (int v = 0; v < n; ++v)
    for (int w : ad.successors(v))
      if (component[w] != component[v]) terminal[component[v]] = 0;
  std::vector<std::vector<StateRank>> out;
  for (int c = 0; c < count; ++c) {
    if (!terminal[c]) continue;
    std::vector<StateRank> members;
    for (int v = 0; v < n; ++v)
      if (component[v] == c) members.push_back(ad.state_at(v));
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

}  // namespace testutil
