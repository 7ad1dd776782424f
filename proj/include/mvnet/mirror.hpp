#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mvnet/conversion.hpp"
#include "mvnet/core.hpp"
#include "mvnet/interaction.hpp"

namespace mvnet {

// Components on which two states differ, as 1-based indices.
inline std::vector<int> difference_set(const MultiState& x, const MultiState& y) {
  if (x.size() != y.size()) throw SpaceMismatch("difference_set: states of different arity");
  std::vector<int> out;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k] != y[k]) out.push_back(static_cast<int>(k) + 1);
  return out;
}

// Witness of a mirror pair: for every differing component the two image
// values bracket both states, and orientation records which of the two
// inequality chains held (+1 when f_i(x) <= x_i, y_i <= f_i(y)).
struct MirrorReport {
  MultiState x;
  MultiState y;
  std::vector<int> differing;
  std::vector<int> orientation;
};

namespace detail {

template <typename EvalX, typename EvalY>
std::optional<MirrorReport> mirror_pair_impl(EvalX&& f_at_x, EvalY&& f_at_y, const MultiState& x,
                                             const MultiState& y) {
  if (x == y) throw IdenticalStates("is_mirror_pair: states must differ");
  MirrorReport report;
  report.x = x;
  report.y = y;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] == y[k]) continue;
    const int i = static_cast<int>(k) + 1;
    const int lo = std::min(x[k], y[k]);
    const int hi = std::max(x[k], y[k]);
    const int fx = f_at_x(i);
    const int fy = f_at_y(i);
    const bool forward = fx <= lo && hi <= fy;
    const bool backward = fy <= lo && hi <= fx;
    if (!forward && !backward) return std::nullopt;
    report.differing.push_back(i);
    report.orientation.push_back(forward ? 1 : -1);
  }
  return report;
}

}  // namespace detail

inline std::optional<MirrorReport> is_mirror_pair(const MultivaluedMap& f, const MultiState& x,
                                                  const MultiState& y) {
  const MultiSpace& sp = f.space();
  const StateRank xr = rank(sp, x);
  const StateRank yr = rank(sp, y);
  return detail::mirror_pair_impl(
      [&](int i) { return f.image_component(xr, i); },
      [&](int i) { return f.image_component(yr, i); }, x, y);
}

// Mirror pair for a Boolean conversion, evaluated on its own domain. In the
// Boolean case the chain condition collapses to F_i(x) != F_i(y) on every
// differing bit.
inline std::optional<MirrorReport> is_mirror_pair(const BooleanConversion& F, const BoolState& x,
                                                  const BoolState& y) {
  const MultiSpace& src = F.source_space();
  const StateRank fx = F.image(bits::rank_of(src, x));
  const StateRank fy = F.image(bits::rank_of(src, y));
  return detail::mirror_pair_impl(
      [&](int i) { return bits::bit_at(src, fx, i - 1); },
      [&](int i) { return bits::bit_at(src, fy, i - 1); }, x, y);
}

inline constexpr std::uint64_t kMirrorScanBudget = 4096;

// All unordered mirror pairs, in (rank(x), rank(y)) order with x < y.
inline std::vector<MirrorReport> find_mirror_pairs(const MultivaluedMap& f) {
  const MultiSpace& sp = f.space();
  if (sp.state_count() > kMirrorScanBudget)
    throw BudgetExceeded("find_mirror_pairs: space too large for the quadratic pair scan");
  std::vector<MirrorReport> out;
  for (StateRank a = 0; a < sp.state_count(); ++a) {
    const MultiState x = sp.coordinates(a);
    for (StateRank b = a + 1; b < sp.state_count(); ++b) {
      const MultiState y = sp.coordinates(b);
      if (auto report = is_mirror_pair(f, x, y)) out.push_back(std::move(*report));
    }
  }
  return out;
}

enum class MirrorVerdict { kVacuous, kPass, kFailure };

// Outcome of the mirror-pair theorem on one instance: when a mirror pair
// exists, at least two distinct states must carry a local cycle. A kFailure
// verdict would falsify the statement, so it must never occur.
struct MirrorTheoremResult {
  MirrorVerdict verdict = MirrorVerdict::kVacuous;
  std::optional<MirrorReport> pair;       // first mirror pair found
  std::vector<StateRank> cyclic_states;   // states whose local graph has a cycle
};

inline MirrorTheoremResult check_mirror_theorem(const MultivaluedMap& f) {
  const MultiSpace& sp = f.space();
  if (sp.state_count() > kMirrorScanBudget)
    throw BudgetExceeded("check_mirror_theorem: space too large for the quadratic pair scan");
  MirrorTheoremResult result;
  for (StateRank a = 0; a < sp.state_count() && !result.pair; ++a) {
    const MultiState x = sp.coordinates(a);
    for (StateRank b = a + 1; b < sp.state_count(); ++b) {
      if (auto report = is_mirror_pair(f, x, sp.coordinates(b))) {
        result.pair = std::move(*report);
        break;
      }
    }
  }
  if (!result.pair) {
    result.verdict = MirrorVerdict::kVacuous;
    return result;
  }
  for (StateRank x = 0; x < sp.state_count(); ++x)
    if (has_cycle(local_graph_rank(f, x))) result.cyclic_states.push_back(x);
  result.verdict =
      result.cyclic_states.size() >= 2 ? MirrorVerdict::kPass : MirrorVerdict::kFailure;
  return result;
}

// Experimental scan for the stronger form of the statement: a mirror pair
// whose two states themselves carry local cycles. Reported only, never
// asserted; an instance with mirror pairs but no such pair is a candidate
// worth inspecting, not an error.
struct MirrorConjectureScan {
  bool has_mirror_pair = false;
  std::optional<MirrorReport> witness_pair;  // both states carry a local cycle
};

inline MirrorConjectureScan scan_mirror_conjecture(const MultivaluedMap& f) {
  MirrorConjectureScan scan;
  const MultiSpace& sp = f.space();
  std::vector<char> cyclic(sp.state_count(), 0);
  std::vector<char> computed(sp.state_count(), 0);
  auto state_cyclic = [&](StateRank s) {
    if (!computed[s]) {
      computed[s] = 1;
      cyclic[s] = has_cycle(local_graph_rank(f, s)) ? 1 : 0;
    }
    return cyclic[s] != 0;
  };
  for (const MirrorReport& report : find_mirror_pairs(f)) {
    scan.has_mirror_pair = true;
    if (state_cyclic(rank(sp, report.x)) && state_cyclic(rank(sp, report.y))) {
      scan.witness_pair = report;
      break;
    }
  }
  return scan;
}

}  // namespace mvnet
