#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mvnet/conversion.hpp"
#include "mvnet/core.hpp"

namespace mvnet {

// Variation bitmask values recorded on local-graph edges.
inline constexpr int kVariationMinus = 1;
inline constexpr int kVariationPlus = 2;

struct SignedEdge {
  int from = 0;  // 1-based vertex ids
  int to = 0;
  int sign = 0;  // +1 or -1
  int variations = 0;  // which variations produced the edge (local graphs)
};

// Signed directed multigraph: at most one edge per (from, to, sign), so a
// pair of vertices can carry two parallel edges of opposite sign. Vertices
// are plain component ids, or flattened index pairs for graphs of Boolean
// conversions (block_of then recovers the source component).
class SignedDigraph {
 public:
  explicit SignedDigraph(int vertex_count) : vertex_count_(vertex_count) {}

  SignedDigraph(int vertex_count, std::vector<IndexPair> pair_labels)
      : vertex_count_(vertex_count), pair_labels_(std::move(pair_labels)) {}

  int vertex_count() const { return vertex_count_; }
  const std::vector<SignedEdge>& edges() const { return edges_; }

  bool pair_labeled() const { return !pair_labels_.empty(); }
  IndexPair pair_label(int vertex) const { return pair_labels_[vertex - 1]; }
  int block_of(int vertex) const {
    return pair_labels_.empty() ? vertex : pair_labels_[vertex - 1].component;
  }

  std::string vertex_name(int vertex) const {
    if (pair_labels_.empty()) return std::to_string(vertex);
    const IndexPair p = pair_labels_[vertex - 1];
    return "(" + std::to_string(p.component) + "," + std::to_string(p.level) + ")";
  }

  void add_edge(int from, int to, int sign, int variation_mask = 0) {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), SignedEdge{from, to, sign, 0},
                               edge_less);
    if (it != edges_.end() && it->from == from && it->to == to && it->sign == sign) {
      it->variations |= variation_mask;
      return;
    }
    edges_.insert(it, SignedEdge{from, to, sign, variation_mask});
  }

  bool has_edge(int from, int to, int sign) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), SignedEdge{from, to, sign, 0},
                               edge_less);
    return it != edges_.end() && it->from == from && it->to == to && it->sign == sign;
  }

  bool has_edge_any_sign(int from, int to) const {
    return has_edge(from, to, 1) || has_edge(from, to, -1);
  }

  std::size_t edge_count() const { return edges_.size(); }

  void merge(const SignedDigraph& other) {
    for (const SignedEdge& e : other.edges_) add_edge(e.from, e.to, e.sign, e.variations);
  }

  friend bool operator==(const SignedDigraph& a, const SignedDigraph& b) {
    if (a.vertex_count_ != b.vertex_count_ || a.edges_.size() != b.edges_.size()) return false;
    for (std::size_t i = 0; i < a.edges_.size(); ++i) {
      const SignedEdge& x = a.edges_[i];
      const SignedEdge& y = b.edges_[i];
      if (x.from != y.from || x.to != y.to || x.sign != y.sign) return false;
    }
    return true;
  }

 private:
  // Positive edges sort before negative ones between the same endpoints.
  static bool edge_less(const SignedEdge& a, const SignedEdge& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.to != b.to) return a.to < b.to;
    return a.sign > b.sign;
  }

  int vertex_count_ = 0;
  std::vector<SignedEdge> edges_;
  std::vector<IndexPair> pair_labels_;
};

inline std::vector<IndexPair> pair_labels_for(const MultiSpace& source) {
  std::vector<IndexPair> labels;
  labels.reserve(source.boolean_dim());
  for (int i = 1; i <= source.component_count(); ++i)
    for (int j = 1; j <= source.level(i); ++j) labels.push_back(IndexPair{i, j});
  return labels;
}

namespace detail {

// Shared evaluation of the local interaction graph definition over a map
// restricted to a domain Y: edge j -> i with sign s1 * sign(f_i(x + s1 e^j)
// - f_i(x)) for each admissible variation s1.
template <typename InDomain, typename EvalComponent>
void local_graph_into(const MultiSpace& space, StateRank x, InDomain&& in_domain,
                      EvalComponent&& component_of_image, SignedDigraph& g) {
  const int n = space.component_count();
  for (int j = 1; j <= n; ++j) {
    const int xj = space.coordinate(x, j);
    for (int s1 = -1; s1 <= 1; s1 += 2) {
      const int moved = xj + s1;
      if (moved < 0 || moved > space.level(j)) continue;
      const StateRank neighbour = static_cast<StateRank>(
          static_cast<long long>(x) + static_cast<long long>(s1) * space.place(j));
      if (!in_domain(neighbour)) continue;
      for (int i = 1; i <= n; ++i) {
        const int s = s1 * sign_of(component_of_image(neighbour, i) - component_of_image(x, i));
        if (s != 0) g.add_edge(j, i, s, s1 < 0 ? kVariationMinus : kVariationPlus);
      }
    }
  }
}

}  // namespace detail

// Local interaction graph of a multivalued (or plain Boolean) map.
inline SignedDigraph local_graph_rank(const MultivaluedMap& f, StateRank x) {
  const MultiSpace& sp = f.space();
  if (x >= sp.state_count()) throw CoordinateOutOfRange("local_graph: state out of space");
  SignedDigraph g(sp.component_count());
  detail::local_graph_into(
      sp, x, [](StateRank) { return true; },
      [&f](StateRank s, int i) { return f.image_component(s, i); }, g);
  return g;
}

inline SignedDigraph local_graph(const MultivaluedMap& f, const MultiState& x) {
  return local_graph_rank(f, rank(f.space(), x));
}

// Local interaction graph of a Boolean conversion at a Boolean state;
// vertices carry index-pair labels. Admissible-only conversions restrict
// both the state and its neighbours to the admissible region.
inline SignedDigraph local_graph_rank(const BooleanConversion& F, StateRank y) {
  const MultiSpace& src = F.source_space();
  const MultiSpace& bsp = F.bit_space();
  if (y >= bsp.state_count()) throw CoordinateOutOfRange("local_graph: state out of space");
  if (!F.defined(y)) throw NonAdmissibleState("local_graph: state outside the conversion domain");
  SignedDigraph g(bsp.component_count(), pair_labels_for(src));
  auto in_domain = [&F](StateRank s) { return F.defined(s); };
  auto eval = [&](StateRank s, int i) { return bits::bit_at(src, F.image(s), i - 1); };
  detail::local_graph_into(bsp, y, in_domain, eval, g);
  return g;
}

inline SignedDigraph local_graph(const BooleanConversion& F, const BoolState& y) {
  return local_graph_rank(F, bits::rank_of(F.source_space(), y));
}

// Global interaction graph: union of the local graphs over the map domain.
inline SignedDigraph global_graph(const MultivaluedMap& f) {
  SignedDigraph g(f.space().component_count());
  for (StateRank x = 0; x < f.space().state_count(); ++x) {
    detail::local_graph_into(
        f.space(), x, [](StateRank) { return true; },
        [&f](StateRank s, int i) { return f.image_component(s, i); }, g);
  }
  return g;
}

inline SignedDigraph global_graph(const BooleanConversion& F) {
  const MultiSpace& src = F.source_space();
  const MultiSpace& bsp = F.bit_space();
  SignedDigraph g(bsp.component_count(), pair_labels_for(src));
  auto in_domain = [&F](StateRank s) { return F.defined(s); };
  auto eval = [&](StateRank s, int i) { return bits::bit_at(src, F.image(s), i - 1); };
  for (StateRank y = 0; y < bsp.state_count(); ++y) {
    if (!F.defined(y)) continue;
    detail::local_graph_into(bsp, y, in_domain, eval, g);
  }
  return g;
}

// Local interaction graph restricted to variations in the direction of a
// second state y: edges j -> i with i, j in the difference set, computed
// with the single variation sign(y_j - x_j), and kept only when f_i strictly
// straddles x_i + sign(y_i - x_i)/2 across the move.
inline SignedDigraph nonusual_graph(const MultivaluedMap& f, const MultiState& x,
                                    const MultiState& y) {
  const MultiSpace& sp = f.space();
  const StateRank xr = rank(sp, x);
  const StateRank yr = rank(sp, y);
  if (xr == yr) throw IdenticalStates("nonusual_graph: states must differ");
  const int n = sp.component_count();
  SignedDigraph g(n);
  for (int j = 1; j <= n; ++j) {
    const int ej = sign_of(y[j - 1] - x[j - 1]);
    if (ej == 0) continue;
    const int moved = x[j - 1] + ej;
    if (moved < 0 || moved > sp.level(j)) continue;
    const StateRank neighbour = static_cast<StateRank>(
        static_cast<long long>(xr) + static_cast<long long>(ej) * sp.place(j));
    for (int i = 1; i <= n; ++i) {
      const int ei = sign_of(y[i - 1] - x[i - 1]);
      if (ei == 0) continue;
      const int fi_x = f.image_component(xr, i);
      const int fi_moved = f.image_component(neighbour, i);
      const int s = ej * sign_of(fi_moved - fi_x);
      if (s == 0) continue;
      // Strict straddling of x_i + ei/2, in doubled integer arithmetic.
      const int lo = 2 * std::min(fi_x, fi_moved);
      const int hi = 2 * std::max(fi_x, fi_moved);
      const int mid = 2 * x[i - 1] + ei;
      if (lo < mid && mid < hi) g.add_edge(j, i, s, ej < 0 ? kVariationMinus : kVariationPlus);
    }
  }
  return g;
}

// Interaction graph computed through single-step updates: edge j -> i of
// sign s when the move F^j(x) flips the direction of change of component i,
// with s = sign(f_j(x) - x_j) * sign(f_i(F^j(x)) - F^j_i(x)).
inline SignedDigraph richard_graph_rank(const MultivaluedMap& f, StateRank x) {
  const MultiSpace& sp = f.space();
  if (x >= sp.state_count()) throw CoordinateOutOfRange("richard_graph: state out of space");
  const int n = sp.component_count();
  SignedDigraph g(n);
  for (int j = 1; j <= n; ++j) {
    const int dj = sign_of(f.image_component(x, j) - sp.coordinate(x, j));
    if (dj == 0) continue;
    const StateRank stepped = static_cast<StateRank>(
        static_cast<long long>(x) + static_cast<long long>(dj) * sp.place(j));
    for (int i = 1; i <= n; ++i) {
      const int before = sign_of(f.image_component(x, i) - sp.coordinate(x, i));
      const int after = sign_of(f.image_component(stepped, i) - sp.coordinate(stepped, i));
      if (before == after) continue;
      const int s = dj * after;
      if (s != 0) g.add_edge(j, i, s, dj < 0 ? kVariationMinus : kVariationPlus);
    }
  }
  return g;
}

inline SignedDigraph richard_graph(const MultivaluedMap& f, const MultiState& x) {
  return richard_graph_rank(f, rank(f.space(), x));
}

// Union of the single-step graphs over a set of states.
inline SignedDigraph richard_graph_union(const MultivaluedMap& f,
                                         const std::vector<StateRank>& states) {
  SignedDigraph g(f.space().component_count());
  for (StateRank x : states) g.merge(richard_graph_rank(f, x));
  return g;
}

// Elementary signed cycle in rotation-canonical form: the vertex sequence
// starts at its smallest vertex; signs[k] labels the edge vertices[k] ->
// vertices[k+1 mod length].
struct SignedCycle {
  std::vector<int> vertices;
  std::vector<int> signs;
  int sign = 1;

  friend bool operator==(const SignedCycle& a, const SignedCycle& b) {
    return a.vertices == b.vertices && a.signs == b.signs;
  }
};

enum class SignFilter { kAny, kPositive, kNegative };

inline bool matches(SignFilter filter, int sign) {
  switch (filter) {
    case SignFilter::kAny:
      return true;
    case SignFilter::kPositive:
      return sign > 0;
    case SignFilter::kNegative:
      return sign < 0;
  }
  return false;
}

inline constexpr std::uint64_t kDefaultCycleBudget = 1'000'000;

namespace detail {

// Enumerates every elementary cycle of the signed multigraph exactly once,
// rooting each cycle at its smallest vertex. Parallel edges of opposite
// sign yield distinct cycles. The visitor returns false to stop early.
template <typename Visitor>
bool for_each_cycle(const SignedDigraph& g, Visitor&& visit, std::uint64_t max_cycles) {
  const int n = g.vertex_count();
  std::vector<std::vector<const SignedEdge*>> adj(n + 1);
  for (const SignedEdge& e : g.edges()) adj[e.from].push_back(&e);

  std::vector<char> on_path(n + 1, 0);
  std::vector<char> reaches_root(n + 1, 0);
  std::vector<int> path_vertices;
  std::vector<int> path_signs;
  std::uint64_t count = 0;

  std::function<bool(int, int)> dfs = [&](int root, int v) -> bool {
    for (const SignedEdge* e : adj[v]) {
      const int w = e->to;
      if (w < root) continue;
      if (w == root) {
        if (++count > max_cycles)
          throw CycleBudgetExceeded("cycle enumeration exceeded the cycle budget");
        SignedCycle cycle;
        cycle.vertices = path_vertices;
        cycle.signs = path_signs;
        cycle.signs.push_back(e->sign);
        cycle.sign = 1;
        for (int s : cycle.signs) cycle.sign *= s;
        if (!visit(cycle)) return false;
      } else if (!on_path[w] && reaches_root[w]) {
        on_path[w] = 1;
        path_vertices.push_back(w);
        path_signs.push_back(e->sign);
        const bool keep_going = dfs(root, w);
        path_signs.pop_back();
        path_vertices.pop_back();
        on_path[w] = 0;
        if (!keep_going) return false;
      }
    }
    return true;
  };

  for (int root = 1; root <= n; ++root) {
    // Prune to vertices >= root that can reach the root.
    std::fill(reaches_root.begin(), reaches_root.end(), 0);
    reaches_root[root] = 1;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const SignedEdge& e : g.edges())
        if (e.from >= root && e.to >= root && reaches_root[e.to] && !reaches_root[e.from]) {
          reaches_root[e.from] = 1;
          changed = true;
        }
    }
    on_path[root] = 1;
    path_vertices.assign(1, root);
    path_signs.clear();
    const bool keep_going = dfs(root, root);
    on_path[root] = 0;
    if (!keep_going) return false;
  }
  return true;
}

}  // namespace detail

// "(1,2)->(2,1)->(1,2)" style rendering of a cycle inside its graph.
inline std::string cycle_label(const SignedDigraph& g, const SignedCycle& cycle) {
  std::string out;
  for (int v : cycle.vertices) {
    out += g.vertex_name(v);
    out += "->";
  }
  out += g.vertex_name(cycle.vertices.front());
  return out;
}

inline std::vector<SignedCycle> enumerate_cycles(const SignedDigraph& g,
                                                 std::uint64_t max_cycles = kDefaultCycleBudget) {
  std::vector<SignedCycle> out;
  detail::for_each_cycle(
      g,
      [&out](const SignedCycle& cycle) {
        out.push_back(cycle);
        return true;
      },
      max_cycles);
  return out;
}

inline bool has_cycle(const SignedDigraph& g, SignFilter filter = SignFilter::kAny,
                      std::uint64_t max_cycles = kDefaultCycleBudget) {
  bool found = false;
  detail::for_each_cycle(
      g,
      [&found, filter](const SignedCycle& cycle) {
        if (matches(filter, cycle.sign)) {
          found = true;
          return false;
        }
        return true;
      },
      max_cycles);
  return found;
}

// Every (state, cycle) pair whose local interaction graph contains a cycle
// matching the filter; an empty result certifies absence.
inline std::vector<std::pair<StateRank, SignedCycle>> scan_local_cycles(
    const MultivaluedMap& f, SignFilter filter = SignFilter::kAny,
    std::uint64_t max_cycles = kDefaultCycleBudget) {
  std::vector<std::pair<StateRank, SignedCycle>> out;
  for (StateRank x = 0; x < f.space().state_count(); ++x) {
    for (const SignedCycle& c : enumerate_cycles(local_graph_rank(f, x), max_cycles))
      if (matches(filter, c.sign)) out.emplace_back(x, c);
  }
  return out;
}

inline std::vector<std::pair<StateRank, SignedCycle>> scan_local_cycles(
    const BooleanConversion& F, SignFilter filter = SignFilter::kAny,
    std::uint64_t max_cycles = kDefaultCycleBudget) {
  std::vector<std::pair<StateRank, SignedCycle>> out;
  const StateRank size = static_cast<StateRank>(F.bit_space().state_count());
  for (StateRank y = 0; y < size; ++y) {
    if (!F.defined(y)) continue;
    for (const SignedCycle& c : enumerate_cycles(local_graph_rank(F, y), max_cycles))
      if (matches(filter, c.sign)) out.emplace_back(y, c);
  }
  return out;
}

}  // namespace mvnet
