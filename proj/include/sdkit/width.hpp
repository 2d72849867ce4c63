#pragma once

// Width measures: tree decompositions, exact tree-width, complemented and
// layered tree-width, and the H-width of a decomposition.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "sdkit/chordal.hpp"

namespace sdkit {

/// Vertex maps bag -> G, one per bag, reading each bag as a subgraph of G.
using BagEmbedding = std::vector<SetFunction>;

/// Reasons why (d, embedding) is not a tree decomposition of g; empty iff it is.
inline std::vector<std::string> tree_decomposition_violations(const Graph& g, const GraphDecomposition& d,
                                                             const BagEmbedding& embedding) {
  std::vector<std::string> out = validate(d);
  if (!out.empty()) return out;
  if (!is_tree(d.shape())) out.push_back("shape is not a tree");
  if (!is_tame(d)) out.push_back("decomposition is not tame");
  if (embedding.size() != d.bags().size()) {
    out.push_back("embedding must list one map per bag");
    return out;
  }
  for (Vertex t = 0; t < d.bags().size(); ++t) {
    const SetFunction& f = embedding[t];
    const Graph& bag = d.bag(t);
    const std::string tag = "bag " + std::to_string(t);
    if (f.dom_size() != bag.vertex_count() || f.cod_size() != g.vertex_count() || !f.well_formed()) {
      out.push_back(tag + ": embedding does not map the bag into the graph");
      continue;
    }
    if (!f.is_injective()) out.push_back(tag + ": embedding is not injective");
    for (auto [u, v] : bag.edges()) {
      if (f(u) == f(v) || !g.adjacent(f(u), f(v))) {
        out.push_back(tag + ": bag edge {" + std::to_string(u) + "," + std::to_string(v) + "} is not an edge of the graph");
        break;
      }
    }
  }
  if (!out.empty()) return out;
  for (const auto& a : d.adhesions()) {
    if (!(compose(embedding[a.edge.first], a.source_leg.vertex_map()) ==
          compose(embedding[a.edge.second], a.target_leg.vertex_map()))) {
      out.push_back("adhesion {" + std::to_string(a.edge.first) + "," + std::to_string(a.edge.second) +
                    "} identifies different graph vertices");
    }
  }
  // membership[x] = shape vertices whose bag contains x
  std::vector<std::vector<Vertex>> membership(g.vertex_count());
  std::vector<std::vector<char>> contains(d.bags().size(), std::vector<char>(g.vertex_count(), 0));
  for (Vertex t = 0; t < d.bags().size(); ++t) {
    for (Vertex b = 0; b < d.bag(t).vertex_count(); ++b) {
      membership[embedding[t](b)].push_back(t);
      contains[t][embedding[t](b)] = 1;
    }
  }
  for (auto [x, y] : g.edges()) {
    const bool covered = std::any_of(contains.begin(), contains.end(), [&](const auto& c) { return c[x] && c[y]; });
    if (!covered) out.push_back("edge {" + std::to_string(x) + "," + std::to_string(y) + "} lies in no bag");
  }
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    const auto& ts = membership[x];
    if (ts.empty()) {
      out.push_back("vertex " + std::to_string(x) + " lies in no bag");
      continue;
    }
    UnionFind uf(d.shape().vertex_count());
    std::size_t components = ts.size();
    for (auto [s, t] : d.shape().edges()) {
      if (contains[s][x] && contains[t][x] && uf.unite(s, t)) --components;
    }
    if (components != 1) out.push_back("bags containing vertex " + std::to_string(x) + " are not connected");
  }
  return out;
}

/// Cocone legs of the colimit, read as maps into g; valid only when the
/// colimit has exactly g's vertex count.
inline std::optional<BagEmbedding> colimit_embedding(const Graph& g, const GraphDecomposition& d) {
  if (!validate(d).empty()) return std::nullopt;
  auto colim = evaluate_colimit(d);
  if (colim.apex.vertex_count() != g.vertex_count()) return std::nullopt;
  BagEmbedding out;
  for (const auto& leg : colim.legs) out.push_back(leg.vertex_map());
  return out;
}

inline std::vector<std::string> tree_decomposition_violations(const Graph& g, const GraphDecomposition& d) {
  auto embedding = colimit_embedding(g, d);
  if (!embedding) {
    auto out = validate(d);
    if (out.empty()) out.push_back("colimit vertex count differs from the graph");
    return out;
  }
  return tree_decomposition_violations(g, d, *embedding);
}

inline bool is_tree_decomposition(const Graph& g, const GraphDecomposition& d, const BagEmbedding& embedding) {
  return tree_decomposition_violations(g, d, embedding).empty();
}

inline bool is_tree_decomposition(const Graph& g, const GraphDecomposition& d) {
  return tree_decomposition_violations(g, d).empty();
}

/// Largest bag minus one.
template <ValueCategory Cat>
std::size_t width(const StructuredDecomposition<Cat>& d) {
  if (d.bags().empty()) throw Error(ErrorCode::EmptyDecomposition, "width of a decomposition without bags");
  std::size_t best = 0;
  for (const auto& b : d.bags()) best = std::max(best, Cat::size(b));
  return best == 0 ? 0 : best - 1;
}

template <ValueCategory Cat>
std::size_t max_bag_size(const StructuredDecomposition<Cat>& d) {
  std::size_t best = 0;
  for (const auto& b : d.bags()) best = std::max(best, Cat::size(b));
  return best;
}

// ---------------------------------------------------------------------------
// Exact tree-width by branch and bound over elimination orderings.

inline constexpr std::size_t kTreewidthVertexCap = 12;

namespace detail {

using Mask = std::uint32_t;

inline std::vector<Mask> adjacency_masks(const Graph& g) {
  std::vector<Mask> adj(g.vertex_count(), 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= Mask{1} << v;
    adj[v] |= Mask{1} << u;
  }
  return adj;
}

/// Eliminates v: its remaining neighbours become a clique and v disappears.
inline void eliminate(std::vector<Mask>& adj, Mask remaining, std::size_t v) {
  const Mask nb = adj[v] & remaining;
  for (Mask m = nb; m; m &= m - 1) {
    const int w = std::countr_zero(m);
    adj[w] |= nb & ~(Mask{1} << w);
    adj[w] &= ~(Mask{1} << v);
  }
  adj[v] = 0;
}

inline std::size_t degeneracy(const std::vector<Mask>& adj, Mask remaining) {
  std::size_t best = 0;
  while (remaining) {
    int pick = -1;
    int pick_deg = 0;
    for (Mask m = remaining; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      const int deg = std::popcount(adj[v] & remaining);
      if (pick < 0 || deg < pick_deg) {
        pick = v;
        pick_deg = deg;
      }
    }
    best = std::max(best, static_cast<std::size_t>(pick_deg));
    remaining &= ~(Mask{1} << pick);
  }
  return best;
}

class TreewidthSearch {
 public:
  explicit TreewidthSearch(const Graph& g)
      : n_(g.vertex_count()), full_(n_ == 0 ? 0 : static_cast<Mask>((std::uint64_t{1} << n_) - 1)),
        memo_(std::size_t{1} << n_, static_cast<std::size_t>(-1)) {
    adj_ = adjacency_masks(g);
  }

  std::size_t run() {
    if (n_ == 0) return 0;
    best_ = min_degree_upper_bound();
    search(adj_, full_, 0);
    return best_;
  }

 private:
  std::size_t min_degree_upper_bound() const {
    auto adj = adj_;
    Mask remaining = full_;
    std::size_t width = 0;
    while (remaining) {
      int pick = -1;
      int pick_deg = 0;
      for (Mask m = remaining; m; m &= m - 1) {
        const int v = std::countr_zero(m);
        const int deg = std::popcount(adj[v] & remaining);
        if (pick < 0 || deg < pick_deg) {
          pick = v;
          pick_deg = deg;
        }
      }
      width = std::max(width, static_cast<std::size_t>(pick_deg));
      eliminate(adj, remaining, pick);
      remaining &= ~(Mask{1} << pick);
    }
    return width;
  }

  bool is_simplicial(const std::vector<Mask>& adj, Mask remaining, int v) const {
    const Mask nb = adj[v] & remaining;
    for (Mask m = nb; m; m &= m - 1) {
      const int w = std::countr_zero(m);
      if ((nb & ~(Mask{1} << w) & ~adj[w]) != 0) return false;
    }
    return true;
  }

  void search(const std::vector<Mask>& adj, Mask remaining, std::size_t current) {
    if (current >= best_) return;
    const Mask eliminated = full_ & ~remaining;
    if (memo_[eliminated] <= current) return;
    memo_[eliminated] = current;
    const std::size_t left = static_cast<std::size_t>(std::popcount(remaining));
    if (left == 0 || left - 1 <= current) {
      best_ = current;
      return;
    }
    if (std::max(current, degeneracy(adj, remaining)) >= best_) return;

    for (Mask m = remaining; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      if (is_simplicial(adj, remaining, v)) {
        auto next = adj;
        const std::size_t deg = static_cast<std::size_t>(std::popcount(adj[v] & remaining));
        eliminate(next, remaining, v);
        search(next, remaining & ~(Mask{1} << v), std::max(current, deg));
        return;
      }
    }
    std::vector<std::pair<int, int>> by_degree;
    for (Mask m = remaining; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      by_degree.emplace_back(std::popcount(adj[v] & remaining), v);
    }
    std::sort(by_degree.begin(), by_degree.end());
    for (auto [deg, v] : by_degree) {
      auto next = adj;
      eliminate(next, remaining, v);
      search(next, remaining & ~(Mask{1} << v), std::max(current, static_cast<std::size_t>(deg)));
    }
  }

  std::size_t n_;
  Mask full_;
  std::vector<Mask> adj_;
  std::vector<std::size_t> memo_;
  std::size_t best_ = 0;
};

}  // namespace detail

inline std::size_t treewidth_exact(const Graph& g) {
  if (g.vertex_count() > kTreewidthVertexCap) {
    throw Error(ErrorCode::TooLarge, "exact tree-width is limited to " + std::to_string(kTreewidthVertexCap) +
                                         " vertices");
  }
  return detail::TreewidthSearch(g).run();
}

inline std::size_t complemented_treewidth(const Graph& g) { return treewidth_exact(complement(g)); }

// ---------------------------------------------------------------------------
// Layered tree-width.

/// Finite-support stand-in for an N-indexed sequence of graphs.
using GraphSequence = std::vector<Graph>;

/// Disjoint union of the sequence with every vertex joined to every vertex
/// of the next member.
inline Graph layer_join(const GraphSequence& seq) {
  std::vector<std::size_t> offset(seq.size() + 1, 0);
  for (std::size_t i = 0; i < seq.size(); ++i) offset[i + 1] = offset[i] + seq[i].vertex_count();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (auto [u, v] : seq[i].edges()) edges.emplace_back(offset[i] + u, offset[i] + v);
    if (i + 1 == seq.size()) continue;
    for (Vertex u = offset[i]; u < offset[i + 1]; ++u)
      for (Vertex v = offset[i + 1]; v < offset[i + 2]; ++v) edges.emplace_back(u, v);
  }
  return Graph(offset.back(), std::move(edges));
}

struct Layering {
  std::vector<std::vector<Vertex>> layers;
};

inline bool is_layering(const Graph& g, const Layering& l) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> layer_of(n, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < l.layers.size(); ++i) {
    for (Vertex v : l.layers[i]) {
      if (v >= n || layer_of[v] != static_cast<std::size_t>(-1)) return false;
      layer_of[v] = i;
    }
  }
  if (std::find(layer_of.begin(), layer_of.end(), static_cast<std::size_t>(-1)) != layer_of.end()) return false;
  return std::all_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) {
    const auto a = layer_of[e.first], b = layer_of[e.second];
    return (a > b ? a - b : b - a) <= 1;
  });
}

/// Largest number of vertices any bag shares with any layer.
inline std::size_t layered_width(const Graph& g, const Layering& l, const GraphDecomposition& d,
                                 const BagEmbedding& embedding) {
  if (!is_layering(g, l)) throw Error(ErrorCode::NotALayering, "layers must partition the vertices with edges spanning at most adjacent layers");
  if (auto bad = tree_decomposition_violations(g, d, embedding); !bad.empty()) {
    throw Error(ErrorCode::NotATreeDecomposition, bad.front());
  }
  std::vector<std::size_t> layer_of(g.vertex_count());
  for (std::size_t i = 0; i < l.layers.size(); ++i)
    for (Vertex v : l.layers[i]) layer_of[v] = i;
  std::size_t best = 0;
  for (Vertex t = 0; t < d.bags().size(); ++t) {
    std::vector<std::size_t> count(l.layers.size(), 0);
    for (Vertex b = 0; b < d.bag(t).vertex_count(); ++b) {
      best = std::max(best, ++count[layer_of[embedding[t](b)]]);
    }
  }
  return best;
}

inline std::size_t layered_width(const Graph& g, const Layering& l, const GraphDecomposition& d) {
  auto embedding = colimit_embedding(g, d);
  if (!embedding) throw Error(ErrorCode::NotATreeDecomposition, "colimit vertex count differs from the graph");
  return layered_width(g, l, d, *embedding);
}

inline constexpr std::size_t kLayeredTreewidthVertexCap = 7;

namespace detail {

/// Bag families of the tree decompositions induced by every elimination
/// ordering, with non-maximal bags dropped and duplicates merged. Every tree
/// decomposition is refined (bag-wise) by one of these.
inline std::set<std::vector<Mask>> elimination_bag_families(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto adj0 = adjacency_masks(g);
  const Mask full = n == 0 ? 0 : static_cast<Mask>((std::uint64_t{1} << n) - 1);
  std::set<std::vector<Mask>> families;
  do {
    auto adj = adj0;
    Mask remaining = full;
    std::vector<Mask> bags;
    for (int v : order) {
      bags.push_back((adj[v] & remaining) | (Mask{1} << v));
      eliminate(adj, remaining, v);
      remaining &= ~(Mask{1} << v);
    }
    std::vector<Mask> maximal;
    for (Mask b : bags) {
      const bool dominated = std::any_of(bags.begin(), bags.end(), [&](Mask o) { return o != b && (o & b) == b; });
      if (!dominated) maximal.push_back(b);
    }
    std::sort(maximal.begin(), maximal.end());
    maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());
    families.insert(std::move(maximal));
  } while (std::next_permutation(order.begin(), order.end()));
  return families;
}

}  // namespace detail

/// Minimum layered width over all layerings and tree decompositions.
inline std::size_t layered_treewidth_exact(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kLayeredTreewidthVertexCap) {
    throw Error(ErrorCode::TooLarge, "exact layered tree-width is limited to " +
                                         std::to_string(kLayeredTreewidthVertexCap) + " vertices");
  }
  if (n == 0) return 0;
  const auto families = detail::elimination_bag_families(g);
  std::size_t best = n;
  std::vector<std::size_t> layer(n, 0);
  // Assign layers vertex by vertex; used layer indices always form a prefix.
  const auto evaluate = [&](std::size_t layer_count) {
    std::vector<detail::Mask> masks(layer_count, 0);
    for (Vertex v = 0; v < n; ++v) masks[layer[v]] |= detail::Mask{1} << v;
    for (const auto& family : families) {
      std::size_t w = 0;
      for (detail::Mask b : family)
        for (detail::Mask l : masks) w = std::max(w, static_cast<std::size_t>(std::popcount(b & l)));
      best = std::min(best, w);
    }
  };
  const auto recurse = [&](auto&& self, Vertex v, std::size_t used) -> void {
    if (v == n) {
      evaluate(used);
      return;
    }
    for (std::size_t i = 0; i <= used && i < n; ++i) {
      bool ok = true;
      for (Vertex w : g.neighbors(v)) {
        if (w < v && (layer[w] > i ? layer[w] - i : i - layer[w]) > 1) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      layer[v] = i;
      self(self, v + 1, std::max(used, i + 1));
    }
  };
  recurse(recurse, 0, 0);
  return best;
}

/// Largest bag that fails `in_h`; 0 when every bag satisfies it.
template <class Predicate>
std::size_t h_width(const GraphDecomposition& d, Predicate&& in_h) {
  if (auto bad = validate(d); !bad.empty()) throw Error(ErrorCode::IllFormedDiagram, bad.front());
  if (!is_tree(d.shape())) throw Error(ErrorCode::NonTreeShape, "H-width needs a tree-shaped decomposition");
  if (!is_tame(d)) throw Error(ErrorCode::NotTame, "H-width needs a tame decomposition");
  std::size_t best = 0;
  for (const auto& bag : d.bags())
    if (!in_h(bag)) best = std::max(best, bag.vertex_count());
  return best;
}

}  // namespace sdkit
