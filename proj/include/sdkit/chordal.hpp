#pragma once

// Chordal graphs: recognition, clique number, and the correspondence with
// tree-shaped FinSet-valued decompositions of complete graphs.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "sdkit/decomposition.hpp"

namespace sdkit {

/// Connected and acyclic. The empty graph is not a tree.
inline bool is_tree(const Graph& g) {
  if (g.vertex_count() == 0 || g.edge_count() + 1 != g.vertex_count()) return false;
  UnionFind uf(g.vertex_count());
  for (auto [u, v] : g.edges())
    if (!uf.unite(u, v)) return false;
  return true;
}

inline bool is_forest(const Graph& g) {
  UnionFind uf(g.vertex_count());
  for (auto [u, v] : g.edges())
    if (!uf.unite(u, v)) return false;
  return true;
}

/// Maximum-cardinality search order, reversed; ties go to the smallest label.
/// The result is a perfect elimination ordering whenever the graph is chordal.
inline std::vector<Vertex> mcs_elimination_order(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> weight(n, 0);
  std::vector<char> numbered(n, 0);
  std::vector<Vertex> order(n);
  for (std::size_t i = n; i-- > 0;) {
    Vertex best = n;
    for (Vertex v = 0; v < n; ++v) {
      if (!numbered[v] && (best == n || weight[v] > weight[best])) best = v;
    }
    numbered[best] = 1;
    order[i] = best;
    for (Vertex w : g.neighbors(best))
      if (!numbered[w]) ++weight[w];
  }
  return order;
}

/// True iff every vertex's later neighbours form a clique.
inline bool is_perfect_elimination_ordering(const Graph& g, const std::vector<Vertex>& order) {
  const std::size_t n = g.vertex_count();
  if (order.size() != n) return false;
  std::vector<std::size_t> pos(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (order[i] >= n || pos[order[i]] != n) return false;
    pos[order[i]] = i;
  }
  for (Vertex v : order) {
    Vertex parent = n;
    for (Vertex w : g.neighbors(v))
      if (pos[w] > pos[v] && (parent == n || pos[w] < pos[parent])) parent = w;
    if (parent == n) continue;
    for (Vertex w : g.neighbors(v))
      if (pos[w] > pos[v] && w != parent && !g.adjacent(parent, w)) return false;
  }
  return true;
}

inline std::optional<std::vector<Vertex>> perfect_elimination_ordering(const Graph& g) {
  auto order = mcs_elimination_order(g);
  if (!is_perfect_elimination_ordering(g, order)) return std::nullopt;
  return order;
}

inline bool is_chordal(const Graph& g) { return perfect_elimination_ordering(g).has_value(); }

inline std::size_t clique_number_chordal(const Graph& g) {
  auto order = perfect_elimination_ordering(g);
  if (!order) throw Error(ErrorCode::NotChordal, "clique number via elimination needs a chordal graph");
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[(*order)[i]] = i;
  std::size_t best = 0;
  for (Vertex v = 0; v < n; ++v) {
    const auto later = std::count_if(g.neighbors(v).begin(), g.neighbors(v).end(),
                                     [&](Vertex w) { return pos[w] > pos[v]; });
    best = std::max(best, static_cast<std::size_t>(later) + 1);
  }
  return best;
}

/// Maximal cliques of a chordal graph, each sorted, listed in lexicographic order.
inline std::vector<std::vector<Vertex>> maximal_cliques_chordal(const Graph& g) {
  auto order = perfect_elimination_ordering(g);
  if (!order) throw Error(ErrorCode::NotChordal, "maximal cliques via elimination need a chordal graph");
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[(*order)[i]] = i;
  std::vector<std::vector<Vertex>> candidates;
  for (Vertex v = 0; v < n; ++v) {
    std::vector<Vertex> c{v};
    for (Vertex w : g.neighbors(v))
      if (pos[w] > pos[v]) c.push_back(w);
    std::sort(c.begin(), c.end());
    candidates.push_back(std::move(c));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<std::vector<Vertex>> maximal;
  for (const auto& c : candidates) {
    const bool dominated = std::any_of(candidates.begin(), candidates.end(), [&](const auto& other) {
      return other.size() > c.size() && std::includes(other.begin(), other.end(), c.begin(), c.end());
    });
    if (!dominated) maximal.push_back(c);
  }
  return maximal;
}

/// Colimit of the decomposition after replacing every set by its complete graph.
inline Graph chordal_from_decomposition(const FinSetDecomposition& d) {
  if (auto bad = validate(d); !bad.empty()) throw Error(ErrorCode::IllFormedDiagram, bad.front());
  if (!is_forest(d.shape())) throw Error(ErrorCode::NonTreeShape, "shape must be a tree or forest");
  if (!is_tame(d)) throw Error(ErrorCode::NotTame, "adhesion legs must be injective");
  return evaluate_colimit(map_decomposition(CompleteGraphFunctor{}, d)).apex;
}

/// Clique tree of a chordal graph: bags are the maximal cliques (elements in
/// increasing vertex order, labelled by vertex id) joined by a maximum-weight
/// spanning tree of the clique intersection graph. Disconnected graphs get
/// empty adhesions so the shape is always a tree.
inline FinSetDecomposition decomposition_from_chordal(const Graph& h) {
  if (!is_chordal(h)) throw Error(ErrorCode::NotChordal, "clique trees exist only for chordal graphs");
  auto cliques = maximal_cliques_chordal(h);
  if (cliques.empty()) cliques.push_back({});
  const std::size_t k = cliques.size();
  const auto overlap = [&](std::size_t i, std::size_t j) {
    std::vector<Vertex> common;
    std::set_intersection(cliques[i].begin(), cliques[i].end(), cliques[j].begin(), cliques[j].end(),
                          std::back_inserter(common));
    return common;
  };

  // Prim's algorithm from clique 0; ties prefer the smaller indices.
  std::vector<char> in_tree(k, 0);
  in_tree[0] = 1;
  std::vector<Edge> tree_edges;
  for (std::size_t step = 1; step < k; ++step) {
    std::size_t best_w = 0, best_in = k, best_out = k;
    for (std::size_t i = 0; i < k; ++i) {
      if (!in_tree[i]) continue;
      for (std::size_t j = 0; j < k; ++j) {
        if (in_tree[j]) continue;
        const std::size_t w = overlap(i, j).size();
        if (best_out == k || w > best_w) {
          best_w = w;
          best_in = i;
          best_out = j;
        }
      }
    }
    in_tree[best_out] = 1;
    tree_edges.push_back(make_edge(best_in, best_out));
  }

  Graph shape(k, tree_edges);
  std::vector<FinSet> bags;
  std::vector<std::vector<std::string>> labels;
  for (const auto& c : cliques) {
    bags.emplace_back(c.size());
    std::vector<std::string> names;
    for (Vertex v : c) names.push_back(std::to_string(v));
    labels.push_back(std::move(names));
  }
  const auto positions = [&](const std::vector<Vertex>& subset, const std::vector<Vertex>& in) {
    std::vector<Vertex> out;
    for (Vertex v : subset) out.push_back(std::lower_bound(in.begin(), in.end(), v) - in.begin());
    return out;
  };
  std::vector<Adhesion<FinSetCategory>> adhesions;
  for (const Edge& e : shape.edges()) {
    const auto common = overlap(e.first, e.second);
    adhesions.push_back({e, FinSet(common.size()),
                         SetFunction(common.size(), cliques[e.first].size(), positions(common, cliques[e.first])),
                         SetFunction(common.size(), cliques[e.second].size(), positions(common, cliques[e.second]))});
  }
  FinSetDecomposition d(std::move(shape), std::move(bags), std::move(adhesions));
  d.set_labels(std::move(labels));
  return d;
}

}  // namespace sdkit
