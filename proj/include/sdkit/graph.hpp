#pragma once

// Finite sets, finite simple graphs and the maps between them.
//
// Graphs are loopless and simple. Reflexivity is implicit: a graph
// homomorphism may send both endpoints of an edge to the same vertex.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sdkit/error.hpp"

namespace sdkit {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

inline Edge make_edge(Vertex u, Vertex v) { return u < v ? Edge{u, v} : Edge{v, u}; }

/// The finite set {0, ..., size-1}.
class FinSet {
 public:
  FinSet() = default;
  explicit FinSet(std::size_t size) : size_(size) {}

  std::size_t size() const noexcept { return size_; }

  friend bool operator==(const FinSet&, const FinSet&) = default;

 private:
  std::size_t size_ = 0;
};

/// A total function between finite sets.
class SetFunction {
 public:
  SetFunction() = default;

  SetFunction(std::size_t dom, std::size_t cod, std::vector<Vertex> map)
      : dom_(dom), cod_(cod), map_(std::move(map)) {
    if (!well_formed()) {
      throw Error(ErrorCode::InvalidMorphism,
                  "set function " + std::to_string(dom_) + " -> " + std::to_string(cod_) +
                      " is not total or has an entry out of range");
    }
  }

  /// Builds without checking; `well_formed()` reports whether the result is usable.
  static SetFunction unchecked(std::size_t dom, std::size_t cod, std::vector<Vertex> map) {
    SetFunction f;
    f.dom_ = dom;
    f.cod_ = cod;
    f.map_ = std::move(map);
    return f;
  }

  static SetFunction identity(std::size_t n) {
    std::vector<Vertex> map(n);
    std::iota(map.begin(), map.end(), Vertex{0});
    return unchecked(n, n, std::move(map));
  }

  std::size_t dom_size() const noexcept { return dom_; }
  std::size_t cod_size() const noexcept { return cod_; }
  FinSet dom() const { return FinSet(dom_); }
  FinSet cod() const { return FinSet(cod_); }

  Vertex operator()(Vertex x) const { return map_[x]; }
  std::span<const Vertex> values() const noexcept { return map_; }

  bool well_formed() const {
    return map_.size() == dom_ &&
           std::all_of(map_.begin(), map_.end(), [&](Vertex y) { return y < cod_; });
  }

  bool is_injective() const {
    std::vector<char> hit(cod_, 0);
    for (Vertex y : map_) {
      if (hit[y]) return false;
      hit[y] = 1;
    }
    return true;
  }

  bool is_surjective() const {
    std::vector<char> hit(cod_, 0);
    for (Vertex y : map_) hit[y] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  }

  bool is_mono() const { return is_injective(); }

  friend bool operator==(const SetFunction&, const SetFunction&) = default;

 private:
  std::size_t dom_ = 0;
  std::size_t cod_ = 0;
  std::vector<Vertex> map_;
};

/// g after f.
inline SetFunction compose(const SetFunction& g, const SetFunction& f) {
  if (f.cod_size() != g.dom_size()) {
    throw Error(ErrorCode::CodomainMismatch, "cannot compose set functions with mismatched (co)domains");
  }
  std::vector<Vertex> map(f.dom_size());
  for (Vertex x = 0; x < f.dom_size(); ++x) map[x] = g(f(x));
  return SetFunction::unchecked(f.dom_size(), g.cod_size(), std::move(map));
}

/// Finite simple undirected graph on vertices {0, ..., n-1}. Edges are kept
/// normalized (u < v) and sorted, so equality is structural.
class Graph {
 public:
  Graph() = default;

  explicit Graph(std::size_t vertex_count) : n_(vertex_count) { rebuild(); }

  Graph(std::size_t vertex_count, std::vector<Edge> edges) : n_(vertex_count), edges_(std::move(edges)) {
    for (auto& e : edges_) {
      if (e.first == e.second) {
        throw Error(ErrorCode::InvalidArgument, "self-loop on vertex " + std::to_string(e.first));
      }
      if (e.first >= n_ || e.second >= n_) {
        throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
      }
      e = make_edge(e.first, e.second);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
      throw Error(ErrorCode::InvalidArgument, "parallel edges are not allowed");
    }
    rebuild();
  }

  /// Like the checked constructor but drops loops and merges parallel edges.
  static Graph simplify(std::size_t vertex_count, std::vector<Edge> edges) {
    std::vector<Edge> kept;
    kept.reserve(edges.size());
    for (auto [u, v] : edges) {
      if (u != v) kept.push_back(make_edge(u, v));
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    return Graph(vertex_count, std::move(kept));
  }

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }

  bool adjacent(Vertex u, Vertex v) const { return matrix_[u * n_ + v] != 0; }

  std::optional<std::size_t> edge_index(Vertex u, Vertex v) const {
    if (u == v) return std::nullopt;
    const Edge e = make_edge(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  void rebuild() {
    adjacency_.assign(n_, {});
    matrix_.assign(n_ * n_, 0);
    for (auto [u, v] : edges_) {
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
      matrix_[u * n_ + v] = matrix_[v * n_ + u] = 1;
    }
    for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<char> matrix_;
};

/// Homomorphism of simple graphs under the reflexive convention: the image of
/// an edge is an edge or a single vertex.
class GraphMorphism {
 public:
  GraphMorphism() = default;

  GraphMorphism(Graph dom, Graph cod, SetFunction vertex_map)
      : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(vertex_map)) {
    if (!well_formed()) {
      throw Error(ErrorCode::InvalidMorphism, "vertex map is not a graph homomorphism between the given graphs");
    }
  }

  static GraphMorphism unchecked(Graph dom, Graph cod, SetFunction vertex_map) {
    GraphMorphism f;
    f.dom_ = std::move(dom);
    f.cod_ = std::move(cod);
    f.map_ = std::move(vertex_map);
    return f;
  }

  static GraphMorphism identity(const Graph& g) {
    return unchecked(g, g, SetFunction::identity(g.vertex_count()));
  }

  const Graph& dom() const noexcept { return dom_; }
  const Graph& cod() const noexcept { return cod_; }
  const SetFunction& vertex_map() const noexcept { return map_; }
  Vertex operator()(Vertex v) const { return map_(v); }

  bool well_formed() const {
    if (map_.dom_size() != dom_.vertex_count() || map_.cod_size() != cod_.vertex_count()) return false;
    if (!map_.well_formed()) return false;
    return std::all_of(dom_.edges().begin(), dom_.edges().end(), [&](const Edge& e) {
      const Vertex a = map_(e.first);
      const Vertex b = map_(e.second);
      return a == b || cod_.adjacent(a, b);
    });
  }

  bool is_mono() const { return map_.is_injective(); }

  /// Index in `cod()` of the image of edge `i` of `dom()`, or nullopt when collapsed.
  std::optional<std::size_t> edge_image(std::size_t i) const {
    const auto [u, v] = dom_.edges()[i];
    return cod_.edge_index(map_(u), map_(v));
  }

  friend bool operator==(const GraphMorphism&, const GraphMorphism&) = default;

 private:
  Graph dom_;
  Graph cod_;
  SetFunction map_;
};

inline GraphMorphism compose(const GraphMorphism& g, const GraphMorphism& f) {
  if (!(f.cod() == g.dom())) {
    throw Error(ErrorCode::CodomainMismatch, "cannot compose graph morphisms with mismatched (co)domains");
  }
  return GraphMorphism::unchecked(f.dom(), g.cod(), compose(g.vertex_map(), f.vertex_map()));
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  edges.reserve(n * (n > 0 ? n - 1 : 0) / 2);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

inline Graph discrete_graph(std::size_t n) { return Graph(n); }

/// Action of the complete-graph functor on a function.
inline GraphMorphism complete_on_function(const SetFunction& f) {
  return GraphMorphism::unchecked(complete_graph(f.dom_size()), complete_graph(f.cod_size()), f);
}

/// Action of the discrete-graph functor on a function.
inline GraphMorphism discrete_on_function(const SetFunction& f) {
  return GraphMorphism::unchecked(discrete_graph(f.dom_size()), discrete_graph(f.cod_size()), f);
}

inline Graph complement(const Graph& g) {
  std::vector<Edge> edges;
  const std::size_t n = g.vertex_count();
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!g.adjacent(u, v)) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

/// Subgraph induced by `vertices` (in the given order) together with its inclusion.
inline GraphMorphism induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (g.adjacent(vertices[i], vertices[j])) edges.emplace_back(i, j);
  Graph sub(vertices.size(), std::move(edges));
  return GraphMorphism(std::move(sub), g,
                       SetFunction(vertices.size(), g.vertex_count(), {vertices.begin(), vertices.end()}));
}

/// Relabels `g` by the bijection `perm` (old vertex -> new vertex).
inline Graph relabel(const Graph& g, std::span<const Vertex> perm) {
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (auto [u, v] : g.edges()) edges.push_back(make_edge(perm[u], perm[v]));
  return Graph(g.vertex_count(), std::move(edges));
}

inline constexpr std::size_t kIsomorphismVertexCap = 8;

namespace detail {

inline bool extend_isomorphism(const Graph& g, const Graph& h, std::vector<Vertex>& image, std::vector<char>& used,
                               Vertex next) {
  const std::size_t n = g.vertex_count();
  if (next == n) return true;
  for (Vertex candidate = 0; candidate < n; ++candidate) {
    if (used[candidate] || g.degree(next) != h.degree(candidate)) continue;
    bool consistent = true;
    for (Vertex prev = 0; prev < next && consistent; ++prev) {
      consistent = g.adjacent(prev, next) == h.adjacent(image[prev], candidate);
    }
    if (!consistent) continue;
    image[next] = candidate;
    used[candidate] = 1;
    if (extend_isomorphism(g, h, image, used, next + 1)) return true;
    used[candidate] = 0;
  }
  return false;
}

}  // namespace detail

/// Searches vertex bijections; capped at `kIsomorphismVertexCap` vertices.
inline std::optional<std::vector<Vertex>> find_isomorphism(const Graph& g, const Graph& h) {
  if (g.vertex_count() > kIsomorphismVertexCap || h.vertex_count() > kIsomorphismVertexCap) {
    throw Error(ErrorCode::TooLarge, "isomorphism check is limited to " + std::to_string(kIsomorphismVertexCap) +
                                         " vertices");
  }
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) return std::nullopt;
  std::vector<std::size_t> dg, dh;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    dg.push_back(g.degree(v));
    dh.push_back(h.degree(v));
  }
  std::sort(dg.begin(), dg.end());
  std::sort(dh.begin(), dh.end());
  if (dg != dh) return std::nullopt;
  std::vector<Vertex> image(g.vertex_count());
  std::vector<char> used(g.vertex_count(), 0);
  if (detail::extend_isomorphism(g, h, image, used, 0)) return image;
  return std::nullopt;
}

inline bool is_isomorphic(const Graph& g, const Graph& h) { return find_isomorphism(g, h).has_value(); }

}  // namespace sdkit
