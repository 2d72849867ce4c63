#pragma once

// Subgraph-closed properties evaluated on subobjects of an ambient graph.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "sdkit/limits.hpp"
#include "sdkit/subobject.hpp"

namespace sdkit {

/// Disjoint union of paths: max degree 2 and no cycle.
inline bool is_linear_forest(const Graph& g) {
  UnionFind uf(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) > 2) return false;
  for (auto [u, v] : g.edges())
    if (!uf.unite(u, v)) return false;
  return true;
}

inline bool is_bipartite(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<int> colour(n, -1);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (colour[s] >= 0) continue;
    colour[s] = 0;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v)) {
        if (colour[w] < 0) {
          colour[w] = 1 - colour[v];
          stack.push_back(w);
        } else if (colour[w] == colour[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

/// Small or sparse graphs are decided by counting; the rest go to Boost's
/// Boyer-Myrvold test.
inline bool is_planar(const Graph& g) {
  const std::size_t n = g.vertex_count(), m = g.edge_count();
  if (n < 5 || m < 9) return true;
  if (m > 3 * n - 6) return false;
  using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  BoostGraph bg(n);
  for (auto [u, v] : g.edges()) boost::add_edge(u, v, bg);
  return boost::boyer_myrvold_planarity_test(bg);
}

struct PropertyPredicate {
  std::string name;
  std::function<bool(const Graph& ambient, const Subobject& s)> holds;

  bool operator()(const Graph& ambient, const Subobject& s) const { return holds(ambient, s); }
};

namespace detail {

template <bool (*Check)(const Graph&)>
bool on_subobject(const Graph& ambient, const Subobject& s) {
  return Check(as_graph(ambient, s));
}

}  // namespace detail

inline PropertyPredicate predicate_paths() { return {"paths", &detail::on_subobject<&is_linear_forest>}; }
inline PropertyPredicate predicate_bipartite() { return {"bipartite", &detail::on_subobject<&is_bipartite>}; }
inline PropertyPredicate predicate_planar() { return {"planar", &detail::on_subobject<&is_planar>}; }

/// Wraps a graph property as a predicate; the caller vouches that it is
/// closed under subgraphs.
inline PropertyPredicate predicate_custom(std::string name, std::function<bool(const Graph&)> check) {
  return {std::move(name), [check = std::move(check)](const Graph& ambient, const Subobject& s) {
            return check(as_graph(ambient, s));
          }};
}

inline std::optional<PropertyPredicate> predicate_by_name(std::string_view name) {
  if (name == "paths") return predicate_paths();
  if (name == "bipartite") return predicate_bipartite();
  if (name == "planar") return predicate_planar();
  return std::nullopt;
}

// ---------------------------------------------------------------------------

enum class Direction { Maximize, Minimize };

struct Objective {
  std::string name;
  std::function<long long(const Subobject&)> weight;
  Direction direction = Direction::Maximize;

  /// True when `a` is strictly preferred to `b`; ties go to the smaller subobject.
  bool better(const Subobject& a, const Subobject& b) const {
    const long long wa = weight(a), wb = weight(b);
    if (wa != wb) return direction == Direction::Maximize ? wa > wb : wa < wb;
    return a < b;
  }
};

inline Objective objective_max_edges() {
  return {"max-edges", [](const Subobject& s) { return static_cast<long long>(s.edges.count()); }, Direction::Maximize};
}
inline Objective objective_max_vertices() {
  return {"max-vertices", [](const Subobject& s) { return static_cast<long long>(s.vertices.count()); },
          Direction::Maximize};
}
inline Objective objective_min_edges() {
  return {"min-edges", [](const Subobject& s) { return static_cast<long long>(s.edges.count()); }, Direction::Minimize};
}
inline Objective objective_min_vertices() {
  return {"min-vertices", [](const Subobject& s) { return static_cast<long long>(s.vertices.count()); },
          Direction::Minimize};
}

inline std::optional<Objective> objective_by_name(std::string_view name) {
  if (name == "max-edges") return objective_max_edges();
  if (name == "max-vertices") return objective_max_vertices();
  if (name == "min-edges") return objective_min_edges();
  if (name == "min-vertices") return objective_min_vertices();
  return std::nullopt;
}

}  // namespace sdkit
