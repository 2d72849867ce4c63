#pragma once

// Value categories a structured decomposition can take its bags in. Each
// trait exposes the small vocabulary the generic algorithms need: object
// size, the underlying function of a morphism, and a way to assemble a
// colimit object from a quotient of the disjoint union.

#include <concepts>
#include <string_view>
#include <vector>

#include "sdkit/graph.hpp"

namespace sdkit {

enum class ValueKind { FinSet, Graph };

inline std::string_view to_string(ValueKind kind) { return kind == ValueKind::FinSet ? "finset" : "graph"; }

struct FinSetCategory {
  using Object = FinSet;
  using Morphism = SetFunction;
  static constexpr ValueKind kind = ValueKind::FinSet;

  static std::size_t size(const FinSet& x) { return x.size(); }
  static FinSet dom(const SetFunction& f) { return f.dom(); }
  static FinSet cod(const SetFunction& f) { return f.cod(); }
  static const SetFunction& function(const SetFunction& f) { return f; }
  static bool well_formed(const SetFunction& f) { return f.well_formed(); }
  static SetFunction identity(const FinSet& x) { return SetFunction::identity(x.size()); }

  /// `legs[i]` maps object i into {0..n-1}; the result object is that set.
  static FinSet make_object(std::size_t n, const std::vector<FinSet>&, const std::vector<SetFunction>&) {
    return FinSet(n);
  }
  static SetFunction make_morphism(const FinSet&, const FinSet&, SetFunction f) { return f; }
};

struct GraphCategory {
  using Object = Graph;
  using Morphism = GraphMorphism;
  static constexpr ValueKind kind = ValueKind::Graph;

  static std::size_t size(const Graph& g) { return g.vertex_count(); }
  static const Graph& dom(const GraphMorphism& f) { return f.dom(); }
  static const Graph& cod(const GraphMorphism& f) { return f.cod(); }
  static const SetFunction& function(const GraphMorphism& f) { return f.vertex_map(); }
  static bool well_formed(const GraphMorphism& f) { return f.well_formed(); }
  static GraphMorphism identity(const Graph& g) { return GraphMorphism::identity(g); }

  /// Two classes are adjacent iff some object contributes an edge between them.
  static Graph make_object(std::size_t n, const std::vector<Graph>& objects, const std::vector<SetFunction>& legs) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < objects.size(); ++i) {
      for (auto [u, v] : objects[i].edges()) edges.emplace_back(legs[i](u), legs[i](v));
    }
    return Graph::simplify(n, std::move(edges));
  }
  static GraphMorphism make_morphism(const Graph& dom, const Graph& cod, SetFunction f) {
    return GraphMorphism::unchecked(dom, cod, std::move(f));
  }
};

template <class C>
concept ValueCategory = requires {
  typename C::Object;
  typename C::Morphism;
  { C::kind } -> std::convertible_to<ValueKind>;
};

}  // namespace sdkit
