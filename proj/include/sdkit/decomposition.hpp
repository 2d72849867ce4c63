#pragma once

// Structured decompositions: a shape graph with a bag on every vertex and an
// adhesion span on every edge. Each shape edge {u, v} is stored with u < v;
// `source_leg` lands in bag(u) and `target_leg` in bag(v).

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sdkit/limits.hpp"

namespace sdkit {

template <ValueCategory Cat>
struct Adhesion {
  Edge edge;
  typename Cat::Object apex;
  typename Cat::Morphism source_leg;
  typename Cat::Morphism target_leg;
};

template <ValueCategory Cat>
class StructuredDecomposition {
 public:
  using Category = Cat;
  using Object = typename Cat::Object;
  using Morphism = typename Cat::Morphism;

  StructuredDecomposition() = default;

  StructuredDecomposition(Graph shape, std::vector<Object> bags, std::vector<Adhesion<Cat>> adhesions)
      : shape_(std::move(shape)), bags_(std::move(bags)), adhesions_(std::move(adhesions)) {
    for (auto& a : adhesions_) {
      if (a.edge.first > a.edge.second) {
        std::swap(a.edge.first, a.edge.second);
        std::swap(a.source_leg, a.target_leg);
      }
    }
    std::stable_sort(adhesions_.begin(), adhesions_.end(),
                     [](const auto& x, const auto& y) { return x.edge < y.edge; });
  }

  const Graph& shape() const noexcept { return shape_; }
  const std::vector<Object>& bags() const noexcept { return bags_; }
  const Object& bag(Vertex v) const { return bags_[v]; }
  const std::vector<Adhesion<Cat>>& adhesions() const noexcept { return adhesions_; }

  /// Adhesion on shape edge {u, v}; requires a valid decomposition.
  const Adhesion<Cat>& adhesion(Vertex u, Vertex v) const {
    const Edge e = make_edge(u, v);
    auto it = std::lower_bound(adhesions_.begin(), adhesions_.end(), e,
                               [](const auto& a, const Edge& key) { return a.edge < key; });
    if (it == adhesions_.end() || it->edge != e) {
      throw Error(ErrorCode::InvalidArgument, "no adhesion on shape edge");
    }
    return *it;
  }

  /// The leg of adhesion {u, v} that lands in bag(at).
  const Morphism& leg_into(Vertex u, Vertex v, Vertex at) const {
    const auto& a = adhesion(u, v);
    return at == a.edge.first ? a.source_leg : a.target_leg;
  }

  /// Optional human-readable element names, one list per bag (FinSet-valued only).
  const std::vector<std::vector<std::string>>& labels() const noexcept { return labels_; }
  void set_labels(std::vector<std::vector<std::string>> labels) { labels_ = std::move(labels); }

  friend bool operator==(const StructuredDecomposition& a, const StructuredDecomposition& b) {
    if (!(a.shape_ == b.shape_) || a.bags_ != b.bags_ || a.adhesions_.size() != b.adhesions_.size()) return false;
    for (std::size_t i = 0; i < a.adhesions_.size(); ++i) {
      const auto& x = a.adhesions_[i];
      const auto& y = b.adhesions_[i];
      if (x.edge != y.edge || !(x.apex == y.apex) || !(x.source_leg == y.source_leg) ||
          !(x.target_leg == y.target_leg))
        return false;
    }
    return true;
  }

 private:
  Graph shape_;
  std::vector<Object> bags_;
  std::vector<Adhesion<Cat>> adhesions_;
  std::vector<std::vector<std::string>> labels_;
};

using FinSetDecomposition = StructuredDecomposition<FinSetCategory>;
using GraphDecomposition = StructuredDecomposition<GraphCategory>;
using AnyDecomposition = std::variant<FinSetDecomposition, GraphDecomposition>;

/// Well-formedness report; empty iff the decomposition is valid.
template <ValueCategory Cat>
std::vector<std::string> validate(const StructuredDecomposition<Cat>& d) {
  std::vector<std::string> out;
  const Graph& shape = d.shape();
  if (d.bags().size() != shape.vertex_count()) {
    out.push_back("expected " + std::to_string(shape.vertex_count()) + " bags, found " +
                  std::to_string(d.bags().size()));
  }
  std::vector<char> covered(shape.edge_count(), 0);
  for (const auto& a : d.adhesions()) {
    const std::string tag = "adhesion {" + std::to_string(a.edge.first) + "," + std::to_string(a.edge.second) + "}";
    auto idx = a.edge.first < shape.vertex_count() && a.edge.second < shape.vertex_count()
                   ? shape.edge_index(a.edge.first, a.edge.second)
                   : std::nullopt;
    if (!idx) {
      out.push_back(tag + ": not an edge of the shape");
      continue;
    }
    if (covered[*idx]) out.push_back(tag + ": duplicate adhesion");
    covered[*idx] = 1;
    if (a.edge.second >= d.bags().size()) continue;
    const auto check_leg = [&](const auto& leg, Vertex bag, const char* which) {
      if (!(Cat::dom(leg) == a.apex)) {
        out.push_back(tag + ": " + which + " leg domain differs from the apex");
      } else if (!(Cat::cod(leg) == d.bag(bag))) {
        out.push_back(tag + ": " + which + " leg codomain differs from bag " + std::to_string(bag));
      } else if (!Cat::well_formed(leg)) {
        out.push_back(tag + ": " + which + " leg is not a valid morphism");
      }
    };
    check_leg(a.source_leg, a.edge.first, "source");
    check_leg(a.target_leg, a.edge.second, "target");
  }
  for (std::size_t i = 0; i < covered.size(); ++i) {
    if (!covered[i]) {
      const auto [u, v] = shape.edges()[i];
      out.push_back("shape edge {" + std::to_string(u) + "," + std::to_string(v) + "} has no adhesion");
    }
  }
  return out;
}

template <ValueCategory Cat>
bool is_tame(const StructuredDecomposition<Cat>& d) {
  return std::all_of(d.adhesions().begin(), d.adhesions().end(), [](const auto& a) {
    return Cat::function(a.source_leg).is_injective() && Cat::function(a.target_leg).is_injective();
  });
}

/// Objects are the bags in shape-vertex order followed by the adhesion apexes.
template <ValueCategory Cat>
Diagram<Cat> unroll(const StructuredDecomposition<Cat>& d) {
  Diagram<Cat> out;
  out.objects = d.bags();
  const std::size_t n = d.bags().size();
  for (std::size_t i = 0; i < d.adhesions().size(); ++i) {
    const auto& a = d.adhesions()[i];
    out.objects.push_back(a.apex);
    out.arrows.push_back({n + i, a.edge.first, a.source_leg});
    out.arrows.push_back({n + i, a.edge.second, a.target_leg});
  }
  return out;
}

/// Colimit of the decomposition; the cocone holds one leg per bag.
template <ValueCategory Cat>
Cocone<Cat> evaluate_colimit(const StructuredDecomposition<Cat>& d) {
  if (auto bad = validate(d); !bad.empty()) throw Error(ErrorCode::IllFormedDiagram, bad.front());
  auto c = colimit(unroll(d));
  c.legs.resize(d.bags().size());
  return c;
}

// Functors on bag values. Each provides Source/Target categories and acts on
// objects and morphisms.

struct CompleteGraphFunctor {
  using Source = FinSetCategory;
  using Target = GraphCategory;
  Graph operator()(const FinSet& x) const { return complete_graph(x.size()); }
  GraphMorphism operator()(const SetFunction& f) const { return complete_on_function(f); }
};

struct DiscreteGraphFunctor {
  using Source = FinSetCategory;
  using Target = GraphCategory;
  Graph operator()(const FinSet& x) const { return discrete_graph(x.size()); }
  GraphMorphism operator()(const SetFunction& f) const { return discrete_on_function(f); }
};

/// Forgets edges.
struct VertexSetFunctor {
  using Source = GraphCategory;
  using Target = FinSetCategory;
  FinSet operator()(const Graph& g) const { return FinSet(g.vertex_count()); }
  SetFunction operator()(const GraphMorphism& f) const { return f.vertex_map(); }
};

template <ValueCategory Cat>
struct IdentityFunctor {
  using Source = Cat;
  using Target = Cat;
  typename Cat::Object operator()(const typename Cat::Object& x) const { return x; }
  typename Cat::Morphism operator()(const typename Cat::Morphism& f) const { return f; }
};

/// Second after First.
template <class Second, class First>
struct ComposedFunctor {
  using Source = typename First::Source;
  using Target = typename Second::Target;
  Second second;
  First first;
  auto operator()(const typename Source::Object& x) const { return second(first(x)); }
  auto operator()(const typename Source::Morphism& f) const { return second(first(f)); }
};

/// Applies a functor bag- and adhesion-wise; the shape is unchanged.
template <class Functor>
StructuredDecomposition<typename Functor::Target> map_decomposition(
    const Functor& phi, const StructuredDecomposition<typename Functor::Source>& d) {
  using Target = typename Functor::Target;
  std::vector<typename Target::Object> bags;
  bags.reserve(d.bags().size());
  for (const auto& b : d.bags()) bags.push_back(phi(b));
  std::vector<Adhesion<Target>> adhesions;
  adhesions.reserve(d.adhesions().size());
  for (const auto& a : d.adhesions()) {
    adhesions.push_back({a.edge, phi(a.apex), phi(a.source_leg), phi(a.target_leg)});
  }
  StructuredDecomposition<Target> out(d.shape(), std::move(bags), std::move(adhesions));
  if constexpr (Target::kind == ValueKind::FinSet && Functor::Source::kind == ValueKind::FinSet) {
    out.set_labels(d.labels());
  }
  return out;
}

// ---------------------------------------------------------------------------
// FinSet-valued decompositions as graph morphisms into the shape.

struct ArrowPresentation {
  Graph total;
  Graph base;
  GraphMorphism projection;
};

/// Total graph: a vertex (v, x) per bag element, an edge per adhesion element
/// joining its two leg images. Adhesion elements with identical leg images
/// become a single edge, so only jointly injective spans round-trip exactly.
inline ArrowPresentation to_arrow(const FinSetDecomposition& d) {
  if (auto bad = validate(d); !bad.empty()) throw Error(ErrorCode::IllFormedDiagram, bad.front());
  const std::size_t n = d.bags().size();
  std::vector<std::size_t> offset(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offset[v + 1] = offset[v] + d.bag(v).size();
  std::vector<Edge> edges;
  for (const auto& a : d.adhesions()) {
    for (Vertex x = 0; x < a.apex.size(); ++x) {
      edges.emplace_back(offset[a.edge.first] + a.source_leg(x), offset[a.edge.second] + a.target_leg(x));
    }
  }
  Graph total = Graph::simplify(offset.back(), std::move(edges));
  std::vector<Vertex> proj(offset.back());
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t i = offset[v]; i < offset[v + 1]; ++i) proj[i] = v;
  GraphMorphism projection(total, d.shape(), SetFunction(offset.back(), n, std::move(proj)));
  return ArrowPresentation{std::move(total), d.shape(), std::move(projection)};
}

inline ArrowPresentation to_arrow(const AnyDecomposition& d) {
  if (const auto* fs = std::get_if<FinSetDecomposition>(&d)) return to_arrow(*fs);
  throw Error(ErrorCode::NonFinSetValued, "the arrow presentation needs a finset-valued decomposition");
}

/// Bags are vertex fibers (ordered by total-graph id) and adhesions are edge
/// fibers ordered by their (source, target) endpoints.
inline FinSetDecomposition from_arrow(const ArrowPresentation& a) {
  const GraphMorphism& p = a.projection;
  if (!p.well_formed() || !(p.dom() == a.total) || !(p.cod() == a.base)) {
    throw Error(ErrorCode::InvalidMorphism, "projection is not a graph morphism from total to base");
  }
  const std::size_t n = a.base.vertex_count();
  std::vector<std::size_t> position(a.total.vertex_count());
  std::vector<std::size_t> fiber_size(n, 0);
  for (Vertex t = 0; t < a.total.vertex_count(); ++t) position[t] = fiber_size[p(t)]++;

  std::map<Edge, std::vector<std::pair<Vertex, Vertex>>> fibers;
  for (auto [s, t] : a.total.edges()) {
    Vertex u = p(s), v = p(t);
    if (u == v) throw Error(ErrorCode::InvalidArgument, "total graph has an edge inside a vertex fiber");
    if (u > v) {
      std::swap(u, v);
      std::swap(s, t);
    }
    fibers[{u, v}].emplace_back(position[s], position[t]);
  }
  std::vector<FinSet> bags;
  for (std::size_t v = 0; v < n; ++v) bags.emplace_back(fiber_size[v]);
  std::vector<Adhesion<FinSetCategory>> adhesions;
  for (const Edge& e : a.base.edges()) {
    auto& elems = fibers[e];
    std::sort(elems.begin(), elems.end());
    std::vector<Vertex> src, tgt;
    for (auto [x, y] : elems) {
      src.push_back(x);
      tgt.push_back(y);
    }
    const std::size_t k = elems.size();
    adhesions.push_back({e, FinSet(k), SetFunction(k, fiber_size[e.first], std::move(src)),
                         SetFunction(k, fiber_size[e.second], std::move(tgt))});
  }
  return FinSetDecomposition(a.base, std::move(bags), std::move(adhesions));
}

/// Reorders every apex so its elements are sorted by (source image, target image).
inline FinSetDecomposition canonicalize_apexes(const FinSetDecomposition& d) {
  std::vector<Adhesion<FinSetCategory>> adhesions;
  for (const auto& a : d.adhesions()) {
    std::vector<std::pair<Vertex, Vertex>> elems;
    for (Vertex x = 0; x < a.apex.size(); ++x) elems.emplace_back(a.source_leg(x), a.target_leg(x));
    std::sort(elems.begin(), elems.end());
    std::vector<Vertex> src, tgt;
    for (auto [x, y] : elems) {
      src.push_back(x);
      tgt.push_back(y);
    }
    adhesions.push_back({a.edge, a.apex, SetFunction(a.apex.size(), a.source_leg.cod_size(), std::move(src)),
                         SetFunction(a.apex.size(), a.target_leg.cod_size(), std::move(tgt))});
  }
  FinSetDecomposition out(d.shape(), d.bags(), std::move(adhesions));
  out.set_labels(d.labels());
  return out;
}

// ---------------------------------------------------------------------------
// Morphisms of decompositions whose shape functor is induced by a graph
// morphism that sends edges to edges.

template <ValueCategory Cat>
struct DecompositionMorphism {
  StructuredDecomposition<Cat> dom;
  StructuredDecomposition<Cat> cod;
  GraphMorphism shape_map;
  std::vector<typename Cat::Morphism> vertex_components;  // per dom shape vertex
  std::vector<typename Cat::Morphism> edge_components;    // per dom adhesion, in shape-edge order
};

/// True iff every component type-checks and every naturality square commutes.
template <ValueCategory Cat>
bool check_morphism(const DecompositionMorphism<Cat>& m) {
  const auto& F = m.shape_map;
  if (!F.well_formed() || !(F.dom() == m.dom.shape()) || !(F.cod() == m.cod.shape())) return false;
  if (m.vertex_components.size() != m.dom.bags().size()) return false;
  if (m.edge_components.size() != m.dom.adhesions().size()) return false;
  for (Vertex v = 0; v < m.dom.bags().size(); ++v) {
    const auto& eta = m.vertex_components[v];
    if (!Cat::well_formed(eta) || !(Cat::dom(eta) == m.dom.bag(v)) || !(Cat::cod(eta) == m.cod.bag(F(v))))
      return false;
  }
  for (std::size_t i = 0; i < m.dom.adhesions().size(); ++i) {
    const auto& a = m.dom.adhesions()[i];
    const Vertex fu = F(a.edge.first);
    const Vertex fv = F(a.edge.second);
    if (fu == fv) return false;  // edge collapsed to a vertex: outside the supported functors
    const auto& image = m.cod.adhesion(fu, fv);
    const auto& eta_e = m.edge_components[i];
    if (!Cat::well_formed(eta_e) || !(Cat::dom(eta_e) == a.apex) || !(Cat::cod(eta_e) == image.apex)) return false;
    const auto& cod_source = m.cod.leg_into(fu, fv, fu);
    const auto& cod_target = m.cod.leg_into(fu, fv, fv);
    const SetFunction& e = Cat::function(eta_e);
    const auto lhs_s = compose(Cat::function(m.vertex_components[a.edge.first]), Cat::function(a.source_leg));
    const auto rhs_s = compose(Cat::function(cod_source), e);
    const auto lhs_t = compose(Cat::function(m.vertex_components[a.edge.second]), Cat::function(a.target_leg));
    const auto rhs_t = compose(Cat::function(cod_target), e);
    if (!(lhs_s == rhs_s) || !(lhs_t == rhs_t)) return false;
  }
  return true;
}

template <ValueCategory Cat>
DecompositionMorphism<Cat> identity_morphism(const StructuredDecomposition<Cat>& d) {
  DecompositionMorphism<Cat> m{d, d, GraphMorphism::identity(d.shape()), {}, {}};
  for (const auto& b : d.bags()) m.vertex_components.push_back(Cat::identity(b));
  for (const auto& a : d.adhesions()) m.edge_components.push_back(Cat::identity(a.apex));
  return m;
}

// ---------------------------------------------------------------------------
// Restriction of a tame graph-valued decomposition along a mono into its colimit.

struct Restriction {
  GraphDecomposition decomposition;
  DecompositionMorphism<GraphCategory> morphism;  // (identity shape, inclusions)
  std::vector<GraphMorphism> embeddings;          // restricted bag -> subobject
};

/// Each restricted bag is the preimage of the subobject under the cocone leg
/// at that bag, numbered in the bag's order; adhesions restrict likewise.
inline Restriction restrict_decomposition(const GraphDecomposition& d, const GraphMorphism& delta) {
  if (auto bad = validate(d); !bad.empty()) throw Error(ErrorCode::IllFormedDiagram, bad.front());
  if (!is_tame(d)) throw Error(ErrorCode::NotTame, "restriction needs every adhesion leg to be monic");
  if (!delta.well_formed() || !delta.is_mono()) throw Error(ErrorCode::NotMono, "restriction needs a monomorphism");
  const auto colim = evaluate_colimit(d);
  if (!(delta.cod() == colim.apex)) {
    throw Error(ErrorCode::InvalidArgument, "the monomorphism must land in the colimit of the decomposition");
  }
  const Graph& x = delta.dom();
  constexpr Vertex kOutside = static_cast<Vertex>(-1);
  std::vector<Vertex> preimage(colim.apex.vertex_count(), kOutside);
  for (Vertex v = 0; v < x.vertex_count(); ++v) preimage[delta(v)] = v;

  struct Piece {
    Graph graph;
    std::vector<Vertex> kept;        // restricted index -> original index
    std::vector<Vertex> renumber;    // original index -> restricted index (or kOutside)
    std::vector<Vertex> into_x;      // restricted index -> vertex of x
  };
  // Restricts `g`, whose vertices reach the colimit through `to_colim`.
  const auto restrict_piece = [&](const Graph& g, const SetFunction& to_colim) {
    Piece p;
    p.renumber.assign(g.vertex_count(), kOutside);
    for (Vertex b = 0; b < g.vertex_count(); ++b) {
      if (preimage[to_colim(b)] == kOutside) continue;
      p.renumber[b] = p.kept.size();
      p.kept.push_back(b);
      p.into_x.push_back(preimage[to_colim(b)]);
    }
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges()) {
      if (p.renumber[u] == kOutside || p.renumber[v] == kOutside) continue;
      if (x.adjacent(p.into_x[p.renumber[u]], p.into_x[p.renumber[v]])) edges.emplace_back(p.renumber[u], p.renumber[v]);
    }
    p.graph = Graph(p.kept.size(), std::move(edges));
    return p;
  };

  std::vector<Piece> bag_pieces;
  for (Vertex v = 0; v < d.bags().size(); ++v) bag_pieces.push_back(restrict_piece(d.bag(v), colim.legs[v].vertex_map()));

  std::vector<Graph> bags;
  Restriction out;
  for (Vertex v = 0; v < d.bags().size(); ++v) {
    const Piece& p = bag_pieces[v];
    bags.push_back(p.graph);
    out.embeddings.push_back(GraphMorphism(p.graph, x, SetFunction(p.kept.size(), x.vertex_count(), p.into_x)));
  }
  std::vector<Adhesion<GraphCategory>> adhesions;
  std::vector<GraphMorphism> edge_components;
  for (const auto& a : d.adhesions()) {
    const SetFunction to_colim = compose(colim.legs[a.edge.first].vertex_map(), a.source_leg.vertex_map());
    Piece p = restrict_piece(a.apex, to_colim);
    const auto leg = [&](const GraphMorphism& original, Vertex bag) {
      std::vector<Vertex> map;
      for (Vertex k : p.kept) map.push_back(bag_pieces[bag].renumber[original(k)]);
      return GraphMorphism(p.graph, bags[bag], SetFunction(p.kept.size(), bags[bag].vertex_count(), std::move(map)));
    };
    adhesions.push_back({a.edge, p.graph, leg(a.source_leg, a.edge.first), leg(a.target_leg, a.edge.second)});
    edge_components.emplace_back(p.graph, a.apex, SetFunction(p.kept.size(), a.apex.vertex_count(), p.kept));
  }
  out.decomposition = GraphDecomposition(d.shape(), bags, std::move(adhesions));
  out.morphism.dom = out.decomposition;
  out.morphism.cod = d;
  out.morphism.shape_map = GraphMorphism::identity(d.shape());
  for (Vertex v = 0; v < d.bags().size(); ++v) {
    out.morphism.vertex_components.emplace_back(
        bags[v], d.bag(v), SetFunction(bag_pieces[v].kept.size(), d.bag(v).vertex_count(), bag_pieces[v].kept));
  }
  out.morphism.edge_components = std::move(edge_components);
  return out;
}

/// The unique map colim(d) -> target through which the given per-bag maps
/// factor, or nullopt when they do not agree on the adhesions.
template <ValueCategory Cat>
std::optional<SetFunction> mediating_map(const StructuredDecomposition<Cat>& d, const Cocone<Cat>& colim,
                                         const std::vector<SetFunction>& bag_maps, std::size_t target_size) {
  constexpr Vertex kUnset = static_cast<Vertex>(-1);
  std::vector<Vertex> map(Cat::size(colim.apex), kUnset);
  for (Vertex v = 0; v < d.bags().size(); ++v) {
    const SetFunction& leg = Cat::function(colim.legs[v]);
    for (Vertex b = 0; b < leg.dom_size(); ++b) {
      Vertex& slot = map[leg(b)];
      if (slot == kUnset) {
        slot = bag_maps[v](b);
      } else if (slot != bag_maps[v](b)) {
        return std::nullopt;
      }
    }
  }
  if (std::find(map.begin(), map.end(), kUnset) != map.end()) return std::nullopt;
  const std::size_t n = map.size();
  return SetFunction::unchecked(n, target_size, std::move(map));
}

}  // namespace sdkit
