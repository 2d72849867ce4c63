#pragma once

// Spans, cospans, diagrams and the (co)limits computed over them.

#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "sdkit/category.hpp"

namespace sdkit {

/// left: apex -> L, right: apex -> R.
template <ValueCategory Cat>
struct Span {
  typename Cat::Object apex;
  typename Cat::Morphism left;
  typename Cat::Morphism right;

  bool is_monic() const { return Cat::function(left).is_injective() && Cat::function(right).is_injective(); }
};

/// left: L -> apex, right: R -> apex.
template <ValueCategory Cat>
struct Cospan {
  typename Cat::Object apex;
  typename Cat::Morphism left;
  typename Cat::Morphism right;
};

template <ValueCategory Cat>
struct Diagram {
  struct Arrow {
    std::size_t source;
    std::size_t target;
    typename Cat::Morphism map;
  };

  std::vector<typename Cat::Object> objects;
  std::vector<Arrow> arrows;
};

template <ValueCategory Cat>
struct Cocone {
  typename Cat::Object apex;
  std::vector<typename Cat::Morphism> legs;  // one per diagram object
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

template <ValueCategory Cat>
std::vector<std::string> diagram_violations(const Diagram<Cat>& d) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < d.arrows.size(); ++i) {
    const auto& a = d.arrows[i];
    const std::string tag = "arrow " + std::to_string(i);
    if (a.source >= d.objects.size() || a.target >= d.objects.size()) {
      out.push_back(tag + ": object index out of range");
      continue;
    }
    if (!Cat::well_formed(a.map)) {
      out.push_back(tag + ": morphism is not well formed");
      continue;
    }
    if (!(Cat::dom(a.map) == d.objects[a.source])) out.push_back(tag + ": domain differs from its source object");
    if (!(Cat::cod(a.map) == d.objects[a.target])) out.push_back(tag + ": codomain differs from its target object");
  }
  return out;
}

/// Colimit by union-find over the disjoint union of all objects. Classes are
/// numbered by their smallest (object index, element) member.
template <ValueCategory Cat>
Cocone<Cat> colimit(const Diagram<Cat>& d) {
  if (auto bad = diagram_violations(d); !bad.empty()) {
    throw Error(ErrorCode::IllFormedDiagram, bad.front());
  }
  std::vector<std::size_t> offset(d.objects.size() + 1, 0);
  for (std::size_t i = 0; i < d.objects.size(); ++i) offset[i + 1] = offset[i] + Cat::size(d.objects[i]);

  UnionFind uf(offset.back());
  for (const auto& a : d.arrows) {
    const SetFunction& f = Cat::function(a.map);
    for (Vertex x = 0; x < f.dom_size(); ++x) uf.unite(offset[a.source] + x, offset[a.target] + f(x));
  }

  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> class_of_root(offset.back(), kUnassigned);
  std::size_t classes = 0;
  std::vector<SetFunction> legs;
  legs.reserve(d.objects.size());
  std::vector<std::vector<Vertex>> maps(d.objects.size());
  for (std::size_t i = 0; i < d.objects.size(); ++i) {
    for (std::size_t x = 0; x < Cat::size(d.objects[i]); ++x) {
      const std::size_t root = uf.find(offset[i] + x);
      if (class_of_root[root] == kUnassigned) class_of_root[root] = classes++;
      maps[i].push_back(class_of_root[root]);
    }
  }
  for (std::size_t i = 0; i < d.objects.size(); ++i) {
    legs.push_back(SetFunction::unchecked(Cat::size(d.objects[i]), classes, std::move(maps[i])));
  }

  Cocone<Cat> result{Cat::make_object(classes, d.objects, legs), {}};
  for (std::size_t i = 0; i < d.objects.size(); ++i) {
    result.legs.push_back(Cat::make_morphism(d.objects[i], result.apex, std::move(legs[i])));
  }
  return result;
}

/// Pushout of a monic span, computed as the colimit of the diagram (L, R, M).
/// The left leg of the result is the identity on L's numbering.
template <ValueCategory Cat>
Cospan<Cat> pushout(const Span<Cat>& s) {
  if (!Cat::well_formed(s.left) || !Cat::well_formed(s.right) || !(Cat::dom(s.left) == s.apex) ||
      !(Cat::dom(s.right) == s.apex)) {
    throw Error(ErrorCode::IllFormedDiagram, "span legs do not share the apex as domain");
  }
  if (!s.is_monic()) throw Error(ErrorCode::NonMonicSpan, "pushout requires both legs to be monomorphisms");
  Diagram<Cat> d;
  d.objects = {Cat::cod(s.left), Cat::cod(s.right), s.apex};
  d.arrows = {{2, 0, s.left}, {2, 1, s.right}};
  auto c = colimit(d);
  return Cospan<Cat>{std::move(c.apex), std::move(c.legs[0]), std::move(c.legs[1])};
}

/// Pullback of a cospan. Vertices are the pairs (a, b) with f(a) = g(b) in
/// lexicographic order. Under the reflexive convention two distinct pairs are
/// adjacent when each coordinate is equal-or-adjacent; for monic cospans this
/// is exactly the intersection of the two subgraphs.
template <ValueCategory Cat>
Span<Cat> pullback(const Cospan<Cat>& c) {
  if (!Cat::well_formed(c.left) || !Cat::well_formed(c.right)) {
    throw Error(ErrorCode::InvalidMorphism, "cospan leg is not well formed");
  }
  if (!(Cat::cod(c.left) == Cat::cod(c.right))) {
    throw Error(ErrorCode::CodomainMismatch, "cospan legs have different codomains");
  }
  const SetFunction& f = Cat::function(c.left);
  const SetFunction& g = Cat::function(c.right);
  std::vector<Vertex> pa, pb;
  for (Vertex a = 0; a < f.dom_size(); ++a)
    for (Vertex b = 0; b < g.dom_size(); ++b)
      if (f(a) == g(b)) {
        pa.push_back(a);
        pb.push_back(b);
      }
  const std::size_t n = pa.size();
  auto left_fn = SetFunction::unchecked(n, f.dom_size(), pa);
  auto right_fn = SetFunction::unchecked(n, g.dom_size(), pb);
  if constexpr (Cat::kind == ValueKind::Graph) {
    const Graph& A = c.left.dom();
    const Graph& B = c.right.dom();
    std::vector<Edge> edges;
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = i + 1; j < n; ++j) {
        const bool ea = pa[i] == pa[j] || A.adjacent(pa[i], pa[j]);
        const bool eb = pb[i] == pb[j] || B.adjacent(pb[i], pb[j]);
        if (ea && eb) edges.emplace_back(i, j);
      }
    Graph apex(n, std::move(edges));
    return Span<Cat>{apex, GraphMorphism::unchecked(apex, A, std::move(left_fn)),
                     GraphMorphism::unchecked(apex, B, std::move(right_fn))};
  } else {
    return Span<Cat>{FinSet(n), std::move(left_fn), std::move(right_fn)};
  }
}

}  // namespace sdkit
