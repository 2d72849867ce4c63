#pragma once

// Subobjects of a fixed ambient graph and deduplicated tables of them.
// Vertices and edges are bitsets; edge bits follow the ambient's sorted edge list.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "sdkit/graph.hpp"

namespace sdkit {

class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const noexcept { return size_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  Bits& operator|=(const Bits& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }

  bool is_subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  /// Set positions in increasing order.
  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w)
      for (std::uint64_t m = words_[w]; m; m &= m - 1) out.push_back(w * 64 + std::countr_zero(m));
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      for (std::uint64_t m = words_[w]; m; m &= m - 1) f(w * 64 + std::countr_zero(m));
  }

  friend bool operator==(const Bits&, const Bits&) = default;

  /// Lexicographic order of the sorted element lists.
  friend bool lex_less(const Bits& a, const Bits& b) {
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
      const std::uint64_t diff = a.words_[w] ^ b.words_[w];
      if (!diff) continue;
      const int p = std::countr_zero(diff);
      // The set holding the first differing element is smaller unless the
      // other set has nothing beyond it.
      const Bits& holder = ((a.words_[w] >> p) & 1U) ? a : b;
      const Bits& other = &holder == &a ? b : a;
      const bool other_has_more = other.has_element_above(w, p);
      return (&holder == &a) == other_has_more;
    }
    return false;
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

 private:
  bool has_element_above(std::size_t w, int p) const {
    const std::uint64_t above = p == 63 ? 0 : words_[w] >> (p + 1);
    if (above) return true;
    for (std::size_t i = w + 1; i < words_.size(); ++i)
      if (words_[i]) return true;
    return false;
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct Subobject {
  Bits vertices;
  Bits edges;

  static Subobject empty(const Graph& ambient) {
    return {Bits(ambient.vertex_count()), Bits(ambient.edge_count())};
  }

  friend bool operator==(const Subobject&, const Subobject&) = default;
};

/// Ordered by the vertex list, then the edge list.
inline bool operator<(const Subobject& a, const Subobject& b) {
  if (a.vertices != b.vertices) return lex_less(a.vertices, b.vertices);
  return lex_less(a.edges, b.edges);
}

/// Edge set closed under endpoints and sized for the ambient.
inline bool is_subobject_of(const Graph& ambient, const Subobject& s) {
  if (s.vertices.size() != ambient.vertex_count() || s.edges.size() != ambient.edge_count()) return false;
  bool ok = true;
  s.edges.for_each([&](std::size_t i) {
    const auto [u, v] = ambient.edges()[i];
    ok = ok && s.vertices.test(u) && s.vertices.test(v);
  });
  return ok;
}

inline Subobject make_subobject(const Graph& ambient, const std::vector<Vertex>& vertices,
                                const std::vector<Edge>& edges) {
  Subobject s = Subobject::empty(ambient);
  for (Vertex v : vertices) {
    if (v >= ambient.vertex_count()) throw Error(ErrorCode::InvalidArgument, "subobject vertex out of range");
    s.vertices.set(v);
  }
  for (auto [u, v] : edges) {
    const auto idx = ambient.edge_index(u, v);
    if (!idx) throw Error(ErrorCode::InvalidArgument, "subobject edge is not an edge of the ambient graph");
    s.edges.set(*idx);
  }
  if (!is_subobject_of(ambient, s)) throw Error(ErrorCode::InvalidArgument, "subobject edge endpoint is missing");
  return s;
}

inline std::vector<Edge> edge_list(const Graph& ambient, const Subobject& s) {
  std::vector<Edge> out;
  s.edges.for_each([&](std::size_t i) { out.push_back(ambient.edges()[i]); });
  return out;
}

/// The subobject as a standalone graph, with its vertices renumbered in
/// increasing order.
inline Graph as_graph(const Graph& ambient, const Subobject& s) {
  std::vector<Vertex> index(ambient.vertex_count(), 0);
  std::size_t n = 0;
  s.vertices.for_each([&](std::size_t v) { index[v] = n++; });
  std::vector<Edge> edges;
  s.edges.for_each([&](std::size_t i) {
    const auto [u, v] = ambient.edges()[i];
    edges.emplace_back(index[u], index[v]);
  });
  return Graph(n, std::move(edges));
}

/// Image of a subobject under a monomorphism of ambients.
class SubobjectTransport {
 public:
  explicit SubobjectTransport(const GraphMorphism& f) : cod_(f.cod()) {
    const SetFunction& map = f.vertex_map();
    vertex_map_.assign(map.values().begin(), map.values().end());
    for (auto [u, v] : f.dom().edges()) {
      const auto idx = cod_.edge_index(map(u), map(v));
      if (!idx) throw Error(ErrorCode::InvalidArgument, "transport needs an edge-injective morphism");
      edge_map_.push_back(*idx);
    }
  }

  Subobject operator()(const Subobject& s) const {
    Subobject out = Subobject::empty(cod_);
    s.vertices.for_each([&](std::size_t v) { out.vertices.set(vertex_map_[v]); });
    s.edges.for_each([&](std::size_t e) { out.edges.set(edge_map_[e]); });
    return out;
  }

  /// Preimage; used for traces on an interface.
  Subobject pull(const Subobject& s, const Graph& dom) const {
    Subobject out = Subobject::empty(dom);
    for (Vertex v = 0; v < vertex_map_.size(); ++v)
      if (s.vertices.test(vertex_map_[v])) out.vertices.set(v);
    for (std::size_t e = 0; e < edge_map_.size(); ++e)
      if (s.edges.test(edge_map_[e])) out.edges.set(e);
    return out;
  }

 private:
  Graph cod_;
  std::vector<Vertex> vertex_map_;
  std::vector<std::size_t> edge_map_;
};

struct SubPTable {
  Graph ambient;
  std::string predicate;
  std::vector<Subobject> entries;  // sorted, no duplicates
  std::size_t op_counter = 0;

  void normalize() {
    std::sort(entries.begin(), entries.end());
    entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
  }

  bool contains(const Subobject& s) const { return std::binary_search(entries.begin(), entries.end(), s); }
  std::size_t size() const noexcept { return entries.size(); }
};

}  // namespace sdkit
