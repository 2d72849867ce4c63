#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "sdkit/sdkit.hpp"

namespace support {

inline std::string fixture(const std::string& name) { return std::string(SDKIT_FIXTURE_DIR) + "/" + name; }

inline sdkit::Graph load_graph(const std::string& name) {
  return sdkit::io::graph_from_json(sdkit::io::read_file(fixture(name)));
}

inline sdkit::io::DecompositionFile load_decomposition(const std::string& name) {
  return sdkit::io::decomposition_from_json(sdkit::io::read_file(fixture(name)));
}

template <class T>
T load_as(const std::string& name) {
  return std::get<T>(load_decomposition(name).decomposition);
}

inline sdkit::GraphMorphism mono(const sdkit::Graph& dom, const sdkit::Graph& cod, std::vector<sdkit::Vertex> map) {
  const std::size_t n = map.size();
  return sdkit::GraphMorphism(dom, cod, sdkit::SetFunction(n, cod.vertex_count(), std::move(map)));
}

/// Every jointly injective relation between bags of sizes a and b with at
/// most `max_apex` elements, as sorted (source, target) pair lists.
inline std::vector<std::vector<sdkit::Edge>> small_relations(std::size_t a, std::size_t b, std::size_t max_apex) {
  std::vector<sdkit::Edge> pairs;
  for (sdkit::Vertex x = 0; x < a; ++x)
    for (sdkit::Vertex y = 0; y < b; ++y) pairs.emplace_back(x, y);
  std::vector<std::vector<sdkit::Edge>> out;
  for (std::uint32_t mask = 0; mask < (1U << pairs.size()); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > max_apex) continue;
    std::vector<sdkit::Edge> rel;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if ((mask >> i) & 1U) rel.push_back(pairs[i]);
    out.push_back(std::move(rel));
  }
  return out;
}

/// Calls `visit` on every FinSet decomposition whose shape is a labelled
/// graph on at most `max_bags` vertices, with bag sizes up to `max_bag` and
/// each adhesion a jointly injective relation of at most `max_apex` pairs.
/// Apex elements come in an arbitrary (reversed) order.
template <class Visit>
void for_each_small_finset_decomposition(std::size_t max_bags, std::size_t max_bag, std::size_t max_apex, Visit&& visit) {
  using namespace sdkit;
  for (std::size_t n = 0; n <= max_bags; ++n) {
    std::vector<Edge> slots;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) slots.emplace_back(u, v);
    for (std::uint32_t emask = 0; emask < (1U << slots.size()); ++emask) {
      std::vector<Edge> shape_edges;
      for (std::size_t i = 0; i < slots.size(); ++i)
        if ((emask >> i) & 1U) shape_edges.push_back(slots[i]);
      const Graph shape(n, shape_edges);
      std::vector<std::size_t> sizes(n, 0);
      while (true) {
        std::vector<std::vector<std::vector<Edge>>> choices;
        for (auto [u, v] : shape_edges) choices.push_back(small_relations(sizes[u], sizes[v], max_apex));
        std::vector<std::size_t> pick(choices.size(), 0);
        while (true) {
          std::vector<FinSet> bags;
          for (std::size_t s : sizes) bags.emplace_back(s);
          std::vector<Adhesion<FinSetCategory>> adhesions;
          for (std::size_t i = 0; i < shape_edges.size(); ++i) {
            const auto& rel = choices[i][pick[i]];
            std::vector<Vertex> src, tgt;
            for (auto it = rel.rbegin(); it != rel.rend(); ++it) {
              src.push_back(it->first);
              tgt.push_back(it->second);
            }
            const auto [u, v] = shape_edges[i];
            adhesions.push_back({shape_edges[i], FinSet(rel.size()), SetFunction(rel.size(), sizes[u], src),
                                 SetFunction(rel.size(), sizes[v], tgt)});
          }
          visit(FinSetDecomposition(shape, std::move(bags), std::move(adhesions)));
          std::size_t k = 0;
          while (k < pick.size() && ++pick[k] == choices[k].size()) pick[k++] = 0;
          if (k == pick.size()) break;
        }
        std::size_t k = 0;
        while (k < n && ++sizes[k] > max_bag) sizes[k++] = 0;
        if (k == n) break;
      }
    }
  }
}

}  // namespace support
