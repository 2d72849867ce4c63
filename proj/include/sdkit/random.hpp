#pragma once

// Seeded generators for property tests, the acceptance suite and `bench --generate`.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "sdkit/chordal.hpp"
#include "sdkit/width.hpp"

namespace sdkit::gen {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline Graph random_graph(Rng& rng, std::size_t n, double p) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng, p)) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

/// Random labelled tree on n >= 1 vertices; each vertex i > 0 hangs off an earlier one.
inline Graph random_tree(Rng& rng, std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(uniform(rng, 0, v - 1), v);
  return Graph(n, std::move(edges));
}

/// k distinct values from {0..n-1} in random order.
inline std::vector<Vertex> random_injection(Rng& rng, std::size_t k, std::size_t n) {
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), Vertex{0});
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(k);
  return all;
}

/// A graph containing a copy of `m` along `image`, padded with fresh vertices
/// and random extra edges.
inline Graph random_extension(Rng& rng, const Graph& m, std::size_t n, const std::vector<Vertex>& image, double p) {
  std::vector<Edge> edges;
  for (auto [u, v] : m.edges()) edges.push_back(make_edge(image[u], image[v]));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng, p)) edges.emplace_back(u, v);
  return Graph::simplify(n, std::move(edges));
}

/// M -> L and M -> R, both monic, every graph on at most `max_vertices`.
inline Span<GraphCategory> random_monic_span(Rng& rng, std::size_t max_vertices, double p = 0.5) {
  const std::size_t k = uniform(rng, 0, max_vertices);
  const Graph m = random_graph(rng, k, p);
  const auto side = [&] {
    const std::size_t n = uniform(rng, std::max<std::size_t>(k, 1), max_vertices);
    const auto image = random_injection(rng, k, n);
    Graph g = random_extension(rng, m, n, image, p);
    return GraphMorphism(m, std::move(g), SetFunction(k, n, image));
  };
  auto left = side();
  auto right = side();
  return {m, std::move(left), std::move(right)};
}

/// Tame tree-shaped FinSet decomposition with 1..max_bags bags of size 0..max_bag_size.
inline FinSetDecomposition random_tame_finset_decomposition(Rng& rng, std::size_t max_bags, std::size_t max_bag_size) {
  const std::size_t k = uniform(rng, 1, max_bags);
  Graph shape = random_tree(rng, k);
  std::vector<FinSet> bags;
  for (std::size_t i = 0; i < k; ++i) bags.emplace_back(uniform(rng, 0, max_bag_size));
  std::vector<Adhesion<FinSetCategory>> adhesions;
  for (auto [u, v] : shape.edges()) {
    const std::size_t a = uniform(rng, 0, std::min(bags[u].size(), bags[v].size()));
    adhesions.push_back({{u, v}, FinSet(a), SetFunction(a, bags[u].size(), random_injection(rng, a, bags[u].size())),
                         SetFunction(a, bags[v].size(), random_injection(rng, a, bags[v].size()))});
  }
  return FinSetDecomposition(std::move(shape), std::move(bags), std::move(adhesions));
}

/// Chordal graph on 1..max_vertices vertices built by repeatedly gluing a new
/// vertex onto a clique (possibly empty), then relabelled at random.
inline Graph random_chordal_graph(Rng& rng, std::size_t max_vertices) {
  const std::size_t n = uniform(rng, 1, max_vertices);
  std::vector<std::vector<Vertex>> cliques{{0}};
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) {
    const auto& base = cliques[uniform(rng, 0, cliques.size() - 1)];
    std::vector<Vertex> glue;
    for (Vertex w : base)
      if (coin(rng, 0.7)) glue.push_back(w);
    for (Vertex w : glue) edges.emplace_back(w, v);
    glue.push_back(v);
    cliques.push_back(std::move(glue));
  }
  const auto perm = random_injection(rng, n, n);
  return relabel(Graph(n, std::move(edges)), perm);
}

struct GeneratedTreeDecomposition {
  Graph graph;
  GraphDecomposition decomposition;
  BagEmbedding embedding;
};

/// A random graph together with a tree decomposition of it whose bags are
/// induced subgraphs. Vertices are numbered in first-appearance order, so the
/// canonical colimit numbering coincides with the graph's.
inline GeneratedTreeDecomposition random_tree_decomposition(Rng& rng, std::size_t max_bags, std::size_t max_bag_size,
                                                            double p = 0.5) {
  const std::size_t k = uniform(rng, 1, max_bags);
  const Graph shape = random_tree(rng, k);
  std::vector<std::vector<Vertex>> members(k);
  std::size_t next = 0;
  const auto fresh = [&](std::vector<Vertex>& bag, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) bag.push_back(next++);
  };
  fresh(members[0], uniform(rng, 1, max_bag_size));
  for (Vertex t = 1; t < k; ++t) {
    const Vertex parent = shape.neighbors(t).front();  // the earlier endpoint
    const std::size_t shared = uniform(rng, 1, std::min(members[parent].size(), max_bag_size));
    members[t] = random_injection(rng, shared, members[parent].size());
    for (auto& x : members[t]) x = members[parent][x];
    fresh(members[t], uniform(rng, 0, max_bag_size - shared));
    std::shuffle(members[t].begin(), members[t].end(), rng);
  }
  // Renumber by first appearance.
  std::vector<Vertex> order(next, next);
  std::size_t seen = 0;
  for (auto& bag : members)
    for (auto& x : bag) {
      if (order[x] == next) order[x] = seen++;
      x = order[x];
    }
  std::vector<Edge> edges;
  for (const auto& bag : members)
    for (std::size_t i = 0; i < bag.size(); ++i)
      for (std::size_t j = i + 1; j < bag.size(); ++j)
        if (coin(rng, p)) edges.push_back(make_edge(bag[i], bag[j]));
  Graph g = Graph::simplify(next, std::move(edges));

  std::vector<Graph> bags;
  BagEmbedding embedding;
  for (const auto& bag : members) {
    bags.push_back(induced_subgraph(g, bag).dom());
    embedding.emplace_back(bag.size(), next, bag);
  }
  std::vector<Adhesion<GraphCategory>> adhesions;
  for (auto [u, v] : shape.edges()) {
    std::vector<Vertex> common, into_u, into_v;
    for (std::size_t i = 0; i < members[u].size(); ++i) {
      const auto it = std::find(members[v].begin(), members[v].end(), members[u][i]);
      if (it == members[v].end()) continue;
      common.push_back(members[u][i]);
      into_u.push_back(i);
      into_v.push_back(static_cast<Vertex>(it - members[v].begin()));
    }
    const Graph apex = induced_subgraph(g, common).dom();
    const std::size_t c = common.size();
    adhesions.push_back({{u, v}, apex, GraphMorphism(apex, bags[u], SetFunction(c, bags[u].vertex_count(), into_u)),
                         GraphMorphism(apex, bags[v], SetFunction(c, bags[v].vertex_count(), into_v))});
  }
  return {std::move(g), GraphDecomposition(shape, std::move(bags), std::move(adhesions)), std::move(embedding)};
}

/// Tame tree-shaped graph-valued decomposition whose adhesion legs need not
/// be induced: each child bag extends a random subgraph of its parent.
inline GraphDecomposition random_tame_graph_decomposition(Rng& rng, std::size_t max_bags, std::size_t max_bag_size,
                                                          double p = 0.5) {
  const std::size_t k = uniform(rng, 1, max_bags);
  const Graph shape = random_tree(rng, k);
  std::vector<Graph> bags(k);
  bags[0] = random_graph(rng, uniform(rng, 0, max_bag_size), p);
  std::vector<Adhesion<GraphCategory>> adhesions;
  for (Vertex t = 1; t < k; ++t) {
    const Vertex parent = shape.neighbors(t).front();
    const Graph& pb = bags[parent];
    const std::size_t a = uniform(rng, 0, pb.vertex_count());
    const auto in_parent = random_injection(rng, a, pb.vertex_count());
    std::vector<Edge> sub_edges;
    for (Vertex i = 0; i < a; ++i)
      for (Vertex j = i + 1; j < a; ++j)
        if (pb.adjacent(in_parent[i], in_parent[j]) && coin(rng, 0.7)) sub_edges.emplace_back(i, j);
    const Graph apex(a, std::move(sub_edges));
    const std::size_t n = uniform(rng, a, std::max(a, max_bag_size));
    const auto in_child = random_injection(rng, a, n);
    bags[t] = random_extension(rng, apex, n, in_child, p);
    adhesions.push_back({{parent, t}, apex, GraphMorphism(apex, bags[parent], SetFunction(a, pb.vertex_count(), in_parent)),
                         GraphMorphism(apex, bags[t], SetFunction(a, n, in_child))});
  }
  return GraphDecomposition(shape, std::move(bags), std::move(adhesions));
}

/// Random subgraph X of g with its inclusion; X is numbered in increasing order.
inline GraphMorphism random_subgraph_mono(Rng& rng, const Graph& g, double keep = 0.6) {
  std::vector<Vertex> vertices;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (coin(rng, keep)) vertices.push_back(v);
  std::vector<Vertex> index(g.vertex_count(), 0);
  for (std::size_t i = 0; i < vertices.size(); ++i) index[vertices[i]] = i;
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) {
    const bool both = std::binary_search(vertices.begin(), vertices.end(), u) &&
                      std::binary_search(vertices.begin(), vertices.end(), v);
    if (both && coin(rng, keep)) edges.emplace_back(index[u], index[v]);
  }
  Graph x(vertices.size(), std::move(edges));
  return GraphMorphism(std::move(x), g, SetFunction(vertices.size(), g.vertex_count(), vertices));
}

}  // namespace sdkit::gen
