#include <catch_amalgamated.hpp>

#include <set>

#include "oracles.hpp"
#include "support.hpp"

using namespace sdkit;

TEST_CASE("validate reports malformed decompositions as data", "[decomposition]") {
  const auto fig1 = support::load_as<FinSetDecomposition>("fig1.dec.json");
  CHECK(validate(fig1).empty());
  CHECK(is_tame(fig1));

  // A leg with an out-of-range entry.
  FinSetDecomposition bad(Graph(2, {{0, 1}}), {FinSet(2), FinSet(2)},
                          {{{0, 1}, FinSet(1), SetFunction::unchecked(1, 2, {5}), SetFunction(1, 2, {0})}});
  CHECK(validate(bad).size() == 1);

  // Missing adhesion and wrong bag count.
  FinSetDecomposition missing(Graph(3, {{0, 1}}), {FinSet(1), FinSet(1)}, {});
  CHECK(validate(missing).size() == 2);

  CHECK(validate(FinSetDecomposition()).empty());
  CHECK(is_tame(FinSetDecomposition(Graph(2), {FinSet(1), FinSet(3)}, {})));

  FinSetDecomposition collapsing(Graph(2, {{0, 1}}), {FinSet(1), FinSet(2)},
                                 {{{0, 1}, FinSet(2), SetFunction(2, 1, {0, 0}), SetFunction(2, 2, {0, 1})}});
  CHECK(validate(collapsing).empty());
  CHECK_FALSE(is_tame(collapsing));
  CHECK_THROWS_AS(evaluate_colimit(missing), Error);
}

TEST_CASE("single-bag colimit is the bag", "[decomposition]") {
  const auto d = support::load_as<GraphDecomposition>("k5_single_bag.dec.json");
  const auto c = evaluate_colimit(d);
  CHECK(c.apex == complete_graph(5));
  CHECK(c.legs.size() == 1);
}

TEST_CASE("Figure 1 completed has bags K4 K3 K5 K3 K3", "[decomposition][fixture]") {
  const auto d = support::load_as<FinSetDecomposition>("fig1.dec.json");
  const auto k = map_decomposition(CompleteGraphFunctor{}, d);
  const std::size_t sizes[] = {4, 3, 5, 3, 3};
  REQUIRE(k.bags().size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(k.bag(i) == complete_graph(sizes[i]));
  CHECK(k.shape() == d.shape());
  CHECK(is_tame(k));
  CHECK(map_decomposition(IdentityFunctor<FinSetCategory>{}, d) == d);
}

TEST_CASE("functors on decompositions respect identities and composition", "[decomposition][functor]") {
  gen::Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const auto d = gen::random_tame_finset_decomposition(rng, 4, 4);
    // complement after discrete is complete, pointwise.
    const auto disc = map_decomposition(DiscreteGraphFunctor{}, d);
    const auto comp = map_decomposition(CompleteGraphFunctor{}, d);
    for (std::size_t b = 0; b < d.bags().size(); ++b) CHECK(complement(disc.bag(b)) == comp.bag(b));
    CHECK(is_tame(disc));
    CHECK(is_tame(comp));
    // V after K is the identity on FinSet decompositions.
    const auto round = map_decomposition(VertexSetFunctor{}, comp);
    const auto composed = map_decomposition(ComposedFunctor<VertexSetFunctor, CompleteGraphFunctor>{}, d);
    CHECK(round == composed);
    CHECK(canonicalize_apexes(round) == canonicalize_apexes(d));
    CHECK(map_decomposition(IdentityFunctor<GraphCategory>{}, comp) == comp);
  }
}

TEST_CASE("the vertex-set functor preserves colimits", "[decomposition][property]") {
  gen::Rng rng(32);
  for (int i = 0; i < 100; ++i) {
    const auto d = gen::random_tame_finset_decomposition(rng, 5, 4);
    const auto sets = evaluate_colimit(d);
    const auto graphs = evaluate_colimit(map_decomposition(CompleteGraphFunctor{}, d));
    CHECK(graphs.apex.vertex_count() == sets.apex.size());
    for (std::size_t b = 0; b < d.bags().size(); ++b) CHECK(graphs.legs[b].vertex_map() == sets.legs[b]);
    const auto gd = gen::random_tame_graph_decomposition(rng, 4, 4);
    const auto forgotten = evaluate_colimit(map_decomposition(VertexSetFunctor{}, gd));
    CHECK(forgotten.apex.size() == evaluate_colimit(gd).apex.vertex_count());
  }
}

TEST_CASE("intro arrow example has six vertices and four edges over a path", "[decomposition][fixture]") {
  const auto d = support::load_as<FinSetDecomposition>("intro_arrow.dec.json");
  const auto a = to_arrow(d);
  CHECK(a.total.vertex_count() == 6);
  CHECK(a.total.edge_count() == 4);
  CHECK(a.base == Graph(3, {{0, 1}, {1, 2}}));
  CHECK(a.projection.well_formed());
  CHECK(from_arrow(a) == canonicalize_apexes(d));

  const auto empty = to_arrow(FinSetDecomposition());
  CHECK(empty.total.vertex_count() == 0);
  CHECK(empty.base.vertex_count() == 0);
  CHECK_THROWS_AS(to_arrow(AnyDecomposition(GraphDecomposition())), Error);
}

TEST_CASE("arrow round trip on random tame decompositions", "[decomposition][property]") {
  gen::Rng rng(33);
  for (int i = 0; i < 300; ++i) {
    const auto d = gen::random_tame_finset_decomposition(rng, 4, 3);
    CHECK(from_arrow(to_arrow(d)) == canonicalize_apexes(d));
  }
}

TEST_CASE("arrow round trip on every two-bag decomposition", "[decomposition][property]") {
  std::size_t count = 0;
  support::for_each_small_finset_decomposition(2, 3, 9, [&](const FinSetDecomposition& d) {
    ++count;
    CHECK(from_arrow(to_arrow(d)) == canonicalize_apexes(d));
  });
  CHECK(count > 500);
}

TEST_CASE("check_morphism accepts identities and rejects a broken square", "[decomposition]") {
  const auto d = map_decomposition(CompleteGraphFunctor{}, support::load_as<FinSetDecomposition>("fig1.dec.json"));
  auto m = identity_morphism(d);
  CHECK(check_morphism(m));
  // Swap two vertices of bag 0 that lie in the adhesion with bag 1.
  m.vertex_components[0] = GraphMorphism(d.bag(0), d.bag(0), SetFunction(4, 4, {0, 1, 3, 2}));
  CHECK_FALSE(check_morphism(m));
}

TEST_CASE("Figure 2 restriction gives the drawn tree decomposition of G", "[decomposition][fixture]") {
  const auto dh = support::load_as<FinSetDecomposition>("fig2_DH.dec.json");
  const Graph g = support::load_graph("fig2_G.json");
  const Graph h = support::load_graph("fig2_H.json");
  const auto completed = map_decomposition(CompleteGraphFunctor{}, dh);
  const auto colim = evaluate_colimit(completed);
  REQUIRE(is_isomorphic(colim.apex, h));
  REQUIRE(colim.apex == h);  // the fixture numbers H like the colimit
  std::vector<Vertex> id(g.vertex_count());
  std::iota(id.begin(), id.end(), Vertex{0});
  const auto r = restrict_decomposition(completed, support::mono(g, h, id));
  CHECK(check_morphism(r.morphism));
  CHECK(is_tame(r.decomposition));
  CHECK(width(r.decomposition) == 2);
  BagEmbedding embedding;
  std::set<std::set<Vertex>> bag_sets;
  for (const auto& e : r.embeddings) {
    embedding.push_back(e.vertex_map());
    bag_sets.insert({e.vertex_map().values().begin(), e.vertex_map().values().end()});
  }
  CHECK(is_tree_decomposition(g, r.decomposition, embedding));
  // a0 b1 d2 c3 e4 f5 h6 g7
  const std::set<std::set<Vertex>> drawn{{0, 1, 2}, {1, 3, 2}, {2, 4}, {4, 5, 6}, {5, 7, 6}};
  CHECK(bag_sets == drawn);
}

TEST_CASE("restriction along the identity returns the decomposition", "[decomposition]") {
  gen::Rng rng(34);
  for (int i = 0; i < 50; ++i) {
    const auto d = gen::random_tame_graph_decomposition(rng, 4, 4);
    const auto c = evaluate_colimit(d);
    const auto r = restrict_decomposition(d, GraphMorphism::identity(c.apex));
    CHECK(r.decomposition == d);
  }
}

TEST_CASE("restriction is tame, keeps the shape and glues back to the subobject", "[decomposition][property]") {
  gen::Rng rng(35);
  for (int i = 0; i < 100; ++i) {
    const auto d = gen::random_tame_graph_decomposition(rng, 4, 4);
    const auto c = evaluate_colimit(d);
    const auto delta = gen::random_subgraph_mono(rng, c.apex);
    const auto r = restrict_decomposition(d, delta);
    CHECK(is_tame(r.decomposition));
    CHECK(r.decomposition.shape() == d.shape());
    CHECK(check_morphism(r.morphism));
    // Oracle: glue the restricted bags by hand through their embeddings.
    const auto rc = evaluate_colimit(r.decomposition);
    std::vector<SetFunction> maps;
    for (const auto& e : r.embeddings) maps.push_back(e.vertex_map());
    const auto to_x = mediating_map(r.decomposition, rc, maps, delta.dom().vertex_count());
    REQUIRE(to_x);
    CHECK(to_x->is_injective());
    CHECK(to_x->is_surjective());
    if (rc.apex.vertex_count() <= kIsomorphismVertexCap) CHECK(is_isomorphic(rc.apex, delta.dom()));
  }
}

TEST_CASE("restriction rejects non-monos and non-tame input", "[decomposition]") {
  const auto d = support::load_as<GraphDecomposition>("bowtie.dec.json");
  const Graph c = evaluate_colimit(d).apex;
  const Graph k2 = complete_graph(2);
  CHECK_THROWS_AS(restrict_decomposition(d, GraphMorphism(k2, c, SetFunction(2, 5, {0, 0}))), Error);
  const Graph k1 = complete_graph(1);
  GraphDecomposition wild(Graph(2, {{0, 1}}), {k1, k1},
                          {{{0, 1}, discrete_graph(2), GraphMorphism(discrete_graph(2), k1, SetFunction(2, 1, {0, 0})),
                            GraphMorphism(discrete_graph(2), k1, SetFunction(2, 1, {0, 0}))}});
  CHECK_THROWS_AS(restrict_decomposition(wild, GraphMorphism::identity(k1)), Error);
}
