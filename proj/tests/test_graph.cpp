#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "support.hpp"

using namespace sdkit;

TEST_CASE("graph construction normalizes and rejects bad input", "[graph]") {
  const Graph g(3, {{2, 0}, {1, 0}});
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {0, 2}});
  CHECK(g.adjacent(2, 0));
  CHECK_FALSE(g.adjacent(1, 2));
  CHECK(g.degree(0) == 2);
  CHECK_THROWS_AS(Graph(2, {{1, 1}}), Error);
  CHECK_THROWS_AS(Graph(2, {{0, 2}}), Error);
  CHECK_THROWS_AS(Graph(2, {{0, 1}, {1, 0}}), Error);
  CHECK(Graph::simplify(2, {{0, 1}, {1, 0}, {1, 1}}).edge_count() == 1);
}

TEST_CASE("set functions check their shape", "[graph]") {
  CHECK_THROWS_AS(SetFunction(2, 2, {0, 2}), Error);
  CHECK_THROWS_AS(SetFunction(2, 2, {0}), Error);
  const SetFunction f(2, 3, {2, 0});
  CHECK(f.is_injective());
  CHECK_FALSE(f.is_surjective());
  const SetFunction g(3, 1, {0, 0, 0});
  CHECK(compose(g, f) == SetFunction(2, 1, {0, 0}));
  CHECK_THROWS_AS(compose(f, f), Error);
}

TEST_CASE("graph morphisms follow the reflexive convention", "[graph]") {
  const Graph k2 = complete_graph(2);
  const Graph k1 = complete_graph(1);
  // Collapsing an edge onto one vertex is allowed.
  CHECK(GraphMorphism::unchecked(k2, k1, SetFunction(2, 1, {0, 0})).well_formed());
  // Sending an edge to a non-edge is not.
  CHECK_THROWS_AS(GraphMorphism(k2, discrete_graph(2), SetFunction(2, 2, {0, 1})), Error);
  const auto id = GraphMorphism::identity(k2);
  const auto swap = GraphMorphism(k2, k2, SetFunction(2, 2, {1, 0}));
  CHECK(compose(swap, swap) == id);
  CHECK(compose(swap, id) == swap);
}

TEST_CASE("complement of C5 is C5 and complement is an involution", "[graph]") {
  const Graph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  CHECK(is_isomorphic(complement(c5), c5));
  gen::Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const Graph g = gen::random_graph(rng, gen::uniform(rng, 0, 7), 0.5);
    CHECK(complement(complement(g)) == g);
    CHECK(complement(g).edge_count() + g.edge_count() == g.vertex_count() * (g.vertex_count() - (g.vertex_count() > 0)) / 2);
  }
}

TEST_CASE("complete and discrete constructions are functors", "[graph][functor]") {
  gen::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const std::size_t a = gen::uniform(rng, 0, 4), b = gen::uniform(rng, 1, 4), c = gen::uniform(rng, 1, 4);
    std::vector<Vertex> fm(a), gm(b);
    for (auto& x : fm) x = gen::uniform(rng, 0, b - 1);
    for (auto& x : gm) x = gen::uniform(rng, 0, c - 1);
    const SetFunction f(a, b, fm), g(b, c, gm);
    const auto kf = complete_on_function(f), kg = complete_on_function(g);
    CHECK(kf.well_formed());
    CHECK(complete_on_function(compose(g, f)) == compose(kg, kf));
    CHECK(complete_on_function(SetFunction::identity(a)) == GraphMorphism::identity(complete_graph(a)));
    const auto df = discrete_on_function(f), dg = discrete_on_function(g);
    CHECK(df.well_formed());
    CHECK(discrete_on_function(compose(g, f)) == compose(dg, df));
    CHECK(discrete_on_function(SetFunction::identity(a)) == GraphMorphism::identity(discrete_graph(a)));
  }
}

TEST_CASE("isomorphism search agrees with relabelling", "[graph]") {
  gen::Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = gen::uniform(rng, 0, 7);
    const Graph g = gen::random_graph(rng, n, 0.4);
    const auto perm = gen::random_injection(rng, n, n);
    const Graph h = relabel(g, perm);
    const auto iso = find_isomorphism(g, h);
    REQUIRE(iso);
    for (auto [u, v] : g.edges()) CHECK(h.adjacent((*iso)[u], (*iso)[v]));
  }
  CHECK_FALSE(is_isomorphic(Graph(4, {{0, 1}, {1, 2}, {2, 3}}), Graph(4, {{0, 1}, {0, 2}, {0, 3}})));
  CHECK_THROWS_AS(is_isomorphic(discrete_graph(9), discrete_graph(9)), Error);
}

TEST_CASE("induced subgraphs keep exactly the edges among chosen vertices", "[graph]") {
  const Graph k4 = complete_graph(4);
  const std::vector<Vertex> keep{3, 1};
  const auto inc = induced_subgraph(k4, keep);
  CHECK(inc.dom().vertex_count() == 2);
  CHECK(inc.dom().edge_count() == 1);
  CHECK(inc.is_mono());
  CHECK(inc(0) == 3);
}

TEST_CASE("isomorphism classes oracle counts small graphs", "[oracle]") {
  // Known counts of unlabelled graphs on 0..5 vertices.
  const std::size_t expected[] = {1, 1, 2, 4, 11, 34};
  for (std::size_t n = 0; n <= 5; ++n) CHECK(oracle::graphs_up_to_isomorphism(n).size() == expected[n]);
}
