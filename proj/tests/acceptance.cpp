// Acceptance suite: one PASS/FAIL line per criterion, each with a pinned
// wall-clock limit. Exit status is non-zero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "support.hpp"

using namespace sdkit;
using oracle::Property;

namespace {

/// Collects the first failure message; checks after a failure are still run
/// but only the first message is reported.
class Verdict {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && failure_.empty()) failure_ = what;
  }
  bool ok() const { return failure_.empty(); }
  const std::string& failure() const { return failure_; }
  void note(std::string s) { note_ = std::move(s); }
  const std::string& note() const { return note_; }

 private:
  std::string failure_;
  std::string note_;
};

struct Criterion {
  int id;
  std::string title;
  double limit_ms;
  std::function<void(Verdict&)> body;
};

Graph cycle(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.push_back(make_edge(v, (v + 1) % n));
  return Graph(n, std::move(edges));
}

std::string graph_text(const Graph& g) { return io::to_json(g).dump(); }

// 1 ------------------------------------------------------------------------
void bowtie_longest_path(Verdict& v) {
  const Graph g = support::load_graph("bowtie.json");
  const auto d = support::load_as<GraphDecomposition>("bowtie.dec.json");
  v.require(d.bags().size() == 2, "bowtie decomposition should have two bags");
  const auto r = longest_path(g, d);
  v.require(r.value == 4, "longest path has " + std::to_string(r.value) + " edges, expected 4");
  v.require(r.witness.edges.count() == 4, "witness does not carry 4 edges");
  v.require(is_path_subobject(g, r.witness), "witness is not a single connected path");
  v.require(oracle::longest_path_edges(g) == 4, "search oracle disagrees");
}

// 2 ------------------------------------------------------------------------
void figure2_pipeline(Verdict& v) {
  const auto dh = support::load_as<FinSetDecomposition>("fig2_DH.dec.json");
  const Graph g = support::load_graph("fig2_G.json");
  const Graph h = support::load_graph("fig2_H.json");
  const auto completed = map_decomposition(CompleteGraphFunctor{}, dh);
  const auto colim = evaluate_colimit(completed);
  v.require(is_isomorphic(colim.apex, h), "colimit of the completed decomposition is not H");
  v.require(is_chordal(h), "H is not chordal");
  v.require(oracle::is_chordal_dirac(h), "gluing-recursion oracle says H is not chordal");
  // G sits inside H on the same vertex numbering; transport it through the iso.
  const auto iso = find_isomorphism(h, colim.apex);
  if (!iso) return;
  std::vector<Vertex> into;
  for (Vertex x = 0; x < g.vertex_count(); ++x) into.push_back((*iso)[x]);
  const auto r = restrict_decomposition(completed, support::mono(g, colim.apex, into));
  BagEmbedding embedding;
  for (const auto& e : r.embeddings) embedding.push_back(e.vertex_map());
  v.require(is_tree_decomposition(g, r.decomposition, embedding), "restriction is not a tree decomposition of G");
  v.require(width(r.decomposition) == 2, "restricted width is " + std::to_string(width(r.decomposition)));
  v.require(check_morphism(r.morphism), "restriction morphism fails naturality");
}

// 3 ------------------------------------------------------------------------
void treewidth_anchors(Verdict& v) {
  for (std::size_t n = 0; n <= 12; ++n)
    v.require(treewidth_exact(discrete_graph(n)) == 0, "edgeless graph on " + std::to_string(n) + " vertices");
  gen::Rng rng(3);
  std::size_t trees = 0;
  for (std::size_t n = 2; n <= 12; ++n)
    for (int k = 0; k < 5; ++k, ++trees) {
      const Graph t = gen::random_tree(rng, n);
      v.require(treewidth_exact(t) == 1, "tree " + graph_text(t));
    }
  const Graph star(12, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {0, 6}, {0, 7}, {0, 8}, {0, 9}, {0, 10}, {0, 11}});
  v.require(treewidth_exact(star) == 1, "star K1,11");
  for (std::size_t n = 3; n <= 10; ++n) v.require(treewidth_exact(cycle(n)) == 2, "cycle C" + std::to_string(n));
  for (std::size_t n = 2; n <= 8; ++n)
    v.require(treewidth_exact(complete_graph(n)) == n - 1, "complete graph K" + std::to_string(n));
  v.note(std::to_string(trees + 1) + " trees");
}

// 4 ------------------------------------------------------------------------
void treewidth_vs_chordal_supergraphs(Verdict& v) {
  std::size_t count = 0;
  for (std::size_t n = 0; n <= 5; ++n)
    for (const auto& g : oracle::graphs_up_to_isomorphism(n)) {
      ++count;
      const std::size_t tw = treewidth_exact(g);
      const std::size_t omega = n == 0 ? 0 : oracle::min_clique_over_chordal_supergraphs(g);
      // The empty graph has no cliques; its tree-width is 0 by convention.
      if (n == 0) {
        v.require(tw == 0, "empty graph");
        continue;
      }
      v.require(tw + 1 == omega, "tw+1 != min clique number for " + graph_text(g));
    }
  v.note(std::to_string(count) + " graphs");
}

// 5 ------------------------------------------------------------------------
void compose_matches_bruteforce(Verdict& v) {
  gen::Rng rng(5);
  std::size_t checks = 0;
  for (int i = 0; i < 200; ++i) {
    const auto span = gen::random_monic_span(rng, 4);
    for (Property prop : oracle::kAllProperties) {
      const auto p = oracle::library_predicate(prop);
      const auto left = enumerate_subp_bruteforce(span.left.cod(), p);
      const auto right = enumerate_subp_bruteforce(span.right.cod(), p);
      const auto c = compose_detailed(span, left, right, p);
      const std::string where = std::string(oracle::name(prop)) + " span #" + std::to_string(i);
      v.require(c.table.op_counter == left.size() * right.size(), "op counter mismatch, " + where);
      v.require(oracle::as_naive(c.table) == oracle::naive_subp(c.pushout.apex, prop), "table mismatch, " + where);
      ++checks;
    }
  }
  v.note(std::to_string(checks) + " span x predicate checks");
}

// 6 ------------------------------------------------------------------------
void fold_matches_bruteforce(Verdict& v) {
  gen::Rng rng(6);
  std::size_t checks = 0;
  for (int i = 0; i < 100; ++i) {
    const auto t = gen::random_tree_decomposition(rng, 4, 4);
    for (Property prop : oracle::kAllProperties) {
      const auto p = oracle::library_predicate(prop);
      const auto r = solve_on_decomposition(t.decomposition, p, objective_max_edges());
      const std::string where = std::string(oracle::name(prop)) + " instance #" + std::to_string(i);
      v.require(r.colimit.apex == t.graph, "colimit differs from the generated graph, " + where);
      const long long expected = static_cast<long long>(oracle::max_edges_with(t.graph, prop));
      v.require(r.best && r.best->value == expected, "optimum mismatch, " + where);
      for (Vertex root = 1; root < t.decomposition.bags().size(); ++root) {
        const auto other = solve_on_decomposition(t.decomposition, p, objective_max_edges(),
                                                  SolveOptions{root, 1, false, std::nullopt});
        v.require(other.table.entries == r.table.entries, "table changes with root, " + where);
        v.require(other.best && r.best && other.best->witness == r.best->witness, "optimum changes with root, " + where);
      }
      ++checks;
    }
  }
  v.note(std::to_string(checks) + " decomposition x predicate checks");
}

// 7 ------------------------------------------------------------------------
void chordal_suite(Verdict& v) {
  gen::Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto d = gen::random_tame_finset_decomposition(rng, 5, 4);
    const Graph h = chordal_from_decomposition(d);
    v.require(is_chordal(h), "completed colimit is not chordal: " + graph_text(h));
    if (h.vertex_count() <= 9) v.require(oracle::is_chordal_dirac(h), "oracle rejects completed colimit " + graph_text(h));
  }
  for (int i = 0; i < 100; ++i) {
    const Graph h = gen::random_chordal_graph(rng, 8);
    const auto d = decomposition_from_chordal(h);
    v.require(is_isomorphic(chordal_from_decomposition(d), h), "clique tree does not rebuild " + graph_text(h));
    v.require(max_bag_size(d) == oracle::clique_number(h), "largest bag differs from clique number for " + graph_text(h));
  }
  v.note("200 decompositions, 100 chordal graphs");
}

// 8 ------------------------------------------------------------------------
void restriction_suite(Verdict& v) {
  gen::Rng rng(8);
  std::size_t iso_checked = 0;
  for (int i = 0; i < 100; ++i) {
    const auto d = gen::random_tame_graph_decomposition(rng, 4, 4);
    const auto c = evaluate_colimit(d);
    const auto delta = gen::random_subgraph_mono(rng, c.apex);
    const auto r = restrict_decomposition(d, delta);
    const std::string where = "instance #" + std::to_string(i);
    v.require(is_tame(r.decomposition), "restriction not tame, " + where);
    v.require(r.decomposition.shape() == d.shape(), "shape changed, " + where);
    v.require(check_morphism(r.morphism), "morphism fails naturality, " + where);
    const auto rc = evaluate_colimit(r.decomposition);
    v.require(rc.apex.vertex_count() == delta.dom().vertex_count() && rc.apex.edge_count() == delta.dom().edge_count(),
              "colimit size differs from the subobject, " + where);
    if (rc.apex.vertex_count() <= kIsomorphismVertexCap) {
      ++iso_checked;
      v.require(is_isomorphic(rc.apex, delta.dom()), "colimit not isomorphic to the subobject, " + where);
    }
    // The embeddings glue to a bijection onto the subobject's vertices.
    std::vector<SetFunction> maps;
    for (const auto& e : r.embeddings) maps.push_back(e.vertex_map());
    const auto to_x = mediating_map(r.decomposition, rc, maps, delta.dom().vertex_count());
    v.require(to_x && to_x->is_injective() && to_x->is_surjective(), "embeddings do not glue to a bijection, " + where);
    if (to_x && to_x->is_injective() && to_x->is_surjective())
      v.require(GraphMorphism::unchecked(rc.apex, delta.dom(), *to_x).well_formed() &&
                    rc.apex.edge_count() == delta.dom().edge_count(),
                "glued embedding is not an isomorphism, " + where);
  }
  v.note("100 restrictions, " + std::to_string(iso_checked) + " also by isomorphism search");
}

// 9 ------------------------------------------------------------------------
void arrow_round_trip(Verdict& v) {
  std::size_t count = 0;
  support::for_each_small_finset_decomposition(3, 3, 2, [&](const FinSetDecomposition& d) {
    ++count;
    if (!(from_arrow(to_arrow(d)) == canonicalize_apexes(d)))
      v.require(false, "round trip fails on " + io::to_json(d).dump());
  });
  v.note(std::to_string(count) + " decompositions");
}

// 10 -----------------------------------------------------------------------
void layered_width_checks(Verdict& v) {
  v.require(layer_join({complete_graph(1), complete_graph(1)}) == complete_graph(2), "layer_join(K1,K1) is not K2");
  const Graph p3 = support::load_graph("p3.json");
  const auto layers = io::layering_from_json(io::read_file(support::fixture("p3_layers.json")));
  const auto d = support::load_as<GraphDecomposition>("p3_td.dec.json");
  v.require(layered_width(p3, layers, d) == 1, "P3 with singleton layers");
  v.require(layered_width(p3, Layering{{{0, 1, 2}}}, d) == max_bag_size(d), "single layer");
  const auto fig4 = support::load_decomposition("fig4_td.dec.json");
  const Graph g4 = support::load_graph("fig4_G.json");
  std::vector<Vertex> all(g4.vertex_count());
  std::iota(all.begin(), all.end(), Vertex{0});
  const auto& d4 = std::get<GraphDecomposition>(fig4.decomposition);
  v.require(layered_width(g4, Layering{{all}}, d4, io::embedding_into(*fig4.embedding, g4.vertex_count())) ==
                max_bag_size(d4),
            "single layer on Figure 4");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Figure 5: bowtie longest path is 4 with a path witness", 1000, bowtie_longest_path},
      {2, "Figure 2: completed colimit is H, chordal, restriction is a width-2 tree decomposition", 1000,
       figure2_pipeline},
      {3, "tree-width anchors on edgeless graphs, trees, cycles and cliques", 5000, treewidth_anchors},
      {4, "tree-width + 1 = least clique number over chordal supergraphs, all graphs on <= 5 vertices", 60000,
       treewidth_vs_chordal_supergraphs},
      {5, "compose equals brute force on 200 monic spans x 3 predicates, op counter exact", 120000,
       compose_matches_bruteforce},
      {6, "fold optimum equals brute force on 100 tree decompositions x 3 predicates, root-invariant", 120000,
       fold_matches_bruteforce},
      {7, "completed tame decompositions are chordal; clique trees round trip", 60000, chordal_suite},
      {8, "restriction is tame, same shape, glues to the subobject, natural", 60000, restriction_suite},
      {9, "arrow round trip on every small decomposition", 10000, arrow_round_trip},
      {10, "layer join and layered width", 1000, layered_width_checks},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = ms <= c.limit_ms;
    const bool pass = v.ok() && in_time;
    if (!pass) ++failures;
    std::ostringstream line;
    line << (pass ? "PASS" : "FAIL") << " " << c.id << ": " << c.title << " (" << static_cast<long long>(ms)
         << " ms, limit " << static_cast<long long>(c.limit_ms) << " ms";
    if (!v.note().empty()) line << "; " << v.note();
    line << ")";
    if (!v.ok()) line << " -- " << v.failure();
    if (!in_time) line << " -- over the time limit";
    std::cout << line.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
