#pragma once

// Command-line front end. `run` is separate from main so tests can drive it
// in-process.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sdkit/sdkit.hpp"

namespace sdkit::cli {

using io::Json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitTooLarge = 3;

inline constexpr const char* kBenchHeader = "instance,vertices,edges,width,predicate,value,pairCompositions,ms";

struct Options {
  std::string graph, decomposition, layering, arrow, map, config, output;
  std::string property = "paths";
  std::string objective = "max-edges";
  bool prune = false;
  bool complete = false;
  unsigned threads = 1;
  std::size_t root = 0;
  std::size_t generate = 0;
  std::uint64_t seed = 0;
};

/// Result of a verb: exit code plus the text destined for stdout.
struct Outcome {
  int code = kExitOk;
  std::string text;
};

namespace detail {

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Outcome ok(const Json& j) { return {kExitOk, dump(j)}; }

inline Outcome invalid(const std::vector<std::string>& violations, Json extra = Json::object()) {
  extra["valid"] = false;
  extra["violations"] = violations;
  return {kExitInvalid, dump(extra)};
}

inline Graph load_graph(const std::string& path) { return io::graph_from_json(io::read_file(path), path); }

inline io::DecompositionFile load_decomposition(const std::string& path) {
  return io::decomposition_from_json(io::read_file(path));
}

inline GraphDecomposition as_graph_valued(const AnyDecomposition& d, bool complete) {
  if (const auto* g = std::get_if<GraphDecomposition>(&d)) return *g;
  if (!complete) throw Error(ErrorCode::InvalidArgument, "a graph-valued decomposition is required (or pass --complete)");
  return map_decomposition(CompleteGraphFunctor{}, std::get<FinSetDecomposition>(d));
}

inline std::vector<std::string> violations_of(const AnyDecomposition& d) {
  return std::visit([](const auto& x) { return validate(x); }, d);
}

inline std::optional<BagEmbedding> embedding_for(const io::DecompositionFile& file, const Graph& g) {
  if (!file.embedding) return std::nullopt;
  return io::embedding_into(*file.embedding, g.vertex_count());
}

inline bool (*graph_property(const std::string& name))(const Graph&) {
  if (name == "paths") return &is_linear_forest;
  if (name == "bipartite") return &is_bipartite;
  if (name == "planar") return &is_planar;
  throw Error(ErrorCode::InvalidArgument, "unknown property " + name);
}

inline PropertyPredicate predicate(const std::string& name) {
  auto p = predicate_by_name(name);
  if (!p) throw Error(ErrorCode::InvalidArgument, "unknown property " + name);
  return *p;
}

inline Objective objective(const std::string& name) {
  auto f = objective_by_name(name);
  if (!f) throw Error(ErrorCode::InvalidArgument, "unknown objective " + name);
  return *f;
}

// ---------------------------------------------------------------------------

inline Outcome colim(const Options& o) {
  const auto file = load_decomposition(o.decomposition);
  if (auto bad = violations_of(file.decomposition); !bad.empty()) return invalid(bad);
  return std::visit(
      [](const auto& d) {
        using Cat = typename std::decay_t<decltype(d)>::Category;
        const auto c = evaluate_colimit(d);
        Json legs = Json::array();
        for (const auto& leg : c.legs) {
          const auto v = Cat::function(leg).values();
          legs.push_back(std::vector<Vertex>(v.begin(), v.end()));
        }
        Json out{{"valueKind", std::string(to_string(Cat::kind))}};
        if constexpr (Cat::kind == ValueKind::FinSet) {
          out["size"] = c.apex.size();
          // Name each class by its first representative.
          std::vector<std::string> names(c.apex.size());
          std::vector<char> named(c.apex.size(), 0);
          for (Vertex t = 0; t < d.bags().size(); ++t)
            for (Vertex x = 0; x < d.bag(t).size(); ++x) {
              const Vertex cls = c.legs[t](x);
              if (named[cls]) continue;
              named[cls] = 1;
              names[cls] = d.labels().empty() ? std::to_string(cls) : d.labels()[t][x];
            }
          out["elements"] = names;
        } else {
          out["graph"] = io::to_json(c.apex);
        }
        out["legs"] = std::move(legs);
        return ok(out);
      },
      file.decomposition);
}

inline Outcome check(const Options& o) {
  const auto file = load_decomposition(o.decomposition);
  const auto bad = violations_of(file.decomposition);
  Json out{{"valid", bad.empty()}, {"violations", bad}};
  if (!bad.empty()) return {kExitInvalid, dump(out)};
  out["tame"] = std::visit([](const auto& d) { return is_tame(d); }, file.decomposition);
  out["treeShaped"] = std::visit([](const auto& d) { return is_tree(d.shape()); }, file.decomposition);
  if (o.graph.empty()) return ok(out);
  const Graph g = load_graph(o.graph);
  const GraphDecomposition d = as_graph_valued(file.decomposition, true);
  const auto embedding = embedding_for(file, g);
  const auto td = embedding ? tree_decomposition_violations(g, d, *embedding) : tree_decomposition_violations(g, d);
  out["treeDecomposition"] = td.empty();
  out["treeDecompositionViolations"] = td;
  if (td.empty()) out["width"] = width(d);
  return {td.empty() ? kExitOk : kExitInvalid, dump(out)};
}

inline Outcome to_arrow_verb(const Options& o) {
  const auto file = load_decomposition(o.decomposition);
  if (auto bad = violations_of(file.decomposition); !bad.empty()) return invalid(bad);
  return ok(io::to_json(to_arrow(file.decomposition)));
}

inline Outcome from_arrow_verb(const Options& o) {
  const auto a = io::arrow_from_json(io::read_file(o.arrow));
  return ok(io::to_json(from_arrow(a)));
}

inline Outcome restrict_verb(const Options& o) {
  const auto file = load_decomposition(o.decomposition);
  if (auto bad = violations_of(file.decomposition); !bad.empty()) return invalid(bad);
  const GraphDecomposition d = as_graph_valued(file.decomposition, o.complete);
  const Graph x = load_graph(o.graph);
  const Graph colim_graph = evaluate_colimit(d).apex;
  SetFunction map = SetFunction::identity(x.vertex_count());
  if (!o.map.empty()) {
    map = io::function_from_json(io::read_file(o.map), colim_graph.vertex_count(), o.map);
  }
  if (!map.well_formed() || map.dom_size() != x.vertex_count() || map.cod_size() > colim_graph.vertex_count()) {
    throw Error(ErrorCode::InvalidMorphism, "the map must send the graph's vertices into the colimit");
  }
  const GraphMorphism delta(x, colim_graph,
                            SetFunction(x.vertex_count(), colim_graph.vertex_count(),
                                        std::vector<Vertex>(map.values().begin(), map.values().end())));
  const Restriction r = restrict_decomposition(d, delta);
  std::vector<std::vector<Vertex>> embedding;
  for (const auto& e : r.embeddings) {
    const auto v = e.vertex_map().values();
    embedding.emplace_back(v.begin(), v.end());
  }
  BagEmbedding maps;
  for (const auto& e : r.embeddings) maps.push_back(e.vertex_map());
  Json out{{"decomposition", io::to_json(r.decomposition, embedding)},
           {"tame", is_tame(r.decomposition)},
           {"morphismValid", check_morphism(r.morphism)},
           {"treeDecomposition", is_tree(d.shape()) && is_tree_decomposition(x, r.decomposition, maps)}};
  if (!r.decomposition.bags().empty()) out["width"] = width(r.decomposition);
  return ok(out);
}

inline Outcome chordal_verb(const Options& o) {
  if (!o.decomposition.empty()) {
    const auto file = load_decomposition(o.decomposition);
    if (auto bad = violations_of(file.decomposition); !bad.empty()) return invalid(bad);
    const auto* d = std::get_if<FinSetDecomposition>(&file.decomposition);
    if (!d) throw Error(ErrorCode::InvalidArgument, "completion needs a finset-valued decomposition");
    const Graph h = chordal_from_decomposition(*d);
    return ok(Json{{"graph", io::to_json(h)}, {"chordal", is_chordal(h)}, {"cliqueNumber", clique_number_chordal(h)}});
  }
  const Graph g = load_graph(o.graph);
  const auto peo = perfect_elimination_ordering(g);
  Json out{{"chordal", peo.has_value()}};
  out["peo"] = peo ? Json(*peo) : Json(nullptr);
  out["cliqueNumber"] = peo ? Json(clique_number_chordal(g)) : Json(nullptr);
  return ok(out);
}

inline Outcome clique_tree(const Options& o) { return ok(io::to_json(decomposition_from_chordal(load_graph(o.graph)))); }

inline Outcome treewidth_verb(const Options& o) {
  Json out = Json::object();
  if (!o.graph.empty()) out["treewidth"] = treewidth_exact(load_graph(o.graph));
  if (!o.decomposition.empty()) {
    const auto file = load_decomposition(o.decomposition);
    if (auto bad = violations_of(file.decomposition); !bad.empty()) return invalid(bad);
    out["width"] = std::visit([](const auto& d) { return width(d); }, file.decomposition);
  }
  return ok(out);
}

inline Outcome co_treewidth(const Options& o) {
  return ok(Json{{"complementedTreewidth", complemented_treewidth(load_graph(o.graph))}});
}

inline Outcome layered_width_verb(const Options& o) {
  const Graph g = load_graph(o.graph);
  if (o.layering.empty() != o.decomposition.empty()) {
    throw Error(ErrorCode::InvalidArgument, "layered width needs both a layering and a decomposition, or neither");
  }
  if (o.layering.empty()) return ok(Json{{"layeredTreewidth", layered_treewidth_exact(g)}});
  const Layering l = io::layering_from_json(io::read_file(o.layering));
  const auto file = load_decomposition(o.decomposition);
  if (auto bad = violations_of(file.decomposition); !bad.empty()) return invalid(bad);
  const GraphDecomposition d = as_graph_valued(file.decomposition, true);
  const auto embedding = embedding_for(file, g);
  const std::size_t w = embedding ? layered_width(g, l, d, *embedding) : layered_width(g, l, d);
  return ok(Json{{"layeredWidth", w}});
}

inline Outcome h_width_verb(const Options& o) {
  const auto file = load_decomposition(o.decomposition);
  if (auto bad = violations_of(file.decomposition); !bad.empty()) return invalid(bad);
  const GraphDecomposition d = as_graph_valued(file.decomposition, o.complete);
  return ok(Json{{"hWidth", h_width(d, graph_property(o.property))}, {"property", o.property}});
}

struct SolveRun {
  long long value;
  Graph ambient;
  Subobject witness;
  SolveStats stats;
  std::size_t width;
};

inline SolveRun solve_once(const Graph* g, const io::DecompositionFile& file, const Options& o) {
  const PropertyPredicate p = predicate(o.property);
  const Objective f = objective(o.objective);
  const GraphDecomposition d = as_graph_valued(file.decomposition, o.complete);
  const SolveOptions options{o.root, std::max(1U, o.threads), o.prune, std::nullopt};
  const bool single_path = o.property == "paths";
  if (g) {
    const auto keep = [&](const Graph& ambient, const Subobject& s) { return !single_path || is_path_subobject(ambient, s); };
    auto r = solve_problem(*g, d, embedding_for(file, *g), p, f, options, keep);
    return {r.value, *g, std::move(r.witness), std::move(r.stats), width(d)};
  }
  auto r = solve_on_decomposition(d, p, f, options);
  const Graph& ambient = r.colimit.apex;
  const auto best = best_entry(r.table, f, [&](const Subobject& s) { return !single_path || is_path_subobject(ambient, s); });
  if (!best) throw Error(ErrorCode::InvalidArgument, "no table entry qualifies as an answer");
  return {best->value, ambient, best->witness, std::move(r.stats), width(d)};
}

inline Outcome solve_verb(const Options& o) {
  const auto file = load_decomposition(o.decomposition);
  if (auto bad = violations_of(file.decomposition); !bad.empty()) return invalid(bad);
  std::optional<Graph> g;
  if (!o.graph.empty()) g = load_graph(o.graph);
  const SolveRun r = solve_once(g ? &*g : nullptr, file, o);
  return ok(io::solver_result_json(r.value, r.ambient, r.witness, r.stats));
}

inline std::string bench_row(const std::string& id, const SolveRun& r, const std::string& property, double ms) {
  std::ostringstream row;
  row << id << ',' << r.ambient.vertex_count() << ',' << r.ambient.edge_count() << ',' << r.width << ',' << property
      << ',' << r.value << ',' << r.stats.pair_compositions << ',' << std::fixed << std::setprecision(3) << ms << '\n';
  return row.str();
}

inline Outcome bench(const Options& o) {
  std::string csv = std::string(kBenchHeader) + "\n";
  const auto timed = [&](const std::string& id, const Graph& g, const io::DecompositionFile& file, const std::string& property) {
    Options run = o;
    run.property = property;
    const auto start = std::chrono::steady_clock::now();
    const SolveRun r = solve_once(&g, file, run);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    csv += bench_row(id, r, property, ms);
  };

  if (!o.config.empty()) {
    const Json config = io::read_file(o.config);
    const auto base = std::filesystem::path(o.config).parent_path();
    std::vector<std::string> predicates{"paths", "bipartite", "planar"};
    if (config.contains("predicates")) predicates = config.at("predicates").get<std::vector<std::string>>();
    for (const auto& name : predicates) (void)predicate(name);
    const Json instances = config.value("instances", Json::array());
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const Json& inst = instances[i];
      const std::string id = inst.value("id", "instance-" + std::to_string(i));
      const Graph g = load_graph((base / inst.at("graph").get<std::string>()).string());
      const auto file = load_decomposition((base / inst.at("decomposition").get<std::string>()).string());
      if (auto bad = violations_of(file.decomposition); !bad.empty()) return invalid(bad);
      for (const auto& name : predicates) timed(id, g, file, name);
    }
  }
  gen::Rng rng(o.seed);
  for (std::size_t i = 0; i < o.generate; ++i) {
    auto t = gen::random_tree_decomposition(rng, 4, 4);
    io::DecompositionFile file{t.decomposition, std::nullopt};
    std::vector<std::vector<Vertex>> maps;
    for (const auto& e : t.embedding) maps.emplace_back(e.values().begin(), e.values().end());
    file.embedding = std::move(maps);
    for (const char* name : {"paths", "bipartite", "planar"}) timed("generated-" + std::to_string(i), t.graph, file, name);
  }
  return {kExitOk, csv};
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structured decompositions: colimits, width measures and compositional solvers", "sdkit"};
  app.require_subcommand(1);
  Options o;

  const auto graph_opt = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("-g,--graph", o.graph, "graph JSON file");
    if (required) opt->required();
  };
  const auto decomposition_opt = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("-d,--decomposition", o.decomposition, "decomposition JSON file");
    if (required) opt->required();
  };
  const auto output_opt = [&](CLI::App* sub) { sub->add_option("-o,--output", o.output, "write the result here"); };
  const auto property_opt = [&](CLI::App* sub) {
    sub->add_option("--property", o.property, "paths | bipartite | planar")
        ->check(CLI::IsMember({"paths", "bipartite", "planar"}));
  };

  std::vector<std::pair<CLI::App*, Outcome (*)(const Options&)>> verbs;
  const auto verb = [&](const char* name, const char* help, Outcome (*fn)(const Options&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    output_opt(sub);
    verbs.emplace_back(sub, fn);
    return sub;
  };

  decomposition_opt(verb("colim", "colimit of a decomposition", detail::colim), true);
  {
    auto* s = verb("check", "validate a decomposition (and check it against a graph)", detail::check);
    decomposition_opt(s, true);
    graph_opt(s, false);
  }
  decomposition_opt(verb("to-arrow", "present a finset decomposition as a graph morphism", detail::to_arrow_verb), true);
  verb("from-arrow", "rebuild a decomposition from a graph morphism", detail::from_arrow_verb)
      ->add_option("--arrow", o.arrow, "arrow JSON file")
      ->required();
  {
    auto* s = verb("restrict", "restrict a decomposition along a mono into its colimit", detail::restrict_verb);
    decomposition_opt(s, true);
    graph_opt(s, true);
    s->add_option("--map", o.map, "vertex map of the mono (defaults to the identity numbering)");
    s->add_flag("--complete", o.complete, "complete a finset decomposition to complete graphs first");
  }
  {
    auto* s = verb("chordal", "chordality test, or the chordal graph a decomposition builds", detail::chordal_verb);
    graph_opt(s, false);
    decomposition_opt(s, false);
    s->require_option(1);
  }
  graph_opt(verb("clique-tree", "clique-tree decomposition of a chordal graph", detail::clique_tree), true);
  {
    auto* s = verb("treewidth", "exact tree-width of a graph and/or width of a decomposition", detail::treewidth_verb);
    graph_opt(s, false);
    decomposition_opt(s, false);
  }
  graph_opt(verb("co-treewidth", "tree-width of the complement", detail::co_treewidth), true);
  {
    auto* s = verb("layered-width", "layered width of a (layering, decomposition) pair or exact layered tree-width",
                   detail::layered_width_verb);
    graph_opt(s, true);
    decomposition_opt(s, false);
    s->add_option("-l,--layering", o.layering, "layering JSON file");
  }
  {
    auto* s = verb("h-width", "largest bag outside a subgraph-closed class", detail::h_width_verb);
    decomposition_opt(s, true);
    property_opt(s);
    s->add_flag("--complete", o.complete, "complete a finset decomposition to complete graphs first");
  }
  const auto solver_opts = [&](CLI::App* s) {
    property_opt(s);
    s->add_option("--objective", o.objective, "max-edges | max-vertices | min-edges")
        ->check(CLI::IsMember({"max-edges", "max-vertices", "min-edges", "min-vertices"}));
    s->add_flag("--prune", o.prune, "experimental: keep one best entry per interface trace");
    s->add_option("--threads", o.threads, "worker threads for composition")->check(CLI::Range(1U, 256U));
    s->add_flag("--complete", o.complete, "complete a finset decomposition to complete graphs first");
  };
  {
    auto* s = verb("solve", "optimize over property-closed subgraphs along a tree-shaped decomposition", detail::solve_verb);
    graph_opt(s, false);
    decomposition_opt(s, true);
    solver_opts(s);
    s->add_option("--root", o.root, "shape vertex to root the fold at");
  }
  {
    auto* s = verb("bench", "CSV benchmark over configured or generated instances", detail::bench);
    s->add_option("-c,--config", o.config, "bench config JSON file");
    s->add_option("--generate", o.generate, "number of random instances to add");
    s->add_option("--seed", o.seed, "seed for generated instances");
    solver_opts(s);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  for (const auto& [sub, fn] : verbs) {
    if (!sub->parsed()) continue;
    try {
      const Outcome result = fn(o);
      if (o.output.empty()) {
        out << result.text;
      } else {
        std::ofstream file(o.output);
        if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + o.output);
        file << result.text;
      }
      return result.code;
    } catch (const Error& e) {
      err << Json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump() << "\n";
      return e.code() == ErrorCode::TooLarge ? kExitTooLarge : kExitInvalid;
    } catch (const std::exception& e) {
      err << Json{{"error", "InvalidArgument"}, {"message", e.what()}}.dump() << "\n";
      return kExitInvalid;
    }
  }
  return kExitInvalid;
}

}  // namespace sdkit::cli
