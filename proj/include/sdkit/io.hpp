#pragma once

// JSON encodings of graphs, maps, decompositions, layerings, subobjects and
// solver results (nlohmann::json, key order preserved on output).

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sdkit/solver.hpp"

namespace sdkit::io {

using Json = nlohmann::ordered_json;

inline Json parse_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, origin + ": " + e.what());
  }
}

inline Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str(), path);
}

namespace detail {

[[noreturn]] inline void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where + ": missing \"" + key + "\"");
  return j.at(key);
}

inline std::size_t natural(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(where + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

inline std::vector<Vertex> naturals(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array of non-negative integers");
  std::vector<Vertex> out;
  for (const auto& x : j) out.push_back(natural(x, where));
  return out;
}

inline Edge pair(const Json& j, const std::string& where) {
  const auto xs = naturals(j, where);
  if (xs.size() != 2) fail(where + ": an edge is a pair [u, v]");
  return {xs[0], xs[1]};
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return Json{{"vertices", g.vertex_count()}, {"edges", std::move(edges)}};
}

inline Graph graph_from_json(const Json& j, const std::string& where = "graph") {
  const std::size_t n = detail::natural(detail::field(j, "vertices", where), where + ".vertices");
  const Json& es = detail::field(j, "edges", where);
  if (!es.is_array()) detail::fail(where + ".edges: expected an array");
  std::vector<Edge> edges;
  for (const auto& e : es) edges.push_back(detail::pair(e, where + ".edges"));
  return Graph(n, std::move(edges));
}

inline Json to_json(const SetFunction& f) {
  return Json{{"dom", f.dom_size()}, {"cod", f.cod_size()}, {"map", std::vector<Vertex>(f.values().begin(), f.values().end())}};
}

/// Accepts {"dom","cod","map"} (checked) or a bare array, whose codomain is `cod`.
inline SetFunction function_from_json(const Json& j, std::optional<std::size_t> cod, const std::string& where) {
  if (j.is_array()) {
    auto map = detail::naturals(j, where);
    const std::size_t n = map.size();
    return SetFunction::unchecked(n, cod.value_or(0), std::move(map));
  }
  const std::size_t dom = detail::natural(detail::field(j, "dom", where), where + ".dom");
  const std::size_t c = detail::natural(detail::field(j, "cod", where), where + ".cod");
  auto map = detail::naturals(detail::field(j, "map", where), where + ".map");
  return SetFunction::unchecked(dom, c, std::move(map));
}

// ---------------------------------------------------------------------------
// Decompositions

/// A decomposition file may also carry a bag -> graph labelling.
struct DecompositionFile {
  AnyDecomposition decomposition;
  std::optional<std::vector<std::vector<Vertex>>> embedding;
};

template <ValueCategory Cat>
Json object_to_json(const typename Cat::Object& x) {
  if constexpr (Cat::kind == ValueKind::FinSet) {
    return x.size();
  } else {
    return to_json(x);
  }
}

template <ValueCategory Cat>
Json to_json(const StructuredDecomposition<Cat>& d,
             const std::optional<std::vector<std::vector<Vertex>>>& embedding = std::nullopt) {
  Json bags = Json::array();
  for (const auto& b : d.bags()) bags.push_back(object_to_json<Cat>(b));
  Json adhesions = Json::array();
  for (const auto& a : d.adhesions()) {
    const auto& s = Cat::function(a.source_leg).values();
    const auto& t = Cat::function(a.target_leg).values();
    adhesions.push_back(Json{{"edge", {a.edge.first, a.edge.second}},
                             {"apex", object_to_json<Cat>(a.apex)},
                             {"legSource", std::vector<Vertex>(s.begin(), s.end())},
                             {"legTarget", std::vector<Vertex>(t.begin(), t.end())}});
  }
  Json out{{"valueKind", std::string(to_string(Cat::kind))},
           {"shape", to_json(d.shape())},
           {"bags", std::move(bags)},
           {"adhesions", std::move(adhesions)}};
  if (!d.labels().empty()) out["labels"] = d.labels();
  if (embedding) out["embedding"] = *embedding;
  return out;
}

inline Json to_json(const AnyDecomposition& d) {
  return std::visit([](const auto& x) { return to_json(x); }, d);
}

namespace detail {

template <ValueCategory Cat>
typename Cat::Object object_from_json(const Json& j, const std::string& where) {
  if constexpr (Cat::kind == ValueKind::FinSet) {
    return FinSet(natural(j, where));
  } else {
    return graph_from_json(j, where);
  }
}

/// Legs are kept unchecked so that `validate` can report bad entries as data.
template <ValueCategory Cat>
StructuredDecomposition<Cat> decomposition_from_json(const Json& j) {
  Graph shape = graph_from_json(field(j, "shape", "decomposition"), "decomposition.shape");
  const Json& bs = field(j, "bags", "decomposition");
  if (!bs.is_array()) fail("decomposition.bags: expected an array");
  std::vector<typename Cat::Object> bags;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    bags.push_back(object_from_json<Cat>(bs[i], "decomposition.bags[" + std::to_string(i) + "]"));
  }
  const Json& as = field(j, "adhesions", "decomposition");
  if (!as.is_array()) fail("decomposition.adhesions: expected an array");
  std::vector<Adhesion<Cat>> adhesions;
  for (std::size_t i = 0; i < as.size(); ++i) {
    const std::string where = "decomposition.adhesions[" + std::to_string(i) + "]";
    const Edge raw = pair(field(as[i], "edge", where), where + ".edge");
    const Edge e = make_edge(raw.first, raw.second);
    auto apex = object_from_json<Cat>(field(as[i], "apex", where), where + ".apex");
    const auto bag_size = [&](Vertex v) -> std::optional<std::size_t> {
      if (v >= bags.size()) return std::nullopt;
      return Cat::size(bags[v]);
    };
    auto src = function_from_json(field(as[i], "legSource", where), bag_size(e.first).value_or(0), where + ".legSource");
    auto tgt = function_from_json(field(as[i], "legTarget", where), bag_size(e.second).value_or(0), where + ".legTarget");
    if constexpr (Cat::kind == ValueKind::FinSet) {
      adhesions.push_back({e, apex, std::move(src), std::move(tgt)});
    } else {
      const Graph empty;
      const Graph& bs_ = e.first < bags.size() ? bags[e.first] : empty;
      const Graph& bt_ = e.second < bags.size() ? bags[e.second] : empty;
      adhesions.push_back({e, apex, GraphMorphism::unchecked(apex, bs_, std::move(src)),
                           GraphMorphism::unchecked(apex, bt_, std::move(tgt))});
    }
  }
  StructuredDecomposition<Cat> d(std::move(shape), std::move(bags), std::move(adhesions));
  if constexpr (Cat::kind == ValueKind::FinSet) {
    if (j.contains("labels")) {
      try {
        d.set_labels(j.at("labels").get<std::vector<std::vector<std::string>>>());
      } catch (const Json::exception&) {
        fail("decomposition.labels: expected an array of string arrays");
      }
    }
  }
  return d;
}

}  // namespace detail

inline DecompositionFile decomposition_from_json(const Json& j) {
  const Json& kind = detail::field(j, "valueKind", "decomposition");
  DecompositionFile out;
  if (kind == "finset") {
    out.decomposition = detail::decomposition_from_json<FinSetCategory>(j);
  } else if (kind == "graph") {
    out.decomposition = detail::decomposition_from_json<GraphCategory>(j);
  } else {
    detail::fail("decomposition.valueKind: expected \"finset\" or \"graph\"");
  }
  if (j.contains("embedding")) {
    const Json& e = j.at("embedding");
    if (!e.is_array()) detail::fail("decomposition.embedding: expected an array per bag");
    std::vector<std::vector<Vertex>> maps;
    for (const auto& m : e) maps.push_back(detail::naturals(m, "decomposition.embedding"));
    out.embedding = std::move(maps);
  }
  return out;
}

/// Bag maps into a graph with `n` vertices.
inline BagEmbedding embedding_into(const std::vector<std::vector<Vertex>>& maps, std::size_t n) {
  BagEmbedding out;
  for (const auto& m : maps) out.push_back(SetFunction::unchecked(m.size(), n, m));
  return out;
}

// ---------------------------------------------------------------------------

inline Json to_json(const Layering& l) { return Json{{"layers", l.layers}}; }

inline Layering layering_from_json(const Json& j) {
  const Json& ls = detail::field(j, "layers", "layering");
  if (!ls.is_array()) detail::fail("layering.layers: expected an array");
  Layering out;
  for (const auto& l : ls) out.layers.push_back(detail::naturals(l, "layering.layers"));
  return out;
}

inline Json to_json(const Graph& ambient, const Subobject& s) {
  Json edges = Json::array();
  for (auto [u, v] : edge_list(ambient, s)) edges.push_back({u, v});
  return Json{{"vertices", s.vertices.elements()}, {"edges", std::move(edges)}};
}

inline Subobject subobject_from_json(const Graph& ambient, const Json& j) {
  const auto vertices = detail::naturals(detail::field(j, "vertices", "subobject"), "subobject.vertices");
  const Json& es = detail::field(j, "edges", "subobject");
  if (!es.is_array()) detail::fail("subobject.edges: expected an array");
  std::vector<Edge> edges;
  for (const auto& e : es) edges.push_back(detail::pair(e, "subobject.edges"));
  return make_subobject(ambient, vertices, edges);
}

inline Json to_json(const ArrowPresentation& a) {
  return Json{{"total", to_json(a.total)}, {"base", to_json(a.base)}, {"projection", to_json(a.projection.vertex_map())}};
}

inline ArrowPresentation arrow_from_json(const Json& j) {
  Graph total = graph_from_json(detail::field(j, "total", "arrow"), "arrow.total");
  Graph base = graph_from_json(detail::field(j, "base", "arrow"), "arrow.base");
  SetFunction p = function_from_json(detail::field(j, "projection", "arrow"), base.vertex_count(), "arrow.projection");
  if (!p.well_formed() || p.dom_size() != total.vertex_count() || p.cod_size() != base.vertex_count()) {
    throw Error(ErrorCode::InvalidMorphism, "arrow.projection does not map the total graph to the base");
  }
  GraphMorphism projection(total, base, std::move(p));
  return {std::move(total), std::move(base), std::move(projection)};
}

inline Json to_json(const SolveStats& s) {
  Json steps = Json::array();
  for (const auto& st : s.steps) {
    steps.push_back(Json{{"parent", st.parent},
                         {"child", st.child},
                         {"left", st.left_size},
                         {"right", st.right_size},
                         {"result", st.result_size}});
  }
  return Json{{"pairCompositions", s.pair_compositions}, {"tableSizes", s.table_sizes}, {"steps", std::move(steps)}};
}

inline Json solver_result_json(long long value, const Graph& ambient, const Subobject& witness, const SolveStats& s) {
  return Json{{"value", value}, {"witness", to_json(ambient, witness)}, {"stats", to_json(s)}};
}

}  // namespace sdkit::io
