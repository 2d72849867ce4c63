#pragma once

// Tables of P-subobjects: brute-force enumeration, composition along a monic
// span, and the fold of that composition over a tree-shaped decomposition.

#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "sdkit/predicates.hpp"
#include "sdkit/width.hpp"

namespace sdkit {

inline constexpr std::size_t kDefaultBruteForceCap = 10;

/// Vertex cap for brute-force enumeration; SDKIT_MAX_BRUTE overrides it.
inline std::size_t brute_force_cap() {
  if (const char* env = std::getenv("SDKIT_MAX_BRUTE")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 30) return v;
  }
  return kDefaultBruteForceCap;
}

/// Every (vertex set, edge set) pair satisfying P. Edge sets are grown by a
/// depth-first search that stops as soon as P fails, which is sound because
/// P is closed under subgraphs.
inline SubPTable enumerate_subp_bruteforce(const Graph& g, const PropertyPredicate& p,
                                           std::optional<std::size_t> cap = std::nullopt) {
  const std::size_t n = g.vertex_count();
  const std::size_t limit = cap.value_or(brute_force_cap());
  if (n > limit) {
    throw Error(ErrorCode::TooLarge, "brute-force enumeration is limited to " + std::to_string(limit) + " vertices");
  }
  SubPTable table{g, p.name, {}, 0};
  std::vector<std::size_t> local_edges;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Subobject s = Subobject::empty(g);
    for (Vertex v = 0; v < n; ++v)
      if ((mask >> v) & 1U) s.vertices.set(v);
    if (!p(g, s)) continue;
    local_edges.clear();
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      const auto [u, v] = g.edges()[i];
      if (((mask >> u) & 1U) && ((mask >> v) & 1U)) local_edges.push_back(i);
    }
    const auto grow = [&](auto&& self, std::size_t k) -> void {
      if (k == local_edges.size()) {
        table.entries.push_back(s);
        return;
      }
      self(self, k + 1);
      s.edges.set(local_edges[k]);
      if (p(g, s)) self(self, k + 1);
      s.edges.reset(local_edges[k]);
    };
    grow(grow, 0);
  }
  table.normalize();
  return table;
}

struct ComposeOptions {
  unsigned threads = 1;
};

struct Composition {
  Cospan<GraphCategory> pushout;  // apex is L +_M R
  SubPTable table;
};

/// The property-closed subobjects of the pushout, from those of both sides. Each pair (A, B) is glued
/// along the elements they share over the interface and kept when the union
/// satisfies P; every entry of either side is carried over as well.
inline Composition compose_detailed(const Span<GraphCategory>& span, const SubPTable& sub_left,
                                    const SubPTable& sub_right, const PropertyPredicate& p,
                                    ComposeOptions options = {}) {
  Composition out{pushout(span), {}};
  if (!(sub_left.ambient == span.left.cod()) || !(sub_right.ambient == span.right.cod())) {
    throw Error(ErrorCode::InvalidArgument, "tables must live over the codomains of the span legs");
  }
  const Graph& glued_ambient = out.pushout.apex;
  const SubobjectTransport into_left(span.left), into_right(span.right);
  const SubobjectTransport from_left(out.pushout.left), from_right(out.pushout.right);

  struct Prepared {
    Subobject image;
    Bits trace;  // vertices over the interface
    std::size_t vertex_count;
  };
  const auto prepare = [&](const SubPTable& t, const SubobjectTransport& interface, const SubobjectTransport& leg) {
    std::vector<Prepared> out_entries;
    out_entries.reserve(t.entries.size());
    for (const auto& s : t.entries) {
      out_entries.push_back({leg(s), interface.pull(s, span.apex).vertices, s.vertices.count()});
    }
    return out_entries;
  };
  const auto left = prepare(sub_left, into_left, from_left);
  const auto right = prepare(sub_right, into_right, from_right);

  const auto work = [&](std::size_t begin, std::size_t end, std::vector<Subobject>& found) {
    for (std::size_t i = begin; i < end; ++i) {
      for (const auto& b : right) {
        const auto& a = left[i];
        Subobject glued{a.image.vertices | b.image.vertices, a.image.edges | b.image.edges};
        // The locating map of the glued object is injective on vertices.
        const std::size_t shared = (a.trace & b.trace).count();
        if (glued.vertices.count() != a.vertex_count + b.vertex_count - shared) {
          throw std::logic_error("glued subobject does not embed in the pushout");
        }
        if (p(glued_ambient, glued)) found.push_back(std::move(glued));
      }
    }
  };

  std::vector<Subobject> entries;
  const unsigned threads = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(left.size())));
  if (threads <= 1) {
    work(0, left.size(), entries);
  } else {
    std::vector<std::vector<Subobject>> parts(threads);
    std::vector<std::thread> pool;
    const std::size_t chunk = (left.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(left.size(), t * chunk), end = std::min(left.size(), begin + chunk);
      pool.emplace_back([&, t, begin, end] { work(begin, end, parts[t]); });
    }
    for (auto& th : pool) th.join();
    for (auto& part : parts) entries.insert(entries.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  for (const auto& a : left) entries.push_back(a.image);
  for (const auto& b : right) entries.push_back(b.image);

  out.table = SubPTable{glued_ambient, p.name, std::move(entries), sub_left.size() * sub_right.size()};
  out.table.normalize();
  return out;
}

inline SubPTable compose(const Span<GraphCategory>& span, const SubPTable& sub_left, const SubPTable& sub_right,
                         const PropertyPredicate& p, ComposeOptions options = {}) {
  return compose_detailed(span, sub_left, sub_right, p, options).table;
}

struct Optimum {
  Subobject witness;
  long long value = 0;
};

/// Best entry under f among those accepted by `keep`.
template <class Filter>
std::optional<Optimum> best_entry(const SubPTable& table, const Objective& f, Filter&& keep) {
  const Subobject* best = nullptr;
  for (const auto& s : table.entries) {
    if (!keep(s)) continue;
    if (!best || f.better(s, *best)) best = &s;
  }
  if (!best) return std::nullopt;
  return Optimum{*best, f.weight(*best)};
}

inline std::optional<Optimum> best_entry(const SubPTable& table, const Objective& f) {
  return best_entry(table, f, [](const Subobject&) { return true; });
}

inline std::optional<Optimum> compose_optimize(const Span<GraphCategory>& span, const SubPTable& sub_left,
                                               const SubPTable& sub_right, const PropertyPredicate& p,
                                               const Objective& f, ComposeOptions options = {}) {
  return best_entry(compose(span, sub_left, sub_right, p, options), f);
}

// ---------------------------------------------------------------------------
// Fold over a tree-shaped decomposition.

struct SolveOptions {
  Vertex root = 0;
  unsigned threads = 1;
  bool prune = false;  // experimental: keep one best entry per interface trace
  std::optional<std::size_t> brute_force_cap;
};

struct FoldStep {
  Vertex parent;
  Vertex child;
  std::size_t left_size;
  std::size_t right_size;
  std::size_t result_size;
};

struct SolveStats {
  std::size_t pair_compositions = 0;
  std::vector<std::size_t> table_sizes;  // brute-force table per bag
  std::vector<FoldStep> steps;
};

struct SolveResult {
  Cocone<GraphCategory> colimit;
  SubPTable table;  // over colimit.apex
  std::optional<Optimum> best;
  SolveStats stats;
};

namespace detail {

struct Partial {
  Graph glued;
  SubPTable table;
  std::vector<std::pair<Vertex, SetFunction>> bag_maps;  // bag -> glued
};

inline const SetFunction& bag_map(const Partial& part, Vertex t) {
  for (const auto& [bag, map] : part.bag_maps)
    if (bag == t) return map;
  throw std::logic_error("bag is not part of this partial colimit");
}

/// Keeps, for each trace on the interface, only the entry f prefers.
inline void prune_by_trace(SubPTable& table, const GraphMorphism& interface, const Objective& f) {
  const SubobjectTransport transport(interface);
  std::map<Subobject, Subobject> best;
  for (auto& s : table.entries) {
    Subobject trace = transport.pull(s, interface.dom());
    auto it = best.find(trace);
    if (it == best.end()) {
      best.emplace(std::move(trace), std::move(s));
    } else if (f.better(s, it->second)) {
      it->second = std::move(s);
    }
  }
  table.entries.clear();
  for (auto& [trace, s] : best) table.entries.push_back(std::move(s));
  table.normalize();
}

class Fold {
 public:
  Fold(const GraphDecomposition& d, const PropertyPredicate& p, const Objective& f, const SolveOptions& o)
      : d_(d), p_(p), f_(f), o_(o) {
    stats_.table_sizes.assign(d.bags().size(), 0);
  }

  Partial run(Vertex v, std::optional<Vertex> parent) {
    Partial part{d_.bag(v), enumerate_subp_bruteforce(d_.bag(v), p_, o_.brute_force_cap), {}};
    stats_.table_sizes[v] = part.table.size();
    part.bag_maps.emplace_back(v, SetFunction::identity(d_.bag(v).vertex_count()));
    for (Vertex c : d_.shape().neighbors(v)) {
      if (parent && c == *parent) continue;
      Partial child = run(c, v);
      const auto& a = d_.adhesion(v, c);
      const auto into = [&](const Partial& q, Vertex at) {
        return GraphMorphism::unchecked(a.apex, q.glued,
                                        compose(bag_map(q, at), d_.leg_into(v, c, at).vertex_map()));
      };
      const Span<GraphCategory> span{a.apex, into(part, v), into(child, c)};
      auto step = compose_detailed(span, part.table, child.table, p_, {o_.threads});
      stats_.pair_compositions += step.table.op_counter;
      stats_.steps.push_back({v, c, part.table.size(), child.table.size(), step.table.size()});
      for (auto& [t, map] : part.bag_maps) map = compose(step.pushout.left.vertex_map(), map);
      for (auto& [t, map] : child.bag_maps) part.bag_maps.emplace_back(t, compose(step.pushout.right.vertex_map(), map));
      part.glued = step.pushout.apex;
      part.table = std::move(step.table);
    }
    if (o_.prune && parent) {
      const auto& a = d_.adhesion(v, *parent);
      const GraphMorphism interface = GraphMorphism::unchecked(
          a.apex, part.glued, compose(bag_map(part, v), d_.leg_into(v, *parent, v).vertex_map()));
      prune_by_trace(part.table, interface, f_);
    }
    return part;
  }

  SolveStats& stats() { return stats_; }

 private:
  const GraphDecomposition& d_;
  const PropertyPredicate& p_;
  const Objective& f_;
  const SolveOptions& o_;
  SolveStats stats_;
};

}  // namespace detail

/// The property-closed subobjects of colim(d), assembled bag by bag in post-order from `options.root`
/// and re-expressed over the canonical colimit at the end.
inline SolveResult solve_on_decomposition(const GraphDecomposition& d, const PropertyPredicate& p,
                                          const Objective& f, SolveOptions options = {}) {
  if (auto bad = validate(d); !bad.empty()) throw Error(ErrorCode::IllFormedDiagram, bad.front());
  if (!is_tree(d.shape())) throw Error(ErrorCode::NonTreeShape, "the solver folds over tree-shaped decompositions");
  if (!is_tame(d)) throw Error(ErrorCode::NotTame, "the solver needs monic adhesion legs");
  if (options.root >= d.bags().size()) throw Error(ErrorCode::InvalidArgument, "root is not a shape vertex");
  const std::size_t cap = options.brute_force_cap.value_or(brute_force_cap());
  options.brute_force_cap = cap;
  for (const auto& bag : d.bags()) {
    if (bag.vertex_count() > cap) {
      throw Error(ErrorCode::TooLarge, "bag exceeds the brute-force cap of " + std::to_string(cap) + " vertices");
    }
  }

  detail::Fold fold(d, p, f, options);
  detail::Partial part = fold.run(options.root, std::nullopt);

  SolveResult result{evaluate_colimit(d), {}, std::nullopt, std::move(fold.stats())};
  std::vector<SetFunction> bag_maps(d.bags().size());
  for (auto& [t, map] : part.bag_maps) bag_maps[t] = map;
  // The partial colimit and the canonical one differ only by renumbering.
  std::vector<SetFunction> legs;
  for (const auto& leg : result.colimit.legs) legs.push_back(leg.vertex_map());
  std::vector<Vertex> to_canonical(part.glued.vertex_count(), static_cast<Vertex>(-1));
  for (Vertex t = 0; t < d.bags().size(); ++t)
    for (Vertex b = 0; b < d.bag(t).vertex_count(); ++b) to_canonical[bag_maps[t](b)] = legs[t](b);
  const GraphMorphism iso(part.glued, result.colimit.apex,
                          SetFunction(part.glued.vertex_count(), result.colimit.apex.vertex_count(), to_canonical));
  const SubobjectTransport transport(iso);
  result.table = SubPTable{result.colimit.apex, p.name, {}, result.stats.pair_compositions};
  result.table.entries.reserve(part.table.size());
  for (const auto& s : part.table.entries) result.table.entries.push_back(transport(s));
  result.table.normalize();
  result.best = best_entry(result.table, f);
  return result;
}

// ---------------------------------------------------------------------------
// Problems on a graph with a supplied tree decomposition.

struct ProblemResult {
  long long value = 0;
  Subobject witness;  // over the input graph
  SubPTable table;    // over the input graph
  SolveStats stats;
};

/// A single path (or a single vertex, or nothing).
inline bool is_path_subobject(const Graph& ambient, const Subobject& s) {
  const Graph g = as_graph(ambient, s);
  if (g.vertex_count() <= 1) return true;
  return g.edge_count() + 1 == g.vertex_count() && is_linear_forest(g);
}

/// Bags replaced by the subgraphs of g they induce, and adhesions by the
/// induced intersections of neighbouring bags; the colimit is then g itself.
inline GraphDecomposition induced_decomposition(const Graph& g, const GraphDecomposition& d,
                                                const BagEmbedding& embedding) {
  std::vector<std::vector<Vertex>> images;
  std::vector<Graph> bags;
  for (Vertex t = 0; t < d.bags().size(); ++t) {
    const auto values = embedding[t].values();
    images.emplace_back(values.begin(), values.end());
    bags.push_back(induced_subgraph(g, images.back()).dom());
  }
  const auto position = [&](Vertex t, Vertex x) {
    return static_cast<Vertex>(std::find(images[t].begin(), images[t].end(), x) - images[t].begin());
  };
  std::vector<Adhesion<GraphCategory>> adhesions;
  for (auto [u, v] : d.shape().edges()) {
    std::vector<Vertex> common;
    for (Vertex x : images[u])
      if (std::find(images[v].begin(), images[v].end(), x) != images[v].end()) common.push_back(x);
    std::sort(common.begin(), common.end());
    const Graph apex = induced_subgraph(g, common).dom();
    std::vector<Vertex> into_u, into_v;
    for (Vertex x : common) {
      into_u.push_back(position(u, x));
      into_v.push_back(position(v, x));
    }
    adhesions.push_back({{u, v}, apex,
                         GraphMorphism(apex, bags[u], SetFunction(common.size(), bags[u].vertex_count(), into_u)),
                         GraphMorphism(apex, bags[v], SetFunction(common.size(), bags[v].vertex_count(), into_v))});
  }
  return GraphDecomposition(d.shape(), std::move(bags), std::move(adhesions));
}

template <class Filter>
ProblemResult solve_problem(const Graph& g, const GraphDecomposition& d, const std::optional<BagEmbedding>& labeling,
                            const PropertyPredicate& p, const Objective& f, const SolveOptions& options,
                            Filter&& keep) {
  std::optional<BagEmbedding> embedding = labeling ? labeling : colimit_embedding(g, d);
  if (!embedding) throw Error(ErrorCode::NotATreeDecomposition, "colimit vertex count differs from the graph");
  if (auto bad = tree_decomposition_violations(g, d, *embedding); !bad.empty()) {
    throw Error(ErrorCode::NotATreeDecomposition, bad.front());
  }
  const GraphDecomposition induced = induced_decomposition(g, d, *embedding);
  SolveResult solved = solve_on_decomposition(induced, p, f, options);
  const auto to_g = mediating_map(induced, solved.colimit, *embedding, g.vertex_count());
  if (!to_g) throw std::logic_error("induced decomposition does not glue back to the graph");
  const SubobjectTransport transport(GraphMorphism(solved.colimit.apex, g, *to_g));

  ProblemResult out;
  out.table = SubPTable{g, p.name, {}, solved.table.op_counter};
  for (const auto& s : solved.table.entries) out.table.entries.push_back(transport(s));
  out.table.normalize();
  out.stats = std::move(solved.stats);
  const auto best = best_entry(out.table, f, [&](const Subobject& s) { return keep(g, s); });
  if (!best) throw Error(ErrorCode::InvalidArgument, "no table entry qualifies as an answer");
  out.value = best->value;
  out.witness = best->witness;
  return out;
}

inline ProblemResult longest_path(const Graph& g, const GraphDecomposition& d,
                                  const std::optional<BagEmbedding>& labeling = std::nullopt,
                                  const SolveOptions& options = {}) {
  return solve_problem(g, d, labeling, predicate_paths(), objective_max_edges(), options, is_path_subobject);
}

inline ProblemResult max_bipartite_subgraph(const Graph& g, const GraphDecomposition& d,
                                            const std::optional<BagEmbedding>& labeling = std::nullopt,
                                            const SolveOptions& options = {}) {
  return solve_problem(g, d, labeling, predicate_bipartite(), objective_max_edges(), options,
                       [](const Graph&, const Subobject&) { return true; });
}

inline ProblemResult max_planar_subgraph(const Graph& g, const GraphDecomposition& d,
                                         const std::optional<BagEmbedding>& labeling = std::nullopt,
                                         const SolveOptions& options = {}) {
  return solve_problem(g, d, labeling, predicate_planar(), objective_max_edges(), options,
                       [](const Graph&, const Subobject&) { return true; });
}

}  // namespace sdkit
