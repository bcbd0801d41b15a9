#pragma once

// Explicit truncations of the model tree unfolded from a germ, the positive
// subtree, the null forest, and the two germ-level end decisions.

#include "germ.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace modelspace {

struct TreeNode {
  std::size_t id = 0;
  std::size_t tier = 0;
  std::optional<std::size_t> parent;
  std::size_t germ_vertex = 0;
  std::optional<BigInt> label;  // label of the edge to the parent; none at the root
  bool positive = true;
  std::vector<std::size_t> children;
  std::size_t source = 0;  // id of the corresponding node in the tree this was derived from
};

/// Finite rooted labeled tree Gamma_d. Node ids are breadth-first indices
/// into `nodes`; children keep germ edge declaration order.
struct TruncatedTree {
  std::size_t depth = 0;
  std::vector<std::string> names;  // germ vertex names, indexed by TreeNode::germ_vertex
  std::vector<TreeNode> nodes;

  const TreeNode& root() const { return nodes.front(); }
  const TreeNode& node(std::size_t id) const { return nodes.at(id); }
  std::size_t size() const { return nodes.size(); }
  const std::string& name_of(std::size_t id) const { return names.at(nodes.at(id).germ_vertex); }

  std::vector<std::size_t> tier(std::size_t i) const {
    std::vector<std::size_t> out;
    for (const auto& n : nodes)
      if (n.tier == i) out.push_back(n.id);
    return out;
  }

  std::size_t count_positive() const {
    std::size_t c = 0;
    for (const auto& n : nodes) c += n.positive ? 1 : 0;
    return c;
  }

  // Root-to-node labels, root excluded.
  std::vector<BigInt> path_labels(std::size_t id) const {
    std::vector<BigInt> out;
    for (auto cur = id; nodes.at(cur).parent; cur = *nodes[cur].parent) out.push_back(*nodes[cur].label);
    std::reverse(out.begin(), out.end());
    return out;
  }
};

struct NullComponent {
  std::size_t root = 0;    // null node whose parent is positive
  std::size_t attach = 0;  // that positive parent
  std::vector<std::size_t> nodes;  // all nodes of the component, root first, breadth-first
};

struct NullForest {
  std::vector<NullComponent> components;
  bool empty() const { return components.empty(); }
};

enum class Cardinality { Empty, Finite, CountablyInfinite, Uncountable };

inline const char* to_string(Cardinality c) {
  switch (c) {
    case Cardinality::Empty: return "Empty";
    case Cardinality::Finite: return "Finite";
    case Cardinality::CountablyInfinite: return "CountablyInfinite";
    case Cardinality::Uncountable: return "Uncountable";
  }
  return "?";
}

struct GammaPlusFiniteness {
  bool finite = false;
  std::optional<std::size_t> bound;  // longest positive path when finite
};

/// All germ paths of length <= d from the root, breadth-first. The germ is
/// not re-validated here; callers pass validated germs (or deliberate
/// restrictions of them).
inline TruncatedTree truncate(const GermGraph& g, std::size_t d, std::size_t ceiling = kDefaultCeiling) {
  TruncatedTree t;
  t.depth = d;
  t.names = g.vertices;
  auto adj = g.adjacency();
  t.nodes.push_back(TreeNode{0, 0, std::nullopt, g.root, std::nullopt, true, {}, 0});
  std::size_t tier_begin = 0;
  for (std::size_t tier = 1; tier <= d; ++tier) {
    const std::size_t tier_end = t.nodes.size();
    for (std::size_t p = tier_begin; p < tier_end; ++p) {
      for (auto e : adj[t.nodes[p].germ_vertex]) {
        if (t.nodes.size() >= ceiling)
          throw SizeError("truncation exceeds node ceiling " + std::to_string(ceiling) + " at tier " +
                          std::to_string(tier));
        const auto& ed = g.edges[e];
        TreeNode c;
        c.id = t.nodes.size();
        c.tier = tier;
        c.parent = p;
        c.germ_vertex = ed.dst;
        c.label = ed.label;
        c.positive = t.nodes[p].positive && !ed.null();
        c.source = c.id;
        t.nodes[p].children.push_back(c.id);
        t.nodes.push_back(std::move(c));
      }
    }
    tier_begin = tier_end;
  }
  return t;
}

namespace detail {

// Keeps nodes satisfying keep (closed under parent), renumbered breadth-first.
// `source` of each kept node records its id in `t`.
inline TruncatedTree restrict_tree(const TruncatedTree& t, const std::function<bool(const TreeNode&)>& keep) {
  TruncatedTree out;
  out.depth = t.depth;
  out.names = t.names;
  std::vector<std::optional<std::size_t>> remap(t.size());
  for (const auto& n : t.nodes) {  // ids are breadth-first, so parents come first
    if (!keep(n)) continue;
    if (n.parent && !remap[*n.parent]) continue;
    TreeNode c = n;
    c.id = out.nodes.size();
    c.source = n.id;
    c.children.clear();
    if (n.parent) {
      c.parent = *remap[*n.parent];
      out.nodes[*c.parent].children.push_back(c.id);
    }
    remap[n.id] = c.id;
    out.nodes.push_back(std::move(c));
  }
  return out;
}

}  // namespace detail

/// Restriction to positive nodes (the positive subtree). Depth and tiers kept.
inline TruncatedTree positive_part(const TruncatedTree& t) {
  return detail::restrict_tree(t, [](const TreeNode& n) { return n.positive; });
}

/// Restriction to tiers <= d (d <= t.depth).
inline TruncatedTree restrict_depth(const TruncatedTree& t, std::size_t d) {
  auto out = detail::restrict_tree(t, [d](const TreeNode& n) { return n.tier <= d; });
  out.depth = std::min(d, t.depth);
  return out;
}

inline NullForest null_forest(const TruncatedTree& t) {
  NullForest f;
  for (const auto& n : t.nodes) {
    if (n.positive || !n.parent || !t.nodes[*n.parent].positive) continue;
    NullComponent comp;
    comp.root = n.id;
    comp.attach = *n.parent;
    std::vector<std::size_t> queue{n.id};
    for (std::size_t k = 0; k < queue.size(); ++k)
      for (auto c : t.nodes[queue[k]].children) queue.push_back(c);
    comp.nodes = std::move(queue);
    f.components.push_back(std::move(comp));
  }
  return f;
}

/// The germ restricted to non-null edges (not necessarily leafless).
inline GermGraph positive_subgerm(const GermGraph& g) {
  GermGraph out = g;
  out.edges.clear();
  for (const auto& e : g.edges)
    if (!e.null()) out.edges.push_back(e);
  return out;
}

/// Gamma+ is finite iff the positive edges reachable from the root through
/// positive edges form an acyclic graph; bound is then the longest positive path.
inline GammaPlusFiniteness gamma_plus_is_finite(const GermGraph& g) {
  const auto n = g.vertices.size();
  const auto pg = positive_subgerm(g);
  const auto adj = pg.adjacency();
  const auto& pe = pg.edges;
  // 0 = unvisited, 1 = on stack, 2 = done
  std::vector<int> state(n, 0);
  std::vector<std::size_t> longest(n, 0);
  bool cyclic = false;
  std::function<void(std::size_t)> dfs = [&](std::size_t v) {
    state[v] = 1;
    for (auto e : adj[v]) {
      auto w = pe[e].dst;
      if (state[w] == 1) {
        cyclic = true;
      } else if (state[w] == 0) {
        dfs(w);
      }
      if (state[w] == 2) longest[v] = std::max(longest[v], longest[w] + 1);
    }
    state[v] = 2;
  };
  dfs(g.root);
  if (cyclic) return {false, std::nullopt};
  return {true, longest[g.root]};
}

namespace detail {

// Vertices in a null context: targets of reachable 0-edges and everything
// reachable from them.
inline std::vector<bool> null_context(const GermGraph& g) {
  auto reach = reachable(g);
  auto adj = g.adjacency();
  std::vector<bool> ctx(g.vertices.size(), false);
  std::vector<std::size_t> stack;
  for (const auto& e : g.edges)
    if (reach[e.src] && e.null() && !ctx[e.dst]) {
      ctx[e.dst] = true;
      stack.push_back(e.dst);
    }
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto e : adj[v])
      if (!ctx[g.edges[e].dst]) {
        ctx[g.edges[e].dst] = true;
        stack.push_back(g.edges[e].dst);
      }
  }
  return ctx;
}

}  // namespace detail

/// Cardinality class of the null ends of the unfolding. Uncountable exactly
/// when some strongly connected component of the null-context subgraph has
/// more edges than vertices, i.e. a vertex lies on two distinct null cycles.
inline Cardinality null_end_class(const GermGraph& g) {
  auto ctx = detail::null_context(g);
  const auto n = g.vertices.size();
  if (std::none_of(ctx.begin(), ctx.end(), [](bool b) { return b; })) return Cardinality::Empty;

  // Reachability closure among null-context vertices along edges inside the context.
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  auto adj = g.adjacency();
  for (std::size_t s = 0; s < n; ++s) {
    if (!ctx[s]) continue;
    std::vector<std::size_t> stack;
    for (auto e : adj[s]) {
      auto w = g.edges[e].dst;
      if (ctx[w] && !reach[s][w]) {
        reach[s][w] = true;
        stack.push_back(w);
      }
    }
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto e : adj[v]) {
        auto w = g.edges[e].dst;
        if (ctx[w] && !reach[s][w]) {
          reach[s][w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  std::vector<std::optional<std::size_t>> scc(n);
  std::vector<std::size_t> scc_vertices, scc_edges;
  for (std::size_t v = 0; v < n; ++v) {
    if (!ctx[v] || scc[v] || !reach[v][v]) continue;
    auto id = scc_vertices.size();
    scc_vertices.push_back(0);
    scc_edges.push_back(0);
    for (std::size_t w = 0; w < n; ++w)
      if (ctx[w] && (w == v || (reach[v][w] && reach[w][v]))) {
        scc[w] = id;
        ++scc_vertices[id];
      }
  }
  for (const auto& e : g.edges)
    if (ctx[e.src] && scc[e.src] && scc[e.src] == scc[e.dst]) ++scc_edges[*scc[e.src]];
  for (std::size_t k = 0; k < scc_vertices.size(); ++k)
    if (scc_edges[k] > scc_vertices[k]) return Cardinality::Uncountable;
  return Cardinality::CountablyInfinite;
}

/// Number of null ends visible in a truncation: null nodes at the deepest tier.
inline std::size_t null_leaf_count(const TruncatedTree& t) {
  std::size_t c = 0;
  for (const auto& n : t.nodes)
    if (!n.positive && n.tier == t.depth) ++c;
  return c;
}

}  // namespace modelspace
