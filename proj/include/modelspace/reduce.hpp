#pragma once

// Level-merging reductions of model trees: elementary [i,j]-reductions on
// explicit truncations, and the periodic schedule [0,m],[m,2m],... on germs.

#include "unfold.hpp"

namespace modelspace {

/// Deletes tiers i+1..j-1 and reattaches every tier-j node to its tier-i
/// ancestor with the product of the path labels. Deeper tiers move up by
/// j-i-1; positivity is recomputed from the new labels.
inline TruncatedTree elementary_reduction(const TruncatedTree& t, std::size_t i, std::size_t j) {
  if (!(i < j && j <= t.depth))
    throw DomainError("elementary_reduction: need 0 <= i < j <= depth (got i=" + std::to_string(i) +
                      ", j=" + std::to_string(j) + ", depth=" + std::to_string(t.depth) + ")");
  const std::size_t shift = j - i - 1;
  TruncatedTree out;
  out.depth = t.depth - shift;
  out.names = t.names;
  std::vector<std::optional<std::size_t>> remap(t.size());
  for (const auto& n : t.nodes) {
    if (n.tier > i && n.tier < j) continue;
    TreeNode c;
    c.id = out.nodes.size();
    c.tier = n.tier >= j ? n.tier - shift : n.tier;
    c.germ_vertex = n.germ_vertex;
    c.source = n.id;
    if (n.parent) {
      std::size_t anc = *n.parent;
      BigInt label = *n.label;
      if (n.tier == j)
        while (t.node(anc).tier > i) {
          label *= *t.node(anc).label;
          anc = *t.node(anc).parent;
        }
      c.parent = *remap[anc];
      c.label = label;
      c.positive = out.nodes[*c.parent].positive && label != 0;
      out.nodes[*c.parent].children.push_back(c.id);
    }
    remap[n.id] = c.id;
    out.nodes.push_back(std::move(c));
  }
  // Children must stay in breadth-first (lexicographic) order; new tier i+1
  // nodes were appended in old id order, which is already lexicographic.
  return out;
}

struct PoweredGerm {
  GermGraph germ;
  std::vector<std::vector<std::size_t>> paths;  // original edge indices per new edge
};

/// Germ whose edges are the length-m paths of g, labeled by label products.
/// Paths are listed per source vertex in lexicographic edge order. Vertices
/// no longer reachable from the root are dropped.
inline PoweredGerm germ_power_paths(const GermGraph& g, std::size_t m, std::size_t ceiling = kDefaultCeiling) {
  if (m == 0) throw DomainError("germ_power: block size must be >= 1");
  auto adj = g.adjacency();
  PoweredGerm out;
  GermGraph& p = out.germ;
  p.vertices = g.vertices;
  p.root = g.root;
  std::vector<std::size_t> path;
  std::function<void(std::size_t, std::size_t, const BigInt&)> walk = [&](std::size_t start, std::size_t v,
                                                                        const BigInt& label) {
    if (path.size() == m) {
      if (p.edges.size() >= ceiling)
        throw SizeError("germ_power: edge count exceeds ceiling " + std::to_string(ceiling));
      p.edges.push_back({start, v, label});
      out.paths.push_back(path);
      return;
    }
    for (auto e : adj[v]) {
      path.push_back(e);
      walk(start, g.edges[e].dst, label * g.edges[e].label);
      path.pop_back();
    }
  };
  for (std::size_t v = 0; v < g.vertices.size(); ++v) walk(v, v, BigInt(1));

  auto reach = detail::reachable(p);
  if (std::all_of(reach.begin(), reach.end(), [](bool b) { return b; })) return out;
  std::vector<std::size_t> remap(p.vertices.size());
  PoweredGerm pruned;
  for (std::size_t v = 0; v < p.vertices.size(); ++v)
    if (reach[v]) {
      remap[v] = pruned.germ.vertices.size();
      pruned.germ.vertices.push_back(p.vertices[v]);
    }
  pruned.germ.root = remap[p.root];
  for (std::size_t e = 0; e < p.edges.size(); ++e)
    if (reach[p.edges[e].src]) {
      pruned.germ.edges.push_back({remap[p.edges[e].src], remap[p.edges[e].dst], p.edges[e].label});
      pruned.paths.push_back(out.paths[e]);
    }
  return pruned;
}

inline GermGraph germ_power(const GermGraph& g, std::size_t m, std::size_t ceiling = kDefaultCeiling) {
  return germ_power_paths(g, m, ceiling).germ;
}

}  // namespace modelspace
