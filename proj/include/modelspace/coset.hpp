#pragma once

// Clone trees. Lambda+ is built as a coset tree: the fiber over a positive
// node b is Z/n(b), n(b) the product of root-path labels, and (b, a) hangs
// below (parent(b), a mod n(parent(b))). The inductive wedge expansion builds
// the same tree (plus null edges) independently; `isomorphic` compares them.

#include "unfold.hpp"

#include <map>
#include <memory>
#include <tuple>

namespace modelspace {

/// n(b): product of the labels on the root path of a positive node.
inline BigInt vertex_order(const TruncatedTree& t, std::size_t id) {
  const auto& n = t.node(id);
  if (!n.positive) throw DomainError("vertex_order: node " + std::to_string(id) + " is not positive");
  BigInt prod = 1;
  for (const auto& l : t.path_labels(id)) prod *= l;
  return prod;
}

struct CosetVertex {
  std::size_t id = 0;
  std::size_t base = 0;  // node id in CosetTree::base
  std::size_t tier = 0;
  BigInt residue = 0;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
};

struct Fiber {
  std::size_t start = 0;  // first vertex id of the fiber
  std::size_t size = 0;   // n(b)
};

struct CosetTree {
  TruncatedTree base;  // positive truncation
  std::vector<CosetVertex> vertices;
  std::vector<Fiber> fibers;  // indexed by base node id

  std::size_t size() const { return vertices.size(); }
  std::size_t vertex(std::size_t base_node, const BigInt& residue) const {
    const auto& f = fibers.at(base_node);
    BigInt r = mod_floor(residue, BigInt(f.size));
    return f.start + static_cast<std::size_t>(r);
  }
  std::vector<std::size_t> tier(std::size_t i) const {
    std::vector<std::size_t> out;
    for (const auto& v : vertices)
      if (v.tier == i) out.push_back(v.id);
    return out;
  }
  std::size_t tier_count(std::size_t i) const {
    std::size_t c = 0;
    for (const auto& v : vertices) c += v.tier == i ? 1 : 0;
    return c;
  }
};

/// sigma_infinity on a coset tree: (b, a) -> (b, a + 1 mod n(b)).
class OdometerMap {
 public:
  OdometerMap() = default;
  explicit OdometerMap(const CosetTree& c) : fibers_(c.fibers) {
    fiber_of_.resize(c.size());
    for (const auto& v : c.vertices) fiber_of_[v.id] = v.base;
  }

  std::size_t size() const { return fiber_of_.size(); }

  std::size_t apply(std::size_t v, const BigInt& m) const {
    const auto& f = fibers_.at(fiber_of_.at(v));
    BigInt a = BigInt(v - f.start) + m;
    return f.start + static_cast<std::size_t>(mod_floor(a, BigInt(f.size)));
  }

  std::vector<std::size_t> permutation(const BigInt& m) const {
    std::vector<std::size_t> out(size());
    for (std::size_t v = 0; v < size(); ++v) out[v] = apply(v, m);
    return out;
  }

 private:
  std::vector<Fiber> fibers_;
  std::vector<std::size_t> fiber_of_;
};

/// Coset model of Lambda+_d over a positive truncation, with its odometer.
inline std::pair<CosetTree, OdometerMap> lambda_plus(const TruncatedTree& positive,
                                                     std::size_t ceiling = kDefaultCeiling) {
  for (const auto& n : positive.nodes)
    if (!n.positive) throw DomainError("lambda_plus: input truncation has a non-positive node");
  CosetTree c;
  c.base = positive;
  c.fibers.resize(positive.size());
  std::vector<BigInt> order(positive.size());
  BigInt total = 0;
  for (const auto& n : positive.nodes) {
    order[n.id] = n.parent ? order[*n.parent] * *n.label : BigInt(1);
    total += order[n.id];
    if (total > ceiling)
      throw SizeError("clone tree exceeds vertex ceiling " + std::to_string(ceiling) + " at tier " +
                      std::to_string(n.tier));
  }
  c.vertices.reserve(static_cast<std::size_t>(total));
  for (const auto& n : positive.nodes) {
    auto& f = c.fibers[n.id];
    f.start = c.vertices.size();
    f.size = static_cast<std::size_t>(order[n.id]);
    for (std::size_t a = 0; a < f.size; ++a) {
      CosetVertex v;
      v.id = c.vertices.size();
      v.base = n.id;
      v.tier = n.tier;
      v.residue = a;
      if (n.parent) {
        const auto& pf = c.fibers[*n.parent];
        v.parent = pf.start + a % pf.size;
        c.vertices[*v.parent].children.push_back(v.id);
      }
      c.vertices.push_back(std::move(v));
    }
  }
  OdometerMap sigma(c);
  return {std::move(c), std::move(sigma)};
}

inline std::vector<std::size_t> sigma_apply(const OdometerMap& o, const BigInt& m) { return o.permutation(m); }

enum class EdgeColor { None, Black, Gray, Dashed };

inline const char* to_string(EdgeColor c) {
  switch (c) {
    case EdgeColor::None: return "none";
    case EdgeColor::Black: return "black";
    case EdgeColor::Gray: return "gray";
    case EdgeColor::Dashed: return "dashed";
  }
  return "?";
}

struct ColoredNode {
  std::size_t id = 0;
  std::size_t tier = 0;
  std::optional<std::size_t> parent;
  EdgeColor color = EdgeColor::None;  // color of the edge to the parent
  bool original = true;               // part of the black+dashed copy of Gamma
  std::size_t germ_vertex = 0;
  BigInt residue = 0;
  std::vector<std::size_t> children;
};

struct ColoredTree {
  std::vector<std::string> names;
  std::vector<ColoredNode> nodes;

  std::size_t size() const { return nodes.size(); }
  std::size_t add(std::optional<std::size_t> parent, EdgeColor color, bool original, std::size_t germ_vertex,
                  BigInt residue) {
    ColoredNode n;
    n.id = nodes.size();
    n.parent = parent;
    n.tier = parent ? nodes[*parent].tier + 1 : 0;
    n.color = color;
    n.original = original;
    n.germ_vertex = germ_vertex;
    n.residue = std::move(residue);
    if (parent) nodes[*parent].children.push_back(n.id);
    nodes.push_back(std::move(n));
    return nodes.back().id;
  }
  std::size_t count(EdgeColor c) const {
    std::size_t k = 0;
    for (const auto& n : nodes) k += n.color == c ? 1 : 0;
    return k;
  }
};

/// Lambda_d by inductive wedge expansion. A positive edge of label k below an
/// original vertex becomes one black and k-1 gray edges; below a clone, k gray
/// edges. Null edges appear, dashed, only below original vertices. Black
/// child first, gray clones after it in residue order.
inline ColoredTree wedge_expansion(const TruncatedTree& t, std::size_t ceiling = kDefaultCeiling) {
  ColoredTree out;
  out.names = t.names;
  std::vector<std::size_t> assoc;  // Lambda vertex -> Gamma node
  std::vector<BigInt> order;       // n(assoc) for positive vertices
  out.add(std::nullopt, EdgeColor::None, true, t.root().germ_vertex, 0);
  assoc.push_back(0);
  order.push_back(1);
  for (std::size_t x = 0; x < out.nodes.size(); ++x) {
    const auto& b = t.node(assoc[x]);
    for (auto cid : b.children) {
      const auto& c = t.node(cid);
      if (c.positive) {
        const BigInt& k = *c.label;
        for (BigInt s = 0; s < k; ++s) {
          if (out.size() >= ceiling)
            throw SizeError("wedge expansion exceeds vertex ceiling " + std::to_string(ceiling) + " at tier " +
                            std::to_string(c.tier));
          const bool orig = out.nodes[x].original && s == 0;
          BigInt residue = out.nodes[x].residue + s * order[x];
          out.add(x, orig ? EdgeColor::Black : EdgeColor::Gray, orig, c.germ_vertex, std::move(residue));
          assoc.push_back(cid);
          order.push_back(order[x] * k);
        }
      } else if (out.nodes[x].original) {
        if (out.size() >= ceiling)
          throw SizeError("wedge expansion exceeds vertex ceiling " + std::to_string(ceiling) + " at tier " +
                          std::to_string(c.tier));
        out.add(x, EdgeColor::Dashed, true, c.germ_vertex, 0);
        assoc.push_back(cid);
        order.push_back(0);
      }
    }
  }
  return out;
}

/// Colors a coset tree (residue 0 = original/black, others gray) and hangs
/// each null component, dashed, at the residue-0 copy of its attach node.
/// `ambient` is the full truncation the forest was taken from.
inline ColoredTree lambda_of_coset(const CosetTree& c, const NullForest& nf, const TruncatedTree& ambient) {
  if (ambient.names != c.base.names) throw DomainError("lambda_of_coset: mismatched bases");
  ColoredTree out;
  out.names = c.base.names;
  for (const auto& v : c.vertices) {
    const bool orig = v.residue == 0;
    const auto color = v.parent ? (orig ? EdgeColor::Black : EdgeColor::Gray) : EdgeColor::None;
    out.add(v.parent, color, orig, c.base.node(v.base).germ_vertex, v.residue);
  }
  std::map<std::size_t, std::size_t> base_of_source;
  for (const auto& n : c.base.nodes) base_of_source[n.source] = n.id;
  for (const auto& comp : nf.components) {
    auto it = base_of_source.find(comp.attach);
    if (it == base_of_source.end() || comp.attach >= ambient.size())
      throw DomainError("lambda_of_coset: mismatched bases (attach node not in coset base)");
    std::map<std::size_t, std::size_t> placed;
    placed[comp.attach] = c.fibers.at(it->second).start;  // residue 0
    for (auto id : comp.nodes) {
      const auto& n = ambient.node(id);
      placed[id] = out.add(placed.at(*n.parent), EdgeColor::Dashed, true, n.germ_vertex, 0);
    }
  }
  return out;
}

/// Canonical class ids for unordered colored rooted trees (AHU). Node key:
/// edge color, originality, germ vertex name, and the sorted child classes.
class TreeCanonicalizer {
 public:
  std::size_t root_class(const ColoredTree& t) {
    std::vector<std::size_t> cls(t.size());
    for (std::size_t k = t.size(); k-- > 0;) {
      const auto& n = t.nodes[k];
      std::vector<std::size_t> kids;
      kids.reserve(n.children.size());
      for (auto c : n.children) kids.push_back(cls[c]);
      std::sort(kids.begin(), kids.end());
      Key key{static_cast<int>(n.color), n.original, t.names.at(n.germ_vertex), std::move(kids)};
      auto it = ids_.find(key);
      if (it == ids_.end()) it = ids_.emplace(std::move(key), ids_.size()).first;
      cls[k] = it->second;
    }
    return t.size() ? cls[0] : 0;
  }

 private:
  using Key = std::tuple<int, bool, std::string, std::vector<std::size_t>>;
  std::map<Key, std::size_t> ids_;
};

/// Colored rooted tree isomorphism (child order ignored). Nodes must be
/// numbered so that children follow their parents.
inline bool isomorphic(const ColoredTree& a, const ColoredTree& b) {
  if (a.size() != b.size()) return false;
  TreeCanonicalizer canon;
  return canon.root_class(a) == canon.root_class(b);
}

/// |Fr Lambda+_i| in closed form: the root row of the i-th power of the
/// label-weighted positive adjacency matrix, summed.
inline BigInt frontier_count(const GermGraph& g, std::size_t i) {
  const auto n = g.vertices.size();
  std::vector<BigInt> row(n, 0);
  row[g.root] = 1;
  for (std::size_t step = 0; step < i; ++step) {
    std::vector<BigInt> next(n, 0);
    for (const auto& e : g.edges)
      if (!e.null() && row[e.src] != 0) next[e.dst] += row[e.src] * e.label;
    row = std::move(next);
  }
  BigInt sum = 0;
  for (const auto& x : row) sum += x;
  return sum;
}

/// The parent map from tier i+1 onto tier i of Lambda+ is onto.
inline bool collapse_is_surjective(const CosetTree& c, std::size_t i) {
  std::vector<bool> hit(c.size(), false);
  for (const auto& v : c.vertices)
    if (v.tier == i + 1) hit[*v.parent] = true;
  for (const auto& v : c.vertices)
    if (v.tier == i && !hit[v.id]) return false;
  return true;
}

}  // namespace modelspace
