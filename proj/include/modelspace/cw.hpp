#pragma once

// Finite CW 2-complexes built from truncations: the base telescope X_d, the
// product cover Lambda+_d x [-N, N] with null copies, and the frontier graphs
// of the fixed-end neighborhoods. H1 is computed exactly via Smith form.

#include "coset.hpp"
#include "intmat.hpp"

#include <boost/pending/disjoint_sets.hpp>

#include <limits>
#include <sstream>

namespace modelspace {

struct Letter {
  std::size_t edge = 0;
  long long power = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
};

// Bookkeeping for oracles: which tree node / clone a cell came from.
struct CellTag {
  std::size_t node = 0;
  std::size_t tier = 0;
  long long height = 0;
  bool product = true;  // false for cells of attached null copies
};

struct CW2Complex {
  std::vector<CellTag> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (tail, head)
  std::vector<CellTag> edge_tags;
  std::vector<std::vector<Letter>> faces;
  std::vector<CellTag> face_tags;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t edge_count() const { return edges.size(); }
  std::size_t face_count() const { return faces.size(); }

  std::size_t add_vertex(CellTag tag) {
    vertices.push_back(tag);
    return vertices.size() - 1;
  }
  std::size_t add_edge(std::size_t tail, std::size_t head, CellTag tag) {
    edges.push_back({tail, head});
    edge_tags.push_back(tag);
    return edges.size() - 1;
  }
  std::size_t add_face(std::vector<Letter> word, CellTag tag) {
    faces.push_back(std::move(word));
    face_tags.push_back(tag);
    return faces.size() - 1;
  }
};

/// Throws InternalError unless every face word is a closed edge loop (which
/// also gives d1 * d2 = 0).
inline void check_boundaries(const CW2Complex& k) {
  for (std::size_t f = 0; f < k.faces.size(); ++f) {
    const auto& w = k.faces[f];
    if (w.empty()) throw InternalError("face " + std::to_string(f) + " has an empty attaching word");
    std::optional<std::size_t> start, at;
    for (const auto& l : w) {
      if (l.edge >= k.edges.size() || l.power == 0)
        throw InternalError("face " + std::to_string(f) + ": bad letter");
      auto [t, h] = k.edges[l.edge];
      if ((l.power > 1 || l.power < -1) && t != h)
        throw InternalError("face " + std::to_string(f) + ": power of a non-loop edge");
      auto from = l.power > 0 ? t : h;
      auto to = l.power > 0 ? h : t;
      if (at && *at != from) throw InternalError("face " + std::to_string(f) + ": word is not an edge path");
      if (!start) start = from;
      at = to;
    }
    if (at != start) throw InternalError("face " + std::to_string(f) + ": word is not closed");
  }
  // sparse d1 * d2
  for (std::size_t f = 0; f < k.faces.size(); ++f) {
    std::map<std::size_t, long long> b;
    for (const auto& l : k.faces[f]) {
      auto [t, h] = k.edges[l.edge];
      b[h] += l.power;
      b[t] -= l.power;
    }
    for (auto [v, c] : b)
      if (c != 0) throw InternalError("d1*d2 != 0 at face " + std::to_string(f));
  }
}

/// vertices x edges, column e = head - tail
inline IntMatrix boundary1(const CW2Complex& k) {
  IntMatrix m(k.vertex_count(), k.edge_count());
  for (std::size_t e = 0; e < k.edges.size(); ++e) {
    m(k.edges[e].second, e) += 1;
    m(k.edges[e].first, e) -= 1;
  }
  return m;
}

/// edges x faces, signed occurrence counts
inline IntMatrix boundary2(const CW2Complex& k) {
  IntMatrix m(k.edge_count(), k.face_count());
  for (std::size_t f = 0; f < k.faces.size(); ++f)
    for (const auto& l : k.faces[f]) m(l.edge, f) += l.power;
  return m;
}

namespace detail {

inline long long small_power(const BigInt& k) {
  if (!fits_int64(k)) throw SizeError("label too large for an attaching word: " + to_string(k));
  return static_cast<long long>(k);
}

}  // namespace detail

/// The telescope X_d over a truncation: vertex per node, tree edge
/// node -> parent for every non-root node, loop e' at each positive node, and
/// for each positive non-root node of label k the square e'_node e_node
/// (e'_parent)^-k e_node^-1. Null edges stay naked.
inline CW2Complex build_base(const TruncatedTree& t, std::size_t ceiling = kDefaultCeiling) {
  if (t.nodes.empty()) throw DomainError("build_base: empty truncation");
  if (3 * t.size() > ceiling)
    throw SizeError("base complex exceeds cell ceiling " + std::to_string(ceiling) + " (depth " +
                    std::to_string(t.depth) + ")");
  CW2Complex k;
  for (const auto& n : t.nodes) k.add_vertex({n.id, n.tier, 0, true});
  std::vector<std::size_t> tree_edge(t.size()), loop(t.size());
  for (const auto& n : t.nodes)
    if (n.parent) tree_edge[n.id] = k.add_edge(n.id, *n.parent, {n.id, n.tier, 0, true});
  for (const auto& n : t.nodes)
    if (n.positive) loop[n.id] = k.add_edge(n.id, n.id, {n.id, n.tier, 0, true});
  for (const auto& n : t.nodes) {
    if (!n.positive || !n.parent) continue;
    const auto e = tree_edge[n.id];
    k.add_face({{loop[n.id], 1}, {e, 1}, {loop[*n.parent], -detail::small_power(*n.label)}, {e, -1}},
               {n.id, n.tier, 0, true});
  }
  check_boundaries(k);
  return k;
}

/// Lambda+_d x [-N, N] with the product cells, plus at each integer height n
/// one copy of every null component hung at (sigma^n(attach), n). `ambient`
/// is the truncation the forest was taken from.
inline CW2Complex build_cover(const CosetTree& c, const NullForest& nf, const TruncatedTree& ambient, long long N,
                              std::size_t ceiling = kDefaultCeiling) {
  if (N < 1) throw DomainError("build_cover: height bound must be >= 1");
  const std::size_t H = static_cast<std::size_t>(2 * N + 1);
  std::size_t null_nodes = 0;
  for (const auto& comp : nf.components) null_nodes += comp.nodes.size();
  if ((c.size() + null_nodes) * H * 3 > ceiling)
    throw SizeError("cover complex exceeds cell ceiling " + std::to_string(ceiling) + " (height " +
                    std::to_string(N) + ")");
  CW2Complex k;
  auto vid = [&](std::size_t x, long long h) { return x * H + static_cast<std::size_t>(h + N); };
  for (const auto& v : c.vertices)
    for (long long h = -N; h <= N; ++h) k.add_vertex({v.id, v.tier, h, true});
  std::vector<std::size_t> horiz(c.size() * H), vert(c.size() * H);
  for (const auto& v : c.vertices)
    for (long long h = -N; h <= N; ++h) {
      if (v.parent) horiz[vid(v.id, h)] = k.add_edge(vid(v.id, h), vid(*v.parent, h), {v.id, v.tier, h, true});
      if (h < N) vert[vid(v.id, h)] = k.add_edge(vid(v.id, h), vid(v.id, h + 1), {v.id, v.tier, h, true});
    }
  for (const auto& v : c.vertices) {
    if (!v.parent) continue;
    for (long long h = -N; h < N; ++h)
      k.add_face({{horiz[vid(v.id, h)], 1},
                  {vert[vid(*v.parent, h)], 1},
                  {horiz[vid(v.id, h + 1)], -1},
                  {vert[vid(v.id, h)], -1}},
                 {v.id, v.tier, h, true});
  }

  std::map<std::size_t, std::size_t> base_of_source;
  for (const auto& n : c.base.nodes) base_of_source[n.source] = n.id;
  for (long long h = -N; h <= N; ++h)
    for (const auto& comp : nf.components) {
      auto it = base_of_source.find(comp.attach);
      if (it == base_of_source.end()) throw DomainError("build_cover: null component attach node not in coset base");
      std::map<std::size_t, std::size_t> placed;
      placed[comp.attach] = vid(c.vertex(it->second, BigInt(h)), h);
      for (auto id : comp.nodes) {
        const auto& n = ambient.node(id);
        auto v = k.add_vertex({id, n.tier, h, false});
        k.add_edge(v, placed.at(*n.parent), {id, n.tier, h, false});
        placed[id] = v;
      }
    }
  check_boundaries(k);
  return k;
}

struct Components {
  std::size_t count = 0;
  std::vector<std::size_t> label;  // component index per vertex, numbered by first vertex
};

inline Components components(const CW2Complex& k) {
  const auto n = k.vertex_count();
  boost::disjoint_sets_with_storage<> ds(n);
  for (auto [t, h] : k.edges) ds.union_set(t, h);
  Components out;
  out.label.assign(n, 0);
  std::map<std::size_t, std::size_t> ids;
  for (std::size_t v = 0; v < n; ++v) {
    auto r = ds.find_set(v);
    auto it = ids.find(r);
    if (it == ids.end()) it = ids.emplace(r, ids.size()).first;
    out.label[v] = it->second;
  }
  out.count = ids.size();
  return out;
}

struct CellSelection {
  std::vector<bool> vertices, edges, faces;
};

/// All cells whose vertices satisfy keep.
inline CellSelection select_by_vertex(const CW2Complex& k, const std::function<bool(std::size_t)>& keep) {
  CellSelection s;
  s.vertices.resize(k.vertex_count());
  for (std::size_t v = 0; v < k.vertex_count(); ++v) s.vertices[v] = keep(v);
  s.edges.resize(k.edge_count());
  for (std::size_t e = 0; e < k.edge_count(); ++e) s.edges[e] = s.vertices[k.edges[e].first] && s.vertices[k.edges[e].second];
  s.faces.resize(k.face_count());
  for (std::size_t f = 0; f < k.face_count(); ++f)
    s.faces[f] = std::all_of(k.faces[f].begin(), k.faces[f].end(), [&](const Letter& l) { return s.edges[l.edge]; });
  return s;
}

inline bool is_closed(const CW2Complex& k, const CellSelection& s) {
  if (s.vertices.size() != k.vertex_count() || s.edges.size() != k.edge_count() || s.faces.size() != k.face_count())
    return false;
  for (std::size_t e = 0; e < k.edge_count(); ++e)
    if (s.edges[e] && !(s.vertices[k.edges[e].first] && s.vertices[k.edges[e].second])) return false;
  for (std::size_t f = 0; f < k.face_count(); ++f)
    if (s.faces[f])
      for (const auto& l : k.faces[f])
        if (!s.edges[l.edge]) return false;
  return true;
}

struct Subcomplex {
  CW2Complex complex;
  std::vector<std::size_t> vertex_map;  // sub vertex -> ambient vertex
  std::vector<std::size_t> edge_map;    // sub edge -> ambient edge
};

inline Subcomplex subcomplex(const CW2Complex& k, const CellSelection& s) {
  if (!is_closed(k, s)) throw DomainError("selection is not a subcomplex");
  Subcomplex out;
  std::vector<std::size_t> vnew(k.vertex_count()), enew(k.edge_count());
  for (std::size_t v = 0; v < k.vertex_count(); ++v)
    if (s.vertices[v]) {
      vnew[v] = out.complex.add_vertex(k.vertices[v]);
      out.vertex_map.push_back(v);
    }
  for (std::size_t e = 0; e < k.edge_count(); ++e)
    if (s.edges[e]) {
      enew[e] = out.complex.add_edge(vnew[k.edges[e].first], vnew[k.edges[e].second], k.edge_tags[e]);
      out.edge_map.push_back(e);
    }
  for (std::size_t f = 0; f < k.face_count(); ++f)
    if (s.faces[f]) {
      auto w = k.faces[f];
      for (auto& l : w) l.edge = enew[l.edge];
      out.complex.add_face(std::move(w), k.face_tags[f]);
    }
  return out;
}

struct H1Summary {
  std::size_t betti = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1
  friend bool operator==(const H1Summary&, const H1Summary&) = default;
};

namespace detail {

// Z1 via a spanning forest: a cycle is determined by its coefficients on the
// non-tree edges, and the fundamental cycles form a basis.
struct CycleCoordinates {
  std::vector<std::size_t> non_tree;                  // coordinate -> edge
  std::vector<std::optional<std::size_t>> coord;      // edge -> coordinate
  std::vector<std::optional<std::size_t>> up_edge;    // vertex -> forest edge toward its root
  std::vector<std::size_t> up_vertex;

  explicit CycleCoordinates(const CW2Complex& k) {
    const auto n = k.vertex_count();
    boost::disjoint_sets_with_storage<> ds(n);
    coord.assign(k.edge_count(), std::nullopt);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);  // (edge, other end)
    for (std::size_t e = 0; e < k.edge_count(); ++e) {
      auto [t, h] = k.edges[e];
      if (ds.find_set(t) != ds.find_set(h)) {
        ds.union_set(t, h);
        adj[t].push_back({e, h});
        adj[h].push_back({e, t});
      } else {
        coord[e] = non_tree.size();
        non_tree.push_back(e);
      }
    }
    up_edge.assign(n, std::nullopt);
    up_vertex.assign(n, 0);
    std::vector<bool> seen(n, false);
    for (std::size_t r = 0; r < n; ++r) {
      if (seen[r]) continue;
      seen[r] = true;
      up_vertex[r] = r;
      std::vector<std::size_t> stack{r};
      while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto [e, w] : adj[v])
          if (!seen[w]) {
            seen[w] = true;
            up_edge[w] = e;
            up_vertex[w] = v;
            stack.push_back(w);
          }
      }
    }
  }

  std::size_t size() const { return non_tree.size(); }

  // Adds c * (path from v to its forest root) to chain.
  void add_root_path(const CW2Complex& k, std::size_t v, const BigInt& c, std::vector<BigInt>& chain) const {
    while (up_edge[v]) {
      auto e = *up_edge[v];
      chain[e] += k.edges[e].first == v ? c : BigInt(-c);
      v = up_vertex[v];
    }
  }

  // Fundamental cycle of the non-tree edge with coordinate i, times c.
  void add_fundamental(const CW2Complex& k, std::size_t i, const BigInt& c, std::vector<BigInt>& chain) const {
    auto e = non_tree[i];
    auto [t, h] = k.edges[e];
    chain[e] += c;
    add_root_path(k, h, c, chain);
    add_root_path(k, t, -c, chain);
  }
};

struct H1Data {
  CycleCoordinates cycles;
  SmithForm snf;  // transforms absent when there are no faces (U = identity)
  std::size_t betti() const { return cycles.size() - snf.rank(); }
  BigInt left(std::size_t r, std::size_t c) const { return snf.left ? (*snf.left)(r, c) : BigInt(r == c ? 1 : 0); }
  BigInt left_inverse(std::size_t r, std::size_t c) const {
    return snf.left_inverse ? (*snf.left_inverse)(r, c) : BigInt(r == c ? 1 : 0);
  }
};

inline H1Data h1_data(const CW2Complex& k) {
  check_boundaries(k);
  CycleCoordinates cc(k);
  if (k.face_count() == 0) return {std::move(cc), SmithForm{}};
  IntMatrix d(cc.size(), k.face_count());
  for (std::size_t f = 0; f < k.face_count(); ++f)
    for (const auto& l : k.faces[f])
      if (cc.coord[l.edge]) d(*cc.coord[l.edge], f) += l.power;
  auto snf = smith(std::move(d), true);
  return {std::move(cc), std::move(snf)};
}

using EdgeImage = std::vector<std::vector<std::pair<std::size_t, int>>>;

inline IntMatrix induced_h1_map(const CW2Complex& src, const H1Data& s, const CW2Complex& /*dst*/, const H1Data& d,
                                const EdgeImage& edge_image) {
  if (edge_image.size() != src.edge_count()) throw DomainError("induced_h1_map: edge image size mismatch");
  const auto ms = s.cycles.size(), md = d.cycles.size();
  const auto rs = s.snf.rank(), rd = d.snf.rank();
  IntMatrix out(md - rd, ms - rs);
  for (std::size_t g = rs; g < ms; ++g) {
    std::vector<BigInt> chain(src.edge_count(), 0);
    for (std::size_t i = 0; i < ms; ++i) {
      auto c = s.left_inverse(i, g);
      if (c != 0) s.cycles.add_fundamental(src, i, c, chain);
    }
    std::vector<BigInt> x(md, 0);
    for (std::size_t e = 0; e < chain.size(); ++e) {
      if (chain[e] == 0) continue;
      for (auto [de, sign] : edge_image[e])
        if (d.cycles.coord[de]) x[*d.cycles.coord[de]] += sign * chain[e];
    }
    if (!d.snf.left) {
      for (std::size_t r = rd; r < md; ++r) out(r - rd, g - rs) = x[r];
      continue;
    }
    for (std::size_t r = rd; r < md; ++r) {
      BigInt y = 0;
      for (std::size_t i = 0; i < md; ++i)
        if (x[i] != 0) y += (*d.snf.left)(r, i) * x[i];
      out(r - rd, g - rs) = y;
    }
  }
  return out;
}

inline IntMatrix induced_h1(const CW2Complex& k, const H1Data& kd, const CellSelection& sel) {
  auto sub = subcomplex(k, sel);
  EdgeImage image(sub.complex.edge_count());
  for (std::size_t e = 0; e < image.size(); ++e) image[e] = {{sub.edge_map[e], 1}};
  return induced_h1_map(sub.complex, h1_data(sub.complex), k, kd, image);
}

}  // namespace detail

inline H1Summary h1(const CW2Complex& k) {
  auto data = detail::h1_data(k);
  H1Summary s;
  s.betti = data.betti();
  for (const auto& f : data.snf.factors)
    if (f > 1) s.torsion.push_back(f);
  return s;
}

/// Matrix of the map H1(src) -> H1(dst) on free Smith-basis generators, for a
/// cellular chain map given on edges as signed combinations of dst edges.
/// Rows: dst generators; columns: src generators.
inline IntMatrix induced_h1_map(const CW2Complex& src, const CW2Complex& dst, const detail::EdgeImage& edge_image) {
  return detail::induced_h1_map(src, detail::h1_data(src), dst, detail::h1_data(dst), edge_image);
}

/// H1(sub) -> H1(K) induced by inclusion.
inline IntMatrix induced_h1(const CW2Complex& k, const CellSelection& sel) {
  return detail::induced_h1(k, detail::h1_data(k), sel);
}

/// Q_i inside build_base(t): cells all of whose vertices lie at tiers >= i
/// (the tier-i circles included).
inline CellSelection infinity_neighborhood_base(const TruncatedTree& t, const CW2Complex& base, std::size_t i) {
  if (i > t.depth) throw DomainError("infinity_neighborhood_base: tier " + std::to_string(i) + " beyond depth");
  return select_by_vertex(base, [&](std::size_t v) { return base.vertices[v].tier >= i; });
}

/// The part of build_base(t) over the subtree below `node`.
inline CellSelection branch_selection(const TruncatedTree& t, const CW2Complex& base, std::size_t node) {
  std::vector<bool> in(t.size(), false);
  in[node] = true;
  for (const auto& n : t.nodes)
    if (n.parent && in[*n.parent]) in[n.id] = true;
  return select_by_vertex(base, [&](std::size_t v) { return in[base.vertices[v].node]; });
}

struct FrontierGraph {
  CW2Complex graph;
  std::size_t betti = 0;
};

namespace detail {

// Frontier of Lambda+_i x [-i, i]: two copies of Lambda+_i at heights -i and
// i joined by a vertical path through each tier-i vertex. Vertex lookup by
// (clone, height) is returned alongside.
inline std::pair<CW2Complex, std::map<std::pair<std::size_t, long long>, std::size_t>> frontier_cells(
    const CosetTree& c, std::size_t i) {
  CW2Complex k;
  std::map<std::pair<std::size_t, long long>, std::size_t> at;
  const long long h = static_cast<long long>(i);
  auto vertex = [&](std::size_t x, long long ht) {
    auto it = at.find({x, ht});
    if (it != at.end()) return it->second;
    auto v = k.add_vertex({x, c.vertices[x].tier, ht, true});
    at[{x, ht}] = v;
    return v;
  };
  for (long long side : {-h, h})
    for (const auto& v : c.vertices) {
      if (v.tier > i) continue;
      auto a = vertex(v.id, side);
      if (v.parent) k.add_edge(a, vertex(*v.parent, side), {v.id, v.tier, side, true});
    }
  for (const auto& v : c.vertices) {
    if (v.tier != i) continue;
    for (long long ht = -h; ht < h; ++ht) k.add_edge(vertex(v.id, ht), vertex(v.id, ht + 1), {v.id, v.tier, ht, true});
  }
  return {std::move(k), std::move(at)};
}

}  // namespace detail

/// Frontier graph of the i-th fixed-end neighborhood and its first Betti
/// number E - V + components.
inline FrontierGraph frontier_complex_cover(const CosetTree& c, std::size_t i) {
  if (i > c.base.depth) throw DomainError("frontier_complex_cover: tier beyond coset tree depth");
  FrontierGraph out;
  out.graph = detail::frontier_cells(c, i).first;
  const auto& g = out.graph;
  out.betti = g.edge_count() + components(g).count - g.vertex_count();
  return out;
}

/// H1(Fr_{i+1}) -> H1(Fr_i) induced by the collapse that sends tier-(i+1)
/// clones to their parents and clamps heights into [-i, i].
inline IntMatrix frontier_collapse_h1(const CosetTree& c, std::size_t i) {
  if (i + 1 > c.base.depth) throw DomainError("frontier_collapse_h1: coset tree too shallow");
  auto [src, src_at] = detail::frontier_cells(c, i + 1);
  auto [dst, dst_at] = detail::frontier_cells(c, i);
  const long long h = static_cast<long long>(i);
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, int>> dst_edge;
  for (std::size_t e = 0; e < dst.edge_count(); ++e) {
    auto [t, hd] = dst.edges[e];
    dst_edge[{t, hd}] = {e, 1};
    dst_edge[{hd, t}] = {e, -1};
  }
  auto image_vertex = [&](std::size_t v) {
    const auto& tag = src.vertices[v];
    std::size_t x = tag.tier == i + 1 ? *c.vertices[tag.node].parent : tag.node;
    long long ht = std::clamp(tag.height, -h, h);
    return dst_at.at({x, ht});
  };
  detail::EdgeImage image(src.edge_count());
  for (std::size_t e = 0; e < src.edge_count(); ++e) {
    auto a = image_vertex(src.edges[e].first), b = image_vertex(src.edges[e].second);
    if (a == b) continue;
    auto it = dst_edge.find({a, b});
    if (it == dst_edge.end()) throw InternalError("frontier collapse is not cellular");
    image[e] = {it->second};
  }
  return induced_h1_map(src, dst, image);
}

/// Onto iff all Smith factors are 1 and the rank equals the target rank.
inline bool surjective(const IntMatrix& m) {
  auto s = smith(m);
  return s.rank() == m.rows() &&
         std::all_of(s.factors.begin(), s.factors.end(), [](const BigInt& f) { return f == 1; });
}

/// Plain cell list: "vertices N", then "edge TAIL HEAD" lines, then
/// "face E^P E^P ..." lines.
inline std::string render_cells(const CW2Complex& k) {
  std::ostringstream o;
  o << "vertices " << k.vertex_count() << '\n';
  for (auto [t, h] : k.edges) o << "edge " << t << ' ' << h << '\n';
  for (const auto& w : k.faces) {
    o << "face";
    for (const auto& l : w) o << ' ' << l.edge << '^' << l.power;
    o << '\n';
  }
  return o.str();
}

}  // namespace modelspace
