#pragma once

// Independent brute-force reference computations used by the tests. None of
// these call into the closed-form code they are checking.

#include "modelspace/classify.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

namespace oracle {

using modelspace::BigInt;
using modelspace::GermGraph;

inline std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

inline GermGraph load(const std::string& name) {
  return modelspace::parse_germ(read_file(std::string(GERM_DIR) + "/" + name + ".germ"));
}

// Valid germs of the shipped corpus.
inline const std::vector<std::string>& corpus() {
  static const std::vector<std::string> names{
      "trivial",           "bs2",       "ray1",          "bs3",     "two_loops_23", "wide",
      "null_ray_root",     "mixed_countable", "mixed_uncountable", "alternating", "branching",
      "finite_plus_uncountable", "chain"};
  return names;
}

// Number of germ paths of length n from v (all edges).
inline BigInt count_paths(const GermGraph& g, std::size_t v, std::size_t n) {
  if (n == 0) return 1;
  BigInt c = 0;
  for (const auto& e : g.edges)
    if (e.src == v) c += count_paths(g, e.dst, n - 1);
  return c;
}

// Sum over positive root paths of length n of the label products, by
// recursive enumeration.
inline BigInt weighted_positive_paths(const GermGraph& g, std::size_t v, std::size_t n, const BigInt& acc = 1) {
  if (n == 0) return acc;
  BigInt c = 0;
  for (const auto& e : g.edges)
    if (e.src == v && e.label != 0) c += weighted_positive_paths(g, e.dst, n - 1, acc * e.label);
  return c;
}

// Largest number of length-n paths starting at a vertex entered by a
// reachable 0-edge: growth of a single null component.
inline std::vector<BigInt> null_growth(const GermGraph& g, std::size_t max_n) {
  auto closure = [&](std::vector<std::size_t> stack, std::vector<bool>& seen) {
    for (auto v : stack) seen[v] = true;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (const auto& e : g.edges)
        if (e.src == v && !seen[e.dst]) {
          seen[e.dst] = true;
          stack.push_back(e.dst);
        }
    }
  };
  std::vector<bool> reach(g.vertices.size(), false), in_null(g.vertices.size(), false);
  closure({g.root}, reach);
  std::vector<std::size_t> seeds;
  for (const auto& e : g.edges)
    if (e.label == 0 && reach[e.src]) seeds.push_back(e.dst);
  closure(seeds, in_null);
  std::vector<BigInt> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    BigInt best = 0;
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
      if (in_null[v]) best = std::max(best, count_paths(g, v, n));
    out.push_back(best);
  }
  return out;
}

// Exponential: strictly increasing with geometric-mean ratio >= 1.1 over
// the window n = 6..12.
inline bool looks_exponential(const std::vector<BigInt>& c) {
  if (c.size() < 12) return false;
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i] <= c[i - 1]) return false;
  double ratio = std::pow(static_cast<double>(c[11]) / static_cast<double>(c[5]), 1.0 / 6.0);
  return ratio >= 1.1;
}

// Polynomial: for some k <= 3 the k-th difference is periodic with period
// <= 2 from n = 5 on.
inline bool looks_polynomial(const std::vector<BigInt>& c) {
  std::vector<BigInt> d(c.begin() + 4, c.end());
  for (int k = 0; k <= 3; ++k) {
    for (std::size_t p = 1; p <= 2; ++p) {
      bool periodic = d.size() > p + 1;
      for (std::size_t i = p; i < d.size() && periodic; ++i) periodic = d[i] == d[i - p];
      if (periodic) return true;
    }
    std::vector<BigInt> next;
    for (std::size_t i = 1; i < d.size(); ++i) next.push_back(d[i] - d[i - 1]);
    d = std::move(next);
  }
  return false;
}

// Canonical string of an unordered colored rooted tree, by recursion.
inline std::string canonical_string(const modelspace::ColoredTree& t, std::size_t v = 0) {
  const auto& n = t.nodes[v];
  std::vector<std::string> kids;
  for (auto c : n.children) kids.push_back(canonical_string(t, c));
  std::sort(kids.begin(), kids.end());
  std::string s = "(" + std::to_string(static_cast<int>(n.color)) + (n.original ? "o" : "c") + t.names[n.germ_vertex];
  for (const auto& k : kids) s += k;
  return s + ")";
}

// Determinant by cofactor expansion (small matrices only).
inline BigInt det(const modelspace::IntMatrix& m) {
  const auto n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  BigInt d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    modelspace::IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    BigInt term = m(0, j) * det(minor);
    d += (j % 2 == 0) ? term : BigInt(-term);
  }
  return d;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Invariant factors from determinantal divisors: d_k = gcd of k x k minors,
// s_k = d_k / d_{k-1}.
inline std::vector<BigInt> invariant_factors(const modelspace::IntMatrix& m) {
  std::vector<BigInt> out;
  BigInt prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.rows(), k, 0, cur, rs);
    subsets(m.cols(), k, 0, cur, cs);
    BigInt g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        modelspace::IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(r[i], c[j]);
        g = boost::multiprecision::gcd(g, abs(det(sub)));
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

// Rank over the rationals by fraction-free Gaussian elimination.
inline std::size_t rational_rank(modelspace::IntMatrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::optional<std::size_t> p;
    for (std::size_t i = r; i < m.rows(); ++i)
      if (m(i, c) != 0) {
        p = i;
        break;
      }
    if (!p) continue;
    m.swap_rows(r, *p);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      BigInt a = m(r, c), b = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) * a - m(r, j) * b;
    }
    ++r;
  }
  return r;
}

// First Betti number over Q: dim ker d1 - rank d2.
inline std::size_t rational_betti1(const modelspace::CW2Complex& k) {
  auto r1 = rational_rank(modelspace::boundary1(k));
  auto r2 = k.face_count() ? rational_rank(modelspace::boundary2(k)) : 0;
  return k.edge_count() - r1 - r2;
}

// Is there a thread g_0 = k_1 g_1, g_1 = k_2 g_2, ... over [0, depth] with
// every |g_i| <= bound and g_{depth/2} != 0?
inline bool nonzero_thread(const modelspace::MultSequence& s, std::size_t depth = 40, long bound = 1000) {
  for (long top = -bound; top <= bound; ++top) {
    if (top == 0) continue;
    std::vector<BigInt> g(depth + 1);
    g[depth] = top;
    bool ok = true;
    for (std::size_t i = depth; i-- > 0 && ok;) {
      g[i] = s.label(i + 1) * g[i + 1];
      ok = abs(g[i]) <= bound;
    }
    if (ok && g[depth / 2] != 0) return true;
  }
  return false;
}

// Order of the clone (b, a) under +1 on its fiber, by walking the orbit.
inline std::size_t orbit_size(const modelspace::OdometerMap& o, std::size_t v) {
  std::size_t w = o.apply(v, 1), len = 1;
  while (w != v) {
    w = o.apply(w, 1);
    ++len;
  }
  return len;
}

// Product of the germ labels along the unfolding path of a tree node.
inline BigInt path_product(const modelspace::TruncatedTree& t, std::size_t id) {
  BigInt p = 1;
  while (t.nodes[id].parent) {
    p *= *t.nodes[id].label;
    id = *t.nodes[id].parent;
  }
  return p;
}

}  // namespace oracle
