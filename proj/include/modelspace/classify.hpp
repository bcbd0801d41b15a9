#pragma once

// End classification of the model Z-space, fixed-end counts, pro-pi1 along a
// ray, pro-H1 ranks at the fixed end, and the brute-force oracle battery that
// cross-checks them against explicit complexes.

#include "cw.hpp"
#include "proseq.hpp"
#include "reduce.hpp"

namespace modelspace {

enum class EndClass { TwoEnded, OneEnded, InfiniteCountable, InfiniteUncountable };

inline const char* to_string(EndClass c) {
  switch (c) {
    case EndClass::TwoEnded: return "TwoEnded";
    case EndClass::OneEnded: return "OneEnded";
    case EndClass::InfiniteCountable: return "InfiniteCountable";
    case EndClass::InfiniteUncountable: return "InfiniteUncountable";
  }
  return "?";
}

struct Rationale {
  std::string claim;
  std::string rule;
};

struct EndReport {
  EndClass end_class = EndClass::TwoEnded;
  std::size_t fixed_end_count = 2;
  bool gamma_plus_finite = true;
  std::vector<Rationale> rationale;
};

inline EndReport classify_ends(const GermGraph& g) {
  require_valid(g);
  EndReport r;
  const auto nulls = null_end_class(g);
  const auto fin = gamma_plus_is_finite(g);
  r.gamma_plus_finite = fin.finite;
  if (g.trivial()) {
    r.end_class = EndClass::TwoEnded;
    r.fixed_end_count = 2;
    r.rationale.push_back({"TwoEnded", "the tree is a single vertex, so the cover is a line"});
    return r;
  }
  if (nulls == Cardinality::Empty) {
    r.end_class = EndClass::OneEnded;
    r.fixed_end_count = 1;
    r.rationale.push_back({"OneEnded", "no 0-label is reachable and the tree is nontrivial"});
    return r;
  }
  r.end_class = nulls == Cardinality::Uncountable ? EndClass::InfiniteUncountable : EndClass::InfiniteCountable;
  r.rationale.push_back({"infinitely many ends", "a 0-label is reachable, so the null forest is nonempty"});
  r.rationale.push_back(
      {std::string(to_string(nulls)) + " null ends",
       nulls == Cardinality::Uncountable ? "some null cycle component has more edges than vertices"
                                         : "every null cycle component is a single cycle"});
  r.fixed_end_count = fin.finite ? 2 : 1;
  r.rationale.push_back(
      {"fixed ends: " + std::to_string(r.fixed_end_count),
       fin.finite ? "the positive part is finite and collapses to its root, leaving two line ends"
                  : "the positive part is infinite, so its product with the line has one end"});
  return r;
}

/// Infinite germ path from the root: prefix, then cycle repeated.
struct RaySpec {
  std::vector<std::size_t> prefix;
  std::vector<std::size_t> cycle;
  friend bool operator==(const RaySpec&, const RaySpec&) = default;

  // Edge index of the i-th step, 1-based.
  std::size_t edge(std::size_t i) const {
    if (i <= prefix.size()) return prefix[i - 1];
    return cycle[(i - 1 - prefix.size()) % cycle.size()];
  }
};

inline void check_ray(const GermGraph& g, const RaySpec& r) {
  if (r.cycle.empty()) throw DomainError("ray cycle must be nonempty");
  std::size_t at = g.root;
  auto step = [&](std::size_t e) {
    if (e >= g.edges.size()) throw DomainError("ray uses unknown edge " + std::to_string(e));
    if (g.edges[e].src != at)
      throw DomainError("ray is not a path: edge " + std::to_string(e) + " does not start at " + g.vertices[at]);
    at = g.edges[e].dst;
  };
  for (auto e : r.prefix) step(e);
  const auto cycle_start = at;
  for (auto e : r.cycle) step(e);
  if (at != cycle_start) throw DomainError("ray cycle does not close up");
}

inline MultSequence pro_pi1_ray(const GermGraph& g, const RaySpec& r) {
  check_ray(g, r);
  MultSequence s;
  for (auto e : r.prefix) s.prefix.push_back(g.edges[e].label);
  for (auto e : r.cycle) s.cycle.push_back(g.edges[e].label);
  return s;
}

/// Greedy ray: from each vertex take the lowest-index positive edge from
/// which a positive cycle is still reachable, until a vertex repeats. When no
/// positive cycle is reachable from the root any edge is allowed. None for the
/// trivial germ.
inline std::optional<RaySpec> default_ray(const GermGraph& g) {
  if (g.out_edges(g.root).empty()) return std::nullopt;
  const auto n = g.vertices.size();
  auto adj = g.adjacency();
  // reach[v][w]: w reachable from v by >= 1 positive edge
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto e : adj[v]) {
        auto w = g.edges[e].dst;
        if (g.edges[e].null() || reach[s][w]) continue;
        reach[s][w] = true;
        stack.push_back(w);
      }
    }
  }
  std::vector<bool> good(n, false);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w)
      if ((w == v || reach[v][w]) && reach[w][w]) good[v] = true;
  const bool positive = good[g.root];

  RaySpec r;
  std::vector<std::size_t> path;
  std::map<std::size_t, std::size_t> seen;  // vertex -> step at which it was entered
  std::size_t at = g.root;
  while (!seen.count(at)) {
    seen[at] = path.size();
    std::optional<std::size_t> pick;
    for (auto e : adj[at]) {
      if (positive && (g.edges[e].null() || !good[g.edges[e].dst])) continue;
      pick = e;
      break;
    }
    if (!pick) throw InternalError("default_ray: dead end at " + g.vertices[at]);
    path.push_back(*pick);
    at = g.edges[*pick].dst;
  }
  const auto k = seen[at];
  r.prefix.assign(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(k));
  r.cycle.assign(path.begin() + static_cast<std::ptrdiff_t>(k), path.end());
  return r;
}

/// Node ids of the ray in a truncation, tiers 0..t.depth.
inline std::vector<std::size_t> ray_nodes(const GermGraph& g, const TruncatedTree& t, const RaySpec& r) {
  check_ray(g, r);
  auto adj = g.adjacency();
  std::vector<std::size_t> out{0};
  for (std::size_t i = 1; i <= t.depth; ++i) {
    auto e = r.edge(i);
    const auto& cur = t.node(out.back());
    const auto& choices = adj[cur.germ_vertex];
    auto pos = static_cast<std::size_t>(std::find(choices.begin(), choices.end(), e) - choices.begin());
    out.push_back(cur.children.at(pos));
  }
  return out;
}

struct BondMark {
  bool declared_surjective = true;
  std::optional<bool> verified;  // none when the check exceeded its size budget
};

/// Ranks n_i = |Fr Lambda+_i| - 1 of the free groups at the fixed end, with
/// the bond n_i <- n_{i+1} for i = 0..d-1.
struct RankSequence {
  std::vector<BigInt> ranks;
  std::vector<BondMark> bonds;
};

// Largest frontier (first Betti number of the source graph) for which a
// collapse bond is checked by Smith form.
inline constexpr std::size_t kBondCheckBudget = 1000;

inline RankSequence pro_h1_fixed_end(const GermGraph& g, std::size_t d, std::size_t ceiling = kDefaultCeiling) {
  auto ends = classify_ends(g);
  if (ends.fixed_end_count != 1)
    throw DomainError("pro_h1_fixed_end: the fixed ends of this germ are simply connected (" +
                      std::string(to_string(ends.end_class)) + ", " + std::to_string(ends.fixed_end_count) +
                      " fixed ends)");
  RankSequence rs;
  for (std::size_t i = 0; i <= d; ++i) rs.ranks.push_back(frontier_count(g, i) - 1);
  rs.bonds.resize(d);
  std::optional<CosetTree> c;
  for (std::size_t i = 0; i < d; ++i) {
    if (rs.ranks[i + 1] > kBondCheckBudget) break;
    try {
      if (!c) c = lambda_plus(positive_part(truncate(g, d, ceiling)), ceiling).first;
      rs.bonds[i].verified = surjective(frontier_collapse_h1(*c, i));
    } catch (const SizeError&) {
      break;
    }
  }
  return rs;
}

// ---------------------------------------------------------------------------
// Cover end counting on truncations.

struct EndObservation {
  std::size_t ends = 0;        // components of the complement of the core reaching the horizon
  std::size_t fixed_ends = 0;  // of those, the ones containing product cells at the horizon
  friend bool operator==(const EndObservation&, const EndObservation&) = default;
};

/// Truncated cover at (depth, height) with the core {tier < r, |h| < r}
/// removed.
inline EndObservation observe_cover_ends(const GermGraph& g, std::size_t depth, long long height, std::size_t r,
                                         std::size_t ceiling = kDefaultCeiling) {
  auto t = truncate(g, depth, ceiling);
  auto c = lambda_plus(positive_part(t), ceiling).first;
  auto k = build_cover(c, null_forest(t), t, height, ceiling);
  const auto rr = static_cast<long long>(r);
  auto sel = select_by_vertex(k, [&](std::size_t v) {
    const auto& tag = k.vertices[v];
    return !(tag.tier < r && tag.height > -rr && tag.height < rr);
  });
  auto rest = subcomplex(k, sel);
  auto comps = components(rest.complex);
  std::vector<bool> horizon(comps.count, false), fixed(comps.count, false);
  for (std::size_t v = 0; v < rest.complex.vertex_count(); ++v) {
    const auto& tag = rest.complex.vertices[v];
    const bool at_horizon = tag.tier == depth || tag.height == height || tag.height == -height;
    if (!at_horizon) continue;
    horizon[comps.label[v]] = true;
    if (tag.product) fixed[comps.label[v]] = true;
  }
  EndObservation o;
  o.ends = static_cast<std::size_t>(std::count(horizon.begin(), horizon.end(), true));
  o.fixed_ends = static_cast<std::size_t>(std::count(fixed.begin(), fixed.end(), true));
  return o;
}

/// Core radius for the cover end count: past the positive part when it is
/// finite, and past the shallowest null edge.
inline std::size_t core_radius(const GermGraph& g) {
  auto fin = gamma_plus_is_finite(g);
  std::size_t r = fin.finite ? *fin.bound + 1 : 1;
  // tier of the shallowest null node: BFS distance over positive edges to a null edge, plus one
  const auto n = g.vertices.size();
  std::vector<std::optional<std::size_t>> dist(n);
  dist[g.root] = 0;
  std::vector<std::size_t> queue{g.root};
  std::optional<std::size_t> null_tier;
  for (std::size_t k = 0; k < queue.size(); ++k) {
    auto v = queue[k];
    for (auto e : g.out_edges(v)) {
      if (g.edges[e].null()) {
        if (!null_tier) null_tier = *dist[v] + 1;
        continue;
      }
      auto w = g.edges[e].dst;
      if (!dist[w]) {
        dist[w] = *dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return null_tier ? std::max(r, *null_tier) : r;
}

// ---------------------------------------------------------------------------
// Oracle battery.

enum class CheckStatus { Pass, Fail, Skipped };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

struct OracleCheck {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

inline bool all_agree(const std::vector<OracleCheck>& checks) {
  return std::none_of(checks.begin(), checks.end(), [](const OracleCheck& c) { return c.status == CheckStatus::Fail; });
}

namespace detail {

inline std::string join(const std::vector<std::string>& parts, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

// Runs fn; a SizeError turns the check into Skipped.
inline OracleCheck run_check(const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
  try {
    auto [ok, detail] = fn();
    return {name, ok ? CheckStatus::Pass : CheckStatus::Fail, detail};
  } catch (const SizeError& e) {
    return {name, CheckStatus::Skipped, e.what()};
  }
}

}  // namespace detail

/// Recomputes the closed-form invariants on explicit complexes at the given
/// horizon (depth, height), and the end counts also at (depth+1, height+1).
inline std::vector<OracleCheck> oracle_battery(const GermGraph& g, std::size_t depth, long long height,
                                               std::size_t ceiling = kDefaultCeiling) {
  require_valid(g);
  std::vector<OracleCheck> out;
  const auto ends = classify_ends(g);
  const auto ray = default_ray(g);

  out.push_back(detail::run_check("base_h1", [&] {
    auto h = h1(build_base(truncate(g, depth, ceiling), ceiling));
    return std::pair{h.betti == 1 && h.torsion.empty(),
                     "betti " + std::to_string(h.betti) + ", torsion " + std::to_string(h.torsion.size())};
  }));

  out.push_back(detail::run_check("neighborhood_components", [&] {
    auto t = truncate(g, depth, ceiling);
    auto k = build_base(t, ceiling);
    std::vector<std::string> got;
    bool ok = true;
    for (std::size_t i = 0; i <= depth; ++i) {
      auto sub = subcomplex(k, infinity_neighborhood_base(t, k, i));
      auto n = components(sub.complex).count;
      ok = ok && n == t.tier(i).size();
      got.push_back(std::to_string(n));
    }
    return std::pair{ok, "components " + detail::join(got)};
  }));

  if (ray) {
    out.push_back(detail::run_check("ray_multipliers", [&] {
      auto t = truncate(g, depth, ceiling);
      auto k = build_base(t, ceiling);
      auto kd = detail::h1_data(k);
      auto seq = pro_pi1_ray(g, *ray);
      auto nodes = ray_nodes(g, t, *ray);
      std::vector<std::string> got;
      bool ok = true;
      for (std::size_t i = 0; i <= depth; ++i) {
        BigInt expect = i == 0 ? BigInt(1) : bond_compose(seq, 1, i);
        auto m = detail::induced_h1(k, kd, branch_selection(t, k, nodes[i]));
        if (expect == 0) {
          ok = ok && m.cols() == 0;
          got.push_back("0");
          continue;
        }
        bool fine = m.rows() == 1 && m.cols() == 1 && abs(m(0, 0)) == expect;
        ok = ok && fine;
        got.push_back(m.rows() == 1 && m.cols() == 1 ? to_string(abs(m(0, 0))) : "?");
      }
      return std::pair{ok, "multipliers " + detail::join(got)};
    }));
  }

  if (ends.fixed_end_count == 1) {
    out.push_back(detail::run_check("frontier_ranks", [&] {
      auto c = lambda_plus(positive_part(truncate(g, depth, ceiling)), ceiling).first;
      std::vector<std::string> got;
      bool ok = true;
      for (std::size_t i = 0; i <= depth; ++i) {
        auto b = frontier_complex_cover(c, i).betti;
        ok = ok && BigInt(b) == frontier_count(g, i) - 1;
        got.push_back(std::to_string(b));
      }
      return std::pair{ok, "betti " + detail::join(got)};
    }));
    out.push_back(detail::run_check("bond_surjectivity", [&] {
      auto rs = pro_h1_fixed_end(g, depth, ceiling);
      std::vector<std::string> got;
      bool ok = true, any = false;
      for (const auto& b : rs.bonds) {
        if (!b.verified) {
          got.push_back("-");
          continue;
        }
        any = true;
        ok = ok && *b.verified;
        got.push_back(*b.verified ? "onto" : "not onto");
      }
      if (!any && depth > 0) throw SizeError("no bond within the check budget");
      return std::pair{ok, detail::join(got)};
    }));
  }

  out.push_back(detail::run_check("clone_equivalence", [&] {
    auto t = truncate(g, depth, ceiling);
    auto w = wedge_expansion(t, ceiling);
    auto c = lambda_plus(positive_part(t), ceiling).first;
    auto l = lambda_of_coset(c, null_forest(t), t);
    return std::pair{isomorphic(w, l), std::to_string(w.size()) + " vertices"};
  }));

  out.push_back(detail::run_check("odometer_orbits", [&] {
    auto t = positive_part(truncate(g, depth, ceiling));
    auto [c, sigma] = lambda_plus(t, ceiling);
    bool ok = true;
    for (const auto& n : t.nodes) {
      const auto& f = c.fibers[n.id];
      std::size_t v = f.start, len = 0;
      do {
        v = sigma.apply(v, 1);
        ++len;
      } while (v != f.start && len <= f.size);
      ok = ok && BigInt(len) == vertex_order(t, n.id);
    }
    return std::pair{ok, std::to_string(t.size()) + " fibers"};
  }));

  out.push_back(detail::run_check("cover_ends", [&] {
    const auto r = core_radius(g);
    const auto d0 = std::max(depth, r + 2);
    const auto h0 = std::max(height, static_cast<long long>(r) + 2);
    std::vector<std::string> got;
    bool ok = true;
    for (std::size_t extra = 0; extra <= 1; ++extra) {
      auto a = observe_cover_ends(g, d0 + extra, h0 + static_cast<long long>(extra), r, ceiling);
      auto b = observe_cover_ends(g, d0 + extra, h0 + static_cast<long long>(extra), r + 1, ceiling);
      switch (ends.end_class) {
        case EndClass::TwoEnded: ok = ok && a.ends == 2 && b.ends == 2; break;
        case EndClass::OneEnded: ok = ok && a.ends == 1 && b.ends == 1; break;
        default: ok = ok && b.ends > a.ends; break;
      }
      ok = ok && a.fixed_ends == ends.fixed_end_count && b.fixed_ends == ends.fixed_end_count;
      got.push_back(std::to_string(a.ends) + "/" + std::to_string(b.ends) + " fixed " + std::to_string(a.fixed_ends));
    }
    return std::pair{ok, detail::join(got, "; ")};
  }));

  out.push_back(detail::run_check("reduction_invariance", [&] {
    auto p = germ_power(g, 2, ceiling);
    auto e2 = classify_ends(p);
    bool ok = e2.end_class == ends.end_class && e2.fixed_end_count == ends.fixed_end_count &&
              null_end_class(p) == null_end_class(g);
    for (std::size_t i = 0; 2 * i <= depth; ++i) ok = ok && frontier_count(p, i) == frontier_count(g, 2 * i);
    return std::pair{ok, std::string("square: ") + to_string(e2.end_class)};
  }));
  return out;
}

// ---------------------------------------------------------------------------

struct Report {
  EndReport ends;
  Cardinality null_ends = Cardinality::Empty;
  GammaPlusFiniteness gamma_plus;
  std::optional<RankSequence> ranks;
  std::optional<RaySpec> ray;
  std::optional<MultSequence> ray_sequence;
  std::optional<SequenceClass> flags;
  std::optional<InverseLimit> ray_limit;
  std::vector<OracleCheck> oracle_checks;
};

inline Report full_report(const GermGraph& g, std::size_t depth, long long height,
                          std::size_t ceiling = kDefaultCeiling) {
  Report r;
  r.ends = classify_ends(g);
  r.null_ends = null_end_class(g);
  r.gamma_plus = gamma_plus_is_finite(g);
  if (r.ends.fixed_end_count == 1) r.ranks = pro_h1_fixed_end(g, depth, ceiling);
  r.ray = default_ray(g);
  if (r.ray) {
    r.ray_sequence = pro_pi1_ray(g, *r.ray);
    r.flags = classify_mult(*r.ray_sequence);
    r.ray_limit = inverse_limit_mult(*r.ray_sequence);
  }
  r.oracle_checks = oracle_battery(g, depth, height, ceiling);
  return r;
}

}  // namespace modelspace
