#pragma once

// Germ graphs: finite rooted edge-labeled multigraphs whose path unfolding is
// a model tree. Edge declaration order fixes child order in the unfolding.

#include "bigint.hpp"
#include "error.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace modelspace {

struct GermEdge {
  std::size_t src = 0;
  std::size_t dst = 0;
  BigInt label = 0;

  bool null() const { return label == 0; }
  friend bool operator==(const GermEdge&, const GermEdge&) = default;
};

struct GermGraph {
  std::vector<std::string> vertices;
  std::size_t root = 0;
  std::vector<GermEdge> edges;

  friend bool operator==(const GermGraph&, const GermGraph&) = default;

  bool trivial() const { return vertices.size() == 1 && edges.empty(); }

  std::optional<std::size_t> index_of(std::string_view name) const {
    auto it = std::find(vertices.begin(), vertices.end(), name);
    if (it == vertices.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vertices.begin());
  }

  // Edge indices leaving v, in declaration order.
  std::vector<std::size_t> out_edges(std::size_t v) const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (edges[e].src == v) out.push_back(e);
    return out;
  }

  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(vertices.size());
    for (std::size_t e = 0; e < edges.size(); ++e) adj[edges[e].src].push_back(e);
    return adj;
  }
};

struct Violation {
  std::string rule;  // "structure", "reachability", "leafless", "null-closure"
  std::string message;
  std::optional<std::size_t> vertex;
  std::optional<std::size_t> edge;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

namespace detail {

inline bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  auto head = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
  if (!head(s.front())) return false;
  return std::all_of(s.begin() + 1, s.end(), tail);
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

// Vertices reachable from the root, via any edges.
inline std::vector<bool> reachable(const GermGraph& g) {
  std::vector<bool> seen(g.vertices.size(), false);
  if (g.root >= g.vertices.size()) return seen;
  auto adj = g.adjacency();
  std::vector<std::size_t> stack{g.root};
  seen[g.root] = true;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto e : adj[v]) {
      auto w = g.edges[e].dst;
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace detail

inline GermGraph parse_germ(std::string_view text) {
  struct PendingEdge {
    std::string src, dst;
    BigInt label;
    std::size_t line;
  };
  GermGraph g;
  std::unordered_map<std::string, std::size_t> index;
  std::optional<std::string> root_name;
  bool root_redeclared = false;
  std::vector<PendingEdge> pending;

  auto declare = [&](std::string_view name, std::size_t line) {
    std::string key(name);
    if (index.count(key)) throw ParseError(line, "duplicate vertex " + key);
    index.emplace(key, g.vertices.size());
    g.vertices.push_back(key);
  };

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto tok = detail::split_ws(line);
    if (tok.empty() || tok.front().front() == '#') continue;

    if (tok[0] == "root") {
      if (tok.size() != 2) throw ParseError(lineno, "expected `root <name>`");
      if (root_name) throw ParseError(lineno, "duplicate root directive");
      if (!detail::valid_name(tok[1])) throw ParseError(lineno, "invalid name " + std::string(tok[1]));
      if (index.count(std::string(tok[1]))) {
        // `vertex X` seen earlier, now `root X`: promote, no new vertex.
        if (root_redeclared) throw ParseError(lineno, "duplicate vertex " + std::string(tok[1]));
        root_redeclared = true;
      } else {
        declare(tok[1], lineno);
      }
      root_name = std::string(tok[1]);
    } else if (tok[0] == "vertex") {
      if (tok.size() != 2) throw ParseError(lineno, "expected `vertex <name>`");
      if (!detail::valid_name(tok[1])) throw ParseError(lineno, "invalid name " + std::string(tok[1]));
      if (root_name && *root_name == tok[1] && !root_redeclared) {
        root_redeclared = true;
        continue;
      }
      declare(tok[1], lineno);
    } else if (tok[0] == "edge") {
      if (tok.size() != 4) throw ParseError(lineno, "expected `edge <src> <dst> <label>`");
      for (int k = 1; k <= 2; ++k)
        if (!detail::valid_name(tok[k])) throw ParseError(lineno, "invalid name " + std::string(tok[k]));
      std::string_view lab = tok[3];
      std::uint64_t value = 0;
      auto [ptr, ec] = std::from_chars(lab.data(), lab.data() + lab.size(), value);
      if (lab.front() == '-' || lab.front() == '+')
        throw ParseError(lineno, "label must be a nonnegative integer: " + std::string(lab));
      if (ec == std::errc::result_out_of_range)
        throw ParseError(lineno, "label out of range: " + std::string(lab));
      if (ec != std::errc() || ptr != lab.data() + lab.size())
        throw ParseError(lineno, "label must be a nonnegative integer: " + std::string(lab));
      pending.push_back({std::string(tok[1]), std::string(tok[2]), BigInt(value), lineno});
    } else {
      throw ParseError(lineno, "unknown directive " + std::string(tok[0]));
    }
  }
  if (!root_name) throw ParseError(0, "missing root directive");
  g.root = index.at(*root_name);
  for (auto& pe : pending) {
    auto s = index.find(pe.src);
    if (s == index.end()) throw ParseError(pe.line, "undeclared endpoint " + pe.src);
    auto d = index.find(pe.dst);
    if (d == index.end()) throw ParseError(pe.line, "undeclared endpoint " + pe.dst);
    g.edges.push_back({s->second, d->second, pe.label});
  }
  return g;
}

// Canonical writer; parse_germ(render_germ(g)) == g.
inline std::string render_germ(const GermGraph& g) {
  std::ostringstream out;
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    out << (v == g.root ? "root " : "vertex ") << g.vertices[v] << '\n';
  for (const auto& e : g.edges)
    out << "edge " << g.vertices[e.src] << ' ' << g.vertices[e.dst] << ' ' << e.label << '\n';
  return out.str();
}

/// Checks every germ invariant and reports all violations found.
///
/// Rules: structure (indices in range, names unique), reachability (every
/// vertex reachable from the root), leafless (reachable vertices have an
/// out-edge, except the trivial one-vertex germ), null-closure (a target of a
/// reachable 0-labeled edge has only 0-labeled out-edges).
inline ValidationReport validate_germ(const GermGraph& g) {
  ValidationReport rep;
  const auto n = g.vertices.size();
  if (n == 0) {
    rep.violations.push_back({"structure", "germ has no vertices", std::nullopt, std::nullopt});
    return rep;
  }
  if (g.root >= n) {
    rep.violations.push_back({"structure", "root index out of range", std::nullopt, std::nullopt});
    return rep;
  }
  bool bad_edge = false;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& ed = g.edges[e];
    if (ed.src >= n || ed.dst >= n) {
      rep.violations.push_back({"structure", "edge endpoint out of range", std::nullopt, e});
      bad_edge = true;
    }
    if (ed.label < 0) rep.violations.push_back({"structure", "negative label", std::nullopt, e});
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!detail::valid_name(g.vertices[v]))
      rep.violations.push_back({"structure", "invalid vertex name '" + g.vertices[v] + "'", v, std::nullopt});
    for (std::size_t w = v + 1; w < n; ++w)
      if (g.vertices[v] == g.vertices[w])
        rep.violations.push_back({"structure", "duplicate vertex name " + g.vertices[v], w, std::nullopt});
  }
  if (bad_edge) return rep;

  auto reach = detail::reachable(g);
  for (std::size_t v = 0; v < n; ++v)
    if (!reach[v])
      rep.violations.push_back({"reachability", "vertex " + g.vertices[v] + " is unreachable from the root", v,
                                std::nullopt});

  if (!g.trivial()) {
    std::vector<std::size_t> outdeg(n, 0);
    for (const auto& e : g.edges) ++outdeg[e.src];
    for (std::size_t v = 0; v < n; ++v)
      if (reach[v] && outdeg[v] == 0)
        rep.violations.push_back({"leafless", "vertex " + g.vertices[v] + " has no outgoing edge", v, std::nullopt});
  }

  std::vector<bool> null_target(n, false);
  for (const auto& e : g.edges)
    if (reach[e.src] && e.null()) null_target[e.dst] = true;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& ed = g.edges[e];
    if (null_target[ed.src] && !ed.null())
      rep.violations.push_back({"null-closure",
                                "vertex " + g.vertices[ed.src] +
                                    " is the target of a 0-labeled edge but has an out-edge labeled " +
                                    ed.label.str(),
                                ed.src, e});
  }
  return rep;
}

inline void require_valid(const GermGraph& g) {
  auto rep = validate_germ(g);
  if (!rep.ok()) throw DomainError("invalid germ: " + rep.violations.front().message);
}

}  // namespace modelspace
