#pragma once

// Graphviz and plain-text renderings of truncations and clone trees. Nodes
// appear in id order (breadth-first for both tree builders).

#include "coset.hpp"

#include <sstream>

namespace modelspace {

namespace detail {
inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}
}  // namespace detail

inline std::string emit_dot(const TruncatedTree& t) {
  std::ostringstream o;
  o << "digraph gamma {\n";
  for (const auto& n : t.nodes) o << "  n" << n.id << " [label=" << detail::dot_quote(t.name_of(n.id)) << "];\n";
  for (const auto& n : t.nodes) {
    if (!n.parent) continue;
    o << "  n" << *n.parent << " -> n" << n.id << " [label=\"" << *n.label << "\", style="
      << (n.positive ? "solid" : "dashed") << "];\n";
  }
  o << "}\n";
  return o.str();
}

inline std::string emit_dot(const ColoredTree& t) {
  std::ostringstream o;
  o << "digraph lambda {\n";
  for (const auto& n : t.nodes) {
    std::string label = t.names.at(n.germ_vertex);
    if (n.color != EdgeColor::Dashed) label += ":" + to_string(n.residue);
    o << "  n" << n.id << " [label=" << detail::dot_quote(label) << "];\n";
  }
  for (const auto& n : t.nodes) {
    if (!n.parent) continue;
    o << "  n" << *n.parent << " -> n" << n.id;
    if (n.color == EdgeColor::Dashed) o << " [style=dashed, color=black];\n";
    else o << " [style=solid, color=" << to_string(n.color) << "];\n";
  }
  o << "}\n";
  return o.str();
}

// One node per line: id tier parent label name positive
inline std::string emit_text(const TruncatedTree& t) {
  std::ostringstream o;
  o << "# id tier parent label vertex positive\n";
  for (const auto& n : t.nodes) {
    o << n.id << ' ' << n.tier << ' ' << (n.parent ? std::to_string(*n.parent) : "-") << ' '
      << (n.label ? to_string(*n.label) : "-") << ' ' << t.name_of(n.id) << ' ' << (n.positive ? 1 : 0) << '\n';
  }
  return o.str();
}

// id tier parent color vertex residue
inline std::string emit_text(const ColoredTree& t) {
  std::ostringstream o;
  o << "# id tier parent color vertex residue\n";
  for (const auto& n : t.nodes) {
    o << n.id << ' ' << n.tier << ' ' << (n.parent ? std::to_string(*n.parent) : "-") << ' ' << to_string(n.color)
      << ' ' << t.names.at(n.germ_vertex) << ' ' << n.residue << '\n';
  }
  return o.str();
}

}  // namespace modelspace
