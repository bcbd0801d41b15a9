#pragma once

// Text and JSON renderings of classification reports.

#include "classify.hpp"

#include <json.hpp>

#include <sstream>

namespace modelspace {

inline constexpr int kReportSchema = 1;

namespace detail {

inline nlohmann::ordered_json big_json(const BigInt& v) {
  if (fits_int64(v)) return static_cast<long long>(v);
  return to_string(v);
}

inline std::string render_ray(const RaySpec& r) {
  auto join = [](const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  std::string s;
  if (!r.prefix.empty()) s = "prefix:" + join(r.prefix) + ";";
  return s + "cycle:" + join(r.cycle);
}

inline std::string bond_word(const BondMark& b) {
  if (!b.verified) return "unchecked";
  return *b.verified ? "onto" : "not-onto";
}

}  // namespace detail

inline nlohmann::ordered_json flags_json(const SequenceClass& c) {
  nlohmann::ordered_json j;
  j["pro_trivial"] = c.pro_trivial;
  j["semistable"] = c.semistable;
  j["pro_mono"] = c.pro_mono;
  j["stable"] = c.stable;
  return j;
}

inline std::string flags_text(const SequenceClass& c) {
  std::ostringstream o;
  o << std::boolalpha << "pro_trivial=" << c.pro_trivial << " semistable=" << c.semistable
    << " pro_mono=" << c.pro_mono << " stable=" << c.stable;
  return o.str();
}

inline nlohmann::ordered_json report_json(const Report& r) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["end_class"] = to_string(r.ends.end_class);
  j["fixed_ends"] = r.ends.fixed_end_count;
  j["gamma_plus_finite"] = r.gamma_plus.finite;
  j["null_ends"] = to_string(r.null_ends);
  if (r.ranks) {
    auto& ranks = j["ranks"] = nlohmann::ordered_json::array();
    for (const auto& n : r.ranks->ranks) ranks.push_back(detail::big_json(n));
    auto& bonds = j["bonds"] = nlohmann::ordered_json::array();
    for (const auto& b : r.ranks->bonds) bonds.push_back(detail::bond_word(b));
  } else {
    j["ranks"] = nullptr;
  }
  if (r.ray_sequence) {
    j["ray"] = detail::render_ray(*r.ray);
    j["ray_sequence"] = render_sequence(*r.ray_sequence);
    j["flags"] = flags_json(*r.flags);
    j["inverse_limit"] = to_string(*r.ray_limit);
  } else {
    j["ray_sequence"] = nullptr;
    j["flags"] = nullptr;
  }
  auto& rat = j["rationale"] = nlohmann::ordered_json::array();
  for (const auto& x : r.ends.rationale) rat.push_back({{"claim", x.claim}, {"rule", x.rule}});
  auto& checks = j["oracle_checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.oracle_checks)
    checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
  return j;
}

inline std::string report_text(const Report& r) {
  std::ostringstream o;
  o << "end_class: " << to_string(r.ends.end_class) << '\n';
  o << "fixed_ends: " << r.ends.fixed_end_count << '\n';
  o << "gamma_plus_finite: " << (r.gamma_plus.finite ? "true" : "false");
  if (r.gamma_plus.finite) o << " (longest positive path " << *r.gamma_plus.bound << ")";
  o << '\n';
  o << "null_ends: " << to_string(r.null_ends) << '\n';
  if (r.ranks) {
    o << "ranks: ";
    for (std::size_t i = 0; i < r.ranks->ranks.size(); ++i) o << (i ? "," : "") << r.ranks->ranks[i];
    o << "\nbonds: ";
    for (std::size_t i = 0; i < r.ranks->bonds.size(); ++i) o << (i ? "," : "") << detail::bond_word(r.ranks->bonds[i]);
    o << '\n';
  }
  if (r.ray_sequence) {
    o << "ray: " << detail::render_ray(*r.ray) << '\n';
    o << "ray_sequence: " << render_sequence(*r.ray_sequence) << '\n';
    o << "flags: " << flags_text(*r.flags) << '\n';
    o << "inverse_limit: " << to_string(*r.ray_limit) << '\n';
  }
  o << "rationale:\n";
  for (const auto& x : r.ends.rationale) o << "  " << x.claim << ": " << x.rule << '\n';
  o << "oracle_checks:\n";
  for (const auto& c : r.oracle_checks) o << "  " << c.name << ": " << to_string(c.status) << " (" << c.detail << ")\n";
  return o.str();
}

}  // namespace modelspace
