#pragma once

// Command-line front end. Results go to `out`, diagnostics to `err`.
// Exit codes: 0 success, 1 domain violation, 2 usage error, 3 size ceiling.

#include "dot.hpp"
#include "report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace modelspace::cli {

enum ExitCode : int { kOk = 0, kDomain = 1, kUsage = 2, kSize = 3 };

struct CliConfig {
  std::string subcommand;
  std::string input;
  std::size_t depth = 4;
  long long height = 4;
  std::string format = "text";
  std::size_t ceiling = kDefaultCeiling;
  std::optional<std::size_t> power;
  std::vector<std::size_t> interval;
};

namespace detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read " + path);
  buf << f.rdbuf();
  return buf.str();
}

inline GermGraph load_valid(const CliConfig& c, std::istream& in) {
  auto g = parse_germ(read_input(c.input, in));
  auto rep = validate_germ(g);
  if (!rep.ok()) {
    std::string msg = "invalid germ:";
    for (const auto& v : rep.violations) msg += "\n  [" + v.rule + "] " + v.message;
    throw DomainError(msg);
  }
  return g;
}

inline nlohmann::ordered_json tree_json(const TruncatedTree& t) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["depth"] = t.depth;
  auto& nodes = j["nodes"] = nlohmann::ordered_json::array();
  for (const auto& n : t.nodes) {
    nlohmann::ordered_json x;
    x["id"] = n.id;
    x["tier"] = n.tier;
    x["parent"] = n.parent ? nlohmann::ordered_json(*n.parent) : nlohmann::ordered_json(nullptr);
    x["label"] = n.label ? modelspace::detail::big_json(*n.label) : nlohmann::ordered_json(nullptr);
    x["vertex"] = t.name_of(n.id);
    x["positive"] = n.positive;
    nodes.push_back(std::move(x));
  }
  return j;
}

inline nlohmann::ordered_json tree_json(const ColoredTree& t) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  auto& nodes = j["nodes"] = nlohmann::ordered_json::array();
  for (const auto& n : t.nodes) {
    nlohmann::ordered_json x;
    x["id"] = n.id;
    x["tier"] = n.tier;
    x["parent"] = n.parent ? nlohmann::ordered_json(*n.parent) : nlohmann::ordered_json(nullptr);
    x["color"] = to_string(n.color);
    x["vertex"] = t.names.at(n.germ_vertex);
    x["residue"] = modelspace::detail::big_json(n.residue);
    nodes.push_back(std::move(x));
  }
  return j;
}

template <class Tree>
void emit_tree(const Tree& t, const std::string& format, std::ostream& out) {
  if (format == "dot") out << emit_dot(t);
  else if (format == "json") out << tree_json(t).dump(2) << '\n';
  else out << emit_text(t);
}

inline int cmd_validate(const CliConfig& c, std::istream& in, std::ostream& out) {
  auto g = parse_germ(read_input(c.input, in));
  auto rep = validate_germ(g);
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["schema"] = kReportSchema;
    j["ok"] = rep.ok();
    auto& vs = j["violations"] = nlohmann::ordered_json::array();
    for (const auto& v : rep.violations) {
      nlohmann::ordered_json x;
      x["rule"] = v.rule;
      x["message"] = v.message;
      x["vertex"] = v.vertex ? nlohmann::ordered_json(g.vertices.at(*v.vertex)) : nlohmann::ordered_json(nullptr);
      x["edge"] = v.edge ? nlohmann::ordered_json(*v.edge) : nlohmann::ordered_json(nullptr);
      vs.push_back(std::move(x));
    }
    out << j.dump(2) << '\n';
  } else if (rep.ok()) {
    out << "ok\n";
  } else {
    for (const auto& v : rep.violations) out << "violation [" << v.rule << "]: " << v.message << '\n';
  }
  return rep.ok() ? kOk : kDomain;
}

inline int cmd_classify(const CliConfig& c, std::istream& in, std::ostream& out) {
  auto g = load_valid(c, in);
  auto r = full_report(g, c.depth, c.height, c.ceiling);
  if (c.format == "json") out << report_json(r).dump(2) << '\n';
  else out << report_text(r);
  return kOk;
}

inline int cmd_oracle(const CliConfig& c, std::istream& in, std::ostream& out) {
  auto g = load_valid(c, in);
  auto checks = oracle_battery(g, c.depth, c.height, c.ceiling);
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["schema"] = kReportSchema;
    j["agree"] = all_agree(checks);
    auto& arr = j["oracle_checks"] = nlohmann::ordered_json::array();
    for (const auto& x : checks) arr.push_back({{"name", x.name}, {"status", to_string(x.status)}, {"detail", x.detail}});
    out << j.dump(2) << '\n';
  } else {
    for (const auto& x : checks) out << x.name << ": " << to_string(x.status) << " (" << x.detail << ")\n";
    out << (all_agree(checks) ? "all checks agree\n" : "DISAGREEMENT\n");
  }
  return all_agree(checks) ? kOk : kDomain;
}

inline int cmd_reduce(const CliConfig& c, std::istream& in, std::ostream& out) {
  if (c.power.has_value() == !c.interval.empty()) throw UsageError("reduce needs exactly one of --power or --interval");
  auto g = load_valid(c, in);
  if (c.power) {
    auto p = germ_power_paths(g, *c.power, c.ceiling);
    if (c.format == "dot") {
      out << emit_dot(truncate(p.germ, c.depth, c.ceiling));
    } else if (c.format == "json") {
      nlohmann::ordered_json j;
      j["schema"] = kReportSchema;
      j["germ"] = render_germ(p.germ);
      j["paths"] = p.paths;
      out << j.dump(2) << '\n';
    } else {
      out << render_germ(p.germ);
    }
    return kOk;
  }
  auto t = elementary_reduction(truncate(g, c.depth, c.ceiling), c.interval[0], c.interval[1]);
  emit_tree(t, c.format, out);
  return kOk;
}

}  // namespace detail

/// Runs one command line. `in` backs the "-" input path.
inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Model spaces of labeled trees: ends, pro-groups at infinity, and cell-complex oracles", "modelspace"};
  app.require_subcommand(1);
  CliConfig c;
  std::string literal;

  auto common = [&](CLI::App* sub, bool trees) {
    sub->add_option("input", c.input, "germ file, or - for standard input")->required();
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember(trees ? std::vector<std::string>{"text", "json", "dot"}
                                    : std::vector<std::string>{"text", "json"}));
    sub->add_option("--depth", c.depth, "truncation depth")->check(CLI::Range(std::size_t{1}, std::size_t{64}));
    sub->add_option("--height", c.height, "cover height bound")->check(CLI::Range(1LL, 64LL));
    sub->add_option("--ceiling", c.ceiling, "size ceiling for explicit constructions")
        ->check(CLI::Range(std::size_t{1000}, std::numeric_limits<std::size_t>::max()));
  };
  auto* validate = app.add_subcommand("validate", "check a germ file");
  common(validate, false);
  auto* classify = app.add_subcommand("classify", "end classification report");
  common(classify, false);
  auto* unfold = app.add_subcommand("unfold", "truncated model tree");
  common(unfold, true);
  auto* lambda = app.add_subcommand("lambda", "truncated clone tree");
  common(lambda, true);
  auto* reduce = app.add_subcommand("reduce", "germ power or interval reduction");
  common(reduce, true);
  auto* power_opt = reduce->add_option("--power", c.power, "block size m")->check(CLI::PositiveNumber);
  reduce->add_option("--interval", c.interval, "tiers I J")->expected(2)->excludes(power_opt);
  auto* oracle = app.add_subcommand("oracle", "cross-check battery");
  common(oracle, false);
  auto* proseq = app.add_subcommand("proseq", "classify a sequence literal such as prefix:3,0;cycle:2,1");
  proseq->add_option("literal", literal, "sequence literal")->required();
  proseq->add_option("--format", c.format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (validate->parsed()) return detail::cmd_validate(c, in, out);
    if (classify->parsed()) return detail::cmd_classify(c, in, out);
    if (oracle->parsed()) return detail::cmd_oracle(c, in, out);
    if (reduce->parsed()) return detail::cmd_reduce(c, in, out);
    if (unfold->parsed()) {
      auto g = detail::load_valid(c, in);
      detail::emit_tree(truncate(g, c.depth, c.ceiling), c.format, out);
      return kOk;
    }
    if (lambda->parsed()) {
      auto g = detail::load_valid(c, in);
      detail::emit_tree(wedge_expansion(truncate(g, c.depth, c.ceiling), c.ceiling), c.format, out);
      return kOk;
    }
    if (proseq->parsed()) {
      auto s = parse_sequence(literal);
      auto cls = classify_mult(s);
      if (c.format == "json") {
        nlohmann::ordered_json j;
        j["schema"] = kReportSchema;
        j["sequence"] = render_sequence(s);
        j["flags"] = flags_json(cls);
        j["inverse_limit"] = to_string(inverse_limit_mult(s));
        out << j.dump(2) << '\n';
      } else {
        out << "sequence: " << render_sequence(s) << '\n';
        out << "flags: " << flags_text(cls) << '\n';
        out << "inverse_limit: " << to_string(inverse_limit_mult(s)) << '\n';
      }
      return kOk;
    }
  } catch (const detail::UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kDomain;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const SizeError& e) {
    err << "size ceiling: " << e.what() << '\n';
    return kSize;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kDomain;
  }
  err << "error: no subcommand\n";
  return kUsage;
}

}  // namespace modelspace::cli
