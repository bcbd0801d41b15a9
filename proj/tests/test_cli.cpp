#include "modelspace/cli.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "modelspace");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int code = modelspace::cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

std::string germ(const std::string& name) { return std::string(GERM_DIR) + "/" + name + ".germ"; }

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST(Cli, ClassifySingleLoop) {
  auto r = run({"classify", germ("bs2")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "end_class: OneEnded\n"));
  EXPECT_TRUE(contains(r.out, "ranks: 0,1,3,7,15\n"));
  EXPECT_TRUE(contains(r.out, "fixed_ends: 1\n"));
  EXPECT_TRUE(contains(r.out, "ray_sequence: cycle:2\n"));
  EXPECT_TRUE(r.err.empty());
}

TEST(Cli, ClassifyJsonSchema) {
  auto r = run({"classify", germ("bs2"), "--format", "json", "--depth", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::ordered_json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  for (const char* key : {"end_class", "fixed_ends", "gamma_plus_finite", "null_ends", "ranks", "ray_sequence", "flags",
                          "oracle_checks"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["end_class"], "OneEnded");
  EXPECT_EQ(j["flags"]["semistable"], false);
  EXPECT_EQ(j["flags"]["pro_mono"], true);
  EXPECT_EQ(j["ranks"].size(), 4u);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys.front(), "schema");
  EXPECT_EQ(keys[1], "end_class");
}

TEST(Cli, TrivialGermHasNoRanks) {
  auto r = run({"classify", germ("trivial"), "--format", "json"});
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::ordered_json::parse(r.out);
  EXPECT_EQ(j["end_class"], "TwoEnded");
  EXPECT_TRUE(j["ranks"].is_null());
}

TEST(Cli, OutputIsByteIdentical) {
  for (const char* fmt : {"text", "json"}) {
    auto a = run({"classify", germ("two_loops_23"), "--format", fmt, "--depth", "3"});
    auto b = run({"classify", germ("two_loops_23"), "--format", fmt, "--depth", "3"});
    EXPECT_EQ(a.out, b.out);
  }
  EXPECT_EQ(run({"lambda", germ("bs3"), "--format", "dot"}).out, run({"lambda", germ("bs3"), "--format", "dot"}).out);
}

TEST(Cli, Validate) {
  auto ok = run({"validate", germ("bs2")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "ok\n");
  auto bad = run({"validate", germ("bad_nullclosure")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_TRUE(contains(bad.out, "null-closure"));
  auto j = run({"validate", germ("bad_nullclosure"), "--format", "json"});
  EXPECT_EQ(nlohmann::ordered_json::parse(j.out)["ok"], false);
}

TEST(Cli, Oracle) {
  auto r = run({"oracle", germ("bs2"), "--depth", "3", "--height", "3"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "all checks agree"));
}

TEST(Cli, DotOutputs) {
  auto triv = run({"unfold", germ("trivial"), "--format", "dot", "--depth", "2"});
  EXPECT_EQ(triv.code, 0);
  EXPECT_TRUE(contains(triv.out, "digraph"));
  EXPECT_FALSE(contains(triv.out, "->"));

  auto gamma = run({"unfold", germ("bs2"), "--format", "dot", "--depth", "2"});
  std::istringstream lines(gamma.out);
  std::size_t nodes = 0, solid = 0;
  for (std::string l; std::getline(lines, l);) {
    if (contains(l, "->")) {
      solid += contains(l, "style=solid") && contains(l, "label=\"2\"");
    } else if (contains(l, "[label=")) {
      ++nodes;
    }
  }
  EXPECT_EQ(nodes, 3u);
  EXPECT_EQ(solid, 2u);

  auto lam = run({"lambda", germ("bs2"), "--format", "dot", "--depth", "2"});
  std::istringstream ll(lam.out);
  std::size_t lnodes = 0, black = 0, gray = 0;
  for (std::string l; std::getline(ll, l);) {
    if (contains(l, "->")) {
      black += contains(l, "color=black");
      gray += contains(l, "color=gray");
    } else if (contains(l, "[label=")) {
      ++lnodes;
    }
  }
  EXPECT_EQ(lnodes, 7u);
  EXPECT_EQ(black, 2u);
  EXPECT_EQ(gray, 4u);
}

TEST(Cli, Reduce) {
  auto p = run({"reduce", germ("two_loops_23"), "--power", "2"});
  EXPECT_EQ(p.code, 0);
  EXPECT_TRUE(contains(p.out, "edge A A 9"));
  auto i = run({"reduce", germ("bs2"), "--interval", "0", "2", "--format", "json"});
  ASSERT_EQ(i.code, 0) << i.err;
  auto j = nlohmann::ordered_json::parse(i.out);
  EXPECT_EQ(j["depth"], 3);
  EXPECT_EQ(j["nodes"][1]["label"], 4);
  EXPECT_EQ(run({"reduce", germ("bs2")}).code, 2);
  EXPECT_EQ(run({"reduce", germ("bs2"), "--power", "2", "--interval", "0", "2"}).code, 2);
  EXPECT_EQ(run({"reduce", germ("bs2"), "--interval", "2", "2"}).code, 1);
}

TEST(Cli, Proseq) {
  auto r = run({"proseq", "prefix:3,0;cycle:2,1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "pro_trivial=false"));
  EXPECT_TRUE(contains(r.out, "inverse_limit: 0"));
  EXPECT_EQ(run({"proseq", "cycle:"}).code, 1);
  auto one = run({"proseq", "cycle:1", "--format", "json"});
  EXPECT_EQ(nlohmann::ordered_json::parse(one.out)["inverse_limit"], "Z");
}

TEST(Cli, StandardInput) {
  auto r = run({"classify", "-", "--depth", "2"}, oracle::read_file(germ("bs3")));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "ranks: 0,2,8\n"));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"classify"}).code, 2);
  EXPECT_EQ(run({"classify", "/nonexistent/x.germ"}).code, 2);
  EXPECT_EQ(run({"classify", germ("bs2"), "--depth", "0"}).code, 2);
  EXPECT_EQ(run({"classify", germ("bs2"), "--ceiling", "10"}).code, 2);
  EXPECT_EQ(run({"classify", germ("bs2"), "--format", "dot"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"classify", "-"}, "root A\nedge A B 1\n").code, 1);
  auto big = run({"unfold", germ("two_loops_23"), "--depth", "30", "--ceiling", "1000"});
  EXPECT_EQ(big.code, 3);
  EXPECT_TRUE(contains(big.err, "tier"));
  EXPECT_EQ(run({"--help"}).code, 0);
}
