#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "mtdm/error.hpp"
#include "mtdm/problem_file.hpp"
#include "mtdm/report.hpp"
#include "support.hpp"

using namespace mtdm;

namespace {

DominanceRelation relation_of(const std::vector<std::string>& names,
                              const std::vector<std::vector<bool>>& dom) {
  DominanceRelation rel;
  rel.acts = names;
  rel.dominates = dom;
  return rel;
}

const char* kSingle = R"({
  "states": ["a", "b"],
  "credal": {"kind": "simplex"},
  "actions": [{"name": "only", "values": [[0.5, 0.2], [0.9, 0.4]]}],
  "num_cardinal": 1,
  "deltas": "auto"
})";

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("mtdm_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

int cli(const std::string& args) {
  const std::string cmd = std::string("\"") + MTDM_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST(ProblemFile, RoundTripIsIdempotent) {
  const auto pf = mtdm::testing::fixture();
  const auto once = serialize_problem(pf);
  const auto twice = serialize_problem(parse_problem(once));
  EXPECT_EQ(once, twice);
  const auto again = parse_problem(twice);
  EXPECT_EQ(again.values, pf.values);
  EXPECT_EQ(again.action_names, pf.action_names);

  const char* constrained = R"({
    "states": ["x", "y"],
    "credal": {"kind": "constraints", "entries": [{"coeffs": [1, 0], "lo": 0.25, "hi": null}]},
    "actions": [{"name": "A", "values": [[0.1], [0.2]]}],
    "num_cardinal": 0,
    "deltas": [0, 0.1]
  })";
  const auto c = parse_problem(constrained);
  EXPECT_EQ(serialize_problem(parse_problem(serialize_problem(c))), serialize_problem(c));
  EXPECT_EQ(to_credal_set(c).extreme_points().size(), 2u);
}

TEST(ProblemFile, ValidationMessages) {
  auto pf = mtdm::testing::fixture();
  pf.values[0][2][1] = 1.2;
  try {
    parse_problem(serialize_problem(pf));
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("A1"), std::string::npos) << msg;
    EXPECT_NE(msg.find("state s3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("target 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("1.2"), std::string::npos) << msg;
  }
  try {
    parse_problem("{\n  \"states\": [\"s1\",\n}");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_problem(R"({"states": ["a"], "credal": {"kind": "nope"},
      "actions": [{"name": "A", "values": [[0.1]]}], "num_cardinal": 0})"),
               InputError);
  EXPECT_THROW(parse_problem(R"({"states": ["a"], "credal": {"kind": "ordered"},
      "actions": [{"name": "A", "values": [[0.1]]}], "num_cardinal": 2})"),
               InputError);
}

TEST(Dot, Format) {
  const auto anti = relation_of({"a", "b"}, {{true, false}, {false, true}});
  EXPECT_EQ(emit_dot(anti), "digraph hasse {\n  \"a\";\n  \"b\";\n}\n");
  const auto chain = relation_of({"a", "b", "c"},
                                 {{true, true, true}, {false, true, true}, {false, false, true}});
  EXPECT_EQ(emit_dot(chain),
            "digraph hasse {\n  \"a\";\n  \"b\";\n  \"c\";\n  \"a\" -> \"b\";\n  \"b\" -> \"c\";\n}\n");
  const auto tie = relation_of({"a", "b", "c"},
                               {{true, true, true}, {true, true, true}, {false, false, true}});
  EXPECT_EQ(emit_dot(tie), "digraph hasse {\n  \"a,b\";\n  \"c\";\n  \"a,b\" -> \"c\";\n}\n");
  EXPECT_EQ(dot_file_name(0.0), "hasse_delta_0.dot");
  EXPECT_EQ(dot_file_name(0.25), "hasse_delta_0.25.dot");
}

TEST(Run, SingleAction) {
  const auto rep = run(parse_problem(kSingle));
  ASSERT_EQ(rep.per_delta.size(), 3u);
  const std::vector<std::string> only = {"only"};
  EXPECT_EQ(rep.uniformly_optimal, only);
  EXPECT_EQ(rep.pareto, only);
  for (const auto& d : rep.per_delta) {
    EXPECT_EQ(d.maximal, only);
    EXPECT_EQ(d.undominated, only);
  }
}

TEST(Run, AutoDeltasAndRejection) {
  const auto pf = parse_problem(kSingle);
  const auto rep = run(pf);
  EXPECT_EQ(rep.per_delta[0].delta, 0.0);
  EXPECT_EQ(rep.per_delta[1].delta, 0.5 * rep.delta_max);
  EXPECT_NEAR(rep.per_delta[2].delta, rep.delta_max, 1e-12);

  RunOptions too_big;
  too_big.deltas = std::vector<double>{rep.delta_max + 0.01};
  try {
    run(pf, too_big);
    FAIL() << "expected InconsistencyError";
  } catch (const InconsistencyError& e) {
    std::ostringstream os;
    os << e.what();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", rep.delta_max);
    EXPECT_NE(os.str().find(std::string(buf).substr(0, 5)), std::string::npos) << os.str();
  }
}

TEST(Run, ReportJsonIsSorted) {
  const auto rep = run(parse_problem(kSingle));
  const auto json = report_json(rep);
  EXPECT_NE(json.find("\"uno\""), std::string::npos);
  EXPECT_EQ(json, report_json(rep));
}

TEST(Cli, ExitCodes) {
  const auto good = scratch("good.json");
  write(good, kSingle);
  EXPECT_EQ(cli("run \"" + good.string() + "\""), 0);
  EXPECT_EQ(cli("validate \"" + good.string() + "\""), 0);

  auto pf = parse_problem(kSingle);
  pf.values[0][1][0] = 1.2;
  auto text = serialize_problem(pf);
  const auto bad = scratch("bad.json");
  write(bad, text);
  EXPECT_EQ(cli("run \"" + bad.string() + "\""), 1);
  EXPECT_EQ(cli("run \"" + scratch("missing.json").string() + "\""), 1);
  EXPECT_EQ(cli("run \"" + good.string() + "\" --delta 0.9"), 2);
  EXPECT_EQ(cli("run \"" + good.string() + "\" --delta abc"), 1);
  EXPECT_EQ(cli("frobnicate"), 1);

  const auto dot = scratch("dot");
  const auto report = scratch("report.json");
  EXPECT_EQ(cli("run \"" + good.string() + "\" --delta 0,0.1 --dot \"" + dot.string() +
                "\" --report \"" + report.string() + "\" --oracle 50 --seed 3"),
            0);
  EXPECT_TRUE(std::filesystem::exists(dot / "hasse_delta_0.dot"));
  EXPECT_TRUE(std::filesystem::exists(dot / "hasse_delta_0.1.dot"));
  EXPECT_TRUE(std::filesystem::exists(report));
  std::filesystem::remove_all(scratch("").parent_path());
}
