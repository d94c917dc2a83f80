#include "lmom/commands.hpp"
#include "lmom/config.hpp"
#include "lmom/output.hpp"

#include "json.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace lmom;

TEST(Output, JsonLines) {
  std::ostringstream os;
  RecordWriter w(os, OutputFormat::json_lines);
  Record r;
  r.add("name", "a\"b").add("n", 3).add("u", Field(u64{7})).add("x", 0.1).add("ok", true).add("q", make_rational(1, 14));
  w.write(r);
  EXPECT_EQ(os.str(), "{\"name\":\"a\\\"b\",\"n\":3,\"u\":7,\"x\":0.1,\"ok\":true,\"q\":\"1/14\"}\n");
  auto j = nlohmann::json::parse(os.str());
  EXPECT_EQ(j["q"], "1/14");
}

TEST(Output, DoublesUseFifteenDigits) {
  EXPECT_EQ(format_double(kPi), "3.14159265358979");
  EXPECT_EQ(format_double(1e-20), "1e-20");
  EXPECT_EQ(format_double(std::nan("")), "nan");
  std::ostringstream os;
  RecordWriter w(os, OutputFormat::json_lines);
  Record r;
  r.add("v", std::numeric_limits<double>::infinity());
  w.write(r);
  EXPECT_EQ(os.str(), "{\"v\":\"inf\"}\n");
}

TEST(Output, CsvHeaderPerSchema) {
  std::ostringstream os;
  RecordWriter w(os, OutputFormat::csv);
  Record a, b, c;
  a.add("p", 7).add("v", "x,y");
  b.add("p", 11).add("v", "z");
  c.add("q", 1);
  w.write(a);
  w.write(b);
  w.write(c);
  EXPECT_EQ(os.str(), "p,v\n7,\"x,y\"\n11,z\nq\n1\n");
}

TEST(Config, RoundTrip) {
  ExperimentConfig c;
  c.command = "moments compute";
  c.params = {{"p", "7"}, {"m", "2"}, {"nu", "4"}, {"pmin", "3"}, {"pmax", "100"}, {"tol", "1e-9"}};
  c.output = OutputFormat::csv;
  c.threads = 3;
  EXPECT_EQ(parse_config(serialize(c)), c);
  EXPECT_EQ(serialize(parse_config(serialize(c))), serialize(c));
}

TEST(Config, ParseCommentsAndErrors) {
  auto c = parse_config("# experiment\ncommand = ded sum\nc=2\n\nd = 7\n");
  EXPECT_EQ(c.command, "ded sum");
  EXPECT_EQ(c.get_int("d"), 7);
  EXPECT_THROW(parse_config("nonsense"), usage_error);
  EXPECT_THROW(parse_config("threads=0"), usage_error);
  EXPECT_THROW(parse_config("output=xml"), usage_error);
  EXPECT_THROW(c.get_int("missing"), usage_error);
  c.params["x"] = "abc";
  EXPECT_THROW(c.get_double("x"), usage_error);
}

TEST(Config, Validation) {
  ExperimentConfig c;
  c.command = "verify";
  c.params = {{"pmin", "10"}, {"pmax", "5"}};
  EXPECT_THROW(validate(c), usage_error);
  c.params = {{"tol", "0"}};
  EXPECT_THROW(validate(c), usage_error);
  c.params = {{"euler-tol", "-1"}};
  EXPECT_THROW(validate(c), usage_error);
  c.params = {{"lo", "3"}, {"hi", "3"}, {"tol", "1e-3"}};
  EXPECT_NO_THROW(validate(c));
}

namespace {
int run_cmd(const std::string& command, std::map<std::string, std::string> params, std::string& out, std::size_t threads = 1) {
  ExperimentConfig c;
  c.command = command;
  c.params = std::move(params);
  c.threads = threads;
  std::ostringstream os, err;
  int code = run(c, os, err);
  out = os.str();
  return code;
}
}  // namespace

TEST(Commands, InProcessRuns) {
  std::string out;
  EXPECT_EQ(run_cmd("ded sum", {{"c", "2"}, {"d", "7"}, {"method", "fast"}}, out), kExitOk);
  EXPECT_EQ(nlohmann::json::parse(out)["value"], "1/14");
  EXPECT_EQ(run_cmd("moments compute", {{"p", "7"}, {"m", "2"}, {"nu", "4"}}, out), kExitOk);
  EXPECT_NEAR(nlohmann::json::parse(out)["value"].get<double>(), std::pow(kPi, 4) / 49, 1e-9);
  EXPECT_EQ(run_cmd("lattice rho2", {{"lambda", "2"}, {"p", "7"}}, out), kExitOk);
  EXPECT_EQ(nlohmann::json::parse(out)["witness"], "-2 1");
  EXPECT_EQ(run_cmd("ded corr", {{"p", "7"}, {"k1", "1"}, {"k2", "1"}}, out), kExitOk);
  EXPECT_EQ(nlohmann::json::parse(out)["value"], "27/98");
}

TEST(Commands, ExitCodes) {
  std::string out;
  EXPECT_EQ(run_cmd("ded sum", {{"c", "2"}}, out), kExitUsage);
  EXPECT_EQ(run_cmd("ded sum", {{"c", "2"}, {"d", "4"}}, out), kExitUsage);
  EXPECT_EQ(run_cmd("no such", {}, out), kExitUsage);
  EXPECT_EQ(run_cmd("moments compute", {{"p", "8"}, {"m", "2"}, {"nu", "2"}}, out), kExitUsage);
  EXPECT_EQ(run_cmd("ded sum", {{"c", "2"}, {"d", "7"}, {"bogus", "1"}}, out), kExitUsage);
  EXPECT_EQ(run_cmd("disc star", {{"lambda", "2"}, {"p", "5003"}}, out), kExitFeasibility);
  EXPECT_EQ(run_cmd("farey product", {{"Q", "200"}, {"k", "2"}}, out), kExitFeasibility);
  EXPECT_EQ(run_cmd("verify", {{"group", "walum"}, {"pmax", "11"}}, out), kExitAssertion);
  EXPECT_EQ(run_cmd("verify", {{"group", "nothing"}}, out), kExitUsage);
}

TEST(Commands, OutputIndependentOfThreads) {
  for (auto [cmd, params] : std::vector<std::pair<std::string, std::map<std::string, std::string>>>{
           {"lattice exceptional", {{"D", "8"}, {"R", "6"}, {"lo", "3"}, {"hi", "3000"}}},
           {"moments compute", {{"p", "1009"}, {"m", "36"}, {"nu", "1.5"}}},
           {"verify", {{"group", "identities"}, {"pmax", "60"}}},
       }) {
    std::string one, four;
    EXPECT_EQ(run_cmd(cmd, params, one, 1), run_cmd(cmd, params, four, 4));
    EXPECT_EQ(one, four) << cmd;
  }
}
