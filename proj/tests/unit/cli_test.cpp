#include <gtest/gtest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "leechps/cli/app.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
  json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = leechps::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace

TEST(Cli, JordanTotient) {
  const auto r = run({"sums", "jordan", "--k", "4", "--n", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto d = r.doc();
  EXPECT_EQ(d["schemaVersion"], 1);
  EXPECT_EQ(d["op"], "sums.jordan");
  EXPECT_EQ(d["status"], "ok");
  EXPECT_DOUBLE_EQ(d["value"]["re"].get<double>(), 15.0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"sums", "kloosterman", "--a", "1", "--b", "1"}).code, 2);
  EXPECT_EQ(run({"sums", "kloosterman", "--a", "1", "--b", "1", "--n", "0"}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  const auto r = run({"lattice", "info", "--lattice", "d4"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.doc()["status"], "error");
  EXPECT_EQ(r.doc()["op"], "lattice.info");
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ResourceLimit) {
  const auto r = run({"--max-cosets", "10", "sums", "j", "--lattice", "e8", "--n", "7", "--method", "brute"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.doc()["status"], "error");
}

TEST(Cli, DeterministicOutputIsStable) {
  const std::vector<std::string> args = {"--deterministic", "sums",  "dirichlet", "--lattice", "ii11",
                                         "--lambda",        "0",     "--s",       "6",         "--cutoff",
                                         "200"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.find("runtimeMs"), std::string::npos);
}

TEST(Cli, CsvKloosterman) {
  const auto r = run({"--format", "csv", "sums", "kloosterman", "--a", "1", "--b", "1", "--n", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find('\n'), std::string::npos);
  EXPECT_EQ(r.out.find('{'), std::string::npos);
}

TEST(Cli, VerifyThetaOnE8) {
  const auto r = run({"--deterministic", "verify", "theta", "--lattice", "e8", "--qmax", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.doc()["result"]["allPass"].get<bool>());
}
