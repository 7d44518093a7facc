#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "oracles.hpp"

namespace {

const std::string kCli = GZC_CLI;

int cli(const std::string& args, std::string& out) { return oracle::run("'" + kCli + "' " + args, out); }

int lines(const std::string& s, bool skip_comments = true) {
  std::istringstream is(s);
  std::string l;
  int n = 0;
  while (std::getline(is, l))
    if (!(skip_comments && !l.empty() && l[0] == '#')) ++n;
  return n;
}

int stderr_status(const std::string& args, std::string& err) {
  return oracle::run("'" + kCli + "' " + args + " 2>&1 >/dev/null", err, false);
}

}  // namespace

TEST(Cli, StrataTsv) {
  std::string out;
  ASSERT_EQ(cli("strata --family GL --type 0:1,1:1 --format tsv", out), 0);
  EXPECT_EQ(lines(out), 2);
  EXPECT_EQ(out.rfind("# word", 0), 0u);
}

TEST(Cli, PositionalTypeVector) {
  std::string a, b;
  ASSERT_EQ(cli("strata --family GL 1,2", a), 0);
  ASSERT_EQ(cli("strata --family GL --type 0:1,1:2", b), 0);
  EXPECT_EQ(a, b);
  EXPECT_EQ(lines(a), 3);
}

TEST(Cli, Bt1Json) {
  std::string out;
  ASSERT_EQ(cli("bt1 --height 3 --dim 1 --format json", out), 0);
  auto j = nlohmann::json::parse(out);
  std::vector<int> dims;
  for (auto& c : j["classes"]) dims.push_back(c["aut_dim"]);
  EXPECT_EQ(dims, (std::vector<int>{2, 1, 0}));
}

TEST(Cli, SiegelJson) {
  std::string out;
  ASSERT_EQ(cli("strata --family CSp --type 0:2,1:2 --d 1 --format json", out), 0);
  auto j = nlohmann::json::parse(out);
  EXPECT_EQ(j["strata"].size(), 4u);
}

TEST(Cli, InvalidTypeNamesTheCondition) {
  std::string err;
  EXPECT_EQ(stderr_status("strata --family Sp --type 0:1,1:1", err), 1);
  EXPECT_NE(err.find("n_i ≠ n_{−i}"), std::string::npos) << err;
}

TEST(Cli, ExitCodes) {
  std::string out;
  EXPECT_EQ(cli("bt1 --height 20 --dim 3", out), 2);
  EXPECT_EQ(cli("classify --type 0:2,1:2 --q 2", out), 2);
  EXPECT_EQ(cli("strata --bogus", out), 1);
  EXPECT_EQ(cli("strata --family XY --type 0:1", out), 1);
  EXPECT_EQ(cli("--help", out), 0);
  EXPECT_EQ(cli("bt1 --height 3", out), 1);
}

TEST(Cli, ClassifyAndAut) {
  std::string out;
  ASSERT_EQ(cli("classify --type 0:1,1:2 --q 2", out), 0);
  EXPECT_EQ(lines(out), 3);
  ASSERT_EQ(cli("aut --family GL --type 0:1,1:2 --format json", out), 0);
  EXPECT_NO_THROW(nlohmann::json::parse(out));
  EXPECT_NE(cli("aut --family GL --type 0:1,1:2 --format dot", out), 0);
}

TEST(Cli, OutputFileMatchesStdout) {
  std::string out, dummy;
  auto path = std::filesystem::temp_directory_path() / "gzc_cli_test.dot";
  ASSERT_EQ(cli("strata --family O --type -1:1,0:2,1:1 --format dot", out), 0);
  ASSERT_EQ(cli("strata --family O --type -1:1,0:2,1:1 --format dot -o '" + path.string() + "'", dummy), 0);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), out);
  EXPECT_TRUE(dummy.empty());
  std::filesystem::remove(path);
}

TEST(Cli, Deterministic) {
  for (std::string args : {"strata --family CO --type 0:1,1:2,2:1 --d 2 --format json", "bt1 --height 6 --dim 3 --format dot",
                           "aut --family U --type 0:1,1:2"}) {
    std::string a, b;
    ASSERT_EQ(cli(args, a), 0) << args;
    ASSERT_EQ(cli(args, b), 0);
    EXPECT_EQ(a, b);
  }
}

TEST(Cli, Selftest) {
  std::string out;
  EXPECT_EQ(cli("selftest", out), 0);
  EXPECT_EQ(out.find("FAIL"), std::string::npos) << out;
}
