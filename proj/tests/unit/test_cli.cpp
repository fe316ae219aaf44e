#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

const std::string kCli = GINV_CLI_PATH;
const std::string kDir = GINV_SCRATCH_DIR;

std::string path_of(const std::string& name) { return kDir + "/cli_" + name; }

void write_file(const std::string& name, const std::string& text) { std::ofstream(path_of(name)) << text; }

std::string read_file(const std::string& name) {
  std::ifstream in(path_of(name));
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Runs the CLI with stdout captured into a scratch file; returns the exit code.
int run(const std::string& args, const std::string& out, const std::string& env = "") {
  const std::string cmd = env + " '" + kCli + "' " + args + " > '" + path_of(out) + "' 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    write_file("e12.json", R"({"shape":[2],"blocks":[[[[0,0],[1,0]],[[0,0],[0,0]]]]})");
    write_file("bad.json", R"({"shape":[2],"blocks":[[[[1,0]]]]})");
    write_file("p1.json", R"({"shape":[2],"blocks":[[[[1,0],[0,0]],[[0,0],[0,0]]]]})");
    write_file("one.json", R"({"shape":[2],"blocks":[[[[1,0],[0,0]],[[0,0],[1,0]]]]})");
  }
};

TEST_F(Cli, PinvOfNilpotent) {
  ASSERT_EQ(run("pinv '" + path_of("e12.json") + "' --no-timestamp", "pinv.json"), 0);
  const auto j = nlohmann::json::parse(read_file("pinv.json"));
  EXPECT_EQ(j["summary"]["failed"], 0);
  bool saw_pinv = false;
  for (const auto& r : j["records"]) {
    if (r["check"] == "pinv") {
      saw_pinv = true;
      EXPECT_EQ(r["elements"]["pinv"]["blocks"][0][1][0][0], 1.0);
      EXPECT_EQ(r["elements"]["pinv"]["blocks"][0][0][1][0], 0.0);
    } else {
      EXPECT_LE(r["values"]["residual"].get<double>(), 1e-8);
    }
  }
  EXPECT_TRUE(saw_pinv);
}

TEST_F(Cli, FinitePairGroupoidPasses) {
  EXPECT_EQ(run("check-groupoid --kind pair --points 5 --seed 1 --no-timestamp", "pair.json"), 0);
}

TEST_F(Cli, ValidationErrorsExitWithTwoAndAStructuredRecord) {
  EXPECT_EQ(run("pinv '" + path_of("bad.json") + "' --no-timestamp", "bad_out.json"), 2);
  const auto j = nlohmann::json::parse(read_file("bad_out.json"));
  EXPECT_EQ(j["records"][0]["error"]["category"], "validation");
  EXPECT_EQ(run("pinv '" + path_of("missing.json") + "'", "missing_out.json"), 2);
  EXPECT_EQ(run("--no-such-flag", "flag_out.txt"), 2);
  EXPECT_EQ(run("check-groupoid --kind nonsense", "kind_out.txt"), 2);
}

TEST_F(Cli, OrbitErrorIsACheckFailure) {
  EXPECT_EQ(run("path '" + path_of("p1.json") + "' '" + path_of("one.json") + "' --no-timestamp", "path.json"), 1);
  const auto j = nlohmann::json::parse(read_file("path.json"));
  EXPECT_EQ(j["records"][0]["error"]["category"], "orbit");
}

TEST_F(Cli, SeedFromEnvironmentMatchesFlag) {
  ASSERT_EQ(run("orbits --kind ginv --n 3 --no-timestamp --seed 4", "flag.json"), 0);
  ASSERT_EQ(run("orbits --kind ginv --n 3 --no-timestamp", "env.json", "GINV_SEED=4"), 0);
  EXPECT_EQ(read_file("flag.json"), read_file("env.json"));
  ASSERT_EQ(run("orbits --kind ginv --n 3 --no-timestamp --seed 5", "other.json"), 0);
  EXPECT_NE(read_file("flag.json"), read_file("other.json"));
}

TEST_F(Cli, TimestampAndFormats) {
  ASSERT_EQ(run("check-groupoid --kind action --n 2 --samples 20", "stamped.json"), 0);
  EXPECT_TRUE(nlohmann::json::parse(read_file("stamped.json")).contains("timestamp"));
  ASSERT_EQ(run("check-groupoid --kind action --n 2 --samples 20 --format csv", "plain.csv"), 0);
  EXPECT_EQ(read_file("plain.csv").rfind("suite,check,anchor,verdict,value\n", 0), 0u);
  ASSERT_EQ(run("check-groupoid --kind action --n 2 --samples 20 --no-timestamp --out '" + path_of("direct.json") + "'",
                "empty.txt"),
            0);
  EXPECT_TRUE(read_file("empty.txt").empty());
  EXPECT_FALSE(nlohmann::json::parse(read_file("direct.json")).contains("timestamp"));
}

TEST_F(Cli, GeometryAndContinuity) {
  EXPECT_EQ(run("geometry --kind partial_isometry --n 3 --count 4 --no-timestamp", "geo.json"), 0);
  EXPECT_EQ(run("geometry --kind action --n 2 --count 3 --no-timestamp", "act.json"), 0);
  EXPECT_EQ(run("continuity --shape 2,1 --families 6 --no-timestamp", "cont.json"), 0);
  EXPECT_EQ(run("continuity --base '" + path_of("e12.json") + "' --no-timestamp", "demo.json"), 0);
  EXPECT_EQ(run("continuity --base '" + path_of("one.json") + "' --no-timestamp", "demo_bad.json"), 2);
}

TEST_F(Cli, ToleranceOverridesAreEchoedAndValidated) {
  ASSERT_EQ(run("pinv '" + path_of("e12.json") + "' --no-timestamp --tol-residual 1e-6", "tol.json"), 0);
  EXPECT_EQ(nlohmann::json::parse(read_file("tol.json"))["config"]["tol.residual_tol"], "1e-06");
  EXPECT_EQ(run("pinv '" + path_of("e12.json") + "' --tol-rank-factor -1", "neg.txt"), 2);
}

}  // namespace
