#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace {

const std::string kBin = ORBITS_BIN;
const std::string kFixtures = ORBITS_FIXTURE_DIR;

std::string kb() { return kFixtures + "/four_facts_kb.json"; }
std::string ans() { return kFixtures + "/four_facts_answers.json"; }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "orbits_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

int run(const std::string& args) {
  const std::string cmd = kBin + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> answers_in(const std::filesystem::path& p) {
  return nlohmann::json::parse(slurp(p))["answers"].get<std::vector<std::string>>();
}

}  // namespace

TEST(Cli, FilterExample) {
  const auto out = scratch("iar_c.json");
  ASSERT_EQ(run("filter --sem iar --repair c --algo iarcauses --kb " + kb() + " --ans " + ans() +
                " --out " + out.string()),
            0);
  EXPECT_EQ(answers_in(out), (std::vector<std::string>{"q(a)"}));
  const auto doc = nlohmann::json::parse(slurp(out));
  EXPECT_TRUE(doc.contains("schema_version"));
  EXPECT_TRUE(doc.contains("timings_ms"));
  EXPECT_TRUE(doc.contains("solver_stats"));

  ASSERT_EQ(run("filter --sem iar --repair p1 --algo simple --kb " + kb() + " --ans " + ans() +
                " --out " + out.string()),
            0);
  EXPECT_TRUE(answers_in(out).empty());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("filter --sem brave --repair p1 --algo iarcauses --kb " + kb() + " --ans " + ans()), 2);
  EXPECT_EQ(run("filter --sem ar --repair c --max p1 --kb " + kb() + " --ans " + ans()), 2);
  EXPECT_EQ(run("filter --sem nope --repair p1 --kb " + kb() + " --ans " + ans()), 2);
  EXPECT_EQ(run("filter --sem ar --repair p1 --kb /nonexistent.json --ans " + ans()), 1);
  EXPECT_EQ(run("frobnicate"), 2);
}

TEST(Cli, DumpCnf) {
  const auto cnf = scratch("psi.wcnf");
  ASSERT_EQ(run("filter --sem ar --repair p1 --kb " + kb() + " --ans " + ans() + " --dump-cnf " +
                cnf.string()),
            0);
  EXPECT_NE(slurp(cnf).find("p wcnf"), std::string::npos);
}

TEST(Cli, GenPriority) {
  const auto a = scratch("prio_a.json");
  const auto b = scratch("prio_b.json");
  ASSERT_EQ(run("genpriority --kb " + kb() + " --mode score --levels 1 --seed 4 --out " + a.string()), 0);
  EXPECT_TRUE(nlohmann::json::parse(slurp(a))["priority"].empty());
  ASSERT_EQ(run("genpriority --kb " + kb() + " --mode random --p 0 --seed 4 --out " + a.string()), 0);
  EXPECT_TRUE(nlohmann::json::parse(slurp(a))["priority"].empty());
  ASSERT_EQ(run("genpriority --kb " + kb() + " --mode random --p 0.7 --seed 9 --out " + a.string()), 0);
  ASSERT_EQ(run("genpriority --kb " + kb() + " --mode random --p 0.7 --seed 9 --out " + b.string()), 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_TRUE(nlohmann::json::parse(slurp(a)).contains("score_structured"));
  EXPECT_EQ(run("genpriority --kb " + kb() + " --mode score --levels 0"), 2);
}

TEST(Cli, GenInstance) {
  const auto k1 = scratch("gen_kb1.json"), a1 = scratch("gen_a1.json");
  const auto k2 = scratch("gen_kb2.json"), a2 = scratch("gen_a2.json");
  const std::string args = "geninstance --facts 6 --conflicts 7 --answers 3 --max-cause-size 2 --seed 5";
  ASSERT_EQ(run(args + " --kb-out " + k1.string() + " --ans-out " + a1.string()), 0);
  ASSERT_EQ(run(args + " --kb-out " + k2.string() + " --ans-out " + a2.string()), 0);
  EXPECT_EQ(slurp(k1), slurp(k2));
  EXPECT_EQ(slurp(a1), slurp(a2));
  EXPECT_EQ(run("geninstance --facts 3 --conflicts 4 --kb-out " + k1.string() + " --ans-out " +
                a1.string()),
            2);
}

TEST(Cli, Verify) {
  EXPECT_EQ(run("verify --trials 1 --kb " + kb() + " --ans " + ans()), 0);
  EXPECT_EQ(run("verify --trials 0 --mutate drop-acyc --kb " + kb() + " --ans " + ans()), 1);
  EXPECT_EQ(run("verify --trials 5 --mutate nonsense"), 2);
}

TEST(Cli, Bench) {
  const auto csv = scratch("bench.csv");
  ASSERT_EQ(run("bench --sem iar --repair c --algo simple,iarcauses --repeat 2 --kb " + kb() +
                " --ans " + ans() + " --out " + csv.string()),
            0);
  std::istringstream in(slurp(csv));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "semantics,repair,encoding,algorithm,preprocess_ms,filter_ms,result_count");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(line.substr(line.rfind(',') + 1), "1");
  }
  EXPECT_EQ(rows, 2);
}
