#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "commands.hpp"
#include "jrp/instance_file.hpp"
#include "jrp/qubo.hpp"

namespace jrp::cli {
namespace {

const std::string kSample = JRP_DATA_DIR "/two_band_example.json";

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "jrp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("jrp_cli_test_" + name);
}

TEST(CliTest, SolvesSampleInstance) {
  const auto r = call({"solve", "--instance", kSample, "--solver", "exact", "--no-carry"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("moves: 4 across 2 band(s)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("w4: a4 -> a3"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("dropped: a1"), std::string::npos) << r.out;
}

TEST(CliTest, WritesReport) {
  const auto path = temp("report.json");
  const auto r = call({"solve", "--instance", kSample, "--out", path.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::ifstream file(path);
  std::stringstream text;
  text << file.rdbuf();
  EXPECT_NE(text.str().find("\"final_assigned\""), std::string::npos);
  std::filesystem::remove(path);
}

TEST(CliTest, FullSolveUsesOneBand) {
  const auto r = call({"solve", "--instance", kSample, "--full"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("across 1 band(s)"), std::string::npos) << r.out;
}

TEST(CliTest, GenerateThenSolve) {
  const auto path = temp("generated.json");
  auto g = call({"generate", "--jobs", "12", "--seed", "5", "--out", path.string()});
  ASSERT_EQ(g.code, kOk) << g.err;
  EXPECT_EQ(load_instance(path).job_count(), 12u);
  auto s = call({"solve", "--instance", path.string(), "--bands", "3", "--seed", "2"});
  EXPECT_EQ(s.code, kOk) << s.err;
  EXPECT_NE(s.out.find("across 3 band(s)"), std::string::npos) << s.out;
  std::filesystem::remove(path);

  const auto a = call({"generate", "--seed", "8"});
  const auto b = call({"generate", "--seed", "8"});
  EXPECT_EQ(a.out, b.out);
}

TEST(CliTest, EmptyVacantsInstance) {
  const auto path = temp("empty.json");
  std::ofstream(path) << R"({"priority_mode": "continuous",
    "weights": {"c_priority": 1, "c_affinity": 1},
    "assigned": [{"job": "a1", "agent": "w1", "priority": 0.5}],
    "vacants": [],
    "affinity_counts": [{"job": "a1", "agent": "w1", "count": 1}]})";
  const auto r = call({"solve", "--instance", path.string()});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("moves: 0"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(CliTest, ExitCodes) {
  EXPECT_EQ(call({"solve", "--instance", "/nonexistent/instance.json"}).code, kInputError);
  EXPECT_EQ(call({"solve"}).code, kInputError);
  EXPECT_EQ(call({"frobnicate"}).code, kInputError);
  EXPECT_EQ(call({"solve", "--instance", kSample, "--sweeps", "0"}).code, kInputError);
  EXPECT_EQ(call({"generate", "--vacancy-fraction", "1.5"}).code, kInputError);
  EXPECT_EQ(call({"solve", "--instance", kSample, "--bands", "5"}).code, kInputError);
  const auto cap =
      call({"solve", "--instance", kSample, "--solver", "exact", "--max-exact-vars", "3"});
  EXPECT_EQ(cap.code, kCapacityError);
  EXPECT_NE(cap.err.find("error"), std::string::npos);
  EXPECT_EQ(call({"--help"}).code, kOk);
}

TEST(CliTest, QuboExport) {
  const auto r = call({"qubo-export", "--instance", kSample});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::istringstream in(r.out);
  const auto q = read_coefficients(in);
  EXPECT_GT(q.size(), 0u);
  std::istringstream header(r.out);
  std::size_t n = 0;
  header >> n;
  EXPECT_EQ(n, q.size());
}

TEST(CliTest, BenchmarkTable) {
  const auto r = call({"benchmark", "--jobs", "8", "--bands", "1,2", "--reps", "2",
                       "--sweeps", "50", "--restarts", "2", "--no-timing"});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  EXPECT_EQ(count, 3);  // header plus one row per D
}

TEST(CliTest, BinaryExitStatus) {
  const std::string cli = JRP_CLI_PATH;
  const auto status = [&](const std::string& args) {
    const int raw = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("solve --instance " + kSample), kOk);
  EXPECT_EQ(status("solve --instance /nonexistent.json"), kInputError);
  EXPECT_EQ(status("solve --instance " + kSample + " --solver exact --max-exact-vars 2"),
            kCapacityError);
}

}  // namespace
}  // namespace jrp::cli
