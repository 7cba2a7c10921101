#include <gtest/gtest.h>

#include <filesystem>
#include <json.hpp>
#include <random>

#include "jrp/errors.hpp"
#include "jrp/instance_file.hpp"
#include "oracles.hpp"

namespace jrp {
namespace {

const char* kMinimal = R"({
  "priority_mode": "continuous",
  "weights": {"c_priority": 1.0, "c_affinity": 0.5},
  "assigned": [{"job": "a1", "agent": "w1", "priority": 0.3}],
  "vacants": [{"job": "v1", "priority": 0.9}],
  "affinity_counts": [{"job": "v1", "agent": "w1", "count": 2},
                      {"job": "a1", "agent": "w1", "count": 1}]
})";

std::string error_of(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

TEST(InstanceFileTest, ParsesMinimalDocument) {
  const auto inst = parse_instance(kMinimal);
  EXPECT_EQ(inst.mode(), PriorityMode::Continuous);
  EXPECT_DOUBLE_EQ(inst.weights().affinity, 0.5);
  EXPECT_EQ(inst.agent_count(), 1u);
  EXPECT_EQ(inst.affinities().count(JobId{"v1"}, AgentId{"w1"}), 2u);
}

TEST(InstanceFileTest, RoundTrip) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto mode = trial % 2 ? PriorityMode::Discrete : PriorityMode::Continuous;
    const auto inst = testing::random_instance(rng, 4, 3, mode, 4, {0.7, 1.3});
    const auto text = serialize_instance(inst);
    EXPECT_EQ(parse_instance(text), inst);
    EXPECT_EQ(serialize_instance(parse_instance(text)), text);
  }
}

TEST(InstanceFileTest, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "jrp_instance_file_test.json";
  const auto inst = parse_instance(kMinimal);
  save_instance(path, inst);
  EXPECT_EQ(load_instance(path), inst);
  std::filesystem::remove(path);
  EXPECT_THROW(load_instance(path), InputError);
}

TEST(InstanceFileTest, SyntaxErrorReportsPosition) {
  const auto msg = error_of("{\n  \"priority_mode\": \"discrete\",\n  oops\n}");
  EXPECT_NE(msg.find("syntax error"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(InstanceFileTest, ContentErrorsNameTheField) {
  auto doc = nlohmann::json::parse(kMinimal);
  const auto with = [&](auto edit) {
    auto d = doc;
    edit(d);
    return error_of(d.dump());
  };
  EXPECT_NE(with([](auto& d) { d["assigned"][0]["priority"] = -1; }).find("assigned[0].priority"),
            std::string::npos);
  EXPECT_NE(with([](auto& d) { d["vacants"][0].erase("job"); }).find("vacants[0].job"),
            std::string::npos);
  EXPECT_NE(with([](auto& d) { d["priority_mode"] = "ordinal"; }).find("priority_mode"),
            std::string::npos);
  EXPECT_NE(with([](auto& d) { d["affinity_counts"][0]["count"] = -2; })
                .find("affinity_counts[0].count"),
            std::string::npos);
  EXPECT_NE(with([](auto& d) { d["weights"]["c_affinity"] = 0; }).find("c_affinity"),
            std::string::npos);
  EXPECT_FALSE(with([](auto& d) { d["affinity_counts"].push_back(d["affinity_counts"][0]); })
                   .empty());
  EXPECT_FALSE(with([](auto& d) { d.erase("assigned"); }).empty());
}

TEST(InstanceFileTest, AffinityCountsAreOptional) {
  auto doc = nlohmann::json::parse(kMinimal);
  doc.erase("affinity_counts");
  // Without counts the assigned pair has no history, which is rejected.
  EXPECT_THROW(parse_instance(doc.dump()), InputError);
}

TEST(InstanceFileTest, ReportListsEverything) {
  const auto inst = load_instance(JRP_DATA_DIR "/two_band_example.json");
  SolverConfig solver;
  solver.kind = SolverKind::Exact;
  const auto report = run(inst, std::nullopt, solver);
  const auto doc = nlohmann::json::parse(serialize_report(report, inst));
  for (const char* key : {"agents", "initial_vacants", "bands", "moves", "final_assigned",
                          "unfilled", "dropped", "alpha_estimate", "total_variables",
                          "largest_subproblem", "total_score"}) {
    EXPECT_TRUE(doc.contains(key)) << key;
  }
  EXPECT_EQ(doc["bands"].size(), 2u);
  EXPECT_EQ(doc["moves"].size(), report.moves.size());
  EXPECT_EQ(doc["final_assigned"].size(), 4u);
  EXPECT_NEAR(doc["total_score"].get<double>(), report.total_score, 1e-12);
}

}  // namespace
}  // namespace jrp
