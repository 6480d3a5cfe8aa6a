#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "anp/error.hpp"
#include "anp/model_io.hpp"
#include "anp/pipeline.hpp"
#include "anp/report.hpp"
#include "fixtures.hpp"

namespace anp {
namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<NodeId> ranked_within(const RankedPriorities& ranking, const NodeId& cluster) {
  std::vector<NodeId> out;
  for (const auto& e : ranking.elements)
    if (e.cluster == cluster) out.push_back(e.id);
  return out;
}

class PlantedPipeline : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(PlantedPipeline, RecoversWithinClusterOrder) {
  const auto net = testing::railway();
  const auto planted = testing::plant_weights(net, GetParam());
  const auto judgments = testing::planted_judgments(net, planted, {"a", "b", "c"});
  const auto result = run_pipeline(net, judgments);
  for (const auto& c : result.contexts) EXPECT_TRUE(c.consistency.pass) << c.context.control.str();
  for (const auto& cluster : net.clusters) {
    EXPECT_EQ(ranked_within(result.ranking, cluster.id), planted.expected_order.at(cluster.id))
        << "cluster " << cluster.id.str();
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, PlantedPipeline, ::testing::Values(1, 2, 3, 7, 42, 1234));

TEST(Pipeline, ElementWeightsSumToOneAndCriteriaAreClusterSums) {
  const auto net = testing::railway();
  const auto result = run_pipeline(net, load_judgments(testing::data_dir() / "railway.judgments.json"));
  double total = 0;
  std::map<NodeId, double> by_cluster;
  for (const auto& e : result.ranking.elements) {
    total += e.weight;
    by_cluster[e.cluster] += e.weight;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  for (const auto& c : result.ranking.criteria) EXPECT_NEAR(c.weight, by_cluster.at(c.id), 1e-12);
  EXPECT_EQ(result.contexts.size(), 19u);
}

TEST(Pipeline, IsDeterministic) {
  const auto net = testing::railway();
  const auto judgments = load_judgments(testing::data_dir() / "railway.judgments.json");
  const auto a = dump_report(report_to_json(run_pipeline(net, judgments)));
  auto shuffled = judgments;
  std::reverse(shuffled.begin(), shuffled.end());
  const auto b = dump_report(report_to_json(run_pipeline(net, shuffled)));
  EXPECT_EQ(a, b);
}

TEST(Pipeline, MatchesGoldenReport) {
  const auto net = testing::railway();
  const auto judgments = load_judgments(testing::data_dir() / "railway.judgments.json");
  const auto report = dump_report(report_to_json(run_pipeline(net, judgments)));
  EXPECT_EQ(report, slurp(testing::data_dir() / "railway.report.json"));
}

TEST(Pipeline, IncompleteJudgmentsListEveryGap) {
  const auto net = testing::railway();
  auto judgments = testing::planted_judgments(net, testing::plant_weights(net, 1), {"a", "b"});
  judgments.erase(judgments.begin());  // expert a, goal, C1 vs C2
  try {
    run_pipeline(net, judgments);
    FAIL();
  } catch (const IncompleteError& e) {
    ASSERT_EQ(e.missing().size(), 1u);
    EXPECT_EQ(e.missing()[0].expert, "a");
    EXPECT_EQ(e.missing()[0].context, "goal");
    EXPECT_EQ(e.missing()[0].row, "C1");
    EXPECT_EQ(e.missing()[0].col, "C2");
  }
}

TEST(Pipeline, RejectsEmptyAndForeignJudgments) {
  const auto net = testing::railway();
  const auto contexts = comparison_contexts(net);
  try {
    check_complete(contexts, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_judgments);
  }
  auto judgments = testing::planted_judgments(net, testing::plant_weights(net, 1), {"a"});
  judgments.push_back({NodeId("nowhere"), NodeId("e11"), NodeId("e12"), SaatyValue(), "a"});
  try {
    check_complete(contexts, judgments);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unknown_context);
  }
}

TEST(Pipeline, InconsistentContextFailsTheGate) {
  const auto net = testing::railway();
  auto judgments = testing::planted_judgments(net, testing::plant_weights(net, 1), {"a"});
  // Make the goal matrix cyclic: C1 > C2 > C3 > C1, strongly.
  for (auto& j : judgments) {
    if (j.context.str() != "goal") continue;
    j.value = SaatyValue::from_string(j.row.str() == "C1" && j.col.str() == "C3" ? "1/9" : "9");
  }
  try {
    run_pipeline(net, judgments);
    FAIL();
  } catch (const GateFailure& e) {
    ASSERT_EQ(e.offending().size(), 1u);
    EXPECT_EQ(e.offending()[0].context, "goal");
    EXPECT_GT(e.offending()[0].cr, 0.1);
  }
}

TEST(Report, LayoutAndKeys) {
  const auto net = testing::railway();
  const auto result = run_pipeline(net, load_judgments(testing::data_dir() / "railway.judgments.json"));
  const auto doc = report_to_json(result);
  ASSERT_TRUE(doc.contains("criteria"));
  ASSERT_TRUE(doc.contains("elements"));
  ASSERT_TRUE(doc.contains("consistency"));
  ASSERT_TRUE(doc.contains("convergence"));
  EXPECT_EQ(doc["elements"].size(), 15u);
  EXPECT_EQ(doc["criteria"].size(), 3u);
  EXPECT_EQ(doc["consistency"].size(), 19u);
  const auto mode = doc["convergence"]["mode"].get<std::string>();
  EXPECT_TRUE(mode == "power" || mode == "cesaro");
  const auto& first = doc["elements"][0];
  EXPECT_EQ(first["rank"], 1);
  for (const char* key : {"id", "cluster", "weight", "rank"}) EXPECT_TRUE(first.contains(key)) << key;
  const std::string text = dump_report(doc);
  EXPECT_EQ(text.back(), '\n');
}

TEST(Report, RankingTableUsesFiveDecimals) {
  const auto net = testing::railway();
  RankedPriorities ranking;
  ranking.elements.push_back({NodeId("e11"), NodeId("C1"), "Prior knowledge", 0.118651234, 1});
  ranking.elements.push_back({NodeId("e31"), NodeId("C3"), "Challenge levels", 0.11059, 2});
  const auto table = format_ranking_table(ranking);
  EXPECT_NE(table.find("   1  e11  Prior knowledge   0.11865\n"), std::string::npos) << table;
  EXPECT_NE(table.find("   2  e31  Challenge levels  0.11059\n"), std::string::npos) << table;
}

TEST(Report, MatrixDumpUsesTwelveSignificantDigits) {
  Supermatrix m;
  m.entries = Eigen::MatrixXd(2, 2);
  m.entries << 1.0 / 3.0, 0, 2.0 / 3.0, 1;
  EXPECT_EQ(format_matrix(m), "0.333333333333 0\n0.666666666667 1\n");
}

}  // namespace
}  // namespace anp
