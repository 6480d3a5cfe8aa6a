// Acceptance checks. Prints one PASS/FAIL line per criterion with its measured runtime and
// exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "anp/cli.hpp"
#include "anp/judgment.hpp"
#include "anp/model_io.hpp"
#include "anp/network.hpp"
#include "anp/supermatrix.hpp"
#include "fixtures.hpp"

namespace {

using namespace anp;
using testing::Rng;

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool condition, const std::string& what) {
    if (!condition && ok) detail = what;
    ok = ok && condition;
  }
};

struct Criterion {
  std::string name;
  double budget_ms;  // 0 when the criterion has no runtime bound
  std::function<Check()> run;
};

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "anp-acceptance";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

Check random_index_table() {
  Check c;
  const double table[] = {0.00, 0.00, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49, 1.51, 1.48, 1.56, 1.57, 1.58};
  for (std::size_t n = 1; n <= 15; ++n) {
    c.expect(random_index(n) == table[n - 1], "RI mismatch at n=" + std::to_string(n));
  }
  return c;
}

Check published_ranking_fixture(const DecisionNetwork& net) {
  Check c;
  const std::vector<std::pair<std::string, double>> published = {
      {"e11", 0.11865}, {"e31", 0.11059}, {"e14", 0.10030}, {"e34", 0.08396}, {"e12", 0.07767},
      {"e32", 0.07765}, {"e33", 0.07105}, {"e35", 0.07021}, {"e36", 0.06992}, {"e13", 0.05769},
      {"e21", 0.03859}, {"e22", 0.03467}, {"e23", 0.03166}, {"e24", 0.03032}, {"e25", 0.02708},
  };
  const NodeIndex index(net);
  Supermatrix limit{index.ids(), network_blocks(net), Eigen::MatrixXd::Zero(19, 19), Stage::limit};
  double published_sum = 0;
  for (const auto& [id, w] : published) {
    limit.entries(static_cast<Eigen::Index>(index.at(NodeId(id))), 0) = w;
    published_sum += w;
  }
  const auto ranking = extract_rank(limit, net);
  c.expect(ranking.elements.size() == 15, "expected 15 elements");
  double sum = 0;
  for (std::size_t i = 0; i < ranking.elements.size() && i < 15; ++i) {
    c.expect(ranking.elements[i].id.str() == published[i].first, "rank " + std::to_string(i + 1) + " is " +
                                                                     ranking.elements[i].id.str());
    c.expect(ranking.elements[i].rank == i + 1, "rank numbering");
    c.expect(std::abs(ranking.elements[i].weight - published[i].second) <= 5e-5, "weight moved by normalization");
    sum += ranking.elements[i].weight;
  }
  c.expect(std::abs(sum - 1.0) <= 5e-5, "normalized weights do not sum to 1");
  c.expect(std::abs(published_sum - 1.0) <= 5e-5, "published weights drift beyond 5e-5");
  return c;
}

Check consistent_recovery() {
  Check c;
  Rng rng(20240101);
  for (int trial = 0; trial < 1000 && c.ok; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial) % 7;
    const auto w = rng.simplex(n, 9.0);
    const auto m = consistent_matrix(testing::context_of_size(n), w);
    const auto gm = priority_vector_gm(m);
    const auto eig = priority_vector_eig(m);
    for (std::size_t i = 0; i < n; ++i) {
      c.expect(std::abs(gm.weights[i] - w[i]) <= 1e-9, "geometric mean misses planted weight");
      c.expect(std::abs(eig.weights[i] - w[i]) <= 1e-9, "eigenvector misses planted weight");
    }
    c.expect(std::abs(gm.lambda_max - static_cast<double>(n)) <= 1e-9, "lambda_max != n");
    c.expect(std::abs(eig.lambda_max - static_cast<double>(n)) <= 1e-9, "eigen lambda_max != n");
    const auto report = consistency(gm, n);
    c.expect(std::abs(report.ci) <= 1e-9, "CI != 0");
    c.expect(report.pass, "consistent matrix fails the gate");
  }
  return c;
}

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

// Uniformly random upper triangles over the 17 scale values, kept when CR <= 0.1.
Check oracle_equivalence() {
  Check c;
  Rng rng(777);
  int acceptable = 0;
  int attempts = 0;
  int off_by_more = 0;
  int argmax_differs = 0;
  double worst = 0.0;
  while (acceptable < 500 && attempts < 200000) {
    ++attempts;
    const std::size_t n = rng.index(3, 8);
    const auto m = testing::random_saaty_matrix(rng, n);
    const auto gm = priority_vector_gm(m);
    const auto eig = priority_vector_eig(m);
    c.expect(gm.lambda_max >= static_cast<double>(n) - 1e-9, "geometric-mean lambda below n");
    c.expect(eig.lambda_max >= static_cast<double>(n) - 1e-9, "eigenvector lambda below n");
    if (consistency(eig, n).cr > 0.1) continue;
    ++acceptable;
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(gm.weights[i] - eig.weights[i]));
    worst = std::max(worst, diff);
    off_by_more += diff > 0.01 ? 1 : 0;
    argmax_differs += argmax(gm.weights) != argmax(eig.weights) ? 1 : 0;
  }
  c.expect(acceptable >= 500, "fewer than 500 acceptable matrices generated");
  c.expect(off_by_more == 0 && argmax_differs == 0, "disagreement");
  char summary[200];
  std::snprintf(summary, sizeof summary,
                "%d acceptable of %d; %d differ by > 0.01 (max %.4f), %d differ in argmax", acceptable, attempts,
                off_by_more, worst, argmax_differs);
  if (c.detail.empty() || c.detail == "disagreement") c.detail = summary;
  return c;
}

Check limit_correctness() {
  Check c;
  Rng rng(4242);
  for (int trial = 0; trial < 200 && c.ok; ++trial) {
    const std::size_t n = rng.index(2, 20);
    const Eigen::MatrixXd p = testing::random_primitive(rng, n, trial % 2 == 1);
    Supermatrix w;
    for (std::size_t i = 0; i < n; ++i) w.index.emplace_back("n" + std::to_string(i));
    w.blocks.assign(n, 0);
    w.entries = p;
    w.stage = Stage::weighted;
    const auto r = limit_supermatrix(w);
    const auto pi = testing::stationary_oracle(p);
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      c.expect((r.matrix.entries.col(j) - pi).cwiseAbs().maxCoeff() <= 1e-8, "limit column differs from oracle");
    }
    c.expect(r.max_column_drift <= 1e-9, "intermediate power drifted from column-stochastic");
  }
  Eigen::MatrixXd cycle(2, 2);
  cycle << 0, 1, 1, 0;
  const auto r = limit_supermatrix(Supermatrix{{NodeId("a"), NodeId("b")}, {0, 0}, cycle, Stage::weighted});
  c.expect(r.mode == ConvergenceMode::cesaro, "2-cycle not detected");
  c.expect((r.matrix.entries.array() - 0.5).abs().maxCoeff() <= 1e-12, "2-cycle limit is not uniform 0.5");
  return c;
}

Check planted_end_to_end(const DecisionNetwork& net, const std::filesystem::path& dir) {
  Check c;
  const auto planted = testing::plant_weights(net, 7);
  const auto judgments = testing::planted_judgments(net, planted, {"x1", "x2"});
  const auto model_path = dir / "planted.model.json";
  const auto judgments_path = dir / "planted.judgments.json";
  const auto report_path = dir / "planted.report.json";
  std::ofstream(model_path) << model_to_json(net).dump(2);
  std::ofstream(judgments_path) << judgments_to_json(judgments).dump(1);

  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::cmd_run({model_path, judgments_path, report_path, false}, out, err);
  c.expect(code == 0, "cmd_run exited " + std::to_string(code) + ": " + err.str());
  if (!c.ok) return c;

  const auto report = nlohmann::json::parse(slurp(report_path));
  for (const auto& check : report["consistency"]) {
    c.expect(check["pass"].get<bool>() && check["cr"].get<double>() <= 0.1,
             "context " + check["context"].get<std::string>() + " fails the gate");
  }
  std::map<std::string, std::vector<std::string>> order;
  for (const auto& e : report["elements"]) order[e["cluster"]].push_back(e["id"]);
  for (const auto& [cluster, expected] : planted.expected_order) {
    std::vector<std::string> want;
    for (const auto& id : expected) want.push_back(id.str());
    c.expect(order[cluster.str()] == want, "cluster " + cluster.str() + " order differs from planted");
  }
  return c;
}

Check questionnaire_enumeration(const DecisionNetwork& net) {
  Check c;
  const auto contexts = comparison_contexts(net);
  c.expect(contexts.size() == 19, "expected 19 contexts, got " + std::to_string(contexts.size()));
  c.expect(question_count(contexts) == 108, "expected 108 questions, got " + std::to_string(question_count(contexts)));
  return c;
}

Check determinism(const std::filesystem::path& dir) {
  Check c;
  const auto model = testing::models_dir() / "railway.model.json";
  const auto judgments = testing::data_dir() / "railway.judgments.json";
  std::ostringstream sink;
  const int a = cli::cmd_run({model, judgments, dir / "a.json", false}, sink, sink);
  const int b = cli::cmd_run({model, judgments, dir / "b.json", false}, sink, sink);
  c.expect(a == 0 && b == 0, "cmd_run failed: " + sink.str());
  const auto first = slurp(dir / "a.json");
  c.expect(!first.empty() && first == slurp(dir / "b.json"), "reports differ between runs");
  return c;
}

}  // namespace

int main() {
  const auto net = testing::railway();
  const auto dir = scratch_dir();

  const std::vector<Criterion> criteria = {
      {"random index table reproduces all 15 values", 1, random_index_table},
      {"published railway ranking fixture orders 1-15 and sums to 1 within 5e-5", 10, [&] { return published_ranking_fixture(net); }},
      {"consistent-matrix recovery, 1000 cases n=2..8", 5000, consistent_recovery},
      {"geometric mean vs eigenvector oracle, 500 acceptable matrices", 10000, oracle_equivalence},
      {"limit vs power-iteration oracle, 200 primitive matrices, 2-cycle", 10000, limit_correctness},
      {"planted weights end to end through cmd_run", 1000, [&] { return planted_end_to_end(net, dir); }},
      {"railway questionnaire has 19 contexts and 108 questions", 10, [&] { return questionnaire_enumeration(net); }},
      {"cmd_run reports are byte-identical across runs", 0, [&] { return determinism(dir); }},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    Check result;
    const auto start = std::chrono::steady_clock::now();
    try {
      result = criterion.run();
    } catch (const std::exception& e) {
      result.ok = false;
      result.detail = std::string("exception: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    bool pass = result.ok;
    std::string detail = result.detail;
    if (criterion.budget_ms > 0 && ms >= criterion.budget_ms) {
      pass = false;
      detail = "over the " + std::to_string(static_cast<int>(criterion.budget_ms)) + " ms budget";
    }
    char timing[64];
    if (criterion.budget_ms > 0) {
      std::snprintf(timing, sizeof timing, "%.3f ms < %.0f ms", ms, criterion.budget_ms);
    } else {
      std::snprintf(timing, sizeof timing, "%.3f ms", ms);
    }
    std::cout << (pass ? "PASS" : "FAIL") << "  " << criterion.name << "  [" << timing << "]";
    if (!detail.empty()) std::cout << "  " << detail;
    std::cout << '\n';
    failures += pass ? 0 : 1;
  }
  std::filesystem::remove_all(dir);
  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
            << '\n';
  return failures == 0 ? 0 : 1;
}
