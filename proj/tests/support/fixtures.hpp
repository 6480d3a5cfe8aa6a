#pragma once

// Shared test helpers: seeded generators, an independent stationary-vector oracle and the
// planted-weights judgment fixture for the railway model.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "anp/judgment.hpp"
#include "anp/model_io.hpp"
#include "anp/network.hpp"
#include "anp/saaty.hpp"

namespace anp::testing {

inline std::filesystem::path models_dir() { return ANP_MODELS_DIR; }
inline std::filesystem::path data_dir() { return ANP_TEST_DATA_DIR; }
inline DecisionNetwork railway() { return load_model(models_dir() / "railway.model.json"); }

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }

  // Positive weights summing to one, with log-uniform spread so ratios stay moderate.
  std::vector<double> simplex(std::size_t n, double spread = 3.0) {
    std::vector<double> w(n);
    for (auto& x : w) x = std::exp(uniform(-std::log(spread), std::log(spread)));
    const double s = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& x : w) x /= s;
    return w;
  }

  SaatyValue saaty() { return SaatyValue::all()[index(0, SaatyValue::all().size() - 1)]; }

  std::vector<std::size_t> permutation(std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), engine_);
    return p;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline ComparisonContext context_of_size(std::size_t n, const std::string& control = "ctx") {
  ComparisonContext ctx{NodeId(control), {}};
  for (std::size_t i = 0; i < n; ++i) ctx.peers.emplace_back("p" + std::to_string(i));
  return ctx;
}

// Reciprocal matrix with every upper entry drawn uniformly from the scale.
inline ComparisonMatrix random_saaty_matrix(Rng& rng, std::size_t n) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Ones(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = rng.saaty().value();
      a(j, i) = 1.0 / a(i, j);
    }
  }
  const auto ctx = context_of_size(n);
  return ComparisonMatrix(ctx.control, ctx.peers, a);
}

// Strictly positive column-stochastic matrix, optionally with a sparse pattern that keeps
// the diagonal (aperiodic) and a cycle through all states (irreducible), hence primitive.
inline Eigen::MatrixXd random_primitive(Rng& rng, std::size_t n, bool sparse) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const bool keep = !sparse || i == j || i == (j + 1) % n || rng.coin(0.2);
      if (keep) p(i, j) = rng.uniform(0.05, 1.0);
    }
    p.col(j) /= p.col(j).sum();
  }
  return p;
}

// Independent oracle: plain power iteration x <- P x from the uniform vector.
inline Eigen::VectorXd stationary_oracle(const Eigen::MatrixXd& p) {
  const auto n = p.rows();
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  for (int it = 0; it < 200000; ++it) {
    Eigen::VectorXd next = p * x;
    next /= next.sum();
    const double change = (next - x).cwiseAbs().maxCoeff();
    x = next;
    if (change < 1e-16) break;
  }
  return x;
}

// Planted node weights: clusters and elements each get a permuted arithmetic profile
// n, n-1, ..., 1 (normalized within their group).
struct PlantedWeights {
  std::map<NodeId, double> weight;
  // Elements of each cluster, heaviest first.
  std::map<NodeId, std::vector<NodeId>> expected_order;
};

inline PlantedWeights plant_weights(const DecisionNetwork& net, std::uint64_t seed) {
  Rng rng(seed);
  PlantedWeights planted;
  auto assign = [&](const std::vector<NodeId>& ids) {
    const auto perm = rng.permutation(ids.size());
    const double total = static_cast<double>(ids.size() * (ids.size() + 1) / 2);
    std::vector<NodeId> order(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      planted.weight[ids[i]] = static_cast<double>(ids.size() - perm[i]) / total;
      order[perm[i]] = ids[i];
    }
    return order;
  };
  std::vector<NodeId> clusters;
  for (const auto& c : net.clusters) clusters.push_back(c.id);
  assign(clusters);
  for (const auto& c : net.clusters) {
    std::vector<NodeId> elements;
    for (const auto& e : c.elements) elements.push_back(e.id);
    planted.expected_order[c.id] = assign(elements);
  }
  return planted;
}

// Every context's peers compared by their planted weights, rounded to the scale. All experts
// answer alike, so the aggregate equals each individual matrix.
inline std::vector<Judgment> planted_judgments(const DecisionNetwork& net, const PlantedWeights& planted,
                                               const std::vector<std::string>& experts) {
  std::vector<Judgment> out;
  for (const auto& ctx : comparison_contexts(net)) {
    for (std::size_t i = 0; i < ctx.peers.size(); ++i) {
      for (std::size_t j = i + 1; j < ctx.peers.size(); ++j) {
        const double ratio = planted.weight.at(ctx.peers[i]) / planted.weight.at(ctx.peers[j]);
        for (const auto& expert : experts) {
          out.push_back({ctx.control, ctx.peers[i], ctx.peers[j], SaatyValue::nearest(ratio), expert});
        }
      }
    }
  }
  return out;
}

}  // namespace anp::testing
