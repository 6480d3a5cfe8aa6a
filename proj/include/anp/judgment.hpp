#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "anp/network.hpp"
#include "anp/saaty.hpp"

namespace anp {

/// One expert's answer: with respect to `context`, `row` is `value` times as important as `col`.
struct Judgment {
  NodeId context;
  NodeId row;
  NodeId col;
  SaatyValue value;
  std::string expert;
};

/// Positive reciprocal matrix over a context's peers (a_ii = 1, a_ij * a_ji = 1).
class ComparisonMatrix {
 public:
  // Throws Error(invalid_matrix) unless `entries` is a positive reciprocal n x n matrix, n >= 2,
  // matching the peer count.
  ComparisonMatrix(NodeId context, std::vector<NodeId> peers, Eigen::MatrixXd entries);

  const NodeId& context() const noexcept { return context_; }
  const std::vector<NodeId>& peers() const noexcept { return peers_; }
  std::size_t size() const noexcept { return peers_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }

 private:
  NodeId context_;
  std::vector<NodeId> peers_;
  Eigen::MatrixXd entries_;
};

/// Perfectly consistent matrix a_ij = w_i / w_j.
ComparisonMatrix consistent_matrix(const ComparisonContext& context, std::span<const double> weights);

enum class PriorityMethod { geometric_mean, eigenvector };

struct PriorityVector {
  std::vector<double> weights;
  double lambda_max = 0.0;
  PriorityMethod method = PriorityMethod::geometric_mean;
};

struct ConsistencyReport {
  double ci = 0.0;
  double ri = 0.0;
  double cr = 0.0;
  bool pass = true;
};

inline constexpr double kConsistencyThreshold = 0.1;

struct TriadHint {
  std::size_t row = 0;
  std::size_t col = 0;
  double severity = 0.0;
};

// Errors: missing_pair, duplicate_pair, foreign_node.
ComparisonMatrix build_matrix(const ComparisonContext& context, std::span<const Judgment> judgments);

/// Normalized row geometric means: w_i = (prod_j a_ij)^(1/n) / sum_k (prod_j a_kj)^(1/n).
/// lambda_max is estimated as the mean over i of (A w)_i / w_i.
PriorityVector priority_vector_gm(const ComparisonMatrix& m);

struct PowerIterationOptions {
  double tolerance = 1e-12;
  std::size_t max_iterations = 10'000;
};

/// Principal right eigenvector by power iteration, normalized to sum 1.
/// Throws Error(no_convergence) if the iterate has not settled within the budget.
PriorityVector priority_vector_eig(const ComparisonMatrix& m, const PowerIterationOptions& options = {});

/// CI = (lambda_max - n) / (n - 1); CR = CI / RI, or 0 when RI is 0.
/// Passes when CR <= 0.1 and CI <= 0.1. Throws Error(rank_out_of_table) for n > 15.
ConsistencyReport consistency(const PriorityVector& pv, std::size_t n);

/// Random consistency index for ranks 1..15.
double random_index(std::size_t n);

/// Element-wise geometric mean of several experts' matrices over the same context.
/// Errors: context_mismatch (differing context, peers or size), invalid_matrix (empty input).
ComparisonMatrix aggregate_experts(std::span<const ComparisonMatrix> matrices);

/// Pair (i < j) whose judgment departs most from the priority ratio, by |ln(a_ij w_j / w_i)|.
/// Errors: too_small when n < 3.
TriadHint worst_triad(const ComparisonMatrix& m, const PriorityVector& pv);

/// "CI=0.000000 RI=0.58 CR=0.000000 PASS"
std::string format_consistency(const ConsistencyReport& report);

}  // namespace anp
