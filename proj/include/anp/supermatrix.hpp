#pragma once

#include <cstddef>
#include <map>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "anp/judgment.hpp"
#include "anp/network.hpp"

namespace anp {

enum class Stage { unweighted, weighted, limit };

/// Square matrix over an ordered node list, partitioned into blocks for cluster weighting.
/// Column j holds the priorities of the row nodes with respect to node j.
struct Supermatrix {
  std::vector<NodeId> index;
  std::vector<std::size_t> blocks;  // block id of each node, ids 0..block_count()-1
  Eigen::MatrixXd entries;
  Stage stage = Stage::unweighted;

  std::size_t block_count() const;
};

/// Block weights, rows and columns indexed by block id; column-stochastic.
struct ClusterWeightMatrix {
  Eigen::MatrixXd weights;
};

struct ContextPriority {
  PriorityVector priorities;
  ConsistencyReport consistency;
};

using PriorityMap = std::map<NodeId, ContextPriority>;

/// Block partition of a network: the goal alone in block 0, then block c+1 holding cluster c's
/// node together with its elements.
std::vector<std::size_t> network_blocks(const DecisionNetwork& net);

/// Places every context's weights in its control node's column, at its peers' rows. A cluster
/// influenced by exactly one other cluster gets weight 1 on it, and each cluster node spreads
/// uniform membership weight over its own elements. Everything else is zero.
/// Errors: missing_context, consistency_gate_failed (GateFailure), network_invalid.
Supermatrix assemble_unweighted(const DecisionNetwork& net, const PriorityMap& priorities);

/// Goal column: the goal context's weights summed per block. Cluster column: a share of
/// 1 / (1 + #influencing clusters) stays on the cluster's own block, the rest is split by the
/// cluster's interdependence weights. A cluster with no influencers keeps all weight.
ClusterWeightMatrix cluster_weights(const DecisionNetwork& net, const PriorityMap& priorities);

/// Scales each column's block by its cluster weight (after normalizing the column within the
/// block), renormalizes the column, and replaces all-zero columns with identity columns.
/// Errors: not_stochastic when a nonzero column gets no weight or `cw` is not column-stochastic.
Supermatrix weight_supermatrix(const Supermatrix& u, const ClusterWeightMatrix& cw);

enum class ConvergenceMode { power, cesaro };

std::string_view mode_name(ConvergenceMode mode) noexcept;

struct LimitOptions {
  double tolerance = 1e-10;
  std::size_t max_squarings = 64;
  std::size_t max_period = 64;
};

struct LimitResult {
  Supermatrix matrix;
  ConvergenceMode mode = ConvergenceMode::power;
  // Squarings performed, plus the period steps when a Cesaro average was needed.
  std::size_t iterations = 0;
  // Largest |column sum - 1| seen across intermediate powers before renormalization.
  double max_column_drift = 0.0;
};

/// Repeated squaring of a column-stochastic matrix. When the powers settle into a cycle of
/// period c <= max_period, returns the Cesaro mean of one period instead.
/// Errors: not_stochastic for invalid input, no_limit when no cycle is found.
LimitResult limit_supermatrix(const Supermatrix& w, const LimitOptions& options = {});

struct RankedEntry {
  NodeId id;
  NodeId cluster;
  std::string label;
  double weight = 0.0;
  std::size_t rank = 0;
};

/// Criteria and elements, each sorted by rank (descending weight, ties by ascending id).
struct RankedPriorities {
  std::vector<RankedEntry> criteria;
  std::vector<RankedEntry> elements;
};

/// Reads element weights from the goal column of a limit matrix, normalizes them over all
/// elements, and sums them per cluster for the criterion weights.
/// Errors: degenerate_limit when the element block is all zero, invalid_matrix when the
/// matrix index does not match the network.
RankedPriorities extract_rank(const Supermatrix& limit, const DecisionNetwork& net);

}  // namespace anp
