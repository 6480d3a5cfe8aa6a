#pragma once

#include <span>
#include <string>
#include <vector>

#include "anp/judgment.hpp"
#include "anp/network.hpp"
#include "anp/supermatrix.hpp"

namespace anp {

struct ContextResult {
  ComparisonContext context;
  ComparisonMatrix aggregate;
  PriorityVector priorities;
  ConsistencyReport consistency;
};

struct PipelineResult {
  std::vector<ContextResult> contexts;
  ClusterWeightMatrix cluster_weights;
  Supermatrix unweighted;
  Supermatrix weighted;
  LimitResult limit;
  RankedPriorities ranking;
};

/// Checks that every expert answered every pair of every context, and that no judgment
/// refers to an unknown context. Returns the expert ids in sorted order.
/// Errors: incomplete (IncompleteError), unknown_context, invalid_judgments (no judgments).
std::vector<std::string> check_complete(std::span<const ComparisonContext> contexts,
                                        std::span<const Judgment> judgments);

/// Per-context matrices aggregated over experts (sorted by id), geometric-mean priorities and
/// consistency reports, in context order. Does not apply the consistency gate.
std::vector<ContextResult> evaluate_contexts(const DecisionNetwork& net, std::span<const Judgment> judgments);

/// Judgments to ranking: aggregate, prioritize, gate, assemble, weight, limit, rank.
/// Errors: network_invalid, incomplete, consistency_gate_failed, plus those of each stage.
PipelineResult run_pipeline(const DecisionNetwork& net, std::span<const Judgment> judgments);

}  // namespace anp
