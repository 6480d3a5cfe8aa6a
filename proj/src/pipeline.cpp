#include "anp/pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "anp/error.hpp"

namespace anp {

namespace {

// Canonical (lower index first) peer pair of a judgment within its context.
std::pair<NodeId, NodeId> canonical_pair(const ComparisonContext& ctx, const Judgment& j) {
  auto pos = [&](const NodeId& id) { return std::find(ctx.peers.begin(), ctx.peers.end(), id); };
  return pos(j.row) < pos(j.col) ? std::pair{j.row, j.col} : std::pair{j.col, j.row};
}

}  // namespace

std::vector<std::string> check_complete(std::span<const ComparisonContext> contexts,
                                        std::span<const Judgment> judgments) {
  if (judgments.empty()) throw Error(Errc::invalid_judgments, "no judgments given");

  std::map<NodeId, const ComparisonContext*> by_id;
  for (const auto& c : contexts) by_id.emplace(c.control, &c);

  std::set<std::string> experts;
  std::set<std::tuple<std::string, NodeId, NodeId, NodeId>> answered;
  for (const auto& j : judgments) {
    auto it = by_id.find(j.context);
    if (it == by_id.end()) throw Error(Errc::unknown_context, "unknown context '" + j.context.str() + "'");
    experts.insert(j.expert);
    auto [a, b] = canonical_pair(*it->second, j);
    answered.emplace(j.expert, j.context, std::move(a), std::move(b));
  }

  std::vector<MissingJudgment> missing;
  for (const auto& expert : experts) {
    for (const auto& c : contexts) {
      for (std::size_t i = 0; i < c.peers.size(); ++i) {
        for (std::size_t k = i + 1; k < c.peers.size(); ++k) {
          if (!answered.contains({expert, c.control, c.peers[i], c.peers[k]})) {
            missing.push_back({expert, c.control.str(), c.peers[i].str(), c.peers[k].str()});
          }
        }
      }
    }
  }
  if (!missing.empty()) throw IncompleteError(std::move(missing));
  return {experts.begin(), experts.end()};
}

std::vector<ContextResult> evaluate_contexts(const DecisionNetwork& net, std::span<const Judgment> judgments) {
  const auto contexts = comparison_contexts(net);
  const auto experts = check_complete(contexts, judgments);

  std::vector<ContextResult> out;
  out.reserve(contexts.size());
  for (const auto& ctx : contexts) {
    std::vector<ComparisonMatrix> per_expert;
    per_expert.reserve(experts.size());
    for (const auto& expert : experts) {
      std::vector<Judgment> mine;
      for (const auto& j : judgments) {
        if (j.expert == expert && j.context == ctx.control) mine.push_back(j);
      }
      per_expert.push_back(build_matrix(ctx, mine));
    }
    auto aggregate = aggregate_experts(per_expert);
    auto priorities = priority_vector_gm(aggregate);
    auto report = consistency(priorities, ctx.peers.size());
    out.push_back({ctx, std::move(aggregate), std::move(priorities), report});
  }
  return out;
}

PipelineResult run_pipeline(const DecisionNetwork& net, std::span<const Judgment> judgments) {
  auto contexts = evaluate_contexts(net, judgments);

  PriorityMap priorities;
  for (const auto& c : contexts) priorities.emplace(c.context.control, ContextPriority{c.priorities, c.consistency});

  auto unweighted = assemble_unweighted(net, priorities);
  auto cw = cluster_weights(net, priorities);
  auto weighted = weight_supermatrix(unweighted, cw);
  auto limit = limit_supermatrix(weighted);
  auto ranking = extract_rank(limit.matrix, net);
  return {std::move(contexts), std::move(cw), std::move(unweighted), std::move(weighted), std::move(limit),
          std::move(ranking)};
}

}  // namespace anp
