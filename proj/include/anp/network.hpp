#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace anp {

/// Short ASCII identifier of a goal, cluster or element ("goal", "C1", "e11").
class NodeId {
 public:
  NodeId() = default;
  explicit NodeId(std::string value) : value_(std::move(value)) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
  friend bool operator==(const NodeId&, const NodeId&) = default;

 private:
  std::string value_;
};

struct Element {
  NodeId id;
  std::string label;
  std::string definition;
};

/// A criterion and its elements. Element order is the canonical matrix index order.
struct Cluster {
  NodeId id;
  std::string label;
  std::vector<Element> elements;
};

enum class LinkKind { outer, inner };

/// `source` influences `target`. Outer links join the goal or clusters; inner links join
/// two elements of the same cluster. Links out of the goal mark the clusters it controls.
struct DependencyLink {
  NodeId source;
  NodeId target;
  LinkKind kind = LinkKind::outer;
};

struct DecisionNetwork {
  NodeId goal;
  std::string goal_label;
  std::vector<Cluster> clusters;
  std::vector<DependencyLink> links;
};

enum class NodeKind { goal, cluster, element };

struct NodeInfo {
  NodeId id;
  NodeKind kind = NodeKind::goal;
  std::string label;
  // Owning cluster for elements, the cluster itself for cluster nodes; unset for the goal.
  std::optional<std::size_t> cluster;
};

/// Canonical node order: goal, then clusters in order, then elements in cluster order.
/// Every matrix in the pipeline is indexed by this order.
class NodeIndex {
 public:
  explicit NodeIndex(const DecisionNetwork& net);

  std::size_t size() const noexcept { return nodes_.size(); }
  const NodeInfo& operator[](std::size_t i) const { return nodes_[i]; }
  std::span<const NodeInfo> nodes() const noexcept { return nodes_; }

  std::optional<std::size_t> find(const NodeId& id) const;
  // Throws Error(foreign_node) when absent.
  std::size_t at(const NodeId& id) const;

  std::vector<NodeId> ids() const;

 private:
  std::vector<NodeInfo> nodes_;
};

struct Violation {
  enum class Kind {
    empty_id,
    duplicate_id,
    empty_cluster,
    dangling_link,
    self_link,
    bad_link_kind,
    goal_as_target,
    duplicate_link,
    unreachable_cluster,
  };
  Kind kind;
  std::string detail;
};

std::string_view kind_name(Violation::Kind kind) noexcept;

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate_network(const DecisionNetwork& net);

/// One pairwise comparison matrix to elicit: peers compared with respect to `control`.
/// The control node id doubles as the context id; each node controls at most one context.
struct ComparisonContext {
  NodeId control;
  std::vector<NodeId> peers;

  const NodeId& id() const noexcept { return control; }
  std::size_t question_count() const noexcept {
    return peers.size() * (peers.size() - 1) / 2;
  }
};

/// Nodes whose links point at `node` with the kind relevant to it (outer for clusters,
/// inner for elements), in canonical order. For the goal: the clusters it controls,
/// or the elements of its single cluster when it controls exactly one.
std::vector<NodeId> influencers(const DecisionNetwork& net, const NodeId& node);

/// Every context needing a pairwise matrix, in canonical node order:
/// goal over its peers, each cluster over the other clusters influencing it, and each
/// element over its same-cluster influencers. Sets with fewer than two peers are skipped.
/// Throws Error(network_invalid) when the network fails validation.
std::vector<ComparisonContext> comparison_contexts(const DecisionNetwork& net);

std::size_t question_count(std::span<const ComparisonContext> contexts) noexcept;

// Label lookup over goal, clusters and elements; empty when unknown.
std::string label_of(const DecisionNetwork& net, const NodeId& id);

}  // namespace anp

template <>
struct std::hash<anp::NodeId> {
  std::size_t operator()(const anp::NodeId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
