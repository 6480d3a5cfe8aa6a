#include "anp/network.hpp"

#include <deque>
#include <set>
#include <tuple>

#include "anp/error.hpp"

namespace anp {

NodeIndex::NodeIndex(const DecisionNetwork& net) {
  nodes_.push_back({net.goal, NodeKind::goal, net.goal_label, std::nullopt});
  for (std::size_t c = 0; c < net.clusters.size(); ++c) {
    nodes_.push_back({net.clusters[c].id, NodeKind::cluster, net.clusters[c].label, c});
  }
  for (std::size_t c = 0; c < net.clusters.size(); ++c) {
    for (const auto& e : net.clusters[c].elements) {
      nodes_.push_back({e.id, NodeKind::element, e.label, c});
    }
  }
}

std::optional<std::size_t> NodeIndex::find(const NodeId& id) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].id == id) return i;
  }
  return std::nullopt;
}

std::size_t NodeIndex::at(const NodeId& id) const {
  if (auto i = find(id)) return *i;
  throw Error(Errc::foreign_node, "unknown node '" + id.str() + "'");
}

std::vector<NodeId> NodeIndex::ids() const {
  std::vector<NodeId> out;
  out.reserve(nodes_.size());
  for (const auto& n : nodes_) out.push_back(n.id);
  return out;
}

std::string_view kind_name(Violation::Kind kind) noexcept {
  using K = Violation::Kind;
  switch (kind) {
    case K::empty_id: return "empty id";
    case K::duplicate_id: return "duplicate id";
    case K::empty_cluster: return "empty cluster";
    case K::dangling_link: return "dangling link";
    case K::self_link: return "self link";
    case K::bad_link_kind: return "bad link kind";
    case K::goal_as_target: return "goal as link target";
    case K::duplicate_link: return "duplicate link";
    case K::unreachable_cluster: return "unreachable cluster";
  }
  return "unknown";
}

namespace {

std::string link_text(const DependencyLink& l) {
  return l.source.str() + " -> " + l.target.str() +
         (l.kind == LinkKind::inner ? " (inner)" : " (outer)");
}

}  // namespace

ValidationReport validate_network(const DecisionNetwork& net) {
  using K = Violation::Kind;
  ValidationReport report;
  auto add = [&](K kind, std::string detail) {
    report.violations.push_back({kind, std::move(detail)});
  };

  const NodeIndex index(net);

  std::set<NodeId> seen;
  for (const auto& node : index.nodes()) {
    if (node.id.empty()) {
      add(K::empty_id, "node with label '" + node.label + "' has an empty id");
      continue;
    }
    if (!seen.insert(node.id).second) add(K::duplicate_id, "'" + node.id.str() + "' defined twice");
  }
  for (const auto& c : net.clusters) {
    if (c.elements.empty()) add(K::empty_cluster, "cluster '" + c.id.str() + "' has no elements");
  }

  // Cluster adjacency for the reachability sweep; only well-formed links contribute.
  std::vector<std::set<std::size_t>> adjacent(net.clusters.size());
  std::set<std::size_t> from_goal;

  std::set<std::tuple<NodeId, NodeId, LinkKind>> link_seen;
  for (const auto& link : net.links) {
    const auto src = index.find(link.source);
    const auto dst = index.find(link.target);
    if (!src || !dst) {
      std::string missing = !src ? link.source.str() : link.target.str();
      if (!src && !dst) missing += ", " + link.target.str();
      add(K::dangling_link, link_text(link) + ": unknown node " + missing);
      continue;
    }
    if (!link_seen.insert({link.source, link.target, link.kind}).second) {
      add(K::duplicate_link, link_text(link));
      continue;
    }
    if (*src == *dst) {
      add(K::self_link, link_text(link));
      continue;
    }
    const NodeInfo& s = index[*src];
    const NodeInfo& t = index[*dst];
    if (t.kind == NodeKind::goal) {
      add(K::goal_as_target, link_text(link));
      continue;
    }
    if (link.kind == LinkKind::inner) {
      if (s.kind != NodeKind::element || t.kind != NodeKind::element || s.cluster != t.cluster) {
        add(K::bad_link_kind, link_text(link) + ": inner links join elements of one cluster");
      }
      continue;
    }
    if (t.kind != NodeKind::cluster || s.kind == NodeKind::element) {
      add(K::bad_link_kind, link_text(link) + ": outer links join the goal or clusters");
      continue;
    }
    if (s.kind == NodeKind::goal) {
      from_goal.insert(*t.cluster);
    } else {
      adjacent[*s.cluster].insert(*t.cluster);
      adjacent[*t.cluster].insert(*s.cluster);
    }
  }

  std::vector<bool> reached(net.clusters.size(), false);
  std::deque<std::size_t> queue(from_goal.begin(), from_goal.end());
  for (auto c : queue) reached[c] = true;
  while (!queue.empty()) {
    const auto c = queue.front();
    queue.pop_front();
    for (auto n : adjacent[c]) {
      if (!reached[n]) {
        reached[n] = true;
        queue.push_back(n);
      }
    }
  }
  for (std::size_t c = 0; c < net.clusters.size(); ++c) {
    if (!reached[c]) {
      add(K::unreachable_cluster, "cluster '" + net.clusters[c].id.str() + "' is not linked to the goal");
    }
  }
  return report;
}

std::vector<NodeId> influencers(const DecisionNetwork& net, const NodeId& node) {
  const NodeIndex index(net);
  const auto self = index.find(node);
  if (!self) return {};
  const NodeInfo& info = index[*self];

  std::set<std::size_t> found;
  for (const auto& link : net.links) {
    const auto src = index.find(link.source);
    const auto dst = index.find(link.target);
    if (!src || !dst || *src == *dst) continue;
    const NodeInfo& s = index[*src];
    const NodeInfo& t = index[*dst];
    switch (info.kind) {
      case NodeKind::goal:
        if (*src == *self && link.kind == LinkKind::outer && t.kind == NodeKind::cluster) {
          found.insert(*dst);
        }
        break;
      case NodeKind::cluster:
        if (*dst == *self && link.kind == LinkKind::outer && s.kind == NodeKind::cluster) {
          found.insert(*src);
        }
        break;
      case NodeKind::element:
        if (*dst == *self && link.kind == LinkKind::inner && s.kind == NodeKind::element &&
            s.cluster == info.cluster) {
          found.insert(*src);
        }
        break;
    }
  }

  std::vector<NodeId> out;
  if (info.kind == NodeKind::goal && found.size() == 1) {
    // A goal over a single cluster compares that cluster's elements directly.
    for (const auto& e : net.clusters[*index[*found.begin()].cluster].elements) {
      out.push_back(e.id);
    }
    return out;
  }
  for (auto i : found) out.push_back(index[i].id);
  return out;
}

std::vector<ComparisonContext> comparison_contexts(const DecisionNetwork& net) {
  const auto report = validate_network(net);
  if (!report.ok()) {
    throw Error(Errc::network_invalid,
                std::string(kind_name(report.violations.front().kind)) + ": " +
                    report.violations.front().detail);
  }
  std::vector<ComparisonContext> out;
  const NodeIndex index(net);
  for (const auto& node : index.nodes()) {
    auto peers = influencers(net, node.id);
    if (peers.size() >= 2) out.push_back({node.id, std::move(peers)});
  }
  return out;
}

std::size_t question_count(std::span<const ComparisonContext> contexts) noexcept {
  std::size_t total = 0;
  for (const auto& c : contexts) total += c.question_count();
  return total;
}

std::string label_of(const DecisionNetwork& net, const NodeId& id) {
  const NodeIndex index(net);
  if (auto i = index.find(id)) return index[*i].label;
  return {};
}

}  // namespace anp
