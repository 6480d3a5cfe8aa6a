#include "anp/supermatrix.hpp"

#include <algorithm>
#include <cmath>

#include "anp/error.hpp"

namespace anp {

namespace {

constexpr double kStochasticTolerance = 1e-9;

std::vector<double> context_weights(const NodeId& control, std::size_t peer_count,
                                    const PriorityMap& priorities) {
  if (peer_count == 1) return {1.0};
  auto it = priorities.find(control);
  if (it == priorities.end()) {
    throw Error(Errc::missing_context, "no priorities for context '" + control.str() + "'");
  }
  if (it->second.priorities.weights.size() != peer_count) {
    throw Error(Errc::missing_context, "priorities for context '" + control.str() + "' have " +
                                           std::to_string(it->second.priorities.weights.size()) +
                                           " weights, expected " + std::to_string(peer_count));
  }
  return it->second.priorities.weights;
}

double max_column_drift(const Eigen::MatrixXd& m) {
  if (m.cols() == 0) return 0.0;
  return (m.colwise().sum().array() - 1.0).abs().maxCoeff();
}

void normalize_columns(Eigen::MatrixXd& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const double s = m.col(c).sum();
    if (s > 0.0) m.col(c) /= s;
  }
}

double max_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

std::size_t Supermatrix::block_count() const {
  return blocks.empty() ? 0 : *std::max_element(blocks.begin(), blocks.end()) + 1;
}

std::vector<std::size_t> network_blocks(const DecisionNetwork& net) {
  std::vector<std::size_t> blocks;
  const NodeIndex index(net);
  for (const auto& node : index.nodes()) {
    blocks.push_back(node.cluster ? *node.cluster + 1 : 0);
  }
  return blocks;
}

Supermatrix assemble_unweighted(const DecisionNetwork& net, const PriorityMap& priorities) {
  const auto contexts = comparison_contexts(net);

  std::vector<GateViolation> failed;
  for (const auto& ctx : contexts) {
    auto it = priorities.find(ctx.control);
    if (it == priorities.end()) {
      throw Error(Errc::missing_context, "no priorities for context '" + ctx.control.str() + "'");
    }
    if (!it->second.consistency.pass) {
      failed.push_back({ctx.control.str(), it->second.consistency.ci, it->second.consistency.cr});
    }
  }
  if (!failed.empty()) throw GateFailure(std::move(failed));

  const NodeIndex index(net);
  const auto n = static_cast<Eigen::Index>(index.size());
  Supermatrix u{index.ids(), network_blocks(net), Eigen::MatrixXd::Zero(n, n), Stage::unweighted};

  for (std::size_t col = 0; col < index.size(); ++col) {
    const NodeInfo& node = index[col];
    const auto peers = influencers(net, node.id);
    if (!peers.empty()) {
      const auto weights = context_weights(node.id, peers.size(), priorities);
      for (std::size_t p = 0; p < peers.size(); ++p) {
        u.entries(static_cast<Eigen::Index>(index.at(peers[p])), static_cast<Eigen::Index>(col)) = weights[p];
      }
    }
    if (node.kind == NodeKind::cluster) {
      const auto& elements = net.clusters[*node.cluster].elements;
      for (const auto& e : elements) {
        u.entries(static_cast<Eigen::Index>(index.at(e.id)), static_cast<Eigen::Index>(col)) =
            1.0 / static_cast<double>(elements.size());
      }
    }
  }
  return u;
}

ClusterWeightMatrix cluster_weights(const DecisionNetwork& net, const PriorityMap& priorities) {
  const NodeIndex index(net);
  const auto blocks = network_blocks(net);
  const auto b = static_cast<Eigen::Index>(net.clusters.size() + 1);
  ClusterWeightMatrix cw{Eigen::MatrixXd::Zero(b, b)};

  const auto goal_peers = influencers(net, net.goal);
  if (goal_peers.empty()) {
    cw.weights(0, 0) = 1.0;
  } else {
    const auto weights = context_weights(net.goal, goal_peers.size(), priorities);
    for (std::size_t p = 0; p < goal_peers.size(); ++p) {
      cw.weights(static_cast<Eigen::Index>(blocks[index.at(goal_peers[p])]), 0) += weights[p];
    }
  }

  for (std::size_t c = 0; c < net.clusters.size(); ++c) {
    const auto self = static_cast<Eigen::Index>(c + 1);
    const auto peers = influencers(net, net.clusters[c].id);
    if (peers.empty()) {
      cw.weights(self, self) = 1.0;
      continue;
    }
    const double own = 1.0 / static_cast<double>(peers.size() + 1);
    cw.weights(self, self) = own;
    const auto weights = context_weights(net.clusters[c].id, peers.size(), priorities);
    for (std::size_t p = 0; p < peers.size(); ++p) {
      cw.weights(static_cast<Eigen::Index>(blocks[index.at(peers[p])]), self) += (1.0 - own) * weights[p];
    }
  }
  return cw;
}

Supermatrix weight_supermatrix(const Supermatrix& u, const ClusterWeightMatrix& cw) {
  const auto n = u.entries.rows();
  const auto nb = static_cast<Eigen::Index>(u.block_count());
  if (u.entries.cols() != n || static_cast<Eigen::Index>(u.blocks.size()) != n) {
    throw Error(Errc::invalid_matrix, "supermatrix is not square over its index");
  }
  if (cw.weights.rows() != nb || cw.weights.cols() != nb) {
    throw Error(Errc::not_stochastic, "cluster weights are " + std::to_string(cw.weights.rows()) + "x" +
                                          std::to_string(cw.weights.cols()) + ", expected " +
                                          std::to_string(nb) + "x" + std::to_string(nb));
  }
  if ((cw.weights.array() < 0.0).any() || max_column_drift(cw.weights) > kStochasticTolerance) {
    throw Error(Errc::not_stochastic, "cluster weight matrix is not column-stochastic");
  }
  if ((u.entries.array() < 0.0).any()) {
    throw Error(Errc::not_stochastic, "supermatrix has negative entries");
  }

  Supermatrix w{u.index, u.blocks, Eigen::MatrixXd::Zero(n, n), Stage::weighted};
  for (Eigen::Index c = 0; c < n; ++c) {
    if (u.entries.col(c).sum() == 0.0) {
      w.entries(c, c) = 1.0;
      continue;
    }
    std::vector<double> mass(static_cast<std::size_t>(nb), 0.0);
    for (Eigen::Index r = 0; r < n; ++r) mass[u.blocks[r]] += u.entries(r, c);

    const auto col_block = static_cast<Eigen::Index>(u.blocks[c]);
    for (Eigen::Index r = 0; r < n; ++r) {
      const double v = u.entries(r, c);
      if (v == 0.0) continue;
      const auto row_block = u.blocks[r];
      w.entries(r, c) = cw.weights(static_cast<Eigen::Index>(row_block), col_block) * v / mass[row_block];
    }
    const double total = w.entries.col(c).sum();
    if (!(total > 0.0)) {
      throw Error(Errc::not_stochastic, "column '" + u.index[c].str() +
                                            "' has no cluster weight on any of its nonzero blocks");
    }
    w.entries.col(c) /= total;
  }
  return w;
}

std::string_view mode_name(ConvergenceMode mode) noexcept {
  return mode == ConvergenceMode::power ? "power" : "cesaro";
}

LimitResult limit_supermatrix(const Supermatrix& w, const LimitOptions& options) {
  const auto& m = w.entries;
  if (m.rows() != m.cols() || m.rows() == 0) throw Error(Errc::not_stochastic, "limit of an empty or non-square matrix");
  if ((m.array() < 0.0).any() || max_column_drift(m) > kStochasticTolerance) {
    throw Error(Errc::not_stochastic, "limit requires a column-stochastic matrix");
  }

  LimitResult result;
  auto track = [&](Eigen::MatrixXd& p) {
    result.max_column_drift = std::max(result.max_column_drift, max_column_drift(p));
    normalize_columns(p);
  };

  // W^(2^k). Stop once a power repeats an earlier one: either it has converged or the
  // sequence of squares has entered a cycle.
  Eigen::MatrixXd power = m;
  std::vector<Eigen::MatrixXd> history{power};
  for (std::size_t k = 1; k <= options.max_squarings; ++k) {
    Eigen::MatrixXd next = power * power;
    track(next);
    result.iterations = k;
    bool repeated = false;
    for (const auto& h : history) repeated = repeated || max_diff(next, h) < options.tolerance;
    const bool settled = max_diff(next, power) < options.tolerance;
    power = std::move(next);
    if (settled && k < options.max_squarings) {
      // One more squaring squares the remaining transient error as well.
      Eigen::MatrixXd again = power * power;
      track(again);
      power = std::move(again);
      result.iterations = k + 1;
      break;
    }
    if (repeated) break;
    history.push_back(power);
  }

  // Smallest period c with power * W^c == power.
  Eigen::MatrixXd step = power;
  Eigen::MatrixXd sum = power;
  for (std::size_t c = 1; c <= options.max_period; ++c) {
    step = step * m;
    track(step);
    if (max_diff(step, power) < options.tolerance) {
      result.matrix = Supermatrix{w.index, w.blocks, c == 1 ? power : Eigen::MatrixXd(sum / static_cast<double>(c)),
                                  Stage::limit};
      if (c > 1) {
        result.mode = ConvergenceMode::cesaro;
        result.iterations += c;
        normalize_columns(result.matrix.entries);
      }
      return result;
    }
    sum += step;
  }
  throw Error(Errc::no_limit, "powers neither converge nor cycle with period <= " +
                                  std::to_string(options.max_period));
}

RankedPriorities extract_rank(const Supermatrix& limit, const DecisionNetwork& net) {
  const NodeIndex index(net);
  const auto n = static_cast<Eigen::Index>(index.size());
  if (limit.index != index.ids() || limit.entries.rows() != n || limit.entries.cols() != n) {
    throw Error(Errc::invalid_matrix, "limit matrix index does not match the network");
  }

  // Goal is node 0; its column carries the global priorities.
  const Eigen::VectorXd column = limit.entries.col(0);
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (index[static_cast<std::size_t>(i)].kind == NodeKind::element) total += column(i);
  }
  if (!(total > 0.0)) throw Error(Errc::degenerate_limit, "limit assigns no weight to any element");

  RankedPriorities out;
  std::vector<double> cluster_total(net.clusters.size(), 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const NodeInfo& node = index[static_cast<std::size_t>(i)];
    if (node.kind != NodeKind::element) continue;
    const double weight = column(i) / total;
    cluster_total[*node.cluster] += weight;
    out.elements.push_back({node.id, net.clusters[*node.cluster].id, node.label, weight, 0});
  }
  for (std::size_t c = 0; c < net.clusters.size(); ++c) {
    out.criteria.push_back({net.clusters[c].id, net.clusters[c].id, net.clusters[c].label, cluster_total[c], 0});
  }

  auto rank = [](std::vector<RankedEntry>& entries) {
    std::sort(entries.begin(), entries.end(), [](const RankedEntry& a, const RankedEntry& b) {
      if (a.weight != b.weight) return a.weight > b.weight;
      return a.id < b.id;
    });
    for (std::size_t i = 0; i < entries.size(); ++i) entries[i].rank = i + 1;
  };
  rank(out.elements);
  rank(out.criteria);
  return out;
}

}  // namespace anp
