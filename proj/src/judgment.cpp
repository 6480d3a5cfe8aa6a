#include "anp/judgment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <utility>

#include "anp/error.hpp"

namespace anp {

namespace {

constexpr double kReciprocityTolerance = 1e-12;
// Severities closer than this count as ties in worst_triad.
constexpr double kTieTolerance = 1e-12;

std::optional<std::size_t> position(const std::vector<NodeId>& peers, const NodeId& id) {
  auto it = std::find(peers.begin(), peers.end(), id);
  if (it == peers.end()) return std::nullopt;
  return static_cast<std::size_t>(it - peers.begin());
}

}  // namespace

ComparisonMatrix::ComparisonMatrix(NodeId context, std::vector<NodeId> peers, Eigen::MatrixXd entries)
    : context_(std::move(context)), peers_(std::move(peers)), entries_(std::move(entries)) {
  const auto n = static_cast<Eigen::Index>(peers_.size());
  if (n < 2 || entries_.rows() != n || entries_.cols() != n) {
    throw Error(Errc::invalid_matrix, "context '" + context_.str() + "': matrix must be " +
                                          std::to_string(n) + "x" + std::to_string(n) + " with n >= 2");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double a = entries_(i, j);
      if (!std::isfinite(a) || a <= 0.0) {
        throw Error(Errc::invalid_matrix, "context '" + context_.str() + "': entries must be positive");
      }
      if (std::abs(a * entries_(j, i) - 1.0) > kReciprocityTolerance) {
        throw Error(Errc::invalid_matrix, "context '" + context_.str() + "': matrix is not reciprocal");
      }
    }
  }
}

ComparisonMatrix consistent_matrix(const ComparisonContext& context, std::span<const double> weights) {
  const auto n = static_cast<Eigen::Index>(weights.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Ones(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      a(i, j) = weights[i] / weights[j];
      a(j, i) = 1.0 / a(i, j);
    }
  }
  return ComparisonMatrix(context.control, context.peers, std::move(a));
}

ComparisonMatrix build_matrix(const ComparisonContext& context, std::span<const Judgment> judgments) {
  const std::size_t n = context.peers.size();
  std::map<std::pair<std::size_t, std::size_t>, double> upper;

  for (const auto& j : judgments) {
    if (j.context != context.control) {
      throw Error(Errc::foreign_node, "judgment for context '" + j.context.str() +
                                          "' given to context '" + context.control.str() + "'");
    }
    const auto r = position(context.peers, j.row);
    const auto c = position(context.peers, j.col);
    if (!r || !c || *r == *c) {
      throw Error(Errc::foreign_node, "pair (" + j.row.str() + ", " + j.col.str() +
                                          ") is not a peer pair of context '" + context.control.str() + "'");
    }
    const bool forward = *r < *c;
    const auto key = forward ? std::pair{*r, *c} : std::pair{*c, *r};
    const double value = forward ? j.value.value() : j.value.reciprocal().value();
    if (!upper.emplace(key, value).second) {
      throw Error(Errc::duplicate_pair, "pair (" + j.row.str() + ", " + j.col.str() +
                                            ") judged twice in context '" + context.control.str() + "'");
    }
  }

  Eigen::MatrixXd a = Eigen::MatrixXd::Ones(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      auto it = upper.find({i, k});
      if (it == upper.end()) {
        throw Error(Errc::missing_pair, "pair (" + context.peers[i].str() + ", " + context.peers[k].str() +
                                            ") missing in context '" + context.control.str() + "'");
      }
      a(i, k) = it->second;
      a(k, i) = 1.0 / it->second;
    }
  }
  return ComparisonMatrix(context.control, context.peers, std::move(a));
}

namespace {

double mean_ratio_lambda(const Eigen::MatrixXd& a, const Eigen::VectorXd& w) {
  const Eigen::VectorXd aw = a * w;
  return (aw.array() / w.array()).mean();
}

}  // namespace

PriorityVector priority_vector_gm(const ComparisonMatrix& m) {
  const auto& a = m.entries();
  const auto n = a.rows();
  // The n-th root of the row product, taken in log space so large aggregated ratios stay finite.
  Eigen::VectorXd log_gm(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    log_gm(i) = a.row(i).array().log().sum() / static_cast<double>(n);
  }
  Eigen::VectorXd w = (log_gm.array() - log_gm.maxCoeff()).exp();
  w /= w.sum();

  PriorityVector pv;
  pv.weights.assign(w.data(), w.data() + n);
  pv.lambda_max = mean_ratio_lambda(a, w);
  pv.method = PriorityMethod::geometric_mean;
  return pv;
}

PriorityVector priority_vector_eig(const ComparisonMatrix& m, const PowerIterationOptions& options) {
  const auto& a = m.entries();
  const auto n = a.rows();
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));

  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    Eigen::VectorXd next = a * x;
    next /= next.sum();
    const double delta = (next - x).cwiseAbs().maxCoeff();
    x = std::move(next);
    if (delta < options.tolerance) {
      PriorityVector pv;
      pv.weights.assign(x.data(), x.data() + n);
      // sum(x) == 1, so the Rayleigh-free estimate is just the mass of A x.
      pv.lambda_max = (a * x).sum();
      pv.method = PriorityMethod::eigenvector;
      return pv;
    }
  }
  throw Error(Errc::no_convergence, "power iteration did not converge for context '" +
                                        m.context().str() + "'");
}

double random_index(std::size_t n) {
  static constexpr std::array<double, 15> kTable = {0.00, 0.00, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41,
                                                    1.45, 1.49, 1.51, 1.48, 1.56, 1.57, 1.58};
  if (n < 1 || n > kTable.size()) {
    throw Error(Errc::rank_out_of_table, "no random index for rank " + std::to_string(n));
  }
  return kTable[n - 1];
}

ConsistencyReport consistency(const PriorityVector& pv, std::size_t n) {
  if (n < 2) throw Error(Errc::too_small, "consistency needs n >= 2");
  ConsistencyReport r;
  r.ri = random_index(n);
  r.ci = (pv.lambda_max - static_cast<double>(n)) / static_cast<double>(n - 1);
  r.cr = r.ri > 0.0 ? r.ci / r.ri : 0.0;
  r.pass = r.cr <= kConsistencyThreshold && r.ci <= kConsistencyThreshold;
  return r;
}

ComparisonMatrix aggregate_experts(std::span<const ComparisonMatrix> matrices) {
  if (matrices.empty()) throw Error(Errc::invalid_matrix, "nothing to aggregate");
  const auto& first = matrices.front();
  for (const auto& m : matrices) {
    if (m.context() != first.context() || m.peers() != first.peers()) {
      throw Error(Errc::context_mismatch, "cannot aggregate context '" + m.context().str() +
                                              "' with '" + first.context().str() + "'");
    }
  }
  const auto n = static_cast<Eigen::Index>(first.size());
  const double k = static_cast<double>(matrices.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Ones(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double log_sum = 0.0;
      for (const auto& m : matrices) log_sum += std::log(m.entries()(i, j));
      a(i, j) = std::exp(log_sum / k);
      a(j, i) = 1.0 / a(i, j);
    }
  }
  return ComparisonMatrix(first.context(), first.peers(), std::move(a));
}

TriadHint worst_triad(const ComparisonMatrix& m, const PriorityVector& pv) {
  const std::size_t n = m.size();
  if (n < 3) throw Error(Errc::too_small, "worst_triad needs n >= 3");
  TriadHint best{0, 1, -1.0};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = std::abs(std::log(m(i, j) * pv.weights[j] / pv.weights[i]));
      if (s > best.severity + kTieTolerance) best = {i, j, s};
    }
  }
  return best;
}

std::string format_consistency(const ConsistencyReport& report) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "CI=%.6f RI=%.2f CR=%.6f %s", report.ci, report.ri, report.cr,
                report.pass ? "PASS" : "FAIL");
  return buf;
}

}  // namespace anp
