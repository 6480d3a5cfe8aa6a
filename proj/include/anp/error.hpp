#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace anp {

enum class Errc {
  network_invalid,
  invalid_model,
  invalid_judgments,
  invalid_matrix,
  missing_pair,
  duplicate_pair,
  foreign_node,
  rank_out_of_table,
  context_mismatch,
  too_small,
  no_convergence,
  missing_context,
  consistency_gate_failed,
  not_stochastic,
  no_limit,
  degenerate_limit,
  incomplete,
  unknown_session,
  unknown_expert,
  unknown_context,
  unknown_pair,
  value_not_on_scale,
  invalid_request,
  session_computed,
  io,
};

// Stable wire name, e.g. "MissingPair". Used in CLI diagnostics and HTTP error bodies.
std::string_view code_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

struct GateViolation {
  std::string context;
  double ci = 0.0;
  double cr = 0.0;
};

class GateFailure : public Error {
 public:
  explicit GateFailure(std::vector<GateViolation> offending);

  const std::vector<GateViolation>& offending() const noexcept { return offending_; }

 private:
  std::vector<GateViolation> offending_;
};

struct MissingJudgment {
  std::string expert;
  std::string context;
  std::string row;
  std::string col;
};

class IncompleteError : public Error {
 public:
  explicit IncompleteError(std::vector<MissingJudgment> missing);

  const std::vector<MissingJudgment>& missing() const noexcept { return missing_; }

 private:
  std::vector<MissingJudgment> missing_;
};

}  // namespace anp
