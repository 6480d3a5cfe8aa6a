#include "anp/error.hpp"

#include <cstdio>

namespace anp {

std::string_view code_name(Errc code) noexcept {
  switch (code) {
    case Errc::network_invalid: return "NetworkInvalid";
    case Errc::invalid_model: return "InvalidModel";
    case Errc::invalid_judgments: return "InvalidJudgments";
    case Errc::invalid_matrix: return "InvalidMatrix";
    case Errc::missing_pair: return "MissingPair";
    case Errc::duplicate_pair: return "DuplicatePair";
    case Errc::foreign_node: return "ForeignNode";
    case Errc::rank_out_of_table: return "RankOutOfTable";
    case Errc::context_mismatch: return "ContextMismatch";
    case Errc::too_small: return "TooSmall";
    case Errc::no_convergence: return "NoConvergence";
    case Errc::missing_context: return "MissingContext";
    case Errc::consistency_gate_failed: return "ConsistencyGateFailed";
    case Errc::not_stochastic: return "NotStochastic";
    case Errc::no_limit: return "NoLimit";
    case Errc::degenerate_limit: return "DegenerateLimit";
    case Errc::incomplete: return "Incomplete";
    case Errc::unknown_session: return "UnknownSession";
    case Errc::unknown_expert: return "UnknownExpert";
    case Errc::unknown_context: return "UnknownContext";
    case Errc::unknown_pair: return "UnknownPair";
    case Errc::value_not_on_scale: return "ValueNotOnScale";
    case Errc::invalid_request: return "InvalidRequest";
    case Errc::session_computed: return "SessionComputed";
    case Errc::io: return "Io";
  }
  return "Unknown";
}

namespace {

std::string describe(const std::vector<GateViolation>& offending) {
  std::string out = "consistency gate failed for";
  char buf[64];
  for (const auto& v : offending) {
    std::snprintf(buf, sizeof buf, " CR=%.6f", v.cr);
    out += " " + v.context + buf;
  }
  return out;
}

std::string describe(const std::vector<MissingJudgment>& missing) {
  return std::to_string(missing.size()) + " judgment(s) missing";
}

}  // namespace

GateFailure::GateFailure(std::vector<GateViolation> offending)
    : Error(Errc::consistency_gate_failed, describe(offending)),
      offending_(std::move(offending)) {}

IncompleteError::IncompleteError(std::vector<MissingJudgment> missing)
    : Error(Errc::incomplete, describe(missing)), missing_(std::move(missing)) {}

}  // namespace anp
