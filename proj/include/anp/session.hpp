#pragma once

#include <compare>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "anp/error.hpp"
#include "anp/judgment.hpp"
#include "anp/network.hpp"

namespace anp {

enum class SessionStatus { collecting, complete, computed };

std::string_view status_name(SessionStatus status) noexcept;

struct Question {
  NodeId context;
  NodeId row;
  NodeId col;
  std::string prompt;
};

/// One question per unordered peer pair per context, in context then peer order.
struct Questionnaire {
  std::vector<Question> questions;
};

Questionnaire make_questionnaire(const DecisionNetwork& net);
nlohmann::json questionnaire_to_json(const Questionnaire& q);

/// Stored judgment slot. `row` precedes `col` in the context's peer order.
struct JudgmentKey {
  std::string expert;
  NodeId context;
  NodeId row;
  NodeId col;

  friend auto operator<=>(const JudgmentKey&, const JudgmentKey&) = default;
  friend bool operator==(const JudgmentKey&, const JudgmentKey&) = default;
};

struct Session {
  std::string id;
  DecisionNetwork network;
  std::vector<ComparisonContext> contexts;
  std::vector<std::string> experts;
  std::map<JudgmentKey, SaatyValue> judgments;
  SessionStatus status = SessionStatus::collecting;
  std::optional<nlohmann::json> report;

  std::size_t expected_count() const noexcept;
  std::size_t stored_count() const noexcept { return judgments.size(); }
  std::vector<Judgment> judgment_list() const;
  std::vector<MissingJudgment> missing() const;

  nlohmann::json to_json() const;
  static Session from_json(const nlohmann::json& doc);
};

struct WorstPair {
  NodeId row;
  NodeId col;
  double severity = 0.0;
};

struct ExpertContextCheck {
  bool complete = false;
  std::optional<ConsistencyReport> consistency;
  std::optional<WorstPair> worst;  // only for contexts with three or more peers
};

struct SubmissionResult {
  std::string expert;
  NodeId context;
  ExpertContextCheck check;
  std::size_t stored = 0;
  std::size_t expected = 0;
  SessionStatus status = SessionStatus::collecting;
};

nlohmann::json to_json(const ConsistencyReport& report);
nlohmann::json to_json(const SubmissionResult& result);

/// File-backed sessions, one JSON document per session in `data_dir`. Mutations of one
/// session are serialized; reads share a lock and see a consistent snapshot.
class SessionStore {
 public:
  // Loads every session document already present in `data_dir` (created if missing).
  explicit SessionStore(std::filesystem::path data_dir);

  // Errors: invalid_model (network fails validation), invalid_request (bad expert list).
  std::string create(const DecisionNetwork& net, const std::vector<std::string>& experts);
  std::vector<std::string> list() const;
  Session snapshot(const std::string& id) const;
  Questionnaire questionnaire(const std::string& id) const;

  // Stores (or replaces) one judgment. Errors: unknown_session, unknown_expert,
  // unknown_context, unknown_pair, session_computed.
  SubmissionResult submit(const std::string& id, const std::string& expert, const NodeId& context,
                          const NodeId& row, const NodeId& col, SaatyValue value);

  // Per-context reports for the aggregate and for each expert.
  nlohmann::json consistency(const std::string& id) const;

  // Runs the pipeline over the stored judgments and persists the report.
  // Errors: incomplete (IncompleteError), consistency_gate_failed (GateFailure).
  nlohmann::json compute(const std::string& id);

  std::optional<nlohmann::json> report(const std::string& id) const;

 private:
  struct Slot {
    mutable std::shared_mutex mutex;
    Session session;
  };

  std::shared_ptr<Slot> slot(const std::string& id) const;
  void persist(const Session& session) const;

  std::filesystem::path dir_;
  mutable std::mutex map_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> slots_;
};

}  // namespace anp
