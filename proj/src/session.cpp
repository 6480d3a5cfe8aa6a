#include "anp/session.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

#include "anp/error.hpp"
#include "anp/model_io.hpp"
#include "anp/pipeline.hpp"
#include "anp/report.hpp"

namespace anp {

using nlohmann::json;

std::string_view status_name(SessionStatus status) noexcept {
  switch (status) {
    case SessionStatus::collecting: return "collecting";
    case SessionStatus::complete: return "complete";
    case SessionStatus::computed: return "computed";
  }
  return "collecting";
}

namespace {

SessionStatus parse_status(const std::string& s) {
  if (s == "collecting") return SessionStatus::collecting;
  if (s == "complete") return SessionStatus::complete;
  if (s == "computed") return SessionStatus::computed;
  throw Error(Errc::invalid_request, "unknown session status '" + s + "'");
}

std::string prompt_for(const DecisionNetwork& net, const NodeId& control, const NodeId& row, const NodeId& col) {
  return "With respect to " + label_of(net, control) + ", how much more important is " + label_of(net, row) +
         " than " + label_of(net, col) + "?";
}

const ComparisonContext* find_context(const Session& s, const NodeId& id) {
  for (const auto& c : s.contexts) {
    if (c.control == id) return &c;
  }
  return nullptr;
}

std::optional<std::size_t> peer_position(const ComparisonContext& ctx, const NodeId& id) {
  auto it = std::find(ctx.peers.begin(), ctx.peers.end(), id);
  if (it == ctx.peers.end()) return std::nullopt;
  return static_cast<std::size_t>(it - ctx.peers.begin());
}

std::vector<Judgment> expert_judgments(const Session& s, const std::string& expert, const NodeId& context) {
  std::vector<Judgment> out;
  for (const auto& [key, value] : s.judgments) {
    if (key.expert == expert && key.context == context) out.push_back({key.context, key.row, key.col, value, key.expert});
  }
  return out;
}

ExpertContextCheck check_expert(const Session& s, const ComparisonContext& ctx, const std::string& expert) {
  ExpertContextCheck check;
  const auto mine = expert_judgments(s, expert, ctx.control);
  if (mine.size() != ctx.question_count()) return check;
  check.complete = true;
  const auto matrix = build_matrix(ctx, mine);
  const auto pv = priority_vector_gm(matrix);
  check.consistency = consistency(pv, ctx.peers.size());
  if (ctx.peers.size() >= 3) {
    const auto hint = worst_triad(matrix, pv);
    check.worst = WorstPair{ctx.peers[hint.row], ctx.peers[hint.col], hint.severity};
  }
  return check;
}

std::string random_id() {
  static std::mutex mutex;
  static std::mt19937_64 engine{std::random_device{}()};
  std::lock_guard lock(mutex);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id(16, '0');
  for (auto& ch : id) ch = kHex[engine() & 0xF];
  return id;
}

}  // namespace

Questionnaire make_questionnaire(const DecisionNetwork& net) {
  Questionnaire q;
  for (const auto& ctx : comparison_contexts(net)) {
    for (std::size_t i = 0; i < ctx.peers.size(); ++i) {
      for (std::size_t k = i + 1; k < ctx.peers.size(); ++k) {
        q.questions.push_back({ctx.control, ctx.peers[i], ctx.peers[k], prompt_for(net, ctx.control, ctx.peers[i], ctx.peers[k])});
      }
    }
  }
  return q;
}

json questionnaire_to_json(const Questionnaire& q) {
  json questions = json::array();
  for (const auto& item : q.questions) {
    questions.push_back({{"context", item.context.str()},
                         {"row", item.row.str()},
                         {"col", item.col.str()},
                         {"prompt", item.prompt}});
  }
  return {{"questions", std::move(questions)}, {"total", q.questions.size()}};
}

std::size_t Session::expected_count() const noexcept {
  return experts.size() * question_count(contexts);
}

std::vector<Judgment> Session::judgment_list() const {
  std::vector<Judgment> out;
  out.reserve(judgments.size());
  for (const auto& [key, value] : judgments) out.push_back({key.context, key.row, key.col, value, key.expert});
  return out;
}

std::vector<MissingJudgment> Session::missing() const {
  std::vector<MissingJudgment> out;
  for (const auto& expert : experts) {
    for (const auto& c : contexts) {
      for (std::size_t i = 0; i < c.peers.size(); ++i) {
        for (std::size_t k = i + 1; k < c.peers.size(); ++k) {
          if (!judgments.contains({expert, c.control, c.peers[i], c.peers[k]})) {
            out.push_back({expert, c.control.str(), c.peers[i].str(), c.peers[k].str()});
          }
        }
      }
    }
  }
  return out;
}

json Session::to_json() const {
  json doc = {{"id", id},
              {"model", model_to_json(network)},
              {"experts", experts},
              {"judgments", judgments_to_json(judgment_list())},
              {"status", std::string(status_name(status))}};
  if (report) doc["report"] = *report;
  return doc;
}

Session Session::from_json(const json& doc) {
  Session s;
  s.id = doc.at("id").get<std::string>();
  s.network = parse_model(doc.at("model"));
  s.contexts = comparison_contexts(s.network);
  s.experts = doc.at("experts").get<std::vector<std::string>>();
  for (const auto& j : parse_judgments(doc.at("judgments"))) {
    s.judgments[{j.expert, j.context, j.row, j.col}] = j.value;
  }
  s.status = parse_status(doc.at("status").get<std::string>());
  if (doc.contains("report")) s.report = doc.at("report");
  return s;
}

json to_json(const ConsistencyReport& report) {
  return {{"ci", report.ci}, {"ri", report.ri}, {"cr", report.cr}, {"pass", report.pass}};
}

json to_json(const SubmissionResult& result) {
  json out = {{"expert", result.expert},
              {"context", result.context.str()},
              {"status", result.check.complete ? "complete" : "incomplete"},
              {"consistency", nullptr},
              {"worst", nullptr},
              {"progress", {{"stored", result.stored}, {"expected", result.expected}}},
              {"session_status", std::string(status_name(result.status))}};
  if (result.check.consistency) out["consistency"] = to_json(*result.check.consistency);
  if (result.check.worst) {
    out["worst"] = {{"row", result.check.worst->row.str()},
                    {"col", result.check.worst->col.str()},
                    {"severity", result.check.worst->severity}};
  }
  return out;
}

SessionStore::SessionStore(std::filesystem::path data_dir) : dir_(std::move(data_dir)) {
  std::filesystem::create_directories(dir_);
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    if (entry.path().extension() != ".json") continue;
    auto s = Session::from_json(read_json_file(entry.path(), Errc::invalid_request));
    auto slot = std::make_shared<Slot>();
    slot->session = std::move(s);
    slots_.emplace(slot->session.id, std::move(slot));
  }
}

std::shared_ptr<SessionStore::Slot> SessionStore::slot(const std::string& id) const {
  std::lock_guard lock(map_mutex_);
  auto it = slots_.find(id);
  if (it == slots_.end()) throw Error(Errc::unknown_session, "no session '" + id + "'");
  return it->second;
}

void SessionStore::persist(const Session& session) const {
  const auto path = dir_ / (session.id + ".json");
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io, "cannot write '" + tmp.string() + "'");
    out << session.to_json().dump(2) << '\n';
    if (!out) throw Error(Errc::io, "write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

std::string SessionStore::create(const DecisionNetwork& net, const std::vector<std::string>& experts) {
  const auto report = validate_network(net);
  if (!report.ok()) {
    std::string detail;
    for (const auto& v : report.violations) {
      if (!detail.empty()) detail += "; ";
      detail += std::string(kind_name(v.kind)) + ": " + v.detail;
    }
    throw Error(Errc::invalid_model, detail);
  }
  if (experts.empty()) throw Error(Errc::invalid_request, "at least one expert is required");
  std::set<std::string> unique;
  for (const auto& e : experts) {
    if (e.empty()) throw Error(Errc::invalid_request, "expert ids must be nonempty");
    if (!unique.insert(e).second) throw Error(Errc::invalid_request, "expert '" + e + "' listed twice");
  }

  auto slot = std::make_shared<Slot>();
  Session& s = slot->session;
  s.network = net;
  s.contexts = comparison_contexts(net);
  s.experts = experts;
  s.status = s.expected_count() == 0 ? SessionStatus::complete : SessionStatus::collecting;

  std::lock_guard lock(map_mutex_);
  do {
    s.id = random_id();
  } while (slots_.contains(s.id));
  persist(s);
  const auto id = s.id;
  slots_.emplace(id, std::move(slot));
  return id;
}

std::vector<std::string> SessionStore::list() const {
  std::lock_guard lock(map_mutex_);
  std::vector<std::string> ids;
  for (const auto& [id, _] : slots_) ids.push_back(id);
  return ids;
}

Session SessionStore::snapshot(const std::string& id) const {
  auto s = slot(id);
  std::shared_lock lock(s->mutex);
  return s->session;
}

Questionnaire SessionStore::questionnaire(const std::string& id) const {
  auto s = slot(id);
  std::shared_lock lock(s->mutex);
  return make_questionnaire(s->session.network);
}

SubmissionResult SessionStore::submit(const std::string& id, const std::string& expert, const NodeId& context,
                                      const NodeId& row, const NodeId& col, SaatyValue value) {
  auto s = slot(id);
  std::unique_lock lock(s->mutex);
  Session& session = s->session;

  if (session.status == SessionStatus::computed) {
    throw Error(Errc::session_computed, "session '" + id + "' has already been computed");
  }
  if (std::find(session.experts.begin(), session.experts.end(), expert) == session.experts.end()) {
    throw Error(Errc::unknown_expert, "no expert '" + expert + "' in session '" + id + "'");
  }
  const ComparisonContext* ctx = find_context(session, context);
  if (!ctx) throw Error(Errc::unknown_context, "no context '" + context.str() + "'");
  const auto r = peer_position(*ctx, row);
  const auto c = peer_position(*ctx, col);
  if (!r || !c || *r == *c) {
    throw Error(Errc::unknown_pair, "(" + row.str() + ", " + col.str() + ") is not a pair of context '" +
                                        context.str() + "'");
  }

  if (*r < *c) {
    session.judgments[{expert, context, row, col}] = value;
  } else {
    session.judgments[{expert, context, col, row}] = value.reciprocal();
  }
  session.status = session.stored_count() == session.expected_count() ? SessionStatus::complete
                                                                      : SessionStatus::collecting;
  persist(session);

  SubmissionResult result;
  result.expert = expert;
  result.context = context;
  result.check = check_expert(session, *ctx, expert);
  result.stored = session.stored_count();
  result.expected = session.expected_count();
  result.status = session.status;
  return result;
}

json SessionStore::consistency(const std::string& id) const {
  auto s = slot(id);
  std::shared_lock lock(s->mutex);
  const Session& session = s->session;

  json contexts = json::array();
  for (const auto& ctx : session.contexts) {
    json experts = json::object();
    std::vector<ComparisonMatrix> matrices;
    for (const auto& expert : session.experts) {
      const auto check = check_expert(session, ctx, expert);
      json entry = {{"status", check.complete ? "complete" : "incomplete"}, {"consistency", nullptr}, {"worst", nullptr}};
      if (check.consistency) entry["consistency"] = to_json(*check.consistency);
      if (check.worst) {
        entry["worst"] = {{"row", check.worst->row.str()}, {"col", check.worst->col.str()},
                          {"severity", check.worst->severity}};
      }
      experts[expert] = std::move(entry);
      if (check.complete) matrices.push_back(build_matrix(ctx, expert_judgments(session, expert, ctx.control)));
    }
    json aggregate = nullptr;
    if (matrices.size() == session.experts.size()) {
      aggregate = to_json(anp::consistency(priority_vector_gm(aggregate_experts(matrices)), ctx.peers.size()));
    }
    contexts.push_back({{"context", ctx.control.str()}, {"aggregate", std::move(aggregate)}, {"experts", std::move(experts)}});
  }
  return {{"contexts", std::move(contexts)},
          {"progress", {{"stored", session.stored_count()}, {"expected", session.expected_count()}}},
          {"session_status", std::string(status_name(session.status))}};
}

json SessionStore::compute(const std::string& id) {
  auto s = slot(id);
  std::unique_lock lock(s->mutex);
  Session& session = s->session;
  if (session.status == SessionStatus::collecting) throw IncompleteError(session.missing());

  const auto result = run_pipeline(session.network, session.judgment_list());
  session.report = report_to_json(result);
  session.status = SessionStatus::computed;
  persist(session);
  return *session.report;
}

std::optional<json> SessionStore::report(const std::string& id) const {
  auto s = slot(id);
  std::shared_lock lock(s->mutex);
  return s->session.report;
}

}  // namespace anp
