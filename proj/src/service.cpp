#include "anp/service.hpp"

#include <httplib.h>

#include "anp/model_io.hpp"

namespace anp {

using nlohmann::json;

int http_status(Errc code) noexcept {
  switch (code) {
    case Errc::unknown_session: return 404;
    case Errc::incomplete:
    case Errc::session_computed: return 409;
    case Errc::consistency_gate_failed: return 422;
    case Errc::io:
    case Errc::no_convergence:
    case Errc::no_limit:
    case Errc::not_stochastic:
    case Errc::degenerate_limit: return 500;
    default: return 400;
  }
}

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json error_body(const Error& e) {
  json body = {{"error", std::string(code_name(e.code()))}, {"detail", e.what()}};
  if (const auto* gate = dynamic_cast<const GateFailure*>(&e)) {
    json contexts = json::array();
    for (const auto& v : gate->offending()) contexts.push_back({{"context", v.context}, {"ci", v.ci}, {"cr", v.cr}});
    body["contexts"] = std::move(contexts);
  }
  if (const auto* incomplete = dynamic_cast<const IncompleteError*>(&e)) {
    json missing = json::array();
    for (const auto& m : incomplete->missing()) {
      missing.push_back({{"expert", m.expert}, {"context", m.context}, {"row", m.row}, {"col", m.col}});
    }
    body["missing"] = std::move(missing);
  }
  return body;
}

// Runs a handler, mapping library errors and malformed bodies to JSON error responses.
template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const Error& e) {
      send_json(res, http_status(e.code()), error_body(e));
    } catch (const json::exception& e) {
      send_json(res, 400, {{"error", "InvalidRequest"}, {"detail", e.what()}});
    } catch (const std::exception& e) {
      send_json(res, 500, {{"error", "Internal"}, {"detail", e.what()}});
    }
  };
}

json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw Error(Errc::invalid_request, std::string("body is not JSON: ") + e.what());
  }
}

std::string string_member(const json& body, const char* key) {
  if (!body.is_object() || !body.contains(key) || !body.at(key).is_string()) {
    throw Error(Errc::invalid_request, std::string("'") + key + "' must be a string");
  }
  return body.at(key).get<std::string>();
}

DecisionNetwork resolve_model(const json& model, const ServiceOptions& options) {
  if (model.is_object()) return parse_model(model);
  if (!model.is_string()) throw Error(Errc::invalid_request, "'model' must be a model document or a file name");
  const std::filesystem::path name(model.get<std::string>());
  if (name.empty() || name.has_parent_path() || name.filename() != name || name == "..") {
    throw Error(Errc::invalid_request, "model file name must not contain a path");
  }
  auto path = options.models_dir / name;
  if (!std::filesystem::exists(path) && path.extension() != ".json") {
    path = options.models_dir / (name.string() + ".model.json");
  }
  try {
    return load_model(path);
  } catch (const Error& e) {
    if (e.code() == Errc::io) throw Error(Errc::invalid_model, "model '" + name.string() + "' not found");
    throw;
  }
}

}  // namespace

void register_routes(httplib::Server& server, SessionStore& store, const ServiceOptions& options) {
  server.Get("/sessions", guarded([&store](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, {{"sessions", store.list()}});
  }));

  server.Post("/sessions", guarded([&store, options](const httplib::Request& req, httplib::Response& res) {
    const json body = parse_body(req);
    if (!body.is_object() || !body.contains("model") || !body.contains("experts")) {
      throw Error(Errc::invalid_request, "body must be {model, experts}");
    }
    const auto net = resolve_model(body.at("model"), options);
    if (!body.at("experts").is_array()) throw Error(Errc::invalid_request, "'experts' must be an array");
    const auto experts = body.at("experts").get<std::vector<std::string>>();
    send_json(res, 201, {{"session_id", store.create(net, experts)}});
  }));

  server.Get(R"(/sessions/([^/]+)/questionnaire)",
             guarded([&store](const httplib::Request& req, httplib::Response& res) {
               send_json(res, 200, questionnaire_to_json(store.questionnaire(req.matches[1])));
             }));

  server.Put(R"(/sessions/([^/]+)/judgments)", guarded([&store](const httplib::Request& req, httplib::Response& res) {
    const json body = parse_body(req);
    const auto value = SaatyValue::from_string(string_member(body, "value"));
    const auto result = store.submit(req.matches[1], string_member(body, "expert"),
                                     NodeId(string_member(body, "context")), NodeId(string_member(body, "row")),
                                     NodeId(string_member(body, "col")), value);
    send_json(res, 200, to_json(result));
  }));

  server.Get(R"(/sessions/([^/]+)/consistency)",
             guarded([&store](const httplib::Request& req, httplib::Response& res) {
               send_json(res, 200, store.consistency(req.matches[1]));
             }));

  server.Post(R"(/sessions/([^/]+)/compute)", guarded([&store](const httplib::Request& req, httplib::Response& res) {
    send_json(res, 200, store.compute(req.matches[1]));
  }));

  server.Get(R"(/sessions/([^/]+)/report)", guarded([&store](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    if (auto report = store.report(id)) {
      send_json(res, 200, *report);
    } else {
      send_json(res, 404, {{"error", "NotComputed"}, {"detail", "session '" + id + "' has no report yet"}});
    }
  }));

  if (options.ui_dir) server.set_mount_point("/ui", options.ui_dir->string());
}

}  // namespace anp
