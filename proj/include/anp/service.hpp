#pragma once

#include <filesystem>
#include <optional>

#include "anp/error.hpp"
#include "anp/session.hpp"

namespace httplib {
class Server;
}

namespace anp {

struct ServiceOptions {
  // Directory searched when POST /sessions names a model file instead of inlining it.
  std::filesystem::path models_dir;
  // Static web client served under /ui when set.
  std::optional<std::filesystem::path> ui_dir;
};

/// HTTP status used for an error code in API responses.
int http_status(Errc code) noexcept;

/// Installs the session API on `server`:
///   GET  /sessions                       -> {sessions: [id]}
///   POST /sessions {model, experts}      -> 201 {session_id}
///   GET  /sessions/{id}/questionnaire    -> {questions, total}
///   PUT  /sessions/{id}/judgments        -> SubmissionResult
///   GET  /sessions/{id}/consistency      -> per-context reports
///   POST /sessions/{id}/compute          -> report
///   GET  /sessions/{id}/report           -> last computed report
/// Errors are {error: code, detail} with a 4xx status.
void register_routes(httplib::Server& server, SessionStore& store, const ServiceOptions& options);

}  // namespace anp
