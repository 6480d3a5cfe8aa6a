#include "anp/cli.hpp"

#include <pthread.h>
#include <sys/socket.h>
#include <unistd.h>

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "anp/error.hpp"
#include "anp/model_io.hpp"
#include "anp/pipeline.hpp"
#include "anp/report.hpp"
#include "anp/service.hpp"
#include "anp/session.hpp"

// After the Eigen-based headers: httplib pulls in <resolv.h>, whose `_res` macro breaks Eigen.
#include <httplib.h>

namespace anp::cli {

namespace {

int exit_code(const Error& e) { return e.code() == Errc::io ? kExitEnvironment : kExitDomain; }

void print_error(std::ostream& err, const Error& e) {
  err << "error: " << code_name(e.code()) << ": " << e.what() << '\n';
  if (const auto* gate = dynamic_cast<const GateFailure*>(&e)) {
    char line[160];
    for (const auto& v : gate->offending()) {
      std::snprintf(line, sizeof line, "  %s: CI=%.6f CR=%.6f\n", v.context.c_str(), v.ci, v.cr);
      err << line;
    }
  }
  if (const auto* incomplete = dynamic_cast<const IncompleteError*>(&e)) {
    for (const auto& m : incomplete->missing()) {
      err << "  missing " << m.expert << ' ' << m.context << ' ' << m.row << ' ' << m.col << '\n';
    }
  }
}

// A missing model is an environment problem; everything else about it is a domain one.
std::optional<DecisionNetwork> open_model(const std::filesystem::path& path, std::ostream& err, int& code) {
  if (!std::filesystem::exists(path)) {
    err << "error: model not found: " << path.string() << '\n';
    code = kExitEnvironment;
    return std::nullopt;
  }
  try {
    return load_model(path);
  } catch (const Error& e) {
    print_error(err, e);
    code = exit_code(e);
    return std::nullopt;
  }
}

void print_violations(const ValidationReport& report, std::ostream& out) {
  for (const auto& v : report.violations) out << "  " << kind_name(v.kind) << ": " << v.detail << '\n';
}

bool write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) return false;
  file << content;
  return static_cast<bool>(file.flush());
}

}  // namespace

int cmd_validate(const std::filesystem::path& model, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  const auto net = open_model(model, err, code);
  if (!net) return code;
  const auto report = validate_network(*net);
  if (report.ok()) {
    out << model.string() << ": ok (" << NodeIndex(*net).size() << " nodes, " << net->links.size()
        << " links)\n";
    return kExitOk;
  }
  out << model.string() << ": " << report.violations.size() << " violation(s)\n";
  print_violations(report, out);
  return kExitDomain;
}

int cmd_questionnaire(const std::filesystem::path& model, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  const auto net = open_model(model, err, code);
  if (!net) return code;
  const auto report = validate_network(*net);
  if (!report.ok()) {
    err << "error: invalid model\n";
    print_violations(report, err);
    return kExitDomain;
  }
  const auto questionnaire = make_questionnaire(*net);
  for (const auto& q : questionnaire.questions) {
    out << q.context.str() << ' ' << q.row.str() << ' ' << q.col.str() << "  " << q.prompt << '\n';
  }
  out << "total: " << questionnaire.questions.size() << '\n';
  return kExitOk;
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  const auto net = open_model(options.model, err, code);
  if (!net) return code;
  try {
    const auto judgments = load_judgments(options.judgments);
    const auto result = run_pipeline(*net, judgments);
    if (!write_file(options.report, dump_report(report_to_json(result)))) {
      err << "error: cannot write report: " << options.report.string() << '\n';
      return kExitEnvironment;
    }
    for (const auto& c : result.contexts) out << c.context.control.str() << ": " << format_consistency(c.consistency) << '\n';
    out << '\n' << format_ranking_table(result.ranking);
    if (options.debug_matrices) {
      out << "\nunweighted\n" << format_matrix(result.unweighted);
      out << "\nweighted\n" << format_matrix(result.weighted);
      out << "\nlimit\n" << format_matrix(result.limit.matrix);
    }
    return kExitOk;
  } catch (const Error& e) {
    print_error(err, e);
    return exit_code(e);
  }
}

int resolve_port(std::optional<int> flag, const char* env_value) {
  int port = 8080;
  if (flag) {
    port = *flag;
  } else if (env_value != nullptr && *env_value != '\0') {
    std::size_t used = 0;
    port = std::stoi(env_value, &used);
    if (used != std::char_traits<char>::length(env_value)) throw std::invalid_argument("ANP_PORT is not a number");
  }
  if (port < 0 || port > 65535) throw std::invalid_argument("port out of range");
  return port;
}

int cmd_serve(const ServeOptions& options, std::ostream& out, std::ostream& err) {
  int port = 0;
  try {
    port = resolve_port(options.port, std::getenv("ANP_PORT"));
  } catch (const std::exception& e) {
    err << "error: invalid port: " << e.what() << '\n';
    return kExitEnvironment;
  }

  std::optional<SessionStore> store;
  try {
    store.emplace(options.data_dir);
  } catch (const std::exception& e) {
    err << "error: cannot open data directory " << options.data_dir.string() << ": " << e.what() << '\n';
    return kExitEnvironment;
  }

  httplib::Server server;
  // Plain SO_REUSEADDR: the library default (SO_REUSEPORT) would let a second server share a busy port.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  });
  register_routes(server, *store, ServiceOptions{options.models_dir, options.ui_dir});

  if (!server.bind_to_port("127.0.0.1", port)) {
    err << "error: cannot bind 127.0.0.1:" << port << " (port in use?)\n";
    return kExitEnvironment;
  }

  // Block the stop signals in every thread so only the waiter below receives them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  std::thread waiter([&server, signals] {
    int received = 0;
    sigwait(&signals, &received);
    server.stop();
  });

  out << "listening on http://127.0.0.1:" << port << std::endl;
  const bool clean = server.listen_after_bind();
  if (!clean) kill(getpid(), SIGTERM);  // wake the waiter
  waiter.join();
  return clean ? kExitOk : kExitEnvironment;
}

}  // namespace anp::cli
