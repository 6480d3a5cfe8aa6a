#include "anp/report.hpp"

#include <algorithm>
#include <cstdio>

namespace anp {

using nlohmann::json;

json report_to_json(const PipelineResult& result) {
  json criteria = json::array();
  for (const auto& c : result.ranking.criteria) {
    criteria.push_back({{"id", c.id.str()}, {"weight", c.weight}, {"rank", c.rank}});
  }
  json elements = json::array();
  for (const auto& e : result.ranking.elements) {
    elements.push_back({{"id", e.id.str()}, {"cluster", e.cluster.str()}, {"weight", e.weight}, {"rank", e.rank}});
  }
  json checks = json::array();
  for (const auto& c : result.contexts) {
    checks.push_back({{"context", c.context.control.str()},
                      {"ci", c.consistency.ci},
                      {"ri", c.consistency.ri},
                      {"cr", c.consistency.cr},
                      {"pass", c.consistency.pass}});
  }
  return {{"criteria", std::move(criteria)},
          {"elements", std::move(elements)},
          {"consistency", std::move(checks)},
          {"convergence", {{"mode", std::string(mode_name(result.limit.mode))},
                           {"iterations", result.limit.iterations}}}};
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

std::string format_ranking_table(const RankedPriorities& ranking) {
  std::size_t id_width = 2;
  std::size_t label_width = 5;
  for (const auto& e : ranking.elements) {
    id_width = std::max(id_width, e.id.str().size());
    label_width = std::max(label_width, e.label.size());
  }
  std::string out;
  char line[512];
  std::snprintf(line, sizeof line, "%4s  %-*s  %-*s  %s\n", "rank", static_cast<int>(id_width), "id",
                static_cast<int>(label_width), "label", "weight");
  out += line;
  for (const auto& e : ranking.elements) {
    std::snprintf(line, sizeof line, "%4zu  %-*s  %-*s  %.5f\n", e.rank, static_cast<int>(id_width),
                  e.id.str().c_str(), static_cast<int>(label_width), e.label.c_str(), e.weight);
    out += line;
  }
  return out;
}

std::string format_matrix(const Supermatrix& m) {
  std::string out;
  char cell[40];
  for (Eigen::Index r = 0; r < m.entries.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.entries.cols(); ++c) {
      std::snprintf(cell, sizeof cell, "%.12g", m.entries(r, c));
      if (c > 0) out += ' ';
      out += cell;
    }
    out += '\n';
  }
  return out;
}

}  // namespace anp
