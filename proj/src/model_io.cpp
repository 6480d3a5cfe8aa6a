#include "anp/model_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include "anp/error.hpp"

namespace anp {

namespace {

using nlohmann::json;

void require_object(const json& j, std::initializer_list<std::string_view> allowed,
                    std::initializer_list<std::string_view> required, std::string_view where, Errc code) {
  if (!j.is_object()) throw Error(code, std::string(where) + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw Error(code, std::string(where) + ": unknown key '" + key + "'");
  }
  for (auto r : required) {
    if (!j.contains(r)) throw Error(code, std::string(where) + ": missing key '" + std::string(r) + "'");
  }
}

std::string string_field(const json& j, const char* key, std::string_view where, Errc code,
                         bool optional = false) {
  if (!j.contains(key)) {
    if (optional) return {};
    throw Error(code, std::string(where) + ": missing key '" + key + "'");
  }
  if (!j.at(key).is_string()) throw Error(code, std::string(where) + ": '" + key + "' must be a string");
  return j.at(key).get<std::string>();
}

}  // namespace

DecisionNetwork parse_model(const json& doc) {
  constexpr Errc code = Errc::invalid_model;
  require_object(doc, {"goal", "clusters", "links"}, {"goal", "clusters"}, "model", code);

  DecisionNetwork net;
  const json& goal = doc.at("goal");
  if (goal.is_string()) {
    net.goal = NodeId(goal.get<std::string>());
    net.goal_label = net.goal.str();
  } else {
    require_object(goal, {"id", "label"}, {"id"}, "goal", code);
    net.goal = NodeId(string_field(goal, "id", "goal", code));
    net.goal_label = string_field(goal, "label", "goal", code, true);
    if (net.goal_label.empty()) net.goal_label = net.goal.str();
  }

  if (!doc.at("clusters").is_array()) throw Error(code, "model: 'clusters' must be an array");
  for (const json& c : doc.at("clusters")) {
    require_object(c, {"id", "label", "elements"}, {"id", "elements"}, "cluster", code);
    Cluster cluster;
    cluster.id = NodeId(string_field(c, "id", "cluster", code));
    const std::string where = "cluster '" + cluster.id.str() + "'";
    cluster.label = string_field(c, "label", where, code, true);
    if (!c.at("elements").is_array()) throw Error(code, where + ": 'elements' must be an array");
    for (const json& e : c.at("elements")) {
      require_object(e, {"id", "label", "definition"}, {"id"}, where + " element", code);
      Element element;
      element.id = NodeId(string_field(e, "id", where, code));
      element.label = string_field(e, "label", where, code, true);
      element.definition = string_field(e, "definition", where, code, true);
      cluster.elements.push_back(std::move(element));
    }
    net.clusters.push_back(std::move(cluster));
  }

  if (doc.contains("links")) {
    if (!doc.at("links").is_array()) throw Error(code, "model: 'links' must be an array");
    for (const json& l : doc.at("links")) {
      require_object(l, {"source", "target", "kind"}, {"source", "target", "kind"}, "link", code);
      DependencyLink link;
      link.source = NodeId(string_field(l, "source", "link", code));
      link.target = NodeId(string_field(l, "target", "link", code));
      const std::string kind = string_field(l, "kind", "link", code);
      if (kind == "outer") {
        link.kind = LinkKind::outer;
      } else if (kind == "inner") {
        link.kind = LinkKind::inner;
      } else {
        throw Error(code, "link: kind must be \"outer\" or \"inner\", got \"" + kind + "\"");
      }
      net.links.push_back(std::move(link));
    }
  }
  return net;
}

json read_json_file(const std::filesystem::path& path, Errc parse_error) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot read '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return json::parse(text.str());
  } catch (const json::parse_error& e) {
    throw Error(parse_error, path.string() + ": " + e.what());
  }
}

DecisionNetwork load_model(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw Error(Errc::io, "model not found: " + path.string());
  return parse_model(read_json_file(path, Errc::invalid_model));
}

json model_to_json(const DecisionNetwork& net) {
  json clusters = json::array();
  for (const auto& c : net.clusters) {
    json elements = json::array();
    for (const auto& e : c.elements) {
      elements.push_back({{"id", e.id.str()}, {"label", e.label}, {"definition", e.definition}});
    }
    clusters.push_back({{"id", c.id.str()}, {"label", c.label}, {"elements", std::move(elements)}});
  }
  json links = json::array();
  for (const auto& l : net.links) {
    links.push_back({{"source", l.source.str()},
                     {"target", l.target.str()},
                     {"kind", l.kind == LinkKind::inner ? "inner" : "outer"}});
  }
  return {{"goal", {{"id", net.goal.str()}, {"label", net.goal_label}}},
          {"clusters", std::move(clusters)},
          {"links", std::move(links)}};
}

std::vector<Judgment> parse_judgments(const json& doc) {
  constexpr Errc code = Errc::invalid_judgments;
  if (!doc.is_array()) throw Error(code, "judgments: expected an array");
  std::vector<Judgment> out;
  out.reserve(doc.size());
  for (const json& j : doc) {
    require_object(j, {"context", "row", "col", "value", "expert"},
                   {"context", "row", "col", "value", "expert"}, "judgment", code);
    Judgment judgment;
    judgment.context = NodeId(string_field(j, "context", "judgment", code));
    judgment.row = NodeId(string_field(j, "row", "judgment", code));
    judgment.col = NodeId(string_field(j, "col", "judgment", code));
    judgment.expert = string_field(j, "expert", "judgment", code);
    if (!j.at("value").is_string()) {
      throw Error(Errc::value_not_on_scale, "judgment value must be a string such as \"3\" or \"1/3\"");
    }
    judgment.value = SaatyValue::from_string(j.at("value").get<std::string>());
    out.push_back(std::move(judgment));
  }
  return out;
}

std::vector<Judgment> load_judgments(const std::filesystem::path& path) {
  return parse_judgments(read_json_file(path, Errc::invalid_judgments));
}

json judgments_to_json(std::span<const Judgment> judgments) {
  json out = json::array();
  for (const auto& j : judgments) {
    out.push_back({{"context", j.context.str()},
                   {"row", j.row.str()},
                   {"col", j.col.str()},
                   {"value", j.value.str()},
                   {"expert", j.expert}});
  }
  return out;
}

}  // namespace anp
