#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include <json.hpp>

#include "anp/error.hpp"
#include "anp/judgment.hpp"
#include "anp/network.hpp"

namespace anp {

// Model documents: {goal, clusters: [{id, label, elements: [{id, label, definition}]}],
// links: [{source, target, kind}]}. `goal` is an id string or {id, label}. Unknown keys
// are rejected. Structural problems are left to validate_network.
DecisionNetwork parse_model(const nlohmann::json& doc);
// Error(io) if the file cannot be read, Error(invalid_model) if it does not parse.
DecisionNetwork load_model(const std::filesystem::path& path);
nlohmann::json model_to_json(const DecisionNetwork& net);

// Judgment documents: [{context, row, col, value, expert}] with value "1/9".."9".
// Errors: invalid_judgments, value_not_on_scale.
std::vector<Judgment> parse_judgments(const nlohmann::json& doc);
std::vector<Judgment> load_judgments(const std::filesystem::path& path);
nlohmann::json judgments_to_json(std::span<const Judgment> judgments);

// Reads a whole JSON file. Error(io) when unreadable, `parse_error` when malformed.
nlohmann::json read_json_file(const std::filesystem::path& path, Errc parse_error);

}  // namespace anp
