#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "anp/pipeline.hpp"
#include "anp/supermatrix.hpp"

namespace anp {

// {criteria: [{id, weight, rank}], elements: [{id, cluster, weight, rank}],
//  consistency: [{context, ci, ri, cr, pass}], convergence: {mode, iterations}}
// Arrays follow rank order (consistency follows context order); weights keep full precision.
nlohmann::json report_to_json(const PipelineResult& result);

// Two-space indented, trailing newline. Keys are sorted, so equal reports dump byte-identically.
std::string dump_report(const nlohmann::json& report);

// One line per element: rank, id, label, weight to 5 decimals.
std::string format_ranking_table(const RankedPriorities& ranking);

// One row per line, entries to 12 significant digits.
std::string format_matrix(const Supermatrix& m);

}  // namespace anp
