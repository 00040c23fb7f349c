#pragma once

#include <span>
#include <string>

#include "pivotkit/solve.hpp"

namespace pivotkit {

/// Identifier written into every report and required by schemas/report.schema.json.
inline constexpr const char* report_schema_id = "pivotkit.report/1";

/**
 * JSON document with one entry per run and, for every instance that has a
 * tpp run, the extra delays each other method produced relative to it.
 */
std::string report_json(std::span<const SolveReport> runs, int indent = 2);

/// Plain-text table of delayed counts per instance and method.
std::string delayed_table(std::span<const SolveReport> runs);

/// Writes report_json to `path`; throws Error when the file cannot be written.
void write_report(const std::string& path, std::span<const SolveReport> runs);

} // namespace pivotkit
