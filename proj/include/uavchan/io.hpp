#pragma once

// File formats: sweep tables (CSV, JSON), fitted models (JSON) and
// adaptation traces (CSV, JSON). All writers are byte-deterministic.

#include "uavchan/adaptation.hpp"
#include "uavchan/experiments.hpp"
#include "uavchan/regression.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace uavchan::io {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

/// Header line of column names, then one line per row; '\n' line endings.
std::string table_to_csv(const SweepTable& table);
/// {"title": ..., "columns": [...], "rows": [[...], ...]}
std::string table_to_json(const SweepTable& table);

std::string model_to_json(const LinearModel& model);
/// Throws IoError when the document is malformed or violates the schema.
LinearModel model_from_json(std::string_view text);

/// Header `step,ts_bits,latency_ms,threshold_event`, event as 0/1.
std::string trace_to_csv(const AdaptationTrace& trace);
/// {"meta": {...params, start_ts_bits...}, "records": [{...}, ...]}
std::string trace_to_json(const AdaptationTrace& trace);

/// Throws IoError when the file cannot be read.
std::string read_file(const std::filesystem::path& path);
/// Truncates and writes; throws IoError on failure.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace uavchan::io
