/**
 * @file report.hpp
 * @brief JSON and CSV serialization of metric and job reports
 */
#pragma once

#include <aquapipe/pipeline/pipeline.hpp>

#include <json.hpp>

#include <string>

namespace aquapipe::pipeline {

nlohmann::json to_json(const metrics::MetricReport& r);
metrics::MetricReport metric_report_from_json(const nlohmann::json& j);

/// Entry with after - before metric deltas; wall time only when requested.
nlohmann::json to_json(const JobEntry& e, bool include_timing = true);
nlohmann::json to_json(const JobReport& r, bool include_timing = true);

/// One header row plus one row per entry.
std::string to_csv(const JobReport& r, bool include_timing = true);

/// Writes `<stem>.json` and `<stem>.csv` next to each other.
void write_report(const JobReport& r, const std::filesystem::path& json_path, bool include_timing = true);

}  // namespace aquapipe::pipeline
