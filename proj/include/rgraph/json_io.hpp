#pragma once

#include <json.hpp>

#include "rgraph/changepoint.hpp"
#include "rgraph/graphs.hpp"
#include "rgraph/inference.hpp"
#include "rgraph/simulate.hpp"

namespace rgraph {

/// Version stamp carried by every JSON document the tool emits.
inline constexpr int kSchemaVersion = 1;

void to_json(nlohmann::json& j, const StatisticValue& v);
void to_json(nlohmann::json& j, const GraphSummary& s);
void to_json(nlohmann::json& j, const LambdaValidity& v);
void to_json(nlohmann::json& j, const TestConfig& c);
void to_json(nlohmann::json& j, const TestResult& r);
void to_json(nlohmann::json& j, const ScanConfig& c);
void to_json(nlohmann::json& j, const ScanPoint& p);
void to_json(nlohmann::json& j, const ScanResult& r);
void to_json(nlohmann::json& j, const GraphStats& s);
void to_json(nlohmann::json& j, const DiagnosticsReport& r);
void to_json(nlohmann::json& j, const SampleSizeCondition& c);
void to_json(nlohmann::json& j, const SampleSizeReport& r);
void to_json(nlohmann::json& j, const MarginSpec& m);
void to_json(nlohmann::json& j, const ScenarioSpec& s);
void from_json(const nlohmann::json& j, MarginSpec& m);
void from_json(const nlohmann::json& j, ScenarioSpec& s);
void to_json(nlohmann::json& j, const PowerEstimate& p);
void to_json(nlohmann::json& j, const CpPowerAccuracy& c);

/// Wraps a payload with the schema version.
nlohmann::json versioned(nlohmann::json payload);

/// Structured error document: {"schema_version":., "error":{"code":., "message":.}}.
nlohmann::json error_json(const std::string& code, const std::string& message);

}  // namespace rgraph
