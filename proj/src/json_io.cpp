#include "rgraph/json_io.hpp"

namespace rgraph {

using nlohmann::json;

namespace {

json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

void to_json(json& j, const StatisticValue& v) {
  j = json{{"kind", stat_kind_name(v.kind)}, {"value", finite_or_null(v.value)}};
  if (v.z_weighted) j["z_weighted"] = finite_or_null(*v.z_weighted);
  if (v.z_diff) j["z_diff"] = finite_or_null(*v.z_diff);
}

void to_json(json& j, const GraphSummary& s) {
  j = json{{"kind", graph_kind_name(s.kind)},
           {"n_nodes", s.n_nodes},
           {"n_edges", s.n_edges},
           {"max_degree", s.max_degree},
           {"degree_variation", s.degree_variation},
           {"mutual_edges", s.mutual_edges},
           {"converged", s.converged}};
}

void to_json(json& j, const LambdaValidity& v) {
  j = json{{"lambda", v.lambda},
           {"lambda_upper_bound", v.lambda_upper_bound},
           {"lambda_ok", v.lambda_ok},
           {"min_sample_bound", v.min_sample_bound},
           {"sample_size_ok", v.sample_size_ok},
           {"ok", v.ok}};
}

void to_json(json& j, const TestConfig& c) {
  j = json{{"graph", graph_kind_name(c.graph)},
           {"k", c.k},
           {"lambda", c.lambda},
           {"statistic", stat_kind_name(c.statistic)},
           {"mode", pvalue_mode_name(c.mode)},
           {"permutations", c.permutations},
           {"seed", c.seed},
           {"alpha", c.alpha},
           {"metric", metric_name(c.metric)},
           {"max_passes", c.max_passes}};
}

void to_json(json& j, const TestResult& r) {
  j = json{{"statistic", r.statistic},
           {"pvalue", r.pvalue},
           {"significant", r.significant},
           {"mode", pvalue_mode_name(r.mode)},
           {"m", r.m},
           {"n", r.n},
           {"graph_summary", r.graph},
           {"degenerate_covariance", r.degenerate}};
  if (r.lambda_check) j["lambda_validity"] = *r.lambda_check;
  if (!r.note.empty()) j["note"] = r.note;
}

void to_json(json& j, const ScanConfig& c) {
  j = json{{"graph", graph_kind_name(c.graph)},
           {"k", c.k},
           {"lambda", c.lambda},
           {"statistic", stat_kind_name(c.statistic)},
           {"permutations", c.permutations},
           {"seed", c.seed},
           {"alpha", c.alpha},
           {"metric", metric_name(c.metric)},
           {"max_passes", c.max_passes},
           {"boundary", c.boundary}};
}

void to_json(json& j, const ScanPoint& p) {
  j = json{{"t", p.t}, {"value", p.skipped ? json(nullptr) : finite_or_null(p.value)},
           {"skipped", p.skipped}};
}

void to_json(json& j, const ScanResult& r) {
  j = json{{"tau_hat", r.tau_hat},
           {"max_statistic", r.max_statistic},
           {"pvalue", r.pvalue},
           {"significant", r.significant},
           {"window", json{{"lo", r.window_lo}, {"hi", r.window_hi}}},
           {"n_skipped", r.n_skipped},
           {"graph_summary", r.graph},
           {"curve", r.curve}};
}

void to_json(json& j, const GraphStats& s) {
  j = json{{"n_nodes", s.n_nodes},
           {"n_edges", s.n_edges},
           {"max_degree", s.max_degree},
           {"degree_variation", s.degree_variation},
           {"mutual_edges", s.mutual_edges},
           {"sum_degree_sq", s.sum_degree_sq},
           {"degree_histogram", s.degree_histogram}};
}

void to_json(json& j, const DiagnosticsReport& r) {
  j = json{{"sum_degree_sq", r.sum_degree_sq},
           {"sum_abs_centered_cubed", r.sum_abs_centered_cubed},
           {"sum_centered_cubed", r.sum_centered_cubed},
           {"neighbor_cross_term", r.neighbor_cross_term},
           {"square_count", r.square_count ? json(*r.square_count) : json(nullptr)},
           {"degree_dist_variance", r.degree_dist_variance},
           {"max_degree", r.max_degree},
           {"ratio_degree_sq", finite_or_null(r.ratio_degree_sq)},
           {"ratio_abs_centered_cubed", finite_or_null(r.ratio_abs_centered_cubed)},
           {"ratio_centered_cubed", finite_or_null(r.ratio_centered_cubed)},
           {"ratio_cross", finite_or_null(r.ratio_cross)},
           {"ratio_square", finite_or_null(r.ratio_square)},
           {"degenerate_degrees", r.degenerate_degrees}};
}

void to_json(json& j, const SampleSizeCondition& c) {
  j = json{{"name", c.name},
           {"threshold", finite_or_null(c.threshold)},
           {"min_n", c.min_n},
           {"applicable", c.applicable}};
}

void to_json(json& j, const SampleSizeReport& r) {
  j = json{{"required_n", r.required_n},
           {"binding", r.binding},
           {"conditions", r.conditions},
           {"feasible", r.feasible}};
  if (!r.note.empty()) j["note"] = r.note;
}

void to_json(json& j, const MarginSpec& m) {
  j = json{{"family", family_name(m.family)},
           {"nu", m.nu},
           {"mean_rule", mean_rule_name(m.mean_rule)},
           {"cov_rule", cov_rule_name(m.cov_rule)},
           {"ar1_r", m.ar1_r}};
}

void from_json(const json& j, MarginSpec& m) {
  m.family = family_from_name(j.at("family").get<std::string>());
  m.nu = j.value("nu", 5.0);
  m.mean_rule = mean_rule_from_name(j.at("mean_rule").get<std::string>());
  m.cov_rule = cov_rule_from_name(j.at("cov_rule").get<std::string>());
  m.ar1_r = j.value("ar1_r", 0.0);
}

void to_json(json& j, const ScenarioSpec& s) {
  j = json{{"d", s.d}, {"delta", s.delta}, {"first", s.first}, {"second", s.second}};
  if (s.is_changepoint) {
    j["changepoint"] = json{{"length", s.length}, {"tau", s.tau}};
  } else {
    j["m"] = s.m;
    j["n"] = s.n;
  }
}

void from_json(const json& j, ScenarioSpec& s) {
  s.d = j.at("d").get<int>();
  s.delta = j.value("delta", 0.0);
  s.first = j.at("first").get<MarginSpec>();
  s.second = j.at("second").get<MarginSpec>();
  if (j.contains("changepoint")) {
    s.is_changepoint = true;
    s.length = j.at("changepoint").at("length").get<int>();
    s.tau = j.at("changepoint").at("tau").get<int>();
  } else {
    s.is_changepoint = false;
    s.m = j.at("m").get<int>();
    s.n = j.at("n").get<int>();
  }
}

void to_json(json& j, const PowerEstimate& p) {
  j = json{{"power", p.power},
           {"std_error", p.std_error},
           {"reps", p.reps},
           {"rejections", p.rejections}};
}

void to_json(json& j, const CpPowerAccuracy& c) {
  j = json{{"power", c.power},
           {"accuracy", c.accuracy},
           {"power_se", c.power_se},
           {"reps", c.reps},
           {"detections", c.detections},
           {"accurate", c.accurate}};
}

json versioned(json payload) {
  json j;
  j["schema_version"] = kSchemaVersion;
  for (auto& [key, value] : payload.items()) j[key] = std::move(value);
  return j;
}

json error_json(const std::string& code, const std::string& message) {
  return json{{"schema_version", kSchemaVersion},
              {"error", json{{"code", code}, {"message", message}}}};
}

}  // namespace rgraph
