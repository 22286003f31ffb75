#include "cli_app.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "rgraph/changepoint.hpp"
#include "rgraph/inference.hpp"
#include "rgraph/json_io.hpp"
#include "rgraph/parallel.hpp"
#include "rgraph/simulate.hpp"
#include "rgraph/svg.hpp"

namespace rgraph::cli {

namespace {

using nlohmann::json;

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  require(out.good(), ErrorCode::kIoError, "cannot open " + path + " for writing");
  out << content;
  require(out.good(), ErrorCode::kIoError, "failed writing " + path);
}

void emit_json(const json& doc, const std::string& out_path) {
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  if (text.find(':') != std::string::npos) {
    double lo = 0, step = 0, hi = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(text);
    ss >> lo >> c1 >> step >> c2 >> hi;
    require(!ss.fail() && c1 == ':' && c2 == ':' && step > 0, ErrorCode::kInvalidArgument,
            "grid range must be lo:step:hi");
    for (double v = lo; v <= hi + 1e-12; v += step) grid.push_back(v);
  } else {
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      if (cell.empty()) continue;
      grid.push_back(std::stod(cell));
    }
  }
  require(!grid.empty(), ErrorCode::kInvalidArgument, "empty grid");
  return grid;
}

struct CommonFlags {
  std::string graph = "krnng";
  int k = 5;
  double lambda = 0.3;
  std::string statistic = "get";
  std::string mode = "asymptotic";
  int permutations = 1000;
  std::uint64_t seed = kDefaultSeed;
  double alpha = 0.05;
  std::string metric = "euclidean";
  int max_passes = 100;
  unsigned threads = 0;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f, bool with_mode = true) {
  cmd->add_option("--graph", f.graph, "similarity graph: knng, kmst or krnng")
      ->check(CLI::IsMember({"knng", "kmst", "krnng"}))
      ->capture_default_str();
  cmd->add_option("--k", f.k, "out-degree / number of spanning trees")->capture_default_str();
  cmd->add_option("--lambda", f.lambda, "hub penalty weight for krnng")->capture_default_str();
  cmd->add_option("--stat", f.statistic, "statistic: get, wet, met or oet")
      ->check(CLI::IsMember({"get", "wet", "met", "oet"}))
      ->capture_default_str();
  if (with_mode) {
    cmd->add_option("--mode", f.mode, "p-value mode: asymptotic or permutation")
        ->check(CLI::IsMember({"asymptotic", "permutation"}))
        ->capture_default_str();
  }
  cmd->add_option("--b", f.permutations, "number of permutations")->capture_default_str();
  cmd->add_option("--seed", f.seed, "random seed; all randomness derives from it")
      ->capture_default_str();
  cmd->add_option("--alpha", f.alpha, "significance level")->capture_default_str();
  cmd->add_option("--metric", f.metric, "distance metric")
      ->check(CLI::IsMember({"euclidean", "squared_euclidean", "l1"}))
      ->capture_default_str();
  cmd->add_option("--max-passes", f.max_passes, "pass cap for the krnng builder")
      ->capture_default_str();
  cmd->add_option("--threads", f.threads,
                  "worker thread cap (default: RGRAPH_THREADS or all cores); "
                  "does not change results");
}

TestConfig to_test_config(const CommonFlags& f) {
  TestConfig cfg;
  cfg.graph = graph_kind_from_name(f.graph);
  cfg.k = f.k;
  cfg.lambda = f.lambda;
  cfg.statistic = stat_kind_from_name(f.statistic);
  cfg.mode = pvalue_mode_from_name(f.mode);
  cfg.permutations = f.permutations;
  cfg.seed = f.seed;
  cfg.alpha = f.alpha;
  cfg.metric = metric_from_name(f.metric);
  cfg.max_passes = f.max_passes;
  return cfg;
}

struct InputFlags {
  std::string path;
  bool header = false;
  std::string label_column;
};

void add_input_flags(CLI::App* cmd, InputFlags& f, bool required = true) {
  auto* opt = cmd->add_option("--input", f.path, "input CSV (rows = observations)");
  if (required) opt->required();
  cmd->add_flag("--header", f.header, "input has a header row");
  cmd->add_option("--label-col", f.label_column, "name of the label column (X/Y or 1/2)");
}

Dataset load_input(const InputFlags& f) {
  CsvOptions options;
  options.has_header = f.header;
  options.label_column = f.label_column;
  return load_dataset_file(f.path, options);
}

ScenarioSpec resolve_scenario(const std::string& preset, const std::string& spec_path,
                              const std::optional<int>& m, const std::optional<int>& n,
                              const std::optional<int>& d, const std::optional<double>& delta,
                              const std::optional<double>& nu, const std::optional<int>& length,
                              const std::optional<int>& tau) {
  require(preset.empty() != spec_path.empty(), ErrorCode::kInvalidArgument,
          "provide exactly one of --preset or --spec");
  ScenarioSpec spec;
  if (!preset.empty()) {
    spec = scenario_preset(preset);
  } else {
    std::ifstream in(spec_path);
    require(in.good(), ErrorCode::kIoError, "cannot open " + spec_path);
    json j;
    in >> j;
    spec = j.get<ScenarioSpec>();
  }
  if (m) spec.m = *m;
  if (n) spec.n = *n;
  if (d) spec.d = *d;
  if (delta) spec.delta = *delta;
  if (nu) {
    spec.first.nu = *nu;
    spec.second.nu = *nu;
  }
  if (length) spec.length = *length;
  if (tau) spec.tau = *tau;
  validate(spec);
  return spec;
}

void maybe_write_svg(const std::string& path, const std::vector<SvgSeries>& series,
                     const std::string& x_label, const std::string& y_label,
                     const std::string& title) {
  if (path.empty()) return;
  std::ostringstream os;
  write_line_chart(os, series, x_label, y_label, title);
  write_text_file(path, os.str());
}

// ---------------------------------------------------------------------------
// subcommand drivers
// ---------------------------------------------------------------------------

int run_graph(const InputFlags& input, const CommonFlags& flags, const std::string& edges_out,
              const std::string& stats_out, int square_cap) {
  const Dataset ds = load_input(input);
  const TestConfig cfg = to_test_config(flags);
  const BuiltGraph built = build_graph(ds, cfg);

  json stats_doc = versioned(json{{"summary", summarize(built.graph, built.converged)},
                                  {"stats", graph_stats(built.graph)},
                                  {"diagnostics", condition_diagnostics(built.graph, square_cap)},
                                  {"config", cfg}});

  if (!edges_out.empty()) {
    std::ostringstream os;
    write_edge_csv(built.graph, os);
    write_text_file(edges_out, os.str());
  }
  emit_json(stats_doc, stats_out);
  return 0;
}

int run_test2(const InputFlags& x_in, const InputFlags& y_in, const InputFlags& pooled_in,
              const CommonFlags& flags, const std::string& out_path) {
  const TestConfig cfg = to_test_config(flags);
  TestResult result;
  if (!pooled_in.path.empty()) {
    require(x_in.path.empty() && y_in.path.empty(), ErrorCode::kInvalidArgument,
            "use either --input with --label-col or --x/--y, not both");
    require(!pooled_in.label_column.empty(), ErrorCode::kInvalidArgument,
            "--input needs --label-col to split the samples");
    const Dataset pooled = load_input(pooled_in);
    require(pooled.has_labels(), ErrorCode::kInvalidArgument, "no labels parsed");
    const LabelVector lv = make_labels(pooled.labels);
    const BuiltGraph built = build_graph(pooled, cfg);
    result = test_on_graph(built.graph, lv, cfg, built.converged);
  } else {
    require(!x_in.path.empty() && !y_in.path.empty(), ErrorCode::kInvalidArgument,
            "need --x and --y (or --input with --label-col)");
    InputFlags xf = x_in, yf = y_in;
    xf.header = x_in.header;
    yf.header = x_in.header;  // one --header flag governs both files
    result = two_sample_test(load_input(xf), load_input(yf), cfg);
  }
  emit_json(versioned(json{{"result", result}, {"config", cfg}}), out_path);
  return 0;
}

int run_cpd(const InputFlags& input, const CommonFlags& flags, double boundary,
            const std::string& out_path, const std::string& curve_out,
            const std::string& svg_out) {
  ScanConfig cfg;
  cfg.graph = graph_kind_from_name(flags.graph);
  cfg.k = flags.k;
  cfg.lambda = flags.lambda;
  cfg.statistic = stat_kind_from_name(flags.statistic);
  cfg.permutations = flags.permutations;
  cfg.seed = flags.seed;
  cfg.alpha = flags.alpha;
  cfg.metric = metric_from_name(flags.metric);
  cfg.max_passes = flags.max_passes;
  cfg.boundary = boundary;

  const Dataset seq = load_input(input);
  const ScanResult result = scan(seq, cfg);

  if (!curve_out.empty()) {
    std::ostringstream os;
    os << "t,statistic\n";
    for (const auto& p : result.curve) {
      os << p.t << ',';
      if (p.skipped)
        os << "NA";
      else
        os << format_number(p.value);
      os << '\n';
    }
    write_text_file(curve_out, os.str());
  }
  if (!svg_out.empty()) {
    SvgSeries series;
    series.name = flags.statistic;
    for (const auto& p : result.curve)
      if (!p.skipped) series.points.emplace_back(p.t, p.value);
    maybe_write_svg(svg_out, {series}, "split t", "statistic", "scan statistic");
  }
  emit_json(versioned(json{{"result", result}, {"config", cfg}}), out_path);
  return 0;
}

int run_simulate(const ScenarioSpec& base_spec, const CommonFlags& flags, double boundary,
                 int reps, const std::string& perturb_kind, int perturb_count,
                 const std::vector<double>& delta_grid, const std::string& out_path,
                 const std::string& svg_out) {
  std::vector<double> deltas = delta_grid;
  if (deltas.empty()) deltas.push_back(base_spec.delta);

  std::ostringstream csv;
  std::vector<SvgSeries> series;
  if (!base_spec.is_changepoint) {
    const TestConfig cfg = to_test_config(flags);
    std::optional<Perturbation> perturbation;
    if (!perturb_kind.empty())
      perturbation = Perturbation{perturb_kind_from_name(perturb_kind), perturb_count};

    csv << "delta,power,std_error,reps,rejections\n";
    SvgSeries power_series{"power", {}};
    for (double delta : deltas) {
      ScenarioSpec spec = base_spec;
      spec.delta = delta;
      const PowerEstimate pe = estimate_power(spec, cfg, reps, flags.alpha, perturbation);
      csv << format_number(delta) << ',' << format_number(pe.power) << ','
          << format_number(pe.std_error) << ',' << pe.reps << ',' << pe.rejections << '\n';
      power_series.points.emplace_back(delta, pe.power);
    }
    series.push_back(std::move(power_series));
  } else {
    ScanConfig cfg;
    cfg.graph = graph_kind_from_name(flags.graph);
    cfg.k = flags.k;
    cfg.lambda = flags.lambda;
    cfg.statistic = stat_kind_from_name(flags.statistic);
    cfg.permutations = flags.permutations;
    cfg.seed = flags.seed;
    cfg.alpha = flags.alpha;
    cfg.metric = metric_from_name(flags.metric);
    cfg.max_passes = flags.max_passes;
    cfg.boundary = boundary;

    csv << "delta,power,accuracy,power_se,reps,detections,accurate\n";
    SvgSeries power_series{"power", {}};
    SvgSeries accuracy_series{"accuracy", {}};
    for (double delta : deltas) {
      ScenarioSpec spec = base_spec;
      spec.delta = delta;
      const CpPowerAccuracy pa = cp_power_accuracy(spec, cfg, reps, flags.alpha);
      csv << format_number(delta) << ',' << format_number(pa.power) << ','
          << format_number(pa.accuracy) << ',' << format_number(pa.power_se) << ',' << pa.reps
          << ',' << pa.detections << ',' << pa.accurate << '\n';
      power_series.points.emplace_back(delta, pa.power);
      accuracy_series.points.emplace_back(delta, pa.accuracy);
    }
    series.push_back(std::move(power_series));
    series.push_back(std::move(accuracy_series));
  }

  if (out_path.empty())
    std::cout << csv.str();
  else
    write_text_file(out_path, csv.str());
  maybe_write_svg(svg_out, series, "delta", "estimated power", "simulation study");
  return 0;
}

int run_lambda_scan(const InputFlags& input, const std::string& preset, const CommonFlags& flags,
                    const std::string& grid_text, int reps, const std::string& out_path,
                    const std::string& svg_out) {
  const std::vector<double> grid = parse_grid(grid_text);
  std::vector<LambdaScanRow> rows;
  if (!input.path.empty()) {
    require(preset.empty(), ErrorCode::kInvalidArgument, "use --input or --preset, not both");
    const Dataset ds = load_input(input);
    const RankMatrix rm = neighbor_ranks(pairwise_distances(ds, metric_from_name(flags.metric)));
    rows = lambda_scan(rm, grid, flags.k, flags.seed);
  } else {
    require(!preset.empty(), ErrorCode::kInvalidArgument, "need --input or --preset");
    const ScenarioSpec spec = scenario_preset(preset);
    rows = lambda_scan_scenario(spec, grid, to_test_config(flags), reps, flags.alpha);
  }

  std::ostringstream csv;
  const bool with_power = !rows.empty() && rows.front().power.has_value();
  csv << (with_power ? "lambda,max_degree,power\n" : "lambda,max_degree\n");
  SvgSeries degree_series{"max degree", {}};
  for (const auto& row : rows) {
    csv << format_number(row.lambda) << ',' << format_number(row.max_degree);
    if (with_power) csv << ',' << format_number(*row.power);
    csv << '\n';
    degree_series.points.emplace_back(row.lambda, row.max_degree);
  }
  if (out_path.empty())
    std::cout << csv.str();
  else
    write_text_file(out_path, csv.str());
  maybe_write_svg(svg_out, {degree_series}, "lambda", "max degree", "penalty scan");
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Robust graph-based two-sample testing and change-point detection"};
  app.require_subcommand(1);

  // graph
  auto* graph_cmd = app.add_subcommand("graph", "build a similarity graph and report its stats");
  InputFlags graph_input;
  CommonFlags graph_flags;
  std::string edges_out, stats_out;
  int square_cap = 100;
  add_input_flags(graph_cmd, graph_input);
  add_common_flags(graph_cmd, graph_flags, /*with_mode=*/false);
  graph_cmd->add_option("--edges-out", edges_out, "edge-list CSV path (1-based ids)");
  graph_cmd->add_option("--stats-out", stats_out, "stats JSON path (default: stdout)");
  graph_cmd->add_option("--nsq-cap", square_cap, "node cap for the 4-cycle count")
      ->capture_default_str();

  // test2
  auto* test2_cmd = app.add_subcommand("test2", "two-sample test");
  InputFlags test2_x, test2_y, test2_pooled;
  CommonFlags test2_flags;
  std::string test2_out;
  test2_cmd->add_option("--x", test2_x.path, "sample X CSV");
  test2_cmd->add_option("--y", test2_y.path, "sample Y CSV");
  add_input_flags(test2_cmd, test2_pooled, /*required=*/false);
  add_common_flags(test2_cmd, test2_flags);
  test2_cmd->add_option("--out", test2_out, "result JSON path (default: stdout)");

  // cpd
  auto* cpd_cmd = app.add_subcommand("cpd", "offline single change-point scan");
  InputFlags cpd_input;
  CommonFlags cpd_flags;
  double cpd_boundary = 0.05;
  std::string cpd_out, cpd_curve_out, cpd_svg_out;
  add_input_flags(cpd_cmd, cpd_input);
  add_common_flags(cpd_cmd, cpd_flags, /*with_mode=*/false);
  cpd_cmd->add_option("--boundary", cpd_boundary, "window boundary fraction")
      ->capture_default_str();
  cpd_cmd->add_option("--out", cpd_out, "result JSON path (default: stdout)");
  cpd_cmd->add_option("--curve-out", cpd_curve_out, "per-split statistic CSV path");
  cpd_cmd->add_option("--svg-out", cpd_svg_out, "statistic curve SVG path");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "power / size study on a scenario");
  CommonFlags sim_flags;
  std::string sim_preset, sim_spec_path, sim_out, sim_svg_out, sim_perturb, sim_delta_grid;
  int sim_reps = 200, sim_perturb_count = 5;
  double sim_boundary = 0.05;
  std::optional<int> sim_m, sim_n, sim_d, sim_length, sim_tau;
  std::optional<double> sim_delta, sim_nu;
  sim_cmd->add_option("--preset", sim_preset, "named scenario preset");
  sim_cmd->add_option("--spec", sim_spec_path, "scenario spec JSON file");
  sim_cmd->add_option("--m", sim_m, "override: sample X size");
  sim_cmd->add_option("--n", sim_n, "override: sample Y size");
  sim_cmd->add_option("--d", sim_d, "override: dimension");
  sim_cmd->add_option("--delta", sim_delta, "override: shift/scale parameter");
  sim_cmd->add_option("--nu", sim_nu, "override: t degrees of freedom");
  sim_cmd->add_option("--length", sim_length, "override: sequence length");
  sim_cmd->add_option("--tau", sim_tau, "override: change position");
  sim_cmd->add_option("--reps", sim_reps, "replications per grid point")->capture_default_str();
  sim_cmd->add_option("--perturb", sim_perturb, "label perturbation: random, outlier or hub")
      ->check(CLI::IsMember({"random", "outlier", "hub"}));
  sim_cmd->add_option("--perturb-count", sim_perturb_count, "labels to flip")
      ->capture_default_str();
  sim_cmd->add_option("--delta-grid", sim_delta_grid, "comma list or lo:step:hi of deltas");
  sim_cmd->add_option("--boundary", sim_boundary, "scan window fraction (change-point)")
      ->capture_default_str();
  add_common_flags(sim_cmd, sim_flags);
  sim_cmd->add_option("--out", sim_out, "power table CSV path (default: stdout)");
  sim_cmd->add_option("--svg-out", sim_svg_out, "power curve SVG path");

  // lambda-scan
  auto* scan_cmd = app.add_subcommand("lambda-scan", "max degree across a lambda grid");
  InputFlags scan_input;
  CommonFlags scan_flags;
  std::string scan_preset, scan_grid = "0:0.1:1", scan_out, scan_svg_out;
  int scan_reps = 20;
  add_input_flags(scan_cmd, scan_input, /*required=*/false);
  scan_cmd->add_option("--preset", scan_preset, "named scenario preset");
  scan_cmd->add_option("--grid", scan_grid, "comma list or lo:step:hi of lambdas")
      ->capture_default_str();
  scan_cmd->add_option("--reps", scan_reps, "replications per lambda (preset mode)")
      ->capture_default_str();
  add_common_flags(scan_cmd, scan_flags);
  scan_cmd->add_option("--out", scan_out, "scan CSV path (default: stdout)");
  scan_cmd->add_option("--svg-out", scan_svg_out, "max-degree curve SVG path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      std::cout << app.help();
      return 0;
    }
    std::cerr << app.help() << '\n';
    emit_json(error_json("bad_flags", e.what()), "");
    return 2;
  }

  try {
    if (graph_flags.threads) set_thread_cap(graph_flags.threads);
    if (test2_flags.threads) set_thread_cap(test2_flags.threads);
    if (cpd_flags.threads) set_thread_cap(cpd_flags.threads);
    if (sim_flags.threads) set_thread_cap(sim_flags.threads);
    if (scan_flags.threads) set_thread_cap(scan_flags.threads);

    if (app.got_subcommand(graph_cmd))
      return run_graph(graph_input, graph_flags, edges_out, stats_out, square_cap);
    if (app.got_subcommand(test2_cmd))
      return run_test2(test2_x, test2_y, test2_pooled, test2_flags, test2_out);
    if (app.got_subcommand(cpd_cmd))
      return run_cpd(cpd_input, cpd_flags, cpd_boundary, cpd_out, cpd_curve_out, cpd_svg_out);
    if (app.got_subcommand(sim_cmd)) {
      const ScenarioSpec spec =
          resolve_scenario(sim_preset, sim_spec_path, sim_m, sim_n, sim_d, sim_delta, sim_nu,
                           sim_length, sim_tau);
      std::vector<double> deltas;
      if (!sim_delta_grid.empty()) deltas = parse_grid(sim_delta_grid);
      return run_simulate(spec, sim_flags, sim_boundary, sim_reps, sim_perturb,
                          sim_perturb_count, deltas, sim_out, sim_svg_out);
    }
    if (app.got_subcommand(scan_cmd))
      return run_lambda_scan(scan_input, scan_preset, scan_flags, scan_grid, scan_reps, scan_out,
                             scan_svg_out);
    emit_json(error_json("bad_flags", "no subcommand"), "");
    return 2;
  } catch (const Error& e) {
    emit_json(error_json(error_code_name(e.code()), e.what()), "");
    return 1;
  } catch (const std::exception& e) {
    emit_json(error_json("internal_error", e.what()), "");
    return 1;
  }
}

}  // namespace rgraph::cli
