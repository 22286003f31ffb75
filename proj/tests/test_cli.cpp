#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "../tools/cli_app.hpp"
#include "rgraph/dataset.hpp"
#include "rgraph/graphs.hpp"
#include "rgraph/json_io.hpp"
#include "rgraph/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("rgraph_test_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sample_csv(std::uint64_t seed, int n, int d, double shift) {
  rgraph::Rng rng(seed);
  std::ostringstream os;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      if (j) os << ',';
      os << rng.normal() + shift;
    }
    os << '\n';
  }
  return os.str();
}

int run_quiet(const std::vector<std::string>& args, std::string* stdout_text = nullptr) {
  std::ostringstream captured;
  std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
  const int rc = rgraph::cli::run(args);
  std::cout.rdbuf(old);
  if (stdout_text) *stdout_text = captured.str();
  return rc;
}

}  // namespace

TEST_CASE("cli: two-sample test writes a versioned result") {
  TempDir tmp;
  write_file(tmp.file("x.csv"), sample_csv(1, 25, 4, 0.0));
  write_file(tmp.file("y.csv"), sample_csv(2, 25, 4, 3.0));
  const std::string out = tmp.file("result.json");

  const int rc = run_quiet({"test2", "--x", tmp.file("x.csv"), "--y", tmp.file("y.csv"),
                            "--graph", "krnng", "--k", "5", "--lambda", "0.3", "--out", out});
  REQUIRE(rc == 0);

  const json doc = json::parse(read_file(out));
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["result"]["statistic"]["kind"] == "get");
  CHECK(doc["result"]["pvalue"].is_number());
  CHECK(doc["result"]["pvalue"].get<double>() < 0.01);  // strong shift
  CHECK(doc["config"]["graph"] == "krnng");
}

TEST_CASE("cli: byte-identical outputs for identical invocations") {
  TempDir tmp;
  write_file(tmp.file("x.csv"), sample_csv(3, 20, 3, 0.0));
  write_file(tmp.file("y.csv"), sample_csv(4, 20, 3, 0.5));

  const std::vector<std::string> base = {"test2",  "--x",  tmp.file("x.csv"), "--y",
                                         tmp.file("y.csv"), "--mode", "permutation",
                                         "--b",    "99",   "--seed", "777"};
  auto with_out = [&](const std::string& out) {
    std::vector<std::string> args = base;
    args.push_back("--out");
    args.push_back(out);
    return args;
  };
  REQUIRE(run_quiet(with_out(tmp.file("a.json"))) == 0);
  REQUIRE(run_quiet(with_out(tmp.file("b.json"))) == 0);
  CHECK(read_file(tmp.file("a.json")) == read_file(tmp.file("b.json")));
}

TEST_CASE("cli: graph subcommand emits edges and stats") {
  TempDir tmp;
  write_file(tmp.file("data.csv"), "0\n1\n3\n");
  const int rc = run_quiet({"graph", "--input", tmp.file("data.csv"), "--graph", "knng", "--k",
                            "1", "--edges-out", tmp.file("edges.csv"), "--stats-out",
                            tmp.file("stats.json")});
  REQUIRE(rc == 0);
  CHECK(read_file(tmp.file("edges.csv")) == "i,j\n1,2\n2,1\n3,2\n");
  const json stats = json::parse(read_file(tmp.file("stats.json")));
  CHECK(stats["schema_version"] == 1);
  CHECK(stats["summary"]["n_edges"] == 3);
  CHECK(stats["stats"]["max_degree"] == 3);
  CHECK(stats["diagnostics"].contains("square_count"));
}

TEST_CASE("cli: lambda-scan zero row equals the knng max degree") {
  TempDir tmp;
  write_file(tmp.file("data.csv"), sample_csv(9, 40, 30, 0.0));
  const std::string out = tmp.file("scan.csv");
  REQUIRE(run_quiet({"lambda-scan", "--input", tmp.file("data.csv"), "--k", "5", "--grid",
                     "0,0.3", "--out", out}) == 0);

  // expected value straight from the library
  rgraph::CsvOptions opts;
  const rgraph::Dataset ds = rgraph::load_dataset_file(tmp.file("data.csv"), opts);
  const auto rm = rgraph::neighbor_ranks(rgraph::pairwise_distances(ds));
  const int expected = rgraph::graph_stats(rgraph::build_knng(rm, 5).graph).max_degree;

  std::istringstream csv(read_file(out));
  std::string header, row0;
  std::getline(csv, header);
  std::getline(csv, row0);
  CHECK(header == "lambda,max_degree");
  CHECK(row0 == "0," + std::to_string(expected));
}

TEST_CASE("cli: cpd writes result, curve and svg deterministically") {
  TempDir tmp;
  std::string csv = sample_csv(10, 15, 2, 0.0) + sample_csv(11, 15, 2, 6.0);
  write_file(tmp.file("seq.csv"), csv);

  const auto args_for = [&](const std::string& tag) {
    return std::vector<std::string>{
        "cpd",         "--input",                   tmp.file("seq.csv"),
        "--graph",     "knng",                      "--k",
        "3",           "--b",                       "99",
        "--out",       tmp.file(tag + ".json"),     "--curve-out",
        tmp.file(tag + "_curve.csv"), "--svg-out",  tmp.file(tag + ".svg")};
  };
  REQUIRE(run_quiet(args_for("a")) == 0);

  const json doc = json::parse(read_file(tmp.file("a.json")));
  CHECK(doc["result"]["tau_hat"] == 15);
  CHECK(doc["result"]["significant"] == true);

  const std::string curve = read_file(tmp.file("a_curve.csv"));
  CHECK(curve.substr(0, 12) == "t,statistic\n");
  const std::string svg_first = read_file(tmp.file("a.svg"));
  CHECK(svg_first.find("<svg") == 0);

  // run again: everything must be byte-identical
  REQUIRE(run_quiet(args_for("b")) == 0);
  CHECK(read_file(tmp.file("b.svg")) == svg_first);
  CHECK(read_file(tmp.file("b.json")) == read_file(tmp.file("a.json")));
}

TEST_CASE("cli: simulate on a preset emits a power table") {
  TempDir tmp;
  const std::string out = tmp.file("power.csv");
  REQUIRE(run_quiet({"simulate", "--preset", "power-1", "--m", "15", "--n", "15", "--d", "5",
                     "--delta", "8", "--reps", "20", "--k", "3", "--out", out}) == 0);
  std::istringstream csv(read_file(out));
  std::string header, row;
  std::getline(csv, header);
  CHECK(header == "delta,power,std_error,reps,rejections");
  std::getline(csv, row);
  CHECK(row.substr(0, 2) == "8,");
}

TEST_CASE("cli: unknown flags fail with usage and json error") {
  std::string out;
  const int rc = run_quiet({"test2", "--no-such-flag"}, &out);
  CHECK(rc == 2);
  const json doc = json::parse(out);
  CHECK(doc["error"]["code"] == "bad_flags");
}

TEST_CASE("cli: missing file yields a structured error") {
  std::string out;
  const int rc = run_quiet({"test2", "--x", "/nonexistent/a.csv", "--y", "/nonexistent/b.csv"},
                           &out);
  CHECK(rc == 1);
  const json doc = json::parse(out);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["error"]["code"] == "io_error");
}

TEST_CASE("cli: no subcommand is a flag error") {
  std::string out;
  CHECK(run_quiet({}, &out) == 2);
}
