#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "regmcts/aggregate.hpp"
#include "regmcts/csv.hpp"
#include "regmcts/plot.hpp"
#include "regmcts/sweep.hpp"

using namespace regmcts;

namespace {

namespace fs = std::filesystem;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  REQUIRE(out);
  out << content;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "regmcts_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ExperimentConfig tiny_config(const std::string& out_dir) {
  ExperimentConfig cfg;
  cfg.k_list = {2};
  cfg.d_list = {1};
  cfg.algorithms = {Algorithm::TENTS};
  cfg.trees = 1;
  cfg.runs = 1;
  cfg.budget = 10;
  cfg.master_seed = 42;
  cfg.output_dir = out_dir;
  cfg.jobs = 2;
  return cfg;
}

std::size_t count_data_rows(const std::string& csv_text) {
  std::size_t rows = 0;
  bool first = true;
  std::istringstream in(csv_text);
  std::string line;
  while (std::getline(in, line)) {
    if (first) {
      first = false;
      continue;
    }
    if (!line.empty()) ++rows;
  }
  return rows;
}

}  // namespace

TEST_CASE("sweep row counts match keys times budget") {
  const auto dir = fresh_dir("rowcount");
  const auto cfg = tiny_config(dir.string());
  const SweepSummary summary = run_sweep(cfg);
  CHECK(summary.run_count == 1);
  CHECK(summary.record_count == 10);
  CHECK(count_data_rows(slurp(summary.runs_csv_path)) == 10);
  CHECK(count_data_rows(slurp(summary.final_csv_path)) == 1);

  const auto bigger_dir = fresh_dir("rowcount2");
  ExperimentConfig cfg2 = tiny_config(bigger_dir.string());
  cfg2.k_list = {2, 3};
  cfg2.d_list = {1, 2};
  cfg2.algorithms = {Algorithm::UCT, Algorithm::MENTS};
  cfg2.trees = 2;
  cfg2.runs = 2;
  cfg2.budget = 5;
  const SweepSummary s2 = run_sweep(cfg2);
  CHECK(s2.run_count == 2 * 2 * 2 * 2 * 2);
  CHECK(s2.record_count == s2.run_count * 5);
  CHECK(count_data_rows(slurp(s2.runs_csv_path)) ==
        static_cast<std::size_t>(s2.record_count));
  CHECK(count_data_rows(slurp(s2.final_csv_path)) ==
        static_cast<std::size_t>(s2.run_count));
}

TEST_CASE("sweeps are byte-identical across reruns") {
  const auto dir_a = fresh_dir("det_a");
  const auto dir_b = fresh_dir("det_b");
  ExperimentConfig cfg = tiny_config(dir_a.string());
  cfg.k_list = {2, 4};
  cfg.algorithms = {Algorithm::UCT, Algorithm::MENTS, Algorithm::RENTS,
                    Algorithm::TENTS};
  cfg.runs = 2;
  cfg.budget = 50;
  cfg.jobs = 2;
  const SweepSummary a = run_sweep(cfg);
  cfg.output_dir = dir_b.string();
  cfg.jobs = 1;  // scheduling must not affect the bytes
  const SweepSummary b = run_sweep(cfg);
  CHECK(slurp(a.runs_csv_path) == slurp(b.runs_csv_path));
  CHECK(slurp(a.final_csv_path) == slurp(b.final_csv_path));
}

TEST_CASE("changing a run index leaves other rows untouched") {
  const auto dir_one = fresh_dir("iso_one");
  const auto dir_two = fresh_dir("iso_two");
  ExperimentConfig cfg = tiny_config(dir_one.string());
  cfg.budget = 20;
  cfg.runs = 1;
  const SweepSummary one = run_sweep(cfg);
  cfg.output_dir = dir_two.string();
  cfg.runs = 2;
  const SweepSummary two = run_sweep(cfg);

  const auto rows_one = read_metric_records_file(one.runs_csv_path);
  const auto rows_two = read_metric_records_file(two.runs_csv_path);
  REQUIRE(rows_two.size() == 2 * rows_one.size());
  for (std::size_t i = 0; i < rows_one.size(); ++i) {
    CHECK(rows_two[i].run_id == 0);
    CHECK(rows_two[i].v_omega == rows_one[i].v_omega);
    CHECK(rows_two[i].cum_regret == rows_one[i].cum_regret);
  }
}

TEST_CASE("metric records round-trip through the csv codec") {
  const auto dir = fresh_dir("roundtrip");
  ExperimentConfig cfg = tiny_config(dir.string());
  cfg.budget = 25;
  const SweepSummary summary = run_sweep(cfg);

  const std::string original = slurp(summary.runs_csv_path);
  const auto records = read_metric_records_file(summary.runs_csv_path);
  std::ostringstream rewritten;
  write_metric_records(rewritten, records);
  CHECK(rewritten.str() == original);
}

TEST_CASE("csv parse errors carry line numbers") {
  const auto dir = fresh_dir("parse_err");
  const std::string path = (dir / "broken.csv").string();
  spit(path, std::string(kMetricsCsvHeader) + "\n0,0,TENTS,2,1,nonsense\n");
  CHECK_THROWS_WITH_AS(read_metric_records_file(path),
                       doctest::Contains("line 2"), std::runtime_error);

  const std::string bad_header = (dir / "bad_header.csv").string();
  spit(bad_header, "not,a,header\n");
  CHECK_THROWS_AS(read_metric_records_file(bad_header), std::runtime_error);
}

TEST_CASE("config validation names the offending field") {
  ExperimentConfig cfg = tiny_config("out");
  cfg.budget = 0;
  CHECK_THROWS_WITH_AS(validate_experiment(cfg), doctest::Contains("budget"),
                       std::invalid_argument);
  cfg = tiny_config("out");
  cfg.k_list = {1};
  CHECK_THROWS_WITH_AS(validate_experiment(cfg), doctest::Contains("k_list"),
                       std::invalid_argument);
  cfg = tiny_config("out");
  cfg.tau = -0.5;
  CHECK_THROWS_WITH_AS(validate_experiment(cfg), doctest::Contains("tau"),
                       std::invalid_argument);
  cfg = tiny_config("out");
  cfg.algorithms = {Algorithm::UCT, Algorithm::UCT};
  CHECK_THROWS_WITH_AS(validate_experiment(cfg),
                       doctest::Contains("algorithms"), std::invalid_argument);
}

TEST_CASE("aggregation modes") {
  // synthetic runs.csv: 2 algorithms, k in {2, 4}, d in {1, 2}, one tree,
  // 25 runs, 2 sims each
  const auto dir = fresh_dir("agg");
  std::ostringstream csv;
  write_metrics_header(csv);
  std::vector<MetricRecord> records;
  for (const char* algo : {"TENTS", "MENTS"}) {
    for (int k : {2, 4}) {
      for (int d : {1, 2}) {
        for (int run = 0; run < 25; ++run) {
          for (int sim = 1; sim <= 2; ++sim) {
            MetricRecord rec;
            rec.tree_id = 0;
            rec.run_id = run;
            rec.algorithm = algo;
            rec.k = k;
            rec.d = d;
            rec.tau = 0.1;
            rec.epsilon = 0.1;
            rec.sim = sim;
            rec.v_omega = 1.0;
            rec.eps_omega = sim == 2 ? -0.2 : -0.9;
            rec.eps_uct = rec.eps_omega;
            rec.cum_regret = static_cast<double>(sim);
            write_metric_record(csv, rec);
          }
        }
      }
    }
  }
  const std::string runs_path = (dir / "runs.csv").string();
  spit(runs_path, csv.str());

  SUBCASE("final-error emits one k-by-d grid per algorithm") {
    const auto written =
        aggregate(runs_path, AggregateMode::FinalError, dir.string());
    REQUIRE(written.size() == 2);
    const std::string table = slurp(written[0]);
    std::istringstream in(table);
    std::string line;
    std::getline(in, line);
    CHECK(line == "k,1,2");
    std::getline(in, line);
    CHECK(line.substr(0, 2) == "2,");
    // 25 identical |eps| values of 0.2 average to 0.2
    CHECK(line.find("0.2000000000000000") != std::string::npos);
    std::getline(in, line);
    CHECK(line.substr(0, 2) == "4,");
  }

  SUBCASE("final-regret reports the last cumulative regret") {
    const auto written =
        aggregate(runs_path, AggregateMode::FinalRegret, dir.string());
    REQUIRE(written.size() == 2);
    const std::string table = slurp(written[0]);
    CHECK(table.find(",2,2") != std::string::npos);
  }

  SUBCASE("trace-mean emits per-(k,d) tables with mean and sd columns") {
    const auto written =
        aggregate(runs_path, AggregateMode::TraceMean, dir.string());
    REQUIRE(written.size() == 4);  // (k, d) grid
    const std::string table = slurp(written[0]);
    std::istringstream in(table);
    std::string line;
    std::getline(in, line);
    CHECK(line == "sim,MENTS_mean,MENTS_sd,TENTS_mean,TENTS_sd");
    std::getline(in, line);
    // identical values across runs: sd exactly 0
    CHECK(line == "1,-0.90000000000000002,0,-0.90000000000000002,0");
  }

  SUBCASE("single-run aggregation returns that run's values") {
    const auto dir2 = fresh_dir("agg_single");
    std::ostringstream single;
    write_metrics_header(single);
    MetricRecord rec;
    rec.algorithm = "TENTS";
    rec.k = 2;
    rec.d = 1;
    rec.sim = 1;
    rec.eps_omega = 0.125;
    rec.cum_regret = 0.5;
    write_metric_record(single, rec);
    const std::string path = (dir2 / "runs.csv").string();
    spit(path, single.str());
    const auto written =
        aggregate(path, AggregateMode::FinalError, dir2.string());
    const std::string table = slurp(written[0]);
    CHECK(table.find("0.125") != std::string::npos);
  }
}

TEST_CASE("plots render deterministic svg structure") {
  const auto dir = fresh_dir("plot");

  SUBCASE("two-series trace becomes two polylines") {
    const std::string table = (dir / "trace.csv").string();
    spit(table,
         "sim,MENTS_mean,MENTS_sd,TENTS_mean,TENTS_sd\n"
         "1,0.5,0.1,0.4,0.1\n"
         "2,0.25,0.05,0.2,0.04\n"
         "3,0.125,0.02,0.1,0.02\n");
    const std::string svg_path = (dir / "trace.svg").string();
    render_plot(table, svg_path);
    const std::string svg = slurp(svg_path);
    std::size_t polylines = 0;
    for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
         pos = svg.find("<polyline", pos + 1)) {
      ++polylines;
    }
    CHECK(polylines == 2);

    // identical input renders identical bytes
    const std::string svg_path2 = (dir / "trace2.svg").string();
    render_plot(table, svg_path2);
    CHECK(slurp(svg_path2) == svg);
  }

  SUBCASE("an 8x5 heatmap renders 40 cells") {
    std::ostringstream table;
    table << "k,1,2,3,4,5\n";
    for (int k = 2; k <= 16; k += 2) {
      table << k;
      for (int d = 1; d <= 5; ++d) table << "," << (0.01 * k * d);
      table << "\n";
    }
    const std::string path = (dir / "heat.csv").string();
    spit(path, table.str());
    const std::string svg_path = (dir / "heat.svg").string();
    render_plot(path, svg_path);
    const std::string svg = slurp(svg_path);
    std::size_t cells = 0;
    for (std::size_t pos = svg.find("class=\"cell\"");
         pos != std::string::npos; pos = svg.find("class=\"cell\"", pos + 1)) {
      ++cells;
    }
    CHECK(cells == 40);
  }

  SUBCASE("empty tables and unknown schemas are rejected") {
    const std::string empty = (dir / "empty.csv").string();
    spit(empty, "sim,TENTS_mean\n");
    CHECK_THROWS_AS(render_plot(empty, (dir / "e.svg").string()),
                    std::invalid_argument);

    const std::string unknown = (dir / "unknown.csv").string();
    spit(unknown, "foo,bar\n1,2\n");
    CHECK_THROWS_AS(render_plot(unknown, (dir / "u.svg").string()),
                    std::invalid_argument);
  }
}
