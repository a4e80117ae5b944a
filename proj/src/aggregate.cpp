#include "regmcts/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "regmcts/csv.hpp"
#include "regmcts/numeric_text.hpp"

namespace regmcts {

namespace {

struct RunningMoments {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  double stddev() const {
    return count > 0 ? std::sqrt(m2 / static_cast<double>(count)) : 0.0;
  }
};

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  return out;
}

// final-error / final-regret: keep the last-simulation row of every
// (algorithm, k, d, tree, run), then average per (algorithm, k, d) cell.
std::vector<std::string> aggregate_final(const std::string& runs_csv_path,
                                         AggregateMode mode,
                                         const std::string& out_dir) {
  using RunId = std::tuple<std::string, int, int, std::int64_t, std::int64_t>;
  std::map<RunId, MetricRecord> last_rows;
  std::ifstream in(runs_csv_path);
  if (!in) throw std::runtime_error("cannot open " + runs_csv_path);
  for_each_metric_record(in, [&](const MetricRecord& rec) {
    const RunId id{rec.algorithm, rec.k, rec.d, rec.tree_id, rec.run_id};
    auto [it, inserted] = last_rows.emplace(id, rec);
    if (!inserted && rec.sim > it->second.sim) it->second = rec;
  });
  if (last_rows.empty()) {
    throw std::runtime_error("runs csv contains no data rows");
  }

  std::set<std::string> algorithms;
  std::set<int> ks;
  std::set<int> ds;
  std::map<std::tuple<std::string, int, int>, RunningMoments> cells;
  for (const auto& [id, rec] : last_rows) {
    algorithms.insert(rec.algorithm);
    ks.insert(rec.k);
    ds.insert(rec.d);
    const double value = mode == AggregateMode::FinalError
                             ? std::abs(rec.eps_omega)
                             : rec.cum_regret;
    cells[{rec.algorithm, rec.k, rec.d}].add(value);
  }

  std::vector<std::string> written;
  for (const std::string& algorithm : algorithms) {
    const std::filesystem::path path =
        std::filesystem::path(out_dir) /
        (std::string(to_string(mode)) + "_" + algorithm + ".csv");
    std::ofstream out = open_out(path);
    out << "k";
    for (int d : ds) out << "," << d;
    out << "\n";
    for (int k : ks) {
      out << k;
      for (int d : ds) {
        out << ",";
        const auto it = cells.find({algorithm, k, d});
        out << (it != cells.end() ? format_double(it->second.mean) : "");
      }
      out << "\n";
    }
    written.push_back(path.string());
  }
  return written;
}

// trace-mean: per (k, d) and simulation index, mean and population standard
// deviation of eps_omega across the (tree, run) pairs, one column pair per
// algorithm in label order.
std::vector<std::string> aggregate_trace(const std::string& runs_csv_path,
                                         const std::string& out_dir) {
  std::map<std::tuple<int, int, std::string>, std::vector<RunningMoments>>
      traces;
  std::ifstream in(runs_csv_path);
  if (!in) throw std::runtime_error("cannot open " + runs_csv_path);
  for_each_metric_record(in, [&](const MetricRecord& rec) {
    if (rec.sim < 1) {
      throw std::runtime_error("runs csv: sim index must be >= 1");
    }
    auto& trace = traces[{rec.k, rec.d, rec.algorithm}];
    if (static_cast<std::size_t>(rec.sim) > trace.size()) {
      trace.resize(rec.sim);
    }
    trace[rec.sim - 1].add(rec.eps_omega);
  });
  if (traces.empty()) {
    throw std::runtime_error("runs csv contains no data rows");
  }

  std::set<std::pair<int, int>> grids;
  std::set<std::string> algorithms;
  for (const auto& [key, trace] : traces) {
    grids.insert({std::get<0>(key), std::get<1>(key)});
    algorithms.insert(std::get<2>(key));
  }

  std::vector<std::string> written;
  for (const auto& [k, d] : grids) {
    std::size_t budget = 0;
    for (const std::string& algorithm : algorithms) {
      const auto it = traces.find({k, d, algorithm});
      if (it != traces.end()) budget = std::max(budget, it->second.size());
    }
    const std::filesystem::path path =
        std::filesystem::path(out_dir) / ("trace-mean_k" + std::to_string(k) +
                                          "_d" + std::to_string(d) + ".csv");
    std::ofstream out = open_out(path);
    out << "sim";
    for (const std::string& algorithm : algorithms) {
      out << "," << algorithm << "_mean," << algorithm << "_sd";
    }
    out << "\n";
    for (std::size_t s = 0; s < budget; ++s) {
      out << (s + 1);
      for (const std::string& algorithm : algorithms) {
        const auto it = traces.find({k, d, algorithm});
        if (it != traces.end() && s < it->second.size() &&
            it->second[s].count > 0) {
          out << "," << format_double(it->second[s].mean) << ","
              << format_double(it->second[s].stddev());
        } else {
          out << ",,";
        }
      }
      out << "\n";
    }
    written.push_back(path.string());
  }
  return written;
}

}  // namespace

AggregateMode aggregate_mode_from_string(const std::string& name) {
  if (name == "final-error") return AggregateMode::FinalError;
  if (name == "final-regret") return AggregateMode::FinalRegret;
  if (name == "trace-mean") return AggregateMode::TraceMean;
  throw std::invalid_argument("unknown aggregate mode: " + name);
}

const char* to_string(AggregateMode mode) {
  switch (mode) {
    case AggregateMode::FinalError:
      return "final-error";
    case AggregateMode::FinalRegret:
      return "final-regret";
    case AggregateMode::TraceMean:
      return "trace-mean";
  }
  return "unknown";
}

std::vector<std::string> aggregate(const std::string& runs_csv_path,
                                   AggregateMode mode,
                                   const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  if (mode == AggregateMode::TraceMean) {
    return aggregate_trace(runs_csv_path, out_dir);
  }
  return aggregate_final(runs_csv_path, mode, out_dir);
}

}  // namespace regmcts
