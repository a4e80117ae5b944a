#include "regmcts/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "regmcts/csv.hpp"
#include "regmcts/metrics.hpp"
#include "regmcts/oracle.hpp"
#include "regmcts/synthetic_tree.hpp"

namespace regmcts {

namespace {

template <typename T>
bool has_duplicates(const std::vector<T>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      if (values[i] == values[j]) return true;
    }
  }
  return false;
}

int algorithm_index_in(const ExperimentConfig& cfg, Algorithm algorithm) {
  for (std::size_t i = 0; i < cfg.algorithms.size(); ++i) {
    if (cfg.algorithms[i] == algorithm) return static_cast<int>(i);
  }
  throw std::logic_error("algorithm not present in config");
}

struct TreeKey {
  int k;
  int d;
  int tree_index;
  bool operator<(const TreeKey& o) const {
    return std::tie(k, d, tree_index) < std::tie(o.k, o.d, o.tree_index);
  }
};

}  // namespace

void validate_experiment(const ExperimentConfig& cfg) {
  if (cfg.k_list.empty()) throw std::invalid_argument("k_list: must be non-empty");
  for (int k : cfg.k_list) {
    if (k < 2) throw std::invalid_argument("k_list: entries must be >= 2");
  }
  if (has_duplicates(cfg.k_list)) {
    throw std::invalid_argument("k_list: entries must be unique");
  }
  if (cfg.d_list.empty()) throw std::invalid_argument("d_list: must be non-empty");
  for (int d : cfg.d_list) {
    if (d < 1) throw std::invalid_argument("d_list: entries must be >= 1");
  }
  if (has_duplicates(cfg.d_list)) {
    throw std::invalid_argument("d_list: entries must be unique");
  }
  if (cfg.algorithms.empty()) {
    throw std::invalid_argument("algorithms: must be non-empty");
  }
  if (has_duplicates(cfg.algorithms)) {
    throw std::invalid_argument("algorithms: entries must be unique");
  }
  if (!(cfg.tau > 0.0)) throw std::invalid_argument("tau: must be positive");
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("epsilon: must be positive");
  if (!(cfg.sigma > 0.0)) throw std::invalid_argument("sigma: must be positive");
  if (cfg.trees < 1) throw std::invalid_argument("trees: must be >= 1");
  if (cfg.runs < 1) throw std::invalid_argument("runs: must be >= 1");
  if (cfg.budget < 1) throw std::invalid_argument("budget: must be >= 1");
  if (cfg.jobs < 0) throw std::invalid_argument("jobs: must be >= 0");
  if (cfg.output_dir.empty()) {
    throw std::invalid_argument("output_dir: must be non-empty");
  }
}

std::vector<RunKey> enumerate_run_keys(const ExperimentConfig& cfg) {
  std::vector<RunKey> keys;
  keys.reserve(cfg.k_list.size() * cfg.d_list.size() * cfg.trees * cfg.runs *
               cfg.algorithms.size());
  for (int k : cfg.k_list) {
    for (int d : cfg.d_list) {
      for (int tree = 0; tree < cfg.trees; ++tree) {
        for (int run = 0; run < cfg.runs; ++run) {
          for (Algorithm algorithm : cfg.algorithms) {
            keys.push_back(RunKey{k, d, tree, run, algorithm});
          }
        }
      }
    }
  }
  return keys;
}

std::uint64_t tree_seed_for(std::uint64_t master_seed, int k, int d,
                            int tree_index) {
  return mix_seed(master_seed, 0x74726565ULL, static_cast<std::uint64_t>(k),
                  static_cast<std::uint64_t>(d),
                  static_cast<std::uint64_t>(tree_index));
}

std::uint64_t run_seed_for(std::uint64_t master_seed, const RunKey& key,
                           int algorithm_index) {
  return mix_seed(master_seed, 0x72756eULL, static_cast<std::uint64_t>(key.k),
                  static_cast<std::uint64_t>(key.d),
                  static_cast<std::uint64_t>(key.tree_index),
                  static_cast<std::uint64_t>(key.run_index),
                  static_cast<std::uint64_t>(algorithm_index));
}

SweepSummary run_sweep(const ExperimentConfig& cfg) {
  validate_experiment(cfg);
  const std::vector<RunKey> keys = enumerate_run_keys(cfg);

  std::filesystem::create_directories(cfg.output_dir);
  const std::string runs_path =
      (std::filesystem::path(cfg.output_dir) / "runs.csv").string();
  const std::string final_path =
      (std::filesystem::path(cfg.output_dir) / "final.csv").string();
  std::ofstream runs_out(runs_path, std::ios::trunc);
  if (!runs_out) throw std::runtime_error("cannot write " + runs_path);
  std::ofstream final_out(final_path, std::ios::trunc);
  if (!final_out) throw std::runtime_error("cannot write " + final_path);

  // Trees and oracles are shared by every run over the same (k, d, tree):
  // built once up front, read-only afterwards.
  std::map<TreeKey, SyntheticTree> tree_cache;
  std::map<TreeKey, std::unordered_map<int, OracleValues>> oracle_cache;
  for (int k : cfg.k_list) {
    for (int d : cfg.d_list) {
      for (int tree = 0; tree < cfg.trees; ++tree) {
        const TreeKey tk{k, d, tree};
        auto [it, inserted] = tree_cache.emplace(
            tk, SyntheticTree::generate(
                    k, d, tree_seed_for(cfg.master_seed, k, d, tree),
                    cfg.sigma));
        auto& per_algo = oracle_cache[tk];
        for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai) {
          const Algorithm algorithm = cfg.algorithms[ai];
          per_algo.emplace(
              static_cast<int>(ai),
              is_regularized(algorithm)
                  ? make_oracles(it->second, regularizer_for(algorithm), cfg.tau)
                  : make_oracles(it->second));
        }
      }
    }
  }

  const int worker_count = std::max(
      1, cfg.jobs > 0 ? cfg.jobs
                      : static_cast<int>(std::thread::hardware_concurrency()));
  const std::size_t max_pending = static_cast<std::size_t>(worker_count) * 2 + 4;

  std::mutex mu;
  std::condition_variable cv;
  std::map<std::size_t, std::vector<MetricRecord>> completed;
  std::size_t write_cursor = 0;
  std::atomic<std::size_t> next_job{0};
  std::exception_ptr failure;

  auto worker = [&]() {
    for (;;) {
      const std::size_t job = next_job.fetch_add(1);
      if (job >= keys.size()) return;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] {
          return failure != nullptr || job < write_cursor + max_pending;
        });
        if (failure) return;
      }
      try {
        const RunKey& key = keys[job];
        const TreeKey tk{key.k, key.d, key.tree_index};
        const SyntheticTree& tree = tree_cache.at(tk);
        const int algo_index = algorithm_index_in(cfg, key.algorithm);
        const OracleValues& oracles = oracle_cache.at(tk).at(algo_index);

        AlgorithmConfig run_cfg;
        run_cfg.algorithm = key.algorithm;
        run_cfg.tau = cfg.tau;
        run_cfg.epsilon = cfg.epsilon;
        run_cfg.gamma = 1.0;
        run_cfg.simulation_budget = cfg.budget;

        Rng rng(run_seed_for(cfg.master_seed, key, algo_index));
        SyntheticTreeEnv env(tree);
        const SearchResult result = run_search(env, run_cfg, rng);

        RunMeta meta;
        meta.tree_id = key.tree_index;
        meta.run_id = key.run_index;
        meta.algorithm = to_string(key.algorithm);
        meta.k = key.k;
        meta.d = key.d;
        meta.tau = cfg.tau;
        meta.epsilon = cfg.epsilon;

        std::vector<MetricRecord> records =
            compute_metrics(result, oracles, meta);
        {
          std::lock_guard lock(mu);
          completed.emplace(job, std::move(records));
        }
        cv.notify_all();
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        cv.notify_all();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(worker_count);
  for (int i = 0; i < worker_count; ++i) pool.emplace_back(worker);

  write_metrics_header(runs_out);
  write_metrics_header(final_out);
  std::int64_t record_count = 0;
  {
    std::unique_lock lock(mu);
    while (write_cursor < keys.size()) {
      cv.wait(lock, [&] {
        return failure != nullptr || completed.count(write_cursor) > 0;
      });
      if (failure) break;
      std::vector<MetricRecord> block = std::move(completed.at(write_cursor));
      completed.erase(write_cursor);
      lock.unlock();
      for (const MetricRecord& rec : block) {
        write_metric_record(runs_out, rec);
      }
      write_metric_record(final_out, block.back());
      record_count += static_cast<std::int64_t>(block.size());
      lock.lock();
      ++write_cursor;
      cv.notify_all();
    }
  }

  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  runs_out.flush();
  final_out.flush();
  if (!runs_out || !final_out) {
    throw std::runtime_error("failed while writing sweep output files");
  }

  SweepSummary summary;
  summary.run_count = static_cast<std::int64_t>(keys.size());
  summary.record_count = record_count;
  summary.runs_csv_path = runs_path;
  summary.final_csv_path = final_path;
  return summary;
}

}  // namespace regmcts
