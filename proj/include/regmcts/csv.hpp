#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "regmcts/metrics.hpp"

namespace regmcts {

// Column order of runs.csv and final.csv. Reals are rendered with 17
// significant digits so the file round-trips without loss.
inline constexpr const char* kMetricsCsvHeader =
    "tree_id,run_id,algorithm,k,d,tau,epsilon,sim,v_omega,eps_omega,eps_uct,"
    "cum_regret";

void write_metrics_header(std::ostream& out);
void write_metric_record(std::ostream& out, const MetricRecord& rec);
void write_metric_records(std::ostream& out,
                          std::span<const MetricRecord> records);

// Parses one data row. `line_number` is used in error messages.
MetricRecord parse_metric_record(const std::string& line,
                                 std::size_t line_number);

// Streams a metrics CSV, invoking `fn` per data row. Throws
// std::runtime_error with the offending line number on malformed input.
void for_each_metric_record(std::istream& in,
                            const std::function<void(const MetricRecord&)>& fn);

std::vector<MetricRecord> read_metric_records(std::istream& in);
std::vector<MetricRecord> read_metric_records_file(const std::string& path);

}  // namespace regmcts
