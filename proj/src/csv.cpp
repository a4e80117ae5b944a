#include "regmcts/csv.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "regmcts/numeric_text.hpp"

namespace regmcts {

namespace {

std::vector<std::string_view> split_fields(const std::string& line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.emplace_back(line.data() + start, line.size() - start);
      break;
    }
    fields.emplace_back(line.data() + start, comma - start);
    start = comma + 1;
  }
  return fields;
}

[[noreturn]] void parse_fail(std::size_t line_number, const std::string& what) {
  throw std::runtime_error("runs csv line " + std::to_string(line_number) +
                           ": " + what);
}

}  // namespace

void write_metrics_header(std::ostream& out) {
  out << kMetricsCsvHeader << "\n";
}

void write_metric_record(std::ostream& out, const MetricRecord& rec) {
  out << rec.tree_id << ',' << rec.run_id << ',' << rec.algorithm << ','
      << rec.k << ',' << rec.d << ',' << format_double(rec.tau) << ','
      << format_double(rec.epsilon) << ',' << rec.sim << ','
      << format_double(rec.v_omega) << ',' << format_double(rec.eps_omega)
      << ',' << format_double(rec.eps_uct) << ','
      << format_double(rec.cum_regret) << '\n';
}

void write_metric_records(std::ostream& out,
                          std::span<const MetricRecord> records) {
  write_metrics_header(out);
  for (const MetricRecord& rec : records) {
    write_metric_record(out, rec);
  }
}

MetricRecord parse_metric_record(const std::string& line,
                                 std::size_t line_number) {
  const auto fields = split_fields(line);
  if (fields.size() != 12) {
    parse_fail(line_number, "expected 12 fields, got " +
                                std::to_string(fields.size()));
  }
  MetricRecord rec;
  try {
    rec.tree_id = parse_int(fields[0]);
    rec.run_id = parse_int(fields[1]);
    rec.algorithm = std::string(fields[2]);
    rec.k = static_cast<int>(parse_int(fields[3]));
    rec.d = static_cast<int>(parse_int(fields[4]));
    rec.tau = parse_double(fields[5]);
    rec.epsilon = parse_double(fields[6]);
    rec.sim = parse_int(fields[7]);
    rec.v_omega = parse_double(fields[8]);
    rec.eps_omega = parse_double(fields[9]);
    rec.eps_uct = parse_double(fields[10]);
    rec.cum_regret = parse_double(fields[11]);
  } catch (const std::invalid_argument& e) {
    parse_fail(line_number, e.what());
  }
  if (rec.algorithm.empty()) {
    parse_fail(line_number, "empty algorithm label");
  }
  return rec;
}

void for_each_metric_record(
    std::istream& in, const std::function<void(const MetricRecord&)>& fn) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("runs csv: empty input");
  }
  if (line != kMetricsCsvHeader) {
    throw std::runtime_error("runs csv line 1: unexpected header");
  }
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    fn(parse_metric_record(line, line_number));
  }
}

std::vector<MetricRecord> read_metric_records(std::istream& in) {
  std::vector<MetricRecord> records;
  for_each_metric_record(in, [&](const MetricRecord& rec) {
    records.push_back(rec);
  });
  return records;
}

std::vector<MetricRecord> read_metric_records_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  return read_metric_records(in);
}

}  // namespace regmcts
