#include "pcsft/report.hpp"

#include <cstdio>
#include <sstream>

namespace pcsft {

std::string Report::format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void Report::set(const std::string& key, const std::string& value) {
  header_.emplace_back(key, value);
}

void Report::set(const std::string& key, double value) {
  header_.emplace_back(key, format_double(value));
}

void Report::set(const std::string& key, long long value) {
  header_.emplace_back(key, std::to_string(value));
}

void Report::add_estimate(const std::string& name, double value,
                          double stderr_val, std::optional<double> threshold,
                          std::optional<bool> pass) {
  Row row;
  row.name = name;
  row.value = format_double(value);
  row.stderr_text = format_double(stderr_val);
  row.threshold = threshold ? format_double(*threshold) : "-";
  row.verdict = pass ? (*pass ? "pass" : "FAIL") : "-";
  if (pass && !*pass) {
    any_fail_ = true;
  }
  rows_.push_back(std::move(row));
}

void Report::add_estimate_no_stderr(const std::string& name, double value,
                                    std::optional<double> threshold,
                                    std::optional<bool> pass) {
  Row row;
  row.name = name;
  row.value = format_double(value);
  row.stderr_text = "n/a";
  row.threshold = threshold ? format_double(*threshold) : "-";
  row.verdict = pass ? (*pass ? "pass" : "FAIL") : "-";
  if (pass && !*pass) {
    any_fail_ = true;
  }
  rows_.push_back(std::move(row));
}

void Report::add_exact(const std::string& name, double value,
                       std::optional<double> threshold,
                       std::optional<bool> pass) {
  Row row;
  row.name = name;
  row.value = format_double(value);
  row.stderr_text = "exact";
  row.threshold = threshold ? format_double(*threshold) : "-";
  row.verdict = pass ? (*pass ? "pass" : "FAIL") : "-";
  if (pass && !*pass) {
    any_fail_ = true;
  }
  rows_.push_back(std::move(row));
}

bool Report::all_pass() const { return !any_fail_; }

std::string Report::render() const {
  std::ostringstream out;
  out << "pcsft-report v1\n";
  for (const auto& [key, value] : header_) {
    out << key << ": " << value << "\n";
  }
  if (!rows_.empty()) {
    out << "\nname\tvalue\tstderr\tthreshold\tverdict\n";
    for (const Row& row : rows_) {
      out << row.name << "\t" << row.value << "\t" << row.stderr_text << "\t"
          << row.threshold << "\t" << row.verdict << "\n";
    }
  }
  out << "\noverall: " << (any_fail_ ? "FAIL" : "PASS") << "\n";
  return out.str();
}

}  // namespace pcsft
