#pragma once

#include <optional>
#include <string>
#include <vector>

namespace pcsft {

// Deterministic textual report: ordered key/value records followed by a flat
// table of (name, value, stderr, threshold, verdict) rows. Rendering the
// same report twice yields identical bytes.
class Report {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, long long value);

  // An estimated quantity: value with its standard error, optionally checked
  // against a threshold.
  void add_estimate(const std::string& name, double value, double stderr_val,
                    std::optional<double> threshold = std::nullopt,
                    std::optional<bool> pass = std::nullopt);
  // An estimate whose stderr is not defined (e.g. a single sample).
  void add_estimate_no_stderr(const std::string& name, double value,
                              std::optional<double> threshold = std::nullopt,
                              std::optional<bool> pass = std::nullopt);
  // An exactly computed quantity (no sampling error).
  void add_exact(const std::string& name, double value,
                 std::optional<double> threshold = std::nullopt,
                 std::optional<bool> pass = std::nullopt);

  bool all_pass() const;
  std::string render() const;

  static std::string format_double(double v);

 private:
  struct Row {
    std::string name;
    std::string value;
    std::string stderr_text;
    std::string threshold;
    std::string verdict;
  };

  std::vector<std::pair<std::string, std::string>> header_;
  std::vector<Row> rows_;
  bool any_fail_ = false;
};

}  // namespace pcsft
