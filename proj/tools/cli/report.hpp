#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "moonshine/error.hpp"

namespace moonshine::cli {

enum ExitCode { exit_pass = 0, exit_fail = 1, exit_usage = 2, exit_inconclusive = 3 };

struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::inconclusive;
  std::optional<std::string> window;  // exclusive q-exponent bound the verdict rests on
  std::string detail;
};

/// Everything a run prints or saves. Timing is only serialized on request so
/// identical inputs give byte-identical reports.
class RunReport {
 public:
  explicit RunReport(std::vector<std::string> argv) : argv_(std::move(argv)) {}

  void add_input(std::string path, std::string const& contents);
  void add(CheckResult check) { checks_.push_back(std::move(check)); }
  /// A computed result that is not a verdict, such as a classification.
  void note(std::string key, std::string value) { notes_.emplace_back(std::move(key), std::move(value)); }
  void set_seconds(double s) { seconds_ = s; }

  std::vector<CheckResult> const& checks() const { return checks_; }
  /// 0 all pass (or no checks), 1 any fail, 3 otherwise.
  int exit_code() const;
  std::string human(bool timing) const;
  nlohmann::ordered_json json(bool timing) const;

 private:
  std::vector<std::string> argv_;
  std::vector<std::pair<std::string, std::string>> inputs_;  // path, sha256
  std::vector<std::pair<std::string, std::string>> notes_;
  std::vector<CheckResult> checks_;
  double seconds_ = 0;
};

std::string sha256_hex(std::string const& data);

}  // namespace moonshine::cli
