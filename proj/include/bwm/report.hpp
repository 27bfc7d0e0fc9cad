// Machine-readable suite reports and CSV output.
#pragma once

#include <string>
#include <vector>

namespace bwm {

struct Check {
  std::string name;
  double measured = 0.0;
  double lower = 0.0;  // pass iff lower <= measured <= upper
  double upper = 0.0;
  bool passed = false;
  std::string note;
};

class Report {
 public:
  Report(std::string experiment, std::string suite, unsigned long long seed);

  /// measured < tolerance (strict).
  Check& below(const std::string& name, double measured, double tolerance, std::string note = {});
  /// measured >= minimum.
  Check& at_least(const std::string& name, double measured, double minimum, std::string note = {});
  /// lower <= measured <= upper.
  Check& within(const std::string& name, double measured, double lower, double upper, std::string note = {});
  Check& holds(const std::string& name, bool ok, std::string note = {});

  void flag(const std::string& f) { flags_.push_back(f); }
  void output(const std::string& path) { outputs_.push_back(path); }

  const std::vector<Check>& checks() const { return checks_; }
  const std::vector<std::string>& flags() const { return flags_; }
  bool passed() const;
  /// 0 when every check passed and nothing was flagged, 2 otherwise.
  int exit_code() const;

  std::string json() const;
  void write_json(const std::string& path) const;

 private:
  std::string experiment_;
  std::string suite_;
  unsigned long long seed_;
  std::vector<Check> checks_;
  std::vector<std::string> flags_;
  std::vector<std::string> outputs_;
};

/// Comma-separated table; numeric cells are pre-formatted by the caller.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);

 private:
  std::string path_;
  std::size_t columns_;
};

}  // namespace bwm
