#include "bwm/report.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>

#include "bwm/common.hpp"

namespace bwm {

Report::Report(std::string experiment, std::string suite, unsigned long long seed)
    : experiment_(std::move(experiment)), suite_(std::move(suite)), seed_(seed) {}

Check& Report::below(const std::string& name, double measured, double tolerance, std::string note) {
  checks_.push_back({name, measured, -INFINITY, tolerance, measured < tolerance, std::move(note)});
  return checks_.back();
}

Check& Report::at_least(const std::string& name, double measured, double minimum, std::string note) {
  checks_.push_back({name, measured, minimum, INFINITY, measured >= minimum, std::move(note)});
  return checks_.back();
}

Check& Report::within(const std::string& name, double measured, double lower, double upper, std::string note) {
  checks_.push_back({name, measured, lower, upper, measured >= lower && measured <= upper, std::move(note)});
  return checks_.back();
}

Check& Report::holds(const std::string& name, bool ok, std::string note) {
  checks_.push_back({name, ok ? 1.0 : 0.0, 1.0, 1.0, ok, std::move(note)});
  return checks_.back();
}

bool Report::passed() const {
  for (const auto& c : checks_)
    if (!c.passed) return false;
  return true;
}

int Report::exit_code() const { return passed() && flags_.empty() ? 0 : 2; }

std::string Report::json() const {
  using nlohmann::ordered_json;
  auto num = [](double v) -> ordered_json {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return nullptr;
    return v > 0 ? "inf" : "-inf";
  };
  ordered_json j;
  j["experiment"] = experiment_;
  j["suite"] = suite_;
  j["seed"] = seed_;
  j["passed"] = passed();
  j["flags"] = flags_;
  ordered_json checks = ordered_json::array();
  for (const auto& c : checks_) {
    ordered_json e;
    e["name"] = c.name;
    e["measured"] = num(c.measured);
    e["lower"] = num(c.lower);
    e["upper"] = num(c.upper);
    e["passed"] = c.passed;
    if (!c.note.empty()) e["note"] = c.note;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  j["outputs"] = outputs_;
  return j.dump(2) + "\n";
}

void Report::write_json(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw InvalidArgument("cannot write report '" + path + "'");
  os << json();
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : path_(path), columns_(header.size()) {
  std::ofstream os(path_);
  if (!os) throw InvalidArgument("cannot write '" + path_ + "'");
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw InvalidArgument("CSV row has the wrong number of cells");
  std::ofstream os(path_, std::ios::app);
  for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
  os << "\n";
}

}  // namespace bwm
