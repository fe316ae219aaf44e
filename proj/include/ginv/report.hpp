#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ginv/matrix.hpp"

namespace ginv {

/// One verified statement: a named check with its verdict, the law it
/// exercises, scalar measurements and optional traces.
struct CheckRecord {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string anchor;
  std::map<std::string, double> values;
  std::map<std::string, std::vector<double>> traces;
  // Serialized algebra elements (wire format) attached to the record.
  std::map<std::string, std::string> elements;
  std::string error_category;  // non-empty for error records
  std::string message;
};

struct ReportSummary {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
};

class ExperimentReport {
 public:
  explicit ExperimentReport(std::string suite = {}) : suite_(std::move(suite)) {}

  const std::string& suite() const noexcept { return suite_; }
  const std::vector<CheckRecord>& records() const noexcept { return records_; }
  std::map<std::string, std::string>& config() noexcept { return config_; }
  const std::map<std::string, std::string>& config() const noexcept { return config_; }

  CheckRecord& add(CheckRecord r);
  CheckRecord& add(std::string name, bool pass, std::string anchor, std::map<std::string, double> values = {});
  void merge(const ExperimentReport& other);
  // Canonical order: suite, then check name; stable for equal keys.
  void sort_canonical();

  void echo_tolerances(const ToleranceConfig& tol);
  void echo(const std::string& key, const std::string& value) { config_[key] = value; }

  ReportSummary summary() const;
  bool all_passed() const;
  const CheckRecord* find(const std::string& name) const;

  std::string to_json(std::optional<std::string> timestamp = std::nullopt, int indent = 2) const;
  std::string to_csv() const;

 private:
  std::string suite_;
  std::vector<CheckRecord> records_;
  std::map<std::string, std::string> config_;
};

// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace ginv
