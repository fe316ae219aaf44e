#include "ginv/report.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <json.hpp>

namespace ginv {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

CheckRecord& ExperimentReport::add(CheckRecord r) {
  if (r.suite.empty()) r.suite = suite_;
  records_.push_back(std::move(r));
  return records_.back();
}

CheckRecord& ExperimentReport::add(std::string name, bool pass, std::string anchor, std::map<std::string, double> values) {
  CheckRecord r;
  r.name = std::move(name);
  r.pass = pass;
  r.anchor = std::move(anchor);
  r.values = std::move(values);
  return add(std::move(r));
}

void ExperimentReport::merge(const ExperimentReport& other) {
  for (const auto& r : other.records_) add(r);
  for (const auto& [k, v] : other.config_) config_.try_emplace(k, v);
}

void ExperimentReport::sort_canonical() {
  std::stable_sort(records_.begin(), records_.end(), [](const CheckRecord& a, const CheckRecord& b) {
    if (a.suite != b.suite) return a.suite < b.suite;
    return a.name < b.name;
  });
}

void ExperimentReport::echo_tolerances(const ToleranceConfig& tol) {
  config_["tol.rank_cutoff_factor"] = format_double(tol.rank_cutoff_factor);
  config_["tol.residual_tol"] = format_double(tol.residual_tol);
  config_["tol.fd_step_scale"] = format_double(tol.fd_step_scale);
}

ReportSummary ExperimentReport::summary() const {
  ReportSummary s;
  s.total = records_.size();
  s.passed = static_cast<std::size_t>(std::count_if(records_.begin(), records_.end(), [](const auto& r) { return r.pass; }));
  s.failed = s.total - s.passed;
  return s;
}

bool ExperimentReport::all_passed() const { return summary().failed == 0; }

const CheckRecord* ExperimentReport::find(const std::string& name) const {
  for (const auto& r : records_)
    if (r.name == name) return &r;
  return nullptr;
}

namespace {

nlohmann::json number(double v) {
  // JSON has no NaN/Inf; encode them as strings so reports stay parseable.
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string ExperimentReport::to_json(std::optional<std::string> timestamp, int indent) const {
  nlohmann::json j;
  j["suite"] = suite_;
  j["config"] = config_;
  if (timestamp) j["timestamp"] = *timestamp;
  const ReportSummary s = summary();
  j["summary"] = {{"total", s.total}, {"passed", s.passed}, {"failed", s.failed}};
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& r : records_) {
    nlohmann::json jr;
    jr["suite"] = r.suite;
    jr["check"] = r.name;
    jr["pass"] = r.pass;
    jr["anchor"] = r.anchor;
    nlohmann::json vals = nlohmann::json::object();
    for (const auto& [k, v] : r.values) vals[k] = number(v);
    jr["values"] = vals;
    if (!r.traces.empty()) {
      nlohmann::json tr = nlohmann::json::object();
      for (const auto& [k, v] : r.traces) {
        nlohmann::json arr = nlohmann::json::array();
        for (double x : v) arr.push_back(number(x));
        tr[k] = arr;
      }
      jr["traces"] = tr;
    }
    if (!r.elements.empty()) {
      nlohmann::json el = nlohmann::json::object();
      for (const auto& [k, v] : r.elements) el[k] = nlohmann::json::parse(v);
      jr["elements"] = el;
    }
    if (!r.error_category.empty()) jr["error"] = {{"category", r.error_category}, {"message", r.message}};
    else if (!r.message.empty()) jr["message"] = r.message;
    recs.push_back(std::move(jr));
  }
  j["records"] = std::move(recs);
  return j.dump(indent) + "\n";
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream out;
  out << "suite,check,anchor,verdict,value\n";
  for (const auto& [k, v] : config_) out << "config,," << csv_escape(k) << ",," << csv_escape(v) << "\n";
  for (const auto& r : records_) {
    std::string value;
    for (const auto& [k, v] : r.values) {
      if (!value.empty()) value += ";";
      value += k + "=" + format_double(v);
    }
    if (!r.error_category.empty()) value += (value.empty() ? "" : ";") + std::string("error=") + r.error_category;
    out << csv_escape(r.suite) << "," << csv_escape(r.name) << "," << csv_escape(r.anchor) << ","
        << (r.pass ? "pass" : "fail") << "," << csv_escape(value) << "\n";
  }
  return out.str();
}

}  // namespace ginv
