#include "polarwell/report.hpp"

#include <cmath>
#include <cstdlib>
#include <ctime>
#include <limits>

namespace polarwell::report {
namespace {

nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

double read_number(const nlohmann::json& v) {
  return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

}  // namespace

std::string reproducible_timestamp() {
  std::time_t t = 0;
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0) t = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json to_json(const verify::VerificationReport& report, const nlohmann::json& config,
                       const std::string& timestamp) {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : report.cases) {
    cases.push_back({{"id", c.id},
                     {"expected", number(c.expected)},
                     {"observed", number(c.observed)},
                     {"abs_error", number(c.abs_error)},
                     {"rel_error", number(c.rel_error)},
                     {"tolerance", number(c.tolerance)},
                     {"pass", c.pass}});
  }
  return {{"suite", report.suite}, {"timestamp", timestamp}, {"config", config}, {"cases", cases},
          {"pass", report.pass()}};
}

verify::VerificationReport from_json(const nlohmann::json& doc) {
  verify::VerificationReport r;
  r.suite = doc.at("suite").get<std::string>();
  for (const auto& c : doc.at("cases")) {
    verify::CaseRecord rec;
    rec.id = c.at("id").get<std::string>();
    rec.expected = read_number(c.at("expected"));
    rec.observed = read_number(c.at("observed"));
    rec.abs_error = read_number(c.at("abs_error"));
    rec.rel_error = read_number(c.at("rel_error"));
    rec.tolerance = read_number(c.at("tolerance"));
    rec.pass = c.at("pass").get<bool>();
    r.cases.push_back(std::move(rec));
  }
  return r;
}

}  // namespace polarwell::report
