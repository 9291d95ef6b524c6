#pragma once

#include <string>

#include <json.hpp>

#include "polarwell/verify.hpp"

namespace polarwell::report {

/// ISO-8601 UTC time taken from SOURCE_DATE_EPOCH, or the Unix epoch when it
/// is unset, so identical configurations serialize identically.
[[nodiscard]] std::string reproducible_timestamp();

/// {suite, timestamp, config, cases[], pass}; case = {id, expected, observed,
/// abs_error, rel_error, tolerance, pass}. Non-finite numbers become null.
[[nodiscard]] nlohmann::json to_json(const verify::VerificationReport& report, const nlohmann::json& config,
                                     const std::string& timestamp);

/// Inverse of to_json for the case list (used by tests and downstream tooling).
[[nodiscard]] verify::VerificationReport from_json(const nlohmann::json& doc);

}  // namespace polarwell::report
