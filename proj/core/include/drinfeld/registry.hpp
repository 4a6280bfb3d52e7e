#pragma once

// Check ids, their parameters, and batched report assembly.

#include <string>
#include <vector>

#include "drinfeld/report.hpp"

namespace drinfeld {

inline constexpr int kReportSchema = 1;

struct CheckInfo {
  std::string id;
  std::vector<std::string> required;  // parameter names; "q" also accepts p (and e)
  std::vector<std::string> optional;
  std::string summary;
};

const std::vector<CheckInfo>& check_catalog();
std::vector<std::string> check_ids();
/// Throws UsageError naming the valid ids.
const CheckInfo& check_info(const std::string& id);

/// Runs one check. Missing or malformed parameters raise UsageError;
/// budget overruns come back as ERROR reports.
CheckReport run_check(const std::string& id, const ojson& params);

struct CheckRequest {
  std::string id;
  ojson params = ojson::object();
};

/// Accepts {"checks": [{"id": ..., "params": {...}}, ...]} or the bare array.
/// Entries may also carry their parameters inline next to "id".
std::vector<CheckRequest> requests_from_json(const ojson& config);

/// Runs every request on a work queue of `jobs` workers and returns
/// {"schema", "tool", "version", "towers", "reports"} with reports in request
/// order. Unknown ids are rejected before anything runs.
ojson report_bundle(const std::vector<CheckRequest>& requests, unsigned jobs, bool include_runtime = true);

/// Status of a bundle: FAIL if any report failed, else ERROR if any errored,
/// else PASS (VACUOUS reports do not count).
Status bundle_status(const ojson& bundle);

/// Copy of a bundle with every runtime_ms field removed.
ojson strip_runtime(ojson bundle);

}  // namespace drinfeld
