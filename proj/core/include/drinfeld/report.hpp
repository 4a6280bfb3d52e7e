#pragma once

#include <chrono>
#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

#include "drinfeld/errors.hpp"
#include "drinfeld/field.hpp"

namespace drinfeld {

using ojson = nlohmann::ordered_json;

inline ojson to_ojson(const nlohmann::json& j) { return ojson::parse(j.dump()); }

enum class Status { Pass, Fail, Vacuous, Error };

std::string_view to_string(Status s);
Status status_from_string(std::string_view s);

/// Outcome of one verification. A FAIL carries a witness; a VACUOUS report
/// carries a reason in its witness.
struct CheckReport {
  std::string check_id;
  ojson params = ojson::object();
  Status status = Status::Pass;
  ojson witness;                  // null unless there is something to show
  ojson data = ojson::object();   // measured values, reported on every outcome
  ojson towers = ojson::array();  // describe() of each tower used
  std::int64_t runtime_ms = 0;

  bool passed() const { return status == Status::Pass; }
  /// Records a tower once.
  void add_tower(const FieldTower& F);
  /// Marks the report failed with `witness` unless it already failed.
  void fail(ojson witness);
  void vacuous(std::string reason);
  /// Throws InvariantError for a FAIL without witness or VACUOUS without reason.
  void validate() const;

  ojson to_json(bool include_runtime = true) const;
};

/// Runs `body` on a fresh report, timing it and converting ResourceError
/// into an ERROR report.
template <class Body>
CheckReport run_timed(std::string check_id, ojson params, Body&& body) {
  CheckReport r;
  r.check_id = std::move(check_id);
  r.params = std::move(params);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const ResourceError& e) {
    r.status = Status::Error;
    r.witness = ojson{{"resource", e.what()}};
  }
  r.runtime_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  r.validate();
  return r;
}

/// Combines sub-results: FAIL dominates, then ERROR, then PASS; VACUOUS only
/// when every part is vacuous.
Status combine(Status a, Status b);

}  // namespace drinfeld
