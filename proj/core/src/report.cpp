#include "drinfeld/report.hpp"

#include "drinfeld/errors.hpp"

namespace drinfeld {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Vacuous: return "VACUOUS";
    case Status::Error: return "ERROR";
  }
  return "ERROR";
}

Status status_from_string(std::string_view s) {
  if (s == "PASS") return Status::Pass;
  if (s == "FAIL") return Status::Fail;
  if (s == "VACUOUS") return Status::Vacuous;
  if (s == "ERROR") return Status::Error;
  throw_usage("unknown status " + std::string(s));
}

void CheckReport::add_tower(const FieldTower& F) {
  ojson d = F.describe();
  for (const auto& t : towers) {
    if (t == d) return;
  }
  towers.push_back(std::move(d));
}

void CheckReport::fail(ojson w) {
  if (status == Status::Fail) return;
  status = Status::Fail;
  witness = std::move(w);
}

void CheckReport::vacuous(std::string reason) {
  status = Status::Vacuous;
  witness = ojson{{"reason", std::move(reason)}};
}

void CheckReport::validate() const {
  if (status == Status::Fail && witness.is_null()) throw InvariantError(check_id + ": FAIL without witness");
  if (status == Status::Vacuous && !(witness.is_object() && witness.contains("reason"))) {
    throw InvariantError(check_id + ": VACUOUS without reason");
  }
}

ojson CheckReport::to_json(bool include_runtime) const {
  ojson out;
  out["check_id"] = check_id;
  out["params"] = params;
  out["status"] = std::string(to_string(status));
  out["witness"] = witness;
  out["data"] = data;
  out["towers"] = towers;
  if (include_runtime) out["runtime_ms"] = runtime_ms;
  return out;
}

Status combine(Status a, Status b) {
  if (a == Status::Fail || b == Status::Fail) return Status::Fail;
  if (a == Status::Error || b == Status::Error) return Status::Error;
  if (a == Status::Vacuous && b == Status::Vacuous) return Status::Vacuous;
  return Status::Pass;
}

}  // namespace drinfeld
