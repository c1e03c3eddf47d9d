#include "nichols/report.hpp"

namespace nichols {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    default: return "unknown";
  }
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json j;
  j["check"] = check;
  j["status"] = to_string(status);
  if (!witness.is_null()) j["witness"] = witness;
  if (hilbert) j["hilbert"] = hilbert->to_json();
  j["runtime"] = runtime;
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

void CheckReport::require(bool ok, const std::string& what, nlohmann::json detail) {
  if (!ok) status = Status::Fail;
  nlohmann::json entry;
  entry["item"] = what;
  entry["ok"] = ok;
  if (!detail.is_null()) entry["detail"] = std::move(detail);
  witness["items"].push_back(std::move(entry));
}

}  // namespace nichols
