#pragma once

#include "nichols/engine.hpp"

#include "json.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace nichols {

enum class Status { Pass, Fail, Unknown };

std::string to_string(Status s);

// Outcome of one verification: status, optional witness and Hilbert data.
struct CheckReport {
  std::string check;
  Status status = Status::Unknown;
  nlohmann::json witness;
  std::optional<HilbertSeries> hilbert;
  double runtime = 0;
  std::vector<std::string> notes;

  bool passed() const { return status == Status::Pass; }
  nlohmann::json to_json() const;
  // Marks the report failed unless `ok`, recording `what` as a witness entry.
  void require(bool ok, const std::string& what, nlohmann::json detail = nullptr);
};

// Runs `body` and fills the runtime; a thrown CapTooSmall or deadline maps to Unknown.
template <class F>
CheckReport timed_check(std::string name, F&& body) {
  CheckReport r;
  r.check = std::move(name);
  r.status = Status::Pass;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const CapTooSmall& e) {
    r.status = Status::Unknown;
    r.notes.push_back(std::string("resource limit: ") + e.what());
  }
  r.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace nichols
