#pragma once

// Self-describing JSON reports: per-check records, caveat flags and a timing
// block that is excluded from determinism comparisons.

#include <string>
#include <vector>

#include <json.hpp>

namespace ellrank {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum class Status { Pass, Fail, Inconclusive };

std::string to_string(Status s);

struct CheckRecord {
  CheckRecord(std::string id_, std::string name_) : id(std::move(id_)), name(std::move(name_)) {}

  std::string id;    // statement id, e.g. "e7.1-i"
  std::string name;  // short human description
  Status status = Status::Pass;
  Json counts = Json::object();
  Json witness = Json::object();
  std::string note;
};

struct Caveat {
  std::string id;
  std::string text;
};

class Report {
 public:
  Report(std::string experiment, Json config, std::uint64_t seed);

  CheckRecord& add(CheckRecord rec);
  void caveat(std::string id, std::string text);
  void set_timing(Json timing) { timing_ = std::move(timing); }
  /// Records the duration of one phase under timing.phases.
  void time_phase(const std::string& phase, double ms) { timing_["phases"][phase] = ms; }
  const Json& timing() const { return timing_; }

  const std::vector<CheckRecord>& checks() const { return checks_; }
  const CheckRecord* find(const std::string& id) const;

  /// Fail if any check fails, else inconclusive if any is inconclusive, else pass.
  Status overall() const;
  int exit_code() const { return overall() == Status::Fail ? 1 : 0; }

  Json to_json() const;

 private:
  std::string experiment_;
  Json config_;
  std::uint64_t seed_;
  std::vector<CheckRecord> checks_;
  std::vector<Caveat> caveats_;
  Json timing_ = Json::object();
};

/// Copy of a report with the timing block removed.
Json normalized(const Json& report);

/// Pass when every element holds, otherwise fail.
inline Status status_of(bool ok) { return ok ? Status::Pass : Status::Fail; }

}  // namespace ellrank
