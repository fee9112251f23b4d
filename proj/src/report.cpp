#include "ellrank/report.hpp"

namespace ellrank {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Inconclusive:
      return "inconclusive";
  }
  return "fail";
}

Report::Report(std::string experiment, Json config, std::uint64_t seed)
    : experiment_(std::move(experiment)), config_(std::move(config)), seed_(seed) {}

CheckRecord& Report::add(CheckRecord rec) {
  checks_.push_back(std::move(rec));
  return checks_.back();
}

void Report::caveat(std::string id, std::string text) { caveats_.push_back({std::move(id), std::move(text)}); }

const CheckRecord* Report::find(const std::string& id) const {
  for (const auto& c : checks_)
    if (c.id == id) return &c;
  return nullptr;
}

Status Report::overall() const {
  Status s = Status::Pass;
  for (const auto& c : checks_) {
    if (c.status == Status::Fail) return Status::Fail;
    if (c.status == Status::Inconclusive) s = Status::Inconclusive;
  }
  return s;
}

Json Report::to_json() const {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["experiment"] = experiment_;
  j["seed"] = seed_;
  j["config"] = config_;
  j["status"] = to_string(overall());
  Json cav = Json::array();
  for (const auto& c : caveats_) cav.push_back({{"id", c.id}, {"text", c.text}});
  j["caveats"] = cav;
  Json checks = Json::array();
  for (const auto& c : checks_) {
    Json r;
    r["id"] = c.id;
    r["name"] = c.name;
    r["status"] = to_string(c.status);
    r["counts"] = c.counts;
    if (!c.witness.empty()) r["witness"] = c.witness;
    if (!c.note.empty()) r["note"] = c.note;
    checks.push_back(std::move(r));
  }
  j["checks"] = checks;
  j["timing"] = timing_;
  return j;
}

Json normalized(const Json& report) {
  Json out = report;
  if (out.is_object()) out.erase("timing");
  return out;
}

}  // namespace ellrank
