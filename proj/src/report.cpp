#include "gblocks/report.hpp"

namespace gb {

bool Report::pass() const {
  for (const auto& c : checks)
    if (!c.pass()) return false;
  return true;
}

CheckResult& Report::add(std::string name) {
  checks.push_back(CheckResult{});
  checks.back().name = std::move(name);
  return checks.back();
}

const CheckResult* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

void Report::merge(const Report& other) {
  for (const auto& n : other.notes) notes.push_back(n);
  for (const auto& c : other.checks) checks.push_back(c);
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["title"] = title;
  j["status"] = pass() ? "pass" : "fail";
  if (!notes.empty()) j["notes"] = notes;
  auto arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json cj;
    cj["name"] = c.name;
    cj["status"] = c.pass() ? "pass" : "fail";
    cj["instances_checked"] = c.instances;
    cj["failed"] = c.failed;
    if (!c.note.empty()) cj["note"] = c.note;
    auto fails = nlohmann::json::array();
    for (const auto& f : c.failures) {
      nlohmann::json fj;
      fj["witness"] = f.witness;
      for (const auto& [name, m] : f.matrices) fj["matrices"][name] = m.to_json();
      fails.push_back(fj);
    }
    cj["failures"] = fails;
    arr.push_back(cj);
  }
  j["checks"] = arr;
  return j;
}

std::string Report::text() const {
  std::string s = title + ": " + (pass() ? "PASS" : "FAIL") + "\n";
  for (const auto& n : notes) s += "  note: " + n + "\n";
  for (const auto& c : checks) {
    s += "  " + c.name + ": " + (c.pass() ? "pass" : "FAIL") + " (" +
         std::to_string(c.instances) + " instances";
    if (c.failed) s += ", " + std::to_string(c.failed) + " failed";
    s += ")\n";
    if (!c.note.empty()) s += "    " + c.note + "\n";
    for (const auto& f : c.failures) {
      s += "    witness: " + f.witness + "\n";
      for (const auto& [name, m] : f.matrices) s += "      " + name + " = " + m.str() + "\n";
    }
  }
  return s;
}

}  // namespace gb
