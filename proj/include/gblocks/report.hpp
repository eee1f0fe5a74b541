#pragma once

#include "gblocks/exec.hpp"
#include "gblocks/matrix.hpp"

#include "json.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gb {

struct Failure {
  std::string witness;
  std::vector<std::pair<std::string, Matrix>> matrices;
};

// One family of identities: how many instances were checked, which failed.
struct CheckResult {
  static constexpr std::size_t kMaxWitnesses = 5;

  std::string name;
  std::size_t instances = 0;
  std::size_t failed = 0;
  std::vector<Failure> failures;  // first kMaxWitnesses only
  std::string note;

  bool pass() const { return failed == 0; }
  void fail(Failure f) {
    ++failed;
    if (failures.size() < kMaxWitnesses) failures.push_back(std::move(f));
  }
  void fail(std::string witness) { fail(Failure{std::move(witness), {}}); }
};

// Result of one instance: skipped (not admissible), passed, or failed with a witness.
struct Outcome {
  bool checked = false;
  std::optional<Failure> failure;
  static Outcome skip() { return {}; }
  static Outcome ok() { return {true, std::nullopt}; }
  static Outcome bad(Failure f) { return {true, std::move(f)}; }
};

// Runs f(i) for i in [0, n) and folds the outcomes into r in index order.
template <class F>
void run_instances(CheckResult& r, std::size_t n, Exec exec, F&& f) {
  auto out = map_instances<Outcome>(n, exec, std::forward<F>(f));
  for (auto& o : out) {
    if (!o.checked) continue;
    ++r.instances;
    if (o.failure) r.fail(std::move(*o.failure));
  }
}

struct Report {
  std::string title;
  std::vector<std::string> notes;
  std::vector<CheckResult> checks;

  bool pass() const;
  CheckResult& add(std::string name);
  const CheckResult* find(const std::string& name) const;
  void merge(const Report& other);  // appends other's checks

  nlohmann::json to_json() const;
  std::string text() const;
};

}  // namespace gb
