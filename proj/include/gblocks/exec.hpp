#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gb {

// Serial is the reference path; parallel must produce identical reports.
enum class Exec { serial, parallel };

// Evaluates f(i) for i in [0, n) and returns results in index order.
// Exceptions are captured per instance and rethrown after the loop
// (the lowest failing index wins, so the outcome is deterministic).
template <class R, class F>
std::vector<R> map_instances(std::size_t n, Exec exec, F&& f) {
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errs(n);
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel && n > 1)
  for (long long i = 0; i < count; ++i) {
    try {
      out[i] = f(static_cast<std::size_t>(i));
    } catch (...) {
      errs[i] = std::current_exception();
    }
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace gb
