#pragma once

#include <cstddef>
#include <exception>
#include <type_traits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spqo {

enum class SweepMode { Serial, Parallel };

/// True when the parallel path actually runs on several threads.
inline bool sweep_is_parallel() {
#ifdef _OPENMP
  return omp_get_max_threads() > 1;
#else
  return false;
#endif
}

/// Evaluates fn(0), ..., fn(n - 1) and returns the results in index order.
/// Items must be independent; derive any randomness from the index so that
/// both modes give identical results. The first exception (lowest index) is
/// rethrown after all items have run.
template <class Fn>
auto sweep(std::size_t n, Fn&& fn, SweepMode mode = SweepMode::Parallel) {
  using R = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errors(n);
  auto run = [&](std::size_t i) {
    try {
      out[i] = fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (mode == SweepMode::Parallel) {
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < count; ++i) run(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) run(i);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace spqo
