#ifndef PRM_KERNELS_HPP
#define PRM_KERNELS_HPP

#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <utility>

#include <omp.h>

// Pointwise scans over [lo, hi). `check(x)` returns 0 when x is fine and a
// nonzero status otherwise; the scan reports the least flagged x with its
// status. The serial version is the reference; the OpenMP version must agree
// with it exactly (the least point wins regardless of thread timing).
namespace prm::kernels {

struct Flagged {
  std::uint64_t x;
  int status;
  friend bool operator==(const Flagged&, const Flagged&) = default;
};

template <class Check>
std::optional<Flagged> first_flagged_serial(std::uint64_t lo, std::uint64_t hi, Check&& check) {
  for (std::uint64_t x = lo; x < hi; ++x) {
    if (int s = check(x); s != 0) return Flagged{x, s};
  }
  return std::nullopt;
}

template <class Check>
std::optional<Flagged> first_flagged_parallel(std::uint64_t lo, std::uint64_t hi,
                                              Check&& check) {
  constexpr std::uint64_t none = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t best = none;
  int best_status = 0;
  std::exception_ptr error;
  std::uint64_t error_at = none;

  const std::int64_t n = hi > lo ? static_cast<std::int64_t>(hi - lo) : 0;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t k = 0; k < n; ++k) {
    const std::uint64_t x = lo + static_cast<std::uint64_t>(k);
    std::uint64_t seen;
#pragma omp atomic read
    seen = best;
    if (x > seen) continue;
    try {
      const int s = check(x);
      if (s != 0) {
#pragma omp critical(prm_first_flagged)
        if (x < best) {
          best = x;
          best_status = s;
        }
      }
    } catch (...) {
#pragma omp critical(prm_first_flagged)
      if (x < error_at) {
        error_at = x;
        error = std::current_exception();
      }
    }
  }
  // An exception at a point below the least flagged point is what the serial
  // scan would have hit first.
  if (error && error_at < best) std::rethrow_exception(error);
  if (best == none) return std::nullopt;
  return Flagged{best, best_status};
}

template <class Check>
std::optional<Flagged> first_flagged(std::uint64_t lo, std::uint64_t hi, Check&& check,
                                     bool parallel = true) {
  if (parallel) return first_flagged_parallel(lo, hi, std::forward<Check>(check));
  return first_flagged_serial(lo, hi, std::forward<Check>(check));
}

}  // namespace prm::kernels

#endif  // PRM_KERNELS_HPP
