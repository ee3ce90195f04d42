#pragma once

// Brute-force Fisher oracle over exact integer arithmetic. Independent
// of the library's log-gamma route: table probabilities are ratios of
// binomial products computed in 64-bit integers, exact for n <= 20.

#include <algorithm>
#include <cstdint>

namespace testutil {

inline std::uint64_t binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return result;
}

/// Two-sided Fisher exact p by full enumeration of the hypergeometric
/// support, summing the weights of all tables no more probable than the
/// observed one. Weight comparison is exact (integers).
inline double fisher_enumeration(std::int64_t a, std::int64_t b, std::int64_t c,
                                 std::int64_t d) {
  const std::int64_t row1 = a + b;
  const std::int64_t row2 = c + d;
  const std::int64_t col1 = a + c;
  const std::int64_t lo = std::max<std::int64_t>(0, col1 - row2);
  const std::int64_t hi = std::min(row1, col1);

  const std::uint64_t observed = binom(row1, a) * binom(row2, col1 - a);
  std::uint64_t total = 0;
  std::uint64_t extreme = 0;
  for (std::int64_t x = lo; x <= hi; ++x) {
    std::uint64_t weight = binom(row1, x) * binom(row2, col1 - x);
    total += weight;
    if (weight <= observed) extreme += weight;
  }
  if (total == 0) return 1.0;
  return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace testutil
