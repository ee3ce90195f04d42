#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace nblint {

/// 2x2 contingency table for one rule against reproducibility labels:
///   a = violated & non-reproducible   b = violated & reproducible
///   c = clean    & non-reproducible   d = clean    & reproducible
struct ContingencyTable {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;
  std::int64_t d = 0;

  std::int64_t n() const { return a + b + c + d; }
};

/// Odds ratio (a*d)/(b*c), Haldane-Anscombe corrected: +0.5 on every
/// cell when any cell is zero. Always positive and finite.
inline double odds_ratio(const ContingencyTable& t) {
  double a = static_cast<double>(t.a);
  double b = static_cast<double>(t.b);
  double c = static_cast<double>(t.c);
  double d = static_cast<double>(t.d);
  if (t.a == 0 || t.b == 0 || t.c == 0 || t.d == 0) {
    a += 0.5;
    b += 0.5;
    c += 0.5;
    d += 0.5;
  }
  return (a * d) / (b * c);
}

namespace detail {

inline double log_binom(std::int64_t n, std::int64_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

/// Hypergeometric probability of a table with top-left x and the given
/// margins, computed in log space.
inline double hypergeom_pmf(std::int64_t x, std::int64_t row1, std::int64_t row2,
                            std::int64_t col1) {
  return std::exp(log_binom(row1, x) + log_binom(row2, col1 - x) -
                  log_binom(row1 + row2, col1));
}

}  // namespace detail

/// Two-sided Fisher exact p-value: the sum of hypergeometric
/// probabilities, over all tables with the observed margins, that do not
/// exceed the observed table's probability (with 1e-12 relative slack on
/// the comparison).
inline double fisher_exact_two_sided(const ContingencyTable& t) {
  const std::int64_t row1 = t.a + t.b;
  const std::int64_t row2 = t.c + t.d;
  const std::int64_t col1 = t.a + t.c;
  const std::int64_t lo = std::max<std::int64_t>(0, col1 - row2);
  const std::int64_t hi = std::min(row1, col1);

  const double observed = detail::hypergeom_pmf(t.a, row1, row2, col1);
  const double cutoff = observed * (1.0 + 1e-12);
  double p = 0.0;
  for (std::int64_t x = lo; x <= hi; ++x) {
    double prob = detail::hypergeom_pmf(x, row1, row2, col1);
    if (prob <= cutoff) p += prob;
  }
  return std::min(p, 1.0);
}

/// Pearson chi-square statistic, 1 dof, no continuity correction.
/// Degenerate margins yield 0 (no deviation measurable).
inline double chi_square_statistic(const ContingencyTable& t) {
  const double row1 = static_cast<double>(t.a + t.b);
  const double row2 = static_cast<double>(t.c + t.d);
  const double col1 = static_cast<double>(t.a + t.c);
  const double col2 = static_cast<double>(t.b + t.d);
  if (row1 == 0 || row2 == 0 || col1 == 0 || col2 == 0) return 0.0;
  const double n = static_cast<double>(t.n());
  const double det = static_cast<double>(t.a) * static_cast<double>(t.d) -
                     static_cast<double>(t.b) * static_cast<double>(t.c);
  return n * det * det / (row1 * row2 * col1 * col2);
}

/// Upper tail of the chi-square(1) distribution; for one degree of
/// freedom the regularized upper incomplete gamma reduces to
/// erfc(sqrt(x/2)). Exactly 1 at x = 0, strictly decreasing in x.
inline double chi_square_p(double statistic) {
  return std::erfc(std::sqrt(statistic / 2.0));
}

}  // namespace nblint
