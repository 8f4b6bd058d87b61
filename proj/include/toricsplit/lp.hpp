#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "toricsplit/matrix.hpp"

namespace toricsplit::lp {

/// Exact feasibility of { x in Q^n : A x >= b } with x free.
///
/// Phase-one simplex over the rationals on the standard form
///   A p - A q - s + a = b,  p, q, s, a >= 0   (rows flipped so b >= 0),
/// minimising the sum of artificials with Bland's rule. Returns a feasible
/// point, or nullopt when the optimum of phase one is positive.
inline std::optional<std::vector<Rational>> feasible_point(const RatMatrix& a,
                                                           const std::vector<Rational>& b) {
  const std::size_t m = a.rows(), n = a.cols();
  require(b.size() == m, ErrorKind::Internal, "lp: rhs size mismatch");
  if (m == 0) return std::vector<Rational>(n, Rational(0));

  // Column layout: [p (n) | q (n) | s (m) | art (m) | rhs].
  const std::size_t cols = 2 * n + 2 * m;
  RatMatrix t(m + 1, cols + 1);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Rational sign = b[i] < 0 ? Rational(-1) : Rational(1);
    for (std::size_t j = 0; j < n; ++j) {
      t(i, j) = sign * a(i, j);
      t(i, n + j) = -sign * a(i, j);
    }
    t(i, 2 * n + i) = -sign;
    t(i, 2 * n + m + i) = 1;
    t(i, cols) = sign * b[i];
    basis[i] = 2 * n + m + i;
  }
  // Objective row holds reduced costs of "minimise sum(art)".
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= cols; ++j)
      if (j < 2 * n + m || j == cols) t(m, j) -= t(i, j);

  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (t(m, j) < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;

    std::size_t leave = m;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t(i, enter) <= 0) continue;
      const Rational ratio = t(i, cols) / t(i, enter);
      if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    // Phase one is bounded below by zero, so an entering column always has a pivot row.
    require(leave < m, ErrorKind::Internal, "lp: unbounded phase one");

    const Rational pivot = t(leave, enter);
    for (std::size_t j = 0; j <= cols; ++j) t(leave, j) /= pivot;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || t(i, enter) == 0) continue;
      const Rational f = t(i, enter);
      for (std::size_t j = 0; j <= cols; ++j) t(i, j) -= f * t(leave, j);
    }
    basis[leave] = enter;
  }

  if (t(m, cols) != 0) return std::nullopt;

  std::vector<Rational> value(cols, Rational(0));
  for (std::size_t i = 0; i < m; ++i) value[basis[i]] = t(i, cols);
  std::vector<Rational> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = value[j] - value[n + j];
  return x;
}

}  // namespace toricsplit::lp
