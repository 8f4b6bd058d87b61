#pragma once

#include <memory>
#include <vector>

#include "toricsplit/cohomology.hpp"
#include "toricsplit/lattice.hpp"

namespace toricsplit {

/// Unsigned Bernoulli numbers B_1 = 1/6, B_2 = 1/30, B_3 = 1/42, ...
/// (B_j = |b_{2j}| for the classical sequence b_0 = 1, b_1 = -1/2, ...).
inline Rational bernoulli(int j) {
  require(j >= 1, ErrorKind::Input, "bernoulli index must be >= 1");
  const auto top = static_cast<unsigned>(2 * j);
  std::vector<Rational> b(top + 1);
  b[0] = 1;
  for (unsigned m = 1; m <= top; ++m) {
    Rational acc = 0;
    for (unsigned k = 0; k < m; ++k) acc += Rational(binomial(m + 1, k)) * b[k];
    b[m] = -acc / Rational(m + 1);
  }
  return abs(b[top]);
}

/// Taylor coefficients of x / tanh(x) up to x^degree.
inline std::vector<Rational> x_over_tanh_series(int degree) {
  std::vector<Rational> c(static_cast<std::size_t>(degree) + 1, Rational(0));
  c[0] = 1;
  for (int j = 1; 2 * j <= degree; ++j) {
    Rational term = Rational(pow(Integer(2), static_cast<unsigned>(2 * j))) * bernoulli(j) /
                    Rational(factorial(static_cast<unsigned>(2 * j)));
    c[static_cast<std::size_t>(2 * j)] = (j % 2 == 1) ? term : Rational(-term);
  }
  return c;
}

/// Taylor coefficients of tanh(x) up to x^degree.
inline std::vector<Rational> tanh_series(int degree) {
  std::vector<Rational> c(static_cast<std::size_t>(degree) + 1, Rational(0));
  for (int j = 1; 2 * j - 1 <= degree; ++j) {
    const Integer p = pow(Integer(2), static_cast<unsigned>(2 * j));
    Rational term = Rational(p * (p - 1)) * bernoulli(j) / Rational(factorial(static_cast<unsigned>(2 * j)));
    c[static_cast<std::size_t>(2 * j - 1)] = (j % 2 == 1) ? term : Rational(-term);
  }
  return c;
}

/// sum_k coeffs[k] x^k, truncated at the ring's top degree. x must have no
/// degree-0 part.
inline CohomologyClass apply_series(const CohomologyClass& x, const std::vector<Rational>& coeffs) {
  CohomologyClass out = x.ring().zero();
  CohomologyClass power = x.ring().one();
  for (std::size_t k = 0; k < coeffs.size() && static_cast<int>(k) <= x.ring().dim(); ++k) {
    if (coeffs[k] != 0) out += coeffs[k] * power;
    power = power * x;
  }
  return out;
}

/// c(TX) = prod_rho (1 + x_rho).
inline CohomologyClass total_chern(const CohomologyRing& ring) {
  CohomologyClass out = ring.one();
  for (std::size_t r = 0; r < ring.fan().num_rays(); ++r) out = out * (ring.one() + ring.ray_class(r));
  return out;
}

/// L(X) = prod_rho x_rho / tanh(x_rho).
inline CohomologyClass l_class(const CohomologyRing& ring) {
  const auto series = x_over_tanh_series(ring.dim());
  CohomologyClass out = ring.one();
  for (std::size_t r = 0; r < ring.fan().num_rays(); ++r) out = out * apply_series(ring.ray_class(r), series);
  return out;
}

/// <alpha^dim, [X]>.
inline Integer degree(const CohomologyRing& ring, const DivisorClass& alpha) {
  return ring.divisor_class(alpha).pow(static_cast<unsigned>(ring.dim())).evaluate();
}

/// chi(Y_d) = < c(TX) * d alpha / (1 + d alpha), [X] >.
inline Integer euler_char_hypersurface(const CohomologyRing& ring, const DivisorClass& alpha, long d) {
  require(d >= 1, ErrorKind::Input, "d must be >= 1");
  const CohomologyClass h = ring.divisor_class(alpha.scaled(d));
  std::vector<Rational> gysin(static_cast<std::size_t>(ring.dim()) + 1, Rational(0));
  for (std::size_t k = 1; k < gysin.size(); ++k) gysin[k] = (k % 2 == 1) ? 1 : -1;
  return (total_chern(ring) * apply_series(h, gysin)).evaluate();
}

/// b_n(Y_d) from chi(Y_d): b_j(Y) = b_j(X) below the middle degree and
/// Poincare duality above it, so chi(Y) = (-1)^n b_n(Y) + 2 sum_{j<n} (-1)^j b_j(X).
inline Integer bn_hypersurface(const CohomologyRing& ring, const DivisorClass& alpha, long d) {
  require(ring.dim() >= 2, ErrorKind::Hypothesis, "hypersurface Betti number needs dim >= 2");
  const int n = ring.dim() - 1;
  const auto b = betti(ring.fan());
  Integer low = 0;
  for (int j = 0; j < n; ++j) low += (j % 2 == 0) ? b[static_cast<std::size_t>(j)] : Integer(-b[static_cast<std::size_t>(j)]);
  Integer value = euler_char_hypersurface(ring, alpha, d) - 2 * low;
  if (n % 2 == 1) value = -value;
  require(value >= 0, ErrorKind::Internal, "negative middle Betti number");
  return value;
}

/// sign(Y_d) = < tanh(d alpha) L(X), [X] >, for n = dim - 1 even.
inline Integer signature_hypersurface(const CohomologyRing& ring, const DivisorClass& alpha, long d) {
  require((ring.dim() - 1) % 2 == 0, ErrorKind::Hypothesis, "signature needs an even-dimensional hypersurface");
  require(d >= 1, ErrorKind::Input, "d must be >= 1");
  const CohomologyClass h = ring.divisor_class(alpha.scaled(d));
  return (apply_series(h, tanh_series(ring.dim())) * l_class(ring)).evaluate();
}

/// Gram matrix of (x, y) -> <x y d alpha, [X]> on H^n(X), n = dim - 1 even,
/// over the ring's degree-n/2 basis.
inline IntSymForm middle_form_gram(const CohomologyRing& ring, const DivisorClass& alpha, long d) {
  require((ring.dim() - 1) % 2 == 0, ErrorKind::Hypothesis, "middle form needs an even-dimensional hypersurface");
  const int k = (ring.dim() - 1) / 2;
  const CohomologyClass h = ring.divisor_class(alpha.scaled(d));
  const std::size_t r = ring.rank(k);
  IntMatrix g(r, r);
  std::vector<CohomologyClass> basis;
  for (std::size_t i = 0; i < r; ++i) basis.push_back(ring.basis_class(k, i));
  for (std::size_t i = 0; i < r; ++i) {
    const CohomologyClass left = basis[i] * h;
    for (std::size_t j = i; j < r; ++j) g(i, j) = g(j, i) = (left * basis[j]).evaluate();
  }
  std::vector<std::string> labels;
  for (const auto& e : ring.basis(k)) labels.push_back(ring.monomial_label(e));
  return IntSymForm(std::move(g), std::move(labels));
}

/// Polynomial in d (coefficient of d^k at index k) whose value is chi(Y_d).
inline std::vector<Integer> chi_polynomial(const CohomologyRing& ring, const DivisorClass& alpha) {
  const CohomologyClass c = total_chern(ring);
  const CohomologyClass a = ring.divisor_class(alpha);
  std::vector<Integer> out(static_cast<std::size_t>(ring.dim()) + 1, Integer(0));
  CohomologyClass power = a;
  for (std::size_t k = 1; k < out.size(); ++k) {
    const Integer v = (c * power).evaluate();
    out[k] = (k % 2 == 1) ? v : Integer(-v);
    power = power * a;
  }
  return out;
}

// Asymptotic constants for n even.

/// lim |sign(Y_d)| / b_n(Y_d) = 2^{n+2} (2^{n+2} - 1) B_{(n+2)/2} / (n+2)!.
inline Rational sign_ratio_limit(int n) {
  require(n >= 2 && n % 2 == 0, ErrorKind::Hypothesis, "limit constants need n even");
  const Integer p = pow(Integer(2), static_cast<unsigned>(n + 2));
  return Rational(p * (p - 1)) * bernoulli((n + 2) / 2) / Rational(factorial(static_cast<unsigned>(n + 2)));
}

/// lim 2 s_d / deg Y_d = 1 - sign_ratio_limit(n).
inline Rational handle_ratio_limit(int n) { return Rational(1) - sign_ratio_limit(n); }

/// Same numerator as sign_ratio_limit but over (n+1)!; does not match the
/// exact values and is kept only for side-by-side reporting.
inline Rational uncorrected_sign_ratio_limit(int n) {
  return sign_ratio_limit(n) * Rational(n + 2);
}

/// 1 - 2^{n+1} (2^{n+1} - 1) B_{(n+2)/2} / (n+1)!; reporting only, like above.
inline Rational uncorrected_handle_ratio_limit(int n) {
  require(n >= 2 && n % 2 == 0, ErrorKind::Hypothesis, "limit constants need n even");
  const Integer p = pow(Integer(2), static_cast<unsigned>(n + 1));
  return Rational(1) - Rational(p * (p - 1)) * bernoulli((n + 2) / 2) / Rational(factorial(static_cast<unsigned>(n + 1)));
}

}  // namespace toricsplit
