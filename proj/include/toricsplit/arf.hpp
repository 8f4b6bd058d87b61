#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "toricsplit/error.hpp"
#include "toricsplit/matrix.hpp"

namespace toricsplit {

using Z2 = std::uint8_t;
using Z2Vector = std::vector<Z2>;
using Z2Matrix = Matrix<Z2>;

inline Z2Matrix reduce_mod2(const IntMatrix& m) {
  Z2Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = static_cast<Z2>(m(i, j) % 2 != 0);
  return out;
}

inline Z2 dot2(const Z2Matrix& gram, const Z2Vector& u, const Z2Vector& v) {
  unsigned acc = 0;
  for (std::size_t i = 0; i < gram.rows(); ++i) {
    if (!u[i]) continue;
    for (std::size_t j = 0; j < gram.cols(); ++j) acc ^= (v[j] & gram(i, j));
  }
  return static_cast<Z2>(acc & 1U);
}

inline Z2Vector add2(Z2Vector a, const Z2Vector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
  return a;
}

/// Mod-2 pairing together with the values of a quadratic refinement psi on
/// the basis; psi(a + b) = psi(a) + psi(b) + (a.b)_2 fixes it everywhere.
struct QuadraticSpaceZ2 {
  Z2Matrix gram2;
  Z2Vector psi_basis;

  QuadraticSpaceZ2() = default;
  QuadraticSpaceZ2(Z2Matrix gram, Z2Vector psi) : gram2(std::move(gram)), psi_basis(std::move(psi)) {
    require(gram2.is_symmetric(), ErrorKind::Input, "mod-2 Gram matrix is not symmetric");
    require(psi_basis.size() == gram2.rows(), ErrorKind::Input, "psi vector length does not match the Gram matrix");
    for (auto& p : psi_basis) p &= 1U;
  }

  std::size_t dimension() const noexcept { return gram2.rows(); }
};

inline Z2 psi_eval(const QuadraticSpaceZ2& q, const Z2Vector& v) {
  require(v.size() == q.dimension(), ErrorKind::Input, "vector length does not match the quadratic space");
  unsigned acc = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i]) continue;
    acc ^= q.psi_basis[i];
    for (std::size_t j = i + 1; j < v.size(); ++j) acc ^= (v[j] & q.gram2(i, j));
  }
  return static_cast<Z2>(acc & 1U);
}

struct SymplecticPair {
  Z2Vector a;
  Z2Vector b;
};

/// Symplectic Gram-Schmidt over Z_2: pairs with (a_i.b_j) = delta_ij and
/// (a_i.a_j) = (b_i.b_j) = 0.
inline std::vector<SymplecticPair> symplectic_basis(const Z2Matrix& gram2) {
  require(gram2.is_symmetric(), ErrorKind::Input, "mod-2 Gram matrix is not symmetric");
  const std::size_t n = gram2.rows();
  for (std::size_t i = 0; i < n; ++i)
    require(gram2(i, i) == 0, ErrorKind::Hypothesis, "mod-2 pairing has odd diagonal (not alternating)");

  std::vector<Z2Vector> pool;
  for (std::size_t i = 0; i < n; ++i) {
    Z2Vector e(n, 0);
    e[i] = 1;
    pool.push_back(e);
  }
  std::vector<SymplecticPair> out;
  while (!pool.empty()) {
    const Z2Vector a = pool.front();
    pool.erase(pool.begin());
    std::size_t partner = pool.size();
    for (std::size_t k = 0; k < pool.size(); ++k)
      if (dot2(gram2, a, pool[k])) {
        partner = k;
        break;
      }
    require(partner < pool.size(), ErrorKind::Hypothesis, "mod-2 pairing is degenerate");
    const Z2Vector b = pool[partner];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(partner));
    for (auto& v : pool) {
      const Z2 vb = dot2(gram2, v, b);
      const Z2 va = dot2(gram2, v, a);
      if (vb) v = add2(v, a);
      if (va) v = add2(v, b);
    }
    out.push_back({a, b});
  }
  return out;
}

/// Arf invariant sum psi(a_i) psi(b_i) over a symplectic basis.
inline Z2 arf(const QuadraticSpaceZ2& q) {
  unsigned acc = 0;
  for (const auto& p : symplectic_basis(q.gram2)) acc ^= (psi_eval(q, p.a) & psi_eval(q, p.b));
  return static_cast<Z2>(acc & 1U);
}

struct NormalizedQuadraticBasis {
  std::vector<SymplecticPair> pairs;  // pair 0 is the distinguished one
  std::vector<std::pair<Z2, Z2>> psi_values;
  Z2 arf = 0;
};

/// Symplectic basis with psi(a_i) = psi(b_i) = 0 except on pair 0, which
/// carries (0,0) when the Arf invariant vanishes and (1,1) otherwise.
inline NormalizedQuadraticBasis normalize_quadratic_basis(const QuadraticSpaceZ2& q) {
  auto pairs = symplectic_basis(q.gram2);
  const auto& g = q.gram2;
  auto psi = [&](const Z2Vector& v) { return psi_eval(q, v); };

  // Single-pair moves: (0,1) -> b += a, (1,0) -> a += b.
  auto settle = [&](SymplecticPair& p) {
    const Z2 pa = psi(p.a), pb = psi(p.b);
    if (!pa && pb) p.b = add2(p.b, p.a);
    if (pa && !pb) p.a = add2(p.a, p.b);
  };
  for (auto& p : pairs) settle(p);

  // Two (1,1) pairs i, j: a_i' = a_i + a_j, b_i' = b_i + a_j, b_j' = b_j + a_i + b_i
  // give psi values (0,0) and (1,0); the second is then settled.
  std::size_t pending = pairs.size();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (!(psi(pairs[k].a) && psi(pairs[k].b))) continue;
    if (pending == pairs.size()) {
      pending = k;
      continue;
    }
    auto& pi = pairs[pending];
    auto& pj = pairs[k];
    const Z2Vector ai = pi.a, bi = pi.b, aj = pj.a;
    pi.a = add2(ai, aj);
    pi.b = add2(bi, aj);
    pj.b = add2(add2(pj.b, ai), bi);
    settle(pi);
    settle(pj);
    pending = pairs.size();
  }
  if (pending != pairs.size() && pending != 0) std::swap(pairs[0], pairs[pending]);

  NormalizedQuadraticBasis out;
  for (const auto& p : pairs) {
    require(dot2(g, p.a, p.b) == 1, ErrorKind::Internal, "normalised basis lost the pairing");
    out.psi_values.push_back({psi(p.a), psi(p.b)});
  }
  out.arf = pending != pairs.size() ? 1 : 0;
  out.pairs = std::move(pairs);
  return out;
}

}  // namespace toricsplit
