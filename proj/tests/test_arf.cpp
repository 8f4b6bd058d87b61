#include <gtest/gtest.h>

#include <random>

#include "support/errors.hpp"
#include "support/oracles.hpp"
#include "support/z2.hpp"
#include "toricsplit/arf.hpp"

using namespace toricsplit;

namespace {

using namespace z2;

std::vector<std::vector<std::uint8_t>> as_table(const Z2Matrix& g) {
  std::vector<std::vector<std::uint8_t>> t(g.rows(), std::vector<std::uint8_t>(g.cols()));
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) t[i][j] = g(i, j);
  return t;
}

}  // namespace

TEST(Psi, QuadraticRuleExhaustive) {
  std::mt19937_64 rng(8);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      const QuadraticSpaceZ2 q(random_alternating(n, rng), random_vector(n, rng));
      for (std::uint64_t a = 0; a < (1U << n); ++a)
        for (std::uint64_t b = 0; b < (1U << n); ++b) {
          const Z2Vector u = bits(a, n), v = bits(b, n);
          EXPECT_EQ(psi_eval(q, add2(u, v)), psi_eval(q, u) ^ psi_eval(q, v) ^ dot2(q.gram2, u, v));
        }
    }
  }
}

TEST(Psi, BasisValues) {
  const QuadraticSpaceZ2 q(standard_symplectic(2), {1, 0, 1, 1});
  EXPECT_EQ(psi_eval(q, bits(0, 4)), 0);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(psi_eval(q, bits(1U << i, 4)), q.psi_basis[i]);
}

TEST(Arf, AgreesWithMajorityCount) {
  std::mt19937_64 rng(21);
  for (std::size_t pairs = 1; pairs <= 3; ++pairs) {
    const std::size_t n = 2 * pairs;
    for (int trial = 0; trial < 6; ++trial) {
      // A random change of basis turns the standard form into a random
      // nondegenerate alternating one.
      const Z2Matrix b = random_invertible(n, rng);
      const Z2Matrix g = rebase(QuadraticSpaceZ2(standard_symplectic(pairs), Z2Vector(n, 0)), b).gram2;
      for (std::uint64_t m = 0; m < (1U << n); ++m) {
        const QuadraticSpaceZ2 q(g, bits(m, n));
        EXPECT_EQ(arf(q), oracle::arf_by_majority(as_table(g), q.psi_basis));
      }
    }
  }
}

TEST(Arf, InvariantUnderSymplecticBaseChange) {
  std::mt19937_64 rng(4242);
  for (std::size_t pairs : {2u, 3u}) {
    const std::size_t n = 2 * pairs;
    const Z2Matrix g = standard_symplectic(pairs);
    for (int trial = 0; trial < 100; ++trial) {
      const QuadraticSpaceZ2 q(g, random_vector(n, rng));
      const QuadraticSpaceZ2 moved = rebase(q, random_symplectic_basis(g, rng));
      EXPECT_EQ(moved.gram2, g);
      EXPECT_EQ(arf(moved), arf(q));
    }
  }
}

TEST(Arf, SymplecticBasisPairs) {
  const Z2Matrix g = reduce_mod2(IntMatrix{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 2, 1}, {0, 0, 1, 2}});
  const auto basis = symplectic_basis(g);
  ASSERT_EQ(basis.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_EQ(dot2(g, basis[i].a, basis[j].b), i == j ? 1 : 0);
      EXPECT_EQ(dot2(g, basis[i].a, basis[j].a), 0);
      EXPECT_EQ(dot2(g, basis[i].b, basis[j].b), 0);
    }
}

TEST(Arf, NormalizedBasis) {
  std::mt19937_64 rng(77);
  for (std::size_t pairs = 1; pairs <= 3; ++pairs) {
    const std::size_t n = 2 * pairs;
    const Z2Matrix g = standard_symplectic(pairs);
    for (std::uint64_t m = 0; m < (1U << n); ++m) {
      const QuadraticSpaceZ2 q(g, bits(m, n));
      const auto nb = normalize_quadratic_basis(q);
      EXPECT_EQ(nb.arf, arf(q));
      ASSERT_EQ(nb.pairs.size(), pairs);
      for (std::size_t i = 0; i < pairs; ++i) {
        const auto expected = (i == 0 && nb.arf) ? std::pair<Z2, Z2>{1, 1} : std::pair<Z2, Z2>{0, 0};
        EXPECT_EQ(nb.psi_values[i], expected);
        EXPECT_EQ(psi_eval(q, nb.pairs[i].a), nb.psi_values[i].first);
        for (std::size_t j = 0; j < pairs; ++j) {
          EXPECT_EQ(dot2(g, nb.pairs[i].a, nb.pairs[j].b), i == j ? 1 : 0);
          if (i != j) {
            EXPECT_EQ(dot2(g, nb.pairs[i].a, nb.pairs[j].a), 0);
          }
        }
      }
    }
  }
}

TEST(Arf, Preconditions) {
  EXPECT_EQ(error_kind([] { symplectic_basis(reduce_mod2(IntMatrix{{1, 0}, {0, 1}})); }), ErrorKind::Hypothesis);
  EXPECT_EQ(error_kind([] { symplectic_basis(Z2Matrix(2, 2)); }), ErrorKind::Hypothesis);
  EXPECT_EQ(error_kind([] { QuadraticSpaceZ2(standard_symplectic(1), {1}); }), ErrorKind::Input);
}
