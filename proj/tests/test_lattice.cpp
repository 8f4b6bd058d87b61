#include <gtest/gtest.h>

#include <random>

#include "support/errors.hpp"
#include "support/oracles.hpp"
#include "toricsplit/lattice.hpp"

using namespace toricsplit;

namespace {

const std::string kData = TORICSPLIT_DATA_DIR;

IntMatrix random_symmetric(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> entry(-3, 3);
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) g(i, j) = g(j, i) = entry(rng);
  return g;
}

/// Checks the documented postconditions of a split of `h` relative to `f`.
void expect_valid_split(const IntSymForm& h, const Sublattice& f, const SplitResult& r) {
  for (const auto& p : r.planes) {
    EXPECT_EQ(h.norm(p.x), 0);
    EXPECT_EQ(h.pair(p.x, p.y), 1);
    EXPECT_EQ(h.norm(p.y), p.c);
    EXPECT_TRUE(p.c == 0 || p.c == 1);
    for (std::size_t i = 0; i < f.rank(); ++i) {
      EXPECT_EQ(h.pair(p.x, f.generators.row(i)), 0);
      EXPECT_EQ(h.pair(p.y, f.generators.row(i)), 0);
    }
  }
  const std::size_t n = r.complement_form.dimension();
  EXPECT_EQ(2 * r.planes.size() + r.residual.dimension(), n);
  EXPECT_EQ(abs(determinant(r.transform)), 1);
  const IntMatrix blocks = congruence(r.transform, r.complement_form.gram());
  const std::size_t k = 2 * r.planes.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((i < k) != (j < k) || (i < k && i / 2 != j / 2)) {
        EXPECT_EQ(blocks(i, j), 0);
      }
  EXPECT_EQ(congruence(r.residual_basis, h.gram()), r.residual.gram());
}

}  // namespace

TEST(Signature, StandardForms) {
  const Signature e8 = signature(e8_form());
  EXPECT_EQ(e8.positive, 8);
  EXPECT_EQ(e8.negative, 0);
  EXPECT_EQ(e8.zero, 0);
  const Signature u = signature(hyperbolic_plane());
  EXPECT_EQ(u.positive, 1);
  EXPECT_EQ(u.negative, 1);
  const Signature z = signature(IntSymForm(IntMatrix(3, 3)));
  EXPECT_EQ(z.zero, 3);
  EXPECT_EQ(signature(diagonal_form({1, -1, 1, 0})).value(), 1);
  EXPECT_EQ(signature(IntSymForm(IntMatrix(0, 0))).value(), 0);
}

TEST(Signature, E8Invariants) {
  EXPECT_TRUE(is_even(e8_form()));
  EXPECT_TRUE(is_unimodular(e8_form()));
  EXPECT_EQ(determinant(e8_form()), 1);
  EXPECT_EQ(determinant(direct_sum(hyperbolic_plane(), e8_form())), -1);
  EXPECT_FALSE(is_even(diagonal_form({1, -1})));
}

TEST(Signature, AgreesWithCharacteristicPolynomial) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 8);
    const IntMatrix g = random_symmetric(n, rng);
    const Signature s = signature(IntSymForm(g));
    const oracle::Inertia in = oracle::inertia_by_descartes(g);
    EXPECT_EQ(s.positive, in.positive);
    EXPECT_EQ(s.negative, in.negative);
    EXPECT_EQ(s.zero, in.zero);
  }
}

TEST(Signature, CongruenceInvariant) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 8);
    const IntSymForm g(random_symmetric(n, rng));
    const IntMatrix s = oracle::random_unimodular(n, rng);
    ASSERT_EQ(abs(determinant(s)), 1);
    const Signature a = signature(g), b = signature(IntSymForm(congruence(s, g.gram())));
    EXPECT_EQ(a.positive, b.positive);
    EXPECT_EQ(a.negative, b.negative);
    EXPECT_EQ(a.zero, b.zero);
  }
}

TEST(Signature, AdditiveUnderDirectSum) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const IntSymForm a(random_symmetric(3, rng)), b(random_symmetric(4, rng));
    const Signature s = signature(direct_sum(a, b)), sa = signature(a), sb = signature(b);
    EXPECT_EQ(s.positive, sa.positive + sb.positive);
    EXPECT_EQ(s.negative, sa.negative + sb.negative);
  }
}

TEST(Complement, HyperplaneInU) {
  const IntSymForm uu = direct_sum(hyperbolic_plane(), hyperbolic_plane());
  const Sublattice f = make_sublattice(IntMatrix{{1, 1, 0, 0}});
  const Sublattice e = orthogonal_complement(uu, f);
  EXPECT_EQ(e.rank(), 3u);
  EXPECT_TRUE(is_saturated(e.generators));
  for (std::size_t i = 0; i < e.rank(); ++i) EXPECT_EQ(uu.pair(e.generators.row(i), f.generators.row(0)), 0);
}

TEST(Isotropic, FindsPrimitiveNullVector) {
  const IsotropicResult r = find_isotropic(hyperbolic_plane());
  ASSERT_EQ(r.status, SearchStatus::Found);
  EXPECT_EQ(hyperbolic_plane().norm(r.vector), 0);
  EXPECT_EQ(content(r.vector), 1);
  EXPECT_EQ(find_isotropic(diagonal_form({1, 1, 1, -1, -1})).status, SearchStatus::Found);
}

TEST(Isotropic, DefiniteAndAnisotropic) {
  EXPECT_EQ(find_isotropic(e8_form()).status, SearchStatus::Definite);
  // x^2 - 2y^2 has no rational zero.
  EXPECT_EQ(find_isotropic(diagonal_form({1, -2})).status, SearchStatus::NotFound);
}

TEST(Isotropic, ExhaustedOnlyInRankFive) {
  IsotropicSearchOptions tight;
  tight.max_radius = 1;
  EXPECT_EQ(find_isotropic(diagonal_form({1, 1, 1, 1, -1000}), tight).status, SearchStatus::SearchExhausted);
  EXPECT_EQ(find_isotropic(diagonal_form({1, 1, 1, -1000}), tight).status, SearchStatus::NotFound);
}

TEST(HyperbolicPair, ConjugatedPlanes) {
  std::mt19937_64 rng(99);
  const std::vector<IntSymForm> bases{
      hyperbolic_plane(), direct_sum(hyperbolic_plane(), diagonal_form({1})),
      direct_sum(hyperbolic_plane(), hyperbolic_plane()), direct_sum(hyperbolic_plane(), e8_form())};
  for (int trial = 0; trial < 100; ++trial) {
    const IntSymForm& base = bases[static_cast<std::size_t>(trial) % bases.size()];
    const std::size_t n = base.dimension();
    const IntMatrix s = oracle::random_unimodular(n, rng);
    const IntSymForm g(congruence(s, base.gram()));
    // Coordinates of e_1 in the new basis (rows of s).
    IntVector e1(n, Integer(0));
    e1[0] = 1;
    const IntVector x = row_times(e1, unimodular_inverse(s));
    const HyperbolicPair p = hyperbolic_pair(g, x);
    EXPECT_EQ(g.norm(p.x), 0);
    EXPECT_EQ(g.pair(p.x, p.y), 1);
    EXPECT_EQ(g.norm(p.y), p.c);
    EXPECT_TRUE(p.c == 0 || p.c == 1);
    if (is_even(base)) {
      EXPECT_EQ(p.c, 0);
    }
  }
}

TEST(HyperbolicPair, Preconditions) {
  EXPECT_EQ(error_kind([] { hyperbolic_pair(hyperbolic_plane(), {1, 1}); }), ErrorKind::Hypothesis);
  EXPECT_EQ(error_kind([] { hyperbolic_pair(hyperbolic_plane(), {2, 0}); }), ErrorKind::Hypothesis);
  EXPECT_EQ(error_kind([] { hyperbolic_pair(diagonal_form({2, -2}), {1, 1}); }), ErrorKind::Hypothesis);
  EXPECT_EQ(error_kind([] { hyperbolic_pair(hyperbolic_plane(), {1}); }), ErrorKind::Input);
}

TEST(Split, UPlusE8) {
  const IntSymForm h = parse_gram(read_text_file(kData + "/lattices/u_plus_e8.txt"));
  const SplitResult r = split_decomposition(h);
  ASSERT_EQ(r.planes.size(), 1u);
  EXPECT_EQ(r.planes[0].c, 0);
  EXPECT_EQ(r.residual.dimension(), 8u);
  const Signature s = signature(r.residual);
  EXPECT_EQ(s.positive, 8);
  EXPECT_TRUE(is_even(r.residual));
  EXPECT_TRUE(is_unimodular(r.residual));
  EXPECT_EQ(r.terminal, Terminal::Definite);
  EXPECT_TRUE(r.rank_hypothesis);
  expect_valid_split(h, {}, r);
}

TEST(Split, OddIndefinite) {
  const IntSymForm h = diagonal_form({1, -1, 1, -1});
  const SplitResult r = split_decomposition(h);
  EXPECT_EQ(r.planes.size(), 2u);
  EXPECT_EQ(r.residual.dimension(), 0u);
  EXPECT_EQ(r.terminal, Terminal::Empty);
  expect_valid_split(h, {}, r);
}

TEST(Split, WithSublattice) {
  const IntSymForm h = direct_sum(direct_sum(hyperbolic_plane(), hyperbolic_plane()), e8_form());
  const Sublattice f = make_sublattice(IntMatrix{{1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}});
  const SplitResult r = split_decomposition(h, f);
  EXPECT_EQ(r.complement_form.dimension(), 11u);
  EXPECT_EQ(abs(determinant(r.complement_form)), 2);
  EXPECT_EQ(r.stop_rank, 6u);
  EXPECT_TRUE(r.rank_hypothesis);
  expect_valid_split(h, f, r);
  EXPECT_GE(r.planes.size(), 1u);
  EXPECT_TRUE(signature(r.residual).definite() || r.residual.dimension() <= 2);
}

TEST(Split, RandomConjugates) {
  std::mt19937_64 rng(17);
  const IntSymForm base = direct_sum(direct_sum(hyperbolic_plane(), diagonal_form({1, -1})), diagonal_form({1, 1}));
  for (int trial = 0; trial < 20; ++trial) {
    const IntMatrix s = oracle::random_unimodular(base.dimension(), rng);
    const IntSymForm h(congruence(s, base.gram()));
    const SplitResult r = split_decomposition(h);
    expect_valid_split(h, {}, r);
    EXPECT_EQ(r.planes.size(), 2u);
    EXPECT_EQ(signature(r.residual).positive, 2);
  }
}

TEST(Split, SublatticePreconditions) {
  const IntSymForm uu = direct_sum(hyperbolic_plane(), hyperbolic_plane());
  EXPECT_EQ(error_kind([&] { split_decomposition(uu, make_sublattice(IntMatrix{{1, 0, 0, 0}})); }),
            ErrorKind::Hypothesis);
  EXPECT_EQ(error_kind([&] { split_decomposition(uu, make_sublattice(IntMatrix{{2, 2, 0, 0}})); }),
            ErrorKind::Hypothesis);
  EXPECT_EQ(error_kind([&] {
              split_decomposition(uu, make_sublattice(IntMatrix{{1, 1, 0, 0}, {2, 2, 0, 0}}));
            }),
            ErrorKind::Hypothesis);
  EXPECT_EQ(error_kind([] { split_decomposition(diagonal_form({2, 1})); }), ErrorKind::Hypothesis);
}

TEST(GramText, ParsesAndRejects) {
  EXPECT_EQ(parse_gram("2\n0 1\n1 0\n").gram(), hyperbolic_plane().gram());
  EXPECT_EQ(parse_gram(format_matrix_text(e8_form().gram())).gram(), e8_form().gram());
  for (const std::string bad : {"", "2\n0 1\n", "2\n0 1\n1 0\n5\n", "2\n0 1\n2 0\n", "2\n0 x\n1 0\n", "2\n0 1 2\n1 0 3\n"})
    EXPECT_EQ(error_kind([&] { parse_gram(bad); }), ErrorKind::Input) << bad;
}
