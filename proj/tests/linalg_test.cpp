#include <gtest/gtest.h>

#include <random>

#include "lgt/linalg.hpp"
#include "lgt/rational.hpp"
#include "lgt/triangle_pair.hpp"
#include "test_support.hpp"

using namespace lgt;
namespace tp = lgt::triangle_pair;

namespace {

Polynomial poly(std::initializer_list<long> lowest_first) {
  std::vector<Rational> c;
  for (long x : lowest_first) c.emplace_back(x);
  return Polynomial(c);
}

ExactMatrix random_invertible(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    auto p = testkit::random_rational_matrix(rng, n, n, 4);
    if (testkit::cofactor_determinant(p) != 0) return p;
  }
}

}  // namespace

TEST(RationalText, ParsesAndCanonicalizes) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(to_string(parse_rational("-10/5")), "-2");
  EXPECT_THROW(parse_rational("10/-5"), ParseError);
  EXPECT_EQ(to_string(parse_rational("-3/9")), "-1/3");
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
}

TEST(Determinant, PrintedTransplantation) {
  EXPECT_EQ(testkit::cofactor_determinant(tp::transplantation()), Rational(-9));
  EXPECT_EQ(determinant(tp::transplantation()), Rational(-9));
}

TEST(Determinant, Identity) { EXPECT_EQ(determinant(ExactMatrix::identity(4)), Rational(1)); }

TEST(Determinant, RepeatedRow) {
  ExactMatrix m{{1, 2, 3}, {4, 5, 6}, {1, 2, 3}};
  EXPECT_EQ(determinant(m), Rational(0));
}

TEST(Determinant, NonSquareThrows) { EXPECT_THROW(determinant(ExactMatrix(2, 3)), DimensionMismatch); }

TEST(Determinant, MatchesCofactorOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + static_cast<std::size_t>(trial % 5);
    auto m = testkit::random_rational_matrix(rng, n, n);
    ASSERT_EQ(determinant(m), testkit::cofactor_determinant(m));
  }
}

TEST(Determinant, IsMultiplicative) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + static_cast<std::size_t>(trial % 6);
    auto m = testkit::random_rational_matrix(rng, n, n);
    auto p = testkit::random_rational_matrix(rng, n, n);
    ASSERT_EQ(determinant(m * p), determinant(m) * determinant(p));
  }
}

TEST(Nullspace, Examples) {
  EXPECT_TRUE(nullspace_basis(ExactMatrix::identity(3)).empty());
  EXPECT_EQ(nullspace_basis(ExactMatrix(2, 2)).size(), 2u);
  auto basis = nullspace_basis(ExactMatrix{{1, 1}, {2, 2}});
  ASSERT_EQ(basis.size(), 1u);
  const auto& x = basis[0];
  ASSERT_NE(x(0, 0), 0);
  EXPECT_EQ(x(1, 0), -x(0, 0));
}

TEST(Nullspace, RandomRankNullity) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int trial = 0; trial < 100; ++trial) {
    auto rows = static_cast<std::size_t>(dim(rng)), cols = static_cast<std::size_t>(dim(rng));
    auto m = testkit::random_rational_matrix(rng, rows, cols, 2);
    // Force rank deficiency in half the trials.
    if (trial % 2 && rows > 1)
      for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = m(0, j) * Rational(3, 2);
    auto basis = nullspace_basis(m);
    EXPECT_EQ(rank(m) + basis.size(), cols);
    for (const auto& x : basis) {
      ASSERT_EQ(x.rows(), cols);
      ASSERT_EQ(x.cols(), 1u);
      EXPECT_TRUE((m * x).is_zero());
    }
    if (!basis.empty()) {
      ExactMatrix stacked(cols, basis.size());
      for (std::size_t b = 0; b < basis.size(); ++b)
        for (std::size_t i = 0; i < cols; ++i) stacked(i, b) = basis[b](i, 0);
      EXPECT_EQ(rank(stacked), basis.size());
    }
  }
}

TEST(Inverse, RoundTrips) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 40; ++trial) {
    auto p = random_invertible(rng, 1 + static_cast<std::size_t>(trial % 5));
    EXPECT_EQ(p * inverse(p), ExactMatrix::identity(p.rows()));
  }
  EXPECT_THROW(inverse(ExactMatrix{{1, 2}, {2, 4}}), NotInvertible);
  EXPECT_EQ(inverse(tp::transplantation()), tp::transplantation().transpose() * Rational(1, 3));
}

TEST(CharPoly, Examples) {
  EXPECT_EQ(char_poly(to_exact(tp::adjacency()[0])), poly({1, 0, -2, 0, 1}));
  EXPECT_EQ(char_poly(to_exact(tp::adjacency()[0])).to_string("x"), "x^4 - 2*x^2 + 1");
  EXPECT_EQ(char_poly(ExactMatrix::identity(2)), poly({1, -2, 1}));
  EXPECT_EQ(char_poly(ExactMatrix(3, 3)), poly({0, 0, 0, 1}));
  EXPECT_THROW(char_poly(ExactMatrix(2, 3)), DimensionMismatch);
}

TEST(CharPoly, MatchesFaddeevLeVerrier) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t n = 1 + static_cast<std::size_t>(trial % 7);
    auto m = testkit::random_rational_matrix(rng, n, n);
    // Sparse rows stress the Hessenberg pivot search.
    if (trial % 3 == 0)
      for (std::size_t j = 0; j < n; ++j) m(n / 2, j) = 0;
    ASSERT_EQ(char_poly(m), testkit::faddeev_leverrier(m));
  }
}

TEST(CharPoly, SimilarityInvariant) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + static_cast<std::size_t>(trial % 5);
    auto m = testkit::random_rational_matrix(rng, n, n);
    auto p = random_invertible(rng, n);
    ASSERT_EQ(char_poly(inverse(p) * m * p), char_poly(m));
  }
}

TEST(CharPoly, ConstantTermIsSignedDeterminant) {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + static_cast<std::size_t>(trial % 5);
    auto m = testkit::random_rational_matrix(rng, n, n);
    Rational sign = n % 2 ? -1 : 1;
    EXPECT_EQ(char_poly(m).coefficient(0), sign * determinant(m));
  }
}

TEST(PolynomialText, Formatting) {
  EXPECT_EQ(poly({}).to_string("x"), "0");
  EXPECT_EQ(poly({-1, 0, 3}).to_string("x"), "3*x^2 - 1");
  EXPECT_EQ(poly({0, 1}).to_string("x"), "x");
  EXPECT_EQ(Polynomial({Rational(1, 2), Rational(-1)}).to_string("x"), "-x + 1/2");
}

TEST(WordTrace, Examples) {
  const auto a = tp::adjacency();
  EXPECT_EQ(word_trace(a, Word{0, 1}), -1);
  EXPECT_EQ(word_trace(a, Word{0, 0}), 4);
  EXPECT_EQ(word_trace(a, Word{}), 4);
  EXPECT_EQ(word_trace(a, Word{2}), 0);
  EXPECT_THROW(word_trace(a, Word{3}), InvalidColor);
}

TEST(WordTrace, RotationInvariant) {
  std::mt19937_64 rng(28);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = testkit::random_graph_upto(rng, 7, 4);
    auto mats = adjacency_matrices(g);
    std::uniform_int_distribution<int> len(1, 8), col(0, g.k() - 1);
    Word w(static_cast<std::size_t>(len(rng)));
    for (auto& c : w) c = col(rng);
    const auto t = word_trace(mats, w);
    Word r = w;
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::rotate(r.begin(), r.begin() + 1, r.end());
      ASSERT_EQ(word_trace(mats, r), t);
    }
    ExactMatrix prod = ExactMatrix::identity(static_cast<std::size_t>(g.n()));
    for (int c : w) prod = prod * to_exact(mats[static_cast<std::size_t>(c)]);
    EXPECT_EQ(Rational(t), prod.trace());
  }
}

TEST(Matrix, CheckedArithmeticOverflowThrows) {
  IntMatrix m{{std::int64_t{1} << 62}};
  EXPECT_THROW(m + m, ArithmeticOverflow);
  EXPECT_THROW(m * m, ArithmeticOverflow);
  EXPECT_THROW(IntMatrix(2, 2) * IntMatrix(3, 3), DimensionMismatch);
}
