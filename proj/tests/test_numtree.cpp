#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "dichogen/numtree.hpp"
#include "golden_data.hpp"
#include "oracles.hpp"

using namespace dichogen;

namespace {

ExtNat N(std::uint64_t n) { return ExtNat::node(BigInt(n)); }

std::string join(const std::vector<ExtNat>& row) {
  std::string s;
  for (std::size_t i = 0; i < row.size(); ++i) s += (i ? " " : "") + row[i].to_string();
  return s;
}

BigInt pow2(unsigned k) { return BigInt(1) << k; }

}  // namespace

TEST(OddAndVal, Examples) {
  auto r = odd_and_val(12);
  EXPECT_EQ(r.odd, 3);
  EXPECT_EQ(r.valuation, Valuation::finite(2));
  r = odd_and_val(7);
  EXPECT_EQ(r.odd, 7);
  EXPECT_EQ(r.valuation.exponent(), 0u);
  r = odd_and_val(0);
  EXPECT_EQ(r.odd, 1);
  EXPECT_TRUE(r.valuation.is_infinite());
  EXPECT_THROW(r.valuation.exponent(), std::logic_error);
}

TEST(OddAndVal, ReconstructsInput) {
  for (std::uint64_t n = 1; n < 5000; ++n) {
    const auto r = odd_and_val(n);
    EXPECT_EQ(r.odd % 2, 1);
    EXPECT_EQ(r.odd << r.valuation.exponent(), n);
  }
}

TEST(Level, Examples) {
  EXPECT_EQ(level(1), 0u);
  EXPECT_EQ(level(13), 3u);
  EXPECT_EQ(level(1024), 10u);
  EXPECT_EQ(level(pow2(120) + 5), 120u);
  EXPECT_THROW(level(0), std::domain_error);
}

TEST(ExtNat, NodeRejectsNonPositive) {
  EXPECT_THROW(ExtNat::node(0), std::domain_error);
  EXPECT_NE(ExtNat::zero(), ExtNat::half());
  EXPECT_NE(ExtNat::zero(), N(1));
}

TEST(Dyadic, CanonicalForm) {
  const Dyadic d(4, 3);
  EXPECT_EQ(d.num(), 1);
  EXPECT_EQ(d.exp(), 1u);
  EXPECT_EQ(Dyadic(0, 7), Dyadic(0, 0));
  EXPECT_EQ(Dyadic(8, 3), Dyadic(1, 0));
  EXPECT_THROW(Dyadic(9, 3), std::domain_error);
}

TEST(Abscissa, Examples) {
  EXPECT_EQ(abscissa(N(1)), Dyadic(1, 1));
  EXPECT_EQ(abscissa(N(13)), Dyadic(11, 4));
  EXPECT_EQ(abscissa(ExtNat::half()), Dyadic(1, 0));
  EXPECT_EQ(abscissa(ExtNat::zero()), Dyadic(0, 0));
}

TEST(AbscissaInv, Examples) {
  EXPECT_EQ(abscissa_inv(Dyadic(11, 4)), N(13));
  EXPECT_EQ(abscissa_inv(Dyadic(0, 0)), ExtNat::zero());
  EXPECT_EQ(abscissa_inv(Dyadic(1, 0)), ExtNat::half());
}

TEST(AbscissaInv, InvertsAbscissaUpTo2Pow16) {
  EXPECT_EQ(abscissa_inv(abscissa(ExtNat::zero())), ExtNat::zero());
  EXPECT_EQ(abscissa_inv(abscissa(ExtNat::half())), ExtNat::half());
  for (std::uint64_t n = 1; n <= (1u << 16); ++n) {
    ASSERT_EQ(abscissa_inv(abscissa(N(n))), N(n)) << n;
  }
}

TEST(EschemeEntry, Examples) {
  std::vector<ExtNat> row3;
  for (int i = 1; i <= 15; ++i) row3.push_back(escheme_entry(3, i));
  EXPECT_EQ(join(row3), "8 4 9 2 10 5 11 1 12 6 13 3 14 7 15");
  EXPECT_EQ(escheme_entry(5, 8), N(4));
  EXPECT_EQ(escheme_entry(2, 0), ExtNat::zero());
  EXPECT_EQ(escheme_entry(2, 8), ExtNat::half());
  EXPECT_THROW(escheme_entry(2, 9), std::out_of_range);
  EXPECT_THROW(escheme_entry(2, -1), std::out_of_range);
}

TEST(EschemeEntry, ColumnStability) {
  for (std::uint64_t k = 1; k <= 16; ++k) {
    const std::uint64_t half = std::uint64_t{1} << k;
    for (std::uint64_t i = 1; i <= half; ++i) {
      ASSERT_EQ(escheme_entry(k, 2 * i), escheme_entry(k - 1, i)) << k << " " << i;
      ASSERT_EQ(escheme_entry(k, 2 * i - 1), N(half + i - 1)) << k << " " << i;
    }
  }
}

TEST(EschemeEntry, NodePositionsAcrossRows) {
  for (std::uint64_t k = 0; k <= 12; ++k) {
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << k); ++j) {
      const std::uint64_t n = (std::uint64_t{1} << k) + j;
      for (std::uint64_t h = k; h <= k + 4; ++h) {
        ASSERT_EQ(escheme_entry(h, BigInt(2 * j + 1) << (h - k)), N(n));
        ASSERT_EQ(position_in_row(n, h), BigInt(2 * j + 1) << (h - k));
      }
    }
  }
}

TEST(EschemeEntry, OddPositionsDominateNeighbours) {
  for (std::uint64_t k = 1; k <= 12; ++k) {
    const std::uint64_t end = std::uint64_t{1} << (k + 1);
    for (std::uint64_t i = 3; i < end; i += 2) {
      const BigInt here = escheme_entry(k, i).value();
      ASSERT_GE(here, 2 * escheme_entry(k, i - 1).value() + 1);
      if (i + 1 < end) ASSERT_GE(here, 2 * escheme_entry(k, i + 1).value());
    }
  }
}

TEST(Supports, Examples) {
  EXPECT_EQ(left_support(11), N(5));
  EXPECT_EQ(left_support(1024), ExtNat::zero());
  EXPECT_EQ(left_support(12), N(1));
  EXPECT_EQ(right_support(11), N(1));
  EXPECT_EQ(right_support(7), ExtNat::half());
  EXPECT_EQ(right_support(12), N(6));
  EXPECT_THROW(left_support(0), std::domain_error);
}

TEST(Supports, AreAbscissaNeighbours) {
  for (std::uint64_t n = 1; n <= (1u << 16); ++n) {
    const std::uint64_t k = level(n);
    // Abscissas scaled by 2^(k+1): A(n) = 2j + 1, neighbours at 2j and 2j + 2.
    const BigInt scale = pow2(static_cast<unsigned>(k + 1));
    const auto scaled = [&](const ExtNat& e) -> BigInt {
      const Dyadic d = abscissa(e);
      return (d.num() * scale) >> d.exp();
    };
    const BigInt center = scaled(N(n));
    ASSERT_EQ(scaled(left_support(n)), center - 1) << n;
    ASSERT_EQ(scaled(right_support(n)), center + 1) << n;
  }
}

TEST(Supports, SupportsAreSmall) {
  // Even n exceed 4 Ls(n); odd n > 1 exceed 4 Rs(n), with Rs = 1/2 worth 1/2.
  for (std::uint64_t n = 2; n <= (1u << 20); ++n) {
    if (n % 2 == 0) {
      const ExtNat ls = left_support(n);
      const BigInt v = ls.is_zero() ? BigInt(0) : ls.value();
      ASSERT_GT(BigInt(n), 4 * v) << n;
    } else {
      // Compare doubled values to keep 1/2 integral.
      ASSERT_GT(BigInt(2 * n), 4 * right_support(n).doubled()) << n;
    }
  }
}

TEST(Interleave, Examples) {
  EXPECT_EQ(interleave<int>({1}, {2, 3}), (std::vector<int>{2, 1, 3}));
  EXPECT_EQ(interleave<int>({2, 1, 3}, {4, 5, 6, 7}), (std::vector<int>{4, 2, 5, 1, 6, 3, 7}));
  EXPECT_EQ(interleave<int>({}, {9}), (std::vector<int>{9}));
  EXPECT_THROW(interleave<int>({1}, {2}), std::invalid_argument);
}

TEST(LevelRow, Examples) {
  EXPECT_EQ(join(level_row(0)), "1");
  EXPECT_EQ(join(level_row(2)), "4 5 6 7");
  EXPECT_EQ(join(level_row(-1)), "0 1/2");
}

TEST(EschemeRow, Examples) {
  EXPECT_EQ(join(escheme_row(1)), "2 1 3");
  EXPECT_EQ(join(escheme_row(3)), "8 4 9 2 10 5 11 1 12 6 13 3 14 7 15");
  EXPECT_TRUE(escheme_row(-1).empty());
  EXPECT_TRUE(escheme_row_by_formula(-1).empty());
}

TEST(EschemeRow, MatchesPrintedScheme) {
  for (int k = 0; k < 10; ++k) {
    const auto printed = oracle::split(golden::kSchemeRows[k]);
    const auto row = escheme_row(k);
    ASSERT_GE(row.size(), printed.size());
    for (std::size_t i = 0; i < printed.size(); ++i) {
      EXPECT_EQ(row[i].to_string(), printed[i]) << "k=" << k << " i=" << i;
    }
  }
}

TEST(EschemeRow, DualConstructionsAgreeAndPermute) {
  for (int k = 0; k <= 16; ++k) {
    const auto by_interleave = escheme_row(k);
    ASSERT_EQ(by_interleave, escheme_row_by_formula(k)) << "k=" << k;
    ASSERT_EQ(by_interleave.size(), (std::size_t{2} << k) - 1);
    std::vector<BigInt> values;
    for (const auto& e : by_interleave) values.push_back(e.value());
    std::sort(values.begin(), values.end());
    for (std::size_t i = 0; i < values.size(); ++i) ASSERT_EQ(values[i], i + 1);
  }
}

TEST(EschemeRow, MatchesSortingOracle) {
  for (int k = 0; k <= 10; ++k) {
    const auto expected = oracle::scheme_by_sorting(k);
    const auto row = escheme_row(k);
    ASSERT_EQ(row.size(), expected.size());
    for (std::size_t i = 0; i < row.size(); ++i) ASSERT_EQ(row[i], N(expected[i]));
  }
}

TEST(InorderLess, Examples) {
  EXPECT_TRUE(inorder_less(N(1), N(3)));
  EXPECT_TRUE(inorder_less(N(4), N(2)));
  EXPECT_TRUE(inorder_less(ExtNat::zero(), ExtNat::half()));
  EXPECT_FALSE(inorder_less(N(3), N(3)));
}

TEST(InorderLess, AgreesWithRowOrder) {
  const auto row = escheme_row(8);
  EXPECT_TRUE(std::is_sorted(row.begin(), row.end(), inorder_less));
}

TEST(PositionInRow, Examples) {
  EXPECT_EQ(position_in_row(1, 2), 4);
  EXPECT_EQ(position_in_row(11, 3), 7);
  EXPECT_EQ(position_in_row(5, 2), 3);
  EXPECT_THROW(position_in_row(8, 2), std::domain_error);
}

TEST(HammingWeight, Examples) {
  EXPECT_EQ(hamming_weight(0), 0u);
  EXPECT_EQ(hamming_weight(13), 3u);
  EXPECT_EQ(hamming_weight(pow2(20)), 1u);
  EXPECT_EQ(hamming_weight(pow2(130) - 1), 130u);
}

TEST(HammingWeight, Recursion) {
  for (std::uint64_t n = 0; n < 100000; ++n) {
    ASSERT_EQ(hamming_weight(2 * n), hamming_weight(n));
    ASSERT_EQ(hamming_weight(2 * n + 1), hamming_weight(n) + 1);
  }
}

TEST(SchemeSequences, PrintedPrefixes) {
  const auto concat = scheme_concat(27);
  const auto printed = oracle::split(golden::kSchemeConcat);
  ASSERT_EQ(concat.size(), printed.size());
  for (std::size_t i = 0; i < printed.size(); ++i) EXPECT_EQ(concat[i].str(), printed[i]);

  const auto joined = zero_joined_scheme(28);
  const auto printed_u = oracle::split(golden::kZeroJoined);
  ASSERT_EQ(joined.size(), printed_u.size());
  for (std::size_t i = 0; i < printed_u.size(); ++i) EXPECT_EQ(joined[i].str(), printed_u[i]);

  EXPECT_EQ(zero_joined_scheme(1), std::vector<BigInt>{0});
  EXPECT_EQ(scheme_concat(11).back(), 7);
}

TEST(SchemeSequences, ZeroJoinedIsRowsSeparatedByZero) {
  // (0) E(*,-1) 0 E(*,0) 0 E(*,1) 0 ..., where E(*,-1) is empty.
  std::vector<BigInt> expected{0, 0};
  for (int k = 0; expected.size() < 5000; ++k) {
    for (const auto& e : escheme_row(k)) expected.push_back(e.value());
    expected.push_back(0);
  }
  expected.resize(5000);
  EXPECT_EQ(zero_joined_scheme(5000), expected);
}

TEST(FarIndices, BigLevelsAreExact) {
  const BigInt i = pow2(94) + 3;
  const ExtNat e = escheme_entry(100, i);
  EXPECT_EQ(e.value(), pow2(100) + (i - 1) / 2);
  EXPECT_EQ(position_in_row(e.value(), 100), i);
  EXPECT_EQ(abscissa_inv(abscissa(e)), e);
}
