#include <gtest/gtest.h>

#include "lensspec/errors.hpp"
#include "lensspec/spectrum.hpp"
#include "support.hpp"

using namespace lensspec;
using namespace lensspec::spectrum;
using lens::SpinLabel;

namespace {

lens::SpinLensSpace odd(std::int64_t q, std::vector<std::int64_t> s) {
  return lens::make_spin_lens(q, std::move(s), SpinLabel::unique());
}
lens::SpinLensSpace tau(std::int64_t q, std::vector<std::int64_t> s, int h) {
  return lens::make_spin_lens(q, std::move(s), SpinLabel::even(h));
}
lens::SpinLensSpace sphere(int m) { return odd(1, std::vector<std::int64_t>(m, 1)); }

}  // namespace

TEST(Spectrum, Eigenvalue) {
  const auto e = eigenvalue(4, 2, Sign::Minus);
  EXPECT_EQ(e.value2, 11);
  EXPECT_EQ(e.sign, Sign::Minus);
}

TEST(Spectrum, WeightMultiplicity) {
  EXPECT_EQ(weight_multiplicity(4, 0, Sign::Plus, std::vector<std::int64_t>{1, 1, 1, 1}), 1);
  EXPECT_EQ(weight_multiplicity(4, 0, Sign::Minus, std::vector<std::int64_t>{1, 1, 1, 1}), 0);
  EXPECT_EQ(weight_multiplicity(4, 2, Sign::Plus, std::vector<std::int64_t>{1, 1, 1, 1}), 6);
  for (auto sign : {Sign::Plus, Sign::Minus}) {
    EXPECT_EQ(weight_multiplicity(4, 3, sign, std::vector<std::int64_t>{2, 1, 1, 1}), 0);
    EXPECT_EQ(weight_multiplicity(3, 5, sign, std::vector<std::int64_t>{0, 0, 0}), 0);
  }
  // Too large a norm for the k-th representation.
  EXPECT_EQ(weight_multiplicity(2, 0, Sign::Plus, std::vector<std::int64_t>{3, 1}), 0);
}

TEST(Spectrum, SphereValues) {
  EXPECT_EQ(multiplicity(sphere(2), 1, Sign::Plus), 6);
  EXPECT_EQ(multiplicity(sphere(2), 1, Sign::Minus), 6);
  const auto s3 = spectrum_table(sphere(2), 3);
  const auto s5 = spectrum_table(sphere(3), 3);
  const std::vector<int> three{2, 6, 12, 20};
  const std::vector<int> five{4, 20, 60, 140};
  for (int k = 0; k <= 3; ++k) {
    EXPECT_EQ(s3.rows[k].plus, three[k]);
    EXPECT_EQ(s3.rows[k].minus, three[k]);
    EXPECT_EQ(s5.rows[k].plus, five[k]);
    EXPECT_EQ(s5.rows[k].minus, five[k]);
  }
}

TEST(Spectrum, SphereMultiplicity) {
  EXPECT_EQ(sphere_multiplicity(3, 0), 2);
  EXPECT_EQ(sphere_multiplicity(7, 1), 56);
  EXPECT_THROW(sphere_multiplicity(4, 1), std::invalid_argument);
  for (std::int64_t k = 0; k <= 100; ++k) {
    EXPECT_EQ(multiplicity(sphere(2), k, Sign::Plus), sphere_multiplicity(3, k));
    EXPECT_EQ(multiplicity(sphere(2), k, Sign::Minus), sphere_multiplicity(3, k));
  }
}

// The q = 1 dimension identity for m <= 6, k <= 30.
TEST(Spectrum, SphereIdentity) {
  for (int m = 2; m <= 6; ++m) {
    const auto table = spectrum_table(sphere(m), 30);
    for (const auto& row : table.rows) {
      ASSERT_EQ(row.plus, sphere_multiplicity(2 * m - 1, row.k)) << m << " " << row.k;
      ASSERT_EQ(row.minus, sphere_multiplicity(2 * m - 1, row.k)) << m << " " << row.k;
    }
  }
}

TEST(Spectrum, GroundLevelAtQ49) {
  EXPECT_EQ(multiplicity(odd(49, {1, 8, 15, 29}), 0, Sign::Minus), 0);
}

TEST(Spectrum, SpinPairAtQ32) {
  const auto a = spectrum_table(tau(32, {1, 3, 5, 15}, 0), 4 * 32);
  const auto b = spectrum_table(tau(32, {1, 3, 5, 15}, 1), 4 * 32);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(dirac_isospectral(tau(32, {1, 3, 5, 15}, 0), tau(32, {1, 3, 5, 15}, 1)));
  EXPECT_EQ(fingerprint(tau(32, {1, 3, 5, 15}, 0)), fingerprint(tau(32, {1, 3, 5, 15}, 1)));
}

// Table 1 prints this pair as isospectral; with the orientation fixed the
// spectra are mirror images of each other.
TEST(Spectrum, PairAtQ49IsMirrored) {
  const auto x = odd(49, {1, 6, 8, 22});
  const auto y = odd(49, {1, 6, 8, 20});
  EXPECT_FALSE(dirac_isospectral(x, y));
  EXPECT_TRUE(inverse_isospectral(x, y));
  const auto tx = spectrum_table(x, 4 * 49);
  const auto ty = spectrum_table(y, 4 * 49);
  for (std::size_t k = 0; k < tx.rows.size(); ++k) {
    EXPECT_EQ(tx.rows[k].plus, ty.rows[k].minus);
    EXPECT_EQ(tx.rows[k].minus, ty.rows[k].plus);
  }
  // The directly isospectral partner of x, obtained from the infinite family.
  EXPECT_TRUE(dirac_isospectral(odd(49, {1, 8, 15, 29}), odd(49, {1, 43, 36, 22})));
}

TEST(Spectrum, PairAtQ75) {
  EXPECT_TRUE(dirac_isospectral(odd(75, {1, 4, 14, 16}), odd(75, {1, 4, 11, 19})));
}

TEST(Spectrum, ReflexiveAndCrossShape) {
  const auto x = odd(49, {1, 6, 8, 22});
  EXPECT_TRUE(dirac_isospectral(x, x));
  EXPECT_FALSE(inverse_isospectral(x, x));  // the rows of x differ
  EXPECT_FALSE(dirac_isospectral(x, odd(47, {1, 6, 8, 22})));
  EXPECT_FALSE(dirac_isospectral(x, odd(49, {1, 6, 8})));
}

TEST(Spectrum, NegatingOneParameterMirrors) {
  std::mt19937_64 rng(fixture::kSeed);
  for (int i = 0; i < 30; ++i) {
    const auto x = fixture::random_space(rng, 30, 2, 4);
    if (x.q() % 2 == 0) continue;
    auto s = x.lens.s();
    s.back() = -s.back();
    EXPECT_TRUE(inverse_isospectral(x, odd(x.q(), s))) << lens::to_string(x);
  }
}

// Remark: p-isospectral lens spaces that are never Dirac isospectral.
TEST(Spectrum, NoSpinCombinationAtQ100) {
  for (int h : {0, 1}) {
    for (int g : {0, 1}) {
      EXPECT_NE(fingerprint(tau(100, {1, 9, 11, 29}, h)), fingerprint(tau(100, {1, 9, 11, 31}, g)));
      EXPECT_NE(fingerprint(tau(100, {1, 9, 21, 39}, h)), fingerprint(tau(100, {1, 9, 29, 31}, g)));
    }
  }
}

TEST(Spectrum, BoundedBySphere) {
  std::mt19937_64 rng(fixture::kSeed + 3);
  for (int i = 0; i < 40; ++i) {
    const auto x = fixture::random_space(rng, 24, 2, 4);
    const auto table = spectrum_table(x, 2 * x.q() * x.m());
    for (const auto& row : table.rows) {
      const auto bound = sphere_multiplicity(2 * x.m() - 1, row.k);
      ASSERT_LE(row.plus, bound);
      ASSERT_LE(row.minus, bound);
      ASSERT_GE(row.plus, 0);
      ASSERT_GE(row.minus, 0);
    }
  }
}
