#include <gtest/gtest.h>

#include "heyde/distribution.hpp"
#include "heyde/error.hpp"
#include "oracles.hpp"

using namespace heyde;

namespace {

const std::vector<std::vector<std::int64_t>> kGroups{{3}, {5}, {9}, {2, 4}, {3, 3}, {3, 5}, {4, 9}};

}  // namespace

TEST(Distribution, ValidatesMasses) {
  const auto g = make_group({3});
  EXPECT_THROW(Distribution::from_masses(g, {rational(1, 2), rational(1, 2)}), InputError);
  EXPECT_THROW(Distribution::from_masses(g, {rational(1, 2), rational(1, 2), rational(1, 2)}), InputError);
  EXPECT_THROW(Distribution::from_masses(g, {rational(3, 2), rational(-1, 2), rational(0)}), InputError);
  EXPECT_NO_THROW(Distribution::from_masses(g, {rational(1), rational(0), rational(0)}));
}

TEST(Distribution, HaarTransformIsAnnihilatorIndicator) {
  for (const auto& orders : kGroups) {
    const auto g = make_group(orders);
    for (const auto& k : enumerate_subgroups(g)) {
      const auto f = char_function(haar(k));
      const auto a = annihilator(k);
      for (std::size_t y = 0; y < g.order(); ++y) {
        if (a.contains_index(y)) {
          EXPECT_TRUE(f.value_at(y).is_one());
        } else {
          EXPECT_TRUE(f.value_at(y).is_zero());
        }
      }
    }
  }
}

TEST(Distribution, DegenerateTransformIsCharacter) {
  const auto g = make_group({3, 9});
  const Element x{{1, 4}};
  const auto f = char_function(degenerate(g, x));
  for (std::size_t y = 0; y < g.order(); ++y) EXPECT_EQ(f.value_at(y), pairing(g, x, g.element_at(y)));
}

TEST(Distribution, InverseRejectsNonDistributions) {
  const auto g = make_group({3});
  // 1, -1, -1 has inverse masses -1/3, 2/3, 2/3.
  std::vector<CyclotomicValue> v{CyclotomicValue::one(3), CyclotomicValue::from_rational(3, rational(-1)),
                                 CyclotomicValue::from_rational(3, rational(-1))};
  EXPECT_THROW(inverse_char(CharFunction(g, v)), InputError);
}

class DistributionProperty : public ::testing::TestWithParam<std::vector<std::int64_t>> {};

TEST_P(DistributionProperty, TransformsAgreeWithOracle) {
  const auto g = make_group(GetParam());
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto mu = sample_distribution(g, seed, 3 * static_cast<std::int64_t>(g.order()));
    const auto f = char_function(mu);
    for (std::size_t y = 0; y < g.order(); ++y) {
      EXPECT_NEAR(std::abs(oracle::numeric(f.value_at(y)) - oracle::transform(mu, g.element_at(y).residues)), 0.0, 1e-9);
    }
  }
}

TEST_P(DistributionProperty, FourierRoundTrip) {
  const auto g = make_group(GetParam());
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto mu = sample_distribution(g, seed, 2 * static_cast<std::int64_t>(g.order()));
    EXPECT_EQ(inverse_char(char_function(mu)), mu);
  }
}

TEST_P(DistributionProperty, ConvolutionTheoremAndOracle) {
  const auto g = make_group(GetParam());
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto a = sample_distribution(g, 2 * seed, static_cast<std::int64_t>(g.order()) + 3);
    const auto b = sample_distribution(g, 2 * seed + 1, static_cast<std::int64_t>(g.order()) + 5);
    const auto c = convolve(a, b);
    EXPECT_EQ(c.masses(), oracle::convolve(a, b));
    const auto fa = char_function(a), fb = char_function(b), fc = char_function(c);
    for (std::size_t y = 0; y < g.order(); ++y) EXPECT_EQ(fc.value_at(y), fa.value_at(y) * fb.value_at(y));
  }
}

TEST_P(DistributionProperty, ReflectionConjugates) {
  const auto g = make_group(GetParam());
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto mu = sample_distribution(g, seed, static_cast<std::int64_t>(g.order()) + 1);
    const auto f = char_function(mu), fr = char_function(reflect(mu));
    for (std::size_t y = 0; y < g.order(); ++y) EXPECT_EQ(fr.value_at(y), f.value_at(y).conj());
    EXPECT_EQ(reflect(reflect(mu)), mu);
  }
}

TEST_P(DistributionProperty, UnitSetIsSubgroupContainingSupport) {
  const auto g = make_group(GetParam());
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto mu = sample_distribution(g, seed, static_cast<std::int64_t>(g.order()) + 2);
    const auto e = unit_set(mu);
    const auto a = annihilator(e);
    for (std::size_t x : mu.support()) EXPECT_TRUE(a.contains_index(x));
  }
}

TEST_P(DistributionProperty, HaarShiftsAreRecognised) {
  const auto g = make_group(GetParam());
  for (const auto& k : enumerate_subgroups(g)) {
    const Element x = g.element_at(g.order() / 2);
    const auto mu = shift(haar(k), x);
    const auto d = in_I_X(mu);
    ASSERT_TRUE(d.has_value());
    EXPECT_EQ(d->subgroup, k);
    EXPECT_EQ(shift(haar(d->subgroup), d->shift), mu);
    EXPECT_TRUE(k.contains(g.subtract(d->shift, x)));
  }
}

TEST_P(DistributionProperty, PushForwardPreservesMass) {
  const auto g = make_group(GetParam());
  const auto mu = sample_distribution(g, 77, static_cast<std::int64_t>(g.order()) + 2);
  const auto two = Homomorphism::scalar(g, 2);
  const auto nu = push_forward(mu, two);
  for (std::size_t y = 0; y < g.order(); ++y) {
    // (2x, y) = (x, 2y)
    EXPECT_EQ(char_function(nu).value_at(y), char_function(mu).value_at(two.apply_index(y)));
  }
}

INSTANTIATE_TEST_SUITE_P(Groups, DistributionProperty, ::testing::ValuesIn(kGroups));

TEST(InIX, RejectsMixtures) {
  const auto g = make_group({2});
  const auto mu = Distribution::from_masses(g, {rational(3, 4), rational(1, 4)});
  EXPECT_FALSE(in_I_X(mu).has_value());
  const auto z9 = make_group({9});
  const auto nu = Distribution::from_masses(z9, {rational(1, 2), 0, 0, rational(1, 2), 0, 0, 0, 0, 0});
  EXPECT_FALSE(in_I_X(nu).has_value());
}

TEST(InIX, SmallestShiftInCoset) {
  const auto g = make_group({9});
  const auto k = *Subgroup::from_members(g, {0, 3, 6});
  const auto d = in_I_X(shift(haar(k), Element{{8}}));
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->shift, Element{{2}});
}

TEST(Sampling, DeterministicAndBounded) {
  const auto g = make_group({3, 5});
  EXPECT_EQ(sample_distribution(g, 11, 40), sample_distribution(g, 11, 40));
  EXPECT_THROW(sample_distribution(g, 11, 10), PreconditionError);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto mu = sample_distribution(g, s, 40);
    for (const auto& m : mu.masses()) EXPECT_LE(m.get_den(), 40);
  }
}
