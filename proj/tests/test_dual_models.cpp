#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "heyde/dual_models.hpp"
#include "heyde/error.hpp"

using namespace heyde;

namespace {

Lemma5Model standard() { return lemma5_model(3, {1, 2, 3, 4}, rational(1, 2)); }

SampleSpec small_spec() {
  SampleSpec s;
  s.grid_m = 16;
  s.grid_n = 3;
  s.random_pairs = 2000;
  s.seed = 5;
  return s;
}

}  // namespace

TEST(SequenceDual, Validation) {
  EXPECT_THROW(SequenceDual(2, {1, 2}), InputError);
  EXPECT_THROW(SequenceDual(9, {1, 2}), InputError);
  EXPECT_THROW(SequenceDual(3, {2, 1}), InputError);
  EXPECT_THROW(SequenceDual(3, {}), InputError);
  const SequenceDual d(3, {1, 2});
  EXPECT_THROW(d.normalize({3}), InputError);
  EXPECT_THROW(d.normalize({0, 0, 1}), InputError);
  EXPECT_EQ(d.normalize({1, 0}), (Sequence{1}));
}

TEST(SequenceDual, AdjointExamples) {
  const SequenceDual d(3, {1, 2, 3});
  EXPECT_EQ(seq_adjoint_apply(d, {0, 1}), (Sequence{1, 8}));
  EXPECT_EQ(seq_adjoint_apply(d, {}), Sequence{});
  for (std::int64_t r = 0; r < 3; ++r) EXPECT_EQ(seq_adjoint_apply(d, {r}), d.negate({r}));
}

TEST(SequenceDual, AdjointIsAdditiveBijectiveAndLevelPreserving) {
  const SequenceDual d(3, {1, 2, 3});
  for (std::size_t m = 1; m <= 3; ++m) {
    const auto g = d.level_group(m);
    std::set<Sequence> image;
    for (std::size_t i = 0; i < g.order(); ++i) {
      const auto s = d.from_element(g.element_at(i));
      const auto u = seq_adjoint_apply(d, s);
      EXPECT_LE(d.level_of(u), m);
      image.insert(u);
      for (std::size_t j = 0; j < g.order(); j += 7) {
        const auto t = d.from_element(g.element_at(j));
        EXPECT_EQ(seq_adjoint_apply(d, d.add(s, t)), d.add(u, seq_adjoint_apply(d, t)));
      }
    }
    EXPECT_EQ(image.size(), g.order());
  }
}

TEST(SequenceDual, MatrixFormAgrees) {
  const SequenceDual d(3, {1, 2, 3});
  const auto h = seq_adjoint_on_level(d, 3);
  for (std::size_t i = 0; i < h.source().order(); ++i) {
    const auto e = h.source().element_at(i);
    EXPECT_EQ(d.to_element(seq_adjoint_apply(d, d.from_element(e)), 3), h.apply(e));
  }
  EXPECT_TRUE(is_automorphism(h));
}

TEST(SequenceDual, AdjointOfTruncatedAlpha) {
  // On B_m the dual map is the adjoint of the primal truncation, up to the cut at level m.
  const SequenceDual d(3, {1, 2});
  const auto alpha = truncated_alpha(3, {1, 2}, 2);
  EXPECT_EQ(adjoint(alpha), seq_adjoint_on_level(d, 2));
}

TEST(SequenceModel, Values) {
  const auto m = standard();
  EXPECT_EQ(m.value({1}), rational(1, 2));
  EXPECT_EQ(m.value({}), 1);
  EXPECT_EQ(m.value({0, 1}), 0);
  EXPECT_EQ(lemma5_model(3, {1, 2}, rational(1, 3)).value({2}), rational(2, 3));
}

TEST(SequenceModel, Preconditions) {
  EXPECT_THROW(lemma5_model(2, {1, 2}, rational(1, 2)), InputError);
  EXPECT_THROW(lemma5_model(3, {1, 2}, rational(0)), InputError);
  EXPECT_THROW(lemma5_model(3, {1, 2}, rational(1)), InputError);
  EXPECT_THROW(lemma5_model(3, {2, 1}, rational(1, 2)), InputError);
  EXPECT_THROW(verify_lemma5(standard(), 0), InputError);
  EXPECT_THROW(verify_lemma5(standard(), 5), InputError);
  EXPECT_THROW(verify_lemma5(standard(), 4), InputError);  // |B_4| = 3^10 exceeds the cap
}

TEST(SequenceModel, HoldsOnLevels) {
  const auto m = standard();
  const auto c2 = verify_lemma5(m, 2);
  EXPECT_TRUE(c2.holds);
  EXPECT_TRUE(c2.cases_hold);
  EXPECT_EQ(c2.pairs, 729u);
  EXPECT_EQ(c2.cases.at("base"), 9u);
  const auto c3 = verify_lemma5(m, 3);
  EXPECT_TRUE(c3.holds);
  EXPECT_TRUE(c3.cases_hold);
  EXPECT_EQ(c3.pairs, 531441u);
  EXPECT_EQ(c3.cases.at("base") + c3.cases.at("mixed") + c3.cases.at("outside"), c3.pairs);
}

TEST(SequenceModel, OtherPrimeAndLadder) {
  const auto m = lemma5_model(5, {1, 1, 2}, rational(2, 7));
  const auto c = verify_lemma5(m, 3);
  EXPECT_TRUE(c.holds);
  EXPECT_TRUE(c.cases_hold);
  EXPECT_TRUE(base_recursion_holds(m.dual(), 3));
}

TEST(SequenceModel, MutationsAreCaught) {
  const auto m = standard();
  // 1 - a placed outside Z(p^k1), where the proof forces 0.
  const auto bad = m.with_value({0, 1}, rational(1, 2));
  const auto c = verify_lemma5(bad, 2);
  EXPECT_FALSE(c.holds);
  ASSERT_TRUE(c.witness.has_value());
  // A single-point change is invisible exactly where the adjoint sends s to -s; there the equation reads
  // f(u+v) f(u-v) = f(u-v) f(u+v).
  const auto& d = m.dual();
  const auto g = d.level_group(2);
  std::size_t invisible = 0;
  for (std::size_t i = 1; i < g.order(); ++i) {
    const auto s = d.from_element(g.element_at(i));
    const bool fixed_by_minus = seq_adjoint_apply(d, s) == d.negate(s);
    invisible += fixed_by_minus;
    const auto mutant = m.with_value(s, m.value(s) + rational(1, 5));
    EXPECT_EQ(verify_lemma5(mutant, 2).holds, fixed_by_minus) << to_string(g.element_at(i));
  }
  EXPECT_EQ(invisible, 8u);
}

TEST(SequenceModel, RecursionForcesBase) {
  const SequenceDual d(3, {1, 2, 3, 4});
  for (std::size_t m = 1; m <= 3; ++m) EXPECT_TRUE(base_recursion_holds(d, m));
}

TEST(SequenceModel, NotInIX) {
  auto w = lemma5_not_in_IX(standard());
  EXPECT_EQ(w.point, (Sequence{1}));
  EXPECT_EQ(w.value, rational(1, 2));
  w = lemma5_not_in_IX(lemma5_model(3, {1, 2}, rational(1, 3)));
  EXPECT_EQ(w.value, rational(2, 3));
  EXPECT_TRUE(gamma_I_violation(standard(), {1}));
}

TEST(SequenceModel, PositiveOnLevels) {
  const auto m = standard();
  for (std::size_t level = 1; level <= 3; ++level) EXPECT_TRUE(lemma5_positive_on_level(m, level));
  EXPECT_FALSE(lemma5_positive_on_level(m.with_value({1}, rational(-1)).with_value({2}, rational(-1)), 1));
}

TEST(Truncation, KernelIsTopFactor) {
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto k = truncation_kernel_demo(3, {1, 2, 3, 4}, n);
    EXPECT_FALSE(k.is_trivial());
    const auto top = static_cast<std::size_t>(k.parent().factors().back());
    EXPECT_EQ(k.order(), top);
    for (const auto& x : k.members()) {
      for (std::size_t i = 0; i + 1 < n; ++i) EXPECT_EQ(x.residues[i], 0);
    }
    const auto alpha = truncated_alpha(3, {1, 2, 3, 4}, n);
    EXPECT_TRUE(is_automorphism(alpha));
    EXPECT_FALSE(condition_1_holds(alpha));
  }
  EXPECT_THROW(truncation_kernel_demo(3, {1, 2}, 1), InputError);
}

TEST(RationalDual, Membership) {
  const auto z2 = RationalDual::localized({2});
  EXPECT_TRUE(z2.contains(rational(3, 8)));
  EXPECT_FALSE(z2.contains(rational(1, 6)));
  EXPECT_TRUE(z2.contains_multiple(rational(3, 4), 3));
  EXPECT_FALSE(z2.contains_multiple(rational(1), 3));
  EXPECT_TRUE(RationalDual::rationals().contains(rational(1, 7)));
  EXPECT_EQ(z2.name(), "Z[1/2]");
}

TEST(Case1, Model) {
  const auto m = case1_model(3, rational(1));
  EXPECT_EQ(m.value(rational(1)), rational(1, 2));
  EXPECT_EQ(m.value(rational(-1)), rational(1, 2));
  EXPECT_EQ(m.value(rational(0)), 1);
  EXPECT_EQ(m.value(rational(3, 2)), 0);
  EXPECT_EQ(m.alpha_tilde, rational(-2));
  EXPECT_THROW(case1_model(3, rational(3)), InputError);
  EXPECT_THROW(case1_model(3, rational(3, 4)), InputError);
  EXPECT_THROW(case1_model(3, rational(1, 3)), InputError);
  EXPECT_THROW(case1_model(5, rational(1)), InputError);
  EXPECT_THROW(case1_model(2, rational(1)), InputError);
}

TEST(Case1, Verification) {
  const auto m = case1_model(3, rational(1));
  const auto c = verify_case1(m, small_spec());
  EXPECT_TRUE(c.holds);
  EXPECT_TRUE(c.cases_hold);
  EXPECT_GT(c.cases.at("v_nonzero"), 0u);
  EXPECT_TRUE(gamma_I_violation(m, rational(1)));
  EXPECT_TRUE(case1_gram_psd(m, 4, 2));
}

TEST(Case1, MutationsAreCaught) {
  const auto m = case1_model(3, rational(1));
  for (const auto& y : {rational(2), rational(1, 2), rational(-3)}) {
    const auto c = verify_case1_with(m, {{y, rational(1, 2)}}, small_spec());
    EXPECT_FALSE(c.holds) << to_string(y);
    EXPECT_TRUE(c.witness.has_value());
  }
}

TEST(Case2, Model) {
  const auto m = case2_model(rational(1, 2));
  EXPECT_EQ(m.value(rational(0)), 1);
  EXPECT_EQ(m.value(rational(1)), rational(1, 2));
  EXPECT_EQ(m.value(rational(2, 5)), 1);
  EXPECT_EQ(m.value(rational(1, 3)), 0);
  EXPECT_THROW(case2_model(rational(0)), InputError);
  EXPECT_THROW(case2_model(rational(1)), InputError);
  EXPECT_THROW(case2_model(rational(-1)), InputError);
}

TEST(Case2, PairExamples) {
  const auto m = case2_model(rational(1, 2));
  const auto f = [&](const Rational& y) { return m.value(y); };
  const Rational u = rational(1, 5), v = rational(1, 5);
  EXPECT_EQ(f(u + 4 * v) * f(u - v), rational(1, 2));
  EXPECT_EQ(f(u - 4 * v) * f(u + v), rational(1, 2));
  const Rational a = rational(1, 3), b = rational(2, 7);
  EXPECT_EQ(f(a + 4 * b) * f(a - b), 0);
  EXPECT_EQ(f(a - 4 * b) * f(a + b), 0);
}

TEST(Case2, Verification) {
  const auto m = case2_model(rational(1, 2));
  const auto c = verify_case2(m, small_spec());
  EXPECT_TRUE(c.holds);
  EXPECT_TRUE(c.cases_hold);
  EXPECT_GT(c.cases.at("both_in_H"), 0u);
  EXPECT_GT(c.cases.at("mixed"), 0u);
  EXPECT_GT(c.cases.at("both_outside"), 0u);
  EXPECT_TRUE(gamma_I_violation(m, rational(1, 5)));
  EXPECT_TRUE(case2_gram_psd(m, 4, 1));
  EXPECT_EQ(case2_quotient_law(m).masses(), (std::vector<Rational>{rational(3, 4), rational(1, 4)}));
  EXPECT_TRUE(verify_case2(case2_model(rational(-2, 3)), small_spec()).holds);
}

TEST(Case2, MutationsAreCaught) {
  const auto m = case2_model(rational(1, 2));
  for (const auto& y : {rational(1), rational(2, 5), rational(1, 3)}) {
    const auto c = verify_case2_with(m, {{y, rational(1, 4)}}, small_spec());
    EXPECT_FALSE(c.holds) << to_string(y);
  }
}

TEST(ClosedForms, EvenWithUnitAtZero) {
  const auto l5 = standard();
  const auto g = l5.dual().level_group(2);
  for (std::size_t i = 0; i < g.order(); ++i) {
    const auto s = l5.dual().from_element(g.element_at(i));
    EXPECT_EQ(l5.value(s), l5.value(l5.dual().negate(s)));
  }
  const auto c1 = case1_model(3, rational(1));
  const auto c2 = case2_model(rational(1, 2));
  for (const auto& y : dyadic_grid(8, 2)) EXPECT_EQ(c1.value(y), c1.value(-y));
  for (const auto& y : case2_grid(8, 2)) EXPECT_EQ(c2.value(y), c2.value(-y));
}

TEST(GammaI, IndicatorHasNoViolation) {
  EXPECT_FALSE(gamma_I_violation(rational(1), rational(1)));
  EXPECT_FALSE(gamma_I_violation(rational(0), rational(1, 2)));
  EXPECT_TRUE(gamma_I_violation(rational(1, 2), rational(0)));
  EXPECT_FALSE(gamma_I_violation(rational(1, 2), rational(1, 16)));
}

TEST(Psd, SmallMatrices) {
  EXPECT_TRUE(positive_semidefinite({{rational(1), rational(1)}, {rational(1), rational(1)}}));
  EXPECT_FALSE(positive_semidefinite({{rational(1), rational(2)}, {rational(2), rational(1)}}));
  EXPECT_FALSE(positive_semidefinite({{rational(0), rational(1)}, {rational(1), rational(1)}}));
}

TEST(Grids, Sizes) {
  const auto g = dyadic_grid(64, 6);
  EXPECT_EQ(g.size(), 129u + 6 * 64);
  const auto c = case2_grid(8, 2);
  const auto h = RationalDual::localized({5});
  const auto off = std::count_if(c.begin(), c.end(), [&](const Rational& q) { return !h.contains(q); });
  EXPECT_GT(off, 0);
  EXPECT_EQ(std::set<Rational>(c.begin(), c.end()).size(), c.size());
}
