#include <gtest/gtest.h>

#include "heyde/error.hpp"
#include "heyde/heyde.hpp"
#include "oracles.hpp"

using namespace heyde;

namespace {

HeydeInstance iid(const Homomorphism& alpha, const Distribution& mu) { return HeydeInstance::make(alpha, mu, mu); }

Subgroup members(const FiniteAbelianGroup& g, std::vector<std::size_t> idx) { return *Subgroup::from_members(g, std::move(idx)); }

auto as_map(const Homomorphism& a) {
  return [a](const oracle::Residues& x) { return a.apply(Element{x}).residues; };
}

}  // namespace

TEST(Joint, UniformForMultiplyByTwoOnZ5) {
  const auto g = make_group({5});
  const auto law = joint_distribution(iid(Homomorphism::scalar(g, 2), haar(whole_group(g))));
  for (const auto& m : law.masses()) EXPECT_EQ(m, rational(1, 25));
}

TEST(Joint, DiagonalForIdentityOnZ3) {
  const auto g = make_group({3});
  const auto law = joint_distribution(iid(Homomorphism::identity(g), haar(whole_group(g))));
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) EXPECT_EQ(law.mass_at(a, b), a == b ? rational(1, 3) : Rational(0));
  }
}

TEST(Joint, DegenerateGivesPointMass) {
  const auto g = make_group({3, 9});
  const auto alpha = Homomorphism::from_matrix(g, g, {{2, 0}, {3, 4}});
  const Element a1{{1, 2}}, a2{{2, 5}};
  const auto law = joint_distribution(HeydeInstance::make(alpha, degenerate(g, a1), degenerate(g, a2)));
  const auto l1 = g.index_of(g.add(a1, a2)), l2 = g.index_of(g.add(a1, alpha.apply(a2)));
  EXPECT_EQ(law.mass_at(l1, l2), 1);
}

TEST(Joint, MatchesOracleAndProductGroup) {
  const auto g = make_group({3, 2});
  const auto autos = enumerate_automorphisms(g);
  const auto mu1 = sample_distribution(g, 1, 12), mu2 = sample_distribution(g, 2, 12);
  const auto inst = HeydeInstance::make(autos[1], mu1, mu2);
  const auto law = joint_distribution(inst);
  const auto expected = oracle::joint_law(mu1, mu2, as_map(autos[1]));
  for (std::size_t a = 0; a < g.order(); ++a) {
    for (std::size_t b = 0; b < g.order(); ++b) {
      const auto it = expected.find({g.element_at(a).residues, g.element_at(b).residues});
      EXPECT_EQ(law.mass_at(a, b), it == expected.end() ? Rational(0) : it->second);
    }
  }
  const auto flat = law.as_distribution();
  EXPECT_EQ(to_string(flat.group()), "Z2xZ2xZ3xZ3");
  // (l1, l2) = ((t3, t2), (s3, s2)) sits at residues (t2, s2, t3, s3).
  for (std::size_t a = 0; a < g.order(); ++a) {
    for (std::size_t b = 0; b < g.order(); ++b) {
      const auto ea = g.element_at(a).residues, eb = g.element_at(b).residues;
      EXPECT_EQ(flat.mass(Element{{ea[0], eb[0], ea[1], eb[1]}}), law.mass_at(a, b));
    }
  }
  EXPECT_EQ(law.first_marginal(), convolve(mu1, mu2));
}

TEST(Symmetry, KnownExamples) {
  const auto z5 = make_group({5}), z3 = make_group({3}), z2 = make_group({2});
  EXPECT_TRUE(symmetry_holds(iid(Homomorphism::scalar(z5, 2), haar(whole_group(z5)))).holds);

  const auto v = symmetry_holds(iid(Homomorphism::identity(z3), haar(whole_group(z3))));
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(v.witness->u, Element{{1}});
  EXPECT_EQ(v.witness->v, Element{{1}});

  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto inst = HeydeInstance::make(Homomorphism::identity(z2), sample_distribution(z2, s, 8), sample_distribution(z2, s + 9, 8));
    EXPECT_TRUE(symmetry_holds(inst).holds);
  }
}

TEST(Equation2a, KnownExamples) {
  const auto z3 = make_group({3}), z5 = make_group({5});
  const auto f3 = char_function(haar(whole_group(z3)));
  const auto v = equation_2a_holds(f3, f3, adjoint(Homomorphism::identity(z3)));
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(v.witness->u, Element{{1}});
  EXPECT_EQ(v.witness->v, Element{{1}});

  const auto f5 = char_function(haar(whole_group(z5)));
  EXPECT_TRUE(equation_2a_holds(f5, f5, adjoint(Homomorphism::scalar(z5, 2))).holds);
}

class CheckerAgreement : public ::testing::TestWithParam<std::vector<std::int64_t>> {};

TEST_P(CheckerAgreement, CheckersAgreeWithEachOtherAndOracle) {
  const auto g = make_group(GetParam());
  const auto autos = enumerate_automorphisms(g);
  const auto subs = enumerate_subgroups(g);
  std::size_t symmetric = 0;
  for (std::uint64_t i = 0; i < 120; ++i) {
    const auto inst = sample_instance(g, autos, subs, 99, i);
    const bool s = symmetry_holds(inst).holds;
    EXPECT_TRUE(lemma1_agree(inst));
    EXPECT_EQ(s, oracle::symmetric(inst.mu1, inst.mu2, as_map(inst.alpha)));
    if (s) {
      ++symmetric;
      EXPECT_TRUE(forms_M_independent(inst));
      // nu_j = mu_j * reflect(mu_j) stays symmetric.
      const auto nu = HeydeInstance::make(inst.alpha, convolve(inst.mu1, reflect(inst.mu1)),
                                          convolve(inst.mu2, reflect(inst.mu2)));
      EXPECT_TRUE(symmetry_holds(nu).holds);
    }
    // Shifts with x1 + alpha x2 = 0 leave the verdict unchanged.
    const Element x2 = g.element_at(i % g.order());
    const Element x1 = g.negate(inst.alpha.apply(x2));
    const auto shifted = HeydeInstance::make(inst.alpha, shift(inst.mu1, x1), shift(inst.mu2, x2));
    EXPECT_EQ(symmetry_holds(shifted).holds, s);
  }
  EXPECT_GT(symmetric, 0u);
}

INSTANTIATE_TEST_SUITE_P(Groups, CheckerAgreement,
                         ::testing::Values(std::vector<std::int64_t>{3}, std::vector<std::int64_t>{2},
                                           std::vector<std::int64_t>{4}, std::vector<std::int64_t>{9},
                                           std::vector<std::int64_t>{3, 3}, std::vector<std::int64_t>{2, 3},
                                           std::vector<std::int64_t>{2, 2}));

TEST(Conclusion, HaarOnZ5) {
  const auto g = make_group({5});
  const auto d = heyde_conclusion(iid(Homomorphism::scalar(g, 2), haar(whole_group(g))));
  ASSERT_TRUE(d.has_value());
  EXPECT_TRUE(d->subgroup.is_whole());
  EXPECT_EQ(d->x1, Element{{0}});
  EXPECT_EQ(d->x2, Element{{0}});
}

TEST(Conclusion, ShiftedSubgroupOnZ9) {
  const auto g = make_group({9});
  const auto alpha = Homomorphism::scalar(g, 2);
  const auto k = members(g, {0, 3, 6});
  const Element x2{{1}};
  const Element x1 = g.negate(alpha.apply(x2));
  const auto inst = HeydeInstance::make(alpha, shift(haar(k), x1), shift(haar(k), x2));
  ASSERT_TRUE(symmetry_holds(inst).holds);
  const auto d = heyde_conclusion(inst);
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->subgroup, k);
  EXPECT_EQ(shift(haar(k), d->x1), inst.mu1);
  EXPECT_EQ(shift(haar(k), d->x2), inst.mu2);
}

TEST(Conclusion, RequiresSymmetry) {
  const auto g = make_group({3});
  EXPECT_THROW(heyde_conclusion(iid(Homomorphism::identity(g), haar(whole_group(g)))), PreconditionError);
}

TEST(Conclusion, SufficiencyOnOddGroups) {
  for (const auto& orders : {std::vector<std::int64_t>{3}, {5}, {9}, {3, 3}, {27}, {5, 5}}) {
    const auto g = make_group(orders);
    std::vector<Homomorphism> good;
    for (auto& a : enumerate_automorphisms(g)) {
      if (condition_1_holds(a)) good.push_back(std::move(a));
    }
    const auto subs = enumerate_subgroups(g);
    for (std::uint64_t i = 0; i < 150; ++i) {
      const auto inst = sample_instance(g, good, subs, 4, i);
      if (!symmetry_holds(inst).holds) continue;
      const auto d = heyde_conclusion(inst);
      ASSERT_TRUE(d.has_value()) << to_string(g) << " instance " << i;
      EXPECT_EQ(image_of(inst.alpha, d->subgroup), d->subgroup);
      EXPECT_EQ(shift(haar(d->subgroup), d->x1), inst.mu1);
      EXPECT_EQ(shift(haar(d->subgroup), d->x2), inst.mu2);
    }
  }
}

TEST(HaarCriterion, KnownExamples) {
  const auto z5 = make_group({5}), z9 = make_group({9});
  EXPECT_TRUE(proposition1_check(whole_group(z5), Homomorphism::scalar(z5, 2)));
  const auto sides = proposition1_sides(whole_group(z9), Homomorphism::scalar(z9, 4));
  EXPECT_FALSE(sides.symmetric);
  EXPECT_FALSE(sides.image_equals_k);
  EXPECT_TRUE(proposition1_check(trivial_subgroup(z9), Homomorphism::scalar(z9, 4)));
}

TEST(HaarCriterion, Preconditions) {
  const auto z5 = make_group({5}), z4 = make_group({4});
  EXPECT_THROW(proposition1_check(whole_group(z5), Homomorphism::scalar(z5, 4)), PreconditionError);
  EXPECT_THROW(proposition1_check(whole_group(z4), Homomorphism::scalar(z4, 3)), PreconditionError);
}

TEST(HaarCriterion, ExhaustiveBiconditional) {
  for (const auto& orders : {std::vector<std::int64_t>{3}, {9}, {27}, {3, 3}, {3, 9}, {3, 5}, {5, 5}}) {
    const auto g = make_group(orders);
    for (const auto& a : enumerate_automorphisms(g)) {
      if (!condition_1_holds(a)) continue;
      for (const auto& k : enumerate_subgroups(g)) {
        const auto s = proposition1_sides(k, a);
        EXPECT_EQ(s.symmetric, s.image_equals_k) << to_string(g);
      }
    }
  }
}

TEST(Counterexamples, OrderTwo) {
  for (const auto& orders : {std::vector<std::int64_t>{2}, {4}, {2, 9}, {2, 2}}) {
    const auto g = make_group(orders);
    for (const auto& a : enumerate_automorphisms(g)) {
      const auto inst = order2_counterexample(g, a);
      EXPECT_TRUE(symmetry_holds(inst).holds);
      EXPECT_FALSE(in_I_X(inst.mu1).has_value());
      EXPECT_FALSE(heyde_conclusion(inst).has_value());
      for (std::size_t x : inst.mu1.support()) EXPECT_TRUE(order2_subgroup(g).contains_index(x));
    }
  }
  const auto z4 = make_group({4});
  EXPECT_EQ(order2_counterexample(z4).mu1.masses(), (std::vector<Rational>{rational(3, 4), 0, rational(1, 4), 0}));
  const auto z29 = make_group({2, 9});
  EXPECT_EQ(order2_counterexample(z29).mu1.mass(Element{{1, 0}}), rational(1, 4));
  EXPECT_THROW(order2_counterexample(make_group({3})), PreconditionError);
}

TEST(Counterexamples, Kernel) {
  const auto z3 = make_group({3});
  const auto inst = kernel_counterexample(Homomorphism::scalar(z3, 2));
  EXPECT_EQ(inst.mu1.masses(), (std::vector<Rational>{rational(1, 2), rational(1, 2), 0}));
  EXPECT_TRUE(symmetry_holds(inst).holds);
  EXPECT_FALSE(in_I_X(inst.mu1).has_value());
  for (auto [n, k] : {std::pair<std::int64_t, std::int64_t>{9, 8}, {5, 4}}) {
    const auto g = make_group({n});
    const auto ce = kernel_counterexample(Homomorphism::scalar(g, k));
    EXPECT_TRUE(symmetry_holds(ce).holds);
    EXPECT_FALSE(in_I_X(ce.mu1).has_value());
  }
  EXPECT_THROW(kernel_counterexample(Homomorphism::scalar(make_group({5}), 2)), PreconditionError);
}

TEST(FormsM, HaarOnZ5) {
  const auto g = make_group({5});
  EXPECT_TRUE(forms_M_independent(iid(Homomorphism::scalar(g, 2), haar(whole_group(g)))));
}

TEST(Prop5, TwoPartTimesOddPart) {
  const auto g = make_group({2, 9});
  const auto alpha = Homomorphism::from_matrix(g, g, {{1, 0}, {0, 2}});
  const auto rho = Distribution::from_points(g, std::vector<std::pair<Element, Rational>>{
                                                    {Element{{0, 0}}, rational(3, 4)}, {Element{{1, 0}}, rational(1, 4)}});
  std::vector<std::size_t> k_idx;
  for (std::size_t i = 0; i < g.order(); ++i) {
    const auto e = g.element_at(i);
    if (e.residues[0] == 0 && e.residues[1] % 3 == 0) k_idx.push_back(i);
  }
  const auto k = members(g, k_idx);
  const auto mu = convolve(rho, haar(k));
  const auto inst = iid(alpha, mu);
  ASSERT_TRUE(symmetry_holds(inst).holds);
  EXPECT_FALSE(condition_1_holds(alpha));
  const auto f = prop5_factorize(inst);
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(f->rho1, rho);
  EXPECT_EQ(f->subgroup, k);
  EXPECT_EQ(f->g1, g.zero());
  EXPECT_EQ(shift(convolve(f->rho2, haar(f->subgroup)), f->g2), mu);
}

TEST(Prop5, OddGroupReducesToConclusion) {
  const auto g = make_group({9});
  const auto alpha = Homomorphism::scalar(g, 2);
  const auto inst = iid(alpha, haar(members(g, {0, 3, 6})));
  const auto f = prop5_factorize(inst);
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(f->rho1, degenerate(g, g.zero()));
  EXPECT_EQ(f->subgroup, heyde_conclusion(inst)->subgroup);
}

TEST(Prop5, DegenerateInput) {
  const auto g = make_group({4, 3});
  const auto alpha = Homomorphism::identity(g);
  const Element x{{2, 1}};
  const auto inst = HeydeInstance::make(alpha, degenerate(g, x), degenerate(g, g.negate(x)));
  ASSERT_TRUE(symmetry_holds(inst).holds);
  const auto f = prop5_factorize(inst);
  ASSERT_TRUE(f.has_value());
  EXPECT_TRUE(f->subgroup.is_trivial());
  EXPECT_EQ(f->rho1.support().size(), 1u);
}

TEST(Search, Z5ConditionOneFindsNothing) {
  SearchOptions opt{7, 2000, AlphaPolicy::kCondition1, 0};
  EXPECT_TRUE(search_counterexamples(make_group({5}), opt).empty());
}

TEST(Search, BoundaryGroupsYieldCounterexamples) {
  SearchOptions opt{7, 1000, AlphaPolicy::kAll, 0};
  EXPECT_FALSE(search_counterexamples(make_group({2}), opt).empty());
  const auto z3 = search_counterexamples(make_group({3}), opt);
  ASSERT_FALSE(z3.empty());
  for (const auto& c : z3) EXPECT_FALSE(condition_1_holds(c.instance.alpha));
}

TEST(Search, IndependentOfShardCount) {
  const auto g = make_group({4});
  const auto serial = search_counterexamples(g, SearchOptions{3, 400, AlphaPolicy::kAll, 1});
  const auto parallel = search_counterexamples(g, SearchOptions{3, 400, AlphaPolicy::kAll, 5});
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].index, parallel[i].index);
    EXPECT_EQ(serial[i].instance.mu1, parallel[i].instance.mu1);
    EXPECT_EQ(serial[i].instance.alpha, parallel[i].instance.alpha);
  }
}
