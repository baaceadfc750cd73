#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "heyde/distribution.hpp"
#include "heyde/group.hpp"

namespace heyde {

/// Independent xi_1 ~ mu1, xi_2 ~ mu2 on `group`, with forms L1 = xi_1 + xi_2 and
/// L2 = xi_1 + alpha xi_2.
struct HeydeInstance {
  FiniteAbelianGroup group;
  Homomorphism alpha;
  Distribution mu1;
  Distribution mu2;

  /// Throws InputError unless alpha is an automorphism of the group both distributions live on.
  static HeydeInstance make(Homomorphism alpha, Distribution mu1, Distribution mu2);
};

/// A pair of elements: dual pair (u, v) for the functional equation, or a point (l1, l2)
/// of the joint law for the distributional check.
struct Witness {
  Element u;
  Element v;
};

/// mu_j = m_K * E_{x_j}.
struct Decomposition {
  Subgroup subgroup;
  Element x1;
  Element x2;
};

struct Verdict {
  bool holds = true;
  std::optional<Witness> witness;
  std::optional<Decomposition> decomposition;
};

/// Law of a pair of G-valued random variables, dense over G x G with index l1 * |G| + l2.
class JointDistribution {
 public:
  JointDistribution(FiniteAbelianGroup g, std::vector<Rational> masses);

  const FiniteAbelianGroup& component() const { return group_; }
  const Rational& mass_at(std::size_t first, std::size_t second) const { return masses_[first * group_.order() + second]; }
  const std::vector<Rational>& masses() const { return masses_; }
  Distribution first_marginal() const;
  Distribution second_marginal() const;
  /// The same law as a Distribution on the canonical group G x G.
  Distribution as_distribution() const;

  friend bool operator==(const JointDistribution&, const JointDistribution&) = default;

 private:
  FiniteAbelianGroup group_;
  std::vector<Rational> masses_;
};

/// Law of (a(xi_1) + b(xi_2), c(xi_1) + d(xi_2)) for endomorphisms a, b, c, d.
JointDistribution linear_forms_law(const Distribution& mu1, const Distribution& mu2, const Homomorphism& a,
                                   const Homomorphism& b, const Homomorphism& c, const Homomorphism& d);

/// Law of (L1, L2).
JointDistribution joint_distribution(const HeydeInstance& inst);

/// Distributional check: (L1, L2) and (L1, -L2) are identically distributed. The witness is
/// the lexicographically first point (l1, l2) where the two laws differ.
Verdict symmetry_holds(const HeydeInstance& inst);

/// Spectral check: f1(u+v) f2(u + at v) = f1(u-v) f2(u - at v) for all dual pairs, `at`
/// the adjoint of alpha. The witness is the lexicographically first failing (u, v).
Verdict equation_2a_holds(const CharFunction& f1, const CharFunction& f2, const Homomorphism& alpha_tilde);

/// Both checks agree. Disagreement means an implementation bug.
bool lemma1_agree(const HeydeInstance& inst);

/// (K, x1, x2) with mu_j = m_K * E_{x_j} and alpha(K) = K, using one K for both; empty when
/// no such decomposition exists. Throws PreconditionError when symmetry fails.
std::optional<Decomposition> heyde_conclusion(const HeydeInstance& inst);

struct Proposition1Sides {
  bool symmetric = false;         // symmetry for xi_1, xi_2 iid m_K
  bool image_equals_k = false;    // (I - alpha)(K) = K
};

/// Evaluates both sides independently. Throws PreconditionError unless alpha satisfies
/// condition (1) on a group without elements of order 2.
Proposition1Sides proposition1_sides(const Subgroup& k, const Homomorphism& alpha);

/// The shared truth value of the two sides; throws InvariantError when they differ.
bool proposition1_check(const Subgroup& k, const Homomorphism& alpha);

/// Instance supported on the subgroup generated by elements of order 2, with masses (3/4, 1/4)
/// on {0, g} for the first such g. Symmetric for every alpha; alpha defaults to I.
/// Throws PreconditionError when the group has no element of order 2.
HeydeInstance order2_counterexample(const FiniteAbelianGroup& g, const std::optional<Homomorphism>& alpha = std::nullopt);

/// Subgroup generated by all elements of order 2, i.e. {x : 2x = 0}.
Subgroup order2_subgroup(const FiniteAbelianGroup& g);

/// iid instance on K = Ker(I + alpha), where alpha acts as -I. Throws PreconditionError when
/// K = {0}. The common law is (1/2, 1/2) on {0, k} for k of order > 2 when one exists, else
/// (3/4, 1/4); either way it is not in I(X).
HeydeInstance kernel_counterexample(const Homomorphism& alpha);

/// M1 = (I + alpha) xi_1 + 2 alpha xi_2 and M2 = 2 xi_1 + (I + alpha) xi_2 are independent.
bool forms_M_independent(const HeydeInstance& inst);

/// mu_j = rho_j * m_K * E_{g_j} with rho_j on the 2-part, K and g_j in the odd part.
struct Prop5Factorization {
  Distribution rho1;
  Distribution rho2;
  Subgroup subgroup;
  Element g1;
  Element g2;
};

/// Splits X = X_2 x G (2-part and odd part). Throws PreconditionError when symmetry fails.
/// Condition (1) is not required: when it fails the factorization may simply not exist.
std::optional<Prop5Factorization> prop5_factorize(const HeydeInstance& inst);

enum class AlphaPolicy {
  kAll,         // every automorphism
  kCondition1,  // only those with Ker(I + alpha) = {0}
};

struct SearchOptions {
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  AlphaPolicy policy = AlphaPolicy::kAll;
  std::size_t shards = 0;  // 0: hardware concurrency
};

struct Candidate {
  std::size_t index;
  HeydeInstance instance;
};

/// Seeded instance from a mixture of families (full-support random, sparse random, Haar
/// shifts, compatible Haar shifts, iid on a random subgroup). Deterministic in (seed, index).
HeydeInstance sample_instance(const FiniteAbelianGroup& g, const std::vector<Homomorphism>& alphas,
                              const std::vector<Subgroup>& subgroups, std::uint64_t seed, std::uint64_t index);

/// Samples `budget` instances and keeps those that are symmetric yet admit no Haar-shift
/// decomposition. The output is ordered by candidate index and identical for any shard count.
std::vector<Candidate> search_counterexamples(const FiniteAbelianGroup& g, const SearchOptions& options);

}  // namespace heyde
