#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heyde/distribution.hpp"
#include "heyde/group.hpp"
#include "heyde/rational.hpp"

namespace heyde {

/// Finitely supported sequence (s_1, s_2, ...), stored without trailing zeros.
using Sequence = std::vector<std::int64_t>;

/// Weak direct product of Z(p^{k_1}), Z(p^{k_2}), ... cut off after ladder.size() coordinates.
/// B_m is the subgroup of sequences vanishing after coordinate m.
class SequenceDual {
 public:
  /// Throws InputError unless p is an odd prime and the ladder is nonempty, positive and
  /// nondecreasing.
  SequenceDual(std::int64_t p, std::vector<int> ladder);

  std::int64_t prime() const { return p_; }
  const std::vector<int>& ladder() const { return ladder_; }
  std::size_t depth() const { return ladder_.size(); }
  /// p^{k_n}, n zero-based.
  std::int64_t modulus(std::size_t n) const { return moduli_[n]; }

  /// Trims trailing zeros; throws InputError on a residue out of range or a sequence longer
  /// than the ladder.
  Sequence normalize(Sequence s) const;
  Sequence add(const Sequence& a, const Sequence& b) const;
  Sequence negate(const Sequence& a) const;
  Sequence subtract(const Sequence& a, const Sequence& b) const;
  /// Smallest m with s in B_m.
  std::size_t level_of(const Sequence& s) const { return s.size(); }
  /// s in Z(p^{k_1}), i.e. s_2 = s_3 = ... = 0.
  bool in_base(const Sequence& s) const { return s.size() <= 1; }

  /// B_m as a finite group; element residues are the first m coordinates.
  FiniteAbelianGroup level_group(std::size_t m, std::size_t cap = kDefaultCap) const;
  Element to_element(const Sequence& s, std::size_t m) const;
  Sequence from_element(const Element& e) const;

 private:
  std::int64_t p_;
  std::vector<int> ladder_;
  std::vector<std::int64_t> moduli_;
};

/// u_n = (s_{n+1} mod p^{k_n} + p^{k_n} - s_n) mod p^{k_n}.
Sequence seq_adjoint_apply(const SequenceDual& dual, const Sequence& s);

/// The same map restricted to B_m, as a matrix homomorphism.
Homomorphism seq_adjoint_on_level(const SequenceDual& dual, std::size_t m, std::size_t cap = kDefaultCap);

/// mu = a m_X + (1 - a) m_G on the product of Z(p^{k_n}); f is 1 at 0, 1 - a on
/// Z(p^{k_1}) \ {0} and 0 elsewhere. Single values can be overridden to build mutants.
class Lemma5Model {
 public:
  Lemma5Model(SequenceDual dual, Rational a) : dual_(std::move(dual)), a_(std::move(a)) {}

  const SequenceDual& dual() const { return dual_; }
  const Rational& a() const { return a_; }
  Rational value(const Sequence& s) const;
  Lemma5Model with_value(const Sequence& s, Rational value) const;
  bool mutated() const { return !overrides_.empty(); }

 private:
  SequenceDual dual_;
  Rational a_;
  std::map<Sequence, Rational> overrides_;
};

/// Throws InputError when p is not an odd prime, a is outside (0, 1) or the ladder is not
/// nondecreasing.
Lemma5Model lemma5_model(std::int64_t p, std::vector<int> ladder, const Rational& a);

template <class T>
struct PairWitness {
  T u;
  T v;
};

/// Result of checking a functional equation on sampled pairs of a dual group.
template <class T>
struct ModelCheck {
  bool holds = true;
  std::optional<PairWitness<T>> witness;       // first failing pair in sample order
  std::size_t pairs = 0;
  std::map<std::string, std::size_t> cases;    // pairs per case of the proof
  bool cases_hold = true;                      // each case's claimed behaviour was observed
  std::optional<PairWitness<T>> case_witness;  // first pair breaking its case's claim
};

/// f(u+v) f(u + at v) = f(u-v) f(u - at v) on B_m x B_m. Cases: "base" (u, v in Z(p^{k_1}),
/// where at v = -v), "mixed" (f(u +- v) = 0), "outside" (both sides 0).
/// Throws InputError when m is 0, exceeds the ladder, or |B_m| exceeds the cap.
ModelCheck<Sequence> verify_lemma5(const Lemma5Model& model, std::size_t m, std::size_t shards = 0,
                                   std::size_t cap = kDefaultCap);

/// For every v in B_m: (I - at) v in Z(p^{k_1}) implies v in Z(p^{k_1}).
bool base_recursion_holds(const SequenceDual& dual, std::size_t m, std::size_t cap = kDefaultCap);

struct ValueWitness {
  Sequence point;
  Rational value;
};

/// First point of B_1 where f takes a value outside {0, 1}. Throws InvariantError if none.
ValueWitness lemma5_not_in_IX(const Lemma5Model& model);

/// alpha on Z(p^{k_1}) x ... x Z(p^{k_N}): h_1 = -t_1, h_n = p^{k_n - k_{n-1}} t_{n-1} - t_n.
Homomorphism truncated_alpha(std::int64_t p, const std::vector<int>& ladder, std::size_t n,
                             std::size_t cap = 1'000'000);

/// Ker(I + alpha_N). Throws InputError when N < 2 or N exceeds the ladder.
Subgroup truncation_kernel_demo(std::int64_t p, const std::vector<int>& ladder, std::size_t n,
                                std::size_t cap = 1'000'000);

/// f restricted to B_m inverts to a nonnegative mass function.
bool lemma5_positive_on_level(const Lemma5Model& model, std::size_t m);

/// Subgroup of Q of fractions whose reduced denominators use only the given primes; with
/// `all` set, Q itself.
class RationalDual {
 public:
  static RationalDual localized(std::vector<std::int64_t> primes);
  static RationalDual rationals();

  const std::vector<std::int64_t>& primes() const { return primes_; }
  bool is_all() const { return all_; }
  bool contains(const Rational& q) const;
  /// q in kY.
  bool contains_multiple(const Rational& q, std::int64_t k) const;
  std::string name() const;

 private:
  std::vector<std::int64_t> primes_;
  bool all_ = false;
};

/// Y = Z[1/2], at = -(p - 1), f = 1 at 0, 1/2 at +-y0, 0 elsewhere.
struct Case1Model {
  std::int64_t p;
  RationalDual dual;
  Rational y0;
  Rational alpha_tilde;

  Rational value(const Rational& y) const;
};

/// Throws InputError unless p = 3 (the only odd prime for which -(p-1) and -(p-2) act
/// invertibly on Z[1/2]), y0 in Y, y0 and 2 y0 outside pY.
Case1Model case1_model(std::int64_t p, const Rational& y0);

/// Y = Q carrier with H = {m / 5^n}; f = 1 on 2H, c on H \ 2H, 0 off H.
struct Case2Model {
  Rational c;
  RationalDual h;

  Rational value(const Rational& y) const;
};

/// Throws InputError unless -1 < c < 1 and c != 0.
Case2Model case2_model(const Rational& c);

struct SampleSpec {
  std::int64_t grid_m = 64;
  int grid_n = 6;
  std::size_t random_pairs = 10'000;
  std::uint64_t seed = 0;
  std::size_t shards = 0;
};

/// Grid {m / 2^n : |m| <= M, n <= n_max} (deduplicated, sorted).
std::vector<Rational> dyadic_grid(std::int64_t grid_m, int grid_n);
/// Grid {m / 5^n} followed by off-H points m / (d 5^n), d in {2, 3, 7}.
std::vector<Rational> case2_grid(std::int64_t grid_m, int grid_n);

/// f(u+v) f(u + at v) = f(u-v) f(u - at v) on grid x grid plus seeded random pairs.
/// Cases: "v_zero", "v_nonzero" (both sides 0).
ModelCheck<Rational> verify_case1(const Case1Model& model, const SampleSpec& spec);
/// Same, with a caller-chosen value function standing in for f; used for mutation tests.
ModelCheck<Rational> verify_case1_with(const Case1Model& model, const std::map<Rational, Rational>& overrides,
                                       const SampleSpec& spec);

/// f(u+4v) f(u-v) = f(u-4v) f(u+v) on the grid plus seeded random pairs.
/// Cases: "both_in_H", "mixed" (f(u +- v) = 0), "both_outside" (both sides 0).
ModelCheck<Rational> verify_case2(const Case2Model& model, const SampleSpec& spec);
ModelCheck<Rational> verify_case2_with(const Case2Model& model, const std::map<Rational, Rational>& overrides,
                                       const SampleSpec& spec);

/// f(y) != 0 and (|f(2y)| != |f(y)|^4 or f(2y) = 0): a point ruling out membership in
/// Gamma(X) * I(X).
bool gamma_I_violation(const Rational& f_y, const Rational& f_2y);
bool gamma_I_violation(const Lemma5Model& model, const Sequence& y);
bool gamma_I_violation(const Case1Model& model, const Rational& y);
bool gamma_I_violation(const Case2Model& model, const Rational& y);

/// Exact positive-semidefiniteness of a symmetric rational matrix.
bool positive_semidefinite(std::vector<std::vector<Rational>> m);

/// Gram matrices [f(y_i - y_j)] on a small grid are positive semidefinite.
bool case1_gram_psd(const Case1Model& model, std::int64_t grid_m, int grid_n);
bool case2_gram_psd(const Case2Model& model, std::int64_t grid_m, int grid_n);

/// g factors through H / 2H = Z(2); its inverse transform there.
Distribution case2_quotient_law(const Case2Model& model);

}  // namespace heyde
