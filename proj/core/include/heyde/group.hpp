#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "heyde/cyclotomic.hpp"

namespace heyde {

/// Largest group order accepted by default. Exhaustive checks are quadratic in |G|.
inline constexpr std::size_t kDefaultCap = 10'000;

/// Residue vector (t_1, ..., t_r) with 0 <= t_i < n_i. Ordered lexicographically.
struct Element {
  std::vector<std::int64_t> residues;

  friend auto operator<=>(const Element&, const Element&) = default;
};

std::string to_string(const Element& x);

/// Z(n_1) x ... x Z(n_r) with every n_i a prime power, factors sorted by (prime, order).
///
/// Elements and characters share this carrier: the character y acts by
/// (x, y) = exp(2*pi*i * sum_j x_j y_j / n_j). Elements have a dense index in [0, |G|) whose
/// order agrees with the lexicographic order of residue vectors.
class FiniteAbelianGroup {
 public:
  /// The trivial group.
  FiniteAbelianGroup() = default;

  const std::vector<std::int64_t>& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  std::int64_t exponent() const { return exponent_; }
  std::size_t order() const { return order_; }

  Element zero() const;
  bool contains(const Element& x) const;
  /// Throws InputError when x is not a reduced residue vector of this group.
  void require(const Element& x) const;

  std::size_t index_of(const Element& x) const;
  Element element_at(std::size_t index) const;

  Element add(const Element& a, const Element& b) const;
  Element negate(const Element& a) const;
  Element subtract(const Element& a, const Element& b) const;
  Element multiply(std::int64_t k, const Element& a) const;
  std::int64_t element_order(const Element& a) const;

  std::size_t add_index(std::size_t a, std::size_t b) const;
  std::size_t negate_index(std::size_t a) const;
  std::size_t subtract_index(std::size_t a, std::size_t b) const;

  /// k in [0, N) with (x, y) = zeta_N^k, N the exponent.
  std::int64_t pairing_exponent(const Element& x, const Element& y) const;
  std::int64_t pairing_exponent_index(std::size_t x, std::size_t y) const;

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

 private:
  friend FiniteAbelianGroup make_group(std::span<const std::int64_t>, std::size_t);

  std::vector<std::int64_t> factors_;
  std::vector<std::size_t> strides_;
  std::int64_t exponent_ = 1;
  std::size_t order_ = 1;
};

/// Prime p with n = p^k, k >= 1; empty otherwise.
std::optional<std::int64_t> prime_of_prime_power(std::int64_t n);

/// Canonical group from a list of prime-power orders (any order). Throws InputError on a
/// non-prime-power order or when the group order exceeds `cap`.
FiniteAbelianGroup make_group(std::span<const std::int64_t> orders, std::size_t cap = kDefaultCap);
FiniteAbelianGroup make_group(std::initializer_list<std::int64_t> orders, std::size_t cap = kDefaultCap);

/// Parses "Z3", "Z9xZ3", "Z(27)xZ(5)" (case-insensitive, parentheses optional).
FiniteAbelianGroup parse_group_spec(std::string_view spec, std::size_t cap = kDefaultCap);

/// "Z3xZ9"; the trivial group renders as "Z1".
std::string to_string(const FiniteAbelianGroup& g);

/// The value of character y at x, as a root of unity in Q(zeta_N).
CyclotomicValue pairing(const FiniteAbelianGroup& g, const Element& x, const Element& y);

/// True iff some factor has even order.
bool has_order2_elements(const FiniteAbelianGroup& g);

/// A subgroup stored as its sorted member indices together with a generating set.
class Subgroup {
 public:
  const FiniteAbelianGroup& parent() const { return parent_; }
  const std::vector<std::size_t>& member_indices() const { return members_; }
  std::vector<Element> members() const;
  const std::vector<Element>& generators() const { return generators_; }
  std::size_t order() const { return members_.size(); }
  bool contains(const Element& x) const;
  bool contains_index(std::size_t index) const;
  bool is_trivial() const { return members_.size() == 1; }
  bool is_whole() const { return members_.size() == parent_.order(); }

  /// Membership and parent agree; generators are a witness only.
  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.members_ == b.members_;
  }

  /// Validates closure; empty when `indices` is not a subgroup.
  static std::optional<Subgroup> from_members(const FiniteAbelianGroup& g, std::vector<std::size_t> indices);

 private:
  friend Subgroup subgroup_from_generators(const FiniteAbelianGroup&, std::span<const Element>);
  Subgroup(FiniteAbelianGroup parent, std::vector<std::size_t> members, std::vector<Element> generators);

  FiniteAbelianGroup parent_;
  std::vector<std::size_t> members_;
  std::vector<Element> generators_;
};

Subgroup subgroup_from_generators(const FiniteAbelianGroup& g, std::span<const Element> gens);
Subgroup trivial_subgroup(const FiniteAbelianGroup& g);
Subgroup whole_group(const FiniteAbelianGroup& g);

/// Every subgroup exactly once, ordered by (order, member list).
std::vector<Subgroup> enumerate_subgroups(const FiniteAbelianGroup& g);

/// A(Y, K) = {y : (x, y) = 1 for all x in K}, in the same carrier.
Subgroup annihilator(const Subgroup& k);

/// Homomorphism given by an integer matrix: target coordinate i is sum_j A[i][j] * t_j mod m_i.
/// Rows index target factors, columns source factors. Entries are reduced mod m_i, and each
/// must satisfy A[i][j] * n_j == 0 mod m_i so that the coordinate map is well defined.
class Homomorphism {
 public:
  using Matrix = std::vector<std::vector<std::int64_t>>;

  /// Throws InputError on a shape mismatch or an ill-defined entry.
  static Homomorphism from_matrix(FiniteAbelianGroup source, FiniteAbelianGroup target, Matrix matrix);
  static Homomorphism identity(const FiniteAbelianGroup& g);
  /// x -> k x.
  static Homomorphism scalar(const FiniteAbelianGroup& g, std::int64_t k);
  static Homomorphism zero(const FiniteAbelianGroup& source, const FiniteAbelianGroup& target);

  const FiniteAbelianGroup& source() const { return source_; }
  const FiniteAbelianGroup& target() const { return target_; }
  const Matrix& matrix() const { return matrix_; }
  bool is_endomorphism() const { return source_ == target_; }

  Element apply(const Element& x) const;
  std::size_t apply_index(std::size_t x) const;
  /// apply_index for every source index.
  std::vector<std::size_t> table() const;

  friend bool operator==(const Homomorphism&, const Homomorphism&) = default;

 private:
  Homomorphism(FiniteAbelianGroup source, FiniteAbelianGroup target, Matrix matrix);

  FiniteAbelianGroup source_;
  FiniteAbelianGroup target_;
  Matrix matrix_;
};

/// outer o inner.
Homomorphism compose(const Homomorphism& outer, const Homomorphism& inner);
Homomorphism operator+(const Homomorphism& a, const Homomorphism& b);
Homomorphism operator-(const Homomorphism& a, const Homomorphism& b);
Homomorphism operator-(const Homomorphism& a);

/// The unique map with (alpha x, y) = (x, adjoint(alpha) y). For alpha: X1 -> X2 the adjoint
/// runs X2 -> X1 (each group serving as its own dual).
Homomorphism adjoint(const Homomorphism& alpha);

/// Exhaustive check of the adjoint identity over all (x, y). Pairings in different groups are
/// compared as exact phases.
bool verify_adjoint(const Homomorphism& alpha, const Homomorphism& alpha_tilde);

Subgroup kernel(const Homomorphism& alpha);
Subgroup image(const Homomorphism& alpha);
/// alpha(K) for a subgroup K of the source.
Subgroup image_of(const Homomorphism& alpha, const Subgroup& k);

/// Endomorphism with full image.
bool is_automorphism(const Homomorphism& alpha);

/// All automorphisms, in lexicographic order of their matrices (row-major).
/// Throws InputError if the number of candidate matrices exceeds `max_candidates`.
std::vector<Homomorphism> enumerate_automorphisms(const FiniteAbelianGroup& g,
                                                  std::uint64_t max_candidates = 50'000'000);

/// Ker(I + alpha) = {0}. Throws PreconditionError if alpha is not an automorphism.
bool condition_1_holds(const Homomorphism& alpha);

}  // namespace heyde
