#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "heyde/cyclotomic.hpp"
#include "heyde/group.hpp"
#include "heyde/rational.hpp"

namespace heyde {

/// Exact probability distribution on a finite abelian group, stored densely by element index.
class Distribution {
 public:
  /// Throws InputError unless masses are nonnegative, sized |G|, and sum to exactly 1.
  static Distribution from_masses(FiniteAbelianGroup g, std::vector<Rational> masses);
  /// Accumulates (element, mass) pairs; missing elements get mass 0.
  static Distribution from_points(const FiniteAbelianGroup& g, std::span<const std::pair<Element, Rational>> points);

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<Rational>& masses() const { return masses_; }
  const Rational& mass(const Element& x) const;
  const Rational& mass_at(std::size_t index) const { return masses_[index]; }
  /// Indices with positive mass, ascending.
  std::vector<std::size_t> support() const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  Distribution(FiniteAbelianGroup g, std::vector<Rational> masses) : group_(std::move(g)), masses_(std::move(masses)) {}

  FiniteAbelianGroup group_;
  std::vector<Rational> masses_;
};

/// Characteristic function y -> sum_x mu(x) (x, y), indexed like the (self-dual) carrier.
class CharFunction {
 public:
  CharFunction(FiniteAbelianGroup g, std::vector<CyclotomicValue> values);

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<CyclotomicValue>& values() const { return values_; }
  const CyclotomicValue& value(const Element& y) const;
  const CyclotomicValue& value_at(std::size_t index) const { return values_[index]; }

  friend bool operator==(const CharFunction&, const CharFunction&) = default;

 private:
  FiniteAbelianGroup group_;
  std::vector<CyclotomicValue> values_;
};

/// Uniform distribution m_K on a subgroup.
Distribution haar(const Subgroup& k);
/// E_x.
Distribution degenerate(const FiniteAbelianGroup& g, const Element& x);
Distribution convolve(const Distribution& a, const Distribution& b);
/// mu * E_x.
Distribution shift(const Distribution& mu, const Element& x);
/// B -> mu(-B).
Distribution reflect(const Distribution& mu);
/// Image measure under a homomorphism.
Distribution push_forward(const Distribution& mu, const Homomorphism& f);

CharFunction char_function(const Distribution& mu);

/// Fourier inversion mu(x) = |G|^{-1} sum_y f(y) conj((x, y)). Throws InputError when a mass
/// comes out irrational, negative, or the total is not 1, i.e. f is not a characteristic
/// function of a distribution.
Distribution inverse_char(const CharFunction& f);

/// mu = m_K * E_shift.
struct HaarShift {
  Subgroup subgroup;
  Element shift;
};

/// Decides mu in I(X). The shift returned is the lexicographically smallest in its K-coset.
std::optional<HaarShift> in_I_X(const Distribution& mu);

/// E = {y : mu^(y) = 1}. Throws InvariantError if E is not a subgroup or the support of mu
/// leaves A(X, E).
Subgroup unit_set(const Distribution& mu);

/// Deterministic rational distribution with random support and weights; all masses share a
/// denominator no larger than `denominator_bound`. Throws PreconditionError if the bound is
/// below |G|.
Distribution sample_distribution(const FiniteAbelianGroup& g, std::uint64_t seed, std::int64_t denominator_bound);

}  // namespace heyde
