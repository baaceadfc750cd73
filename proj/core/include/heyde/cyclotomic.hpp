#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heyde/rational.hpp"

namespace heyde {

/// Coefficients of the N-th cyclotomic polynomial, lowest degree first (monic, degree phi(N)).
/// Cached per N; safe to call from several threads.
const std::vector<std::int64_t>& cyclotomic_polynomial(std::int64_t n);

/// Euler's totient.
std::int64_t euler_phi(std::int64_t n);

/// An exact element of Q(zeta_N), zeta_N = exp(2*pi*i/N).
///
/// The representation is the remainder modulo the N-th cyclotomic polynomial: exactly
/// phi(N) rational coefficients of 1, z, ..., z^{phi(N)-1}. It is unique, so equality of
/// values is equality of coefficient vectors. Values with different moduli are combined by
/// embedding the smaller field when one modulus divides the other.
class CyclotomicValue {
 public:
  /// Zero in Q (modulus 1).
  CyclotomicValue();

  static CyclotomicValue zero(std::int64_t modulus);
  static CyclotomicValue one(std::int64_t modulus);
  static CyclotomicValue from_rational(std::int64_t modulus, const Rational& q);
  /// zeta_N^k for any integer k.
  static CyclotomicValue root_of_unity(std::int64_t modulus, std::int64_t k);
  /// Reduces sum_k c_k zeta_N^k for an arbitrary-length coefficient list (indices taken mod N).
  static CyclotomicValue from_power_sum(std::int64_t modulus, std::vector<Rational> coeffs);

  std::int64_t modulus() const { return modulus_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  /// The value as a rational when it lies in Q.
  std::optional<Rational> as_rational() const;

  /// Same value in Q(zeta_M); M must be a multiple of the current modulus.
  CyclotomicValue embed(std::int64_t new_modulus) const;

  CyclotomicValue conj() const;
  /// a * conj(a).
  CyclotomicValue abs_squared() const;
  /// a * zeta_N^k without a general multiplication.
  CyclotomicValue times_root(std::int64_t k) const;

  CyclotomicValue& operator+=(const CyclotomicValue& rhs);
  CyclotomicValue& operator-=(const CyclotomicValue& rhs);
  CyclotomicValue& operator*=(const CyclotomicValue& rhs);
  CyclotomicValue& operator*=(const Rational& rhs);

  friend CyclotomicValue operator+(CyclotomicValue a, const CyclotomicValue& b) { return a += b; }
  friend CyclotomicValue operator-(CyclotomicValue a, const CyclotomicValue& b) { return a -= b; }
  friend CyclotomicValue operator*(CyclotomicValue a, const CyclotomicValue& b) { return a *= b; }
  friend CyclotomicValue operator*(CyclotomicValue a, const Rational& b) { return a *= b; }
  friend CyclotomicValue operator*(const Rational& b, CyclotomicValue a) { return a *= b; }
  CyclotomicValue operator-() const;

  /// Equality of field elements; embeds into the larger modulus when one divides the other.
  friend bool operator==(const CyclotomicValue& a, const CyclotomicValue& b);

 private:
  CyclotomicValue(std::int64_t modulus, std::vector<Rational> coeffs);
  void align_with(CyclotomicValue& other);

  std::int64_t modulus_ = 1;
  std::vector<Rational> coeffs_;
};

/// Free-function spellings of the field operations.
inline CyclotomicValue cyc_add(const CyclotomicValue& a, const CyclotomicValue& b) { return a + b; }
inline CyclotomicValue cyc_mul(const CyclotomicValue& a, const CyclotomicValue& b) { return a * b; }
inline CyclotomicValue cyc_conj(const CyclotomicValue& a) { return a.conj(); }
inline bool cyc_eq(const CyclotomicValue& a, const CyclotomicValue& b) { return a == b; }
inline CyclotomicValue abs_squared(const CyclotomicValue& a) { return a.abs_squared(); }
/// |a|^2 as a rational. Throws InvariantError if a * conj(a) is irrational (e.g. |1 + z|^2 in Q(zeta_5)).
Rational abs_squared_rational(const CyclotomicValue& a);

/// Debug rendering "a0 + a1*z + a2*z^2 ..." with z = zeta_N.
std::string to_string(const CyclotomicValue& v);

}  // namespace heyde
