#include "heyde/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "heyde/error.hpp"

namespace heyde {

namespace {

std::vector<std::int64_t> divide_exact(std::vector<std::int64_t> num, const std::vector<std::int64_t>& den) {
  // den is monic.
  const std::size_t dn = den.size() - 1;
  std::vector<std::int64_t> quot(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const std::int64_t c = num[i];
    quot[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (std::size_t i = 0; i < dn; ++i) {
    if (num[i] != 0) throw InvariantError("cyclotomic polynomial division left a remainder");
  }
  return quot;
}

std::vector<std::int64_t> compute_cyclotomic(std::int64_t n) {
  // x^n - 1 divided by Phi_d for every proper divisor d of n.
  std::vector<std::int64_t> poly(static_cast<std::size_t>(n) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(n)] = 1;
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d == 0) poly = divide_exact(std::move(poly), cyclotomic_polynomial(d));
  }
  return poly;
}

// In-place remainder of a dense coefficient list modulo Phi_N; result has phi(N) entries.
std::vector<Rational> reduce(std::int64_t modulus, std::vector<Rational> coeffs) {
  const auto& phi_poly = cyclotomic_polynomial(modulus);
  const std::size_t deg = phi_poly.size() - 1;
  for (std::size_t i = coeffs.size(); i-- > deg;) {
    if (sgn(coeffs[i]) == 0) continue;
    const Rational c = coeffs[i];
    for (std::size_t j = 0; j < deg; ++j) {
      if (phi_poly[j] != 0) coeffs[i - deg + j] -= c * static_cast<long>(phi_poly[j]);
    }
    coeffs[i] = 0;
  }
  coeffs.resize(deg);
  return coeffs;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(std::int64_t n) {
  if (n < 1) throw InputError("cyclotomic polynomial index must be positive");
  static std::mutex mutex;
  static std::map<std::int64_t, std::vector<std::int64_t>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  std::vector<std::int64_t> poly = n == 1 ? std::vector<std::int64_t>{-1, 1} : compute_cyclotomic(n);
  std::lock_guard lock(mutex);
  // std::map never relocates nodes, so returned references stay valid.
  return cache.emplace(n, std::move(poly)).first->second;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

CyclotomicValue::CyclotomicValue() : modulus_(1), coeffs_(1) {}

CyclotomicValue::CyclotomicValue(std::int64_t modulus, std::vector<Rational> coeffs)
    : modulus_(modulus), coeffs_(std::move(coeffs)) {}

CyclotomicValue CyclotomicValue::zero(std::int64_t modulus) {
  return CyclotomicValue(modulus, std::vector<Rational>(static_cast<std::size_t>(euler_phi(modulus))));
}

CyclotomicValue CyclotomicValue::one(std::int64_t modulus) { return from_rational(modulus, Rational(1)); }

CyclotomicValue CyclotomicValue::from_rational(std::int64_t modulus, const Rational& q) {
  CyclotomicValue v = zero(modulus);
  v.coeffs_[0] = q;
  return v;
}

CyclotomicValue CyclotomicValue::root_of_unity(std::int64_t modulus, std::int64_t k) {
  if (modulus < 1) throw InputError("cyclotomic modulus must be positive");
  std::vector<Rational> c(static_cast<std::size_t>(modulus));
  c[static_cast<std::size_t>(mod_floor(k, modulus))] = 1;
  return CyclotomicValue(modulus, reduce(modulus, std::move(c)));
}

CyclotomicValue CyclotomicValue::from_power_sum(std::int64_t modulus, std::vector<Rational> coeffs) {
  if (modulus < 1) throw InputError("cyclotomic modulus must be positive");
  if (coeffs.size() > static_cast<std::size_t>(modulus)) {
    for (std::size_t i = static_cast<std::size_t>(modulus); i < coeffs.size(); ++i) {
      coeffs[i % static_cast<std::size_t>(modulus)] += coeffs[i];
    }
    coeffs.resize(static_cast<std::size_t>(modulus));
  }
  return CyclotomicValue(modulus, reduce(modulus, std::move(coeffs)));
}

bool CyclotomicValue::is_zero() const {
  for (const auto& c : coeffs_) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

bool CyclotomicValue::is_one() const {
  if (coeffs_[0] != 1) return false;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0) return false;
  }
  return true;
}

std::optional<Rational> CyclotomicValue::as_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0) return std::nullopt;
  }
  return coeffs_[0];
}

CyclotomicValue CyclotomicValue::embed(std::int64_t new_modulus) const {
  if (new_modulus == modulus_) return *this;
  if (new_modulus < 1 || new_modulus % modulus_ != 0) {
    throw InputError("cannot embed Q(zeta_" + std::to_string(modulus_) + ") into Q(zeta_" +
                     std::to_string(new_modulus) + ")");
  }
  const std::int64_t step = new_modulus / modulus_;
  std::vector<Rational> c(static_cast<std::size_t>(new_modulus));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i * static_cast<std::size_t>(step)] = coeffs_[i];
  return CyclotomicValue(new_modulus, reduce(new_modulus, std::move(c)));
}

CyclotomicValue CyclotomicValue::conj() const {
  std::vector<Rational> c(static_cast<std::size_t>(modulus_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    c[static_cast<std::size_t>(mod_floor(-static_cast<std::int64_t>(i), modulus_))] = coeffs_[i];
  }
  return CyclotomicValue(modulus_, reduce(modulus_, std::move(c)));
}

CyclotomicValue CyclotomicValue::abs_squared() const { return *this * conj(); }

CyclotomicValue CyclotomicValue::times_root(std::int64_t k) const {
  std::vector<Rational> c(static_cast<std::size_t>(modulus_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    c[static_cast<std::size_t>(mod_floor(static_cast<std::int64_t>(i) + k, modulus_))] = coeffs_[i];
  }
  return CyclotomicValue(modulus_, reduce(modulus_, std::move(c)));
}

void CyclotomicValue::align_with(CyclotomicValue& other) {
  if (modulus_ == other.modulus_) return;
  if (other.modulus_ % modulus_ == 0) {
    *this = embed(other.modulus_);
  } else if (modulus_ % other.modulus_ == 0) {
    other = other.embed(modulus_);
  } else {
    throw InputError("incompatible cyclotomic moduli " + std::to_string(modulus_) + " and " +
                     std::to_string(other.modulus_));
  }
}

CyclotomicValue& CyclotomicValue::operator+=(const CyclotomicValue& rhs) {
  CyclotomicValue r = rhs;
  align_with(r);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += r.coeffs_[i];
  return *this;
}

CyclotomicValue& CyclotomicValue::operator-=(const CyclotomicValue& rhs) {
  CyclotomicValue r = rhs;
  align_with(r);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= r.coeffs_[i];
  return *this;
}

CyclotomicValue& CyclotomicValue::operator*=(const CyclotomicValue& rhs) {
  if (rhs.modulus_ != modulus_) {
    CyclotomicValue r = rhs;
    align_with(r);
    return *this *= r;
  }
  const std::size_t n = coeffs_.size();
  std::vector<Rational> prod(2 * n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(rhs.coeffs_[j]) == 0) continue;
      prod[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
  }
  coeffs_ = reduce(modulus_, std::move(prod));
  return *this;
}

CyclotomicValue& CyclotomicValue::operator*=(const Rational& rhs) {
  for (auto& c : coeffs_) c *= rhs;
  return *this;
}

CyclotomicValue CyclotomicValue::operator-() const {
  CyclotomicValue v = *this;
  for (auto& c : v.coeffs_) c = -c;
  return v;
}

bool operator==(const CyclotomicValue& a, const CyclotomicValue& b) {
  if (a.modulus_ == b.modulus_) return a.coeffs_ == b.coeffs_;
  CyclotomicValue x = a;
  CyclotomicValue y = b;
  x.align_with(y);
  return x.coeffs_ == y.coeffs_;
}

Rational abs_squared_rational(const CyclotomicValue& a) {
  auto q = a.abs_squared().as_rational();
  if (!q) throw InvariantError("a * conj(a) is not rational: " + to_string(a));
  return *q;
}

std::string to_string(const CyclotomicValue& v) {
  std::ostringstream out;
  bool first = true;
  const auto& c = v.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (sgn(c[i]) == 0) continue;
    if (!first) out << " + ";
    first = false;
    out << c[i].get_str();
    if (i == 1) out << "*z";
    if (i > 1) out << "*z^" << i;
  }
  if (first) out << "0";
  return out.str();
}

}  // namespace heyde
