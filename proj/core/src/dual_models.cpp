#include "heyde/dual_models.hpp"

#include <algorithm>
#include <set>

#include "heyde/error.hpp"
#include "heyde/parallel.hpp"
#include "heyde/random.hpp"

namespace heyde {

namespace {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::int64_t mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

template <class T>
struct Partial {
  std::size_t pairs = 0;
  std::map<std::string, std::size_t> cases;
  std::optional<PairWitness<T>> witness;
  std::optional<PairWitness<T>> case_witness;
};

template <class T>
void merge_into(ModelCheck<T>& out, Partial<T>& part) {
  out.pairs += part.pairs;
  for (const auto& [name, count] : part.cases) out.cases[name] += count;
  if (part.witness && !out.witness) {
    out.holds = false;
    out.witness = std::move(part.witness);
  }
  if (part.case_witness && !out.case_witness) {
    out.cases_hold = false;
    out.case_witness = std::move(part.case_witness);
  }
}

template <class T>
void record(Partial<T>& part, const T& u, const T& v, const char* tag, bool equal, bool claim) {
  ++part.pairs;
  ++part.cases[tag];
  if (!equal && !part.witness) part.witness = PairWitness<T>{u, v};
  if (!claim && !part.case_witness) part.case_witness = PairWitness<T>{u, v};
}

Rational power_fraction(std::int64_t m, std::int64_t base, int n) {
  mpz_class den = 1;
  for (int i = 0; i < n; ++i) den *= base;
  Rational q(mpz_class(static_cast<long>(m)), den);
  q.canonicalize();
  return q;
}

Rational lookup(const std::map<Rational, Rational>& overrides, const Rational& y, const Rational& fallback) {
  const auto it = overrides.find(y);
  return it == overrides.end() ? fallback : it->second;
}

std::int64_t signed_below(Rng& rng, std::int64_t bound) {
  return static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(2 * bound + 1))) - bound;
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// Sequence duals

SequenceDual::SequenceDual(std::int64_t p, std::vector<int> ladder) : p_(p), ladder_(std::move(ladder)) {
  if (p_ == 2 || !is_prime(p_)) throw InputError("p must be an odd prime, got " + std::to_string(p_));
  if (ladder_.empty()) throw InputError("ladder must be nonempty");
  for (std::size_t n = 0; n < ladder_.size(); ++n) {
    if (ladder_[n] < 1) throw InputError("ladder exponents must be positive");
    if (n > 0 && ladder_[n] < ladder_[n - 1]) throw InputError("ladder must be nondecreasing");
    std::int64_t q = 1;
    for (int i = 0; i < ladder_[n]; ++i) {
      if (q > (std::int64_t{1} << 40) / p_) throw InputError("ladder modulus too large");
      q *= p_;
    }
    moduli_.push_back(q);
  }
}

Sequence SequenceDual::normalize(Sequence s) const {
  while (!s.empty() && s.back() == 0) s.pop_back();
  if (s.size() > depth()) throw InputError("sequence longer than the ladder");
  for (std::size_t n = 0; n < s.size(); ++n) {
    if (s[n] < 0 || s[n] >= moduli_[n]) throw InputError("sequence coordinate " + std::to_string(n + 1) + " out of range");
  }
  return s;
}

Sequence SequenceDual::add(const Sequence& a, const Sequence& b) const {
  Sequence out(std::max(a.size(), b.size()), 0);
  for (std::size_t n = 0; n < out.size(); ++n) {
    const std::int64_t x = n < a.size() ? a[n] : 0;
    const std::int64_t y = n < b.size() ? b[n] : 0;
    out[n] = (x + y) % moduli_[n];
  }
  return normalize(std::move(out));
}

Sequence SequenceDual::negate(const Sequence& a) const {
  Sequence out(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) out[n] = mod(-a[n], moduli_[n]);
  return normalize(std::move(out));
}

Sequence SequenceDual::subtract(const Sequence& a, const Sequence& b) const { return add(a, negate(b)); }

FiniteAbelianGroup SequenceDual::level_group(std::size_t m, std::size_t cap) const {
  if (m == 0 || m > depth()) throw InputError("level " + std::to_string(m) + " outside 1.." + std::to_string(depth()));
  const std::vector<std::int64_t> orders(moduli_.begin(), moduli_.begin() + static_cast<std::ptrdiff_t>(m));
  return make_group(orders, cap);
}

Element SequenceDual::to_element(const Sequence& s, std::size_t m) const {
  if (s.size() > m) throw InputError("sequence is not in B_" + std::to_string(m));
  Element e{std::vector<std::int64_t>(m, 0)};
  std::copy(s.begin(), s.end(), e.residues.begin());
  return e;
}

Sequence SequenceDual::from_element(const Element& e) const { return normalize(e.residues); }

Sequence seq_adjoint_apply(const SequenceDual& dual, const Sequence& s) {
  Sequence u(s.size(), 0);
  for (std::size_t n = 0; n < s.size(); ++n) {
    const std::int64_t q = dual.modulus(n);
    const std::int64_t next = n + 1 < s.size() ? s[n + 1] % q : 0;
    u[n] = (next + q - s[n]) % q;
  }
  return dual.normalize(std::move(u));
}

Homomorphism seq_adjoint_on_level(const SequenceDual& dual, std::size_t m, std::size_t cap) {
  const auto g = dual.level_group(m, cap);
  Homomorphism::Matrix a(m, std::vector<std::int64_t>(m, 0));
  for (std::size_t n = 0; n < m; ++n) {
    a[n][n] = dual.modulus(n) - 1;
    if (n + 1 < m) a[n][n + 1] = 1;
  }
  return Homomorphism::from_matrix(g, g, std::move(a));
}

// ---------------------------------------------------------------------------------------------
// Sequence model

Rational Lemma5Model::value(const Sequence& s) const {
  const Sequence t = dual_.normalize(s);
  if (const auto it = overrides_.find(t); it != overrides_.end()) return it->second;
  if (t.empty()) return 1;
  if (dual_.in_base(t)) return Rational(1 - a_);
  return 0;
}

Lemma5Model Lemma5Model::with_value(const Sequence& s, Rational value) const {
  Lemma5Model out = *this;
  out.overrides_[dual_.normalize(s)] = std::move(value);
  return out;
}

Lemma5Model lemma5_model(std::int64_t p, std::vector<int> ladder, const Rational& a) {
  if (sgn(a) <= 0 || a >= 1) throw InputError("a must lie strictly between 0 and 1, got " + to_string(a));
  return Lemma5Model(SequenceDual(p, std::move(ladder)), a);
}

ModelCheck<Sequence> verify_lemma5(const Lemma5Model& model, std::size_t m, std::size_t shards, std::size_t cap) {
  const auto& dual = model.dual();
  const auto g = dual.level_group(m, cap);
  const std::size_t n = g.order();

  std::vector<Sequence> seqs(n);
  std::vector<Rational> f(n);
  std::vector<std::size_t> at(n);
  std::vector<char> base(n);
  for (std::size_t i = 0; i < n; ++i) {
    seqs[i] = dual.from_element(g.element_at(i));
    f[i] = model.value(seqs[i]);
    base[i] = dual.in_base(seqs[i]);
  }
  for (std::size_t i = 0; i < n; ++i) at[i] = g.index_of(dual.to_element(seq_adjoint_apply(dual, seqs[i]), m));

  auto parts = sharded_map(n, shards, [&](std::size_t u) {
    Partial<Sequence> part;
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t upv = g.add_index(u, v), umv = g.subtract_index(u, v);
      const std::size_t upav = g.add_index(u, at[v]), umav = g.subtract_index(u, at[v]);
      const Rational lhs = f[upv] * f[upav];
      const Rational rhs = f[umv] * f[umav];
      const char* tag;
      bool claim;
      if (base[u] && base[v]) {
        tag = "base";
        claim = at[v] == g.negate_index(v);
      } else if (base[u] != base[v]) {
        tag = "mixed";
        claim = sgn(f[upv]) == 0 && sgn(f[umv]) == 0;
      } else {
        tag = "outside";
        claim = sgn(lhs) == 0 && sgn(rhs) == 0;
      }
      record(part, seqs[u], seqs[v], tag, lhs == rhs, claim);
    }
    return part;
  });
  ModelCheck<Sequence> out;
  for (auto& p : parts) merge_into(out, p);
  return out;
}

bool base_recursion_holds(const SequenceDual& dual, std::size_t m, std::size_t cap) {
  const auto g = dual.level_group(m, cap);
  for (std::size_t i = 0; i < g.order(); ++i) {
    const Sequence v = dual.from_element(g.element_at(i));
    if (dual.in_base(dual.subtract(v, seq_adjoint_apply(dual, v))) && !dual.in_base(v)) return false;
  }
  return true;
}

ValueWitness lemma5_not_in_IX(const Lemma5Model& model) {
  const auto& dual = model.dual();
  for (std::int64_t r = 1; r < dual.modulus(0); ++r) {
    const Sequence s{r};
    Rational value = model.value(s);
    if (sgn(value) != 0 && value != 1) return ValueWitness{s, std::move(value)};
  }
  throw InvariantError("characteristic function takes only the values 0 and 1 on Z(p^k_1)");
}

Homomorphism truncated_alpha(std::int64_t p, const std::vector<int>& ladder, std::size_t n, std::size_t cap) {
  const SequenceDual dual(p, ladder);
  const auto g = dual.level_group(n, cap);
  Homomorphism::Matrix a(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    a[i][i] = dual.modulus(i) - 1;
    if (i > 0) a[i][i - 1] = dual.modulus(i) / dual.modulus(i - 1);
  }
  return Homomorphism::from_matrix(g, g, std::move(a));
}

Subgroup truncation_kernel_demo(std::int64_t p, const std::vector<int>& ladder, std::size_t n, std::size_t cap) {
  if (n < 2) throw InputError("truncation needs N >= 2");
  const auto alpha = truncated_alpha(p, ladder, n, cap);
  return kernel(Homomorphism::identity(alpha.source()) + alpha);
}

bool lemma5_positive_on_level(const Lemma5Model& model, std::size_t m) {
  const auto& dual = model.dual();
  const auto g = dual.level_group(m);
  std::vector<CyclotomicValue> values;
  values.reserve(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) {
    values.push_back(CyclotomicValue::from_rational(g.exponent(), model.value(dual.from_element(g.element_at(i)))));
  }
  try {
    inverse_char(CharFunction(g, std::move(values)));
  } catch (const InputError&) {
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------------------------
// Rational duals

RationalDual RationalDual::localized(std::vector<std::int64_t> primes) {
  for (auto p : primes) {
    if (!is_prime(p)) throw InputError("denominator primes must be prime");
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  RationalDual d;
  d.primes_ = std::move(primes);
  return d;
}

RationalDual RationalDual::rationals() {
  RationalDual d;
  d.all_ = true;
  return d;
}

bool RationalDual::contains(const Rational& q) const {
  if (all_) return true;
  mpz_class den = q.get_den();
  for (auto p : primes_) {
    while (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p))) den /= static_cast<unsigned long>(p);
  }
  return den == 1;
}

bool RationalDual::contains_multiple(const Rational& q, std::int64_t k) const {
  if (k == 0) return sgn(q) == 0;
  const Rational r = q / rational(k);
  return contains(r);
}

std::string RationalDual::name() const {
  if (all_) return "Q";
  if (primes_.empty()) return "Z";
  std::string out = "Z[1/";
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (i) out += ",1/";
    out += std::to_string(primes_[i]);
  }
  return out + "]";
}

// ---------------------------------------------------------------------------------------------
// Case 1

Rational Case1Model::value(const Rational& y) const {
  if (sgn(y) == 0) return 1;
  if (y == y0 || y == -y0) return rational(1, 2);
  return 0;
}

Case1Model case1_model(std::int64_t p, const Rational& y0) {
  if (p == 2 || !is_prime(p)) throw InputError("p must be an odd prime, got " + std::to_string(p));
  if (p != 3) throw InputError("on Z[1/2] only p = 3 makes -(p-1) and -(p-2) automorphisms, got " + std::to_string(p));
  auto y = RationalDual::localized({2});
  if (!y.contains(y0)) throw InputError("y0 = " + to_string(y0) + " is not in " + y.name());
  if (y.contains_multiple(y0, p)) throw InputError("y0 = " + to_string(y0) + " lies in " + std::to_string(p) + "Y");
  const Rational two_y0 = 2 * y0;
  if (y.contains_multiple(two_y0, p)) throw InputError("2 y0 lies in " + std::to_string(p) + "Y");
  return Case1Model{p, std::move(y), y0, rational(-(p - 1))};
}

std::vector<Rational> dyadic_grid(std::int64_t grid_m, int grid_n) {
  std::set<Rational> points;
  for (int n = 0; n <= grid_n; ++n) {
    for (std::int64_t m = -grid_m; m <= grid_m; ++m) points.insert(power_fraction(m, 2, n));
  }
  return {points.begin(), points.end()};
}

ModelCheck<Rational> verify_case1_with(const Case1Model& model, const std::map<Rational, Rational>& overrides,
                                       const SampleSpec& spec) {
  const auto f = [&](const Rational& y) { return lookup(overrides, y, model.value(y)); };
  const Rational& at = model.alpha_tilde;
  const auto check = [&](Partial<Rational>& part, const Rational& u, const Rational& v) {
    const Rational av = at * v;
    const Rational upv = u + v, umv = u - v, upav = u + av, umav = u - av;
    const Rational lhs = f(upv) * f(upav);
    const Rational rhs = f(umv) * f(umav);
    if (sgn(v) == 0) {
      record(part, u, v, "v_zero", lhs == rhs, true);
    } else {
      record(part, u, v, "v_nonzero", lhs == rhs, sgn(lhs) == 0 && sgn(rhs) == 0);
    }
  };

  const auto grid = dyadic_grid(spec.grid_m, spec.grid_n);
  auto grid_parts = sharded_map(grid.size(), spec.shards, [&](std::size_t i) {
    Partial<Rational> part;
    for (const auto& v : grid) check(part, grid[i], v);
    return part;
  });
  auto random_parts = sharded_map(spec.random_pairs, spec.shards, [&](std::size_t i) {
    Rng rng(mix_seed(spec.seed, i));
    const auto draw = [&] { return power_fraction(signed_below(rng, 1 << 20), 2, static_cast<int>(uniform_below(rng, 13))); };
    const Rational v = draw();
    Rational u = draw();
    // Aim u + v or u + at v at {0, +-y0} so the nonzero branch of f is exercised.
    const Rational targets[3] = {Rational(0), model.y0, Rational(-model.y0)};
    const Rational& t = targets[uniform_below(rng, 3)];
    switch (uniform_below(rng, 4)) {
      case 0: u = t - v; break;
      case 1: u = t - at * v; break;
      default: break;
    }
    Partial<Rational> part;
    check(part, u, v);
    return part;
  });

  ModelCheck<Rational> out;
  for (auto& p : grid_parts) merge_into(out, p);
  for (auto& p : random_parts) merge_into(out, p);
  return out;
}

ModelCheck<Rational> verify_case1(const Case1Model& model, const SampleSpec& spec) {
  return verify_case1_with(model, {}, spec);
}

// ---------------------------------------------------------------------------------------------
// Case 2

Rational Case2Model::value(const Rational& y) const {
  if (!h.contains(y)) return 0;
  // 5^n is odd, so y lies in 2H exactly when its reduced numerator is even.
  if (mpz_even_p(y.get_num_mpz_t())) return 1;
  return c;
}

Case2Model case2_model(const Rational& c) {
  if (c <= -1 || c >= 1 || sgn(c) == 0) throw InputError("c must satisfy -1 < c < 1 and c != 0, got " + to_string(c));
  return Case2Model{c, RationalDual::localized({5})};
}

std::vector<Rational> case2_grid(std::int64_t grid_m, int grid_n) {
  std::set<Rational> in_h;
  for (int n = 0; n <= grid_n; ++n) {
    for (std::int64_t m = -grid_m; m <= grid_m; ++m) in_h.insert(power_fraction(m, 5, n));
  }
  const auto h = RationalDual::localized({5});
  std::set<Rational> off_h;
  const std::int64_t off_m = std::max<std::int64_t>(1, grid_m / 4);
  for (std::int64_t d : {2, 3, 7}) {
    for (int n = 0; n <= std::min(grid_n, 1); ++n) {
      for (std::int64_t m = -off_m; m <= off_m; ++m) {
        Rational q = power_fraction(m, 5, n) / rational(d);
        if (!h.contains(q)) off_h.insert(std::move(q));
      }
    }
  }
  std::vector<Rational> out(in_h.begin(), in_h.end());
  out.insert(out.end(), off_h.begin(), off_h.end());
  return out;
}

ModelCheck<Rational> verify_case2_with(const Case2Model& model, const std::map<Rational, Rational>& overrides,
                                       const SampleSpec& spec) {
  const auto f = [&](const Rational& y) { return lookup(overrides, y, model.value(y)); };
  const auto check = [&](Partial<Rational>& part, const Rational& u, const Rational& v) {
    const Rational four_v = 4 * v;
    const Rational upv = u + v, umv = u - v, up4v = u + four_v, um4v = u - four_v;
    const Rational fpv = f(upv), fmv = f(umv);
    const Rational lhs = f(up4v) * fmv;
    const Rational rhs = f(um4v) * fpv;
    const bool uh = model.h.contains(u), vh = model.h.contains(v);
    if (uh && vh) {
      record(part, u, v, "both_in_H", lhs == rhs, true);
    } else if (uh != vh) {
      record(part, u, v, "mixed", lhs == rhs, sgn(fpv) == 0 && sgn(fmv) == 0);
    } else {
      record(part, u, v, "both_outside", lhs == rhs, sgn(lhs) == 0 && sgn(rhs) == 0);
    }
  };

  const auto grid = case2_grid(spec.grid_m, spec.grid_n);
  auto grid_parts = sharded_map(grid.size(), spec.shards, [&](std::size_t i) {
    Partial<Rational> part;
    for (const auto& v : grid) check(part, grid[i], v);
    return part;
  });
  auto random_parts = sharded_map(spec.random_pairs, spec.shards, [&](std::size_t i) {
    Rng rng(mix_seed(spec.seed, i));
    const auto draw = [&]() -> Rational {
      const std::int64_t m = signed_below(rng, 10'000);
      const int n = static_cast<int>(uniform_below(rng, 9));
      if (uniform_below(rng, 2) == 0) return power_fraction(m, 5, n);
      const std::int64_t dens[3] = {2, 3, 7};
      return power_fraction(m, 5, n) / rational(dens[uniform_below(rng, 3)]);
    };
    const Rational v = draw();
    Rational u = draw();
    // Steer one factor into H so that the nonvanishing branches are reached off H too.
    switch (uniform_below(rng, 4)) {
      case 0: u = power_fraction(signed_below(rng, 10'000), 5, static_cast<int>(uniform_below(rng, 9))) - 4 * v; break;
      case 1: u = power_fraction(signed_below(rng, 10'000), 5, static_cast<int>(uniform_below(rng, 9))) + v; break;
      default: break;
    }
    Partial<Rational> part;
    check(part, u, v);
    return part;
  });

  ModelCheck<Rational> out;
  for (auto& p : grid_parts) merge_into(out, p);
  for (auto& p : random_parts) merge_into(out, p);
  return out;
}

ModelCheck<Rational> verify_case2(const Case2Model& model, const SampleSpec& spec) {
  return verify_case2_with(model, {}, spec);
}

Distribution case2_quotient_law(const Case2Model& model) {
  const auto z2 = make_group({2});
  std::vector<CyclotomicValue> values{CyclotomicValue::from_rational(2, Rational(1)),
                                      CyclotomicValue::from_rational(2, model.c)};
  return inverse_char(CharFunction(z2, std::move(values)));
}

// ---------------------------------------------------------------------------------------------
// Gamma(X) * I(X) and positive definiteness

bool gamma_I_violation(const Rational& f_y, const Rational& f_2y) {
  if (sgn(f_y) == 0) return false;
  if (sgn(f_2y) == 0) return true;
  const Rational m = abs(f_y);
  const Rational m2 = m * m;
  const Rational m4 = m2 * m2;
  return abs(f_2y) != m4;
}

bool gamma_I_violation(const Lemma5Model& model, const Sequence& y) {
  const auto& d = model.dual();
  return gamma_I_violation(model.value(y), model.value(d.add(y, y)));
}

bool gamma_I_violation(const Case1Model& model, const Rational& y) {
  const Rational y2 = 2 * y;
  return gamma_I_violation(model.value(y), model.value(y2));
}

bool gamma_I_violation(const Case2Model& model, const Rational& y) {
  const Rational y2 = 2 * y;
  return gamma_I_violation(model.value(y), model.value(y2));
}

bool positive_semidefinite(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k) {
    const int s = sgn(m[k][k]);
    if (s < 0) return false;
    if (s == 0) {
      for (std::size_t j = k + 1; j < n; ++j) {
        if (sgn(m[k][j]) != 0) return false;
      }
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(m[i][k]) == 0) continue;
      const Rational factor = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= factor * m[k][j];
    }
  }
  return true;
}

namespace {

template <class F>
bool gram_psd(const std::vector<Rational>& points, F f) {
  std::vector<std::vector<Rational>> m(points.size(), std::vector<Rational>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      const Rational d = points[i] - points[j];
      m[i][j] = f(d);
    }
  }
  return positive_semidefinite(std::move(m));
}

}  // namespace

bool case1_gram_psd(const Case1Model& model, std::int64_t grid_m, int grid_n) {
  return gram_psd(dyadic_grid(grid_m, grid_n), [&](const Rational& y) { return model.value(y); });
}

bool case2_gram_psd(const Case2Model& model, std::int64_t grid_m, int grid_n) {
  return gram_psd(case2_grid(grid_m, grid_n), [&](const Rational& y) { return model.value(y); });
}

}  // namespace heyde
