#include "heyde/distribution.hpp"

#include <algorithm>
#include <numeric>

#include "heyde/error.hpp"
#include "heyde/random.hpp"

namespace heyde {

Distribution Distribution::from_masses(FiniteAbelianGroup g, std::vector<Rational> masses) {
  if (masses.size() != g.order()) {
    throw InputError("distribution on " + to_string(g) + " needs " + std::to_string(g.order()) + " masses");
  }
  Rational total = 0;
  for (const auto& m : masses) {
    if (sgn(m) < 0) throw InputError("negative mass " + to_string(m));
    total += m;
  }
  if (total != 1) throw InputError("masses sum to " + to_string(total) + ", not 1");
  return Distribution(std::move(g), std::move(masses));
}

Distribution Distribution::from_points(const FiniteAbelianGroup& g, std::span<const std::pair<Element, Rational>> points) {
  std::vector<Rational> masses(g.order());
  for (const auto& [x, p] : points) {
    g.require(x);
    masses[g.index_of(x)] += p;
  }
  return from_masses(g, std::move(masses));
}

const Rational& Distribution::mass(const Element& x) const {
  group_.require(x);
  return masses_[group_.index_of(x)];
}

std::vector<std::size_t> Distribution::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    if (sgn(masses_[i]) > 0) s.push_back(i);
  }
  return s;
}

CharFunction::CharFunction(FiniteAbelianGroup g, std::vector<CyclotomicValue> values)
    : group_(std::move(g)), values_(std::move(values)) {
  if (values_.size() != group_.order()) throw InputError("characteristic function has the wrong number of values");
}

const CyclotomicValue& CharFunction::value(const Element& y) const {
  group_.require(y);
  return values_[group_.index_of(y)];
}

Distribution haar(const Subgroup& k) {
  std::vector<Rational> masses(k.parent().order());
  const Rational w = rational(1, static_cast<std::int64_t>(k.order()));
  for (std::size_t i : k.member_indices()) masses[i] = w;
  return Distribution::from_masses(k.parent(), std::move(masses));
}

Distribution degenerate(const FiniteAbelianGroup& g, const Element& x) {
  g.require(x);
  std::vector<Rational> masses(g.order());
  masses[g.index_of(x)] = 1;
  return Distribution::from_masses(g, std::move(masses));
}

Distribution convolve(const Distribution& a, const Distribution& b) {
  if (!(a.group() == b.group())) throw InputError("convolve: distributions live on different groups");
  const auto& g = a.group();
  std::vector<Rational> out(g.order());
  const auto sb = b.support();
  for (std::size_t x : a.support()) {
    for (std::size_t y : sb) out[g.add_index(x, y)] += a.mass_at(x) * b.mass_at(y);
  }
  return Distribution::from_masses(g, std::move(out));
}

Distribution shift(const Distribution& mu, const Element& x) { return convolve(mu, degenerate(mu.group(), x)); }

Distribution reflect(const Distribution& mu) {
  const auto& g = mu.group();
  std::vector<Rational> out(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) out[g.negate_index(x)] = mu.mass_at(x);
  return Distribution::from_masses(g, std::move(out));
}

Distribution push_forward(const Distribution& mu, const Homomorphism& f) {
  if (!(f.source() == mu.group())) throw InputError("push_forward: homomorphism source differs from the group");
  std::vector<Rational> out(f.target().order());
  for (std::size_t x : mu.support()) out[f.apply_index(x)] += mu.mass_at(x);
  return Distribution::from_masses(f.target(), std::move(out));
}

CharFunction char_function(const Distribution& mu) {
  const auto& g = mu.group();
  const std::int64_t n = g.exponent();
  const auto support = mu.support();
  std::vector<CyclotomicValue> values;
  values.reserve(g.order());
  std::vector<Rational> acc(static_cast<std::size_t>(n));
  for (std::size_t y = 0; y < g.order(); ++y) {
    std::fill(acc.begin(), acc.end(), Rational(0));
    for (std::size_t x : support) acc[static_cast<std::size_t>(g.pairing_exponent_index(x, y))] += mu.mass_at(x);
    values.push_back(CyclotomicValue::from_power_sum(n, acc));
  }
  return CharFunction(g, std::move(values));
}

Distribution inverse_char(const CharFunction& f) {
  const auto& g = f.group();
  const std::int64_t n = g.exponent();
  const Rational scale = rational(1, static_cast<std::int64_t>(g.order()));
  std::vector<Rational> masses(g.order());
  std::vector<Rational> acc(static_cast<std::size_t>(n));
  for (std::size_t x = 0; x < g.order(); ++x) {
    // sum_y f(y) zeta^{-k(x,y)}: accumulate each value's power-basis coefficients rotated.
    std::fill(acc.begin(), acc.end(), Rational(0));
    for (std::size_t y = 0; y < g.order(); ++y) {
      const auto& v = f.value_at(y);
      if (v.modulus() != n) throw InputError("characteristic function value outside Q(zeta_N)");
      const std::int64_t shift_by = n - g.pairing_exponent_index(x, y);
      const auto& c = v.coefficients();
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (sgn(c[i]) != 0) acc[(i + static_cast<std::size_t>(shift_by)) % static_cast<std::size_t>(n)] += c[i];
      }
    }
    auto q = CyclotomicValue::from_power_sum(n, acc).as_rational();
    if (!q) throw InputError("inverse transform is not rational at " + to_string(g.element_at(x)));
    masses[x] = *q * scale;
    if (sgn(masses[x]) < 0) throw InputError("inverse transform is negative at " + to_string(g.element_at(x)));
  }
  return Distribution::from_masses(g, std::move(masses));
}

std::optional<HaarShift> in_I_X(const Distribution& mu) {
  const auto& g = mu.group();
  const auto f = char_function(mu);
  const std::int64_t n = g.exponent();

  // |mu^(y)|^2 is 1 exactly on E; mu^ must vanish elsewhere.
  std::vector<std::size_t> e;
  for (std::size_t y = 0; y < g.order(); ++y) {
    const auto& v = f.value_at(y);
    if (v.is_zero()) continue;
    if (!v.abs_squared().is_one()) return std::nullopt;
    e.push_back(y);
  }
  auto unit_group = Subgroup::from_members(g, e);
  if (!unit_group) return std::nullopt;

  // On E each value is a root of unity zeta^k; the shift x must satisfy k(x, y) = k_y.
  std::vector<CyclotomicValue> roots;
  roots.reserve(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) roots.push_back(CyclotomicValue::root_of_unity(n, k));
  std::vector<std::int64_t> phase;
  for (std::size_t y : e) {
    const auto& v = f.value_at(y);
    auto it = std::find(roots.begin(), roots.end(), v);
    if (it == roots.end()) return std::nullopt;
    phase.push_back(it - roots.begin());
  }
  for (std::size_t x = 0; x < g.order(); ++x) {
    bool match = true;
    for (std::size_t i = 0; i < e.size() && match; ++i) match = g.pairing_exponent_index(x, e[i]) == phase[i];
    if (!match) continue;
    Subgroup k = annihilator(*unit_group);
    Element shift_by = g.element_at(x);
    if (!(shift(haar(k), shift_by) == mu)) throw InvariantError("in_I_X reconstruction mismatch");
    return HaarShift{std::move(k), std::move(shift_by)};
  }
  return std::nullopt;
}

Subgroup unit_set(const Distribution& mu) {
  const auto& g = mu.group();
  const auto f = char_function(mu);
  std::vector<std::size_t> e;
  for (std::size_t y = 0; y < g.order(); ++y) {
    if (f.value_at(y).is_one()) e.push_back(y);
  }
  auto unit_group = Subgroup::from_members(g, std::move(e));
  if (!unit_group) throw InvariantError("unit set of a characteristic function is not a subgroup");
  const Subgroup support_bound = annihilator(*unit_group);
  for (std::size_t x : mu.support()) {
    if (!support_bound.contains_index(x)) throw InvariantError("support leaves A(X, E) at " + to_string(g.element_at(x)));
  }
  return std::move(*unit_group);
}

Distribution sample_distribution(const FiniteAbelianGroup& g, std::uint64_t seed, std::int64_t denominator_bound) {
  const auto order = static_cast<std::int64_t>(g.order());
  if (denominator_bound < order) throw PreconditionError("denominator bound must be at least |G|");
  Rng rng(mix_seed(seed, 0));
  const auto support_size = static_cast<std::size_t>(1 + uniform_below(rng, g.order()));

  std::vector<std::size_t> idx(g.order());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < support_size; ++i) {
    std::swap(idx[i], idx[i + uniform_below(rng, g.order() - i)]);
  }

  const auto per_point = static_cast<std::uint64_t>(denominator_bound / static_cast<std::int64_t>(support_size));
  std::vector<std::int64_t> weight(support_size);
  std::int64_t total = 0;
  for (auto& w : weight) {
    w = 1 + static_cast<std::int64_t>(uniform_below(rng, per_point));
    total += w;
  }
  std::vector<Rational> masses(g.order());
  for (std::size_t i = 0; i < support_size; ++i) masses[idx[i]] = rational(weight[i], total);
  return Distribution::from_masses(g, std::move(masses));
}

}  // namespace heyde
