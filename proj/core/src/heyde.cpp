#include "heyde/heyde.hpp"

#include <algorithm>
#include <numeric>

#include "heyde/error.hpp"

namespace heyde {

HeydeInstance HeydeInstance::make(Homomorphism alpha, Distribution mu1, Distribution mu2) {
  if (!(mu1.group() == mu2.group())) throw InputError("mu1 and mu2 live on different groups");
  if (!(alpha.source() == mu1.group()) || !alpha.is_endomorphism()) {
    throw InputError("alpha is not an endomorphism of " + to_string(mu1.group()));
  }
  if (!is_automorphism(alpha)) throw InputError("alpha is not an automorphism");
  FiniteAbelianGroup g = mu1.group();
  return HeydeInstance{std::move(g), std::move(alpha), std::move(mu1), std::move(mu2)};
}

// ---------------------------------------------------------------------------------------------

JointDistribution::JointDistribution(FiniteAbelianGroup g, std::vector<Rational> masses)
    : group_(std::move(g)), masses_(std::move(masses)) {
  if (masses_.size() != group_.order() * group_.order()) throw InputError("joint law has the wrong size");
}

Distribution JointDistribution::first_marginal() const {
  const std::size_t n = group_.order();
  std::vector<Rational> m(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) m[a] += masses_[a * n + b];
  }
  return Distribution::from_masses(group_, std::move(m));
}

Distribution JointDistribution::second_marginal() const {
  const std::size_t n = group_.order();
  std::vector<Rational> m(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) m[b] += masses_[a * n + b];
  }
  return Distribution::from_masses(group_, std::move(m));
}

Distribution JointDistribution::as_distribution() const {
  std::vector<std::int64_t> orders = group_.factors();
  orders.insert(orders.end(), group_.factors().begin(), group_.factors().end());
  const std::size_t n = group_.order();
  const FiniteAbelianGroup product = make_group(orders, n * n);
  // make_group sorts stably, so factor k of the concatenation lands at position slot[k].
  const std::size_t r = group_.rank();
  std::vector<std::size_t> position(2 * r);
  std::iota(position.begin(), position.end(), std::size_t{0});
  std::stable_sort(position.begin(), position.end(), [&](std::size_t a, std::size_t b) {
    const auto pa = *prime_of_prime_power(orders[a]);
    const auto pb = *prime_of_prime_power(orders[b]);
    return pa != pb ? pa < pb : orders[a] < orders[b];
  });
  std::vector<std::size_t> slot(2 * r);
  for (std::size_t k = 0; k < 2 * r; ++k) slot[position[k]] = k;

  std::vector<Rational> m(product.order());
  for (std::size_t a = 0; a < n; ++a) {
    const Element ea = group_.element_at(a);
    for (std::size_t b = 0; b < n; ++b) {
      if (sgn(masses_[a * n + b]) == 0) continue;
      const Element eb = group_.element_at(b);
      Element e = product.zero();
      for (std::size_t k = 0; k < r; ++k) {
        e.residues[slot[k]] = ea.residues[k];
        e.residues[slot[r + k]] = eb.residues[k];
      }
      m[product.index_of(e)] = masses_[a * n + b];
    }
  }
  return Distribution::from_masses(product, std::move(m));
}

JointDistribution linear_forms_law(const Distribution& mu1, const Distribution& mu2, const Homomorphism& a,
                                   const Homomorphism& b, const Homomorphism& c, const Homomorphism& d) {
  const auto& g = mu1.group();
  const std::size_t n = g.order();
  const auto ta = a.table(), tb = b.table(), tc = c.table(), td = d.table();
  const auto s2 = mu2.support();
  std::vector<Rational> m(n * n);
  for (std::size_t x1 : mu1.support()) {
    for (std::size_t x2 : s2) {
      const std::size_t first = g.add_index(ta[x1], tb[x2]);
      const std::size_t second = g.add_index(tc[x1], td[x2]);
      m[first * n + second] += mu1.mass_at(x1) * mu2.mass_at(x2);
    }
  }
  return JointDistribution(g, std::move(m));
}

JointDistribution joint_distribution(const HeydeInstance& inst) {
  const auto id = Homomorphism::identity(inst.group);
  return linear_forms_law(inst.mu1, inst.mu2, id, id, id, inst.alpha);
}

Verdict symmetry_holds(const HeydeInstance& inst) {
  const auto law = joint_distribution(inst);
  const auto& g = inst.group;
  for (std::size_t l1 = 0; l1 < g.order(); ++l1) {
    for (std::size_t l2 = 0; l2 < g.order(); ++l2) {
      if (law.mass_at(l1, l2) != law.mass_at(l1, g.negate_index(l2))) {
        return Verdict{false, Witness{g.element_at(l1), g.element_at(l2)}, std::nullopt};
      }
    }
  }
  return Verdict{};
}

Verdict equation_2a_holds(const CharFunction& f1, const CharFunction& f2, const Homomorphism& alpha_tilde) {
  const auto& g = f1.group();
  if (!(f2.group() == g) || !(alpha_tilde.source() == g) || !alpha_tilde.is_endomorphism()) {
    throw InputError("equation_2a_holds: characteristic functions and alpha act on different groups");
  }
  const auto at = alpha_tilde.table();
  const auto product = [](const CyclotomicValue& a, const CyclotomicValue& b) {
    return (a.is_zero() || b.is_zero()) ? CyclotomicValue::zero(a.modulus()) : a * b;
  };
  for (std::size_t u = 0; u < g.order(); ++u) {
    for (std::size_t v = 0; v < g.order(); ++v) {
      const auto lhs = product(f1.value_at(g.add_index(u, v)), f2.value_at(g.add_index(u, at[v])));
      const auto rhs = product(f1.value_at(g.subtract_index(u, v)), f2.value_at(g.subtract_index(u, at[v])));
      if (!(lhs == rhs)) return Verdict{false, Witness{g.element_at(u), g.element_at(v)}, std::nullopt};
    }
  }
  return Verdict{};
}

bool lemma1_agree(const HeydeInstance& inst) {
  const bool by_law = symmetry_holds(inst).holds;
  const bool by_spectrum =
      equation_2a_holds(char_function(inst.mu1), char_function(inst.mu2), adjoint(inst.alpha)).holds;
  return by_law == by_spectrum;
}

std::optional<Decomposition> heyde_conclusion(const HeydeInstance& inst) {
  if (!symmetry_holds(inst).holds) throw PreconditionError("heyde_conclusion called on a non-symmetric instance");
  auto d1 = in_I_X(inst.mu1);
  auto d2 = in_I_X(inst.mu2);
  if (!d1 || !d2) return std::nullopt;
  if (!(d1->subgroup == d2->subgroup)) return std::nullopt;
  if (!(image_of(inst.alpha, d1->subgroup) == d1->subgroup)) return std::nullopt;
  return Decomposition{std::move(d1->subgroup), std::move(d1->shift), std::move(d2->shift)};
}

Proposition1Sides proposition1_sides(const Subgroup& k, const Homomorphism& alpha) {
  const auto& g = k.parent();
  if (!(alpha.source() == g) || !is_automorphism(alpha)) throw PreconditionError("alpha is not an automorphism of K's group");
  if (has_order2_elements(g)) throw PreconditionError("needs a group without elements of order 2");
  if (!condition_1_holds(alpha)) throw PreconditionError("alpha violates Ker(I + alpha) = {0}");

  const auto mk = haar(k);
  Proposition1Sides sides;
  sides.symmetric = symmetry_holds(HeydeInstance::make(alpha, mk, mk)).holds;
  sides.image_equals_k = image_of(Homomorphism::identity(g) - alpha, k) == k;
  return sides;
}

bool proposition1_check(const Subgroup& k, const Homomorphism& alpha) {
  const auto sides = proposition1_sides(k, alpha);
  if (sides.symmetric != sides.image_equals_k) {
    throw InvariantError("symmetry of iid m_K disagrees with (I - alpha)(K) = K");
  }
  return sides.symmetric;
}

Subgroup order2_subgroup(const FiniteAbelianGroup& g) {
  std::vector<std::size_t> members;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (g.add_index(x, x) == 0) members.push_back(x);
  }
  auto s = Subgroup::from_members(g, std::move(members));
  if (!s) throw InvariantError("{x : 2x = 0} is not a subgroup");
  return std::move(*s);
}

HeydeInstance order2_counterexample(const FiniteAbelianGroup& g, const std::optional<Homomorphism>& alpha) {
  if (!has_order2_elements(g)) throw PreconditionError(to_string(g) + " has no elements of order 2");
  const auto g2 = order2_subgroup(g);
  const Element first = g.element_at(g2.member_indices().at(1));
  const std::vector<std::pair<Element, Rational>> points{{g.zero(), rational(3, 4)}, {first, rational(1, 4)}};
  const auto mu = Distribution::from_points(g, points);
  return HeydeInstance::make(alpha.value_or(Homomorphism::identity(g)), mu, mu);
}

HeydeInstance kernel_counterexample(const Homomorphism& alpha) {
  if (!is_automorphism(alpha)) throw PreconditionError("alpha is not an automorphism");
  const auto& g = alpha.source();
  const auto k = kernel(Homomorphism::identity(g) + alpha);
  if (k.is_trivial()) throw PreconditionError("Ker(I + alpha) is trivial");

  std::optional<Element> pick;
  for (std::size_t i : k.member_indices()) {
    Element e = g.element_at(i);
    if (g.element_order(e) > 2) {
      pick = std::move(e);
      break;
    }
  }
  std::vector<std::pair<Element, Rational>> points;
  if (pick) {
    points = {{g.zero(), rational(1, 2)}, {*pick, rational(1, 2)}};
  } else {
    points = {{g.zero(), rational(3, 4)}, {g.element_at(k.member_indices().at(1)), rational(1, 4)}};
  }
  const auto mu = Distribution::from_points(g, points);
  return HeydeInstance::make(alpha, mu, mu);
}

bool forms_M_independent(const HeydeInstance& inst) {
  const auto& g = inst.group;
  const auto id = Homomorphism::identity(g);
  const auto i_plus_a = id + inst.alpha;
  const auto two_a = inst.alpha + inst.alpha;
  const auto two = Homomorphism::scalar(g, 2);
  const auto law = linear_forms_law(inst.mu1, inst.mu2, i_plus_a, two_a, two, i_plus_a);
  const auto m1 = law.first_marginal();
  const auto m2 = law.second_marginal();
  for (std::size_t a = 0; a < g.order(); ++a) {
    for (std::size_t b = 0; b < g.order(); ++b) {
      if (law.mass_at(a, b) != m1.mass_at(a) * m2.mass_at(b)) return false;
    }
  }
  return true;
}

std::optional<Prop5Factorization> prop5_factorize(const HeydeInstance& inst) {
  if (!symmetry_holds(inst).holds) throw PreconditionError("prop5_factorize called on a non-symmetric instance");
  const auto& x = inst.group;
  const auto& f = x.factors();
  // Canonical order puts the 2-power factors first.
  const auto r2 = static_cast<std::size_t>(std::count_if(f.begin(), f.end(), [](std::int64_t n) { return n % 2 == 0; }));
  const std::vector<std::int64_t> two_orders(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(r2));
  const std::vector<std::int64_t> odd_orders(f.begin() + static_cast<std::ptrdiff_t>(r2), f.end());
  const auto x2 = make_group(two_orders, x.order());
  const auto godd = make_group(odd_orders, x.order());

  auto coordinate_map = [](const FiniteAbelianGroup& src, const FiniteAbelianGroup& tgt, std::size_t src_offset,
                           std::size_t tgt_offset, std::size_t count) {
    Homomorphism::Matrix m(tgt.rank(), std::vector<std::int64_t>(src.rank(), 0));
    for (std::size_t k = 0; k < count; ++k) m[tgt_offset + k][src_offset + k] = 1;
    return Homomorphism::from_matrix(src, tgt, std::move(m));
  };
  const auto to_two = coordinate_map(x, x2, 0, 0, r2);
  const auto to_odd = coordinate_map(x, godd, r2, 0, odd_orders.size());
  const auto from_two = coordinate_map(x2, x, 0, 0, r2);
  const auto from_odd = coordinate_map(godd, x, 0, r2, odd_orders.size());

  auto d1 = in_I_X(push_forward(inst.mu1, to_odd));
  auto d2 = in_I_X(push_forward(inst.mu2, to_odd));
  if (!d1 || !d2 || !(d1->subgroup == d2->subgroup)) return std::nullopt;

  Prop5Factorization out{push_forward(push_forward(inst.mu1, to_two), from_two),
                         push_forward(push_forward(inst.mu2, to_two), from_two),
                         image_of(from_odd, d1->subgroup),
                         from_odd.apply(d1->shift),
                         from_odd.apply(d2->shift)};
  const auto mk = haar(out.subgroup);
  if (!(shift(convolve(out.rho1, mk), out.g1) == inst.mu1)) return std::nullopt;
  if (!(shift(convolve(out.rho2, mk), out.g2) == inst.mu2)) return std::nullopt;
  return out;
}

}  // namespace heyde
