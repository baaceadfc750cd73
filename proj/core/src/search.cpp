#include "heyde/error.hpp"
#include "heyde/heyde.hpp"
#include "heyde/parallel.hpp"
#include "heyde/random.hpp"

namespace heyde {

namespace {

Distribution random_on(const FiniteAbelianGroup& g, const Subgroup& k, Rng& rng, std::int64_t max_weight) {
  std::vector<Rational> masses(g.order());
  std::int64_t total = 0;
  std::vector<std::int64_t> w(k.order());
  for (auto& x : w) {
    x = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(max_weight) + 1));
    total += x;
  }
  if (total == 0) {
    w[0] = 1;
    total = 1;
  }
  for (std::size_t i = 0; i < w.size(); ++i) masses[k.member_indices()[i]] = rational(w[i], total);
  return Distribution::from_masses(g, std::move(masses));
}

Element random_element(const FiniteAbelianGroup& g, Rng& rng) { return g.element_at(uniform_below(rng, g.order())); }

}  // namespace

HeydeInstance sample_instance(const FiniteAbelianGroup& g, const std::vector<Homomorphism>& alphas,
                              const std::vector<Subgroup>& subgroups, std::uint64_t seed, std::uint64_t index) {
  if (alphas.empty() || subgroups.empty()) throw PreconditionError("sample_instance needs automorphisms and subgroups");
  Rng rng(mix_seed(seed, index));
  const auto& alpha = alphas[uniform_below(rng, alphas.size())];
  const auto& k = subgroups[uniform_below(rng, subgroups.size())];
  const std::int64_t bound = std::max<std::int64_t>(static_cast<std::int64_t>(g.order()), 16);

  switch (uniform_below(rng, 6)) {
    case 0: {
      auto a = sample_distribution(g, rng(), bound);
      auto b = sample_distribution(g, rng(), bound);
      return HeydeInstance::make(alpha, std::move(a), std::move(b));
    }
    case 1: {
      auto a = sample_distribution(g, rng(), bound);
      return HeydeInstance::make(alpha, a, a);
    }
    case 2: {
      const auto mk = haar(k);
      const Element x1 = random_element(g, rng);
      const Element x2 = random_element(g, rng);
      return HeydeInstance::make(alpha, shift(mk, x1), shift(mk, x2));
    }
    case 3: {
      // x1 + alpha x2 in K keeps the shifted pair symmetric whenever m_K itself is.
      const auto mk = haar(k);
      const Element x2 = random_element(g, rng);
      const Element kk = g.element_at(k.member_indices()[uniform_below(rng, k.order())]);
      const Element x1 = g.add(g.negate(alpha.apply(x2)), kk);
      return HeydeInstance::make(alpha, shift(mk, x1), shift(mk, x2));
    }
    case 4: {
      auto a = random_on(g, k, rng, 6);
      return HeydeInstance::make(alpha, a, a);
    }
    default: {
      auto a = random_on(g, k, rng, 6);
      auto b = random_on(g, k, rng, 6);
      return HeydeInstance::make(alpha, std::move(a), std::move(b));
    }
  }
}

std::vector<Candidate> search_counterexamples(const FiniteAbelianGroup& g, const SearchOptions& options) {
  std::vector<Homomorphism> alphas;
  for (auto& a : enumerate_automorphisms(g)) {
    if (options.policy == AlphaPolicy::kAll || condition_1_holds(a)) alphas.push_back(std::move(a));
  }
  if (alphas.empty() || options.budget == 0) return {};
  const auto subgroups = enumerate_subgroups(g);

  auto results = sharded_map(options.budget, options.shards, [&](std::size_t i) -> std::optional<Candidate> {
    auto inst = sample_instance(g, alphas, subgroups, options.seed, i);
    if (!symmetry_holds(inst).holds) return std::nullopt;
    if (heyde_conclusion(inst)) return std::nullopt;
    return Candidate{i, std::move(inst)};
  });
  std::vector<Candidate> out;
  for (auto& r : results) {
    if (r) out.push_back(std::move(*r));
  }
  return out;
}

}  // namespace heyde
