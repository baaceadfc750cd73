#include "heyde_cli/commands.hpp"

#include <cstdlib>

#include "heyde/error.hpp"
#include "heyde/parallel.hpp"
#include "heyde/random.hpp"

namespace heyde::cli {

namespace {

Json header(const std::string& command, Json config) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = command;
  out["config"] = std::move(config);
  return out;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Json instance_json(const HeydeInstance& inst) {
  return Json{{"alpha", to_json(inst.alpha)}, {"mu1", to_json(inst.mu1)}, {"mu2", to_json(inst.mu2)}};
}

// Fourier round trip, convolution theorem, reflection/conjugation and the unit-set structure.
bool infrastructure_holds(const Distribution& mu1, const Distribution& mu2) {
  try {
    const auto f1 = char_function(mu1);
    const auto f2 = char_function(mu2);
    if (!(inverse_char(f1) == mu1) || !(inverse_char(f2) == mu2)) return false;
    const auto fc = char_function(convolve(mu1, mu2));
    const auto fr = char_function(reflect(mu1));
    for (std::size_t y = 0; y < f1.values().size(); ++y) {
      if (!(fc.value_at(y) == f1.value_at(y) * f2.value_at(y))) return false;
      if (!(fr.value_at(y) == f1.value_at(y).conj())) return false;
    }
    unit_set(mu1);
    unit_set(mu2);
  } catch (const InvariantError&) {
    return false;
  } catch (const InputError&) {
    return false;
  }
  return true;
}

struct Outcome {
  bool agree = true;
  bool symmetric = false;
  bool guaranteed = false;  // hypotheses of the characterization hold for this instance
  bool conclusion = false;
  bool m_independent = true;
  bool infrastructure = true;
};

struct Tally {
  std::size_t count = 0;
  std::size_t failures = 0;
  std::optional<std::size_t> first_failure;

  void add(std::size_t index, bool ok) {
    ++count;
    if (!ok) {
      ++failures;
      if (!first_failure) first_failure = index;
    }
  }
  Json json() const {
    return Json{{"checked", count}, {"failures", failures}, {"first_failure", first_failure ? Json(*first_failure) : Json()}};
  }
};

Json sweep_group(const FiniteAbelianGroup& g, const SweepConfig& config, bool& failed, std::size_t& counterexamples) {
  const bool odd = !has_order2_elements(g);
  const auto autos = enumerate_automorphisms(g);
  const auto subgroups = enumerate_subgroups(g);
  std::vector<char> cond1(autos.size());
  for (std::size_t a = 0; a < autos.size(); ++a) cond1[a] = condition_1_holds(autos[a]);
  const std::uint64_t seed = mix_seed(config.seed, fnv1a(to_string(g)));

  Json out;
  out["group"] = to_string(g);
  out["order"] = g.order();
  out["odd"] = odd;
  out["automorphisms"] = autos.size();
  out["condition_1_automorphisms"] = static_cast<std::size_t>(std::count(cond1.begin(), cond1.end(), 1));
  out["subgroups"] = subgroups.size();

  // Sampled instances: budget per automorphism.
  const std::size_t total = autos.size() * config.budget;
  auto outcomes = sharded_map(total, config.shards, [&](std::size_t i) {
    const std::size_t a = i / config.budget;
    const auto inst = sample_instance(g, {autos[a]}, subgroups, seed, i);
    Outcome o;
    const auto sym = symmetry_holds(inst);
    const auto eq = equation_2a_holds(char_function(inst.mu1), char_function(inst.mu2), adjoint(inst.alpha));
    o.agree = sym.holds == eq.holds;
    o.symmetric = sym.holds;
    o.guaranteed = odd && cond1[a];
    if (o.symmetric) {
      o.conclusion = heyde_conclusion(inst).has_value();
      o.m_independent = forms_M_independent(inst);
    }
    o.infrastructure = infrastructure_holds(inst.mu1, inst.mu2);
    return o;
  });

  Tally agree, sufficiency, m_indep_tally, infra;
  std::size_t symmetric = 0, sampled_counterexamples = 0;
  std::optional<std::size_t> first_counterexample;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    agree.add(i, o.agree);
    infra.add(i, o.infrastructure);
    if (!o.symmetric) continue;
    ++symmetric;
    m_indep_tally.add(i, o.m_independent);
    if (o.guaranteed) {
      sufficiency.add(i, o.conclusion);
    } else if (!o.conclusion) {
      ++sampled_counterexamples;
      if (!first_counterexample) first_counterexample = i;
    }
  }

  // Constructed Haar-shift instances and the exhaustive subgroup biconditional.
  Tally constructed, prop1;
  std::size_t prop1_symmetric = 0;
  if (odd && config.budget > 0) {
    std::size_t idx = 0;
    for (std::size_t a = 0; a < autos.size(); ++a) {
      if (!cond1[a]) continue;
      for (const auto& k : subgroups) {
        bool sides_agree = true;
        bool sym = false;
        try {
          sym = proposition1_check(k, autos[a]);
        } catch (const InvariantError&) {
          sides_agree = false;
        }
        prop1.add(idx, sides_agree);
        if (sym) {
          ++prop1_symmetric;
          const auto mk = haar(k);
          const auto iid = HeydeInstance::make(autos[a], mk, mk);
          m_indep_tally.add(total + idx, forms_M_independent(iid));
          const Element x2 = g.element_at(g.order() - 1);
          const Element x1 = g.negate(autos[a].apply(x2));
          const auto shifted = HeydeInstance::make(autos[a], shift(mk, x1), shift(mk, x2));
          bool ok = symmetry_holds(shifted).holds;
          if (ok) {
            const auto d = heyde_conclusion(shifted);
            ok = d && d->subgroup == k;
          }
          constructed.add(idx, ok);
        }
        ++idx;
      }
    }
  }

  out["sampled_instances"] = total;
  out["symmetric_instances"] = symmetric;
  out["checker_agreement"] = agree.json();
  out["sufficiency"] = Json{{"applicable", odd}, {"sampled", sufficiency.json()}, {"constructed", constructed.json()}};
  if (odd) {
    out["haar_criterion"] = Json{{"pairs", prop1.count}, {"symmetric", prop1_symmetric}, {"mismatches", prop1.failures}};
  } else {
    out["haar_criterion"] = Json{{"skipped", "group has elements of order 2"}};
  }
  out["m_independence"] = m_indep_tally.json();
  out["infrastructure"] = infra.json();

  // Boundary exhibits: groups with 2-torsion and automorphisms violating Ker(I + alpha) = {0}.
  Json boundary;
  std::size_t exhibits = 0;
  if (config.budget > 0 && !odd) {
    const auto inst = order2_counterexample(g);
    const bool ok = symmetry_holds(inst).holds && !in_I_X(inst.mu1).has_value();
    if (!ok) failed = true;
    exhibits += ok;
    boundary["order2_exhibit"] = Json{{"instance", instance_json(inst)}, {"symmetric_not_in_IX", ok}};
  }
  if (config.budget > 0) {
    for (std::size_t a = 0; a < autos.size(); ++a) {
      if (cond1[a]) continue;
      const auto inst = kernel_counterexample(autos[a]);
      const bool ok = symmetry_holds(inst).holds && !in_I_X(inst.mu1).has_value();
      if (!ok) failed = true;
      exhibits += ok;
      boundary["kernel_exhibit"] = Json{{"instance", instance_json(inst)}, {"symmetric_not_in_IX", ok}};
      break;
    }
  }
  boundary["sampled_counterexamples"] = sampled_counterexamples;
  boundary["first_sampled"] = first_counterexample
                                  ? Json{{"index", *first_counterexample},
                                         {"instance", instance_json(sample_instance(
                                                          g, {autos[*first_counterexample / config.budget]},
                                                          subgroups, seed, *first_counterexample))}}
                                  : Json();
  boundary["consistent_with_necessity"] = true;
  out["boundary"] = boundary;

  counterexamples += sampled_counterexamples + exhibits;
  if (agree.failures || sufficiency.failures || constructed.failures || prop1.failures || m_indep_tally.failures ||
      infra.failures) {
    failed = true;
  }
  return out;
}

}  // namespace

Json load_json_argument(const std::string& arg, const std::string& what) {
  if (arg.empty()) throw InputError(what + " is missing");
  if (arg.front() == '{' || arg.front() == '[') return parse_json(arg, what);
  return read_json_file(arg);
}

CommandResult run_check_heyde(const CheckHeydeConfig& config) {
  const auto g = parse_group_spec(config.group, config.cap);
  const auto alpha = config.alpha.empty() ? Homomorphism::identity(g)
                                          : homomorphism_from_json(g, load_json_argument(config.alpha, "alpha"));
  auto mu1 = distribution_from_json(load_json_argument(config.mu1, "mu1"), g, config.cap);
  auto mu2 = distribution_from_json(load_json_argument(config.mu2, "mu2"), g, config.cap);
  const auto inst = HeydeInstance::make(alpha, std::move(mu1), std::move(mu2));

  const auto sym = symmetry_holds(inst);
  const auto eq = equation_2a_holds(char_function(inst.mu1), char_function(inst.mu2), adjoint(inst.alpha));
  const bool odd = !has_order2_elements(g);
  const bool cond1 = condition_1_holds(alpha);

  Verdict verdict = sym;
  bool failed = sym.holds != eq.holds;
  std::optional<bool> m_independent;
  if (sym.holds) {
    if (auto d = heyde_conclusion(inst)) verdict.decomposition = std::move(*d);
    m_independent = forms_M_independent(inst);
    if (!*m_independent) failed = true;
    if (odd && cond1 && !verdict.decomposition) failed = true;
  }

  Json cfg{{"group", to_string(g)}, {"alpha", to_json(alpha)}, {"mu1", to_json(inst.mu1)}, {"mu2", to_json(inst.mu2)}};
  Json report = header("check-heyde", std::move(cfg));
  report["hypotheses"] = Json{{"no_order2_elements", odd}, {"condition_1", cond1}};
  report["verdict"] = to_json(verdict);
  report["equation_2a"] = to_json(eq);
  report["checkers_agree"] = sym.holds == eq.holds;
  report["forms_M_independent"] = m_independent ? Json(*m_independent) : Json();
  return {std::move(report), failed ? kPropertyFailed : kOk};
}

CommandResult run_verify(const VerifyConfig& config) {
  ModelSpec spec = model_spec_from_json(load_json_argument(config.model, "model"));
  if (config.level) spec.level = *config.level;

  Json cfg = to_json(spec);
  cfg["grid_m"] = config.sample.grid_m;
  cfg["grid_n"] = config.sample.grid_n;
  cfg["random_pairs"] = config.sample.random_pairs;
  cfg["seed"] = config.sample.seed;
  Json report = header("verify", std::move(cfg));
  bool ok = true;

  if (spec.model == "lemma5") {
    const auto model = lemma5_model(spec.p, spec.ladder, spec.a);
    if (spec.level > model.dual().depth()) throw InputError("level exceeds the ladder length");
    Json levels = Json::array();
    for (std::size_t m = 1; m <= spec.level; ++m) {
      const auto check = verify_lemma5(model, m, config.sample.shards, config.cap);
      const bool recursion = base_recursion_holds(model.dual(), m, config.cap);
      Json entry{{"level", m}, {"equation", to_json(check)}, {"base_recursion", recursion}};
      ok = ok && check.holds && check.cases_hold && recursion;
      if (m <= 3) {
        const bool positive = lemma5_positive_on_level(model, m);
        entry["positive_definite"] = positive;
        ok = ok && positive;
      }
      levels.push_back(std::move(entry));
    }
    report["levels"] = levels;

    const auto w = lemma5_not_in_IX(model);
    const bool gamma = gamma_I_violation(model, w.point);
    report["not_in_IX"] = Json{{"point", to_json(w.point)}, {"value", to_json(w.value)}};
    report["gamma_I_violation"] = Json{{"y", to_json(w.point)}, {"violated", gamma}};
    ok = ok && gamma;

    Json kernels = Json::array();
    for (std::size_t n = 2; n <= model.dual().depth(); ++n) {
      const auto k = truncation_kernel_demo(spec.p, spec.ladder, n);
      kernels.push_back(Json{{"N", n}, {"kernel_order", k.order()}, {"generators", Json::array()}});
      for (const auto& x : k.generators()) kernels.back()["generators"].push_back(to_json(x));
      ok = ok && !k.is_trivial();
    }
    report["truncation_kernels"] = kernels;
  } else if (spec.model == "case1") {
    const auto model = case1_model(spec.p, spec.y0);
    const auto check = verify_case1(model, config.sample);
    const bool gamma = gamma_I_violation(model, model.y0);
    const bool psd = case1_gram_psd(model, 4, 2);
    report["dual"] = model.dual.name();
    report["alpha_tilde"] = to_json(model.alpha_tilde);
    report["equation"] = to_json(check);
    report["gamma_I_violation"] = Json{{"y", to_json(model.y0)}, {"violated", gamma}};
    report["positive_definite"] = psd;
    ok = check.holds && check.cases_hold && gamma && psd;
  } else {
    const auto model = case2_model(spec.c);
    const auto check = verify_case2(model, config.sample);
    const Rational y = rational(1, 5);
    const bool gamma = gamma_I_violation(model, y);
    const bool psd = case2_gram_psd(model, 4, 1);
    const auto quotient = case2_quotient_law(model);
    report["subgroup"] = model.h.name();
    report["equation"] = to_json(check);
    report["gamma_I_violation"] = Json{{"y", to_json(y)}, {"violated", gamma}};
    report["positive_definite"] = psd;
    report["quotient_law"] = to_json(quotient);
    ok = check.holds && check.cases_hold && gamma && psd;
  }
  report["holds"] = ok;
  return {std::move(report), ok ? kOk : kPropertyFailed};
}

CommandResult run_sweep(const SweepConfig& config) {
  std::vector<FiniteAbelianGroup> groups;
  for (const auto& spec : config.groups) groups.push_back(parse_group_spec(spec, config.cap));

  Json cfg{{"groups", Json::array()}, {"seed", config.seed}, {"budget", config.budget}, {"boundary", config.boundary}};
  for (const auto& g : groups) cfg["groups"].push_back(to_string(g));
  Json report = header("sweep", std::move(cfg));

  bool failed = false;
  std::size_t counterexamples = 0;
  Json results = Json::array();
  if (config.budget > 0) {
    for (const auto& g : groups) results.push_back(sweep_group(g, config, failed, counterexamples));
  }
  report["groups"] = results;
  report["summary"] = Json{{"groups", results.size()},
                           {"guaranteed_failures", failed},
                           {"boundary_counterexamples", counterexamples}};
  int code = kOk;
  if (failed) {
    code = kPropertyFailed;
  } else if (config.boundary && counterexamples > 0) {
    code = kBoundaryCounterexample;
  }
  return {std::move(report), code};
}

CommandResult run_list_automorphisms(const std::string& group, std::size_t cap) {
  const auto g = parse_group_spec(group, cap);
  Json report = header("list-automorphisms", Json{{"group", to_string(g)}});
  Json list = Json::array();
  for (const auto& a : enumerate_automorphisms(g)) {
    list.push_back(Json{{"matrix", a.matrix()}, {"condition_1", condition_1_holds(a)}});
  }
  report["count"] = list.size();
  report["automorphisms"] = list;
  return {std::move(report), kOk};
}

CommandResult run_list_subgroups(const std::string& group, std::size_t cap) {
  const auto g = parse_group_spec(group, cap);
  Json report = header("list-subgroups", Json{{"group", to_string(g)}});
  Json list = Json::array();
  for (const auto& k : enumerate_subgroups(g)) {
    Json gens = Json::array();
    for (const auto& x : k.generators()) gens.push_back(to_json(x));
    list.push_back(Json{{"order", k.order()}, {"generators", gens}, {"members", to_json(k)}});
  }
  report["count"] = list.size();
  report["subgroups"] = list;
  return {std::move(report), kOk};
}

Json without_timestamp(Json report) {
  if (report.is_object()) report.erase("timestamp");
  return report;
}

std::size_t cap_from_environment() {
  const char* raw = std::getenv("HEYDE_CAP");
  if (!raw || !*raw) return kDefaultCap;
  const std::string text(raw);
  std::size_t pos = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || value == 0) throw InputError("HEYDE_CAP must be a positive integer, got \"" + text + "\"");
  return static_cast<std::size_t>(value);
}

}  // namespace heyde::cli
