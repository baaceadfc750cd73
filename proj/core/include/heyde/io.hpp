#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "heyde/distribution.hpp"
#include "heyde/dual_models.hpp"
#include "heyde/group.hpp"
#include "heyde/heyde.hpp"

namespace heyde {

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become InputError with the byte position.
Json parse_json(const std::string& text, const std::string& origin);
/// Reads and parses a JSON file. Throws InputError when it cannot be opened or parsed.
Json read_json_file(const std::string& path);

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j, const std::string& what);

Json to_json(const Element& x);
Element element_from_json(const FiniteAbelianGroup& g, const Json& j);

Json to_json(const Subgroup& k);
/// {"matrix": [[...], ...]}; a bare matrix is accepted as well.
Json to_json(const Homomorphism& alpha);
Homomorphism homomorphism_from_json(const FiniteAbelianGroup& g, const Json& j);

/// {"group": "Z9", "mass": [{"element": [3], "p": "1", "q": "3"}, ...]}, support only.
Json to_json(const Distribution& mu);
/// When `expected` is given, the file's group must equal it.
Distribution distribution_from_json(const Json& j, const std::optional<FiniteAbelianGroup>& expected, std::size_t cap);

Json to_json(const Verdict& v);
Json to_json(const Prop5Factorization& f);

Json to_json(const Sequence& s);
Sequence sequence_from_json(const Json& j);

template <class T>
Json to_json(const ModelCheck<T>& check) {
  Json out;
  out["holds"] = check.holds;
  out["witness"] = check.witness ? Json{{"u", to_json(check.witness->u)}, {"v", to_json(check.witness->v)}} : Json();
  out["pairs"] = check.pairs;
  Json cases = Json::object();
  for (const auto& [name, count] : check.cases) cases[name] = count;
  out["cases"] = cases;
  out["cases_hold"] = check.cases_hold;
  out["case_witness"] =
      check.case_witness ? Json{{"u", to_json(check.case_witness->u)}, {"v", to_json(check.case_witness->v)}} : Json();
  return out;
}

/// {"model": "lemma5", "p": 3, "ladder": [1,2,3,4], "a": "1/2", "level": 3},
/// {"model": "case1", "p": 3, "y0": "1"}, {"model": "case2", "c": "1/2"}.
struct ModelSpec {
  std::string model;
  std::int64_t p = 3;
  std::vector<int> ladder{1, 2, 3, 4};
  Rational a = rational(1, 2);
  std::size_t level = 3;
  Rational y0 = 1;
  Rational c = rational(1, 2);
};

ModelSpec model_spec_from_json(const Json& j);
Json to_json(const ModelSpec& spec);

}  // namespace heyde
