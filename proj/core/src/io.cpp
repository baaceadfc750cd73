#include "heyde/io.hpp"

#include <fstream>
#include <sstream>

#include "heyde/error.hpp"

namespace heyde {

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(origin + ": invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j, const std::string& what) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return rational(j.get<std::int64_t>());
  throw InputError(what + " must be a rational string or an integer");
}

Json to_json(const Element& x) { return x.residues; }

Element element_from_json(const FiniteAbelianGroup& g, const Json& j) {
  if (!j.is_array()) throw InputError("element must be an array of residues");
  Element x;
  for (const auto& r : j) {
    if (!r.is_number_integer()) throw InputError("element residues must be integers");
    x.residues.push_back(r.get<std::int64_t>());
  }
  g.require(x);
  return x;
}

Json to_json(const Subgroup& k) {
  Json out = Json::array();
  for (const auto& x : k.members()) out.push_back(to_json(x));
  return out;
}

Json to_json(const Homomorphism& alpha) { return Json{{"matrix", alpha.matrix()}}; }

Homomorphism homomorphism_from_json(const FiniteAbelianGroup& g, const Json& j) {
  const Json& m = j.is_object() ? j.value("matrix", Json()) : j;
  if (!m.is_array()) throw InputError("homomorphism needs a \"matrix\" array");
  Homomorphism::Matrix matrix;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m[i].is_array()) throw InputError("matrix row " + std::to_string(i) + " is not an array");
    std::vector<std::int64_t> row;
    for (std::size_t k = 0; k < m[i].size(); ++k) {
      if (!m[i][k].is_number_integer()) {
        throw InputError("matrix entry (" + std::to_string(i) + ", " + std::to_string(k) + ") is not an integer");
      }
      row.push_back(m[i][k].get<std::int64_t>());
    }
    matrix.push_back(std::move(row));
  }
  return Homomorphism::from_matrix(g, g, std::move(matrix));
}

Json to_json(const Distribution& mu) {
  Json mass = Json::array();
  for (std::size_t i : mu.support()) {
    const auto& q = mu.mass_at(i);
    mass.push_back(Json{{"element", to_json(mu.group().element_at(i))},
                        {"p", numerator_string(q)},
                        {"q", denominator_string(q)}});
  }
  return Json{{"group", to_string(mu.group())}, {"mass", mass}};
}

Distribution distribution_from_json(const Json& j, const std::optional<FiniteAbelianGroup>& expected, std::size_t cap) {
  if (!j.is_object() || !j.contains("group") || !j.contains("mass")) {
    throw InputError("distribution needs \"group\" and \"mass\" fields");
  }
  if (!j["group"].is_string()) throw InputError("distribution \"group\" must be a string");
  const auto g = parse_group_spec(j["group"].get<std::string>(), cap);
  if (expected && !(g == *expected)) {
    throw InputError("distribution lives on " + to_string(g) + ", expected " + to_string(*expected));
  }
  if (!j["mass"].is_array()) throw InputError("distribution \"mass\" must be an array");
  std::vector<std::pair<Element, Rational>> points;
  for (std::size_t i = 0; i < j["mass"].size(); ++i) {
    const auto& entry = j["mass"][i];
    const std::string where = "mass entry " + std::to_string(i);
    if (!entry.is_object() || !entry.contains("element")) throw InputError(where + " needs an \"element\"");
    Rational w;
    if (entry.contains("p")) {
      const Rational num = rational_from_json(entry["p"], where + " p");
      const Rational den = entry.contains("q") ? rational_from_json(entry["q"], where + " q") : Rational(1);
      if (sgn(den) == 0) throw InputError(where + " has zero denominator");
      w = num / den;
    } else if (entry.contains("mass")) {
      w = rational_from_json(entry["mass"], where + " mass");
    } else {
      throw InputError(where + " needs \"p\"/\"q\" or \"mass\"");
    }
    points.emplace_back(element_from_json(g, entry["element"]), std::move(w));
  }
  return Distribution::from_points(g, points);
}

Json to_json(const Verdict& v) {
  Json out;
  out["holds"] = v.holds;
  out["witness"] = v.witness ? Json{{"u", to_json(v.witness->u)}, {"v", to_json(v.witness->v)}} : Json();
  out["decomposition"] = v.decomposition ? Json{{"K", to_json(v.decomposition->subgroup)},
                                                {"x1", to_json(v.decomposition->x1)},
                                                {"x2", to_json(v.decomposition->x2)}}
                                         : Json();
  return out;
}

Json to_json(const Prop5Factorization& f) {
  return Json{{"rho1", to_json(f.rho1)}, {"rho2", to_json(f.rho2)}, {"K", to_json(f.subgroup)},
              {"g1", to_json(f.g1)},     {"g2", to_json(f.g2)}};
}

Json to_json(const Sequence& s) { return Json(s); }

Sequence sequence_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("sequence must be an array");
  Sequence s;
  for (const auto& r : j) {
    if (!r.is_number_integer()) throw InputError("sequence entries must be integers");
    s.push_back(r.get<std::int64_t>());
  }
  return s;
}

ModelSpec model_spec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("model") || !j["model"].is_string()) {
    throw InputError("model spec needs a \"model\" string");
  }
  ModelSpec spec;
  spec.model = j["model"].get<std::string>();
  const auto integer = [&](const char* key) {
    if (!j[key].is_number_integer()) throw InputError(std::string("model spec \"") + key + "\" must be an integer");
    return j[key].get<std::int64_t>();
  };
  if (spec.model == "lemma5") {
    if (j.contains("p")) spec.p = integer("p");
    if (j.contains("ladder")) {
      if (!j["ladder"].is_array()) throw InputError("model spec \"ladder\" must be an array");
      spec.ladder.clear();
      for (const auto& k : j["ladder"]) {
        if (!k.is_number_integer()) throw InputError("ladder entries must be integers");
        spec.ladder.push_back(k.get<int>());
      }
    }
    if (j.contains("a")) spec.a = rational_from_json(j["a"], "a");
    if (j.contains("level")) {
      const auto level = integer("level");
      if (level < 1) throw InputError("model spec \"level\" must be at least 1");
      spec.level = static_cast<std::size_t>(level);
    }
  } else if (spec.model == "case1") {
    if (j.contains("p")) spec.p = integer("p");
    if (j.contains("y0")) spec.y0 = rational_from_json(j["y0"], "y0");
  } else if (spec.model == "case2") {
    if (j.contains("c")) spec.c = rational_from_json(j["c"], "c");
  } else {
    throw InputError("unknown model \"" + spec.model + "\" (expected lemma5, case1 or case2)");
  }
  return spec;
}

Json to_json(const ModelSpec& spec) {
  Json out{{"model", spec.model}};
  if (spec.model == "lemma5") {
    out["p"] = spec.p;
    out["ladder"] = spec.ladder;
    out["a"] = to_json(spec.a);
    out["level"] = spec.level;
  } else if (spec.model == "case1") {
    out["p"] = spec.p;
    out["y0"] = to_json(spec.y0);
  } else {
    out["c"] = to_json(spec.c);
  }
  return out;
}

}  // namespace heyde
