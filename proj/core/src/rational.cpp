#include "heyde/rational.hpp"

#include <cctype>

#include "heyde/error.hpp"

namespace heyde {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InputError("rational: zero denominator");
  Rational q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
    throw InputError("malformed rational '" + std::string(text) + "'");
  }
  std::string num_s(num.front() == '+' ? num.substr(1) : num);
  mpz_class n(num_s, 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw InputError("rational '" + std::string(text) + "' has zero denominator");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string numerator_string(const Rational& q) { return q.get_num().get_str(); }

std::string denominator_string(const Rational& q) { return q.get_den().get_str(); }

}  // namespace heyde
