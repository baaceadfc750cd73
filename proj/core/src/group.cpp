#include "heyde/group.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

#include "heyde/error.hpp"

namespace heyde {

namespace {

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// Closure of `seed` (already closed or just {0}) under adding `gens`. Returns sorted indices.
std::vector<std::size_t> close_under(const FiniteAbelianGroup& g, const std::vector<std::size_t>& seed,
                                     const std::vector<std::size_t>& gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<std::size_t> queue;
  queue.reserve(g.order());
  for (std::size_t s : seed) {
    if (!in[s]) {
      in[s] = 1;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t cur = queue[head];
    for (std::size_t gen : gens) {
      const std::size_t next = g.add_index(cur, gen);
      if (!in[next]) {
        in[next] = 1;
        queue.push_back(next);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

// Greedy generating set of a closed member list: take members in order, skip those already
// generated.
std::vector<std::size_t> greedy_generators(const FiniteAbelianGroup& g, const std::vector<std::size_t>& members) {
  std::vector<std::size_t> gens;
  std::vector<std::size_t> span{0};
  for (std::size_t m : members) {
    if (std::binary_search(span.begin(), span.end(), m)) continue;
    gens.push_back(m);
    span = close_under(g, span, gens);
    if (span.size() == members.size()) break;
  }
  return gens;
}

std::vector<Element> to_elements(const FiniteAbelianGroup& g, const std::vector<std::size_t>& idx) {
  std::vector<Element> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(g.element_at(i));
  return out;
}

}  // namespace

std::string to_string(const Element& x) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < x.residues.size(); ++i) {
    if (i) out << ',';
    out << x.residues[i];
  }
  out << ')';
  return out.str();
}

std::optional<std::int64_t> prime_of_prime_power(std::int64_t n) {
  if (n < 2) return std::nullopt;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    if (n != 1) return std::nullopt;
    return p;
  }
  return n;
}

FiniteAbelianGroup make_group(std::span<const std::int64_t> orders, std::size_t cap) {
  struct Factor {
    std::int64_t prime;
    std::int64_t order;
  };
  std::vector<Factor> fs;
  std::size_t total = 1;
  for (std::int64_t n : orders) {
    auto p = prime_of_prime_power(n);
    if (!p) throw InputError("group factor " + std::to_string(n) + " is not a prime power >= 2");
    if (total > cap / static_cast<std::size_t>(n)) {
      throw InputError("group order exceeds the cap of " + std::to_string(cap) + " elements");
    }
    total *= static_cast<std::size_t>(n);
    fs.push_back({*p, n});
  }
  std::stable_sort(fs.begin(), fs.end(), [](const Factor& a, const Factor& b) {
    return a.prime != b.prime ? a.prime < b.prime : a.order < b.order;
  });

  FiniteAbelianGroup g;
  g.order_ = total;
  g.exponent_ = 1;
  for (const auto& f : fs) {
    g.factors_.push_back(f.order);
    g.exponent_ = std::lcm(g.exponent_, f.order);
  }
  g.strides_.assign(g.factors_.size(), 1);
  for (std::size_t i = g.factors_.size(); i-- > 1;) {
    g.strides_[i - 1] = g.strides_[i] * static_cast<std::size_t>(g.factors_[i]);
  }
  return g;
}

FiniteAbelianGroup make_group(std::initializer_list<std::int64_t> orders, std::size_t cap) {
  return make_group(std::span<const std::int64_t>(orders.begin(), orders.size()), cap);
}

FiniteAbelianGroup parse_group_spec(std::string_view spec, std::size_t cap) {
  std::string s;
  for (char c : spec) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::tolower(c)));
  }
  auto fail = [&](const std::string& why) {
    return InputError("bad group spec '" + std::string(spec) + "': " + why);
  };
  if (s.empty()) throw fail("empty");
  if (s == "z1" || s == "z(1)") return FiniteAbelianGroup{};

  std::vector<std::int64_t> orders;
  std::size_t pos = 0;
  while (true) {
    if (pos >= s.size() || s[pos] != 'z') throw fail("expected 'Z' at position " + std::to_string(pos));
    ++pos;
    const bool paren = pos < s.size() && s[pos] == '(';
    if (paren) ++pos;
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw fail("expected an order at position " + std::to_string(start));
    if (pos - start > 12) throw fail("order too large");
    const std::int64_t n = std::stoll(s.substr(start, pos - start));
    if (paren) {
      if (pos >= s.size() || s[pos] != ')') throw fail("missing ')' at position " + std::to_string(pos));
      ++pos;
    }
    if (!prime_of_prime_power(n)) throw fail(std::to_string(n) + " is not a prime power >= 2");
    orders.push_back(n);
    if (pos == s.size()) break;
    if (s[pos] != 'x') throw fail("expected 'x' at position " + std::to_string(pos));
    ++pos;
  }
  return make_group(orders, cap);
}

std::string to_string(const FiniteAbelianGroup& g) {
  if (g.rank() == 0) return "Z1";
  std::string out;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    if (i) out += 'x';
    out += 'Z' + std::to_string(g.factors()[i]);
  }
  return out;
}

Element FiniteAbelianGroup::zero() const { return Element{std::vector<std::int64_t>(factors_.size(), 0)}; }

bool FiniteAbelianGroup::contains(const Element& x) const {
  if (x.residues.size() != factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (x.residues[i] < 0 || x.residues[i] >= factors_[i]) return false;
  }
  return true;
}

void FiniteAbelianGroup::require(const Element& x) const {
  if (!contains(x)) throw InputError("element " + to_string(x) + " does not belong to " + heyde::to_string(*this));
}

std::size_t FiniteAbelianGroup::index_of(const Element& x) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) idx += static_cast<std::size_t>(x.residues[i]) * strides_[i];
  return idx;
}

Element FiniteAbelianGroup::element_at(std::size_t index) const {
  Element x{std::vector<std::int64_t>(factors_.size())};
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    x.residues[i] = static_cast<std::int64_t>(index / strides_[i]);
    index %= strides_[i];
  }
  return x;
}

Element FiniteAbelianGroup::add(const Element& a, const Element& b) const {
  Element r = a;
  for (std::size_t i = 0; i < factors_.size(); ++i) r.residues[i] = (a.residues[i] + b.residues[i]) % factors_[i];
  return r;
}

Element FiniteAbelianGroup::negate(const Element& a) const {
  Element r = a;
  for (std::size_t i = 0; i < factors_.size(); ++i) r.residues[i] = (factors_[i] - a.residues[i]) % factors_[i];
  return r;
}

Element FiniteAbelianGroup::subtract(const Element& a, const Element& b) const { return add(a, negate(b)); }

Element FiniteAbelianGroup::multiply(std::int64_t k, const Element& a) const {
  Element r = a;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    r.residues[i] = mod_floor(mod_floor(k, factors_[i]) * a.residues[i], factors_[i]);
  }
  return r;
}

std::int64_t FiniteAbelianGroup::element_order(const Element& a) const {
  std::int64_t ord = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const std::int64_t n = factors_[i];
    ord = std::lcm(ord, n / std::gcd(n, a.residues[i]));
  }
  return ord;
}

std::size_t FiniteAbelianGroup::add_index(std::size_t a, std::size_t b) const {
  std::size_t out = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const std::size_t n = static_cast<std::size_t>(factors_[i]);
    const std::size_t da = a / strides_[i];
    const std::size_t db = b / strides_[i];
    a %= strides_[i];
    b %= strides_[i];
    out += ((da + db) % n) * strides_[i];
  }
  return out;
}

std::size_t FiniteAbelianGroup::negate_index(std::size_t a) const {
  std::size_t out = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const std::size_t n = static_cast<std::size_t>(factors_[i]);
    const std::size_t da = a / strides_[i];
    a %= strides_[i];
    out += ((n - da) % n) * strides_[i];
  }
  return out;
}

std::size_t FiniteAbelianGroup::subtract_index(std::size_t a, std::size_t b) const {
  return add_index(a, negate_index(b));
}

std::int64_t FiniteAbelianGroup::pairing_exponent(const Element& x, const Element& y) const {
  std::int64_t k = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    k += (exponent_ / factors_[i]) * ((x.residues[i] * y.residues[i]) % factors_[i]);
  }
  return k % exponent_;
}

std::int64_t FiniteAbelianGroup::pairing_exponent_index(std::size_t x, std::size_t y) const {
  std::int64_t k = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto dx = static_cast<std::int64_t>(x / strides_[i]);
    const auto dy = static_cast<std::int64_t>(y / strides_[i]);
    x %= strides_[i];
    y %= strides_[i];
    k += (exponent_ / factors_[i]) * ((dx * dy) % factors_[i]);
  }
  return k % exponent_;
}

CyclotomicValue pairing(const FiniteAbelianGroup& g, const Element& x, const Element& y) {
  g.require(x);
  g.require(y);
  return CyclotomicValue::root_of_unity(g.exponent(), g.pairing_exponent(x, y));
}

bool has_order2_elements(const FiniteAbelianGroup& g) {
  return std::any_of(g.factors().begin(), g.factors().end(), [](std::int64_t n) { return n % 2 == 0; });
}

// ---------------------------------------------------------------------------------------------
// Subgroups

Subgroup::Subgroup(FiniteAbelianGroup parent, std::vector<std::size_t> members, std::vector<Element> generators)
    : parent_(std::move(parent)), members_(std::move(members)), generators_(std::move(generators)) {}

std::vector<Element> Subgroup::members() const { return to_elements(parent_, members_); }

bool Subgroup::contains(const Element& x) const {
  return parent_.contains(x) && contains_index(parent_.index_of(x));
}

bool Subgroup::contains_index(std::size_t index) const {
  return std::binary_search(members_.begin(), members_.end(), index);
}

std::optional<Subgroup> Subgroup::from_members(const FiniteAbelianGroup& g, std::vector<std::size_t> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  if (indices.empty() || indices.front() != 0 || indices.back() >= g.order()) return std::nullopt;
  auto gens = greedy_generators(g, indices);
  if (close_under(g, {0}, gens) != indices) return std::nullopt;
  return Subgroup(g, std::move(indices), to_elements(g, gens));
}

Subgroup subgroup_from_generators(const FiniteAbelianGroup& g, std::span<const Element> gens) {
  std::vector<std::size_t> idx;
  for (const auto& x : gens) {
    g.require(x);
    idx.push_back(g.index_of(x));
  }
  return Subgroup(g, close_under(g, {0}, idx), std::vector<Element>(gens.begin(), gens.end()));
}

Subgroup trivial_subgroup(const FiniteAbelianGroup& g) { return subgroup_from_generators(g, {}); }

Subgroup whole_group(const FiniteAbelianGroup& g) {
  std::vector<Element> gens;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    Element e = g.zero();
    e.residues[i] = 1;
    gens.push_back(std::move(e));
  }
  return subgroup_from_generators(g, gens);
}

std::vector<Subgroup> enumerate_subgroups(const FiniteAbelianGroup& g) {
  // Every subgroup arises from {0} by adjoining one element at a time.
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> queue{{0}};
  seen.insert({0});
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto cur = queue[head];
    for (std::size_t x = 0; x < g.order(); ++x) {
      if (std::binary_search(cur.begin(), cur.end(), x)) continue;
      auto next = close_under(g, cur, {x});
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  std::vector<std::vector<std::size_t>> all(seen.begin(), seen.end());
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<Subgroup> out;
  out.reserve(all.size());
  for (auto& members : all) {
    auto s = Subgroup::from_members(g, std::move(members));
    if (!s) throw InvariantError("subgroup enumeration produced a non-subgroup");
    out.push_back(std::move(*s));
  }
  return out;
}

Subgroup annihilator(const Subgroup& k) {
  const auto& g = k.parent();
  std::vector<std::size_t> gens;
  for (const auto& x : k.generators()) gens.push_back(g.index_of(x));
  std::vector<std::size_t> members;
  for (std::size_t y = 0; y < g.order(); ++y) {
    bool kills = true;
    for (std::size_t x : gens) {
      if (g.pairing_exponent_index(x, y) != 0) {
        kills = false;
        break;
      }
    }
    if (kills) members.push_back(y);
  }
  auto s = Subgroup::from_members(g, std::move(members));
  if (!s) throw InvariantError("annihilator is not a subgroup");
  return std::move(*s);
}

// ---------------------------------------------------------------------------------------------
// Homomorphisms

Homomorphism::Homomorphism(FiniteAbelianGroup source, FiniteAbelianGroup target, Matrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {}

Homomorphism Homomorphism::from_matrix(FiniteAbelianGroup source, FiniteAbelianGroup target, Matrix matrix) {
  if (matrix.size() != target.rank()) {
    throw InputError("homomorphism matrix needs " + std::to_string(target.rank()) + " rows, got " +
                     std::to_string(matrix.size()));
  }
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    if (matrix[i].size() != source.rank()) {
      throw InputError("homomorphism matrix row " + std::to_string(i) + " needs " +
                       std::to_string(source.rank()) + " entries");
    }
    const std::int64_t m = target.factors()[i];
    for (std::size_t j = 0; j < matrix[i].size(); ++j) {
      auto& a = matrix[i][j];
      a = mod_floor(a, m);
      if ((a * source.factors()[j]) % m != 0) {
        throw InputError("matrix entry [" + std::to_string(i) + "][" + std::to_string(j) + "] = " +
                         std::to_string(a) + " does not define a map Z(" + std::to_string(source.factors()[j]) +
                         ") -> Z(" + std::to_string(m) + ")");
      }
    }
  }
  return Homomorphism(std::move(source), std::move(target), std::move(matrix));
}

Homomorphism Homomorphism::identity(const FiniteAbelianGroup& g) { return scalar(g, 1); }

Homomorphism Homomorphism::scalar(const FiniteAbelianGroup& g, std::int64_t k) {
  Matrix m(g.rank(), std::vector<std::int64_t>(g.rank(), 0));
  for (std::size_t i = 0; i < g.rank(); ++i) m[i][i] = k;
  return from_matrix(g, g, std::move(m));
}

Homomorphism Homomorphism::zero(const FiniteAbelianGroup& source, const FiniteAbelianGroup& target) {
  return from_matrix(source, target, Matrix(target.rank(), std::vector<std::int64_t>(source.rank(), 0)));
}

Element Homomorphism::apply(const Element& x) const {
  source_.require(x);
  Element y = target_.zero();
  for (std::size_t i = 0; i < target_.rank(); ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < source_.rank(); ++j) acc = (acc + matrix_[i][j] * x.residues[j]) % target_.factors()[i];
    y.residues[i] = acc;
  }
  return y;
}

std::size_t Homomorphism::apply_index(std::size_t x) const {
  return target_.index_of(apply(source_.element_at(x)));
}

std::vector<std::size_t> Homomorphism::table() const {
  std::vector<std::size_t> t(source_.order());
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = apply_index(x);
  return t;
}

Homomorphism compose(const Homomorphism& outer, const Homomorphism& inner) {
  if (!(outer.source() == inner.target())) throw InputError("compose: domain mismatch");
  const auto& a = outer.matrix();
  const auto& b = inner.matrix();
  Homomorphism::Matrix c(outer.target().rank(), std::vector<std::int64_t>(inner.source().rank(), 0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::int64_t m = outer.target().factors()[i];
    for (std::size_t j = 0; j < c[i].size(); ++j) {
      std::int64_t acc = 0;
      for (std::size_t k = 0; k < b.size(); ++k) acc = (acc + a[i][k] * b[k][j]) % m;
      c[i][j] = acc;
    }
  }
  return Homomorphism::from_matrix(inner.source(), outer.target(), std::move(c));
}

Homomorphism operator+(const Homomorphism& a, const Homomorphism& b) {
  if (!(a.source() == b.source()) || !(a.target() == b.target())) throw InputError("homomorphism sum: shape mismatch");
  auto m = a.matrix();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] += b.matrix()[i][j];
  }
  return Homomorphism::from_matrix(a.source(), a.target(), std::move(m));
}

Homomorphism operator-(const Homomorphism& a) {
  auto m = a.matrix();
  for (auto& row : m) {
    for (auto& e : row) e = -e;
  }
  return Homomorphism::from_matrix(a.source(), a.target(), std::move(m));
}

Homomorphism operator-(const Homomorphism& a, const Homomorphism& b) { return a + (-b); }

Homomorphism adjoint(const Homomorphism& alpha) {
  const auto& src = alpha.source();
  const auto& tgt = alpha.target();
  // (alpha x, y) = prod_i exp(2 pi i (sum_j A_ij x_j) y_i / m_i)
  //             = prod_j exp(2 pi i x_j (sum_i A_ij (n_j / m_i) y_i) / n_j).
  Homomorphism::Matrix b(src.rank(), std::vector<std::int64_t>(tgt.rank(), 0));
  for (std::size_t i = 0; i < tgt.rank(); ++i) {
    for (std::size_t j = 0; j < src.rank(); ++j) {
      const std::int64_t n = src.factors()[j];
      const std::int64_t m = tgt.factors()[i];
      b[j][i] = mod_floor(alpha.matrix()[i][j] * n / m, n);
    }
  }
  return Homomorphism::from_matrix(tgt, src, std::move(b));
}

bool verify_adjoint(const Homomorphism& alpha, const Homomorphism& alpha_tilde) {
  const auto& x_group = alpha.source();
  const auto& y_group = alpha.target();
  if (!(alpha_tilde.source() == y_group) || !(alpha_tilde.target() == x_group)) return false;
  const auto ay = alpha.table();
  const auto by = alpha_tilde.table();
  const std::int64_t nx = x_group.exponent();
  const std::int64_t ny = y_group.exponent();
  for (std::size_t x = 0; x < x_group.order(); ++x) {
    for (std::size_t y = 0; y < y_group.order(); ++y) {
      // phases k1/ny and k2/nx must agree
      const std::int64_t k1 = y_group.pairing_exponent_index(ay[x], y);
      const std::int64_t k2 = x_group.pairing_exponent_index(x, by[y]);
      if (k1 * nx != k2 * ny) return false;
    }
  }
  return true;
}

Subgroup kernel(const Homomorphism& alpha) {
  std::vector<std::size_t> members;
  const auto t = alpha.table();
  for (std::size_t x = 0; x < t.size(); ++x) {
    if (t[x] == 0) members.push_back(x);
  }
  auto s = Subgroup::from_members(alpha.source(), std::move(members));
  if (!s) throw InvariantError("kernel is not a subgroup");
  return std::move(*s);
}

Subgroup image(const Homomorphism& alpha) { return image_of(alpha, whole_group(alpha.source())); }

Subgroup image_of(const Homomorphism& alpha, const Subgroup& k) {
  if (!(k.parent() == alpha.source())) throw InputError("image_of: subgroup of a different group");
  std::vector<std::size_t> members;
  for (std::size_t x : k.member_indices()) members.push_back(alpha.apply_index(x));
  auto s = Subgroup::from_members(alpha.target(), std::move(members));
  if (!s) throw InvariantError("image is not a subgroup");
  return std::move(*s);
}

bool is_automorphism(const Homomorphism& alpha) {
  return alpha.is_endomorphism() && image(alpha).order() == alpha.source().order();
}

std::vector<Homomorphism> enumerate_automorphisms(const FiniteAbelianGroup& g, std::uint64_t max_candidates) {
  const std::size_t r = g.rank();
  const auto& n = g.factors();
  // Allowed values of entry (i, j): multiples of m_i / gcd(m_i, n_j) below m_i.
  std::vector<std::int64_t> step(r * r), count(r * r);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      const std::int64_t gcd = std::gcd(n[i], n[j]);
      step[i * r + j] = n[i] / gcd;
      count[i * r + j] = gcd;
      if (total > max_candidates / static_cast<std::uint64_t>(gcd)) {
        throw InputError("automorphism enumeration of " + to_string(g) + " exceeds " +
                         std::to_string(max_candidates) + " candidate matrices");
      }
      total *= static_cast<std::uint64_t>(gcd);
    }
  }

  // A map is injective iff no element of prime order lies in its kernel.
  std::vector<Element> socle;
  for (std::size_t x = 1; x < g.order(); ++x) {
    Element e = g.element_at(x);
    if (prime_of_prime_power(g.element_order(e)) == g.element_order(e)) socle.push_back(std::move(e));
  }

  std::vector<std::int64_t> digit(r * r, 0);
  std::vector<Homomorphism> out;
  Homomorphism::Matrix m(r, std::vector<std::int64_t>(r, 0));
  for (std::uint64_t c = 0; c < total; ++c) {
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) m[i][j] = digit[i * r + j] * step[i * r + j];
    }
    bool injective = true;
    for (const auto& x : socle) {
      bool zero = true;
      for (std::size_t i = 0; i < r && zero; ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < r; ++j) acc = (acc + m[i][j] * x.residues[j]) % n[i];
        zero = acc == 0;
      }
      if (zero) {
        injective = false;
        break;
      }
    }
    if (injective) out.push_back(Homomorphism::from_matrix(g, g, m));
    // odometer, last entry fastest so output follows row-major lexicographic order
    for (std::size_t k = r * r; k-- > 0;) {
      if (++digit[k] < count[k]) break;
      digit[k] = 0;
    }
  }
  return out;
}

bool condition_1_holds(const Homomorphism& alpha) {
  if (!is_automorphism(alpha)) throw PreconditionError("condition (1) needs an automorphism");
  return kernel(Homomorphism::identity(alpha.source()) + alpha).is_trivial();
}

}  // namespace heyde
