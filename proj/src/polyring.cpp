#include "addcomb/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include <boost/functional/hash.hpp>

namespace addcomb::poly {

CoefficientRing CoefficientRing::mod_p(std::uint64_t p) {
  if (!is_prime(p)) throw InvalidInput("field modulus " + std::to_string(p) + " is not prime");
  if (p >= (std::uint64_t{1} << 32)) throw InvalidInput("field modulus must be below 2^32");
  return CoefficientRing(p);
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(std::size_t arity, std::size_t index, std::uint32_t power) {
  Monomial m(arity);
  m.exps_.at(index) = power;
  return m;
}

std::uint64_t Monomial::total_degree() const {
  std::uint64_t d = 0;
  for (auto e : exps_) d += e;
  return d;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  if (a.arity() != b.arity()) throw InvalidInput("monomial arity mismatch");
  Monomial r = a;
  for (std::size_t i = 0; i < r.arity(); ++i) r.exps_[i] += b.exps_[i];
  return r;
}

bool Monomial::grlex_less(const Monomial& a, const Monomial& b) {
  auto da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db;
  return std::lexicographical_compare(a.exps_.begin(), a.exps_.end(), b.exps_.begin(), b.exps_.end());
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  return boost::hash_range(m.exponents().begin(), m.exponents().end());
}

DegreeCap DegreeCap::at(const Monomial& m) {
  std::vector<std::optional<std::uint32_t>> caps(m.arity());
  for (std::size_t i = 0; i < m.arity(); ++i) caps[i] = m[i];
  return DegreeCap(std::move(caps));
}

bool DegreeCap::admits(const Monomial& m) const {
  for (std::size_t i = 0; i < caps_.size(); ++i) {
    if (caps_[i] && m[i] > *caps_[i]) return false;
  }
  return true;
}

PartialMonomial::PartialMonomial(const Monomial& m) : exps_(m.arity()) {
  for (std::size_t i = 0; i < m.arity(); ++i) exps_[i] = m[i];
}

DegreeCap PartialMonomial::cap() const { return DegreeCap(exps_); }

// -------------------------------------------------------------- SparsePoly

SparsePoly SparsePoly::constant(CoefficientRing ring, std::size_t arity, const Integer& c) {
  SparsePoly p(ring, arity);
  p.add_term(Monomial(arity), c);
  return p;
}

SparsePoly SparsePoly::variable(CoefficientRing ring, std::size_t arity, std::size_t index) {
  return term(ring, Monomial::variable(arity, index), 1);
}

SparsePoly SparsePoly::term(CoefficientRing ring, const Monomial& m, const Integer& c) {
  SparsePoly p(ring, m.arity());
  p.add_term(m, c);
  return p;
}

void SparsePoly::add_term(const Monomial& m, const Integer& c) {
  if (m.arity() != arity_) throw InvalidInput("monomial arity does not match polynomial arity");
  if (ring_.is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(m, 0);
  it->second = ring_.reduce(it->second + c);
  if (it->second == 0) terms_.erase(it);
}

Integer SparsePoly::coeff(const Monomial& m) const {
  if (m.arity() != arity_) throw InvalidInput("monomial arity does not match polynomial arity");
  auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

std::int64_t SparsePoly::total_degree() const {
  std::int64_t d = -1;
  for (const auto& [m, c] : terms_) d = std::max<std::int64_t>(d, static_cast<std::int64_t>(m.total_degree()));
  return d;
}

std::vector<std::uint32_t> SparsePoly::degrees() const {
  std::vector<std::uint32_t> d(arity_, 0);
  for (const auto& [m, c] : terms_) {
    for (std::size_t i = 0; i < arity_; ++i) d[i] = std::max(d[i], m[i]);
  }
  return d;
}

Integer SparsePoly::evaluate(std::span<const Integer> point) const {
  if (point.size() != arity_) throw InvalidInput("evaluation point has wrong arity");
  auto deg = degrees();
  std::vector<std::vector<Integer>> powers(arity_);
  for (std::size_t i = 0; i < arity_; ++i) {
    powers[i].resize(deg[i] + 1);
    powers[i][0] = 1;
    for (std::uint32_t e = 1; e <= deg[i]; ++e) powers[i][e] = ring_.reduce(powers[i][e - 1] * point[i]);
  }
  Integer acc = 0;
  for (const auto& [m, c] : terms_) {
    Integer t = c;
    for (std::size_t i = 0; i < arity_; ++i) {
      if (m[i]) t *= powers[i][m[i]];
    }
    acc += t;
  }
  return ring_.reduce(acc);
}

std::vector<std::pair<Monomial, Integer>> SparsePoly::sorted_terms() const {
  std::vector<std::pair<Monomial, Integer>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return Monomial::grlex_less(b.first, a.first); });
  return out;
}

std::string SparsePoly::to_string(std::span<const std::string> names) const {
  if (!names.empty() && names.size() != arity_) throw InvalidInput("variable name count does not match arity");
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : sorted_terms()) {
    Integer mag = c < 0 ? Integer(-c) : c;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < arity_; ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names.empty() ? "x" + std::to_string(i + 1) : names[i];
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    if (mono.empty()) {
      out += mag.str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.str() + "*" + mono;
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, CoefficientRing ring, std::size_t arity, std::span<const std::string> names)
      : text_(text), ring_(ring), arity_(arity), names_(names) {}

  SparsePoly parse() {
    SparsePoly out(ring_, arity_);
    skip_ws();
    bool first = true;
    while (pos_ < text_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = next() == '-' ? -1 : 1;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [m, c] = parse_term();
      out.add_term(m, c * sign);
      skip_ws();
    }
    if (first) fail("empty polynomial");
    return out;
  }

 private:
  std::pair<Monomial, Integer> parse_term() {
    Monomial m(arity_);
    Integer c = 1;
    while (true) {
      skip_ws();
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        c *= Integer(read_digits());
      } else if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
        std::size_t var = resolve(read_name());
        std::uint32_t power = 1;
        skip_ws();
        if (peek() == '^') {
          next();
          skip_ws();
          power = static_cast<std::uint32_t>(std::stoul(read_digits()));
        }
        m[var] += power;
      } else {
        fail("expected a number or variable");
      }
      skip_ws();
      if (peek() != '*') break;
      next();
    }
    return {m, c};
  }

  std::size_t resolve(const std::string& name) {
    if (!names_.empty()) {
      auto it = std::find(names_.begin(), names_.end(), name);
      if (it == names_.end()) fail("unknown variable '" + name + "'");
      return static_cast<std::size_t>(it - names_.begin());
    }
    if (name.size() < 2 || name[0] != 'x' ||
        !std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      fail("unknown variable '" + name + "'");
    }
    auto idx = std::stoul(name.substr(1));
    if (idx == 0 || idx > arity_) fail("variable '" + name + "' outside arity " + std::to_string(arity_));
    return idx - 1;
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string read_name() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char next() { return text_[pos_++]; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  CoefficientRing ring_;
  std::size_t arity_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

SparsePoly SparsePoly::parse(std::string_view text, CoefficientRing ring, std::size_t arity,
                             std::span<const std::string> names) {
  if (!names.empty() && names.size() != arity) throw InvalidInput("variable name count does not match arity");
  return PolyParser(text, ring, arity, names).parse();
}

void SparsePoly::require_compatible(const SparsePoly& o, const char* op) const {
  if (arity_ != o.arity_) throw InvalidInput(std::string("arity mismatch in ") + op);
  if (!(ring_ == o.ring_)) throw InvalidInput(std::string("coefficient ring mismatch in ") + op);
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly r(ring_, arity_);
  for (const auto& [m, c] : terms_) r.add_term(m, -c);
  return r;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  require_compatible(o, "addition");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  require_compatible(o, "subtraction");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  return mul_capped(a, b, DegreeCap::unbounded(a.arity()));
}

SparsePoly SparsePoly::scaled(const Integer& c) const {
  SparsePoly r(ring_, arity_);
  for (const auto& [m, v] : terms_) r.add_term(m, v * c);
  return r;
}

SparsePoly SparsePoly::reduced_mod(std::uint64_t p) const {
  if (ring_.is_modular()) throw InvalidInput("reduced_mod requires an integer polynomial");
  SparsePoly r(CoefficientRing::mod_p(p), arity_);
  for (const auto& [m, c] : terms_) r.add_term(m, c);
  return r;
}

bool operator==(const SparsePoly& a, const SparsePoly& b) {
  return a.ring_ == b.ring_ && a.arity_ == b.arity_ && a.terms_ == b.terms_;
}

// ------------------------------------------------------------- operations

SparsePoly mul_capped(const SparsePoly& f, const SparsePoly& g, const DegreeCap& cap) {
  if (f.arity() != g.arity()) throw InvalidInput("arity mismatch in mul_capped");
  if (!(f.ring() == g.ring())) throw InvalidInput("coefficient ring mismatch in mul_capped");
  if (cap.arity() != f.arity()) throw InvalidInput("cap arity mismatch in mul_capped");
  const std::size_t n = f.arity();
  SparsePoly::TermMap acc;
  acc.reserve(f.size() * g.size());
  Monomial m(n);
  for (const auto& [mf, cf] : f.terms()) {
    if (!cap.admits(mf)) continue;
    for (const auto& [mg, cg] : g.terms()) {
      bool ok = true;
      for (std::size_t i = 0; i < n; ++i) {
        m[i] = mf[i] + mg[i];
        if (cap[i] && m[i] > *cap[i]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      auto [it, inserted] = acc.try_emplace(m, 0);
      it->second += cf * cg;
    }
  }
  SparsePoly out(f.ring(), n);
  for (auto& [mono, c] : acc) out.add_term(mono, c);
  return out;
}

SparsePoly expand_product(CoefficientRing ring, std::size_t arity, std::span<const SparsePoly> factors,
                          const DegreeCap& cap) {
  SparsePoly acc = SparsePoly::constant(ring, arity, 1);
  for (const auto& f : factors) acc = mul_capped(acc, f, cap);
  return acc;
}

SparsePoly expand_product(std::span<const SparsePoly> factors, const DegreeCap& cap) {
  if (factors.empty()) throw InvalidInput("expand_product of no factors needs a ring and arity");
  return expand_product(factors.front().ring(), factors.front().arity(), factors, cap);
}

namespace {

void multinomial_terms(const CoefficientRing& ring, std::span<const Integer> coeffs, const DegreeCap& cap,
                       std::size_t var, std::uint32_t remaining, Monomial& mono, const Integer& acc,
                       SparsePoly& out) {
  const std::size_t n = coeffs.size();
  if (var == n) {
    if (remaining == 0) out.add_term(mono, acc);
    return;
  }
  std::uint32_t hi = remaining;
  if (ring.is_zero(coeffs[var])) hi = 0;
  if (cap[var]) hi = std::min(hi, *cap[var]);
  Integer power = 1;
  for (std::uint32_t a = 0; a <= hi; ++a) {
    if (a > 0) power *= coeffs[var];
    mono[var] = a;
    multinomial_terms(ring, coeffs, cap, var + 1, remaining - a, mono,
                      acc * binomial(remaining, a) * power, out);
  }
  mono[var] = 0;
}

}  // namespace

SparsePoly power_linear_form(CoefficientRing ring, std::span<const Integer> coeffs, std::uint32_t e,
                             const DegreeCap& cap) {
  if (cap.arity() != coeffs.size()) throw InvalidInput("cap arity mismatch in power_linear_form");
  SparsePoly out(ring, coeffs.size());
  Monomial mono(coeffs.size());
  multinomial_terms(ring, coeffs, cap, 0, e, mono, Integer(1), out);
  return out;
}

Integer coeff(const SparsePoly& f, const Monomial& m) { return f.coeff(m); }

SparsePoly coeff_partial(const SparsePoly& f, const PartialMonomial& target) {
  if (target.arity() != f.arity()) throw InvalidInput("arity mismatch in coefficient extraction");
  SparsePoly out(f.ring(), f.arity());
  for (const auto& [m, c] : f.terms()) {
    Monomial rest = m;
    bool match = true;
    for (std::size_t i = 0; i < m.arity() && match; ++i) {
      if (target[i]) {
        match = m[i] == *target[i];
        rest[i] = 0;
      }
    }
    if (match) out.add_term(rest, c);
  }
  return out;
}

SparsePoly coeff_of_product(std::span<const SparsePoly> factors, const PartialMonomial& target) {
  if (factors.empty()) throw InvalidInput("coeff_of_product needs at least one factor");
  const std::size_t n = target.arity();
  if (factors.size() == 1) return coeff_partial(factors.front(), target);
  const SparsePoly rest = expand_product(factors.first(factors.size() - 1), target.cap());
  const SparsePoly& last = factors.back();
  if (last.arity() != n || rest.arity() != n) throw InvalidInput("arity mismatch in coeff_of_product");

  auto fixed_part = [&](const Monomial& m) {
    Monomial p(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (target[i]) p[i] = m[i];
    }
    return p;
  };
  std::unordered_map<Monomial, std::vector<std::pair<Monomial, Integer>>, MonomialHash> by_fixed;
  for (const auto& [m, c] : rest.terms()) {
    Monomial free = m;
    for (std::size_t i = 0; i < n; ++i) {
      if (target[i]) free[i] = 0;
    }
    by_fixed[fixed_part(m)].emplace_back(std::move(free), c);
  }

  SparsePoly out(rest.ring(), n);
  for (const auto& [m, c] : last.terms()) {
    Monomial need(n);
    bool ok = true;
    Monomial free = m;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (target[i]) {
        ok = m[i] <= *target[i];
        if (ok) need[i] = *target[i] - m[i];
        free[i] = 0;
      }
    }
    if (!ok) continue;
    auto it = by_fixed.find(need);
    if (it == by_fixed.end()) continue;
    for (const auto& [u, cu] : it->second) out.add_term(u * free, cu * c);
  }
  return out;
}

SparsePoly vandermonde_product(CoefficientRing ring, std::size_t arity, std::span<const std::size_t> vars) {
  std::vector<SparsePoly> factors;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      factors.push_back(SparsePoly::variable(ring, arity, vars[j]) - SparsePoly::variable(ring, arity, vars[i]));
    }
  }
  return expand_product(ring, arity, factors, DegreeCap::unbounded(arity));
}

}  // namespace addcomb::poly
