#include "addcomb/sumsets.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "addcomb/permdet.hpp"

namespace addcomb::sumsets {

using poly::CoefficientRing;
using poly::DegreeCap;
using poly::Monomial;
using poly::PartialMonomial;
using poly::SparsePoly;

std::int64_t restricted_degree(std::int64_t k, std::int64_t m, std::int64_t n) {
  return (k - 1) * n - (m + 1) * choose2(n);
}

namespace {

Integer power(const Integer& base, std::int64_t e) {
  Integer r = 1;
  for (std::int64_t i = 0; i < e; ++i) r *= base;
  return r;
}

void require_condition(std::int64_t k, std::int64_t m, std::int64_t n, const char* what) {
  if (k < 1 || m < 1 || n < 1) throw InvalidInput(std::string(what) + ": parameters must be positive");
  if (k - 1 < m * (n - 1)) throw InvalidInput(std::string(what) + ": need k-1 >= m(n-1)");
}

std::uint64_t require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw InvalidInput("field size " + std::to_string(p) + " is not prime");
  return p;
}

std::vector<Integer> reduced(const std::vector<Integer>& xs, std::uint64_t p) {
  std::vector<Integer> r;
  r.reserve(xs.size());
  for (const auto& x : xs) r.push_back(mod_floor(x, Integer(p)));
  return r;
}

bool pairwise_distinct(std::vector<Integer> xs) {
  std::sort(xs.begin(), xs.end());
  return std::adjacent_find(xs.begin(), xs.end()) == xs.end();
}

bool contains(const std::vector<Integer>& xs, const Integer& v) { return std::find(xs.begin(), xs.end(), v) != xs.end(); }

Integer eval_mod(const Coefficients& f, const Integer& x, std::uint64_t p) {
  Integer acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = mod_floor(acc * x + *it, Integer(p));
  return acc;
}

void require_sets(const std::vector<std::vector<Integer>>& sets, std::size_t n, std::size_t size, std::uint64_t p,
                  const std::string& name) {
  if (sets.size() != n) throw InvalidInput("need exactly n sets " + name + "_i");
  for (std::size_t i = 0; i < n; ++i) {
    if (sets[i].size() != size) {
      throw InvalidInput(name + "_" + std::to_string(i + 1) + " must have exactly " + std::to_string(size) + " elements");
    }
    if (!pairwise_distinct(reduced(sets[i], p))) {
      throw InvalidInput(name + "_" + std::to_string(i + 1) + " has repeated elements mod " + std::to_string(p));
    }
  }
}

}  // namespace

Integer factorial_ratio_k0(std::int64_t k, std::int64_t m, std::int64_t n) {
  require_condition(k, m, n, "K0");
  Integer num = 1, den = power(Integer(m), choose2(n));
  for (std::int64_t r = 0; r < n; ++r) {
    num *= factorial(static_cast<unsigned>(k - 1 - r * m));
    den *= factorial(static_cast<unsigned>(r));
  }
  return exact_div(num, den, "K0 factorial ratio");
}

void SumsetParams::validate() const {
  if (h < 1 || k < 1 || l < 1 || m < 1 || n < 1) throw InvalidInput("h, k, l, m, n must be positive");
  if (k - 1 < m * (n - 1)) throw InvalidInput("need k-1 >= m(n-1)");
  if (l - 1 < h * (n - 1)) throw InvalidInput("need l-1 >= h(n-1)");
  if (K() < (m - 1) * choose2(n) || L() < (h - 1) * choose2(n)) {
    throw FatalInconsistency("K or L below the lower bound implied by k-1 >= m(n-1)");
  }
}

Integer SumsetParams::N() const {
  validate();
  Integer num = 1, den = power(Integer(h * m), choose2(n));
  for (std::int64_t r = 0; r < n; ++r) {
    num *= factorial(static_cast<unsigned>(k - 1 - r * m)) * factorial(static_cast<unsigned>(l - 1 - r * h));
    const Integer rf = factorial(static_cast<unsigned>(r));
    den *= rf * rf;
  }
  return exact_div(num, den, "N factorial ratio");
}

std::string SumsetParams::to_string() const {
  std::ostringstream os;
  os << "h=" << h << " k=" << k << " l=" << l << " m=" << m << " n=" << n;
  return os.str();
}

// ------------------------------------------------------------ coefficient

namespace {

Integer closed_form_constant(const SumsetParams& params) {
  const Integer num = factorial(static_cast<unsigned>(params.K())) * factorial(static_cast<unsigned>(params.L()));
  return exact_div(num, params.N(), "K!L!/N");
}

// Variables x_1..x_n, y_1..y_n, c_1..c_n; c given numerically when supplied.
SparsePoly direct_coefficient(const SumsetParams& params, const std::vector<Integer>* c) {
  params.validate();
  if (params.n > 3 || params.k > 8 || params.l > 8) {
    throw InvalidInput("direct extraction is limited to n <= 3 and k, l <= 8");
  }
  const auto ring = CoefficientRing::integers();
  const std::size_t n = static_cast<std::size_t>(params.n);
  const std::size_t arity = 3 * n;
  auto var = [&](std::size_t idx, std::uint32_t power = 1) {
    return SparsePoly::term(ring, Monomial::variable(arity, idx, power), 1);
  };

  std::vector<std::optional<std::uint32_t>> target(arity);
  for (std::size_t i = 0; i < n; ++i) {
    target[i] = static_cast<std::uint32_t>(params.k - 1);
    target[n + i] = static_cast<std::uint32_t>(params.l - 1);
  }
  const PartialMonomial pm(target);
  const DegreeCap cap = pm.cap();

  std::vector<SparsePoly> factors;
  const auto m = static_cast<std::uint32_t>(params.m);
  const auto h = static_cast<std::uint32_t>(params.h);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) factors.push_back(var(j, m) - var(i, m));
  }
  std::vector<Integer> xs(arity, 0), ys(arity, 0);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = 1;
    ys[n + i] = 1;
  }
  factors.push_back(poly::power_linear_form(ring, xs, static_cast<std::uint32_t>(params.K()), cap));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) factors.push_back(var(n + j, h) - var(n + i, h));
  }
  factors.push_back(poly::power_linear_form(ring, ys, static_cast<std::uint32_t>(params.L()), cap));

  SparsePoly mixed = SparsePoly::constant(ring, arity, 1);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      auto cj = c ? SparsePoly::constant(ring, arity, (*c)[j]) : var(2 * n + j);
      auto ci = c ? SparsePoly::constant(ring, arity, (*c)[i]) : var(2 * n + i);
      mixed = mixed * (cj * var(j) * var(n + j) - ci * var(i) * var(n + i));
    }
  }
  factors.push_back(std::move(mixed));
  return poly::coeff_of_product(factors, pm);
}

SparsePoly project_c(const SparsePoly& f, std::size_t n) {
  SparsePoly out(f.ring(), n);
  for (const auto& [mono, coef] : f.terms()) {
    Monomial m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = mono[2 * n + i];
    out.add_term(m, coef);
  }
  return out;
}

}  // namespace

SparsePoly sdr_coefficient_symbolic(const SumsetParams& params, CoefficientMode mode) {
  params.validate();
  const auto n = static_cast<std::size_t>(params.n);
  if (mode == CoefficientMode::Direct) return project_c(direct_coefficient(params, nullptr), n);
  std::vector<std::size_t> vars(n);
  for (std::size_t i = 0; i < n; ++i) vars[i] = i;
  return poly::vandermonde_product(CoefficientRing::integers(), n, vars).scaled(closed_form_constant(params));
}

Integer sdr_coefficient(const SumsetParams& params, const std::vector<Integer>& c, CoefficientMode mode) {
  params.validate();
  if (c.size() != static_cast<std::size_t>(params.n)) throw InvalidInput("need exactly n values c_i");
  if (mode == CoefficientMode::Direct) {
    return direct_coefficient(params, &c).coeff(Monomial(3 * c.size()));
  }
  Integer v = closed_form_constant(params);
  for (std::size_t j = 0; j < c.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) v *= c[j] - c[i];
  }
  return v;
}

std::string to_string(WitnessStatus s) {
  switch (s) {
    case WitnessStatus::Found:
      return "found";
    case WitnessStatus::Inconsistent:
      return "inconsistent";
    case WitnessStatus::BudgetExceeded:
      return "budget_exceeded";
  }
  return "unknown";
}

// ---------------------------------------------------------- field witness

void validate(const FieldInstance& inst, const SumsetParams& params) {
  params.validate();
  const std::uint64_t p = require_prime(inst.p);
  const auto K = params.K(), L = params.L();
  if (Integer(p) <= Integer(std::max(K, L))) {
    throw InvalidInput("characteristic " + std::to_string(p) + " must exceed max{K, L} = " + std::to_string(std::max(K, L)));
  }
  const auto n = static_cast<std::size_t>(params.n);
  require_sets(inst.a_sets, n, static_cast<std::size_t>(params.k), p, "A");
  require_sets(inst.b_sets, n, static_cast<std::size_t>(params.l), p, "B");
  if (inst.c.size() != n) throw InvalidInput("need exactly n values c_i");
  if (!pairwise_distinct(reduced(inst.c, p))) throw InvalidInput("the c_i must be pairwise distinct");
  auto require_monic = [&](const std::vector<Coefficients>& polys, std::int64_t degree, const std::string& name) {
    if (polys.size() != n) throw InvalidInput("need exactly n polynomials " + name + "_i");
    for (std::size_t i = 0; i < n; ++i) {
      const auto& f = polys[i];
      if (f.size() != static_cast<std::size_t>(degree) + 1 || mod_floor(f.back(), Integer(p)) != 1) {
        throw InvalidInput(name + "_" + std::to_string(i + 1) + " must be monic of degree " + std::to_string(degree));
      }
    }
  };
  require_monic(inst.p_polys, params.m, "P");
  require_monic(inst.q_polys, params.h, "Q");
  if (!pairwise_distinct(reduced(inst.s_excluded, p))) throw InvalidInput("S has repeated elements");
  if (!pairwise_distinct(reduced(inst.t_excluded, p))) throw InvalidInput("T has repeated elements");
  if (static_cast<std::int64_t>(inst.s_excluded.size()) > K) {
    throw InvalidInput("|S| = " + std::to_string(inst.s_excluded.size()) + " exceeds K = " + std::to_string(K));
  }
  if (static_cast<std::int64_t>(inst.t_excluded.size()) > L) {
    throw InvalidInput("|T| = " + std::to_string(inst.t_excluded.size()) + " exceeds L = " + std::to_string(L));
  }
}

FieldWitness field_witness(const FieldInstance& inst, const SumsetParams& params, std::uint64_t budget) {
  validate(inst, params);
  const std::uint64_t p = inst.p;
  const Integer P(p);
  const auto n = static_cast<std::size_t>(params.n);
  const auto c = reduced(inst.c, p);
  const auto s_set = reduced(inst.s_excluded, p);
  const auto t_set = reduced(inst.t_excluded, p);

  FieldWitness result;
  std::vector<Integer> a(n), b(n), pv(n), qv(n), prod(n);
  bool exhausted = false;

  auto clash = [](const std::vector<Integer>& xs, std::size_t upto, const Integer& v) {
    return std::find(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(upto), v) != xs.begin() + static_cast<std::ptrdiff_t>(upto);
  };
  auto sum_of = [&](const std::vector<Integer>& xs) {
    Integer s = 0;
    for (const auto& x : xs) s += x;
    return mod_floor(s, P);
  };

  // Positions 0..n-1 choose a_i, positions n..2n-1 choose b_i.
  std::function<bool(std::size_t)> assign = [&](std::size_t pos) -> bool {
    if (pos == 2 * n) return !contains(t_set, sum_of(b));
    if (pos == n && contains(s_set, sum_of(a))) return false;
    const bool on_a = pos < n;
    const std::size_t i = on_a ? pos : pos - n;
    for (const auto& v : on_a ? inst.a_sets[i] : inst.b_sets[i]) {
      if (result.nodes == budget) {
        exhausted = true;
        return false;
      }
      ++result.nodes;
      const Integer r = mod_floor(v, P);
      if (on_a) {
        a[i] = r;
        pv[i] = eval_mod(inst.p_polys[i], r, p);
        if (clash(pv, i, pv[i])) continue;
      } else {
        b[i] = r;
        qv[i] = eval_mod(inst.q_polys[i], r, p);
        if (clash(qv, i, qv[i])) continue;
        prod[i] = mod_floor(a[i] * r * c[i], P);
        if (clash(prod, i, prod[i])) continue;
      }
      if (assign(pos + 1)) return true;
      if (exhausted) return false;
    }
    return false;
  };

  if (assign(0)) {
    result.status = WitnessStatus::Found;
    result.a = a;
    result.b = b;
  } else {
    result.status = exhausted ? WitnessStatus::BudgetExceeded : WitnessStatus::Inconsistent;
  }
  return result;
}

std::vector<std::string> check_field_witness(const FieldInstance& inst, const std::vector<Integer>& a,
                                             const std::vector<Integer>& b) {
  std::vector<std::string> failed;
  const std::size_t n = inst.a_sets.size();
  const Integer P(inst.p);
  if (a.size() != n || b.size() != n) return {"witness length differs from n"};
  auto member = [&](const std::vector<Integer>& set, const Integer& v) {
    return std::any_of(set.begin(), set.end(), [&](const Integer& x) { return mod_floor(x - v, P) == 0; });
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!member(inst.a_sets[i], a[i])) failed.push_back("a_" + std::to_string(i + 1) + " not in A_" + std::to_string(i + 1));
    if (!member(inst.b_sets[i], b[i])) failed.push_back("b_" + std::to_string(i + 1) + " not in B_" + std::to_string(i + 1));
  }
  Integer sa = 0, sb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sa += a[i];
    sb += b[i];
  }
  if (member(inst.s_excluded, sa)) failed.push_back("a_1+...+a_n lies in S");
  if (member(inst.t_excluded, sb)) failed.push_back("b_1+...+b_n lies in T");
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const std::string tag = " for (i,j) = (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      if (mod_floor(a[i] * b[i] * inst.c[i] - a[j] * b[j] * inst.c[j], P) == 0) failed.push_back("a_i b_i c_i = a_j b_j c_j" + tag);
      if (eval_mod(inst.p_polys[i], a[i], inst.p) == eval_mod(inst.p_polys[j], a[j], inst.p)) {
        failed.push_back("P_i(a_i) = P_j(a_j)" + tag);
      }
      if (eval_mod(inst.q_polys[i], b[i], inst.p) == eval_mod(inst.q_polys[j], b[j], inst.p)) {
        failed.push_back("Q_i(b_i) = Q_j(b_j)" + tag);
      }
    }
  }
  return failed;
}

SparsePoly field_proof_polynomial(const FieldInstance& inst, const SumsetParams& params) {
  validate(inst, params);
  const auto ring = CoefficientRing::mod_p(inst.p);
  const auto n = static_cast<std::size_t>(params.n);
  const std::size_t arity = 2 * n;
  const auto unbounded = DegreeCap::unbounded(arity);
  auto univariate = [&](const Coefficients& f, std::size_t idx) {
    SparsePoly g(ring, arity);
    for (std::size_t e = 0; e < f.size(); ++e) g.add_term(Monomial::variable(arity, idx, static_cast<std::uint32_t>(e)), f[e]);
    return g;
  };
  auto var = [&](std::size_t idx) { return SparsePoly::variable(ring, arity, idx); };

  std::vector<SparsePoly> factors;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      factors.push_back(univariate(inst.p_polys[j], j) - univariate(inst.p_polys[i], i));
      factors.push_back(univariate(inst.q_polys[j], n + j) - univariate(inst.q_polys[i], n + i));
      factors.push_back(SparsePoly::constant(ring, arity, inst.c[j]) * var(j) * var(n + j) -
                        SparsePoly::constant(ring, arity, inst.c[i]) * var(i) * var(n + i));
    }
  }
  std::vector<Integer> xs(arity, 0), ys(arity, 0);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = 1;
    ys[n + i] = 1;
  }
  const auto add_sum_part = [&](const std::vector<Integer>& coeffs, std::int64_t degree, const std::vector<Integer>& excl) {
    factors.push_back(poly::power_linear_form(ring, coeffs, static_cast<std::uint32_t>(degree - static_cast<std::int64_t>(excl.size())), unbounded));
    const auto linear = poly::power_linear_form(ring, coeffs, 1, unbounded);
    for (const auto& s : excl) factors.push_back(linear - SparsePoly::constant(ring, arity, s));
  };
  add_sum_part(xs, params.K(), inst.s_excluded);
  add_sum_part(ys, params.L(), inst.t_excluded);
  return poly::expand_product(ring, arity, factors, unbounded);
}

FieldInstance saturate_exclusions(const FieldInstance& inst, const SumsetParams& params) {
  FieldInstance out = inst;
  const Integer P(inst.p);
  auto saturate = [&](std::vector<Integer>& excl, std::int64_t bound) {
    const bool has_zero = std::any_of(excl.begin(), excl.end(), [&](const Integer& v) { return mod_floor(v, P) == 0; });
    if (!has_zero && static_cast<std::int64_t>(excl.size()) < bound) excl.push_back(0);
  };
  saturate(out.s_excluded, params.K());
  saturate(out.t_excluded, params.L());
  return out;
}

// ---------------------------------------------------------- group witness

namespace {

using groups::GroupElement;
using ElementSet = std::vector<GroupElement>;

ElementSet canonical(ElementSet s) {
  std::sort(s.begin(), s.end());
  return s;
}

bool distinct_elements(const ElementSet& s) {
  const auto c = canonical(s);
  return std::adjacent_find(c.begin(), c.end()) == c.end();
}

std::set<ElementSet> canonical_family(const groups::GroupSpec& g, const std::vector<ElementSet>& family, std::size_t n,
                                      const std::string& name) {
  std::set<ElementSet> out;
  for (const auto& s : family) {
    for (const auto& x : s) {
      if (!g.conforms(x)) throw InvalidInput("a member of " + name + " has an element outside " + g.to_string());
    }
    if (s.size() != n || !distinct_elements(s)) {
      throw InvalidInput("every member of " + name + " must be a set of exactly n distinct elements");
    }
    out.insert(canonical(s));
  }
  return out;
}

}  // namespace

void validate(const GroupInstance& inst, const SumsetParams& params) {
  params.validate();
  const auto& g = inst.group;
  const auto n = static_cast<std::size_t>(params.n);
  auto require_family = [&](const std::vector<ElementSet>& sets, std::size_t size, const std::string& name) {
    if (sets.size() != n) throw InvalidInput("need exactly n sets " + name + "_i");
    for (std::size_t i = 0; i < n; ++i) {
      const std::string label = name + "_" + std::to_string(i + 1);
      if (sets[i].size() != size) throw InvalidInput(label + " must have exactly " + std::to_string(size) + " elements");
      for (const auto& x : sets[i]) {
        if (!g.conforms(x)) throw InvalidInput(label + " has an element outside " + g.to_string());
      }
      if (!distinct_elements(sets[i])) throw InvalidInput(label + " has repeated elements");
    }
  };
  require_family(inst.a_sets, static_cast<std::size_t>(params.k), "A");
  require_family(inst.b_sets, static_cast<std::size_t>(params.l), "B");
  if (inst.c.size() != n) throw InvalidInput("need exactly n elements c_i");
  for (const auto& x : inst.c) {
    if (!g.conforms(x)) throw InvalidInput("c has an element outside " + g.to_string());
  }
  if (!distinct_elements(inst.c)) throw InvalidInput("the c_i must be pairwise distinct");
  const auto s = canonical_family(g, inst.s_family, n, "S");
  const auto t = canonical_family(g, inst.t_family, n, "T");
  if (static_cast<std::int64_t>(s.size()) > params.K()) {
    throw InvalidInput("|S| = " + std::to_string(s.size()) + " exceeds K = " + std::to_string(params.K()));
  }
  if (static_cast<std::int64_t>(t.size()) > params.L()) {
    throw InvalidInput("|T| = " + std::to_string(t.size()) + " exceeds L = " + std::to_string(params.L()));
  }
}

GroupWitness group_witness(const GroupInstance& inst, const SumsetParams& params, std::uint64_t budget) {
  validate(inst, params);
  const auto& g = inst.group;
  const auto n = static_cast<std::size_t>(params.n);
  const auto s_family = canonical_family(g, inst.s_family, n, "S");
  const auto t_family = canonical_family(g, inst.t_family, n, "T");

  GroupWitness result;
  std::vector<GroupElement> a(n), b(n), ma(n), hb(n), total(n);
  bool exhausted = false;
  auto clash = [](const std::vector<GroupElement>& xs, std::size_t upto, const GroupElement& v) {
    for (std::size_t q = 0; q < upto; ++q) {
      if (xs[q] == v) return true;
    }
    return false;
  };

  std::function<bool(std::size_t)> assign = [&](std::size_t pos) -> bool {
    if (pos == 2 * n) return !t_family.contains(canonical(b));
    if (pos == n && s_family.contains(canonical(a))) return false;
    const bool on_a = pos < n;
    const std::size_t i = on_a ? pos : pos - n;
    for (const auto& v : on_a ? inst.a_sets[i] : inst.b_sets[i]) {
      if (result.nodes == budget) {
        exhausted = true;
        return false;
      }
      ++result.nodes;
      if (on_a) {
        a[i] = v;
        ma[i] = g.scale(params.m, v);
        if (clash(ma, i, ma[i])) continue;
      } else {
        b[i] = v;
        hb[i] = g.scale(params.h, v);
        if (clash(hb, i, hb[i])) continue;
        total[i] = g.add(g.add(a[i], v), inst.c[i]);
        if (clash(total, i, total[i])) continue;
      }
      if (assign(pos + 1)) return true;
      if (exhausted) return false;
    }
    return false;
  };

  if (assign(0)) {
    result.status = WitnessStatus::Found;
    result.a = a;
    result.b = b;
  } else {
    result.status = exhausted ? WitnessStatus::BudgetExceeded : WitnessStatus::Inconsistent;
  }
  return result;
}

std::vector<std::string> check_group_witness(const GroupInstance& inst, const SumsetParams& params,
                                             const std::vector<GroupElement>& a, const std::vector<GroupElement>& b) {
  const auto& g = inst.group;
  const std::size_t n = inst.a_sets.size();
  if (a.size() != n || b.size() != n) return {"witness length differs from n"};
  std::vector<std::string> failed;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& as = inst.a_sets[i];
    const auto& bs = inst.b_sets[i];
    if (std::find(as.begin(), as.end(), a[i]) == as.end()) failed.push_back("a_" + std::to_string(i + 1) + " not in A_" + std::to_string(i + 1));
    if (std::find(bs.begin(), bs.end(), b[i]) == bs.end()) failed.push_back("b_" + std::to_string(i + 1) + " not in B_" + std::to_string(i + 1));
  }
  auto as_set = [](const ElementSet& xs) { return std::set<GroupElement>(xs.begin(), xs.end()); };
  for (const auto& s : inst.s_family) {
    if (as_set(s) == as_set(a)) failed.push_back("{a_1,...,a_n} lies in S");
  }
  for (const auto& t : inst.t_family) {
    if (as_set(t) == as_set(b)) failed.push_back("{b_1,...,b_n} lies in T");
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const std::string tag = " for (i,j) = (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      if (g.sum_all(std::vector{a[i], b[i], inst.c[i]}) == g.sum_all(std::vector{a[j], b[j], inst.c[j]})) {
        failed.push_back("a_i+b_i+c_i = a_j+b_j+c_j" + tag);
      }
      if (g.subtract(g.scale(params.m, a[i]), g.scale(params.m, a[j])) == g.identity()) failed.push_back("m a_i = m a_j" + tag);
      if (g.subtract(g.scale(params.h, b[i]), g.scale(params.h, b[j])) == g.identity()) failed.push_back("h b_i = h b_j" + tag);
    }
  }
  return failed;
}

// ---------------------------------------------------------- cardinality bounds

Integer power_permanent(std::uint64_t p, const std::vector<Integer>& a, const std::vector<Integer>& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw InvalidInput("need as many b_j as a_j");
  const Integer P(p);
  std::vector<Integer> col(n);
  for (std::size_t j = 0; j < n; ++j) col[j] = mod_floor(a[j] * b[j], P);
  permdet::IntMatrix mat(n, Integer(0));
  for (std::size_t j = 0; j < n; ++j) {
    Integer v = 1;
    for (std::size_t i = 0; i < n; ++i) {
      mat(i, j) = v;
      v = mod_floor(v * col[j], P);
    }
  }
  return mod_floor(permdet::permanent(mat), P);
}

namespace {

// Calls visit(tuple) for every tuple of the product of the sets, in order.
void for_each_tuple(const std::vector<std::vector<Integer>>& sets, const std::function<void(const std::vector<Integer>&)>& visit) {
  std::vector<Integer> tuple(sets.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == sets.size()) {
      visit(tuple);
      return;
    }
    for (const auto& v : sets[i]) {
      tuple[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
}

std::vector<std::vector<Integer>> reduced_sets(const std::vector<std::vector<Integer>>& sets, std::uint64_t p) {
  std::vector<std::vector<Integer>> out;
  for (const auto& s : sets) out.push_back(reduced(s, p));
  return out;
}

}  // namespace

SumsetReport permanent_restricted_sumset(std::uint64_t p, std::int64_t m, const std::vector<std::vector<Integer>>& a_sets,
                                         const std::vector<Coefficients>& polys) {
  require_prime(p);
  const auto n = static_cast<std::int64_t>(a_sets.size());
  if (n < 1) throw InvalidInput("need n >= 1");
  const auto k = static_cast<std::int64_t>(a_sets[0].size());
  require_condition(k, m, n, "permanent restricted sumset");
  const auto K = restricted_degree(k, m, n);
  if (Integer(p) <= Integer(K)) {
    throw InvalidInput("characteristic " + std::to_string(p) + " must exceed K = " + std::to_string(K));
  }
  require_sets(a_sets, static_cast<std::size_t>(n), static_cast<std::size_t>(k), p, "A");
  if (polys.size() != static_cast<std::size_t>(n)) throw InvalidInput("need exactly n polynomials P_i");
  std::vector<Integer> leading;
  for (const auto& f : polys) {
    if (f.size() > static_cast<std::size_t>(m) + 1) {
      for (std::size_t e = static_cast<std::size_t>(m) + 1; e < f.size(); ++e) {
        if (mod_floor(f[e], Integer(p)) != 0) throw InvalidInput("every P_i must have degree at most m");
      }
    }
    leading.push_back(f.size() > static_cast<std::size_t>(m) ? mod_floor(f[static_cast<std::size_t>(m)], Integer(p)) : Integer(0));
  }
  if (!pairwise_distinct(leading)) throw InvalidInput("the coefficients [x^m]P_i must be pairwise distinct");

  const auto sets = reduced_sets(a_sets, p);
  const std::vector<Integer> ones(static_cast<std::size_t>(n), 1);
  std::set<Integer> sums;
  SumsetReport report;
  for_each_tuple(sets, [&](const std::vector<Integer>& a) {
    ++report.tuples;
    if (!pairwise_distinct(a)) return;
    std::vector<Integer> values;
    for (std::size_t j = 0; j < a.size(); ++j) values.push_back(eval_mod(polys[j], a[j], p));
    if (power_permanent(p, values, ones) == 0) return;
    Integer s = 0;
    for (const auto& x : a) s += x;
    sums.insert(mod_floor(s, Integer(p)));
  });
  report.elements.assign(sums.begin(), sums.end());
  report.bound = K + 1;
  return report;
}

SdrResult nonvanishing_permanent_sdr(std::uint64_t p, const std::vector<std::vector<Integer>>& a_sets,
                                     const std::vector<Integer>& b, std::uint64_t budget) {
  require_prime(p);
  const std::size_t n = b.size();
  if (n == 0) throw InvalidInput("need n >= 1");
  require_sets(a_sets, n, n, p, "A");
  if (!pairwise_distinct(reduced(b, p))) throw InvalidInput("the b_j must be pairwise distinct");

  const auto sets = reduced_sets(a_sets, p);
  SdrResult result;
  std::vector<Integer> a(n);
  bool exhausted = false;
  std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
    if (i == n) return power_permanent(p, a, b) != 0;
    for (const auto& v : sets[i]) {
      if (std::find(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(i), v) != a.begin() + static_cast<std::ptrdiff_t>(i)) continue;
      if (result.nodes == budget) {
        exhausted = true;
        return false;
      }
      ++result.nodes;
      a[i] = v;
      if (assign(i + 1)) return true;
      if (exhausted) return false;
    }
    return false;
  };
  if (assign(0)) {
    result.status = WitnessStatus::Found;
    result.a = a;
  } else {
    result.status = exhausted ? WitnessStatus::BudgetExceeded : WitnessStatus::Inconsistent;
  }
  return result;
}

DifferenceSumsetReport difference_restricted_sumset(std::uint64_t p, std::int64_t m,
                                                    const std::vector<std::vector<Integer>>& a_sets,
                                                    const std::vector<std::vector<Integer>>& b_sets,
                                                    const std::vector<Integer>& c, const PairSets& excluded) {
  require_prime(p);
  const auto n = static_cast<std::int64_t>(a_sets.size());
  if (n < 1) throw InvalidInput("need n >= 1");
  const auto k = static_cast<std::int64_t>(a_sets[0].size());
  require_condition(k, m, n, "difference restricted sumset");
  const std::int64_t N = (k - 1 - m * (n - 1)) * n;
  if (Integer(p) <= Integer(std::max(m * n, N))) {
    throw InvalidInput("characteristic " + std::to_string(p) + " must exceed max{mn, N} = " + std::to_string(std::max(m * n, N)));
  }
  const auto nn = static_cast<std::size_t>(n);
  require_sets(a_sets, nn, static_cast<std::size_t>(k), p, "A");
  require_sets(b_sets, nn, nn, p, "B");
  if (c.size() != nn) throw InvalidInput("need exactly n values c_i");
  if (!pairwise_distinct(reduced(c, p))) throw InvalidInput("the c_i must be pairwise distinct");
  if (excluded.size() != static_cast<std::size_t>(choose2(n))) throw InvalidInput("need one set S_ij for every pair i < j");
  for (const auto& s : excluded) {
    if (!pairwise_distinct(reduced(s, p))) throw InvalidInput("a set S_ij has repeated elements");
    if (static_cast<std::int64_t>(s.size()) >= 2 * m) throw InvalidInput("every S_ij must have fewer than 2m elements");
  }

  DifferenceSumsetReport report;
  const auto sdr = nonvanishing_permanent_sdr(p, b_sets, c);
  if (sdr.status != WitnessStatus::Found) {
    throw FatalInconsistency("no SDR of the B_i with nonvanishing permanent although the c_i are distinct");
  }
  report.b = sdr.a;
  const Integer P(p);
  const auto sets = reduced_sets(a_sets, p);
  std::vector<std::vector<Integer>> excl;
  for (const auto& s : excluded) excl.push_back(reduced(s, p));
  std::set<Integer> sums;
  for_each_tuple(sets, [&](const std::vector<Integer>& a) {
    ++report.sumset.tuples;
    std::size_t pair = 0;
    for (std::size_t i = 0; i < nn; ++i) {
      for (std::size_t j = i + 1; j < nn; ++j, ++pair) {
        if (contains(excl[pair], mod_floor(a[i] - a[j], P))) return;
        if (mod_floor(a[i] * report.b[i] * c[i] - a[j] * report.b[j] * c[j], P) == 0) return;
      }
    }
    Integer s = 0;
    for (const auto& x : a) s += x;
    sums.insert(mod_floor(s, P));
  });
  report.sumset.elements.assign(sums.begin(), sums.end());
  report.sumset.bound = N + 1;
  return report;
}

// ---------------------------------------------------------- permanent identity

namespace {

void require_identity_scale(std::int64_t k, std::int64_t m, std::int64_t n) {
  require_condition(k, m, n, "permanent identity");
  if (n > 3 || m > 2 || k > 6) throw InvalidInput("permanent identity is limited to n <= 3, m <= 2, k <= 6");
}

Integer identity_constant(std::int64_t k, std::int64_t m, std::int64_t n) {
  const std::int64_t N = (k - 1 - m * (n - 1)) * n;
  Integer num = factorial(static_cast<unsigned>(m * n)) * factorial(static_cast<unsigned>(N));
  Integer den = power(factorial(static_cast<unsigned>(m)), n) * factorial(static_cast<unsigned>(n));
  for (std::int64_t r = 0; r < n; ++r) {
    num *= factorial(static_cast<unsigned>(r * m));
    den *= factorial(static_cast<unsigned>(k - 1 - r * m));
  }
  Integer v = exact_div(num, den, "permanent identity factorial ratio");
  return (m * choose2(n)) % 2 == 0 ? v : Integer(-v);
}

// Variables x_1..x_n, y_1..y_n; result projected onto y.
SparsePoly identity_lhs(std::int64_t k, std::int64_t m, std::int64_t n) {
  const auto ring = CoefficientRing::integers();
  const auto nn = static_cast<std::size_t>(n);
  const std::size_t arity = 2 * nn;
  auto var = [&](std::size_t idx) { return SparsePoly::variable(ring, arity, idx); };
  std::vector<std::optional<std::uint32_t>> target(arity);
  for (std::size_t i = 0; i < nn; ++i) target[i] = static_cast<std::uint32_t>(k - 1);
  const PartialMonomial pm(target);
  std::vector<SparsePoly> factors;
  for (std::size_t j = 0; j < nn; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      for (std::int64_t r = 0; r < 2 * m - 1; ++r) factors.push_back(var(j) - var(i));
    }
  }
  std::vector<Integer> xs(arity, 0);
  for (std::size_t i = 0; i < nn; ++i) xs[i] = 1;
  const std::int64_t N = (k - 1 - m * (n - 1)) * n;
  factors.push_back(poly::power_linear_form(ring, xs, static_cast<std::uint32_t>(N), pm.cap()));
  SparsePoly mixed = SparsePoly::constant(ring, arity, 1);
  for (std::size_t j = 0; j < nn; ++j) {
    for (std::size_t i = 0; i < j; ++i) mixed = mixed * (var(j) * var(nn + j) - var(i) * var(nn + i));
  }
  factors.push_back(std::move(mixed));
  const auto full = poly::coeff_of_product(factors, pm);
  SparsePoly out(ring, nn);
  for (const auto& [mono, coef] : full.terms()) {
    Monomial y(nn);
    for (std::size_t i = 0; i < nn; ++i) y[i] = mono[nn + i];
    out.add_term(y, coef);
  }
  return out;
}

SparsePoly power_permanent_poly(std::size_t n) {
  const auto ring = CoefficientRing::integers();
  permdet::PolyMatrix mat(n, SparsePoly(ring, n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      mat(i, j) = SparsePoly::term(ring, Monomial::variable(n, j, static_cast<std::uint32_t>(i)), 1);
    }
  }
  return permdet::permanent(mat, ring, n);
}

}  // namespace

PolyIdentityReport difference_permanent_identity(std::int64_t k, std::int64_t m, std::int64_t n) {
  require_identity_scale(k, m, n);
  PolyIdentityReport report{identity_lhs(k, m, n), SparsePoly(CoefficientRing::integers(), static_cast<std::size_t>(n)),
                            identity_constant(k, m, n)};
  report.rhs = power_permanent_poly(static_cast<std::size_t>(n)).scaled(report.constant);
  return report;
}

ValueIdentityReport difference_permanent_identity(std::int64_t k, std::int64_t m, std::int64_t n, const std::vector<Integer>& y) {
  require_identity_scale(k, m, n);
  if (y.size() != static_cast<std::size_t>(n)) throw InvalidInput("need exactly n values y_i");
  const auto lhs = identity_lhs(k, m, n);
  permdet::IntMatrix mat(y.size(), Integer(0));
  for (std::size_t j = 0; j < y.size(); ++j) {
    Integer v = 1;
    for (std::size_t i = 0; i < y.size(); ++i, v *= y[j]) mat(i, j) = v;
  }
  return {lhs.evaluate(y), identity_constant(k, m, n) * permdet::permanent(mat)};
}

// ------------------------------------------------------------------ generators

std::vector<Integer> random_subset(rng::Engine& e, std::uint64_t p, std::size_t k) {
  if (k > p) throw InvalidInput("cannot pick " + std::to_string(k) + " distinct residues mod " + std::to_string(p));
  std::vector<Integer> out;
  for (auto v : rng::sample(e, p, k)) out.emplace_back(v);
  return out;
}

Coefficients random_monic(rng::Engine& e, std::uint64_t p, std::size_t degree) {
  Coefficients f;
  for (std::size_t i = 0; i < degree; ++i) f.emplace_back(rng::below(e, p));
  f.emplace_back(1);
  return f;
}

FieldInstance random_field_instance(rng::Engine& e, const SumsetParams& params, std::uint64_t p) {
  params.validate();
  FieldInstance inst;
  inst.p = p;
  const auto n = static_cast<std::size_t>(params.n);
  for (std::size_t i = 0; i < n; ++i) {
    inst.a_sets.push_back(random_subset(e, p, static_cast<std::size_t>(params.k)));
    inst.b_sets.push_back(random_subset(e, p, static_cast<std::size_t>(params.l)));
    inst.p_polys.push_back(random_monic(e, p, static_cast<std::size_t>(params.m)));
    inst.q_polys.push_back(random_monic(e, p, static_cast<std::size_t>(params.h)));
  }
  inst.c = random_subset(e, p, n);
  const auto s_size = rng::below(e, static_cast<std::uint64_t>(std::min<std::int64_t>(params.K(), static_cast<std::int64_t>(p))) + 1);
  const auto t_size = rng::below(e, static_cast<std::uint64_t>(std::min<std::int64_t>(params.L(), static_cast<std::int64_t>(p))) + 1);
  inst.s_excluded = random_subset(e, p, static_cast<std::size_t>(s_size));
  inst.t_excluded = random_subset(e, p, static_cast<std::size_t>(t_size));
  return inst;
}

}  // namespace addcomb::sumsets
