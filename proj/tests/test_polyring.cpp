#include <doctest.h>

#include <random>

#include "addcomb/permdet.hpp"
#include "addcomb/polyring.hpp"
#include "oracle.hpp"

using namespace addcomb;
using namespace addcomb::poly;

namespace {

const CoefficientRing Z = CoefficientRing::integers();

SparsePoly x(std::size_t arity, std::size_t i) { return SparsePoly::variable(Z, arity, i); }
SparsePoly one(std::size_t arity) { return SparsePoly::constant(Z, arity, 1); }

SparsePoly random_poly(std::mt19937_64& rng, CoefficientRing ring, std::size_t arity, int max_terms, int max_exp) {
  std::uniform_int_distribution<int> nterms(0, max_terms), e(0, max_exp), c(-9, 9);
  SparsePoly p(ring, arity);
  for (int t = nterms(rng); t > 0; --t) {
    Monomial m(arity);
    for (std::size_t i = 0; i < arity; ++i) m[i] = static_cast<std::uint32_t>(e(rng));
    p.add_term(m, c(rng));
  }
  return p;
}

}  // namespace

TEST_CASE("capped multiplication drops monomials above the cap") {
  SparsePoly f = one(1) + x(1, 0);
  SparsePoly g = mul_capped(f, f, DegreeCap::uniform(1, 1));
  CHECK(g == one(1) + x(1, 0).scaled(2));
  CHECK(g.to_string() == "2*x1 + 1");
}

TEST_CASE("multiplying by one is the identity") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto f = random_poly(rng, Z, 3, 6, 3);
    CHECK(mul_capped(f, one(3), DegreeCap::unbounded(3)) == f);
  }
}

TEST_CASE("capped and uncapped chains agree below the cap") {
  SparsePoly f = one(1) + x(1, 0);
  std::vector<SparsePoly> factors(3, f);
  auto capped = expand_product(factors, DegreeCap::uniform(1, 2));
  auto full = expand_product(factors, DegreeCap::unbounded(1));
  CHECK(capped.coeff(Monomial{2}) == 3);
  CHECK(full.coeff(Monomial{2}) == 3);
  CHECK(capped.coeff(Monomial{3}) == 0);
  CHECK(full.coeff(Monomial{3}) == 1);
}

TEST_CASE("coefficient extraction") {
  SparsePoly s = x(2, 0) + x(2, 1);
  CHECK(coeff(s * s, Monomial{1, 1}) == 2);
  CHECK(coeff(SparsePoly(Z, 1), Monomial{0}) == 0);
  CHECK_THROWS_AS(coeff(s, Monomial{1}), InvalidInput);

  // Variables x1, x2, y1, y2, c1, c2.
  auto v = [](std::size_t i) { return x(6, i); };
  SparsePoly p = (v(1) - v(0)) * (v(3) - v(2)) * (v(5) * v(1) * v(3) - v(4) * v(0) * v(2));
  PartialMonomial target({1, 1, 1, 1, std::nullopt, std::nullopt});
  CHECK(coeff_partial(p, target) == v(5) - v(4));
  std::vector<SparsePoly> factors{v(1) - v(0), v(3) - v(2), v(5) * v(1) * v(3) - v(4) * v(0) * v(2)};
  CHECK(coeff_of_product(factors, target) == v(5) - v(4));
}

TEST_CASE("expand_product edge cases") {
  CHECK(expand_product(Z, 2, {}, DegreeCap::unbounded(2)) == one(2));
  std::vector<SparsePoly> single{x(2, 1) - x(2, 0)};
  CHECK(expand_product(single, DegreeCap::uniform(2, 1)) == x(2, 1) - x(2, 0));
  CHECK_THROWS_AS(mul_capped(one(2), one(3), DegreeCap::unbounded(2)), InvalidInput);
  auto p5 = CoefficientRing::mod_p(5);
  CHECK_THROWS_AS(mul_capped(one(2), SparsePoly::constant(p5, 2, 1), DegreeCap::unbounded(2)), InvalidInput);
  CHECK_THROWS_AS(CoefficientRing::mod_p(9), InvalidInput);
}

TEST_CASE("Vandermonde leading coefficient against a term-choice oracle") {
  std::vector<std::size_t> vars{0, 1, 2};
  auto v = vandermonde_product(Z, 3, vars);
  // Oracle: each factor (x_j - x_i) picks x_j (+) or x_i (-); sum the signed
  // choices that land on exponent vector (0, 1, 2).
  const std::pair<int, int> pairs[] = {{0, 1}, {0, 2}, {1, 2}};
  auto oracle_coeff = [&](std::array<int, 3> target) {
    int total = 0;
    for (int mask = 0; mask < 8; ++mask) {
      std::array<int, 3> e{0, 0, 0};
      int sign = 1;
      for (int f = 0; f < 3; ++f) {
        if (mask >> f & 1) {
          e[pairs[f].second]++;
        } else {
          e[pairs[f].first]++;
          sign = -sign;
        }
      }
      if (e == target) total += sign;
    }
    return total;
  };
  CHECK(oracle_coeff({0, 1, 2}) == 1);
  CHECK(v.coeff(Monomial{0, 1, 2}) == 1);
  for (std::uint32_t a = 0; a <= 3; ++a)
    for (std::uint32_t b = 0; a + b <= 3; ++b) {
      std::uint32_t c = 3 - a - b;
      CHECK(v.coeff(Monomial{a, b, c}) ==
            oracle_coeff({static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)}));
    }
}

TEST_CASE("power of a linear form") {
  std::vector<Integer> ones{1, 1};
  CHECK(power_linear_form(Z, ones, 2, DegreeCap::uniform(2, 1)) == (x(2, 0) * x(2, 1)).scaled(2));
  CHECK(power_linear_form(Z, ones, 0, DegreeCap::unbounded(2)) == one(2));
  CHECK(power_linear_form(Z, ones, 3, DegreeCap::unbounded(2)).coeff(Monomial{2, 1}) == 3);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> c(-3, 3), e(0, 5), capd(0, 4);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Integer> coeffs{c(rng), c(rng), c(rng)};
    const auto exp = static_cast<std::uint32_t>(e(rng));
    DegreeCap cap({static_cast<std::uint32_t>(capd(rng)), std::nullopt, static_cast<std::uint32_t>(capd(rng))});
    SparsePoly lin(Z, 3);
    for (std::size_t i = 0; i < 3; ++i) lin += x(3, i).scaled(coeffs[i]);
    std::vector<SparsePoly> copies(exp, lin);
    CHECK(power_linear_form(Z, coeffs, exp, cap) == expand_product(Z, 3, copies, cap));
  }
}

TEST_CASE("ring laws on random sparse polynomials") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t arity = 1 + trial % 4;
    auto a = random_poly(rng, Z, arity, 6, 3);
    auto b = random_poly(rng, Z, arity, 6, 3);
    auto c = random_poly(rng, Z, arity, 6, 3);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("truncation soundness") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> capd(0, 4), nf(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t arity = 1 + trial % 3;
    std::vector<SparsePoly> factors;
    for (int i = nf(rng); i > 0; --i) factors.push_back(random_poly(rng, Z, arity, 4, 2));
    std::vector<std::optional<std::uint32_t>> caps(arity);
    for (auto& cp : caps) cp = static_cast<std::uint32_t>(capd(rng));
    DegreeCap cap(caps);
    auto capped = expand_product(Z, arity, factors, cap);
    auto full = expand_product(Z, arity, factors, DegreeCap::unbounded(arity));
    for (const auto& [m, c] : full.terms()) {
      if (cap.admits(m)) CHECK(capped.coeff(m) == c);
    }
    for (const auto& [m, c] : capped.terms()) CHECK(cap.admits(m));
  }
}

TEST_CASE("coeff_of_product agrees with full expansion") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> t(0, 3), coin(0, 1);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<SparsePoly> factors;
    for (int i = 0; i < 3; ++i) factors.push_back(random_poly(rng, Z, 3, 4, 2));
    std::vector<std::optional<std::uint32_t>> target(3);
    for (auto& e : target) {
      if (coin(rng)) e = static_cast<std::uint32_t>(t(rng));
    }
    PartialMonomial pm(target);
    auto full = expand_product(factors, DegreeCap::unbounded(3));
    CHECK(coeff_of_product(factors, pm) == coeff_partial(full, pm));
  }
}

TEST_CASE("Vandermonde determinant equals the product of differences") {
  using permdet::PolyMatrix;
  for (std::size_t n = 1; n <= 4; ++n) {
    PolyMatrix m(n, SparsePoly(Z, n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) = SparsePoly::term(Z, Monomial::variable(n, j, static_cast<std::uint32_t>(i)), 1);
    std::vector<std::size_t> vars(n);
    std::iota(vars.begin(), vars.end(), 0);
    CHECK(permdet::determinant(m, Z, n) == vandermonde_product(Z, n, vars));
  }
}

TEST_CASE("integer coefficients reduce to the modular computation") {
  std::mt19937_64 rng(31);
  for (std::uint64_t p : {2, 3, 5, 7, 13}) {
    auto Fp = CoefficientRing::mod_p(p);
    for (int trial = 0; trial < 20; ++trial) {
      auto a = random_poly(rng, Z, 3, 5, 3);
      auto b = random_poly(rng, Z, 3, 5, 3);
      CHECK((a * b).reduced_mod(p) == a.reduced_mod(p) * b.reduced_mod(p));
      CHECK(mul_capped(a, b, DegreeCap::uniform(3, 3)).reduced_mod(p) ==
            mul_capped(a.reduced_mod(p), b.reduced_mod(p), DegreeCap::uniform(3, 3)));
      CHECK(a.reduced_mod(p).ring() == Fp);
    }
  }
}

TEST_CASE("evaluation") {
  auto f = SparsePoly::parse("2*x1*x2 - 1", Z, 2);
  std::vector<Integer> pt{3, 4};
  CHECK(f.evaluate(pt) == 23);
  auto g = f.reduced_mod(5);
  CHECK(g.evaluate(pt) == 3);
  CHECK(f.total_degree() == 2);
  CHECK(SparsePoly(Z, 2).total_degree() == -1);
}

TEST_CASE("canonical text form round-trips") {
  auto f = SparsePoly::parse("2*x1*x2 - 1", Z, 2);
  CHECK(f.to_string() == "2*x1*x2 - 1");
  CHECK(SparsePoly::parse("-1 + x2*x1*2", Z, 2) == f);
  CHECK(SparsePoly::parse("x1^3 - 3*x1^2*x2", Z, 2).to_string() == "x1^3 - 3*x1^2*x2");
  CHECK_THROWS_AS(SparsePoly::parse("x3", Z, 2), InvalidInput);
  CHECK_THROWS_AS(SparsePoly::parse("2 x1", Z, 2), InvalidInput);

  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    auto p = random_poly(rng, Z, 4, 6, 3);
    CHECK(SparsePoly::parse(p.to_string(), Z, 4) == p);
  }
  std::vector<std::string> names{"a", "b"};
  auto h = SparsePoly::parse("a^2 - b", Z, 2, names);
  CHECK(h.to_string(names) == "a^2 - b");
}
