#include <doctest.h>

#include <algorithm>
#include <random>

#include "addcomb/latincube.hpp"
#include "addcomb/random.hpp"

using namespace addcomb;
using namespace addcomb::latin;

namespace {

std::vector<std::size_t> identity(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  return p;
}

/// First n-subset of cells, in lexicographic order of sorted cell lists,
/// forming a Latin transversal. Plain combination enumeration.
std::optional<std::vector<Cell>> brute_force(const Cube& c) {
  const std::size_t n = c.size(), total = n * n * n;
  std::vector<std::size_t> comb(n);
  for (std::size_t t = 0; t < n; ++t) comb[t] = t;
  while (true) {
    std::vector<Cell> cells;
    for (auto idx : comb) cells.push_back({idx / (n * n), idx / n % n, idx % n});
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = a + 1; b < n && ok; ++b) {
        int agree = (cells[a][0] == cells[b][0]) + (cells[a][1] == cells[b][1]) + (cells[a][2] == cells[b][2]);
        ok = agree <= 1 && c.at(cells[a][0], cells[a][1], cells[a][2]) != c.at(cells[b][0], cells[b][1], cells[b][2]);
      }
    if (ok) return cells;
    std::size_t t = n;
    while (t > 0 && comb[t - 1] == total - n + t - 1) --t;
    if (t == 0) return std::nullopt;
    ++comb[t - 1];
    for (std::size_t u = t; u < n; ++u) comb[u] = comb[u - 1] + 1;
  }
}

void all_subsets(std::size_t N, std::size_t n, std::size_t start, std::vector<std::size_t>& cur,
                 std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == n) {
    out.push_back(cur);
    return;
  }
  for (std::size_t v = start; v < N; ++v) {
    cur.push_back(v);
    all_subsets(N, n, v + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

TEST_CASE("Cayley addition cubes") {
  auto c1 = cayley_cube(1);
  CHECK(c1.size() == 1);
  CHECK(c1.at(0, 0, 0) == 0);
  auto c2 = cayley_cube(2);
  CHECK(c2.at(1, 1, 1) == 1);
  CHECK(c2.at(0, 1, 1) == 0);
  auto c3 = cayley_cube(3);
  CHECK(c3.latin());
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      std::vector<Symbol> line{c3.at(a, b, 0), c3.at(a, b, 1), c3.at(a, b, 2)};
      std::sort(line.begin(), line.end());
      CHECK(line == std::vector<Symbol>{0, 1, 2});
    }
  CHECK_THROWS_AS(cayley_cube(0), InvalidInput);
}

TEST_CASE("subcubes") {
  auto c4 = cayley_cube(4);
  auto full = identity(4);
  CHECK(subcube(c4, full, full, full) == c4);
  auto s = subcube(c4, {0, 1}, {0, 1}, {0, 1});
  CHECK(s.size() == 2);
  CHECK(s.at(0, 0, 0) == 0);
  CHECK(s.at(1, 1, 1) == 3);
  CHECK(s.latin());
  auto single = subcube(c4, {2}, {3}, {1});
  CHECK(single.at(0, 0, 0) == 2);
  CHECK_THROWS_AS(subcube(c4, {0, 1}, {0}, {0, 1}), InvalidInput);
  CHECK_THROWS_AS(subcube(c4, {0, 4}, {0, 1}, {0, 1}), InvalidInput);
  CHECK_THROWS_AS(subcube(c4, {1, 0}, {0, 1}, {0, 1}), InvalidInput);
}

TEST_CASE("transversal examples") {
  auto r2 = find_latin_transversal(cayley_cube(2));
  REQUIRE(r2.status == SearchStatus::Found);
  CHECK(r2.transversal->cells == std::vector<Cell>{{0, 0, 0}, {1, 1, 1}});
  CHECK(r2.transversal->values == std::vector<Symbol>{0, 1});
  CHECK(verify_transversal(*r2.transversal, cayley_cube(2)).ok());

  // Cells may share one coordinate, so (0,1,1) precedes (1,1,1).
  auto s = subcube(cayley_cube(4), {0, 1}, {0, 1}, {0, 1});
  auto rs = find_latin_transversal(s);
  REQUIRE(rs.status == SearchStatus::Found);
  CHECK(rs.transversal->cells == std::vector<Cell>{{0, 0, 0}, {0, 1, 1}});
  CHECK(rs.transversal->values == std::vector<Symbol>{0, 2});
  Transversal diagonal{{{0, 0, 0}, {1, 1, 1}}, {0, 3}};
  CHECK(verify_transversal(diagonal, s).ok());

  auto one = find_latin_transversal(cayley_cube(1));
  REQUIRE(one.status == SearchStatus::Found);
  CHECK(one.transversal->cells == std::vector<Cell>{{0, 0, 0}});
}

TEST_CASE("verifier distinguishes transversal from Latin") {
  auto c = cayley_cube(2);
  auto two_coords = verify_transversal(Transversal{{{0, 0, 0}, {0, 0, 1}}, {0, 1}}, c);
  CHECK(two_coords.in_range);
  CHECK_FALSE(two_coords.transversal);
  CHECK_FALSE(two_coords.ok());

  auto repeated = verify_transversal(Transversal{{{0, 0, 0}, {0, 1, 1}}, {0, 0}}, c);
  CHECK(repeated.transversal);
  CHECK_FALSE(repeated.latin);

  CHECK_FALSE(verify_transversal(Transversal{{{0, 0, 2}, {1, 1, 1}}, {0, 1}}, c).in_range);
  CHECK_FALSE(verify_transversal(Transversal{{{0, 0, 0}, {1, 1, 1}}, {0, 0}}, c).values_match);
  CHECK_FALSE(verify_transversal(Transversal{{{0, 0, 0}}, {0}}, c).transversal);
}

TEST_CASE("search agrees with brute force on Latin and non-Latin cubes") {
  std::mt19937_64 gen(79);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 3;
    std::vector<Symbol> e(n * n * n);
    std::uniform_int_distribution<Symbol> sym(0, n + trial % 2);
    for (auto& v : e) v = sym(gen);
    Cube c(n, e);
    auto r = find_latin_transversal(c);
    auto oracle_cells = brute_force(c);
    REQUIRE((r.status == SearchStatus::Found) == oracle_cells.has_value());
    if (oracle_cells) {
      CHECK(r.transversal->cells == *oracle_cells);
      CHECK(verify_transversal(*r.transversal, c).ok());
    }
  }
  // A constant cube has no Latin transversal beyond n = 1.
  Cube constant(3, std::vector<Symbol>(27, 5));
  CHECK_FALSE(constant.latin());
  CHECK(find_latin_transversal(constant).status == SearchStatus::NotFound);
  CHECK(find_latin_transversal(cayley_cube(5), 2).status == SearchStatus::BudgetExceeded);
}

TEST_CASE("every subcube of a Cayley cube has a Latin transversal (N <= 4)") {
  for (std::size_t N = 1; N <= 4; ++N) {
    auto c = cayley_cube(N);
    for (std::size_t n = 1; n <= N; ++n) {
      std::vector<std::vector<std::size_t>> subsets;
      std::vector<std::size_t> cur;
      all_subsets(N, n, 0, cur, subsets);
      for (const auto& a : subsets)
        for (const auto& b : subsets)
          for (const auto& cc : subsets) {
            auto s = subcube(c, a, b, cc);
            auto r = find_latin_transversal(s);
            REQUIRE(r.status == SearchStatus::Found);
            CHECK(verify_transversal(*r.transversal, s).ok());
          }
    }
  }
}

TEST_CASE("verifier rejects single-cell mutations") {
  std::mt19937_64 gen(83);
  for (std::size_t n = 2; n <= 5; ++n) {
    auto c = perturbed_latin_cube(n, n);
    auto t = *find_latin_transversal(c).transversal;
    for (std::size_t a = 0; a < n; ++a) {
      auto v = t;
      v.values[a] = (v.values[a] + 1) % n;
      CHECK_FALSE(verify_transversal(v, c).ok());
      for (int d = 0; d < 3; ++d) {
        auto m = t;
        m.cells[a][d] = (m.cells[a][d] + 1 + gen() % (n - 1)) % n;
        auto verdict = verify_transversal(m, c);
        // With the stored value kept, a moved cell is accepted only if it is a
        // genuine Latin transversal holding the same entry.
        const auto moved = m.cells[a];
        const bool same_entry = c.at(moved[0], moved[1], moved[2]) == t.values[a];
        CHECK(verdict.values_match == same_entry);
        if (verdict.ok()) CHECK(same_entry);
      }
    }
  }
}

TEST_CASE("perturbed Latin cubes") {
  CHECK(perturbed_latin_cube(4, 9) == perturbed_latin_cube(4, 9));
  auto c2 = cayley_cube(2);
  CHECK(isotope(c2, identity(2), identity(2), identity(2), {0, 1}) == c2);
  CHECK_THROWS_AS(isotope(c2, {0, 0}, identity(2), identity(2), {0, 1}), InvalidInput);
  CHECK_THROWS_AS(isotope(c2, identity(2), identity(2), identity(2), {1, 1}), InvalidInput);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto c = perturbed_latin_cube(1 + seed % 5, seed);
    CHECK(c.latin());
    auto r = find_latin_transversal(c);
    REQUIRE(r.status == SearchStatus::Found);
    CHECK(verify_transversal(*r.transversal, c).ok());
  }
}

TEST_CASE("portable random helpers") {
  auto a = rng::stream(7, 3), b = rng::stream(7, 3), c = rng::stream(7, 4);
  CHECK(a() == b());
  CHECK(rng::stream(7, 3)() != c());
  for (int i = 0; i < 1000; ++i) {
    auto v = rng::between(a, -3, 5);
    CHECK(v >= -3);
    CHECK(v <= 5);
  }
  auto p = rng::permutation(a, 10);
  std::sort(p.begin(), p.end());
  CHECK(p == identity(10));
  auto s = rng::sample(a, 7, 4);
  CHECK(s.size() == 4);
  std::sort(s.begin(), s.end());
  CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
  CHECK(s.back() < 7);
}
