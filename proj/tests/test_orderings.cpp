#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "addcomb/orderings.hpp"

using namespace addcomb;
using namespace addcomb::orderings;
using groups::GroupElement;
using groups::GroupSpec;

namespace {

SubsetFamily<GroupSpec> cyclic_family(std::uint64_t N, const std::vector<std::vector<int>>& sets) {
  auto g = GroupSpec::cyclic(N);
  SubsetFamily<GroupSpec> fam{g, {}};
  for (const auto& s : sets) {
    std::vector<GroupElement> row;
    for (int v : s) row.push_back(g.torsion(v));
    fam.sets.push_back(row);
  }
  return fam;
}

std::vector<std::vector<std::uint64_t>> residues(const OrderingSolution<GroupSpec>& sol) {
  std::vector<std::vector<std::uint64_t>> out;
  for (const auto& row : sol.table) {
    out.emplace_back();
    for (const auto& e : row) out.back().push_back(e.torsion_part);
  }
  return out;
}

SubsetFamily<KleinFourGroup> klein_family() {
  KleinFourGroup k;
  return {k, {{k.parse_element("00"), k.parse_element("01")},
              {k.parse_element("00"), k.parse_element("10")},
              {k.parse_element("00"), k.parse_element("11")}}};
}

/// Brute force over every table in row-major lexicographic order of
/// positions, the last row in input order unless permute_last; plain residue
/// arithmetic. Returns the first table with distinct column sums.
std::optional<std::vector<std::vector<int>>> brute_force(int N, const std::vector<std::vector<int>>& sets,
                                                         bool permute_last = false) {
  const std::size_t m = sets.size(), n = sets[0].size();
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(base);
  while (std::next_permutation(base.begin(), base.end()));
  const std::size_t rows = permute_last ? m : m - 1;
  std::vector<std::size_t> odo(rows, 0);
  while (true) {
    std::vector<std::vector<int>> table;
    for (std::size_t r = 0; r < rows; ++r) {
      table.emplace_back();
      for (std::size_t j = 0; j < n; ++j) table.back().push_back(sets[r][perms[odo[r]][j]]);
    }
    if (!permute_last) table.push_back(sets[m - 1]);
    std::vector<int> sums(n, 0);
    for (const auto& row : table)
      for (std::size_t j = 0; j < n; ++j) sums[j] = (sums[j] + row[j]) % N;
    std::sort(sums.begin(), sums.end());
    if (std::adjacent_find(sums.begin(), sums.end()) == sums.end()) return table;
    std::size_t pos = rows;
    while (pos > 0 && ++odo[pos - 1] == perms.size()) odo[--pos] = 0;
    if (pos == 0) return std::nullopt;
  }
}

void all_subsets(int N, int n, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (int v = start; v < N; ++v) {
    cur.push_back(v);
    all_subsets(N, n, v + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

TEST_CASE("Z/3 triple of full sets") {
  auto fam = cyclic_family(3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
  auto r = find_ordering(fam);
  REQUIRE(r.status == SolveStatus::Found);
  const std::vector<std::vector<std::uint64_t>> expected{{0, 1, 2}, {0, 2, 1}, {0, 1, 2}};
  CHECK(residues(*r.solution) == expected);
  CHECK(verify_ordering(*r.solution, fam));
  std::vector<std::uint64_t> sums;
  for (const auto& s : r.solution->column_sums) sums.push_back(s.torsion_part);
  CHECK(sums == std::vector<std::uint64_t>{0, 1, 2});

  // Fixing the first row instead gives another valid table.
  auto g = fam.group;
  OrderingSolution<GroupSpec> alt{{{g.torsion(0), g.torsion(1), g.torsion(2)},
                                   {g.torsion(0), g.torsion(1), g.torsion(2)},
                                   {g.torsion(0), g.torsion(2), g.torsion(1)}},
                                  {}};
  CHECK(verify_ordering(alt, fam));

  auto swapped = *r.solution;
  for (auto& row : swapped.table) std::swap(row[0], row[2]);
  CHECK(verify_ordering(swapped, fam));
  auto broken = *r.solution;
  broken.table[0][1] = broken.table[0][0];
  CHECK_FALSE(verify_ordering(broken, fam));
  broken.table.pop_back();
  CHECK_THROWS_AS(verify_ordering(broken, fam), InvalidInput);

  auto extra = complete_to_zero_sum(g, *r.solution);
  std::vector<std::uint64_t> extra_res;
  for (const auto& e : extra) extra_res.push_back(e.torsion_part);
  CHECK(extra_res == std::vector<std::uint64_t>{0, 2, 1});
}

TEST_CASE("Klein four-group counterexample") {
  auto fam = klein_family();
  auto r = find_ordering(fam);
  CHECK(r.status == SolveStatus::NoSolution);
  CHECK_FALSE(r.solution);
  // All 2^3 orderings by hand: every table has both column sums equal.
  KleinFourGroup k;
  int distinct = 0;
  for (int mask = 0; mask < 8; ++mask) {
    std::uint8_t s0 = 0, s1 = 0;
    for (int i = 0; i < 3; ++i) {
      auto a = fam.sets[i][mask >> i & 1], b = fam.sets[i][1 - (mask >> i & 1)];
      s0 = k.add(s0, a);
      s1 = k.add(s1, b);
    }
    distinct += s0 != s1;
  }
  CHECK(distinct == 0);
  CHECK(k.format(3) == "11");
  CHECK(klein_fixture().sets == fam.sets);
  CHECK_THROWS_AS(k.parse_element("12"), InvalidInput);
}

TEST_CASE("single column and single row") {
  auto fam = cyclic_family(5, {{3}, {4}, {1}, {2}});
  auto r = find_ordering(fam);
  REQUIRE(r.status == SolveStatus::Found);
  CHECK(r.solution->column_sums.size() == 1);
  CHECK(r.solution->column_sums[0] == fam.group.torsion(0));
  auto extra = complete_to_zero_sum(fam.group, *r.solution);
  CHECK(extra == std::vector<GroupElement>{fam.group.torsion(0)});

  auto one_row = cyclic_family(4, {{3, 1, 2}});
  auto s = find_ordering(one_row);
  REQUIRE(s.status == SolveStatus::Found);
  CHECK(s.solution->table[0] == one_row.sets[0]);
}

TEST_CASE("family validation") {
  CHECK_THROWS_AS(find_ordering(cyclic_family(5, {{0, 1}, {2}})), InvalidInput);
  CHECK_THROWS_AS(find_ordering(cyclic_family(5, {{0, 5}, {1, 2}})), InvalidInput);
  CHECK_THROWS_AS(find_ordering(SubsetFamily<GroupSpec>{GroupSpec::cyclic(3), {}}), InvalidInput);
  GroupSpec z(1, 1);
  SubsetFamily<GroupSpec> wrong{z, {{GroupSpec::cyclic(3).torsion(1)}}};
  CHECK_THROWS_AS(find_ordering(wrong), InvalidInput);
}

TEST_CASE("budget exhaustion is not a negative answer") {
  auto fam = cyclic_family(4, {{0, 1, 2, 3}, {0, 1, 2, 3}, {0, 1, 2, 3}, {0, 1, 2, 3}});
  auto r = find_ordering(fam, 10);
  CHECK(r.status == SolveStatus::BudgetExceeded);
  CHECK(r.nodes == 10);
}

TEST_CASE("parity obstruction for full even-order cyclic groups") {
  for (int N : {2, 4}) {
    std::vector<int> all(N);
    std::iota(all.begin(), all.end(), 0);
    for (int m : {2, 4}) {
      auto r = find_ordering(cyclic_family(N, std::vector<std::vector<int>>(m, all)));
      CHECK(r.status == SolveStatus::NoSolution);
    }
  }
}

TEST_CASE("find_ordering_even") {
  auto fam = cyclic_family(3, {{0, 1, 2}, {0, 1, 2}});
  auto r = find_ordering_even(fam);
  REQUIRE(r.status == SolveStatus::Found);
  CHECK(verify_ordering(*r.solution, fam));

  CHECK_THROWS_AS(find_ordering_even(cyclic_family(2, {{0, 1}, {0, 1}})), InvalidInput);
  CHECK_THROWS_AS(find_ordering_even(cyclic_family(3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}})), InvalidInput);
  GroupSpec z(1, 1);
  SubsetFamily<GroupSpec> free{z, {{z.element({1}, 0)}, {z.element({2}, 0)}}};
  CHECK_THROWS_AS(find_ordering_even(free), InvalidInput);

  auto single = find_ordering_even(cyclic_family(9, {{4}, {3}}));
  REQUIRE(single.status == SolveStatus::Found);
  CHECK(single.solution->column_sums[0] == GroupSpec::cyclic(9).torsion(7));

  // Odd-order last set in Z/6 ({0, 2, 4}) with an arbitrary first set.
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<int> first{0, 1, 2, 3, 4, 5};
    std::shuffle(first.begin(), first.end(), rng);
    first.resize(3);
    std::vector<int> last{0, 2, 4};
    std::shuffle(last.begin(), last.end(), rng);
    auto f = cyclic_family(6, {first, last});
    auto res = find_ordering_even(f);
    REQUIRE(res.status == SolveStatus::Found);
    CHECK(verify_ordering(*res.solution, f));
  }
}

TEST_CASE("solver matches brute force, including lexicographic choice") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 300; ++trial) {
    const int N = 2 + trial % 5;
    const int n = 1 + trial % std::min(N, 3);
    const int m = 2 + trial % 2;
    std::vector<std::vector<int>> sets;
    for (int i = 0; i < m; ++i) {
      std::vector<int> all(N);
      std::iota(all.begin(), all.end(), 0);
      std::shuffle(all.begin(), all.end(), rng);
      all.resize(n);
      sets.push_back(all);
    }
    auto fam = cyclic_family(static_cast<std::uint64_t>(N), sets);
    auto r = find_ordering(fam);
    auto oracle_table = brute_force(N, sets);
    CHECK(brute_force(N, sets, true).has_value() == oracle_table.has_value());
    REQUIRE((r.status == SolveStatus::Found) == oracle_table.has_value());
    if (oracle_table) {
      auto got = residues(*r.solution);
      std::vector<std::vector<std::uint64_t>> want;
      for (const auto& row : *oracle_table) want.emplace_back(row.begin(), row.end());
      CHECK(got == want);
      CHECK(verify_ordering(*r.solution, fam));
    }
  }
}

TEST_CASE("every triple of n-subsets of Z/N has an ordering (N <= 4, unreduced)") {
  for (int N = 2; N <= 4; ++N) {
    for (int n = 1; n <= std::min(N, 3); ++n) {
      std::vector<std::vector<int>> subsets;
      std::vector<int> cur;
      all_subsets(N, n, 0, cur, subsets);
      for (const auto& a : subsets)
        for (const auto& b : subsets)
          for (const auto& c : subsets) {
            auto fam = cyclic_family(static_cast<std::uint64_t>(N), {a, b, c});
            auto r = find_ordering(fam);
            REQUIRE(r.status == SolveStatus::Found);
            CHECK(verify_ordering(*r.solution, fam));
            auto extra = complete_to_zero_sum(fam.group, *r.solution);
            auto table = r.solution->table;
            table.push_back(extra);
            for (const auto& s : detail::column_sums(fam.group, table)) CHECK(s == fam.group.identity());
            CHECK(detail::pairwise_distinct(extra));
          }
    }
  }
}

TEST_CASE("orderings in a group with a free part") {
  GroupSpec g(1, 3);
  SubsetFamily<GroupSpec> fam{g,
                              {{g.element({0}, 0), g.element({1}, 0), g.element({0}, 1)},
                               {g.element({0}, 0), g.element({-1}, 2), g.element({5}, 1)},
                               {g.element({2}, 2), g.element({0}, 0), g.element({1}, 1)}}};
  auto r = find_ordering(fam);
  REQUIRE(r.status == SolveStatus::Found);
  CHECK(verify_ordering(*r.solution, fam));
}

TEST_CASE("SDR with distinct products") {
  const auto F7 = poly::CoefficientRing::mod_p(7);
  auto one = find_sdr_product_ordering({{Integer(3)}}, {{Integer(5)}}, {Integer(2)}, F7);
  REQUIRE(one.status == SolveStatus::Found);
  CHECK(one.a == std::vector<Integer>{3});
  CHECK(one.b == std::vector<Integer>{5});

  std::vector<std::vector<Integer>> A{{1, 2}, {3, 4}}, B{{1, 2}, {3, 4}};
  std::vector<Integer> c{1, 2};
  auto r = find_sdr_product_ordering(A, B, c, F7);
  REQUIRE(r.status == SolveStatus::Found);
  CHECK(r.a == std::vector<Integer>{1, 3});
  CHECK(r.b == std::vector<Integer>{1, 3});
  CHECK(verify_sdr_product(A, B, c, F7, r.a, r.b));

  const auto F2 = poly::CoefficientRing::mod_p(2);
  std::vector<std::vector<Integer>> bits{{0, 1}, {0, 1}};
  auto probe = find_sdr_product_ordering(bits, bits, {0, 1}, F2);
  REQUIRE(probe.status == SolveStatus::Found);
  CHECK(verify_sdr_product(bits, bits, {0, 1}, F2, probe.a, probe.b));
  CHECK(probe.a == std::vector<Integer>{0, 1});
  CHECK(probe.b == std::vector<Integer>{0, 1});

  CHECK_THROWS_AS(find_sdr_product_ordering(A, B, {1, 8}, F7), InvalidInput);
  CHECK_THROWS_AS(find_sdr_product_ordering(A, {{1, 2}}, c, F7), InvalidInput);
  CHECK_THROWS_AS(find_sdr_product_ordering({{1, 8}, {3, 4}}, B, c, F7), InvalidInput);
  CHECK(find_sdr_product_ordering(A, B, c, F7, 1).status == SolveStatus::BudgetExceeded);
  CHECK_FALSE(verify_sdr_product(A, B, c, F7, {1, 1}, {1, 3}));
}

TEST_CASE("SDR products on random field instances") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t p = std::vector<std::uint64_t>{3, 5, 7, 11}[trial % 4];
    const std::size_t n = 1 + trial % std::min<std::size_t>(p, 4);
    const auto F = poly::CoefficientRing::mod_p(p);
    auto random_set = [&] {
      std::vector<Integer> all;
      for (std::uint64_t v = 0; v < p; ++v) all.push_back(static_cast<int>(v));
      std::shuffle(all.begin(), all.end(), rng);
      all.resize(n);
      return all;
    };
    std::vector<std::vector<Integer>> A, B;
    for (std::size_t i = 0; i < n; ++i) {
      A.push_back(random_set());
      B.push_back(random_set());
    }
    auto c = random_set();
    auto r = find_sdr_product_ordering(A, B, c, F);
    REQUIRE(r.status == SolveStatus::Found);
    CHECK(verify_sdr_product(A, B, c, F, r.a, r.b));
  }
}
