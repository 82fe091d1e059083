#pragma once

// Orderings of m subsets A_1..A_m of an abelian group, each of size n, whose
// n column sums are pairwise distinct; plus the SDR product variant over a
// field.
//
// The solvers are templates over a group type G providing
//   Element, kCyclicTorsion, identity(), add(), negate(), conforms(),
//   element_order(), format().
// GroupSpec is the supported model; KleinFourGroup exists as a fixture for the
// non-cyclic torsion counterexample.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "addcomb/groups.hpp"
#include "addcomb/integer.hpp"
#include "addcomb/polyring.hpp"

namespace addcomb::orderings {

constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();

/// Z/2 x Z/2 with elements encoded as two bits; formatted "00", "01", "10", "11".
class KleinFourGroup {
 public:
  using Element = std::uint8_t;
  static constexpr bool kCyclicTorsion = false;

  Element identity() const { return 0; }
  Element add(Element a, Element b) const { return static_cast<Element>(a ^ b); }
  Element negate(Element a) const { return a; }
  bool conforms(Element a) const { return a < 4; }
  groups::ElementOrder element_order(Element a) const { return a == 0 ? 1 : 2; }
  std::string format(Element a) const;
  Element parse_element(std::string_view text) const;
  std::string to_string() const { return "Z/2 x Z/2"; }

  friend bool operator==(const KleinFourGroup&, const KleinFourGroup&) = default;
};

template <class G>
struct SubsetFamily {
  using Element = typename G::Element;
  G group;
  std::vector<std::vector<Element>> sets;

  std::size_t m() const { return sets.size(); }
  std::size_t n() const { return sets.empty() ? 0 : sets[0].size(); }
};

/// {00,01}, {00,10}, {00,11}: three sets with no ordering of distinct column sums.
inline SubsetFamily<KleinFourGroup> klein_fixture() { return {KleinFourGroup{}, {{0b00, 0b01}, {0b00, 0b10}, {0b00, 0b11}}}; }

template <class G>
struct OrderingSolution {
  std::vector<std::vector<typename G::Element>> table;
  std::vector<typename G::Element> column_sums;
};

enum class SolveStatus { Found, NoSolution, BudgetExceeded };

std::string to_string(SolveStatus s);

template <class G>
struct OrderingResult {
  SolveStatus status = SolveStatus::NoSolution;
  std::optional<OrderingSolution<G>> solution;
  std::uint64_t nodes = 0;
};

namespace detail {

template <class T>
bool pairwise_distinct(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

template <class G>
std::vector<typename G::Element> column_sums(const G& g, const std::vector<std::vector<typename G::Element>>& table) {
  const std::size_t n = table.empty() ? 0 : table[0].size();
  std::vector<typename G::Element> sums(n, g.identity());
  for (const auto& row : table)
    for (std::size_t j = 0; j < n; ++j) sums[j] = g.add(sums[j], row[j]);
  return sums;
}

}  // namespace detail

/// Throws InvalidInput on m = 0, n = 0, ragged rows, repeated elements or
/// nonconforming elements.
template <class G>
void validate_family(const SubsetFamily<G>& fam) {
  if (fam.m() == 0) throw InvalidInput("family needs at least one set");
  if (fam.n() == 0) throw InvalidInput("sets must be nonempty");
  for (std::size_t i = 0; i < fam.m(); ++i) {
    const auto& s = fam.sets[i];
    if (s.size() != fam.n()) throw InvalidInput("ragged family: set " + std::to_string(i + 1) + " has the wrong size");
    for (const auto& a : s) {
      if (!fam.group.conforms(a)) throw InvalidInput("element does not belong to the group");
    }
    if (!detail::pairwise_distinct(s)) throw InvalidInput("set " + std::to_string(i + 1) + " has repeated elements");
  }
}

/// Lexicographically first ordering (row-major, by positions in the input
/// sets) with pairwise distinct column sums, the last row kept in input order.
/// Rows 1..m-1 are permuted; failed partial-sum vectors at row boundaries are
/// memoized. NoSolution for odd m in a group with cyclic torsion is impossible
/// and raises FatalInconsistency.
template <class G>
OrderingResult<G> find_ordering(const SubsetFamily<G>& fam, std::uint64_t budget = kUnlimited) {
  using E = typename G::Element;
  validate_family(fam);
  const G& g = fam.group;
  const std::size_t m = fam.m(), n = fam.n();

  OrderingResult<G> result;
  std::vector<std::vector<std::size_t>> pick(m - 1, std::vector<std::size_t>(n));
  std::vector<std::vector<bool>> used(m - 1, std::vector<bool>(n, false));
  std::vector<std::set<std::vector<E>>> failed(m);
  std::vector<E> sums = fam.sets[m - 1];
  bool exhausted = false;

  // Place rows r..m-2 column by column; true once a full table is found.
  std::function<bool(std::size_t, std::size_t)> place = [&](std::size_t r, std::size_t j) -> bool {
    if (j == n) {
      if (r + 2 >= m) return true;
      if (failed[r + 1].count(sums)) return false;
      if (place(r + 1, 0)) return true;
      if (!exhausted) failed[r + 1].insert(sums);
      return false;
    }
    for (std::size_t t = 0; t < n; ++t) {
      if (used[r][t]) continue;
      if (result.nodes == budget) {
        exhausted = true;
        return false;
      }
      ++result.nodes;
      const E before = sums[j];
      sums[j] = g.add(sums[j], fam.sets[r][t]);
      bool ok = true;
      if (r + 2 == m) {
        for (std::size_t q = 0; q < j && ok; ++q) ok = !(sums[q] == sums[j]);
      }
      if (ok) {
        used[r][t] = true;
        pick[r][j] = t;
        if (place(r, j + 1)) return true;
        used[r][t] = false;
      }
      sums[j] = before;
      if (exhausted) return false;
    }
    return false;
  };

  const bool found = m == 1 ? true : place(0, 0);
  if (found) {
    OrderingSolution<G> sol;
    for (std::size_t r = 0; r + 1 < m; ++r) {
      std::vector<E> row;
      for (std::size_t j = 0; j < n; ++j) row.push_back(fam.sets[r][pick[r][j]]);
      sol.table.push_back(std::move(row));
    }
    sol.table.push_back(fam.sets[m - 1]);
    sol.column_sums = detail::column_sums(g, sol.table);
    result.status = SolveStatus::Found;
    result.solution = std::move(sol);
    return result;
  }
  if (exhausted) {
    result.status = SolveStatus::BudgetExceeded;
    return result;
  }
  if (G::kCyclicTorsion && m % 2 == 1) {
    throw FatalInconsistency("no distinct-sum ordering found for odd m in a group with cyclic torsion");
  }
  result.status = SolveStatus::NoSolution;
  return result;
}

/// Pure recomputation: rows are permutations of the sets and column sums are
/// pairwise distinct. Stored column_sums are ignored. Throws InvalidInput on
/// shape mismatch.
template <class G>
bool verify_ordering(const OrderingSolution<G>& sol, const SubsetFamily<G>& fam) {
  if (sol.table.size() != fam.m()) throw InvalidInput("solution has the wrong number of rows");
  for (std::size_t i = 0; i < fam.m(); ++i) {
    if (sol.table[i].size() != fam.sets[i].size()) throw InvalidInput("solution row has the wrong length");
    auto row = sol.table[i];
    auto set = fam.sets[i];
    std::sort(row.begin(), row.end());
    std::sort(set.begin(), set.end());
    if (row != set || !detail::pairwise_distinct(set)) return false;
  }
  return detail::pairwise_distinct(detail::column_sums(fam.group, sol.table));
}

/// The row {-s_1, ..., -s_n} that makes every extended column sum vanish,
/// listed by column. Throws InvalidInput unless the recomputed sums are
/// pairwise distinct.
template <class G>
std::vector<typename G::Element> complete_to_zero_sum(const G& g, const OrderingSolution<G>& sol) {
  if (sol.table.empty()) throw InvalidInput("empty solution");
  const auto sums = detail::column_sums(g, sol.table);
  if (!detail::pairwise_distinct(sums)) throw InvalidInput("column sums are not distinct");
  std::vector<typename G::Element> row;
  for (const auto& s : sums) row.push_back(g.negate(s));
  return row;
}

/// Even m with every element of A_m of odd order: solve rows 1..m-1 first,
/// then number A_m against the fixed prefix sums; if that second phase fails,
/// fall back to the full search. Throws InvalidInput for odd m or an element
/// of A_m of even or infinite order.
template <class G>
OrderingResult<G> find_ordering_even(const SubsetFamily<G>& fam, std::uint64_t budget = kUnlimited) {
  using E = typename G::Element;
  validate_family(fam);
  const G& g = fam.group;
  const std::size_t m = fam.m(), n = fam.n();
  if (m % 2 != 0) throw InvalidInput("find_ordering_even needs an even number of sets");
  for (const auto& a : fam.sets[m - 1]) {
    auto ord = g.element_order(a);
    if (!ord || *ord % 2 == 0) throw InvalidInput("last set contains an element of even or infinite order");
  }

  SubsetFamily<G> prefix{g, {fam.sets.begin(), fam.sets.end() - 1}};
  auto head = find_ordering(prefix, budget);
  OrderingResult<G> result;
  result.nodes = head.nodes;
  if (head.status == SolveStatus::BudgetExceeded) {
    result.status = SolveStatus::BudgetExceeded;
    return result;
  }

  const auto& s = head.solution->column_sums;
  const auto& last = fam.sets[m - 1];
  std::vector<std::size_t> pick(n);
  std::vector<bool> used(n, false);
  std::vector<E> sums(n);
  bool exhausted = false;
  std::function<bool(std::size_t)> number = [&](std::size_t j) -> bool {
    if (j == n) return true;
    for (std::size_t t = 0; t < n; ++t) {
      if (used[t]) continue;
      if (result.nodes == budget) {
        exhausted = true;
        return false;
      }
      ++result.nodes;
      sums[j] = g.add(s[j], last[t]);
      bool ok = true;
      for (std::size_t q = 0; q < j && ok; ++q) ok = !(sums[q] == sums[j]);
      if (!ok) continue;
      used[t] = true;
      pick[j] = t;
      if (number(j + 1)) return true;
      used[t] = false;
      if (exhausted) return false;
    }
    return false;
  };

  if (number(0)) {
    OrderingSolution<G> sol{head.solution->table, {}};
    std::vector<E> row;
    for (std::size_t j = 0; j < n; ++j) row.push_back(last[pick[j]]);
    sol.table.push_back(std::move(row));
    sol.column_sums = detail::column_sums(g, sol.table);
    result.status = SolveStatus::Found;
    result.solution = std::move(sol);
    return result;
  }
  if (exhausted) {
    result.status = SolveStatus::BudgetExceeded;
    return result;
  }
  auto full = find_ordering(fam, budget == kUnlimited ? budget : budget - std::min(budget, result.nodes));
  full.nodes += result.nodes;
  return full;
}

// ------------------------------------------------------------ SDR products

struct SdrProductResult {
  SolveStatus status = SolveStatus::NoSolution;
  std::vector<Integer> a;
  std::vector<Integer> b;
  std::uint64_t nodes = 0;
};

/// SDRs {a_i} of {A_i} and {b_i} of {B_i} with a_1 b_1 c_1, ..., a_n b_n c_n
/// pairwise distinct in the ring. Depth-first over (a_1, b_1, a_2, b_2, ...)
/// by position in each set, so the first qualifying pair in that order is
/// returned. Over a field (or Z) a solution always exists; not finding one
/// raises FatalInconsistency. Throws InvalidInput on shape errors, repeated
/// elements or repeated c_i.
SdrProductResult find_sdr_product_ordering(const std::vector<std::vector<Integer>>& a_sets,
                                           const std::vector<std::vector<Integer>>& b_sets,
                                           const std::vector<Integer>& c, const poly::CoefficientRing& ring,
                                           std::uint64_t budget = kUnlimited);

/// Independent recheck of an SDR product pair.
bool verify_sdr_product(const std::vector<std::vector<Integer>>& a_sets, const std::vector<std::vector<Integer>>& b_sets,
                        const std::vector<Integer>& c, const poly::CoefficientRing& ring, const std::vector<Integer>& a,
                        const std::vector<Integer>& b);

}  // namespace addcomb::orderings
