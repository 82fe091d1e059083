#pragma once

// Combinatorial Nullstellensatz certificates: extract the coefficient of
// x_1^{k_1}...x_n^{k_n}, and when it is nonzero and the total degree is exactly
// k_1+...+k_n, find a grid point of A_1 x ... x A_n where f does not vanish.

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "addcomb/integer.hpp"
#include "addcomb/polyring.hpp"

namespace addcomb::cn {

struct GridFamily {
  std::vector<std::vector<Integer>> sets;
  std::vector<std::uint32_t> target_degrees;

  std::size_t size() const { return sets.size(); }
  /// Shape, in-set distinctness (modulo p over Z/p) and |A_i| > k_i.
  void validate(const poly::CoefficientRing& ring) const;
};

enum class SearchStatus { Found, NoneQualify, BudgetExhausted };

struct WitnessResult {
  SearchStatus status = SearchStatus::NoneQualify;
  std::vector<Integer> witness;
  std::uint64_t evaluations = 0;
};

struct Certificate {
  Integer coefficient;
  /// total degree of f equals sum k_i
  bool degree_exact = false;
  std::optional<std::vector<Integer>> witness;
  std::uint64_t evaluations = 0;

  /// Whether the theorem applies, i.e. a witness is promised.
  bool claims_witness() const { return coefficient != 0 && degree_exact; }
};

constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();

/// First tuple of the grid, in lexicographic order of positions within each
/// A_i, at which f is nonzero. Only checks that the grid is well formed.
WitnessResult witness_search(const poly::SparsePoly& f, const GridFamily& grid, std::uint64_t budget = kUnlimited);

/// Throws InvalidInput when deg f > sum k_i or some |A_i| <= k_i. A zero
/// coefficient or deficient total degree yields a certificate with no witness.
/// Throws FatalInconsistency if a promised witness is not found.
Certificate certify(const poly::SparsePoly& f, const GridFamily& grid);

/// Independent recheck: a_i in A_i and f(a) != 0.
bool is_witness(const poly::SparsePoly& f, const GridFamily& grid, const std::vector<Integer>& point);

}  // namespace addcomb::cn
