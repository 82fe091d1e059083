#pragma once

// n x n x n cubes, Cayley addition cubes of Z/N and their subcubes, and Latin
// transversal search.

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "addcomb/integer.hpp"

namespace addcomb::latin {

using Symbol = std::uint64_t;

class Cube {
 public:
  /// entries in (i, j, k) row-major order; latin_flag is computed.
  Cube(std::size_t n, std::vector<Symbol> entries, bool cayley_origin = false);

  std::size_t size() const { return n_; }
  Symbol at(std::size_t i, std::size_t j, std::size_t k) const { return entries_[(i * n_ + j) * n_ + k]; }
  const std::vector<Symbol>& entries() const { return entries_; }
  /// No line repeats a symbol.
  bool latin() const { return latin_; }
  /// Built by cayley_cube / subcube, where a Latin transversal is guaranteed.
  bool cayley_origin() const { return cayley_origin_; }

  friend bool operator==(const Cube& a, const Cube& b) { return a.n_ == b.n_ && a.entries_ == b.entries_; }

 private:
  std::size_t n_;
  std::vector<Symbol> entries_;
  bool latin_;
  bool cayley_origin_;
};

/// Entry (i, j, k) = i + j + k mod N. Throws InvalidInput for N = 0.
Cube cayley_cube(std::size_t N);

/// Restriction to A x B x C. Index sets must be strictly increasing, in range
/// and of equal size.
Cube subcube(const Cube& c, const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
             const std::vector<std::size_t>& cc);

using Cell = std::array<std::size_t, 3>;

struct Transversal {
  std::vector<Cell> cells;
  std::vector<Symbol> values;
};

enum class SearchStatus { Found, NotFound, BudgetExceeded };

struct TransversalResult {
  SearchStatus status = SearchStatus::NotFound;
  std::optional<Transversal> transversal;
  std::uint64_t nodes = 0;
};

constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();

/// Lexicographically first set of n cells (sorted lexicographically) with no
/// two cells agreeing in two or more coordinates and pairwise distinct
/// entries. NotFound on a Cayley-origin cube raises FatalInconsistency.
TransversalResult find_latin_transversal(const Cube& c, std::uint64_t budget = kUnlimited);

struct TransversalVerdict {
  bool in_range = false;
  bool values_match = false;
  /// n cells, no two on a common line
  bool transversal = false;
  /// transversal with pairwise distinct entries
  bool latin = false;

  bool ok() const { return in_range && values_match && transversal && latin; }
};

/// Rechecks against the cube's entries; never trusts the stored values beyond
/// comparing them.
TransversalVerdict verify_transversal(const Transversal& t, const Cube& c);

/// new(i, j, k) = sym[old(x[i], y[j], z[k])]. Preserves the Latin property.
Cube isotope(const Cube& c, const std::vector<std::size_t>& x, const std::vector<std::size_t>& y,
             const std::vector<std::size_t>& z, const std::vector<Symbol>& sym);

/// Cayley cube of Z/n under random axis and symbol permutations drawn from
/// seed. A non-uniform sampler of Latin cubes.
Cube perturbed_latin_cube(std::size_t n, std::uint64_t seed);

}  // namespace addcomb::latin
