#pragma once

// Deterministic verification suites over every module. Each case draws from
// its own RNG stream keyed by (seed, suite, case index), so results do not
// depend on the thread count.

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "addcomb/permdet.hpp"
#include "addcomb/random.hpp"

namespace addcomb::sweeps {

struct SweepConfig {
  std::uint64_t seed = 1;
  /// Random trials per randomized family; 0 selects the suite default.
  std::uint64_t trials = 0;
  /// Largest group order or cube size; 0 selects the suite default.
  std::uint64_t size = 0;
  /// Node budget per search.
  std::uint64_t budget = std::numeric_limits<std::uint64_t>::max();
  unsigned threads = 1;
};

struct SweepReport {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t passed = 0;
  /// First failures, in case order.
  std::vector<std::string> failures;
  /// Noteworthy outcomes that are not failures.
  std::vector<std::string> artifacts;
  /// Named figures in insertion order.
  std::vector<std::pair<std::string, std::string>> facts;

  bool ok() const { return cases > 0 && passed == cases; }
  std::string fact(const std::string& key) const;
};

/// theorem-1.1, counterexamples, corollary-1.1, identities, lemma-2.2,
/// lemma-4.1, lemma-5.1, bounds, cross-check, engine, conjecture.
const std::vector<std::string>& sweep_names();

/// Random duality exponent profile for an n x n matrix, with weight at most sum k.
permdet::ExponentProfile random_profile(rng::Engine& e, std::size_t n);

/// Throws InvalidInput for an unknown name.
SweepReport run_sweep(const std::string& name, const SweepConfig& config);

}  // namespace addcomb::sweeps
