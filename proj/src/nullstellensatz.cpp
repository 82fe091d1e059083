#include "addcomb/nullstellensatz.hpp"

#include <algorithm>

namespace addcomb::cn {

using poly::Monomial;
using poly::SparsePoly;

namespace {

void validate_shape(const SparsePoly& f, const GridFamily& grid) {
  if (grid.sets.size() != f.arity()) throw InvalidInput("grid has one set per variable; arity mismatch");
  for (const auto& s : grid.sets) {
    if (s.empty()) throw InvalidInput("grid sets must be nonempty");
  }
  const auto& ring = f.ring();
  for (const auto& s : grid.sets) {
    std::vector<Integer> reduced;
    reduced.reserve(s.size());
    for (const auto& v : s) reduced.push_back(ring.reduce(v));
    std::sort(reduced.begin(), reduced.end());
    if (std::adjacent_find(reduced.begin(), reduced.end()) != reduced.end()) {
      throw InvalidInput("grid set has repeated elements");
    }
  }
}

}  // namespace

void GridFamily::validate(const poly::CoefficientRing& ring) const {
  if (target_degrees.size() != sets.size()) throw InvalidInput("target degrees and sets differ in length");
  SparsePoly probe(ring, sets.size());
  validate_shape(probe, *this);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].size() <= target_degrees[i]) {
      throw InvalidInput("grid set " + std::to_string(i + 1) + " has |A_i| <= k_i");
    }
  }
}

WitnessResult witness_search(const SparsePoly& f, const GridFamily& grid, std::uint64_t budget) {
  validate_shape(f, grid);
  const std::size_t n = grid.sets.size();
  WitnessResult out;
  std::vector<std::size_t> pos(n, 0);
  std::vector<Integer> point(n);
  while (true) {
    if (out.evaluations == budget) {
      out.status = SearchStatus::BudgetExhausted;
      return out;
    }
    for (std::size_t i = 0; i < n; ++i) point[i] = grid.sets[i][pos[i]];
    ++out.evaluations;
    if (!f.ring().is_zero(f.evaluate(point))) {
      out.status = SearchStatus::Found;
      out.witness = point;
      return out;
    }
    std::size_t i = n;
    while (i > 0 && ++pos[i - 1] == grid.sets[i - 1].size()) pos[--i] = 0;
    if (i == 0) break;
  }
  out.status = SearchStatus::NoneQualify;
  return out;
}

Certificate certify(const SparsePoly& f, const GridFamily& grid) {
  grid.validate(f.ring());
  if (grid.sets.size() != f.arity()) throw InvalidInput("grid has one set per variable; arity mismatch");
  std::int64_t ksum = 0;
  for (auto k : grid.target_degrees) ksum += k;
  if (f.total_degree() > ksum) throw InvalidInput("total degree of f exceeds sum of target degrees");

  Certificate cert;
  Monomial target(f.arity());
  for (std::size_t i = 0; i < f.arity(); ++i) target[i] = grid.target_degrees[i];
  cert.coefficient = f.coeff(target);
  cert.degree_exact = f.total_degree() == ksum;
  if (!cert.claims_witness()) return cert;

  auto found = witness_search(f, grid);
  cert.evaluations = found.evaluations;
  if (found.status != SearchStatus::Found) {
    throw FatalInconsistency("nonzero certificate coefficient but no grid point with f != 0");
  }
  cert.witness = std::move(found.witness);
  return cert;
}

bool is_witness(const SparsePoly& f, const GridFamily& grid, const std::vector<Integer>& point) {
  if (point.size() != grid.sets.size() || point.size() != f.arity()) return false;
  const auto& ring = f.ring();
  for (std::size_t i = 0; i < point.size(); ++i) {
    const auto& s = grid.sets[i];
    const bool member = std::any_of(s.begin(), s.end(), [&](const Integer& v) {
      return ring.reduce(v) == ring.reduce(point[i]);
    });
    if (!member) return false;
  }
  // Evaluate term by term rather than through the power tables.
  Integer acc = 0;
  for (const auto& [m, c] : f.terms()) {
    Integer t = c;
    for (std::size_t i = 0; i < point.size(); ++i) t *= boost::multiprecision::pow(point[i], m[i]);
    acc += t;
  }
  return !ring.is_zero(acc);
}

}  // namespace addcomb::cn
