#pragma once

// Restricted sumsets over prime fields: the coefficient formula behind the
// SDR product theorem with polynomial restrictions, witness searches over
// fields and groups, sumset cardinality bounds, and the permanent identity
// used for difference-restricted sumsets.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "addcomb/groups.hpp"
#include "addcomb/integer.hpp"
#include "addcomb/polyring.hpp"
#include "addcomb/random.hpp"

namespace addcomb::sumsets {

constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();

/// (k-1)n - (m+1) C(n,2)
std::int64_t restricted_degree(std::int64_t k, std::int64_t m, std::int64_t n);

/// m^{-C(n,2)} prod_{r<n} (k-1-rm)!/r!, exactly. Needs k-1 >= m(n-1).
Integer factorial_ratio_k0(std::int64_t k, std::int64_t m, std::int64_t n);

struct SumsetParams {
  std::int64_t h = 1, k = 1, l = 1, m = 1, n = 1;

  /// Positivity, k-1 >= m(n-1) and l-1 >= h(n-1).
  void validate() const;
  std::int64_t K() const { return restricted_degree(k, m, n); }
  std::int64_t L() const { return restricted_degree(l, h, n); }
  /// (hm)^{-C(n,2)} prod_{r<n} (k-1-rm)!(l-1-rh)!/(r!)^2, exact.
  Integer N() const;
  std::string to_string() const;
};

enum class CoefficientMode { Direct, ClosedForm };

/// [x^{k-1} y^{l-1}] of prod_{i<j}(c_j x_j y_j - c_i x_i y_i)(x_j^m - x_i^m)(y_j^h - y_i^h)
/// (sum x)^K (sum y)^L, as a polynomial in c_1..c_n (arity n, integers).
/// Direct extracts the coefficient; ClosedForm is K!L!/N * prod_{i<j}(c_j - c_i).
/// Direct is limited to n <= 3 and k, l <= 8.
poly::SparsePoly sdr_coefficient_symbolic(const SumsetParams& params, CoefficientMode mode);
/// Same with the c_i given as integers.
Integer sdr_coefficient(const SumsetParams& params, const std::vector<Integer>& c, CoefficientMode mode);

// ------------------------------------------------------- field witness search

/// Polynomials are coefficient vectors, constant term first.
using Coefficients = std::vector<Integer>;

struct FieldInstance {
  std::uint64_t p = 0;
  std::vector<std::vector<Integer>> a_sets;
  std::vector<std::vector<Integer>> b_sets;
  std::vector<Integer> c;
  std::vector<Coefficients> p_polys;
  std::vector<Coefficients> q_polys;
  std::vector<Integer> s_excluded;
  std::vector<Integer> t_excluded;
};

/// Every hypothesis, with a message naming the violated clause.
void validate(const FieldInstance& inst, const SumsetParams& params);

enum class WitnessStatus { Found, Inconsistent, BudgetExceeded };
std::string to_string(WitnessStatus s);

struct FieldWitness {
  WitnessStatus status = WitnessStatus::Inconsistent;
  std::vector<Integer> a;
  std::vector<Integer> b;
  std::uint64_t nodes = 0;
};

/// First (a_1..a_n, b_1..b_n), lexicographic by positions in the sets, with
/// sum a not in S, sum b not in T, and for i < j: a_i b_i c_i != a_j b_j c_j,
/// P_i(a_i) != P_j(a_j), Q_i(b_i) != Q_j(b_j).
FieldWitness field_witness(const FieldInstance& inst, const SumsetParams& params, std::uint64_t budget = kUnlimited);

/// Clause-by-clause recheck of a field witness; returns the failed clauses.
std::vector<std::string> check_field_witness(const FieldInstance& inst, const std::vector<Integer>& a,
                                             const std::vector<Integer>& b);

/// The polynomial of the existence proof, in x_1..x_n, y_1..y_n over Z/p:
/// prod_{i<j}(P_j(x_j)-P_i(x_i))(Q_j(y_j)-Q_i(y_i))(c_j x_j y_j - c_i x_i y_i)
/// (sum x)^{K-|S|} prod_{s in S}(sum x - s) (sum y)^{L-|T|} prod_{t in T}(sum y - t).
poly::SparsePoly field_proof_polynomial(const FieldInstance& inst, const SumsetParams& params);

/// The instance with 0 added to S when |S| < K and to T when |T| < L. Its
/// witness conditions coincide with the nonvanishing of the proof polynomial,
/// which is unchanged.
FieldInstance saturate_exclusions(const FieldInstance& inst, const SumsetParams& params);

// ------------------------------------------------------- group witness search

struct GroupInstance {
  groups::GroupSpec group{0, 1};
  std::vector<std::vector<groups::GroupElement>> a_sets;
  std::vector<std::vector<groups::GroupElement>> b_sets;
  std::vector<groups::GroupElement> c;
  /// Forbidden n-element sets {a_1..a_n} and {b_1..b_n}.
  std::vector<std::vector<groups::GroupElement>> s_family;
  std::vector<std::vector<groups::GroupElement>> t_family;
};

void validate(const GroupInstance& inst, const SumsetParams& params);

struct GroupWitness {
  WitnessStatus status = WitnessStatus::Inconsistent;
  std::vector<groups::GroupElement> a;
  std::vector<groups::GroupElement> b;
  std::uint64_t nodes = 0;
};

/// First (a, b) in lexicographic position order with {a_i} not in S,
/// {b_i} not in T, and for i < j: a_i+b_i+c_i, m a_i, h b_i all pairwise distinct.
GroupWitness group_witness(const GroupInstance& inst, const SumsetParams& params, std::uint64_t budget = kUnlimited);

std::vector<std::string> check_group_witness(const GroupInstance& inst, const SumsetParams& params,
                                             const std::vector<groups::GroupElement>& a,
                                             const std::vector<groups::GroupElement>& b);

// ---------------------------------------------------------- cardinality bounds

struct SumsetReport {
  std::vector<Integer> elements;  // sorted residues
  Integer bound;                  // promised minimum cardinality
  std::uint64_t tuples = 0;       // tuples enumerated
  bool bound_met() const { return Integer(elements.size()) >= bound; }
};

/// Sums a_1+...+a_n over a_i in A_i, pairwise distinct, with
/// per(P_j(a_j)^{i-1}) != 0 in Z/p. Bound (k-1)n - (m+1)C(n,2) + 1.
/// Requires |A_i| = k, k-1 >= m(n-1), p > K, deg P_i <= m, [x^m]P_i distinct.
SumsetReport permanent_restricted_sumset(std::uint64_t p, std::int64_t m, const std::vector<std::vector<Integer>>& a_sets,
                                         const std::vector<Coefficients>& polys);

struct SdrResult {
  WitnessStatus status = WitnessStatus::Inconsistent;
  std::vector<Integer> a;
  std::uint64_t nodes = 0;
};

/// First SDR (by positions) of n sets of size n with per((a_j b_j)^{i-1}) != 0 in Z/p.
SdrResult nonvanishing_permanent_sdr(std::uint64_t p, const std::vector<std::vector<Integer>>& a_sets,
                                     const std::vector<Integer>& b, std::uint64_t budget = kUnlimited);

/// per((a_j b_j)^{i-1}) mod p.
Integer power_permanent(std::uint64_t p, const std::vector<Integer>& a, const std::vector<Integer>& b);

struct DifferenceSumsetReport {
  std::vector<Integer> b;  // the SDR of the B_i used
  SumsetReport sumset;
};

/// Pairs (i, j), i < j, listed in order (1,2), (1,3), ..., (2,3), ...
using PairSets = std::vector<std::vector<Integer>>;

/// Picks b via nonvanishing_permanent_sdr(B, c), then collects sums over
/// a_i in A_i with a_i - a_j not in S_ij and a_i b_i c_i != a_j b_j c_j (i < j).
/// Bound (k-1-m(n-1))n + 1. Requires |A_i| = k, |B_i| = n, k-1 >= m(n-1),
/// p > max(mn, (k-1-m(n-1))n), |S_ij| < 2m, c distinct.
DifferenceSumsetReport difference_restricted_sumset(std::uint64_t p, std::int64_t m,
                                                    const std::vector<std::vector<Integer>>& a_sets,
                                                    const std::vector<std::vector<Integer>>& b_sets,
                                                    const std::vector<Integer>& c, const PairSets& excluded);

// ------------------------------------------------------------ permanent identity

struct PolyIdentityReport {
  poly::SparsePoly lhs;
  poly::SparsePoly rhs;
  Integer constant;
  bool equal() const { return lhs == rhs; }
};

/// [x^{k-1}] prod_{i<j}(x_j-x_i)^{2m-1}(x_j y_j - x_i y_i) (sum x)^N, N = (k-1-m(n-1))n,
/// against (-1)^{m C(n,2)} (mn)! N!/((m!)^n n!) prod_r (rm)!/(k-1-rm)! * per(y_j^{i-1}),
/// both as polynomials in y_1..y_n (arity n). Limited to n <= 3, m <= 2, k <= 6.
PolyIdentityReport difference_permanent_identity(std::int64_t k, std::int64_t m, std::int64_t n);

/// As above with the y_i substituted.
struct ValueIdentityReport {
  Integer lhs;
  Integer rhs;
  bool equal() const { return lhs == rhs; }
};
ValueIdentityReport difference_permanent_identity(std::int64_t k, std::int64_t m, std::int64_t n,
                                                  const std::vector<Integer>& y);

// ------------------------------------------------------------------ generators

/// k distinct residues of Z/p.
std::vector<Integer> random_subset(rng::Engine& e, std::uint64_t p, std::size_t k);
/// Monic polynomial of the given degree with random lower coefficients.
Coefficients random_monic(rng::Engine& e, std::uint64_t p, std::size_t degree);

/// Random instance for the given parameters: sets, distinct c, monic P_i, Q_i,
/// and random S, T of sizes up to K, L.
FieldInstance random_field_instance(rng::Engine& e, const SumsetParams& params, std::uint64_t p);

}  // namespace addcomb::sumsets
