#pragma once

// Sparse multivariate polynomials with exact coefficients (Z or Z/pZ),
// degree-capped multiplication, and coefficient extraction.
//
// Symbolic parameters are ordinary extra variables; extracting a coefficient
// with respect to a subset of the variables (PartialMonomial) leaves a
// polynomial in the rest.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "addcomb/integer.hpp"

namespace addcomb::poly {

class CoefficientRing {
 public:
  static CoefficientRing integers() { return CoefficientRing(0); }
  /// Throws InvalidInput unless p is prime.
  static CoefficientRing mod_p(std::uint64_t p);

  bool is_modular() const { return p_ != 0; }
  /// 0 for the integers.
  std::uint64_t characteristic() const { return p_; }

  Integer reduce(const Integer& v) const { return p_ ? mod_floor(v, Integer(p_)) : v; }
  bool is_zero(const Integer& v) const { return p_ ? v % p_ == 0 : v == 0; }

  std::string to_string() const { return p_ ? "Z/" + std::to_string(p_) : "Z"; }

  friend bool operator==(const CoefficientRing&, const CoefficientRing&) = default;

 private:
  explicit CoefficientRing(std::uint64_t p) : p_(p) {}
  std::uint64_t p_;
};

using Exponents = boost::container::small_vector<std::uint32_t, 10>;

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t arity) : exps_(arity, 0) {}
  explicit Monomial(Exponents exps) : exps_(std::move(exps)) {}
  Monomial(std::initializer_list<std::uint32_t> exps) : exps_(exps) {}

  static Monomial variable(std::size_t arity, std::size_t index, std::uint32_t power = 1);

  std::size_t arity() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
  const Exponents& exponents() const { return exps_; }
  std::uint64_t total_degree() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;

  /// Graded lexicographic order (total degree first, then x1 > x2 > ...).
  static bool grlex_less(const Monomial& a, const Monomial& b);

 private:
  Exponents exps_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

/// Per-variable maximum exponent; nullopt means unbounded.
class DegreeCap {
 public:
  explicit DegreeCap(std::vector<std::optional<std::uint32_t>> caps) : caps_(std::move(caps)) {}
  static DegreeCap unbounded(std::size_t arity) { return DegreeCap(std::vector<std::optional<std::uint32_t>>(arity)); }
  static DegreeCap uniform(std::size_t arity, std::uint32_t cap) {
    return DegreeCap(std::vector<std::optional<std::uint32_t>>(arity, cap));
  }
  static DegreeCap at(const Monomial& m);

  std::size_t arity() const { return caps_.size(); }
  const std::optional<std::uint32_t>& operator[](std::size_t i) const { return caps_[i]; }
  bool admits(const Monomial& m) const;

 private:
  std::vector<std::optional<std::uint32_t>> caps_;
};

/// Exponent targets on some variables; nullopt entries are left free.
class PartialMonomial {
 public:
  explicit PartialMonomial(std::vector<std::optional<std::uint32_t>> exps) : exps_(std::move(exps)) {}
  explicit PartialMonomial(const Monomial& m);

  std::size_t arity() const { return exps_.size(); }
  const std::optional<std::uint32_t>& operator[](std::size_t i) const { return exps_[i]; }
  /// The fixed variables capped at their targets, free variables unbounded.
  DegreeCap cap() const;

 private:
  std::vector<std::optional<std::uint32_t>> exps_;
};

class SparsePoly {
 public:
  using TermMap = std::unordered_map<Monomial, Integer, MonomialHash>;

  SparsePoly(CoefficientRing ring, std::size_t arity) : ring_(ring), arity_(arity) {}

  static SparsePoly constant(CoefficientRing ring, std::size_t arity, const Integer& c);
  static SparsePoly variable(CoefficientRing ring, std::size_t arity, std::size_t index);
  static SparsePoly term(CoefficientRing ring, const Monomial& m, const Integer& c);

  const CoefficientRing& ring() const { return ring_; }
  std::size_t arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c*m, reducing in the ring and dropping zero coefficients.
  void add_term(const Monomial& m, const Integer& c);

  /// Exact coefficient of m (zero if absent). Throws InvalidInput on arity mismatch.
  Integer coeff(const Monomial& m) const;
  /// Total degree; -1 for the zero polynomial.
  std::int64_t total_degree() const;
  /// Largest exponent of each variable.
  std::vector<std::uint32_t> degrees() const;

  Integer evaluate(std::span<const Integer> point) const;

  /// Terms in descending graded-lexicographic order.
  std::vector<std::pair<Monomial, Integer>> sorted_terms() const;

  /// Canonical text form, e.g. `2*x1*x2 - 1`. Variable names default to x1..xn.
  std::string to_string(std::span<const std::string> names = {}) const;
  static SparsePoly parse(std::string_view text, CoefficientRing ring, std::size_t arity,
                          std::span<const std::string> names = {});

  SparsePoly operator-() const;
  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  SparsePoly scaled(const Integer& c) const;

  /// Same polynomial over Z/p (coefficients reduced). Requires an integer ring.
  SparsePoly reduced_mod(std::uint64_t p) const;

  /// Equal as polynomials: same ring, arity and term map.
  friend bool operator==(const SparsePoly& a, const SparsePoly& b);

 private:
  void require_compatible(const SparsePoly& o, const char* op) const;

  CoefficientRing ring_;
  std::size_t arity_;
  TermMap terms_;
};

/// f * g with every monomial exceeding cap in any variable dropped.
SparsePoly mul_capped(const SparsePoly& f, const SparsePoly& g, const DegreeCap& cap);

/// Left fold of mul_capped over factors, starting from 1. The empty product
/// needs the ring and arity.
SparsePoly expand_product(std::span<const SparsePoly> factors, const DegreeCap& cap);
SparsePoly expand_product(CoefficientRing ring, std::size_t arity, std::span<const SparsePoly> factors,
                          const DegreeCap& cap);

/// (sum_i coeffs[i] * x_i)^e truncated to cap, by capped multinomial expansion.
SparsePoly power_linear_form(CoefficientRing ring, std::span<const Integer> coeffs, std::uint32_t e,
                             const DegreeCap& cap);

Integer coeff(const SparsePoly& f, const Monomial& m);

/// Coefficient of the fixed part of target, as a polynomial in the free
/// variables (the fixed variables have exponent zero in the result).
SparsePoly coeff_partial(const SparsePoly& f, const PartialMonomial& target);

/// coeff_partial of the product of factors, computed by expanding all but the
/// last factor under target's cap and contracting with the last factor. Put
/// the sparsest factor last.
SparsePoly coeff_of_product(std::span<const SparsePoly> factors, const PartialMonomial& target);

/// prod_{i<j} (x_{vars[j]} - x_{vars[i]}) over the given variable positions.
SparsePoly vandermonde_product(CoefficientRing ring, std::size_t arity, std::span<const std::size_t> vars);

}  // namespace addcomb::poly
