#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace addcomb {

using Integer = boost::multiprecision::cpp_int;

/// Malformed input or a violated precondition. Maps to CLI exit code 1.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical guarantee failed to materialize (e.g. a search the theory
/// says must succeed came back empty, or a factorial ratio was not integral).
/// Never expected; signals a bug in this library.
class FatalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

/// n*(n-1)/2
inline std::int64_t choose2(std::int64_t n) { return n * (n - 1) / 2; }

/// Exact quotient a / b. Throws FatalInconsistency naming `what` when b does
/// not divide a.
Integer exact_div(const Integer& a, const Integer& b, const std::string& what);

/// Least nonnegative residue.
Integer mod_floor(const Integer& a, const Integer& m);

bool is_prime(std::uint64_t n);

inline std::string to_string(const Integer& v) { return v.str(); }

}  // namespace addcomb
