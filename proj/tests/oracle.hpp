#pragma once

// Test-only reference implementations. Deliberately naive and independent of
// the library's polynomial engine and permutation code: dense-ish map
// polynomials, full (uncapped) products, inversion-count signs.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "addcomb/integer.hpp"

namespace oracle {

using addcomb::Integer;
using Exps = std::vector<int>;
using NaivePoly = std::map<Exps, Integer>;

inline NaivePoly constant(std::size_t arity, Integer c) { return {{Exps(arity, 0), c}}; }

inline NaivePoly monomial(std::size_t arity, std::size_t var, int power, Integer c = 1) {
  Exps e(arity, 0);
  e[var] = power;
  return {{e, c}};
}

inline NaivePoly add(const NaivePoly& a, const NaivePoly& b, int sign = 1) {
  NaivePoly r = a;
  for (const auto& [e, c] : b) r[e] += sign * c;
  for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
  return r;
}

inline NaivePoly mul(const NaivePoly& a, const NaivePoly& b) {
  NaivePoly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exps e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r[e] += ca * cb;
    }
  for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
  return r;
}

inline NaivePoly power(const NaivePoly& a, int e, std::size_t arity) {
  NaivePoly r = constant(arity, 1);
  for (int i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

inline Integer coeff(const NaivePoly& p, const Exps& e) {
  auto it = p.find(e);
  return it == p.end() ? Integer(0) : it->second;
}

inline int inversion_sign(const std::vector<int>& perm) {
  int inv = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j) inv += perm[i] > perm[j];
  return inv % 2 ? -1 : 1;
}

/// Leibniz over naive polynomial entries.
inline NaivePoly leibniz(const std::vector<std::vector<NaivePoly>>& a, bool signed_sum, std::size_t arity) {
  const std::size_t n = a.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  NaivePoly total;
  do {
    NaivePoly prod = constant(arity, signed_sum ? inversion_sign(perm) : 1);
    for (std::size_t i = 0; i < n; ++i) prod = mul(prod, a[i][perm[i]]);
    total = add(total, prod);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline Integer leibniz_int(const std::vector<std::vector<Integer>>& a, bool signed_sum) {
  const std::size_t n = a.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Integer total = 0;
  do {
    Integer prod = signed_sum ? inversion_sign(perm) : 1;
    for (std::size_t i = 0; i < n; ++i) prod *= a[i][perm[i]];
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline NaivePoly sum_of_vars(std::size_t arity, std::size_t first, std::size_t count) {
  NaivePoly r;
  for (std::size_t i = first; i < first + count; ++i) r = add(r, monomial(arity, i, 1));
  return r;
}

inline std::vector<std::vector<Integer>> random_matrix(std::mt19937_64& rng, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  for (auto& row : a)
    for (auto& v : row) v = d(rng);
  return a;
}

}  // namespace oracle
