#pragma once

// Permanents and determinants over commutative rings, and executable
// checkers for the determinant/permanent duality identities between
// coefficient extractions and closed forms.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "addcomb/integer.hpp"
#include "addcomb/polyring.hpp"

namespace addcomb::permdet {

template <class T>
class SquareMatrix {
 public:
  SquareMatrix(std::size_t n, T fill) : n_(n), data_(n * n, fill) {}
  explicit SquareMatrix(std::vector<std::vector<T>> rows) : n_(rows.size()) {
    data_.reserve(n_ * n_);
    for (auto& row : rows) {
      if (row.size() != n_) throw InvalidInput("matrix is not square");
      for (auto& v : row) data_.push_back(std::move(v));
    }
  }

  std::size_t size() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<T> data_;
};

using IntMatrix = SquareMatrix<Integer>;
using PolyMatrix = SquareMatrix<poly::SparsePoly>;

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

/// A bijection on {0, ..., n-1}.
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> images);
  static Permutation identity(std::size_t n);
  /// All of S_n in lexicographic order of image sequences.
  static std::vector<Permutation> all(std::size_t n);

  std::size_t size() const { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::size_t>& images() const { return images_; }
  int sign() const;
  /// (this * other)(i) = this(other(i))
  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> images_;
};

/// Sum over S_n of (sign if signed_sum) * prod_i a(i, sigma(i)).
template <class T>
T leibniz_sum(const SquareMatrix<T>& a, bool signed_sum, const T& zero, const T& one) {
  const std::size_t n = a.size();
  if (n == 0) return one;
  T total = zero;
  for (const auto& sigma : Permutation::all(n)) {
    T prod = a(0, sigma(0));
    for (std::size_t i = 1; i < n; ++i) prod = prod * a(i, sigma(i));
    if (signed_sum && sigma.sign() < 0) {
      total = total - prod;
    } else {
      total = total + prod;
    }
  }
  return total;
}

/// Division-free determinant via the Samuelson-Berkowitz characteristic
/// polynomial recurrence. Needs only ring operations.
template <class T>
T berkowitz_determinant(const SquareMatrix<T>& a, const T& one) {
  const std::size_t n = a.size();
  if (n == 0) return one;
  // Characteristic polynomial coefficients of the leading r x r block, highest degree first.
  std::vector<T> charpoly{one, -a(0, 0)};
  for (std::size_t r = 1; r < n; ++r) {
    std::vector<T> toeplitz(r + 2, one);
    toeplitz[1] = -a(r, r);
    std::vector<T> v;
    v.reserve(r);
    for (std::size_t i = 0; i < r; ++i) v.push_back(a(i, r));
    for (std::size_t t = 2; t <= r + 1; ++t) {
      T dot = a(r, 0) * v[0];
      for (std::size_t j = 1; j < r; ++j) dot = dot + a(r, j) * v[j];
      toeplitz[t] = -dot;
      if (t == r + 1) break;
      std::vector<T> next;
      next.reserve(r);
      for (std::size_t i = 0; i < r; ++i) {
        T s = a(i, 0) * v[0];
        for (std::size_t j = 1; j < r; ++j) s = s + a(i, j) * v[j];
        next.push_back(std::move(s));
      }
      v = std::move(next);
    }
    std::vector<T> updated;
    updated.reserve(r + 2);
    for (std::size_t i = 0; i < r + 2; ++i) {
      T s = toeplitz[i] * charpoly[0];
      for (std::size_t j = 1; j <= std::min(i, r); ++j) s = s + toeplitz[i - j] * charpoly[j];
      updated.push_back(std::move(s));
    }
    charpoly = std::move(updated);
  }
  return n % 2 == 0 ? charpoly[n] : -charpoly[n];
}

/// Ryser inclusion-exclusion with Gray-code ordered column subsets.
Integer permanent(const IntMatrix& a);
Integer permanent_leibniz(const IntMatrix& a);

/// Leibniz up to n = 6, Berkowitz beyond.
Integer determinant(const IntMatrix& a);
Integer determinant_leibniz(const IntMatrix& a);

/// Polynomial entries; an empty matrix needs ring and arity for its value 1.
poly::SparsePoly permanent(const PolyMatrix& a, poly::CoefficientRing ring, std::size_t arity);
poly::SparsePoly determinant(const PolyMatrix& a, poly::CoefficientRing ring, std::size_t arity);

// ------------------------------------------------------------ identity checkers

/// Exponent data for the duality identities. `k` holds the per-variable
/// targets (all equal for the uniform closed forms), `m` the row weights.
struct ExponentProfile {
  std::vector<std::uint32_t> k;
  std::vector<std::uint32_t> m;
  std::uint32_t delta = 0;

  std::size_t size() const { return m.size(); }
  bool uniform_k() const;
  /// sum m_i + delta * C(n, 2)
  std::int64_t weight() const;
};

/// One side-by-side comparison; both sides kept verbatim for diagnosis.
struct IdentityCheck {
  std::string label;
  Integer lhs;
  Integer rhs;
  bool equal() const { return lhs == rhs; }
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool equal() const;
};

/// Coefficient of x^k in |a_ij x_j^{m_i}| * prod_{i<j}(x_j - x_i)^delta * (x_1+...+x_n)^{sum k - M},
/// compared against the signed-multinomial sum over permutations ("general"),
/// and, when k is uniform with m_1 <= ... <= m_n <= k (strictly increasing when
/// delta = 1), against the factorial-ratio multiple of det(A) or per(A)
/// ("closed"). Throws InvalidInput on shape errors, delta > 1, or M > sum k.
IdentityReport check_determinant_duality(const IntMatrix& a, const ExponentProfile& prof);

/// As above with the permanent ||a_ij x_j^{m_i}|| on the left; the roles of
/// per(A) and det(A) swap in the closed forms.
IdentityReport check_permanent_duality(const IntMatrix& a, const ExponentProfile& prof);

/// Four exchange symmetries: for outer, inner in {det, per},
/// [x^k] outer(a_ij x_j^{l_i}) inner(x_j^{m_i}) (sum x)^N equals the same with
/// l and m swapped, N = kn - sum(l_i + m_i). Labels: det-det, per-det, det-per,
/// per-per (outer-inner). Throws InvalidInput when N < 0.
IdentityReport check_exponent_symmetry(const IntMatrix& a, std::uint32_t k, const std::vector<std::uint32_t>& l,
                                       const std::vector<std::uint32_t>& m);

/// For an m x n array a (m rows), the signed sum over (sigma_1..sigma_{m-1})
/// in S_n^{m-1} of prod_{i<j}(a_mj prod_s a_{s,sigma_s(j)} - a_mi prod_s a_{s,sigma_s(i)})
/// against prod_s prod_{i<j}(a_sj - a_si) for odd m, and
/// per(a_mj^{i-1}) * prod_{s<m} prod_{i<j}(a_sj - a_si) for even m.
/// Enumeration is capped at n <= 4, m <= 5 (InvalidInput beyond).
IdentityReport check_row_product_identity(const std::vector<std::vector<Integer>>& rows);

}  // namespace addcomb::permdet
