#include "addcomb/permdet.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace addcomb::permdet {

using poly::CoefficientRing;
using poly::DegreeCap;
using poly::Monomial;
using poly::PartialMonomial;
using poly::SparsePoly;

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.size() != b.size()) throw InvalidInput("matrix size mismatch");
  const std::size_t n = a.size();
  IntMatrix c(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c(i, j) += a(i, k) * b(k, j);
  return c;
}

// ------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto v : images_) {
    if (v >= images_.size() || seen[v]) throw InvalidInput("not a permutation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> img(n);
  std::iota(img.begin(), img.end(), 0);
  return Permutation(std::move(img));
}

std::vector<Permutation> Permutation::all(std::size_t n) {
  std::vector<Permutation> out;
  std::vector<std::size_t> img(n);
  std::iota(img.begin(), img.end(), 0);
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

int Permutation::sign() const {
  std::vector<bool> visited(images_.size(), false);
  int s = 1;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (visited[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !visited[j]; j = images_[j]) {
      visited[j] = true;
      ++len;
    }
    if (len % 2 == 0) s = -s;
  }
  return s;
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) throw InvalidInput("permutation size mismatch");
  std::vector<std::size_t> img(size());
  for (std::size_t i = 0; i < size(); ++i) img[i] = images_[other(i)];
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> img(size());
  for (std::size_t i = 0; i < size(); ++i) img[images_[i]] = i;
  return Permutation(std::move(img));
}

// ------------------------------------------------------------ permanent/det

Integer permanent(const IntMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n > 62) throw InvalidInput("permanent: matrix too large");
  std::vector<Integer> row_sums(n, 0);
  Integer total = 0;
  std::uint64_t gray = 0;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < limit; ++step) {
    const auto col = static_cast<std::size_t>(std::countr_zero(step));
    gray ^= std::uint64_t{1} << col;
    const bool added = (gray >> col) & 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (added) {
        row_sums[i] += a(i, col);
      } else {
        row_sums[i] -= a(i, col);
      }
    }
    Integer prod = row_sums[0];
    for (std::size_t i = 1; i < n && prod != 0; ++i) prod *= row_sums[i];
    if (std::popcount(gray) % 2 == 0) {
      total += prod;
    } else {
      total -= prod;
    }
  }
  return n % 2 == 0 ? total : Integer(-total);
}

Integer permanent_leibniz(const IntMatrix& a) { return leibniz_sum<Integer>(a, false, 0, 1); }

Integer determinant_leibniz(const IntMatrix& a) { return leibniz_sum<Integer>(a, true, 0, 1); }

Integer determinant(const IntMatrix& a) {
  if (a.size() <= 6) return determinant_leibniz(a);
  return berkowitz_determinant<Integer>(a, 1);
}

SparsePoly permanent(const PolyMatrix& a, CoefficientRing ring, std::size_t arity) {
  return leibniz_sum<SparsePoly>(a, false, SparsePoly(ring, arity), SparsePoly::constant(ring, arity, 1));
}

SparsePoly determinant(const PolyMatrix& a, CoefficientRing ring, std::size_t arity) {
  SparsePoly one = SparsePoly::constant(ring, arity, 1);
  if (a.size() <= 6) return leibniz_sum<SparsePoly>(a, true, SparsePoly(ring, arity), one);
  return berkowitz_determinant<SparsePoly>(a, one);
}

// ---------------------------------------------------------- identity checks

bool ExponentProfile::uniform_k() const {
  return std::adjacent_find(k.begin(), k.end(), std::not_equal_to<>()) == k.end();
}

std::int64_t ExponentProfile::weight() const {
  std::int64_t w = 0;
  for (auto v : m) w += v;
  return w + static_cast<std::int64_t>(delta) * choose2(static_cast<std::int64_t>(m.size()));
}

bool IdentityReport::equal() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.equal(); });
}

namespace {

const CoefficientRing kZ = CoefficientRing::integers();

/// Matrix whose (i, j) entry is a(i, j) * x_j^{w_i} (a == nullptr means all ones).
PolyMatrix weighted_matrix(const IntMatrix* a, const std::vector<std::uint32_t>& w) {
  const std::size_t n = w.size();
  PolyMatrix out(n, SparsePoly(kZ, n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) = SparsePoly::term(kZ, Monomial::variable(n, j, w[i]), a ? (*a)(i, j) : Integer(1));
    }
  }
  return out;
}

SparsePoly sum_power(std::size_t n, std::uint32_t e, const DegreeCap& cap) {
  std::vector<Integer> ones(n, 1);
  return poly::power_linear_form(kZ, ones, e, cap);
}

Integer extract_at(std::vector<SparsePoly> factors, const std::vector<std::uint32_t>& k) {
  Monomial target(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) target[i] = k[i];
  SparsePoly c = poly::coeff_of_product(factors, PartialMonomial(target));
  return c.coeff(Monomial(k.size()));
}

void validate_profile(const IntMatrix& a, const ExponentProfile& prof) {
  const std::size_t n = a.size();
  if (n == 0) throw InvalidInput("duality check needs n >= 1");
  if (prof.k.size() != n || prof.m.size() != n) throw InvalidInput("exponent profile length does not match matrix");
  if (prof.delta > 1) throw InvalidInput("delta must be 0 or 1");
  std::int64_t ksum = 0;
  for (auto v : prof.k) ksum += v;
  if (prof.weight() > ksum) throw InvalidInput("profile weight M exceeds sum of k");
}

/// Sum over permutations sigma with all k_{sigma(i)} - m_i >= 0 (pairwise
/// distinct when delta = 1) of sign * N_sigma * prod a(i, sigma(i)).
Integer general_side(const IntMatrix& a, const ExponentProfile& prof, bool det_weighted) {
  const std::size_t n = a.size();
  std::int64_t ksum = 0;
  for (auto v : prof.k) ksum += v;
  const Integer top = factorial(static_cast<unsigned>(ksum - prof.weight()));
  Integer total = 0;
  for (const auto& sigma : Permutation::all(n)) {
    std::vector<std::int64_t> d(n);
    bool admissible = true;
    for (std::size_t i = 0; i < n && admissible; ++i) {
      d[i] = static_cast<std::int64_t>(prof.k[sigma(i)]) - prof.m[i];
      admissible = d[i] >= 0;
    }
    if (!admissible) continue;
    std::vector<std::int64_t> sorted = d;
    std::sort(sorted.begin(), sorted.end());
    const bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    if (prof.delta == 1 && !distinct) continue;

    Integer denom = 1;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::int64_t j = 0; j < d[i]; ++j) {
        if (prof.delta == 1 && std::binary_search(sorted.begin(), sorted.end(), j)) continue;
        denom *= d[i] - j;
      }
    }
    const Integer weight = exact_div(top, denom, "permutation multiplier");

    int sign = 1;
    if (prof.delta == 0) {
      if (det_weighted) sign = sigma.sign();
    } else {
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
      const int sorter_sign = Permutation(order).sign();
      sign = det_weighted ? sorter_sign : sorter_sign * sigma.sign();
    }

    Integer prod = 1;
    for (std::size_t i = 0; i < n; ++i) prod *= a(i, sigma(i));
    total += sign * weight * prod;
  }
  return total;
}

/// Factorial-ratio closed forms; nullopt when the profile does not qualify.
std::optional<Integer> closed_side(const IntMatrix& a, const ExponentProfile& prof, bool det_weighted) {
  const std::size_t n = a.size();
  if (!prof.uniform_k()) return std::nullopt;
  const std::int64_t k = prof.k[0];
  for (std::size_t i = 0; i < n; ++i) {
    if (prof.m[i] > k) return std::nullopt;
    if (i > 0) {
      if (prof.m[i] < prof.m[i - 1]) return std::nullopt;
      if (prof.delta == 1 && prof.m[i] == prof.m[i - 1]) return std::nullopt;
    }
  }
  std::int64_t msum = 0;
  for (auto v : prof.m) msum += v;
  const auto pairs = choose2(static_cast<std::int64_t>(n));
  if (prof.delta == 0) {
    Integer denom = 1;
    for (auto mi : prof.m) denom *= factorial(static_cast<unsigned>(k - mi));
    const Integer ratio = exact_div(factorial(static_cast<unsigned>(k * n - msum)), denom, "power-sum ratio");
    return ratio * (det_weighted ? determinant(a) : permanent(a));
  }
  Integer denom = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::int64_t j = prof.m[i] + 1; j <= k; ++j) {
      bool later = false;
      for (std::size_t s = i + 1; s < n; ++s) later = later || prof.m[s] == j;
      if (!later) denom *= j - prof.m[i];
    }
  }
  const Integer ratio =
      exact_div(factorial(static_cast<unsigned>(k * static_cast<std::int64_t>(n) - pairs - msum)), denom,
                "vandermonde power-sum ratio");
  const int sign = pairs % 2 == 0 ? 1 : -1;
  return sign * ratio * (det_weighted ? permanent(a) : determinant(a));
}

IdentityReport check_duality(const IntMatrix& a, const ExponentProfile& prof, bool det_weighted) {
  validate_profile(a, prof);
  const std::size_t n = a.size();
  std::int64_t ksum = 0;
  for (auto v : prof.k) ksum += v;
  Monomial target(n);
  for (std::size_t i = 0; i < n; ++i) target[i] = prof.k[i];
  const DegreeCap cap = DegreeCap::at(target);

  PolyMatrix weighted = weighted_matrix(&a, prof.m);
  SparsePoly weighted_poly = det_weighted ? determinant(weighted, kZ, n) : permanent(weighted, kZ, n);
  std::vector<SparsePoly> factors;
  factors.push_back(sum_power(n, static_cast<std::uint32_t>(ksum - prof.weight()), cap));
  if (prof.delta == 1) {
    std::vector<std::size_t> vars(n);
    std::iota(vars.begin(), vars.end(), 0);
    factors.push_back(poly::vandermonde_product(kZ, n, vars));
  }
  factors.push_back(std::move(weighted_poly));
  const Integer lhs = extract_at(std::move(factors), prof.k);

  IdentityReport report;
  report.checks.push_back({"general", lhs, general_side(a, prof, det_weighted)});
  if (auto closed = closed_side(a, prof, det_weighted)) report.checks.push_back({"closed", lhs, *closed});
  return report;
}

}  // namespace

IdentityReport check_determinant_duality(const IntMatrix& a, const ExponentProfile& prof) {
  return check_duality(a, prof, true);
}

IdentityReport check_permanent_duality(const IntMatrix& a, const ExponentProfile& prof) {
  return check_duality(a, prof, false);
}

IdentityReport check_exponent_symmetry(const IntMatrix& a, std::uint32_t k, const std::vector<std::uint32_t>& l,
                                       const std::vector<std::uint32_t>& m) {
  const std::size_t n = a.size();
  if (n == 0) throw InvalidInput("symmetry check needs n >= 1");
  if (l.size() != n || m.size() != n) throw InvalidInput("exponent vector length does not match matrix");
  std::int64_t N = static_cast<std::int64_t>(k) * static_cast<std::int64_t>(n);
  for (std::size_t i = 0; i < n; ++i) N -= static_cast<std::int64_t>(l[i]) + m[i];
  if (N < 0) throw InvalidInput("kn - sum(l_i + m_i) is negative");

  const std::vector<std::uint32_t> target(n, k);
  const DegreeCap cap = DegreeCap::uniform(n, k);
  const SparsePoly power = sum_power(n, static_cast<std::uint32_t>(N), cap);

  auto side = [&](bool outer_det, bool inner_det, const std::vector<std::uint32_t>& w_outer,
                  const std::vector<std::uint32_t>& w_inner) {
    PolyMatrix outer_m = weighted_matrix(&a, w_outer);
    PolyMatrix inner_m = weighted_matrix(nullptr, w_inner);
    SparsePoly outer = outer_det ? determinant(outer_m, kZ, n) : permanent(outer_m, kZ, n);
    SparsePoly inner = inner_det ? determinant(inner_m, kZ, n) : permanent(inner_m, kZ, n);
    return extract_at({power, inner, outer}, target);
  };

  IdentityReport report;
  const struct {
    const char* label;
    bool outer_det;
    bool inner_det;
  } kinds[] = {{"det-det", true, true}, {"per-det", false, true}, {"det-per", true, false}, {"per-per", false, false}};
  for (const auto& kind : kinds) {
    report.checks.push_back(
        {kind.label, side(kind.outer_det, kind.inner_det, l, m), side(kind.outer_det, kind.inner_det, m, l)});
  }
  return report;
}

IdentityReport check_row_product_identity(const std::vector<std::vector<Integer>>& rows) {
  const std::size_t m = rows.size();
  if (m == 0) throw InvalidInput("row product identity needs at least one row");
  const std::size_t n = rows[0].size();
  if (n == 0) throw InvalidInput("row product identity needs n >= 1");
  for (const auto& r : rows) {
    if (r.size() != n) throw InvalidInput("ragged array");
  }
  if (n > 4 || m > 5) throw InvalidInput("enumeration budget: need n <= 4 and m <= 5");

  const auto perms = Permutation::all(n);
  const auto& last = rows[m - 1];
  std::vector<std::size_t> odometer(m - 1, 0);
  Integer lhs = 0;
  std::vector<Integer> values(n);
  while (true) {
    int sign = 1;
    for (std::size_t s = 0; s + 1 < m; ++s) sign *= perms[odometer[s]].sign();
    for (std::size_t j = 0; j < n; ++j) {
      values[j] = last[j];
      for (std::size_t s = 0; s + 1 < m; ++s) values[j] *= rows[s][perms[odometer[s]](j)];
    }
    Integer prod = sign;
    for (std::size_t j = 0; j < n && prod != 0; ++j)
      for (std::size_t i = 0; i < j; ++i) prod *= values[j] - values[i];
    lhs += prod;

    std::size_t pos = 0;
    while (pos < odometer.size() && ++odometer[pos] == perms.size()) odometer[pos++] = 0;
    if (pos == odometer.size()) break;
  }

  auto row_vandermonde = [&](std::size_t s) {
    Integer v = 1;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i) v *= rows[s][j] - rows[s][i];
    return v;
  };
  Integer rhs = 1;
  for (std::size_t s = 0; s + 1 < m; ++s) rhs *= row_vandermonde(s);
  if (m % 2 == 1) {
    rhs *= row_vandermonde(m - 1);
  } else {
    IntMatrix powers(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) powers(i, j) = boost::multiprecision::pow(last[j], static_cast<unsigned>(i));
    rhs *= permanent(powers);
  }
  return IdentityReport{{{m % 2 == 1 ? "odd" : "even", lhs, rhs}}};
}

}  // namespace addcomb::permdet
