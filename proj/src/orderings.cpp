#include "addcomb/orderings.hpp"

namespace addcomb::orderings {

std::string KleinFourGroup::format(Element a) const {
  if (!conforms(a)) throw InvalidInput("not a Klein four-group element");
  return std::string{static_cast<char>('0' + (a >> 1)), static_cast<char>('0' + (a & 1))};
}

KleinFourGroup::Element KleinFourGroup::parse_element(std::string_view text) const {
  if (text.size() != 2 || (text[0] != '0' && text[0] != '1') || (text[1] != '0' && text[1] != '1')) {
    throw InvalidInput("Klein four-group elements are written 00, 01, 10, 11");
  }
  return static_cast<Element>((text[0] - '0') << 1 | (text[1] - '0'));
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Found:
      return "found";
    case SolveStatus::NoSolution:
      return "no_solution";
    case SolveStatus::BudgetExceeded:
      return "budget_exceeded";
  }
  return "unknown";
}

namespace {

void validate_sdr_input(const std::vector<std::vector<Integer>>& a_sets,
                        const std::vector<std::vector<Integer>>& b_sets, const std::vector<Integer>& c,
                        const poly::CoefficientRing& ring) {
  const std::size_t n = c.size();
  if (n == 0) throw InvalidInput("need n >= 1");
  if (a_sets.size() != n || b_sets.size() != n) throw InvalidInput("need n sets A_i, n sets B_i and n constants c_i");
  auto distinct = [&](const std::vector<Integer>& xs) {
    std::vector<Integer> r;
    for (const auto& x : xs) r.push_back(ring.reduce(x));
    return detail::pairwise_distinct(r);
  };
  for (const auto* family : {&a_sets, &b_sets}) {
    for (const auto& s : *family) {
      if (s.size() != n) throw InvalidInput("every A_i and B_i must have exactly n elements");
      if (!distinct(s)) throw InvalidInput("a set has repeated elements");
    }
  }
  if (!distinct(c)) throw InvalidInput("the c_i must be pairwise distinct");
}

}  // namespace

SdrProductResult find_sdr_product_ordering(const std::vector<std::vector<Integer>>& a_sets,
                                           const std::vector<std::vector<Integer>>& b_sets,
                                           const std::vector<Integer>& c, const poly::CoefficientRing& ring,
                                           std::uint64_t budget) {
  validate_sdr_input(a_sets, b_sets, c, ring);
  const std::size_t n = c.size();
  SdrProductResult result;
  std::vector<Integer> a(n), b(n), prod(n);
  bool exhausted = false;

  auto taken = [&](const std::vector<Integer>& chosen, std::size_t upto, const Integer& v) {
    for (std::size_t q = 0; q < upto; ++q) {
      if (chosen[q] == v) return true;
    }
    return false;
  };

  std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
    if (i == n) return true;
    for (const auto& av : a_sets[i]) {
      const Integer ar = ring.reduce(av);
      if (taken(a, i, ar)) continue;
      a[i] = ar;
      for (const auto& bv : b_sets[i]) {
        const Integer br = ring.reduce(bv);
        if (taken(b, i, br)) continue;
        if (result.nodes == budget) {
          exhausted = true;
          return false;
        }
        ++result.nodes;
        b[i] = br;
        prod[i] = ring.reduce(ar * br * c[i]);
        if (taken(prod, i, prod[i])) continue;
        if (assign(i + 1)) return true;
        if (exhausted) return false;
      }
    }
    return false;
  };

  if (assign(0)) {
    result.status = SolveStatus::Found;
    result.a = a;
    result.b = b;
    return result;
  }
  if (exhausted) {
    result.status = SolveStatus::BudgetExceeded;
    return result;
  }
  throw FatalInconsistency("no SDR pair with distinct products a_i b_i c_i although the c_i are distinct");
}

bool verify_sdr_product(const std::vector<std::vector<Integer>>& a_sets, const std::vector<std::vector<Integer>>& b_sets,
                        const std::vector<Integer>& c, const poly::CoefficientRing& ring, const std::vector<Integer>& a,
                        const std::vector<Integer>& b) {
  const std::size_t n = c.size();
  if (a.size() != n || b.size() != n || a_sets.size() != n || b_sets.size() != n) return false;
  auto member = [&](const std::vector<Integer>& s, const Integer& v) {
    return std::any_of(s.begin(), s.end(), [&](const Integer& x) { return ring.reduce(x) == ring.reduce(v); });
  };
  std::vector<Integer> ar, br, prods;
  for (std::size_t i = 0; i < n; ++i) {
    if (!member(a_sets[i], a[i]) || !member(b_sets[i], b[i])) return false;
    ar.push_back(ring.reduce(a[i]));
    br.push_back(ring.reduce(b[i]));
    prods.push_back(ring.reduce(a[i] * b[i] * c[i]));
  }
  return detail::pairwise_distinct(ar) && detail::pairwise_distinct(br) && detail::pairwise_distinct(prods);
}

}  // namespace addcomb::orderings
