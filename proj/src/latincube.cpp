#include "addcomb/latincube.hpp"

#include <algorithm>
#include <functional>

#include <boost/dynamic_bitset.hpp>

#include "addcomb/random.hpp"

namespace addcomb::latin {

namespace {

bool lines_latin(std::size_t n, const std::vector<Symbol>& e) {
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) { return e[(i * n + j) * n + k]; };
  std::vector<Symbol> line(n);
  auto distinct = [&] {
    std::sort(line.begin(), line.end());
    return std::adjacent_find(line.begin(), line.end()) == line.end();
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t t = 0; t < n; ++t) line[t] = at(t, a, b);
      if (!distinct()) return false;
      for (std::size_t t = 0; t < n; ++t) line[t] = at(a, t, b);
      if (!distinct()) return false;
      for (std::size_t t = 0; t < n; ++t) line[t] = at(a, b, t);
      if (!distinct()) return false;
    }
  }
  return true;
}

void check_index_set(const std::vector<std::size_t>& s, std::size_t bound) {
  for (std::size_t t = 0; t < s.size(); ++t) {
    if (s[t] >= bound) throw InvalidInput("subcube index out of range");
    if (t > 0 && s[t] <= s[t - 1]) throw InvalidInput("subcube indices must be strictly increasing");
  }
}

void check_permutation(const std::vector<std::size_t>& p, std::size_t n) {
  if (p.size() != n) throw InvalidInput("axis permutation has the wrong length");
  std::vector<bool> seen(n, false);
  for (auto v : p) {
    if (v >= n || seen[v]) throw InvalidInput("axis relabelling is not a permutation");
    seen[v] = true;
  }
}

}  // namespace

Cube::Cube(std::size_t n, std::vector<Symbol> entries, bool cayley_origin)
    : n_(n), entries_(std::move(entries)), cayley_origin_(cayley_origin) {
  if (n_ == 0) throw InvalidInput("cube side must be positive");
  if (entries_.size() != n_ * n_ * n_) throw InvalidInput("cube needs n^3 entries");
  latin_ = lines_latin(n_, entries_);
}

Cube cayley_cube(std::size_t N) {
  if (N == 0) throw InvalidInput("N must be positive");
  std::vector<Symbol> e;
  e.reserve(N * N * N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t k = 0; k < N; ++k) e.push_back((i + j + k) % N);
  return Cube(N, std::move(e), true);
}

Cube subcube(const Cube& c, const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
             const std::vector<std::size_t>& cc) {
  if (a.size() != b.size() || a.size() != cc.size()) throw InvalidInput("subcube index sets differ in size");
  if (a.empty()) throw InvalidInput("subcube index sets must be nonempty");
  for (const auto* s : {&a, &b, &cc}) check_index_set(*s, c.size());
  const std::size_t n = a.size();
  std::vector<Symbol> e;
  e.reserve(n * n * n);
  for (auto i : a)
    for (auto j : b)
      for (auto k : cc) e.push_back(c.at(i, j, k));
  Cube out(n, std::move(e), c.cayley_origin());
  if (c.latin() && !out.latin()) throw FatalInconsistency("subcube of a Latin cube repeats a symbol on a line");
  return out;
}

TransversalResult find_latin_transversal(const Cube& c, std::uint64_t budget) {
  const std::size_t n = c.size();
  const std::size_t total = n * n * n;
  boost::dynamic_bitset<> ij(n * n), ik(n * n), jk(n * n);
  // Symbols compressed to dense ids so value occupancy is a bitset too.
  std::vector<Symbol> alphabet = c.entries();
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  std::vector<std::size_t> id(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    id[idx] = static_cast<std::size_t>(std::lower_bound(alphabet.begin(), alphabet.end(), c.entries()[idx]) -
                                       alphabet.begin());
  }
  boost::dynamic_bitset<> values(alphabet.size());

  TransversalResult result;
  std::vector<std::size_t> chosen;
  bool exhausted = false;

  std::function<bool(std::size_t)> extend = [&](std::size_t from) -> bool {
    if (chosen.size() == n) return true;
    const std::size_t need = n - chosen.size();
    for (std::size_t idx = from; idx + need <= total; ++idx) {
      const std::size_t i = idx / (n * n), j = idx / n % n, k = idx % n;
      if (ij.test(i * n + j) || ik.test(i * n + k) || jk.test(j * n + k)) continue;
      const std::size_t v = id[idx];
      if (values.test(v)) continue;
      if (result.nodes == budget) {
        exhausted = true;
        return false;
      }
      ++result.nodes;
      ij.set(i * n + j);
      ik.set(i * n + k);
      jk.set(j * n + k);
      values.set(v);
      chosen.push_back(idx);
      if (extend(idx + 1)) return true;
      chosen.pop_back();
      ij.reset(i * n + j);
      ik.reset(i * n + k);
      jk.reset(j * n + k);
      values.reset(v);
      if (exhausted) return false;
    }
    return false;
  };

  if (extend(0)) {
    Transversal t;
    for (auto idx : chosen) {
      t.cells.push_back({idx / (n * n), idx / n % n, idx % n});
      t.values.push_back(c.entries()[idx]);
    }
    result.status = SearchStatus::Found;
    result.transversal = std::move(t);
    return result;
  }
  if (exhausted) {
    result.status = SearchStatus::BudgetExceeded;
    return result;
  }
  if (c.cayley_origin()) throw FatalInconsistency("subcube of a Cayley addition cube without a Latin transversal");
  result.status = SearchStatus::NotFound;
  return result;
}

TransversalVerdict verify_transversal(const Transversal& t, const Cube& c) {
  TransversalVerdict v;
  const std::size_t n = c.size();
  v.in_range = std::all_of(t.cells.begin(), t.cells.end(), [&](const Cell& cell) {
    return cell[0] < n && cell[1] < n && cell[2] < n;
  });
  if (!v.in_range) return v;
  v.values_match = t.values.size() == t.cells.size();
  for (std::size_t a = 0; a < t.cells.size() && v.values_match; ++a) {
    v.values_match = t.values[a] == c.at(t.cells[a][0], t.cells[a][1], t.cells[a][2]);
  }
  v.transversal = t.cells.size() == n;
  for (std::size_t a = 0; a < t.cells.size() && v.transversal; ++a) {
    for (std::size_t b = a + 1; b < t.cells.size() && v.transversal; ++b) {
      int agree = 0;
      for (int d = 0; d < 3; ++d) agree += t.cells[a][d] == t.cells[b][d];
      v.transversal = agree <= 1;
    }
  }
  std::vector<Symbol> entries;
  for (const auto& cell : t.cells) entries.push_back(c.at(cell[0], cell[1], cell[2]));
  std::sort(entries.begin(), entries.end());
  v.latin = v.transversal && std::adjacent_find(entries.begin(), entries.end()) == entries.end();
  return v;
}

Cube isotope(const Cube& c, const std::vector<std::size_t>& x, const std::vector<std::size_t>& y,
             const std::vector<std::size_t>& z, const std::vector<Symbol>& sym) {
  const std::size_t n = c.size();
  for (const auto* p : {&x, &y, &z}) check_permutation(*p, n);
  std::vector<Symbol> e;
  e.reserve(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Symbol old = c.at(x[i], y[j], z[k]);
        if (old >= sym.size()) throw InvalidInput("symbol relabelling does not cover the alphabet");
        e.push_back(sym[old]);
      }
  std::vector<Symbol> sorted = sym;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidInput("symbol relabelling is not injective");
  }
  return Cube(n, std::move(e));
}

Cube perturbed_latin_cube(std::size_t n, std::uint64_t seed) {
  auto e = rng::stream(seed, 0);
  auto x = rng::permutation(e, n);
  auto y = rng::permutation(e, n);
  auto z = rng::permutation(e, n);
  auto s = rng::permutation(e, n);
  std::vector<Symbol> sym(s.begin(), s.end());
  return isotope(cayley_cube(n), x, y, z, sym);
}

}  // namespace addcomb::latin
