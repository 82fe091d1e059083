#include "addcomb/sweeps.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <optional>
#include <thread>

#include "addcomb/latincube.hpp"
#include "addcomb/nullstellensatz.hpp"
#include "addcomb/orderings.hpp"
#include "addcomb/permdet.hpp"
#include "addcomb/random.hpp"
#include "addcomb/sumsets.hpp"

namespace addcomb::sweeps {

namespace {

constexpr std::size_t kMaxListed = 20;

struct Outcome {
  bool pass = true;
  std::string note;           // failure reason, or artifact when pass is true
  std::vector<std::string> tags;  // counted into facts
};

Outcome fail(std::string why) { return {false, std::move(why), {}}; }

using Case = std::function<Outcome(rng::Engine&)>;

std::uint64_t salt(const std::string& name) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : name) h = (h ^ ch) * 1099511628211ULL;
  return h;
}

SweepReport collect(const std::string& name, const std::vector<std::pair<std::string, Case>>& cases,
                    const SweepConfig& config) {
  std::vector<Outcome> results(cases.size());
  const std::uint64_t base = rng::splitmix64(config.seed ^ salt(name));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      auto engine = rng::stream(base, i);
      try {
        results[i] = cases[i].second(engine);
      } catch (const std::exception& e) {
        results[i] = fail(std::string("exception: ") + e.what());
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(cases.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SweepReport report;
  report.name = name;
  report.cases = cases.size();
  std::map<std::string, std::uint64_t> tally;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& r = results[i];
    for (const auto& tag : r.tags) ++tally[tag];
    if (r.pass) {
      ++report.passed;
      if (!r.note.empty() && report.artifacts.size() < kMaxListed) report.artifacts.push_back(cases[i].first + ": " + r.note);
    } else if (report.failures.size() < kMaxListed) {
      report.failures.push_back(cases[i].first + ": " + r.note);
    }
  }
  for (const auto& [tag, count] : tally) report.facts.emplace_back(tag, std::to_string(count));
  return report;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t N, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t v = start; v < N; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::string join(const std::vector<std::size_t>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "}";
}

std::uint64_t pick(std::uint64_t value, std::uint64_t fallback) { return value ? value : fallback; }

// ------------------------------------------------------------------ orderings

SweepReport theorem_1_1(const SweepConfig& config) {
  const std::size_t max_n = pick(config.size, 6);
  std::vector<std::pair<std::string, Case>> cases;
  for (std::size_t N = 2; N <= max_n; ++N) {
    const auto g = groups::GroupSpec::cyclic(N);
    for (std::size_t n = 1; n <= std::min<std::size_t>(3, N); ++n) {
      const auto subs = subsets(N, n);
      for (const auto& s1 : subs)
        for (const auto& s2 : subs)
          for (const auto& s3 : subs) {
            auto label = "Z/" + std::to_string(N) + " " + join(s1) + join(s2) + join(s3);
            cases.emplace_back(label, [=](rng::Engine&) {
              orderings::SubsetFamily<groups::GroupSpec> fam{g, {}};
              for (const auto* s : {&s1, &s2, &s3}) {
                std::vector<groups::GroupElement> row;
                for (auto v : *s) row.push_back(g.torsion(static_cast<std::int64_t>(v)));
                fam.sets.push_back(row);
              }
              const auto r = orderings::find_ordering(fam, config.budget);
              if (r.status != orderings::SolveStatus::Found) return fail(orderings::to_string(r.status));
              if (!orderings::verify_ordering(*r.solution, fam)) return fail("verifier rejected the ordering");
              return Outcome{};
            });
          }
    }
  }
  auto report = collect("theorem-1.1", cases, config);
  report.facts.emplace_back("symmetry_reduction", "none: every ordered triple of n-subsets is searched");
  report.facts.emplace_back("max_group_order", std::to_string(max_n));
  return report;
}

SweepReport counterexamples(const SweepConfig& config) {
  std::vector<std::pair<std::string, Case>> cases;
  for (std::uint64_t N : {2, 4}) {
    for (std::size_t m : {2, 4}) {
      cases.emplace_back("Z/" + std::to_string(N) + " full group, m = " + std::to_string(m), [=](rng::Engine&) {
        const auto g = groups::GroupSpec::cyclic(N);
        orderings::SubsetFamily<groups::GroupSpec> fam{g, std::vector(m, g.all_elements())};
        const auto r = orderings::find_ordering(fam, config.budget);
        if (r.status != orderings::SolveStatus::NoSolution) return fail(orderings::to_string(r.status));
        return Outcome{};
      });
    }
  }
  cases.emplace_back("Klein four-group, m = 3", [=](rng::Engine&) {
    const auto fam = orderings::klein_fixture();
    const auto r = orderings::find_ordering(fam, config.budget);
    if (r.status != orderings::SolveStatus::NoSolution) return fail(orderings::to_string(r.status));
    return Outcome{};
  });
  return collect("counterexamples", cases, config);
}

// ------------------------------------------------------------------ latin cubes

SweepReport corollary_1_1(const SweepConfig& config) {
  const std::size_t max_n = pick(config.size, 5);
  std::vector<std::pair<std::string, Case>> cases;
  for (std::size_t N = 1; N <= max_n; ++N) {
    for (std::size_t n = 1; n <= N; ++n) {
      const auto subs = subsets(N, n);
      for (const auto& a : subs)
        for (const auto& b : subs)
          for (const auto& c : subs) {
            cases.emplace_back("N = " + std::to_string(N) + " " + join(a) + join(b) + join(c), [=](rng::Engine&) {
              const auto cube = latin::subcube(latin::cayley_cube(N), a, b, c);
              const auto r = latin::find_latin_transversal(cube, config.budget);
              if (r.status != latin::SearchStatus::Found) return fail("no transversal within budget");
              if (!latin::verify_transversal(*r.transversal, cube).ok()) return fail("verifier rejected the transversal");
              return Outcome{};
            });
          }
    }
  }
  auto report = collect("corollary-1.1", cases, config);
  report.facts.emplace_back("max_cube_size", std::to_string(max_n));
  return report;
}

SweepReport conjecture(const SweepConfig& config) {
  const std::uint64_t trials = pick(config.trials, 1000);
  const std::size_t max_n = pick(config.size, 5);
  std::vector<std::pair<std::string, Case>> cases;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::size_t n = 1 + t % max_n;
    cases.emplace_back("cube " + std::to_string(t) + " (n = " + std::to_string(n) + ")", [=](rng::Engine& e) {
      const auto cube = latin::perturbed_latin_cube(n, e());
      const auto r = latin::find_latin_transversal(cube, config.budget);
      if (r.status == latin::SearchStatus::NotFound) return Outcome{true, "no Latin transversal", {"not_found"}};
      if (r.status == latin::SearchStatus::BudgetExceeded) return Outcome{true, "budget exceeded", {"budget_exceeded"}};
      if (!latin::verify_transversal(*r.transversal, cube).ok()) return fail("verifier rejected the transversal");
      return Outcome{true, "", {"found"}};
    });
  }
  auto report = collect("conjecture", cases, config);
  report.facts.emplace_back("generator", "Cayley cube of Z/n under random axis and symbol permutations (not uniform)");
  return report;
}

// ------------------------------------------------------------------ identities

permdet::IntMatrix random_matrix(rng::Engine& e, std::size_t n, std::int64_t lo, std::int64_t hi) {
  permdet::IntMatrix a(n, Integer(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rng::between(e, lo, hi);
  return a;
}

Outcome identity_outcome(const permdet::IdentityReport& r) {
  for (const auto& c : r.checks) {
    if (!c.equal()) return fail(c.label + ": " + c.lhs.str() + " != " + c.rhs.str());
  }
  return Outcome{};
}

SweepReport identities(const SweepConfig& config) {
  const std::uint64_t trials = pick(config.trials, 100);
  std::vector<std::pair<std::string, Case>> cases;
  const std::size_t row_counts[] = {2, 3, 5};
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::size_t n = 1 + t % 3, m = row_counts[(t / 3) % 3];
    cases.emplace_back("row product random " + std::to_string(t), [=](rng::Engine& e) {
      std::vector<std::vector<Integer>> rows(m, std::vector<Integer>(n));
      for (auto& r : rows)
        for (auto& v : r) v = rng::between(e, -4, 4);
      return identity_outcome(permdet::check_row_product_identity(rows));
    });
  }
  for (std::size_t m : {2u, 3u}) {
    const int cells = static_cast<int>(2 * m);
    cases.emplace_back("row product grid n = 2, m = " + std::to_string(m), [=](rng::Engine&) {
      std::vector<std::vector<Integer>> rows(m, std::vector<Integer>(2));
      for (int code = 0; code < (1 << (2 * cells)); ++code) {
        for (std::size_t s = 0; s < m; ++s)
          for (int j = 0; j < 2; ++j) rows[s][j] = (code >> (2 * (2 * static_cast<int>(s) + j))) & 3;
        auto r = identity_outcome(permdet::check_row_product_identity(rows));
        if (!r.pass) return r;
      }
      return Outcome{};
    });
  }
  for (bool det_side : {true, false}) {
    const std::string kind = det_side ? "determinant duality" : "permanent duality";
    for (std::uint64_t t = 0; t < trials; ++t) {
      cases.emplace_back(kind + " random " + std::to_string(t), [=](rng::Engine& e) {
        const std::size_t n = 1 + t % 3;
        const auto a = random_matrix(e, n, -4, 4);
        const auto prof = random_profile(e, n);
        return identity_outcome(det_side ? permdet::check_determinant_duality(a, prof) : permdet::check_permanent_duality(a, prof));
      });
    }
    cases.emplace_back(kind + " grid n = 2", [=](rng::Engine&) {
      const std::vector<permdet::ExponentProfile> profiles = {{{1, 1}, {0, 1}, 0}, {{2, 2}, {0, 1}, 1}, {{2, 3}, {1, 1}, 0}};
      for (int code = 0; code < 81; ++code) {
        permdet::IntMatrix a(2, Integer(0));
        int c = code;
        for (std::size_t i = 0; i < 2; ++i)
          for (std::size_t j = 0; j < 2; ++j, c /= 3) a(i, j) = c % 3;
        for (const auto& prof : profiles) {
          auto r = identity_outcome(det_side ? permdet::check_determinant_duality(a, prof) : permdet::check_permanent_duality(a, prof));
          if (!r.pass) return r;
        }
      }
      return Outcome{};
    });
  }
  for (std::uint64_t t = 0; t < trials; ++t) {
    cases.emplace_back("exponent symmetry random " + std::to_string(t), [=](rng::Engine& e) {
      const std::size_t n = 1 + t % 3;
      const auto a = random_matrix(e, n, -4, 4);
      std::vector<std::uint32_t> l(n), m(n);
      for (auto& v : l) v = static_cast<std::uint32_t>(rng::below(e, 3));
      for (auto& v : m) v = static_cast<std::uint32_t>(rng::below(e, 3));
      return identity_outcome(permdet::check_exponent_symmetry(a, 4, l, m));
    });
  }
  cases.emplace_back("exponent symmetry grid n = 2", [=](rng::Engine&) {
    for (int code = 0; code < 81; ++code) {
      permdet::IntMatrix a(2, Integer(0));
      int c = code;
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j, c /= 3) a(i, j) = c % 3;
      auto r = identity_outcome(permdet::check_exponent_symmetry(a, 3, {0, 2}, {1, 1}));
      if (!r.pass) return r;
    }
    return Outcome{};
  });
  return collect("identities", cases, config);
}

// ------------------------------------------------------------------ coefficients

sumsets::SumsetParams params(std::int64_t n, std::int64_t m, std::int64_t h, std::int64_t k, std::int64_t l) {
  return sumsets::SumsetParams{h, k, l, m, n};
}

SweepReport lemma_2_2(const SweepConfig& config) {
  const std::uint64_t trials = pick(config.trials, 50);
  std::vector<std::pair<std::string, Case>> cases;
  for (std::int64_t n = 1; n <= 3; ++n) {
    cases.emplace_back("coefficient n = " + std::to_string(n), [=](rng::Engine&) {
      const auto got = sumsets::sdr_coefficient_symbolic(params(n, 1, 1, n, n), sumsets::CoefficientMode::Direct);
      std::vector<std::size_t> vars(static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < vars.size(); ++i) vars[i] = i;
      const auto want = poly::vandermonde_product(poly::CoefficientRing::integers(), vars.size(), vars);
      if (!(got == want)) return fail("coefficient " + got.to_string() + " != " + want.to_string());
      return Outcome{};
    });
  }
  const std::uint64_t primes[] = {5, 7, 11, 13};
  for (std::uint64_t t = 0; t < trials; ++t) {
    cases.emplace_back("field instance " + std::to_string(t), [=](rng::Engine& e) {
      const std::uint64_t p = primes[rng::below(e, 4)];
      const std::size_t n = 1 + rng::below(e, 3);
      std::vector<std::vector<Integer>> A, B;
      for (std::size_t i = 0; i < n; ++i) {
        A.push_back(sumsets::random_subset(e, p, n));
        B.push_back(sumsets::random_subset(e, p, n));
      }
      const auto c = sumsets::random_subset(e, p, n);
      const auto ring = poly::CoefficientRing::mod_p(p);
      const auto r = orderings::find_sdr_product_ordering(A, B, c, ring, config.budget);
      if (r.status != orderings::SolveStatus::Found) return fail(orderings::to_string(r.status));
      if (!orderings::verify_sdr_product(A, B, c, ring, r.a, r.b)) return fail("verifier rejected the SDR pair");
      return Outcome{};
    });
  }
  return collect("lemma-2.2", cases, config);
}

SweepReport lemma_4_1(const SweepConfig& config) {
  std::vector<std::pair<std::string, Case>> cases;
  for (std::int64_t n = 1; n <= 3; ++n)
    for (std::int64_t m = 1; m <= 2; ++m)
      for (std::int64_t h = 1; h <= 2; ++h)
        for (std::int64_t dk = 0; dk <= 1; ++dk)
          for (std::int64_t dl = 0; dl <= 1; ++dl) {
            const auto p = params(n, m, h, m * (n - 1) + 1 + dk, h * (n - 1) + 1 + dl);
            cases.emplace_back(p.to_string(), [=](rng::Engine&) {
              const auto direct = sumsets::sdr_coefficient_symbolic(p, sumsets::CoefficientMode::Direct);
              const auto closed = sumsets::sdr_coefficient_symbolic(p, sumsets::CoefficientMode::ClosedForm);
              if (!(direct == closed)) return fail("direct " + direct.to_string() + " != closed " + closed.to_string());
              if (direct.is_zero()) return fail("coefficient vanishes");
              return Outcome{};
            });
          }
  return collect("lemma-4.1", cases, config);
}

SweepReport lemma_5_1(const SweepConfig& config) {
  std::vector<std::pair<std::string, Case>> cases;
  for (std::int64_t n = 1; n <= 3; ++n)
    for (std::int64_t m = 1; m <= 2; ++m)
      for (std::int64_t dk = 0; dk <= 1; ++dk) {
        const std::int64_t k = m * (n - 1) + 1 + dk;
        cases.emplace_back("k=" + std::to_string(k) + " m=" + std::to_string(m) + " n=" + std::to_string(n), [=](rng::Engine&) {
          const auto r = sumsets::difference_permanent_identity(k, m, n);
          if (!r.equal()) return fail("left " + r.lhs.to_string() + " != right " + r.rhs.to_string());
          return Outcome{};
        });
      }
  return collect("lemma-5.1", cases, config);
}

// ------------------------------------------------------------------ sumset bounds

SweepReport bounds(const SweepConfig& config) {
  const std::uint64_t families = pick(config.trials, 20);
  struct Shape {
    std::int64_t n, m, k;
  };
  const std::vector<Shape> shapes = {{2, 1, 2}, {2, 1, 3}, {2, 1, 4}, {2, 2, 3}, {2, 2, 4}, {3, 1, 3}, {3, 1, 4}, {3, 1, 5}};
  std::vector<std::pair<std::string, Case>> cases;
  for (const auto& s : shapes) {
    for (std::uint64_t p : {5, 7, 11, 13}) {
      const auto sp = static_cast<std::int64_t>(p);
      const std::string shape = "n=" + std::to_string(s.n) + " m=" + std::to_string(s.m) + " k=" + std::to_string(s.k) +
                                " p=" + std::to_string(p);
      if (sp > sumsets::restricted_degree(s.k, s.m, s.n) && sp >= s.k) {
        for (std::uint64_t t = 0; t < families; ++t) {
          cases.emplace_back("permanent-restricted " + shape + " #" + std::to_string(t), [=](rng::Engine& e) {
            std::vector<std::vector<Integer>> sets;
            std::vector<sumsets::Coefficients> polys;
            const auto leading = sumsets::random_subset(e, p, static_cast<std::size_t>(s.n));
            for (std::int64_t i = 0; i < s.n; ++i) {
              sets.push_back(sumsets::random_subset(e, p, static_cast<std::size_t>(s.k)));
              sumsets::Coefficients f;
              for (std::int64_t d = 0; d < s.m; ++d) f.emplace_back(rng::below(e, p));
              f.push_back(leading[static_cast<std::size_t>(i)]);
              polys.push_back(f);
            }
            const auto r = sumsets::permanent_restricted_sumset(p, s.m, sets, polys);
            if (!r.bound_met()) {
              return fail("|C| = " + std::to_string(r.elements.size()) + " < " + r.bound.str());
            }
            return Outcome{true, "", {"permanent_restricted_families"}};
          });
        }
      }
      const std::int64_t N = (s.k - 1 - s.m * (s.n - 1)) * s.n;
      if (sp > std::max(s.m * s.n, N) && sp >= s.k) {
        for (std::uint64_t t = 0; t < families; ++t) {
          cases.emplace_back("difference-restricted " + shape + " #" + std::to_string(t), [=](rng::Engine& e) {
            std::vector<std::vector<Integer>> A, B;
            for (std::int64_t i = 0; i < s.n; ++i) {
              A.push_back(sumsets::random_subset(e, p, static_cast<std::size_t>(s.k)));
              B.push_back(sumsets::random_subset(e, p, static_cast<std::size_t>(s.n)));
            }
            const auto c = sumsets::random_subset(e, p, static_cast<std::size_t>(s.n));
            sumsets::PairSets excl;
            for (std::int64_t q = 0; q < choose2(s.n); ++q) {
              excl.push_back(sumsets::random_subset(e, p, static_cast<std::size_t>(rng::below(e, static_cast<std::uint64_t>(2 * s.m)))));
            }
            const auto r = sumsets::difference_restricted_sumset(p, s.m, A, B, c, excl);
            if (sumsets::power_permanent(p, r.b, c) == 0) return fail("chosen SDR has vanishing permanent");
            if (!r.sumset.bound_met()) {
              return fail("|S| = " + std::to_string(r.sumset.elements.size()) + " < " + r.sumset.bound.str());
            }
            return Outcome{true, "", {"difference_restricted_families"}};
          });
        }
      }
    }
  }
  return collect("bounds", cases, config);
}

// ------------------------------------------------------------------ cross-check

std::vector<std::pair<sumsets::SumsetParams, std::uint64_t>> cross_check_shapes() {
  std::vector<sumsets::SumsetParams> shapes;
  for (std::int64_t m = 1; m <= 2; ++m)
    for (std::int64_t h = 1; h <= 2; ++h)
      for (std::int64_t k = 1; k <= 2; ++k)
        for (std::int64_t l = 1; l <= 2; ++l) shapes.push_back(params(1, m, h, k, l));
  for (std::int64_t k = 2; k <= 3; ++k)
    for (std::int64_t l = 2; l <= 3; ++l) shapes.push_back(params(2, 1, 1, k, l));
  shapes.push_back(params(2, 2, 1, 3, 2));
  shapes.push_back(params(2, 2, 1, 3, 3));
  shapes.push_back(params(2, 1, 2, 2, 3));
  shapes.push_back(params(3, 1, 1, 3, 3));
  std::vector<std::pair<sumsets::SumsetParams, std::uint64_t>> out;
  for (const auto& s : shapes) {
    int taken = 0;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
      const auto sp = static_cast<std::int64_t>(p);
      if (sp <= std::max(s.K(), s.L()) || sp < std::max({s.k, s.l, s.n})) continue;
      out.emplace_back(s, p);
      if (++taken == 2) break;
    }
  }
  return out;
}

SweepReport cross_check(const SweepConfig& config) {
  const std::uint64_t trials = pick(config.trials, 5);
  std::vector<std::pair<std::string, Case>> cases;
  for (const auto& [s, p] : cross_check_shapes()) {
    for (std::uint64_t t = 0; t < trials; ++t) {
      cases.emplace_back(s.to_string() + " p=" + std::to_string(p) + " #" + std::to_string(t), [=, s = s, p = p](rng::Engine& e) {
        const auto inst = sumsets::random_field_instance(e, s, p);
        const auto f = sumsets::field_proof_polynomial(inst, s);
        cn::GridFamily grid;
        for (const auto& a : inst.a_sets) grid.sets.push_back(a);
        for (const auto& b : inst.b_sets) grid.sets.push_back(b);
        grid.target_degrees.assign(static_cast<std::size_t>(s.n), static_cast<std::uint32_t>(s.k - 1));
        grid.target_degrees.resize(2 * static_cast<std::size_t>(s.n), static_cast<std::uint32_t>(s.l - 1));
        const auto cert = cn::certify(f, grid);
        if (cert.coefficient == 0) return fail("certificate coefficient vanishes");
        const auto formula = mod_floor(sumsets::sdr_coefficient(s, inst.c, sumsets::CoefficientMode::ClosedForm), Integer(p));
        if (cert.coefficient != formula) return fail("certificate coefficient differs from the closed form");
        const auto found = cn::witness_search(f, grid, config.budget);
        if (found.status != cn::SearchStatus::Found) return fail("witness_search found no nonzero of f");
        std::vector<Integer> point;
        for (const auto& v : found.witness) point.push_back(mod_floor(v, Integer(p)));
        const auto sat = sumsets::field_witness(sumsets::saturate_exclusions(inst, s), s, config.budget);
        if (sat.status != sumsets::WitnessStatus::Found) return fail("field witness: " + sumsets::to_string(sat.status));
        std::vector<Integer> joined = sat.a;
        joined.insert(joined.end(), sat.b.begin(), sat.b.end());
        if (joined != point) return fail("witness_search and the field witness disagree");
        const std::vector<Integer> a(point.begin(), point.begin() + s.n), b(point.begin() + s.n, point.end());
        if (!sumsets::check_field_witness(inst, a, b).empty()) return fail("checker rejected the witness");
        const auto plain = sumsets::field_witness(inst, s, config.budget);
        std::vector<Integer> plain_joined = plain.a;
        plain_joined.insert(plain_joined.end(), plain.b.begin(), plain.b.end());
        if (plain.status != sumsets::WitnessStatus::Found) return fail("field witness: " + sumsets::to_string(plain.status));
        if (!sumsets::check_field_witness(inst, plain.a, plain.b).empty()) return fail("checker rejected the field witness");
        return Outcome{true, "", {plain_joined == point ? "literal_agreement" : "literal_disagreement"}};
      });
    }
  }
  auto report = collect("cross-check", cases, config);
  report.facts.emplace_back("comparison", "witness_search(f) against the field witness with 0 added to S, T when |S| < K, |T| < L");
  return report;
}

// ------------------------------------------------------------------ engine

poly::SparsePoly random_poly(rng::Engine& e, std::size_t arity) {
  poly::SparsePoly f(poly::CoefficientRing::integers(), arity);
  const auto terms = 1 + rng::below(e, 6);
  for (std::uint64_t t = 0; t < terms; ++t) {
    poly::Monomial m(arity);
    for (std::size_t i = 0; i < arity; ++i) m[i] = static_cast<std::uint32_t>(rng::below(e, 4));
    f.add_term(m, rng::between(e, -5, 5));
  }
  return f;
}

SweepReport engine(const SweepConfig& config) {
  std::vector<std::pair<std::string, Case>> cases;
  for (std::uint64_t t = 0; t < 200; ++t) {
    cases.emplace_back("permanent " + std::to_string(t), [=](rng::Engine& e) {
      const auto a = random_matrix(e, 1 + t % 7, -5, 5);
      const auto ryser = permdet::permanent(a), leibniz = permdet::permanent_leibniz(a);
      if (ryser != leibniz) return fail("Ryser " + ryser.str() + " != Leibniz " + leibniz.str());
      return Outcome{};
    });
  }
  for (std::uint64_t t = 0; t < 100; ++t) {
    cases.emplace_back("capped product " + std::to_string(t), [=](rng::Engine& e) {
      const std::size_t arity = 1 + rng::below(e, 3);
      const auto f = random_poly(e, arity), g = random_poly(e, arity);
      std::vector<std::optional<std::uint32_t>> caps(arity);
      for (auto& c : caps) {
        if (rng::below(e, 4) != 0) c = static_cast<std::uint32_t>(rng::below(e, 6));
      }
      const poly::DegreeCap cap(caps);
      const auto capped = poly::mul_capped(f, g, cap);
      const auto full = f * g;
      poly::SparsePoly truncated(full.ring(), arity);
      for (const auto& [m, c] : full.terms()) {
        if (cap.admits(m)) truncated.add_term(m, c);
      }
      if (!(capped == truncated)) return fail("capped product differs from the truncated full product");
      return Outcome{};
    });
  }
  return collect("engine", cases, config);
}

}  // namespace

permdet::ExponentProfile random_profile(rng::Engine& e, std::size_t n) {
  for (;;) {
    permdet::ExponentProfile prof;
    prof.delta = static_cast<std::uint32_t>(rng::below(e, 2));
    const bool uniform = rng::below(e, 2) == 1;
    const auto k0 = static_cast<std::uint32_t>(n + rng::below(e, 4));
    for (std::size_t i = 0; i < n; ++i) prof.k.push_back(uniform ? k0 : static_cast<std::uint32_t>(n + rng::below(e, 4)));
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t lo = i == 0 ? 0 : prof.m[i - 1] + prof.delta;
      prof.m.push_back(std::min<std::uint32_t>(lo + static_cast<std::uint32_t>(rng::below(e, 2)), k0));
    }
    std::int64_t ksum = 0;
    for (auto v : prof.k) ksum += v;
    if (prof.weight() <= ksum) return prof;
  }
}

std::string SweepReport::fact(const std::string& key) const {
  for (const auto& [k, v] : facts) {
    if (k == key) return v;
  }
  return "";
}

const std::vector<std::string>& sweep_names() {
  static const std::vector<std::string> names = {"theorem-1.1", "counterexamples", "corollary-1.1", "identities",
                                                 "lemma-2.2",   "lemma-4.1",       "lemma-5.1",     "bounds",
                                                 "cross-check", "engine",          "conjecture"};
  return names;
}

SweepReport run_sweep(const std::string& name, const SweepConfig& config) {
  if (name == "theorem-1.1") return theorem_1_1(config);
  if (name == "counterexamples") return counterexamples(config);
  if (name == "corollary-1.1") return corollary_1_1(config);
  if (name == "identities") return identities(config);
  if (name == "lemma-2.2") return lemma_2_2(config);
  if (name == "lemma-4.1") return lemma_4_1(config);
  if (name == "lemma-5.1") return lemma_5_1(config);
  if (name == "bounds") return bounds(config);
  if (name == "cross-check") return cross_check(config);
  if (name == "engine") return engine(config);
  if (name == "conjecture") return conjecture(config);
  throw InvalidInput("unknown sweep '" + name + "'");
}

}  // namespace addcomb::sweeps
