#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "addcomb/groups.hpp"
#include "addcomb/latincube.hpp"
#include "addcomb/nullstellensatz.hpp"
#include "addcomb/orderings.hpp"
#include "addcomb/permdet.hpp"
#include "addcomb/random.hpp"
#include "addcomb/sumsets.hpp"
#include "addcomb/sweeps.hpp"

namespace addcomb::cli {

namespace {

using json = nlohmann::ordered_json;
constexpr const char* kVersion = "1.0.0";
constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  std::uint64_t seed = 1;
  std::uint64_t budget = kUnlimited;
  std::uint64_t trials = 0;
  std::optional<std::uint64_t> field;
  std::string group;
  std::string out;
  bool timing = false;
  unsigned threads = 1;
  std::string files;  // contents of every input file, for the digest
};

struct Outcome {
  int code = kOk;
  json result = json::object();
  json verification = json::object();
};

// ------------------------------------------------------------------ helpers

std::string fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : data) h = (h ^ ch) * 1099511628211ULL;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Arguments that do not change the result are left out of the digest.
std::string digest_of(const std::vector<std::string>& args, const std::string& files) {
  std::string acc;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a == "--timing" || a.starts_with("--out=") || a.starts_with("--threads=")) continue;
    if (a == "--out" || a == "--threads") {
      ++i;
      continue;
    }
    acc += a;
    acc.push_back('\0');
  }
  return "fnv1a64:" + fnv1a(acc + files);
}

std::string read_file(Context& ctx, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  ctx.files += path;
  ctx.files.push_back('\0');
  ctx.files += ss.str();
  ctx.files.push_back('\0');
  return ss.str();
}

json read_json(Context& ctx, const std::string& path) {
  try {
    return json::parse(read_file(ctx, path));
  } catch (const json::parse_error& e) {
    throw InvalidInput("malformed JSON in '" + path + "': " + e.what());
  }
}

json jint(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

json jints(const std::vector<Integer>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(jint(v));
  return a;
}

json jsets(const std::vector<std::vector<Integer>>& sets) {
  json a = json::array();
  for (const auto& s : sets) a.push_back(jints(s));
  return a;
}

Integer to_integer(const json& v, const std::string& what) {
  if (v.is_number_integer()) return Integer(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return Integer(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw InvalidInput(what + " must be an integer");
}

std::vector<Integer> to_integers(const json& v, const std::string& what) {
  if (!v.is_array()) throw InvalidInput(what + " must be an array of integers");
  std::vector<Integer> out;
  for (const auto& x : v) out.push_back(to_integer(x, what));
  return out;
}

std::vector<std::vector<Integer>> to_integer_sets(const json& v, const std::string& what) {
  if (!v.is_array()) throw InvalidInput(what + " must be an array of arrays");
  std::vector<std::vector<Integer>> out;
  for (const auto& s : v) out.push_back(to_integers(s, what));
  return out;
}

std::int64_t get_int(const json& obj, const char* key, std::optional<std::int64_t> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw InvalidInput(std::string("missing parameter '") + key + "'");
  }
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw InvalidInput(std::string("parameter '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::string budget_text(std::uint64_t b) { return b == kUnlimited ? "unlimited" : std::to_string(b); }

bool is_klein(const std::string& g) { return g == "klein" || g == "Klein" || g == "Z/2 x Z/2" || g == "V4"; }

groups::GroupElement parse_group_element(const groups::GroupSpec& g, const json& v) {
  if (v.is_number_integer()) return g.parse_element(std::to_string(v.get<std::int64_t>()));
  if (v.is_string()) return g.parse_element(v.get<std::string>());
  throw InvalidInput("group elements are integers or strings");
}

std::vector<groups::GroupElement> parse_group_elements(const groups::GroupSpec& g, const json& v, const std::string& what) {
  if (!v.is_array()) throw InvalidInput(what + " must be an array");
  std::vector<groups::GroupElement> out;
  for (const auto& x : v) out.push_back(parse_group_element(g, x));
  return out;
}

std::vector<std::vector<groups::GroupElement>> parse_group_sets(const groups::GroupSpec& g, const json& v, const std::string& what) {
  if (!v.is_array()) throw InvalidInput(what + " must be an array of arrays");
  std::vector<std::vector<groups::GroupElement>> out;
  for (const auto& s : v) out.push_back(parse_group_elements(g, s, what));
  return out;
}

json format_elements(const groups::GroupSpec& g, const std::vector<groups::GroupElement>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(g.format(x));
  return a;
}

json format_sets(const groups::GroupSpec& g, const std::vector<std::vector<groups::GroupElement>>& sets) {
  json a = json::array();
  for (const auto& s : sets) a.push_back(format_elements(g, s));
  return a;
}

std::uint64_t require_field(const Context& ctx, const json& params) {
  if (ctx.field) return *ctx.field;
  if (params.contains("p")) return static_cast<std::uint64_t>(get_int(params, "p"));
  throw InvalidInput("a prime field is required (--field p)");
}

// ------------------------------------------------------------------ find-ordering

template <class G>
Outcome ordering_outcome(const orderings::SubsetFamily<G>& fam, bool even, const Context& ctx) {
  const auto r = even ? orderings::find_ordering_even(fam, ctx.budget) : orderings::find_ordering(fam, ctx.budget);
  Outcome out;
  out.result["group"] = fam.group.to_string();
  out.result["m"] = fam.m();
  out.result["n"] = fam.n();
  out.result["status"] = orderings::to_string(r.status);
  out.result["nodes"] = r.nodes;
  switch (r.status) {
    case orderings::SolveStatus::Found: {
      json table = json::array();
      for (const auto& row : r.solution->table) {
        json jr = json::array();
        for (const auto& x : row) jr.push_back(fam.group.format(x));
        table.push_back(jr);
      }
      out.result["table"] = table;
      json sums = json::array();
      for (const auto& x : orderings::detail::column_sums(fam.group, r.solution->table)) sums.push_back(fam.group.format(x));
      out.result["column_sums"] = sums;
      const bool ok = orderings::verify_ordering(*r.solution, fam);
      out.verification["verify_ordering"] = ok;
      if (!ok) throw FatalInconsistency("solver returned an ordering the verifier rejects");
      break;
    }
    case orderings::SolveStatus::NoSolution:
      out.code = kNegative;
      break;
    case orderings::SolveStatus::BudgetExceeded:
      out.code = kBudget;
      break;
  }
  return out;
}

Outcome find_ordering_cmd(Context& ctx, const std::string& sets_path, bool even) {
  if (ctx.group.empty()) throw InvalidInput("--group is required");
  std::optional<json> sets;
  if (!sets_path.empty()) sets = read_json(ctx, sets_path);
  if (is_klein(ctx.group)) {
    const orderings::KleinFourGroup g;
    auto fam = orderings::klein_fixture();
    if (sets) {
      fam.sets.clear();
      if (!sets->is_array()) throw InvalidInput("sets must be an array of arrays");
      for (const auto& s : *sets) {
        if (!s.is_array()) throw InvalidInput("sets must be an array of arrays");
        std::vector<std::uint8_t> row;
        for (const auto& x : s) {
          if (!x.is_string()) throw InvalidInput("Klein four-group elements are strings 00, 01, 10, 11");
          row.push_back(g.parse_element(x.get<std::string>()));
        }
        fam.sets.push_back(row);
      }
    }
    auto out = ordering_outcome(fam, even, ctx);
    out.result["fixture"] = !sets.has_value();
    return out;
  }
  if (!sets) throw InvalidInput("--sets is required for this group");
  const auto g = groups::GroupSpec::parse(ctx.group);
  orderings::SubsetFamily<groups::GroupSpec> fam{g, parse_group_sets(g, *sets, "sets")};
  return ordering_outcome(fam, even, ctx);
}

// ------------------------------------------------------------------ latin

json transversal_json(const latin::TransversalResult& r, const latin::Cube& cube, bool& verified) {
  json j;
  j["status"] = r.status == latin::SearchStatus::Found ? "found"
                : r.status == latin::SearchStatus::NotFound ? "not_found"
                                                              : "budget_exceeded";
  j["nodes"] = r.nodes;
  verified = true;
  if (r.transversal) {
    json cells = json::array();
    for (const auto& c : r.transversal->cells) cells.push_back({c[0], c[1], c[2]});
    j["cells"] = cells;
    j["values"] = r.transversal->values;
    const auto v = latin::verify_transversal(*r.transversal, cube);
    j["verdict"] = {{"in_range", v.in_range}, {"values_match", v.values_match}, {"transversal", v.transversal}, {"latin", v.latin}};
    verified = v.ok();
  }
  return j;
}

int latin_code(const latin::TransversalResult& r) {
  if (r.status == latin::SearchStatus::NotFound) return kNegative;
  if (r.status == latin::SearchStatus::BudgetExceeded) return kBudget;
  return kOk;
}

std::vector<std::size_t> to_indices(const json& v, const std::string& what) {
  if (!v.is_array()) throw InvalidInput(what + " must be an array of indices");
  std::vector<std::size_t> out;
  for (const auto& x : v) {
    if (!x.is_number_unsigned() && !(x.is_number_integer() && x.get<std::int64_t>() >= 0)) {
      throw InvalidInput(what + " must contain nonnegative integers");
    }
    out.push_back(x.get<std::size_t>());
  }
  return out;
}

latin::Cube cube_from_json(const json& v) {
  if (!v.is_array() || v.empty()) throw InvalidInput("cube must be a nonempty 3-level nested array");
  const std::size_t n = v.size();
  std::vector<latin::Symbol> entries;
  for (const auto& plane : v) {
    if (!plane.is_array() || plane.size() != n) throw InvalidInput("cube is not n x n x n");
    for (const auto& line : plane) {
      if (!line.is_array() || line.size() != n) throw InvalidInput("cube is not n x n x n");
      for (const auto& x : line) {
        if (!x.is_number_integer() || x.get<std::int64_t>() < 0) throw InvalidInput("cube entries must be nonnegative integers");
        entries.push_back(x.get<latin::Symbol>());
      }
    }
  }
  return latin::Cube(n, std::move(entries));
}

Outcome latin_cmd(Context& ctx, std::uint64_t N, const std::vector<std::string>& subcube_files, const std::string& cube_file,
                  std::uint64_t random_n) {
  const int modes = (!subcube_files.empty()) + (!cube_file.empty()) + (random_n != 0);
  if (modes != 1) throw InvalidInput("give exactly one of --subcube, --cube, --random-cube");
  Outcome out;
  if (random_n) {
    const std::uint64_t trials = ctx.trials ? ctx.trials : 1;
    json runs = json::array();
    std::uint64_t found = 0;
    bool all_verified = true;
    for (std::uint64_t t = 0; t < trials; ++t) {
      auto e = rng::stream(ctx.seed, t);
      const std::uint64_t cube_seed = e();
      const auto cube = latin::perturbed_latin_cube(random_n, cube_seed);
      const auto r = latin::find_latin_transversal(cube, ctx.budget);
      bool verified = true;
      json j = transversal_json(r, cube, verified);
      j["cube_seed"] = cube_seed;
      all_verified = all_verified && verified;
      found += r.status == latin::SearchStatus::Found;
      out.code = std::max(out.code, latin_code(r));
      runs.push_back(j);
    }
    out.result["n"] = random_n;
    out.result["trials"] = trials;
    out.result["found"] = found;
    out.result["runs"] = runs;
    out.verification["verify_transversal"] = all_verified;
    return out;
  }
  latin::Cube cube = [&] {
    if (!cube_file.empty()) return cube_from_json(read_json(ctx, cube_file));
    if (subcube_files.size() != 3) throw InvalidInput("--subcube needs three index files");
    if (N == 0) throw InvalidInput("--N is required with --subcube");
    const auto a = to_indices(read_json(ctx, subcube_files[0]), "A");
    const auto b = to_indices(read_json(ctx, subcube_files[1]), "B");
    const auto c = to_indices(read_json(ctx, subcube_files[2]), "C");
    return latin::subcube(latin::cayley_cube(N), a, b, c);
  }();
  out.result["n"] = cube.size();
  out.result["latin"] = cube.latin();
  const auto r = latin::find_latin_transversal(cube, ctx.budget);
  bool verified = true;
  out.result["transversal"] = transversal_json(r, cube, verified);
  out.verification["verify_transversal"] = verified;
  if (!verified) throw FatalInconsistency("search returned a transversal the verifier rejects");
  out.code = latin_code(r);
  return out;
}

// ------------------------------------------------------------------ check-identity

permdet::IntMatrix matrix_from_json(const json& v) {
  const auto rows = to_integer_sets(v, "matrix");
  return permdet::IntMatrix(rows);
}

std::vector<std::uint32_t> to_u32s(const json& v, const std::string& what) {
  std::vector<std::uint32_t> out;
  for (const auto& x : to_integers(v, what)) {
    if (x < 0 || x > std::numeric_limits<std::uint32_t>::max()) throw InvalidInput(what + " entries must be nonnegative");
    out.push_back(static_cast<std::uint32_t>(x));
  }
  return out;
}

json matrix_json(const permdet::IntMatrix& a) {
  json m = json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.size(); ++j) row.push_back(jint(a(i, j)));
    m.push_back(row);
  }
  return m;
}

Outcome check_identity_cmd(Context& ctx, const std::string& which, std::size_t n, std::size_t m, const std::string& input) {
  if (which != "2.1" && which != "3.1" && which != "3.2" && which != "3.3") throw InvalidInput("--which must be 2.1, 3.1, 3.2 or 3.3");
  if (n == 0) throw InvalidInput("--n must be positive");
  std::optional<json> given;
  if (!input.empty()) given = read_json(ctx, input);
  const std::uint64_t trials = given ? 1 : (ctx.trials ? ctx.trials : 1);
  Outcome out;
  json runs = json::array();
  std::uint64_t equal = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto e = rng::stream(ctx.seed, t);
    json instance;
    permdet::IdentityReport rep;
    if (which == "2.1") {
      std::vector<std::vector<Integer>> rows;
      if (given) {
        rows = to_integer_sets(given->at("rows"), "rows");
      } else {
        rows.assign(m, std::vector<Integer>(n));
        for (auto& r : rows)
          for (auto& v : r) v = rng::between(e, -4, 4);
      }
      instance["rows"] = jsets(rows);
      rep = permdet::check_row_product_identity(rows);
    } else if (which == "3.1" || which == "3.2") {
      permdet::IntMatrix a(n, Integer(0));
      permdet::ExponentProfile prof;
      if (given) {
        a = matrix_from_json(given->at("matrix"));
        prof.k = to_u32s(given->at("k"), "k");
        prof.m = to_u32s(given->at("m"), "m");
        prof.delta = static_cast<std::uint32_t>(get_int(*given, "delta", 0));
      } else {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) a(i, j) = rng::between(e, -4, 4);
        prof = sweeps::random_profile(e, n);
      }
      instance = {{"matrix", matrix_json(a)}, {"k", prof.k}, {"m", prof.m}, {"delta", prof.delta}};
      rep = which == "3.1" ? permdet::check_determinant_duality(a, prof) : permdet::check_permanent_duality(a, prof);
    } else {
      permdet::IntMatrix a(n, Integer(0));
      std::uint32_t k = 4;
      std::vector<std::uint32_t> l(n), mm(n);
      if (given) {
        a = matrix_from_json(given->at("matrix"));
        k = static_cast<std::uint32_t>(get_int(*given, "k"));
        l = to_u32s(given->at("l"), "l");
        mm = to_u32s(given->at("m"), "m");
      } else {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) a(i, j) = rng::between(e, -4, 4);
        for (auto& v : l) v = static_cast<std::uint32_t>(rng::below(e, 3));
        for (auto& v : mm) v = static_cast<std::uint32_t>(rng::below(e, 3));
      }
      instance = {{"matrix", matrix_json(a)}, {"k", k}, {"l", l}, {"m", mm}};
      rep = permdet::check_exponent_symmetry(a, k, l, mm);
    }
    json checks = json::array();
    for (const auto& c : rep.checks) checks.push_back({{"label", c.label}, {"lhs", jint(c.lhs)}, {"rhs", jint(c.rhs)}, {"equal", c.equal()}});
    runs.push_back({{"trial", t}, {"instance", instance}, {"checks", checks}, {"equal", rep.equal()}});
    equal += rep.equal();
  }
  out.result["which"] = which;
  out.result["trials"] = trials;
  out.result["runs"] = runs;
  out.verification["equal_trials"] = equal;
  out.verification["all_equal"] = equal == trials;
  if (equal != trials) out.code = kNegative;
  return out;
}

// ------------------------------------------------------------------ cn-witness

std::string cn_status(cn::SearchStatus s) {
  switch (s) {
    case cn::SearchStatus::Found:
      return "found";
    case cn::SearchStatus::NoneQualify:
      return "none_qualify";
    case cn::SearchStatus::BudgetExhausted:
      return "budget_exceeded";
  }
  return "unknown";
}

Outcome cn_witness_cmd(Context& ctx, const std::string& poly_path, const std::string& grid_path) {
  if (poly_path.empty() || grid_path.empty()) throw InvalidInput("--poly and --grid are required");
  const auto grid_json = read_json(ctx, grid_path);
  cn::GridFamily grid;
  grid.sets = to_integer_sets(grid_json.at("sets"), "sets");
  const auto& deg_key = grid_json.contains("degrees") ? grid_json.at("degrees") : grid_json.at("target_degrees");
  grid.target_degrees = to_u32s(deg_key, "degrees");
  const auto ring = ctx.field ? poly::CoefficientRing::mod_p(*ctx.field) : poly::CoefficientRing::integers();
  const auto f = poly::SparsePoly::parse(read_file(ctx, poly_path), ring, grid.sets.size());

  Outcome out;
  out.result["ring"] = ring.to_string();
  out.result["poly"] = f.to_string();
  const auto cert = cn::certify(f, grid);
  out.result["certificate"] = {{"coefficient", jint(cert.coefficient)},
                               {"degree_exact", cert.degree_exact},
                               {"claims_witness", cert.claims_witness()}};
  const auto search = cn::witness_search(f, grid, ctx.budget);
  json s = {{"status", cn_status(search.status)}, {"evaluations", search.evaluations}};
  if (search.status == cn::SearchStatus::Found) s["witness"] = jints(search.witness);
  out.result["search"] = s;
  if (search.status == cn::SearchStatus::Found) {
    const bool ok = cn::is_witness(f, grid, search.witness);
    out.verification["is_witness"] = ok;
    if (!ok) throw FatalInconsistency("search returned a point where f vanishes");
  }
  if (cert.witness) out.verification["certificate_witness_checked"] = cn::is_witness(f, grid, *cert.witness);
  out.code = search.status == cn::SearchStatus::Found ? kOk : search.status == cn::SearchStatus::NoneQualify ? kNegative : kBudget;
  return out;
}

// ------------------------------------------------------------------ sumset

sumsets::SumsetParams params_from(const json& p) {
  sumsets::SumsetParams s;
  s.n = get_int(p, "n");
  s.m = get_int(p, "m");
  s.k = get_int(p, "k");
  s.h = get_int(p, "h", s.m);
  s.l = get_int(p, "l", s.k);
  return s;
}

json params_json(const sumsets::SumsetParams& s) {
  return {{"h", s.h}, {"k", s.k}, {"l", s.l}, {"m", s.m}, {"n", s.n}, {"K", s.K()}, {"L", s.L()}, {"N", jint(s.N())}};
}

json clause(const std::string& text, bool holds) { return {{"clause", text}, {"holds", holds}}; }

int witness_code(sumsets::WitnessStatus s) {
  return s == sumsets::WitnessStatus::Found ? kOk : s == sumsets::WitnessStatus::Inconsistent ? kNegative : kBudget;
}

Outcome theorem12(Context& ctx, const json& p) {
  const auto s = params_from(p);
  s.validate();
  const std::uint64_t q = require_field(ctx, p);
  sumsets::FieldInstance inst;
  bool generated = !p.contains("A");
  if (generated) {
    auto e = rng::stream(ctx.seed, 0);
    inst = sumsets::random_field_instance(e, s, q);
  } else {
    inst.p = q;
    inst.a_sets = to_integer_sets(p.at("A"), "A");
    inst.b_sets = to_integer_sets(p.at("B"), "B");
    inst.c = to_integers(p.at("c"), "c");
    inst.p_polys = to_integer_sets(p.at("P"), "P");
    inst.q_polys = to_integer_sets(p.at("Q"), "Q");
    if (p.contains("S")) inst.s_excluded = to_integers(p.at("S"), "S");
    if (p.contains("T")) inst.t_excluded = to_integers(p.at("T"), "T");
  }
  sumsets::validate(inst, s);
  Outcome out;
  out.result["params"] = params_json(s);
  out.result["field"] = q;
  out.result["instance"] = {{"generated", generated}, {"A", jsets(inst.a_sets)}, {"B", jsets(inst.b_sets)}, {"c", jints(inst.c)},
                            {"P", jsets(inst.p_polys)}, {"Q", jsets(inst.q_polys)}, {"S", jints(inst.s_excluded)},
                            {"T", jints(inst.t_excluded)}};
  out.result["validation"] = json::array({clause("k-1 >= m(n-1) and l-1 >= h(n-1)", true),
                                          clause("|A_i| = k, |B_i| = l, sets without repeats", true),
                                          clause("c_i pairwise distinct", true), clause("P_i, Q_i monic of degrees m, h", true),
                                          clause("|S| <= K and |T| <= L", true), clause("p prime and p > max{K, L}", true)});
  const auto w = sumsets::field_witness(inst, s, ctx.budget);
  out.result["status"] = sumsets::to_string(w.status);
  out.result["nodes"] = w.nodes;
  if (w.status == sumsets::WitnessStatus::Found) {
    out.result["witness"] = {{"a", jints(w.a)}, {"b", jints(w.b)}};
    const auto failed = sumsets::check_field_witness(inst, w.a, w.b);
    out.verification["failed_clauses"] = failed;
    if (!failed.empty()) throw FatalInconsistency("witness fails an independent check");
  }
  out.code = witness_code(w.status);
  return out;
}

Outcome theorem13(Context& ctx, const json& p) {
  const auto s = params_from(p);
  s.validate();
  std::string gtext = !ctx.group.empty() ? ctx.group : p.value("group", std::string());
  if (gtext.empty() && ctx.field) gtext = "Z/" + std::to_string(*ctx.field);
  if (gtext.empty()) throw InvalidInput("a group is required (--group)");
  const auto g = groups::GroupSpec::parse(gtext);
  sumsets::GroupInstance inst{g, {}, {}, {}, {}, {}};
  const bool generated = !p.contains("A");
  if (generated) {
    if (!g.is_finite()) throw InvalidInput("random instances need a finite group; give A, B, c explicitly");
    const auto all = g.all_elements();
    auto e = rng::stream(ctx.seed, 0);
    auto pick = [&](std::size_t size) {
      if (size > all.size()) throw InvalidInput("the group is too small for the requested set sizes");
      std::vector<groups::GroupElement> out;
      for (auto idx : rng::sample(e, all.size(), size)) out.push_back(all[idx]);
      return out;
    };
    for (std::int64_t i = 0; i < s.n; ++i) {
      inst.a_sets.push_back(pick(static_cast<std::size_t>(s.k)));
      inst.b_sets.push_back(pick(static_cast<std::size_t>(s.l)));
    }
    inst.c = pick(static_cast<std::size_t>(s.n));
  } else {
    inst.a_sets = parse_group_sets(g, p.at("A"), "A");
    inst.b_sets = parse_group_sets(g, p.at("B"), "B");
    inst.c = parse_group_elements(g, p.at("c"), "c");
    if (p.contains("S")) inst.s_family = parse_group_sets(g, p.at("S"), "S");
    if (p.contains("T")) inst.t_family = parse_group_sets(g, p.at("T"), "T");
  }
  sumsets::validate(inst, s);
  Outcome out;
  out.result["params"] = params_json(s);
  out.result["group"] = g.to_string();
  out.result["instance"] = {{"generated", generated}, {"A", format_sets(g, inst.a_sets)}, {"B", format_sets(g, inst.b_sets)},
                            {"c", format_elements(g, inst.c)}, {"S", format_sets(g, inst.s_family)},
                            {"T", format_sets(g, inst.t_family)}};
  out.result["validation"] = json::array({clause("k-1 >= m(n-1) and l-1 >= h(n-1)", true),
                                          clause("|A_i| = k, |B_i| = l, sets without repeats", true),
                                          clause("c_i pairwise distinct", true),
                                          clause("members of S, T are n-element sets; |S| <= K, |T| <= L", true)});
  const auto w = sumsets::group_witness(inst, s, ctx.budget);
  out.result["status"] = sumsets::to_string(w.status);
  out.result["nodes"] = w.nodes;
  if (w.status == sumsets::WitnessStatus::Found) {
    out.result["witness"] = {{"a", format_elements(g, w.a)}, {"b", format_elements(g, w.b)}};
    const auto failed = sumsets::check_group_witness(inst, s, w.a, w.b);
    out.verification["failed_clauses"] = failed;
    if (!failed.empty()) throw FatalInconsistency("witness fails an independent check");
  }
  out.code = witness_code(w.status);
  return out;
}

json sumset_json(const sumsets::SumsetReport& r) {
  return {{"elements", jints(r.elements)}, {"cardinality", r.elements.size()}, {"bound", jint(r.bound)},
          {"bound_met", r.bound_met()}, {"tuples", r.tuples}};
}

std::size_t distinct_count(const std::vector<Integer>& xs, std::uint64_t p) {
  std::vector<Integer> r;
  for (const auto& x : xs) r.push_back(mod_floor(x, Integer(p)));
  std::sort(r.begin(), r.end());
  return static_cast<std::size_t>(std::unique(r.begin(), r.end()) - r.begin());
}

Outcome theorem51(Context& ctx, const json& p) {
  const std::int64_t n = get_int(p, "n"), m = get_int(p, "m"), k = get_int(p, "k");
  const std::uint64_t q = require_field(ctx, p);
  std::vector<std::vector<Integer>> sets;
  std::vector<sumsets::Coefficients> polys;
  const bool generated = !p.contains("A");
  if (generated) {
    if (n < 1 || k < 1 || m < 1) throw InvalidInput("n, m, k must be positive");
    if (static_cast<std::uint64_t>(std::max(n, k)) > q) throw InvalidInput("the field is too small for the requested set sizes");
    auto e = rng::stream(ctx.seed, 0);
    const auto leading = sumsets::random_subset(e, q, static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
      sets.push_back(sumsets::random_subset(e, q, static_cast<std::size_t>(k)));
      sumsets::Coefficients f;
      for (std::int64_t d = 0; d < m; ++d) f.emplace_back(rng::below(e, q));
      f.push_back(leading[static_cast<std::size_t>(i)]);
      polys.push_back(f);
    }
  } else {
    sets = to_integer_sets(p.at("A"), "A");
    polys = to_integer_sets(p.at("P"), "P");
    if (static_cast<std::int64_t>(sets.size()) != n) throw InvalidInput("need exactly n sets A_i");
    for (const auto& a : sets) {
      if (static_cast<std::int64_t>(a.size()) != k) throw InvalidInput("every A_i must have exactly k elements");
    }
  }
  const auto r = sumsets::permanent_restricted_sumset(q, m, sets, polys);
  Outcome out;
  out.result["params"] = {{"n", n}, {"m", m}, {"k", k}, {"K", sumsets::restricted_degree(k, m, n)}};
  out.result["field"] = q;
  out.result["instance"] = {{"generated", generated}, {"A", jsets(sets)}, {"P", jsets(polys)}};
  out.result["validation"] = json::array({clause("k-1 >= m(n-1)", true), clause("p prime and p > K", true),
                                          clause("deg P_i <= m with [x^m]P_i pairwise distinct", true)});
  out.result["sumset"] = sumset_json(r);
  const Integer bound = Integer(k - 1) * n - Integer(m + 1) * choose2(n) + 1;
  out.verification = {{"bound", jint(bound)}, {"distinct_elements", distinct_count(r.elements, q)},
                      {"bound_met", Integer(distinct_count(r.elements, q)) >= bound}};
  out.code = r.bound_met() ? kOk : kNegative;
  return out;
}

Outcome corollary51(Context& ctx, const json& p) {
  const std::int64_t n = get_int(p, "n");
  const std::uint64_t q = require_field(ctx, p);
  std::vector<std::vector<Integer>> sets;
  std::vector<Integer> b;
  const bool generated = !p.contains("A");
  if (generated) {
    if (n < 1 || static_cast<std::uint64_t>(n) > q) throw InvalidInput("need 1 <= n <= p");
    auto e = rng::stream(ctx.seed, 0);
    for (std::int64_t i = 0; i < n; ++i) sets.push_back(sumsets::random_subset(e, q, static_cast<std::size_t>(n)));
    b = sumsets::random_subset(e, q, static_cast<std::size_t>(n));
  } else {
    sets = to_integer_sets(p.at("A"), "A");
    b = to_integers(p.at("b"), "b");
  }
  const auto r = sumsets::nonvanishing_permanent_sdr(q, sets, b, ctx.budget);
  Outcome out;
  out.result["params"] = {{"n", n}};
  out.result["field"] = q;
  out.result["instance"] = {{"generated", generated}, {"A", jsets(sets)}, {"b", jints(b)}};
  out.result["validation"] = json::array({clause("|A_i| = n without repeats", true), clause("b_j pairwise distinct", true)});
  out.result["status"] = sumsets::to_string(r.status);
  out.result["nodes"] = r.nodes;
  if (r.status == sumsets::WitnessStatus::Found) {
    out.result["sdr"] = jints(r.a);
    const auto per = sumsets::power_permanent(q, r.a, b);
    out.result["permanent"] = jint(per);
    bool members = true;
    for (std::size_t i = 0; i < r.a.size(); ++i) {
      members = members && std::find(sets[i].begin(), sets[i].end(), r.a[i]) != sets[i].end();
    }
    std::vector<Integer> sorted = r.a;
    std::sort(sorted.begin(), sorted.end());
    const bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    out.verification = {{"members", members}, {"distinct", distinct}, {"permanent_nonzero", per != 0}};
    if (!members || !distinct || per == 0) throw FatalInconsistency("SDR fails an independent check");
  }
  out.code = witness_code(r.status);
  return out;
}

Outcome theorem14(Context& ctx, const json& p) {
  const std::int64_t n = get_int(p, "n"), m = get_int(p, "m"), k = get_int(p, "k");
  const std::uint64_t q = require_field(ctx, p);
  std::vector<std::vector<Integer>> A, B;
  std::vector<Integer> c;
  sumsets::PairSets excl;
  const bool generated = !p.contains("A");
  if (generated) {
    if (n < 1 || k < 1 || m < 1) throw InvalidInput("n, m, k must be positive");
    if (static_cast<std::uint64_t>(std::max(n, k)) > q) throw InvalidInput("the field is too small for the requested set sizes");
    auto e = rng::stream(ctx.seed, 0);
    for (std::int64_t i = 0; i < n; ++i) {
      A.push_back(sumsets::random_subset(e, q, static_cast<std::size_t>(k)));
      B.push_back(sumsets::random_subset(e, q, static_cast<std::size_t>(n)));
    }
    c = sumsets::random_subset(e, q, static_cast<std::size_t>(n));
    for (std::int64_t t = 0; t < choose2(n); ++t) {
      excl.push_back(sumsets::random_subset(e, q, static_cast<std::size_t>(rng::below(e, static_cast<std::uint64_t>(2 * m)))));
    }
  } else {
    A = to_integer_sets(p.at("A"), "A");
    B = to_integer_sets(p.at("B"), "B");
    c = to_integers(p.at("c"), "c");
    excl = p.contains("S_pairs") ? to_integer_sets(p.at("S_pairs"), "S_pairs") : sumsets::PairSets(static_cast<std::size_t>(choose2(n)));
    if (static_cast<std::int64_t>(A.size()) != n) throw InvalidInput("need exactly n sets A_i");
    for (const auto& a : A) {
      if (static_cast<std::int64_t>(a.size()) != k) throw InvalidInput("every A_i must have exactly k elements");
    }
  }
  const auto r = sumsets::difference_restricted_sumset(q, m, A, B, c, excl);
  Outcome out;
  out.result["params"] = {{"n", n}, {"m", m}, {"k", k}, {"N", (k - 1 - m * (n - 1)) * n}};
  out.result["field"] = q;
  out.result["instance"] = {{"generated", generated}, {"A", jsets(A)}, {"B", jsets(B)}, {"c", jints(c)}, {"S_pairs", jsets(excl)}};
  out.result["validation"] = json::array({clause("k-1 >= m(n-1)", true), clause("p prime and p > max{mn, N}", true),
                                          clause("|S_ij| < 2m", true), clause("c_i pairwise distinct", true)});
  out.result["b"] = jints(r.b);
  out.result["sumset"] = sumset_json(r.sumset);
  const auto per = sumsets::power_permanent(q, r.b, c);
  const Integer bound = Integer(k - 1 - m * (n - 1)) * n + 1;
  out.verification = {{"permanent_nonzero", per != 0}, {"bound", jint(bound)},
                      {"distinct_elements", distinct_count(r.sumset.elements, q)},
                      {"bound_met", Integer(distinct_count(r.sumset.elements, q)) >= bound}};
  out.code = r.sumset.bound_met() ? kOk : kNegative;
  return out;
}

Outcome sumset_cmd(Context& ctx, const std::string& theorem, const std::string& params_path) {
  const json p = params_path.empty() ? json::object() : read_json(ctx, params_path);
  if (!p.is_object()) throw InvalidInput("params must be a JSON object");
  Outcome out;
  if (theorem == "1.2") {
    out = theorem12(ctx, p);
  } else if (theorem == "1.3") {
    out = theorem13(ctx, p);
  } else if (theorem == "1.4") {
    out = theorem14(ctx, p);
  } else if (theorem == "5.1") {
    out = theorem51(ctx, p);
  } else if (theorem == "c5.1") {
    out = corollary51(ctx, p);
  } else {
    throw InvalidInput("--theorem must be 1.2, 1.3, 1.4, 5.1 or c5.1");
  }
  json r = {{"theorem", theorem}};
  r.update(out.result);
  out.result = r;
  return out;
}

// ------------------------------------------------------------------ sweep

Outcome sweep_cmd(Context& ctx, const std::string& name, std::uint64_t size) {
  sweeps::SweepConfig config;
  config.seed = ctx.seed;
  config.trials = ctx.trials;
  config.size = size;
  config.budget = ctx.budget;
  config.threads = ctx.threads;
  const auto r = sweeps::run_sweep(name, config);
  Outcome out;
  out.result["sweep"] = r.name;
  out.result["cases"] = r.cases;
  out.result["passed"] = r.passed;
  out.result["failures"] = r.failures;
  out.result["artifacts"] = r.artifacts;
  json facts = json::object();
  for (const auto& [k, v] : r.facts) facts[k] = v;
  out.result["facts"] = facts;
  out.verification["all_passed"] = r.ok();
  out.code = r.ok() ? kOk : kNegative;
  return out;
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

RunResult run(const std::vector<std::string>& args) {
  Context ctx;
  CLI::App app{"Exact search and verification for restricted sums, orderings and Latin transversals", "addcomb"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", ctx.seed, "Seed for generated instances");
  app.add_option("--budget", ctx.budget, "Node or evaluation budget per search");
  app.add_option("--trials", ctx.trials, "Number of random trials");
  app.add_option("--out", ctx.out, "Write the report to this file");
  app.add_option("--field", ctx.field, "Prime field size");
  app.add_option("--group", ctx.group, "Group, e.g. 'Z/6', 'Z x Z/4', or 'klein'");
  app.add_option("--threads", ctx.threads, "Worker threads for sweeps")->check(CLI::Range(1u, 256u));
  app.add_flag("--timing", ctx.timing, "Include wall-clock timing in the report");

  std::string sets_path;
  bool even = false;
  auto* fo = app.add_subcommand("find-ordering", "Order m subsets so that column sums are distinct");
  fo->add_option("--sets", sets_path, "JSON array of the m sets");
  fo->add_flag("--even-last-odd-order", even, "Even m with odd-order elements in the last set");

  std::uint64_t latin_N = 0, random_n = 0;
  std::vector<std::string> subcube_files;
  std::string cube_file;
  auto* la = app.add_subcommand("latin", "Latin transversal of a cube or Cayley subcube");
  la->add_option("--N", latin_N, "Order of the cyclic group for --subcube");
  la->add_option("--subcube", subcube_files, "Three JSON index files A B C")->expected(3);
  la->add_option("--cube", cube_file, "JSON cube (3-level nested arrays)");
  la->add_option("--random-cube", random_n, "Side of randomly perturbed Cayley cubes");

  std::string which, identity_input;
  std::size_t id_n = 2, id_m = 3;
  auto* ci = app.add_subcommand("check-identity", "Check a permanent/determinant identity");
  ci->add_option("--which", which, "2.1, 3.1, 3.2 or 3.3")->required();
  ci->add_option("--n", id_n, "Matrix size or number of columns");
  ci->add_option("--m", id_m, "Number of rows for 2.1");
  ci->add_option("--input", identity_input, "JSON instance instead of random trials");

  std::string poly_path, grid_path;
  auto* cw = app.add_subcommand("cn-witness", "Nullstellensatz certificate and grid witness");
  cw->add_option("--poly", poly_path, "Polynomial in canonical text form");
  cw->add_option("--grid", grid_path, "JSON {sets, degrees}");

  std::string theorem, params_path;
  auto* su = app.add_subcommand("sumset", "Restricted sumset witnesses and bounds");
  su->add_option("--theorem", theorem, "1.2, 1.3, 1.4, 5.1 or c5.1")->required();
  su->add_option("--params", params_path, "JSON parameters and optional instance");

  std::string sweep_name;
  std::uint64_t sweep_size = 0;
  auto* sw = app.add_subcommand("sweep", "Run a verification suite");
  sw->add_option("name", sweep_name, "Suite name")->required();
  sw->add_option("--N", sweep_size, "Largest group order or cube size");

  std::string command = args.empty() ? "" : args[0];
  auto error_report = [&](const std::string& kind, const std::string& msg) {
    json j = {{"command", command}, {"version", kVersion}, {"error", {{"kind", kind}, {"message", msg}}}, {"exit_code", kInputError}};
    return RunResult{kInputError, render(j)};
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {kOk, app.help()};
  } catch (const CLI::CallForAllHelp&) {
    return {kOk, app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    return error_report("usage", e.what());
  }
  for (auto* sub : app.get_subcommands()) command = sub->get_name();

  const auto started = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    if (fo->parsed()) {
      outcome = find_ordering_cmd(ctx, sets_path, even);
    } else if (la->parsed()) {
      outcome = latin_cmd(ctx, latin_N, subcube_files, cube_file, random_n);
    } else if (ci->parsed()) {
      outcome = check_identity_cmd(ctx, which, id_n, id_m, identity_input);
    } else if (cw->parsed()) {
      outcome = cn_witness_cmd(ctx, poly_path, grid_path);
    } else if (su->parsed()) {
      outcome = sumset_cmd(ctx, theorem, params_path);
    } else {
      outcome = sweep_cmd(ctx, sweep_name, sweep_size);
    }
  } catch (const InvalidInput& e) {
    return error_report("invalid_input", e.what());
  } catch (const json::exception& e) {
    return error_report("invalid_input", e.what());
  } catch (const FatalInconsistency& e) {
    return error_report("internal_inconsistency", e.what());
  }
  const auto elapsed = std::chrono::steady_clock::now() - started;

  json report = {{"command", command},
                 {"version", kVersion},
                 {"inputs_digest", digest_of(args, ctx.files)},
                 {"seed", ctx.seed},
                 {"budget", budget_text(ctx.budget)},
                 {"result", outcome.result},
                 {"verification", outcome.verification},
                 {"exit_code", outcome.code}};
  if (ctx.timing) report["timing_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
  RunResult res{outcome.code, render(report)};
  if (!ctx.out.empty()) {
    std::ofstream f(ctx.out, std::ios::binary);
    if (!f) return error_report("io", "cannot write '" + ctx.out + "'");
    f << res.output;
  }
  return res;
}

}  // namespace addcomb::cli
