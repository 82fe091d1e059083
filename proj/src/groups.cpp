#include "addcomb/groups.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

#include <boost/functional/hash.hpp>

namespace addcomb::groups {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_u64(std::string_view s, std::string_view context) {
  s = trim(s);
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
    throw InvalidInput("bad integer '" + std::string(s) + "' in " + std::string(context));
  }
  return v;
}

Integer parse_integer(std::string_view s, std::string_view context) {
  s = trim(s);
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw InvalidInput("bad integer '" + std::string(s) + "' in " + std::string(context));
  }
  Integer v{std::string(digits)};
  return s.front() == '-' ? Integer(-v) : v;
}

}  // namespace

GroupSpec::GroupSpec(std::size_t free_rank, std::uint64_t torsion_modulus)
    : free_rank_(free_rank), modulus_(torsion_modulus) {
  if (torsion_modulus == 0) throw InvalidInput("torsion modulus must be >= 1");
  if (torsion_modulus > (std::uint64_t{1} << 62)) throw InvalidInput("torsion modulus too large");
}

GroupElement GroupSpec::identity() const { return GroupElement{std::vector<Integer>(free_rank_), 0}; }

GroupElement GroupSpec::torsion(std::int64_t residue) const { return element({}, residue); }

GroupElement GroupSpec::element(std::vector<Integer> free_part, std::int64_t residue) const {
  if (free_part.empty()) free_part.resize(free_rank_);
  if (free_part.size() != free_rank_) throw InvalidInput("free part length does not match group rank");
  __int128 r = static_cast<__int128>(residue) % static_cast<__int128>(modulus_);
  if (r < 0) r += modulus_;
  auto t = static_cast<std::uint64_t>(r);
  return GroupElement{std::move(free_part), t};
}

bool GroupSpec::conforms(const GroupElement& a) const {
  return a.free_part.size() == free_rank_ && a.torsion_part < modulus_;
}

void GroupSpec::require(const GroupElement& a) const {
  if (!conforms(a)) throw InvalidInput("group element does not conform to " + to_string());
}

GroupElement GroupSpec::add(const GroupElement& a, const GroupElement& b) const {
  require(a);
  require(b);
  GroupElement r;
  r.free_part.resize(free_rank_);
  for (std::size_t i = 0; i < free_rank_; ++i) r.free_part[i] = a.free_part[i] + b.free_part[i];
  r.torsion_part = (a.torsion_part + b.torsion_part) % modulus_;
  return r;
}

GroupElement GroupSpec::negate(const GroupElement& a) const {
  require(a);
  GroupElement r;
  r.free_part.reserve(free_rank_);
  for (const auto& v : a.free_part) r.free_part.push_back(-v);
  r.torsion_part = a.torsion_part == 0 ? 0 : modulus_ - a.torsion_part;
  return r;
}

GroupElement GroupSpec::subtract(const GroupElement& a, const GroupElement& b) const {
  return add(a, negate(b));
}

GroupElement GroupSpec::scale(std::int64_t k, const GroupElement& a) const {
  require(a);
  GroupElement r;
  r.free_part.reserve(free_rank_);
  for (const auto& v : a.free_part) r.free_part.push_back(v * k);
  using i128 = __int128;
  i128 t = static_cast<i128>(a.torsion_part) * k % static_cast<i128>(modulus_);
  if (t < 0) t += modulus_;
  r.torsion_part = static_cast<std::uint64_t>(t);
  return r;
}

ElementOrder GroupSpec::element_order(const GroupElement& a) const {
  require(a);
  for (const auto& v : a.free_part) {
    if (v != 0) return std::nullopt;
  }
  return modulus_ / std::gcd(a.torsion_part, modulus_);
}

GroupElement GroupSpec::sum_all(std::span<const GroupElement> xs) const {
  GroupElement acc = identity();
  for (const auto& x : xs) acc = add(acc, x);
  return acc;
}

std::vector<GroupElement> GroupSpec::all_elements() const {
  if (!is_finite()) throw InvalidInput("group " + to_string() + " is infinite");
  std::vector<GroupElement> out;
  out.reserve(modulus_);
  for (std::uint64_t t = 0; t < modulus_; ++t) out.push_back(GroupElement{{}, t});
  return out;
}

std::string GroupSpec::to_string() const {
  return "Z^" + std::to_string(free_rank_) + " x Z/" + std::to_string(modulus_);
}

GroupSpec GroupSpec::parse(std::string_view text) {
  std::size_t rank = 0;
  std::uint64_t modulus = 1;
  bool saw_any = false;
  std::string_view rest = trim(text);
  while (!rest.empty()) {
    auto sep = rest.find(" x ");
    std::string_view part = trim(rest.substr(0, sep));
    rest = sep == std::string_view::npos ? std::string_view{} : trim(rest.substr(sep + 3));
    if (part.starts_with("Z/")) {
      modulus = parse_u64(part.substr(2), "group modulus");
    } else if (part.starts_with("Z^")) {
      rank = parse_u64(part.substr(2), "group rank");
    } else if (part == "Z") {
      rank = 1;
    } else {
      throw InvalidInput("cannot parse group '" + std::string(text) + "'");
    }
    saw_any = true;
  }
  if (!saw_any) throw InvalidInput("empty group description");
  return GroupSpec(rank, modulus);
}

std::string GroupSpec::format(const GroupElement& a) const {
  require(a);
  std::string s = "r:";
  for (std::size_t i = 0; i < a.free_part.size(); ++i) {
    if (i) s += ',';
    s += a.free_part[i].str();
  }
  s += ";t:" + std::to_string(a.torsion_part);
  return s;
}

GroupElement GroupSpec::parse_element(std::string_view text) const {
  std::string_view s = trim(text);
  if (!s.starts_with("r:")) {
    if (free_rank_ != 0) throw InvalidInput("element '" + std::string(s) + "' lacks a free part");
    auto t = parse_integer(s, "element");
    return GroupElement{{}, static_cast<std::uint64_t>(mod_floor(t, Integer(modulus_)))};
  }
  auto semi = s.find(";t:");
  if (semi == std::string_view::npos) throw InvalidInput("element '" + std::string(s) + "' lacks ';t:'");
  std::string_view free_text = s.substr(2, semi - 2);
  GroupElement e;
  while (!trim(free_text).empty()) {
    auto comma = free_text.find(',');
    e.free_part.push_back(parse_integer(free_text.substr(0, comma), "element free part"));
    if (comma == std::string_view::npos) break;
    free_text.remove_prefix(comma + 1);
  }
  if (e.free_part.size() != free_rank_) {
    throw InvalidInput("element '" + std::string(s) + "' has wrong free rank for " + to_string());
  }
  Integer t = parse_integer(s.substr(semi + 3), "element torsion part");
  if (t < 0 || t >= modulus_) throw InvalidInput("torsion residue out of range in '" + std::string(s) + "'");
  e.torsion_part = static_cast<std::uint64_t>(t);
  return e;
}

std::size_t GroupElementHash::operator()(const GroupElement& a) const noexcept {
  std::size_t seed = std::hash<std::uint64_t>{}(a.torsion_part);
  for (const auto& v : a.free_part) boost::hash_combine(seed, boost::multiprecision::hash_value(v));
  return seed;
}

}  // namespace addcomb::groups
