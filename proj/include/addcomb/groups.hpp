#pragma once

// Finitely generated abelian groups with cyclic torsion, modelled as
// Z^r (+) Z/NZ. Every finite configuration of elements in such a group lives
// in a subgroup of this shape, so nothing is lost by working here directly.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "addcomb/integer.hpp"

namespace addcomb::groups {

struct GroupElement {
  std::vector<Integer> free_part;
  std::uint64_t torsion_part = 0;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    if (a.free_part != b.free_part) {
      return std::lexicographical_compare(a.free_part.begin(), a.free_part.end(),
                                          b.free_part.begin(), b.free_part.end());
    }
    return a.torsion_part < b.torsion_part;
  }
};

/// nullopt means the element has infinite order.
using ElementOrder = std::optional<std::uint64_t>;

class GroupSpec {
 public:
  using Element = GroupElement;
  static constexpr bool kCyclicTorsion = true;

  /// Throws InvalidInput unless torsion_modulus >= 1. Moduli are limited to
  /// 2^62 so residues add without overflow.
  GroupSpec(std::size_t free_rank, std::uint64_t torsion_modulus);

  /// Z/NZ
  static GroupSpec cyclic(std::uint64_t n) { return GroupSpec(0, n); }

  std::size_t free_rank() const { return free_rank_; }
  std::uint64_t torsion_modulus() const { return modulus_; }
  bool is_finite() const { return free_rank_ == 0; }

  GroupElement identity() const;
  /// Element with zero free part and the given residue (reduced).
  GroupElement torsion(std::int64_t residue) const;
  GroupElement element(std::vector<Integer> free_part, std::int64_t residue) const;

  bool conforms(const GroupElement& a) const;

  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement negate(const GroupElement& a) const;
  GroupElement subtract(const GroupElement& a, const GroupElement& b) const;
  GroupElement scale(std::int64_t k, const GroupElement& a) const;

  ElementOrder element_order(const GroupElement& a) const;
  GroupElement sum_all(std::span<const GroupElement> xs) const;

  /// Every element of a finite group (r = 0), in residue order.
  std::vector<GroupElement> all_elements() const;

  /// `Z^r x Z/N`
  std::string to_string() const;
  /// Accepts the canonical form plus the shorthands `Z/N`, `Z`, `Z^r`, `Z x Z/N`.
  static GroupSpec parse(std::string_view text);

  /// `r:v1,...,vr;t:k`
  std::string format(const GroupElement& a) const;
  /// Accepts the canonical form; a bare integer is read as a torsion residue
  /// when r = 0.
  GroupElement parse_element(std::string_view text) const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  void require(const GroupElement& a) const;

  std::size_t free_rank_;
  std::uint64_t modulus_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& a) const noexcept;
};

}  // namespace addcomb::groups
