#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zsc {

/// Number of prime factors of k counted with multiplicity. omega(1) == 0.
/// Throws DomainError for k <= 0.
int omega(long long k);

/// An element of a GroupSpec, stored as a mixed-radix code in [0, order).
/// For a cyclic group Z_k the code is the residue itself.
struct GroupElem {
  int code = 0;

  friend constexpr bool operator==(GroupElem, GroupElem) = default;
  friend constexpr auto operator<=>(GroupElem, GroupElem) = default;
};

/// A finite abelian group written as a direct sum Z_{k_1} + ... + Z_{k_m}.
class GroupSpec {
 public:
  explicit GroupSpec(std::vector<int> factors);
  static GroupSpec cyclic(int k);

  const std::vector<int>& factors() const { return factors_; }
  int order() const { return order_; }
  bool is_cyclic() const { return factors_.size() == 1; }

  GroupElem zero() const { return {0}; }
  GroupElem add(GroupElem a, GroupElem b) const;
  GroupElem sub(GroupElem a, GroupElem b) const;
  GroupElem neg(GroupElem a) const;
  GroupElem times(GroupElem a, long long m) const;

  /// Checked conversion from a code in [0, order).
  GroupElem element(long long code) const;
  /// Reduces an integer into a cyclic group. Throws for non-cyclic groups.
  GroupElem from_int(long long value) const;
  /// Throws DomainError when the length or any residue is out of range.
  GroupElem from_residues(std::span<const int> residues) const;
  std::vector<int> residues(GroupElem a) const;

  /// Order of the element a, i.e. the least m >= 1 with m*a == 0.
  int element_order(GroupElem a) const;

  std::string to_string() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  std::vector<int> factors_;
  int order_ = 1;
};

/// A subset of Z_k, kept as a sorted list of members.
class ResidueSet {
 public:
  ResidueSet(int k, std::vector<int> members);
  /// Members given as a bitmask over [0, k); requires k <= 64.
  static ResidueSet from_mask(int k, std::uint64_t mask);

  int modulus() const { return k_; }
  const std::vector<int>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(int x) const;
  /// Translate every member by t (mod k).
  ResidueSet shifted(int t) const;

  friend bool operator==(const ResidueSet&, const ResidueSet&) = default;

 private:
  int k_;
  std::vector<int> members_;
};

/// Every x such that some (|A|-1)-subset of A translated by x stays inside A.
/// Always contains 0 when A is nonempty.
ResidueSet shift_set(const ResidueSet& a);

struct NearApWitness {
  ResidueSet base;  // B, |B| == |A| - 1
  int shift = 0;    // a != 0 with B + a contained in A
};

/// True iff 2 <= |A| <= k-2 and some (|A|-1)-subset B has B + a in A for a
/// nonzero a. Witnesses with B + a == B are preferred, then smallest a, then
/// the smallest omitted element.
std::optional<NearApWitness> is_near_ap(const ResidueSet& a);

/// Checks a claimed witness directly against the definition.
bool is_near_ap_witness(const ResidueSet& a, const NearApWitness& w);

struct NearApClassification {
  enum class Tag { kNotNearAp, kDivisorCase, kUnitCase };

  Tag tag = Tag::kNotNearAp;
  /// DivisorCase: largest proper divisor d > 1 of k dividing the shift set.
  int divisor = 0;
  /// UnitCase: a unit a, canonicalised to min(a, k - a).
  int unit = 0;
  /// Set when a unit case would also have applied.
  bool tie = false;
  std::optional<NearApWitness> witness;
  std::optional<ResidueSet> shifts;
};

/// Dichotomy for near arithmetic progressions. Throws LemmaViolation if a
/// near-AP satisfies neither case.
NearApClassification classify_near_ap(const ResidueSet& a);

std::string to_string(NearApClassification::Tag tag);

}  // namespace zsc
