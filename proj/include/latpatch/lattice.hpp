#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace latpatch {

/// Elements are dense indices 0..size()-1. Labels only matter for IO and
/// for matching elements across derived structures.
using Element = int;
using ElementSet = std::vector<Element>;  // sorted, no duplicates
using Cover = std::pair<Element, Element>;  // (lower, upper)

/// A finite bounded lattice given by its cover relation, with the order,
/// join and meet tables precomputed. Immutable once built.
class Lattice {
 public:
  /// Builds from element labels and cover pairs (indices into `names`).
  /// Throws LatticeError with kind CycleDetected, NotBounded or NotALattice.
  static Lattice from_covers(std::vector<std::string> names, std::vector<Cover> covers);

  /// Convenience: labels are collected in order of first appearance.
  static Lattice from_labeled_covers(
      const std::vector<std::pair<std::string, std::string>>& covers);

  int size() const { return n_; }
  Element bottom() const { return bottom_; }
  Element top() const { return top_; }

  const std::string& name(Element e) const { return names_[e]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Element> find(std::string_view label) const;
  /// Like find(), but throws UnknownElement.
  Element at(std::string_view label) const;

  bool leq(Element a, Element b) const { return leq_[idx(a, b)] != 0; }
  bool less(Element a, Element b) const { return a != b && leq(a, b); }
  bool comparable(Element a, Element b) const { return leq(a, b) || leq(b, a); }
  /// a ≺ b
  bool covers(Element a, Element b) const { return cov_[idx(a, b)] != 0; }
  Element join(Element a, Element b) const { return join_[idx(a, b)]; }
  Element meet(Element a, Element b) const { return meet_[idx(a, b)]; }
  /// Length of the longest chain from bottom to e.
  int height(Element e) const { return height_[e]; }

  std::span<const Element> upper_covers(Element e) const { return upper_[e]; }
  std::span<const Element> lower_covers(Element e) const { return lower_[e]; }
  /// Sorted (lower, upper) pairs.
  const std::vector<Cover>& cover_pairs() const { return cover_list_; }

  bool is_dual_atom(Element e) const { return covers(e, top_); }
  bool is_atom(Element e) const { return covers(bottom_, e); }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.names_ == b.names_ && a.cover_list_ == b.cover_list_;
  }

 private:
  Lattice() = default;
  std::size_t idx(Element a, Element b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(b);
  }

  int n_ = 0;
  Element bottom_ = 0;
  Element top_ = 0;
  std::vector<std::string> names_;
  std::vector<Cover> cover_list_;
  std::vector<std::vector<Element>> upper_;
  std::vector<std::vector<Element>> lower_;
  std::vector<char> leq_;
  std::vector<char> cov_;
  std::vector<Element> join_;
  std::vector<Element> meet_;
  std::vector<int> height_;
};

/// A lattice induced on a subset of an ambient lattice, plus the map back.
struct Restriction {
  Lattice lattice;
  std::vector<Element> origin;  // origin[i] = ambient id of element i
};

/// Restricts to `members` (any order, duplicates ignored) with the induced
/// order. Throws NotALattice if the induced order is not a lattice.
Restriction restrict_to(const Lattice& l, const ElementSet& members);

/// The interval [a, b]. Throws NotComparable unless a <= b.
Restriction interval(const Lattice& l, Element a, Element b);

/// Members of [a, b] in the ambient numbering.
ElementSet interval_members(const Lattice& l, Element a, Element b);
ElementSet down_set(const Lattice& l, Element a);
ElementSet up_set(const Lattice& l, Element a);

/// Cover form of upper semimodularity: a ∧ b ≺ a implies b ≺ a ∨ b.
bool is_semimodular(const Lattice& l);

/// First (a, b) violating semimodularity, if any.
std::optional<std::pair<Element, Element>> semimodularity_witness(const Lattice& l);

struct Irreducibility {
  bool join_irreducible = false;
  bool meet_irreducible = false;
  bool doubly_irreducible = false;
};
Irreducibility irreducibility(const Lattice& l, Element x);

inline bool is_doubly_irreducible(const Lattice& l, Element x) {
  return irreducibility(l, x).doubly_irreducible;
}

struct SubsetRoles {
  bool ideal = false;
  bool filter = false;
  bool chain = false;
  bool sublattice = false;
};

/// Throws EmptySet for an empty subset.
SubsetRoles classify_subset(const Lattice& l, const ElementSet& s);

bool is_chain(const Lattice& l, const ElementSet& s);
bool is_ideal(const Lattice& l, const ElementSet& s);
bool is_filter(const Lattice& l, const ElementSet& s);

/// Sorts and removes duplicates.
ElementSet normalized(ElementSet s);
ElementSet set_union(const ElementSet& a, const ElementSet& b);
ElementSet set_intersection(const ElementSet& a, const ElementSet& b);
ElementSet all_elements(const Lattice& l);

/// An order isomorphism from `a` onto `b`, as the vector of images.
/// `fixed` pins pairs (element of a, element of b) that the map must contain.
/// Deterministic for fixed inputs.
std::optional<std::vector<Element>> is_isomorphic(
    const Lattice& a, const Lattice& b, std::span<const std::pair<Element, Element>> fixed = {});

}  // namespace latpatch
