#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latpatch/error.hpp"
#include "latpatch/lattice.hpp"
#include "latpatch/rational.hpp"

namespace latpatch {

/// A lattice with a straight-line drawing of its Hasse diagram. The
/// vertical coordinate of an element is always its height, so only the
/// horizontal coordinates are stored.
class Diagram {
 public:
  /// Throws BadParams if x.size() != lattice.size(). Planarity is not checked
  /// here; see validate_diagram().
  Diagram(Lattice lattice, std::vector<Rational> x);

  const Lattice& lattice() const { return lattice_; }
  int size() const { return lattice_.size(); }
  const Rational& x(Element e) const { return x_[e]; }
  const std::vector<Rational>& xs() const { return x_; }
  Rational y(Element e) const { return Rational(lattice_.height(e)); }

  friend bool operator==(const Diagram& a, const Diagram& b) {
    return a.lattice_ == b.lattice_ && a.x_ == b.x_;
  }

 private:
  Lattice lattice_;
  std::vector<Rational> x_;
};

struct DiagramViolation {
  ErrorKind kind;  // EdgeCrossing, NonMonotoneEdge or DuplicatePosition
  Cover first{};
  Cover second{};  // unused for NonMonotoneEdge
  std::string message;
};

/// Positions must be distinct and edges may only meet at a shared endpoint.
/// Exact arithmetic throughout.
std::optional<DiagramViolation> validate_diagram(const Diagram& d);

/// Throws the violation as a LatticeError.
void require_valid(const Diagram& d);

struct DiagramRestriction {
  Diagram diagram;
  std::vector<Element> origin;
};

/// Induced sub-diagram; coordinates are inherited.
DiagramRestriction restrict_diagram(const Diagram& d, const ElementSet& members);

struct BoundaryData {
  std::vector<Element> left_chain;
  std::vector<Element> right_chain;
  std::vector<Element> left_corners;
  std::vector<Element> right_corners;
  std::optional<Element> u_left;
  std::optional<Element> u_right;
};

/// Leftmost (resp. rightmost) upper cover of e by edge direction.
std::optional<Element> leftmost_upper_cover(const Diagram& d, Element e);
std::optional<Element> rightmost_upper_cover(const Diagram& d, Element e);

BoundaryData boundaries(const Diagram& d);

bool is_rectangular(const Diagram& d);
bool is_patch(const Diagram& d);
bool is_slim(const Diagram& d);

/// Sub-chain of the left boundary from u_l to the top. Throws NotRectangular.
std::vector<Element> upper_left_boundary(const Diagram& d);
/// Sub-chain of the right boundary from u_r to the top. Throws NotRectangular.
std::vector<Element> upper_right_boundary(const Diagram& d);

/// Records one removed eye. Anchors are kept by label because element ids
/// shift every time an element is removed.
struct EyeRecord {
  std::string lower;
  std::string upper;
  int slot = 0;  // position among the atoms of [lower, upper], left to right
  std::string label;
  Rational x;  // horizontal position before removal
};

struct Eye {
  Element element;
  EyeRecord record;
};

/// Doubly irreducible elements that are neither the leftmost nor the
/// rightmost atom of their interval [lower cover, upper cover], when that
/// interval has at least three atoms.
std::vector<Eye> find_eyes(const Diagram& d);

struct SlimResult {
  Diagram diagram;
  std::vector<EyeRecord> eyes;  // removal order
};

/// Removes eyes one at a time (smallest id first) until none remain.
SlimResult slim(const Diagram& d);

/// Removes the element; coordinates of the others are kept.
Diagram remove_element(const Diagram& d, Element e);

/// Re-inserts eyes in reverse removal order. Throws MissingAnchor.
Diagram restore_eyes(const Diagram& d, const std::vector<EyeRecord>& records);

/// Mirror image: negates every horizontal coordinate.
Diagram reflect(const Diagram& d);

/// Exhaustive search over left-to-right orders per height level. Elements on
/// a level with k members sit at x = index - (k-1)/2. Returns the first valid
/// drawing found, or nothing. Throws SizeBoundExceeded above `max_size`.
std::optional<Diagram> synthesize_embedding(const Lattice& l, std::size_t max_size = 16);

}  // namespace latpatch
