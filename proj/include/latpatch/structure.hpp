#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latpatch/diagram.hpp"
#include "latpatch/lattice.hpp"

namespace latpatch {

enum class Side { left, right };

std::string_view to_string(Side side);

/// A ≺ b ≺ c consecutive on the `side` boundary, with a meet-irreducible
/// and c join-irreducible.
struct ExtensionSite {
  Element a = 0;
  Element b = 0;
  Element c = 0;
  Side side = Side::left;

  friend bool operator==(const ExtensionSite&, const ExtensionSite&) = default;
};

/// One one-step extension. `t` is always the last id of `after`; every other
/// element keeps its id from `before`.
struct ExtensionStep {
  ExtensionSite site;
  Element t = 0;
  std::shared_ptr<const Diagram> before;
  std::shared_ptr<const Diagram> after;
};

/// Ideal A, filter B and their overlap C = A ∩ B inside an ambient lattice.
struct GluingWitness {
  ElementSet ideal;
  ElementSet filter;
  ElementSet chain;

  friend bool operator==(const GluingWitness&, const GluingWitness&) = default;
};

/// Empty when `w` is a valid gluing over a chain of `l` (A ideal, B filter,
/// C = A ∩ B a nonempty chain, A ∪ B = L); otherwise the first failed clause.
std::optional<std::string> witness_problem(const Lattice& l, const GluingWitness& w);

/// Valid and A ≠ L ≠ B.
bool is_proper_witness(const Lattice& l, const GluingWitness& w);

/// Hall–Dilworth gluing of the lattices alone. `iso` maps the overlap from
/// a filter chain of `lower` onto an ideal chain of `upper`. Elements of
/// `lower` keep their ids; the remaining elements of `upper` follow in id
/// order. Labels of `upper` that clash with `lower` get a "'" suffix.
struct LatticeGluing {
  Lattice lattice;
  std::vector<Element> from_upper;  // id in result of each element of `upper`
};
LatticeGluing glue_lattices(const Lattice& lower, const Lattice& upper,
                            const std::vector<std::pair<Element, Element>>& iso);

/// Gluing with a drawing. Tries the pieces' own coordinates first (exact when
/// the pieces come from a cut), then a level-by-level merge, then synthesis
/// up to `max_synth` elements. Throws NotAFilter, NotAnIdeal, NotAChain,
/// NotIso or EmbeddingFailed.
struct DiagramGluing {
  Diagram diagram;
  std::vector<Element> from_upper;
};
DiagramGluing glue_over_chain(const Diagram& lower, const Diagram& upper,
                              const std::vector<std::pair<Element, Element>>& iso,
                              std::size_t max_synth = 16);

/// Left-boundary sites bottom-up, then right-boundary sites bottom-up.
std::vector<ExtensionSite> find_extension_sites(const Diagram& d);

/// Adds t with a ≺ t ≺ c just outside the drawing on the site's side.
/// Throws InvalidSite unless `site` is one of find_extension_sites(d).
ExtensionStep one_step_extension(const Diagram& d, const ExtensionSite& site);

/// Pulls a proper witness for step.after back to step.before by dropping t.
/// Throws ImproperWitness, ChainWasSingletonT, or AssertionFailed if the
/// restriction is not itself a proper witness.
GluingWitness restrict_gluing(const GluingWitness& w, const ExtensionStep& step);

struct Rectangularization {
  Diagram diagram;
  std::vector<ExtensionStep> steps;
};

/// Extends at the first site until rectangular. Throws StuckNotRectangular or
/// IterationBoundExceeded (bound |L|^2).
Rectangularization rectangularize(const Diagram& d);

enum class CutMode { left, mirrored };

std::string_view to_string(CutMode mode);

struct DecompositionCut {
  Element x = 0;
  Element pivot = 0;
  CutMode mode = CutMode::left;
  DiagramRestriction bottom_part;  // [0, x]
  DiagramRestriction top_part;     // [pivot, 1]
  ElementSet chain;                // [pivot, x]

  GluingWitness witness() const;
};

/// Splits a slim rectangular diagram at x. In left mode x lies on the upper
/// left boundary and pivot = x ∧ u_r; mirrored mode swaps the sides.
/// Throws BadX or AssertionFailed.
DecompositionCut decompose_at(const Diagram& d, Element x, CutMode mode);

struct CutChoice {
  Element x = 0;
  CutMode mode = CutMode::left;
};

/// Upper cover of u_l on the left boundary when u_l is not a dual atom,
/// otherwise that of u_r on the right. Throws IsPatch or NotRectangular.
CutChoice choose_x(const Diagram& d);

/// All (ideal, filter) pairs of principal form (↓a, ↑b); the first proper
/// witness in order of (|A|, a, |B|, b). Polynomial, no size bound.
std::optional<GluingWitness> find_principal_gluing(const Lattice& l);

}  // namespace latpatch
