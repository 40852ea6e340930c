#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latpatch/diagram.hpp"
#include "latpatch/structure.hpp"

namespace latpatch {

struct PipelineOptions {
  std::size_t max_oracle = 14;  // size bound for brute_force_gluing_search
  std::size_t max_synth = 16;   // size bound for synthesize_embedding
};

/// What decompose did at one non-patch node.
struct PipelineTrace {
  std::vector<EyeRecord> eyes;
  Diagram slimmed;                      // the input with its eyes removed
  std::vector<ExtensionStep> extension_steps;
  Diagram extended;                     // the rectangular extension
  std::optional<DecompositionCut> cut;  // absent when the fallback ran
  bool fallback_used = false;
  GluingWitness extended_witness;       // on `extended` (or `slimmed` with the fallback)
  GluingWitness slim_witness;           // after pulling back through the steps
  GluingWitness witness;                // lifted to the input
};

/// Binary tree whose leaves are patch lattices and whose inner nodes are
/// gluings of their two children over a chain.
class DecompositionTree {
 public:
  static DecompositionTree leaf(Diagram d);
  /// `ideal_part` and `filter_part` must be the restrictions of `d` to
  /// w.ideal and w.filter (matched by label).
  static DecompositionTree glue(Diagram d, GluingWitness w, DecompositionTree ideal_part,
                                DecompositionTree filter_part,
                                std::shared_ptr<const PipelineTrace> trace = nullptr);

  bool is_leaf() const { return node_->ideal_part == nullptr; }
  const Diagram& result() const { return node_->result; }
  /// Only for glue nodes.
  const GluingWitness& witness() const { return *node_->witness; }
  DecompositionTree ideal_part() const { return DecompositionTree(node_->ideal_part); }
  DecompositionTree filter_part() const { return DecompositionTree(node_->filter_part); }
  std::size_t chain_size() const { return is_leaf() ? 0 : node_->witness->chain.size(); }
  const std::shared_ptr<const PipelineTrace>& trace() const { return node_->trace; }

  std::size_t leaf_count() const;

 private:
  struct Node {
    Diagram result;
    std::optional<GluingWitness> witness;
    std::shared_ptr<const Node> ideal_part;
    std::shared_ptr<const Node> filter_part;
    std::shared_ptr<const PipelineTrace> trace;
  };
  explicit DecompositionTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Decomposition {
  DecompositionTree tree;
  std::shared_ptr<const PipelineTrace> trace;  // root node; null when the root is a leaf
};

/// Decomposes a planar semimodular diagram with more than one element into
/// patch lattices glued over chains. Throws NotSemimodular, TooSmall, or
/// NoDecomposition / AssertionFailed on a broken invariant.
Decomposition decompose(const Diagram& d, const PipelineOptions& options = {});

/// Independent re-check of every tree invariant against `d`. Empty on success,
/// otherwise a description of the first failing node and clause.
std::optional<std::string> verify_tree(const DecompositionTree& tree, const Diagram& d);

/// Exhaustive search over all join-closed downsets and meet-closed upsets.
/// Throws SizeBoundExceeded when |L| > max_size.
std::optional<GluingWitness> brute_force_gluing_search(const Lattice& l,
                                                       std::size_t max_size = 14);

struct SequenceEntry {
  Diagram lattice;
  std::optional<std::pair<std::size_t, std::size_t>> parts;  // 1-based, absent for patches
  std::size_t chain_size = 0;
};

/// Post-order linearisation L_1, ..., L_n = root.
std::vector<SequenceEntry> sequence_of(const DecompositionTree& tree);

}  // namespace latpatch
