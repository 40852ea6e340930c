#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "latpatch/diagram.hpp"
#include "latpatch/pipeline.hpp"

namespace latpatch {

using Meta = std::map<std::string, std::string>;

/// Lattice document:
///   {"covers": [[lower, upper], ...], "elements": [label, ...],
///    "embedding": {label: "p/q", ...}, "meta": {key: value, ...}}
/// Keys are sorted, covers sorted, rationals in lowest terms, two-space
/// indentation and a trailing newline.
std::string serialize(const Diagram& d, const Meta& meta = {});

struct ParsedDocument {
  Diagram diagram;
  Meta meta;
  bool synthesized = false;  // the document had no embedding
};

/// Throws SchemaError (malformed JSON, bad fields, cycles, invalid embedding),
/// NotALattice / NotBounded, or EmbeddingFailed when synthesis finds nothing.
ParsedDocument parse_document(std::string_view text, std::size_t max_synth = 16);

/// Tree document: {"kind": "leaf"|"glue", "lattice": {...},
///                 "chain": [label, ...], "children": [ideal part, filter part]}
std::string serialize_tree(const DecompositionTree& tree);
DecompositionTree parse_tree(std::string_view text, std::size_t max_synth = 16);

/// {"chain": [...], "filter": [...], "ideal": [...]} with element labels.
std::string serialize_witness(const Lattice& l, const GluingWitness& w);

/// DOT digraph with edges lower -> upper, one rank group per height and
/// nodes listed by increasing x inside each group.
std::string export_dot(const Diagram& d);

/// kind: "chain" {n}, "grid" {m, n}, "diamond" {k}, "random-sps" {size}.
/// Throws BadParams.
Diagram generate(std::string_view kind, const std::vector<int>& params, std::uint64_t seed = 0);

Diagram chain_diagram(int n);
Diagram grid_diagram(int m, int n);
Diagram diamond_diagram(int k);
Diagram random_sps_diagram(int size, std::uint64_t seed);

}  // namespace latpatch
