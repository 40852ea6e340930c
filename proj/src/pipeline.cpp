#include "latpatch/pipeline.hpp"

#include <algorithm>
#include <cstdint>

#include "latpatch/error.hpp"

namespace latpatch {

DecompositionTree DecompositionTree::leaf(Diagram d) {
  return DecompositionTree(std::make_shared<const Node>(Node{std::move(d), std::nullopt, nullptr,
                                                             nullptr, nullptr}));
}

DecompositionTree DecompositionTree::glue(Diagram d, GluingWitness w, DecompositionTree ideal_part,
                                          DecompositionTree filter_part,
                                          std::shared_ptr<const PipelineTrace> trace) {
  return DecompositionTree(std::make_shared<const Node>(
      Node{std::move(d), std::move(w), std::move(ideal_part.node_), std::move(filter_part.node_),
           std::move(trace)}));
}

std::size_t DecompositionTree::leaf_count() const {
  if (is_leaf()) return 1;
  return ideal_part().leaf_count() + filter_part().leaf_count();
}

namespace {

ElementSet by_label(const Lattice& from, const ElementSet& s, const Lattice& to) {
  ElementSet out;
  for (Element e : s) out.push_back(to.at(from.name(e)));
  return normalized(out);
}

GluingWitness lift_through_eyes(const Diagram& d, const Diagram& slimmed,
                                const std::vector<EyeRecord>& eyes, const GluingWitness& w) {
  const Lattice& l = d.lattice();
  const Lattice& s = slimmed.lattice();
  ElementSet ideal = by_label(s, w.ideal, l);
  ElementSet filter = by_label(s, w.filter, l);
  std::vector<char> in_ideal(s.size(), 0), in_filter(s.size(), 0);
  for (Element e : w.ideal) in_ideal[e] = 1;
  for (Element e : w.filter) in_filter[e] = 1;
  for (const EyeRecord& eye : eyes) {
    Element e = l.at(eye.label);
    if (in_ideal[s.at(eye.upper)]) ideal.push_back(e);
    if (in_filter[s.at(eye.lower)]) filter.push_back(e);
  }
  GluingWitness out{normalized(ideal), normalized(filter), {}};
  out.chain = set_intersection(out.ideal, out.filter);
  return out;
}

Diagram part_of(const Diagram& d, const ElementSet& members) {
  DiagramRestriction r = restrict_diagram(d, members);
  if (auto v = validate_diagram(r.diagram))
    throw LatticeError(ErrorKind::AssertionFailed, "part drawing invalid: " + v->message);
  return std::move(r.diagram);
}

DecompositionTree decompose_node(const Diagram& d, const PipelineOptions& options,
                                 std::shared_ptr<const PipelineTrace>* trace_out) {
  const Lattice& l = d.lattice();
  if (l.size() < 2) throw LatticeError(ErrorKind::TooSmall, "needs more than one element");
  if (auto w = semimodularity_witness(l))
    throw LatticeError(ErrorKind::NotSemimodular,
                       "a=" + l.name(w->first) + ", b=" + l.name(w->second));
  if (is_patch(d)) return DecompositionTree::leaf(d);

  SlimResult slimmed = slim(d);
  Rectangularization rect = is_rectangular(slimmed.diagram)
                                ? Rectangularization{slimmed.diagram, {}}
                                : rectangularize(slimmed.diagram);

  std::optional<DecompositionCut> cut;
  GluingWitness extended_witness, slim_witness;
  bool fallback = false;
  if (is_patch(rect.diagram)) {
    // The rectangular extension is a patch, so it has no cut to pull back.
    fallback = true;
    const Lattice& s = slimmed.diagram.lattice();
    auto found = static_cast<std::size_t>(s.size()) <= options.max_oracle
                     ? brute_force_gluing_search(s, options.max_oracle)
                     : find_principal_gluing(s);
    if (!found)
      throw LatticeError(ErrorKind::NoDecomposition,
                         "slim lattice of " + std::to_string(s.size()) + " elements has no gluing");
    extended_witness = slim_witness = *found;
  } else {
    CutChoice choice = choose_x(rect.diagram);
    cut = decompose_at(rect.diagram, choice.x, choice.mode);
    extended_witness = cut->witness();
    slim_witness = extended_witness;
    for (auto it = rect.steps.rbegin(); it != rect.steps.rend(); ++it)
      slim_witness = restrict_gluing(slim_witness, *it);
  }

  GluingWitness witness = lift_through_eyes(d, slimmed.diagram, slimmed.eyes, slim_witness);
  if (auto why = witness_problem(l, witness))
    throw LatticeError(ErrorKind::AssertionFailed, "lifted witness invalid: " + *why);
  if (!is_proper_witness(l, witness))
    throw LatticeError(ErrorKind::AssertionFailed, "lifted witness is not proper");

  auto trace = std::make_shared<const PipelineTrace>(PipelineTrace{
      std::move(slimmed.eyes), std::move(slimmed.diagram), std::move(rect.steps),
      std::move(rect.diagram), std::move(cut), fallback, std::move(extended_witness),
      std::move(slim_witness), witness});
  if (trace_out) *trace_out = trace;

  DecompositionTree ideal_part = decompose_node(part_of(d, witness.ideal), options, nullptr);
  DecompositionTree filter_part = decompose_node(part_of(d, witness.filter), options, nullptr);
  return DecompositionTree::glue(d, std::move(witness), std::move(ideal_part),
                                 std::move(filter_part), std::move(trace));
}

std::vector<std::string> sorted_labels(const Lattice& l, const ElementSet& s) {
  std::vector<std::string> out;
  for (Element e : s) out.push_back(l.name(e));
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::string> verify_node(const DecompositionTree& t, const std::string& path) {
  const Diagram& d = t.result();
  const Lattice& l = d.lattice();
  if (auto v = validate_diagram(d)) return path + ": drawing invalid: " + v->message;
  if (t.is_leaf()) {
    if (!is_patch(d)) return path + ": leaf not patch";
    return std::nullopt;
  }
  const GluingWitness& w = t.witness();
  if (auto why = witness_problem(l, w)) return path + ": witness invalid: " + *why;
  if (!is_proper_witness(l, w)) return path + ": witness not proper";

  const Lattice& lo = t.ideal_part().result().lattice();
  const Lattice& up = t.filter_part().result().lattice();
  if (sorted_labels(lo, all_elements(lo)) != sorted_labels(l, w.ideal))
    return path + ": ideal child does not match A";
  if (sorted_labels(up, all_elements(up)) != sorted_labels(l, w.filter))
    return path + ": filter child does not match B";

  std::vector<std::pair<Element, Element>> iso;
  for (Element c : w.chain) iso.emplace_back(lo.at(l.name(c)), up.at(l.name(c)));
  try {
    LatticeGluing g = glue_lattices(lo, up, iso);
    if (!is_isomorphic(g.lattice, l)) return path + ": reglued children differ from node";
  } catch (const LatticeError& e) {
    return path + ": children do not reglue: " + e.what();
  }
  if (auto bad = verify_node(t.ideal_part(), path + ".0")) return bad;
  return verify_node(t.filter_part(), path + ".1");
}

}  // namespace

Decomposition decompose(const Diagram& d, const PipelineOptions& options) {
  std::shared_ptr<const PipelineTrace> trace;
  DecompositionTree tree = decompose_node(d, options, &trace);
  return Decomposition{std::move(tree), std::move(trace)};
}

std::optional<std::string> verify_tree(const DecompositionTree& tree, const Diagram& d) {
  if (auto bad = verify_node(tree, "root")) return bad;
  if (!is_isomorphic(tree.result().lattice(), d.lattice())) return std::string("root isomorphism");
  return std::nullopt;
}

std::optional<GluingWitness> brute_force_gluing_search(const Lattice& l, std::size_t max_size) {
  const int n = l.size();
  if (static_cast<std::size_t>(n) > max_size || n > 24)
    throw LatticeError(ErrorKind::SizeBoundExceeded,
                       std::to_string(n) + " elements exceeds oracle bound " +
                           std::to_string(max_size));
  using Mask = std::uint32_t;
  const Mask full = (Mask{1} << n) - 1;
  auto has = [](Mask m, int e) { return (m >> e) & 1u; };
  auto members = [&](Mask m) {
    ElementSet s;
    for (int e = 0; e < n; ++e)
      if (has(m, e)) s.push_back(e);
    return s;
  };

  std::vector<Mask> ideals, filters;
  for (Mask m = 1; m < full; ++m) {
    bool down = true, up = true;
    for (int a = 0; a < n && (down || up); ++a) {
      if (!has(m, a)) continue;
      for (int z = 0; z < n; ++z) {
        if (l.leq(z, a) && !has(m, z)) down = false;
        if (l.leq(a, z) && !has(m, z)) up = false;
      }
    }
    for (int a = 0; a < n && (down || up); ++a) {
      if (!has(m, a)) continue;
      for (int b = 0; b < n; ++b) {
        if (!has(m, b)) continue;
        if (!has(m, l.join(a, b))) down = false;
        if (!has(m, l.meet(a, b))) up = false;
      }
    }
    if (down) ideals.push_back(m);
    if (up) filters.push_back(m);
  }
  auto order = [&](Mask a, Mask b) {
    int ca = __builtin_popcount(a), cb = __builtin_popcount(b);
    if (ca != cb) return ca < cb;
    return members(a) < members(b);
  };
  std::sort(ideals.begin(), ideals.end(), order);
  std::sort(filters.begin(), filters.end(), order);

  for (Mask a : ideals) {
    for (Mask b : filters) {
      if ((a | b) != full || (a & b) == 0) continue;
      ElementSet chain = members(a & b);
      if (!is_chain(l, chain)) continue;
      return GluingWitness{members(a), members(b), std::move(chain)};
    }
  }
  return std::nullopt;
}

namespace {

std::size_t linearize(const DecompositionTree& t, std::vector<SequenceEntry>& out) {
  if (t.is_leaf()) {
    out.push_back(SequenceEntry{t.result(), std::nullopt, 0});
    return out.size();
  }
  std::size_t j = linearize(t.ideal_part(), out);
  std::size_t k = linearize(t.filter_part(), out);
  out.push_back(SequenceEntry{t.result(), std::pair{j, k}, t.chain_size()});
  return out.size();
}

}  // namespace

std::vector<SequenceEntry> sequence_of(const DecompositionTree& tree) {
  std::vector<SequenceEntry> out;
  linearize(tree, out);
  return out;
}

}  // namespace latpatch
