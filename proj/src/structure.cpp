#include "latpatch/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "latpatch/error.hpp"

namespace latpatch {

std::string_view to_string(Side side) { return side == Side::left ? "left" : "right"; }

std::string_view to_string(CutMode mode) { return mode == CutMode::left ? "left" : "mirrored"; }

std::optional<std::string> witness_problem(const Lattice& l, const GluingWitness& w) {
  ElementSet a = normalized(w.ideal), b = normalized(w.filter), c = normalized(w.chain);
  if (!is_ideal(l, a)) return "A is not an ideal";
  if (!is_filter(l, b)) return "B is not a filter";
  if (set_intersection(a, b) != c) return "C differs from A ∩ B";
  if (c.empty()) return "C is empty";
  if (!is_chain(l, c)) return "C is not a chain";
  if (static_cast<int>(set_union(a, b).size()) != l.size()) return "A ∪ B misses elements";
  return std::nullopt;
}

bool is_proper_witness(const Lattice& l, const GluingWitness& w) {
  return !witness_problem(l, w) && static_cast<int>(normalized(w.ideal).size()) != l.size() &&
         static_cast<int>(normalized(w.filter).size()) != l.size();
}

LatticeGluing glue_lattices(const Lattice& lower, const Lattice& upper,
                            const std::vector<std::pair<Element, Element>>& iso) {
  ElementSet domain, image;
  for (const auto& [a, b] : iso) {
    if (a < 0 || a >= lower.size() || b < 0 || b >= upper.size())
      throw LatticeError(ErrorKind::NotIso, "gluing map references a missing element");
    domain.push_back(a);
    image.push_back(b);
  }
  domain = normalized(domain);
  image = normalized(image);
  if (domain.size() != iso.size() || image.size() != iso.size())
    throw LatticeError(ErrorKind::NotIso, "gluing map is not a bijection");
  if (!is_filter(lower, domain))
    throw LatticeError(ErrorKind::NotAFilter, "overlap is not a filter of the lower piece");
  if (!is_chain(lower, domain) || !is_chain(upper, image))
    throw LatticeError(ErrorKind::NotAChain, "overlap is not a chain");
  if (!is_ideal(upper, image))
    throw LatticeError(ErrorKind::NotAnIdeal, "overlap is not an ideal of the upper piece");
  for (const auto& [a1, b1] : iso)
    for (const auto& [a2, b2] : iso)
      if (lower.leq(a1, a2) != upper.leq(b1, b2))
        throw LatticeError(ErrorKind::NotIso, "gluing map does not preserve order");

  std::vector<Element> from_upper(upper.size(), -1);
  for (const auto& [a, b] : iso) from_upper[b] = a;
  std::vector<std::string> names = lower.names();
  std::set<std::string> taken(names.begin(), names.end());
  for (int e = 0; e < upper.size(); ++e) {
    if (from_upper[e] >= 0) continue;
    std::string label = upper.name(e);
    while (taken.count(label)) label += "'";
    taken.insert(label);
    from_upper[e] = static_cast<Element>(names.size());
    names.push_back(std::move(label));
  }
  std::vector<Cover> covers = lower.cover_pairs();
  for (const auto& [a, b] : upper.cover_pairs()) covers.emplace_back(from_upper[a], from_upper[b]);
  return LatticeGluing{Lattice::from_covers(std::move(names), std::move(covers)),
                       std::move(from_upper)};
}

namespace {

std::vector<Rational> merged_levels(const Diagram& lower, const Diagram& upper,
                                    const LatticeGluing& g) {
  const Lattice& l = g.lattice;
  const int n = l.size();
  std::vector<Element> upper_of(n, -1);  // id in `upper`, or -1
  for (int e = 0; e < upper.size(); ++e) upper_of[g.from_upper[e]] = e;

  std::map<int, std::vector<Element>> levels;
  for (int e = 0; e < n; ++e) levels[l.height(e)].push_back(e);

  std::vector<Rational> x(n);
  for (auto& [h, members] : levels) {
    std::optional<Element> joint;
    std::vector<Element> low, up;
    for (Element e : members) {
      bool in_lower = e < lower.size();
      bool in_upper = upper_of[e] >= 0;
      if (in_lower && in_upper) joint = e;
      else if (in_lower) low.push_back(e);
      else up.push_back(e);
    }
    auto by_lower = [&](Element a, Element b) { return lower.x(a) < lower.x(b); };
    auto by_upper = [&](Element a, Element b) { return upper.x(upper_of[a]) < upper.x(upper_of[b]); };
    std::sort(low.begin(), low.end(), by_lower);
    std::sort(up.begin(), up.end(), by_upper);
    std::vector<Element> order;
    if (joint) {
      auto low_split = std::partition_point(low.begin(), low.end(), [&](Element e) {
        return lower.x(e) < lower.x(*joint);
      });
      auto up_split = std::partition_point(up.begin(), up.end(), [&](Element e) {
        return upper.x(upper_of[e]) < upper.x(upper_of[*joint]);
      });
      order.insert(order.end(), low.begin(), low_split);
      order.insert(order.end(), up.begin(), up_split);
      order.push_back(*joint);
      order.insert(order.end(), up_split, up.end());
      order.insert(order.end(), low_split, low.end());
    } else {
      order = low;
      order.insert(order.end(), up.begin(), up.end());
    }
    const Rational half_span(static_cast<std::int64_t>(order.size()) - 1, 2);
    for (std::size_t i = 0; i < order.size(); ++i)
      x[order[i]] = Rational(static_cast<std::int64_t>(i)) - half_span;
  }
  return x;
}

}  // namespace

DiagramGluing glue_over_chain(const Diagram& lower, const Diagram& upper,
                              const std::vector<std::pair<Element, Element>>& iso,
                              std::size_t max_synth) {
  LatticeGluing g = glue_lattices(lower.lattice(), upper.lattice(), iso);

  std::vector<Rational> reused(g.lattice.size());
  for (int e = 0; e < lower.size(); ++e) reused[e] = lower.x(e);
  for (int e = 0; e < upper.size(); ++e)
    if (g.from_upper[e] >= lower.size()) reused[g.from_upper[e]] = upper.x(e);
  Diagram candidate(g.lattice, std::move(reused));
  if (!validate_diagram(candidate)) return {std::move(candidate), std::move(g.from_upper)};

  Diagram merged(g.lattice, merged_levels(lower, upper, g));
  if (!validate_diagram(merged)) return {std::move(merged), std::move(g.from_upper)};

  if (static_cast<std::size_t>(g.lattice.size()) <= max_synth) {
    if (auto d = synthesize_embedding(g.lattice, max_synth))
      return {std::move(*d), std::move(g.from_upper)};
  }
  throw LatticeError(ErrorKind::EmbeddingFailed, "no crossing-free drawing for the gluing");
}

std::vector<ExtensionSite> find_extension_sites(const Diagram& d) {
  const Lattice& l = d.lattice();
  BoundaryData b = boundaries(d);
  std::vector<ExtensionSite> out;
  auto scan = [&](const std::vector<Element>& chain, Side side) {
    for (std::size_t i = 0; i + 2 < chain.size(); ++i) {
      if (irreducibility(l, chain[i]).meet_irreducible &&
          irreducibility(l, chain[i + 2]).join_irreducible)
        out.push_back(ExtensionSite{chain[i], chain[i + 1], chain[i + 2], side});
    }
  };
  scan(b.left_chain, Side::left);
  scan(b.right_chain, Side::right);
  return out;
}

ExtensionStep one_step_extension(const Diagram& d, const ExtensionSite& site) {
  auto sites = find_extension_sites(d);
  if (std::find(sites.begin(), sites.end(), site) == sites.end())
    throw LatticeError(ErrorKind::InvalidSite, "not an extension site");
  const Lattice& l = d.lattice();

  std::string label = "t";
  for (int k = 1; l.find(label); ++k) label = "t" + std::to_string(k);
  std::vector<std::string> names = l.names();
  names.push_back(label);
  const Element t = l.size();
  std::vector<Cover> covers = l.cover_pairs();
  covers.emplace_back(site.a, t);
  covers.emplace_back(t, site.c);

  std::vector<Rational> x = d.xs();
  auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  x.push_back(site.side == Side::left ? *lo - 1 : *hi + 1);

  auto after = std::make_shared<const Diagram>(
      Lattice::from_covers(std::move(names), std::move(covers)), std::move(x));
  return ExtensionStep{site, t, std::make_shared<const Diagram>(d), std::move(after)};
}

GluingWitness restrict_gluing(const GluingWitness& w, const ExtensionStep& step) {
  const Element t = step.t;
  if (normalized(w.chain) == ElementSet{t})
    throw LatticeError(ErrorKind::ChainWasSingletonT, "overlap is {t}; not a witness for L[E]");
  if (!is_proper_witness(step.after->lattice(), w))
    throw LatticeError(ErrorKind::ImproperWitness,
                       witness_problem(step.after->lattice(), w).value_or("A or B is everything"));
  auto drop = [t](const ElementSet& s) {
    ElementSet out;
    for (Element e : normalized(s))
      if (e != t) out.push_back(e);
    return out;
  };
  GluingWitness out{drop(w.ideal), drop(w.filter), drop(w.chain)};
  const Lattice& before = step.before->lattice();
  if (auto why = witness_problem(before, out))
    throw LatticeError(ErrorKind::AssertionFailed, "restricted witness invalid: " + *why);
  if (!is_proper_witness(before, out))
    throw LatticeError(ErrorKind::AssertionFailed, "restricted witness is not proper");
  return out;
}

Rectangularization rectangularize(const Diagram& d) {
  const std::size_t bound = static_cast<std::size_t>(d.size()) * static_cast<std::size_t>(d.size());
  Rectangularization r{d, {}};
  while (!is_rectangular(r.diagram)) {
    if (r.steps.size() >= bound)
      throw LatticeError(ErrorKind::IterationBoundExceeded,
                         "no rectangular extension after " + std::to_string(bound) + " steps");
    auto sites = find_extension_sites(r.diagram);
    if (sites.empty())
      throw LatticeError(ErrorKind::StuckNotRectangular, "no extension site left");
    ExtensionStep step = one_step_extension(r.diagram, sites.front());
    if (!r.steps.empty()) step.before = r.steps.back().after;  // same diagram, shared
    r.diagram = *step.after;
    r.steps.push_back(std::move(step));
  }
  return r;
}

GluingWitness DecompositionCut::witness() const {
  return GluingWitness{bottom_part.origin, top_part.origin, chain};
}

DecompositionCut decompose_at(const Diagram& d, Element x, CutMode mode) {
  const Lattice& l = d.lattice();
  if (x < 0 || x >= l.size()) throw LatticeError(ErrorKind::BadX, "no such element");
  if (!is_rectangular(d) || !is_slim(d))
    throw LatticeError(ErrorKind::BadX, "cut needs a slim rectangular diagram");
  BoundaryData b = boundaries(d);
  const Element own_corner = mode == CutMode::left ? *b.u_left : *b.u_right;
  const Element far_corner = mode == CutMode::left ? *b.u_right : *b.u_left;
  auto upper = mode == CutMode::left ? upper_left_boundary(d) : upper_right_boundary(d);
  if (std::find(upper.begin(), upper.end(), x) == upper.end() || x == own_corner || x == l.top())
    throw LatticeError(ErrorKind::BadX,
                       l.name(x) + " is not strictly between the corner and the top on the " +
                           std::string(mode == CutMode::left ? "upper left" : "upper right") +
                           " boundary");

  const Element pivot = l.meet(x, far_corner);
  DecompositionCut cut{x,
                       pivot,
                       mode,
                       restrict_diagram(d, down_set(l, x)),
                       restrict_diagram(d, up_set(l, pivot)),
                       interval_members(l, pivot, x)};

  auto fail = [&](const std::string& what) {
    return LatticeError(ErrorKind::AssertionFailed, "cut at " + l.name(x) + ": " + what);
  };
  if (!is_chain(l, cut.chain)) throw fail("[pivot, x] is not a chain");
  if (l.join(own_corner, pivot) != x) throw fail("x differs from corner ∨ pivot");
  for (const auto* part : {&cut.bottom_part.diagram, &cut.top_part.diagram}) {
    if (!is_slim(*part) || !is_rectangular(*part)) throw fail("a part is not slim rectangular");
    if (auto v = validate_diagram(*part)) throw fail("a part drawing is invalid: " + v->message);
  }
  if (cut.bottom_part.diagram.size() + cut.top_part.diagram.size() -
          static_cast<int>(cut.chain.size()) !=
      l.size())
    throw fail("|bottom| + |top| - |chain| differs from |L|");
  if (!is_proper_witness(l, cut.witness())) throw fail("parts do not form a proper gluing");
  return cut;
}

CutChoice choose_x(const Diagram& d) {
  if (!is_rectangular(d))
    throw LatticeError(ErrorKind::NotRectangular, "choose_x needs a rectangular diagram");
  const Lattice& l = d.lattice();
  BoundaryData b = boundaries(d);
  auto next_on = [](const std::vector<Element>& chain, Element e) {
    return *(std::find(chain.begin(), chain.end(), e) + 1);
  };
  if (!l.is_dual_atom(*b.u_left)) return {next_on(b.left_chain, *b.u_left), CutMode::left};
  if (!l.is_dual_atom(*b.u_right)) return {next_on(b.right_chain, *b.u_right), CutMode::mirrored};
  throw LatticeError(ErrorKind::IsPatch, "both corners are dual atoms");
}

std::optional<GluingWitness> find_principal_gluing(const Lattice& l) {
  std::vector<std::pair<std::size_t, Element>> ideals, filters;
  for (int a = 0; a < l.size(); ++a) {
    if (a != l.top()) ideals.emplace_back(down_set(l, a).size(), a);
    if (a != l.bottom()) filters.emplace_back(up_set(l, a).size(), a);
  }
  std::sort(ideals.begin(), ideals.end());
  std::sort(filters.begin(), filters.end());
  for (const auto& [sa, a] : ideals) {
    for (const auto& [sb, b] : filters) {
      if (!l.leq(b, a)) continue;
      bool covers_all = true;
      for (int z = 0; z < l.size() && covers_all; ++z)
        covers_all = l.leq(z, a) || l.leq(b, z);
      if (!covers_all) continue;
      ElementSet chain = interval_members(l, b, a);
      if (!is_chain(l, chain)) continue;
      return GluingWitness{down_set(l, a), up_set(l, b), std::move(chain)};
    }
  }
  return std::nullopt;
}

}  // namespace latpatch
