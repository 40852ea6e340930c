#include "latpatch/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace latpatch {

Diagram::Diagram(Lattice lattice, std::vector<Rational> x)
    : lattice_(std::move(lattice)), x_(std::move(x)) {
  if (static_cast<int>(x_.size()) != lattice_.size())
    throw LatticeError(ErrorKind::BadParams, "coordinate count does not match element count");
}

namespace {

struct Point {
  Rational x;
  Rational y;
};

int sign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

int orient(const Point& p, const Point& q, const Point& r) {
  return sign((q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x));
}

// r is collinear with p, q; is it inside the closed segment?
bool within(const Point& p, const Point& q, const Point& r) {
  return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
         r.y <= std::max(p.y, q.y);
}

struct Coords {
  const Lattice& lattice;
  const std::vector<Rational>& x;
};

Point at(const Coords& d, Element e) { return Point{d.x[e], Rational(d.lattice.height(e))}; }

// True when the two cover edges meet anywhere other than a shared endpoint.
bool edges_conflict(const Coords& d, const Cover& e1, const Cover& e2) {
  const auto [a, b] = e1;
  const auto [c, f] = e2;
  Element shared = -1, u = -1, v = -1;
  if (a == c) shared = a, u = b, v = f;
  else if (a == f) shared = a, u = b, v = c;
  else if (b == c) shared = b, u = a, v = f;
  else if (b == f) shared = b, u = a, v = c;
  if (shared >= 0) {
    Point s = at(d, shared), p = at(d, u), q = at(d, v);
    if (orient(s, p, q) != 0) return false;
    return (p.x - s.x) * (q.x - s.x) + (p.y - s.y) * (q.y - s.y) > 0;
  }
  Point p1 = at(d, a), p2 = at(d, b), p3 = at(d, c), p4 = at(d, f);
  int o1 = orient(p1, p2, p3), o2 = orient(p1, p2, p4);
  int o3 = orient(p3, p4, p1), o4 = orient(p3, p4, p2);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && within(p1, p2, p3)) return true;
  if (o2 == 0 && within(p1, p2, p4)) return true;
  if (o3 == 0 && within(p3, p4, p1)) return true;
  if (o4 == 0 && within(p3, p4, p2)) return true;
  return false;
}

std::string edge_text(const Lattice& l, const Cover& e) {
  return l.name(e.first) + "->" + l.name(e.second);
}

}  // namespace

std::optional<DiagramViolation> validate_diagram(const Diagram& d) {
  const Lattice& l = d.lattice();
  for (int a = 0; a < d.size(); ++a)
    for (int b = a + 1; b < d.size(); ++b)
      if (d.x(a) == d.x(b) && d.y(a) == d.y(b))
        return DiagramViolation{ErrorKind::DuplicatePosition, {a, b}, {},
                                "elements " + l.name(a) + " and " + l.name(b) + " share a position"};
  const auto& edges = l.cover_pairs();
  for (const auto& e : edges)
    if (!(d.y(e.first) < d.y(e.second)))
      return DiagramViolation{ErrorKind::NonMonotoneEdge, e, {},
                              "edge " + edge_text(l, e) + " does not rise"};
  for (std::size_t i = 0; i < edges.size(); ++i)
    for (std::size_t j = i + 1; j < edges.size(); ++j)
      if (edges_conflict(Coords{l, d.xs()}, edges[i], edges[j]))
        return DiagramViolation{ErrorKind::EdgeCrossing, edges[i], edges[j],
                                "edges " + edge_text(l, edges[i]) + " and " +
                                    edge_text(l, edges[j]) + " intersect"};
  return std::nullopt;
}

void require_valid(const Diagram& d) {
  if (auto v = validate_diagram(d)) throw LatticeError(v->kind, v->message);
}

DiagramRestriction restrict_diagram(const Diagram& d, const ElementSet& members) {
  Restriction r = restrict_to(d.lattice(), members);
  std::vector<Rational> x;
  x.reserve(r.origin.size());
  for (Element e : r.origin) x.push_back(d.x(e));
  return DiagramRestriction{Diagram(std::move(r.lattice), std::move(x)), std::move(r.origin)};
}

namespace {

// Negative when edge e->u leans further left than e->v.
int compare_direction(const Diagram& d, Element e, Element u, Element v) {
  Rational du_x = d.x(u) - d.x(e), du_y = d.y(u) - d.y(e);
  Rational dv_x = d.x(v) - d.x(e), dv_y = d.y(v) - d.y(e);
  return sign(du_x * dv_y - dv_x * du_y);
}

std::optional<Element> extreme_upper_cover(const Diagram& d, Element e, int want) {
  std::optional<Element> best;
  for (Element u : d.lattice().upper_covers(e)) {
    if (!best) {
      best = u;
      continue;
    }
    int c = compare_direction(d, e, u, *best);
    if (c == want || (c == 0 && u < *best)) best = u;
  }
  return best;
}

std::vector<Element> walk(const Diagram& d, bool left) {
  const Lattice& l = d.lattice();
  std::vector<Element> chain{l.bottom()};
  while (chain.back() != l.top()) {
    auto next = left ? leftmost_upper_cover(d, chain.back()) : rightmost_upper_cover(d, chain.back());
    chain.push_back(*next);
  }
  return chain;
}

std::vector<Element> corners_of(const Lattice& l, const std::vector<Element>& chain) {
  std::vector<Element> out;
  for (Element e : chain)
    if (e != l.bottom() && e != l.top() && is_doubly_irreducible(l, e)) out.push_back(e);
  return out;
}

}  // namespace

std::optional<Element> leftmost_upper_cover(const Diagram& d, Element e) {
  return extreme_upper_cover(d, e, -1);
}

std::optional<Element> rightmost_upper_cover(const Diagram& d, Element e) {
  return extreme_upper_cover(d, e, 1);
}

BoundaryData boundaries(const Diagram& d) {
  BoundaryData b;
  b.left_chain = walk(d, true);
  b.right_chain = walk(d, false);
  b.left_corners = corners_of(d.lattice(), b.left_chain);
  b.right_corners = corners_of(d.lattice(), b.right_chain);
  if (b.left_corners.size() == 1) b.u_left = b.left_corners.front();
  if (b.right_corners.size() == 1) b.u_right = b.right_corners.front();
  return b;
}

bool is_rectangular(const Diagram& d) {
  const Lattice& l = d.lattice();
  if (l.size() < 2 || !is_semimodular(l)) return false;
  BoundaryData b = boundaries(d);
  if (!b.u_left || !b.u_right) return false;
  return l.join(*b.u_left, *b.u_right) == l.top() && l.meet(*b.u_left, *b.u_right) == l.bottom();
}

bool is_patch(const Diagram& d) {
  const Lattice& l = d.lattice();
  if (l.size() == 2) return true;
  if (!is_rectangular(d)) return false;
  BoundaryData b = boundaries(d);
  return l.is_dual_atom(*b.u_left) && l.is_dual_atom(*b.u_right);
}

bool is_slim(const Diagram& d) {
  const Lattice& l = d.lattice();
  for (int o = 0; o < l.size(); ++o) {
    std::map<Element, int> tops;
    for (Element z : l.upper_covers(o))
      for (Element i : l.upper_covers(z))
        if (++tops[i] >= 3) return false;
  }
  return true;
}

namespace {

std::vector<Element> upper_boundary(const Diagram& d, bool left) {
  if (!is_rectangular(d))
    throw LatticeError(ErrorKind::NotRectangular, "upper boundary needs a rectangular diagram");
  BoundaryData b = boundaries(d);
  const auto& chain = left ? b.left_chain : b.right_chain;
  Element corner = left ? *b.u_left : *b.u_right;
  auto it = std::find(chain.begin(), chain.end(), corner);
  return {it, chain.end()};
}

// Atoms of [o, i], left to right.
std::vector<Element> atoms_between(const Diagram& d, Element o, Element i) {
  const Lattice& l = d.lattice();
  std::vector<Element> atoms;
  for (Element z : l.upper_covers(o))
    if (l.covers(z, i)) atoms.push_back(z);
  std::sort(atoms.begin(), atoms.end(), [&](Element a, Element b) {
    return d.x(a) != d.x(b) ? d.x(a) < d.x(b) : a < b;
  });
  return atoms;
}

}  // namespace

std::vector<Element> upper_left_boundary(const Diagram& d) { return upper_boundary(d, true); }
std::vector<Element> upper_right_boundary(const Diagram& d) { return upper_boundary(d, false); }

std::vector<Eye> find_eyes(const Diagram& d) {
  const Lattice& l = d.lattice();
  std::vector<Eye> out;
  for (int m = 0; m < l.size(); ++m) {
    if (!is_doubly_irreducible(l, m)) continue;
    Element o = l.lower_covers(m).front();
    Element i = l.upper_covers(m).front();
    auto atoms = atoms_between(d, o, i);
    if (atoms.size() < 3) continue;
    auto pos = std::find(atoms.begin(), atoms.end(), m) - atoms.begin();
    if (pos == 0 || pos + 1 == static_cast<std::ptrdiff_t>(atoms.size())) continue;
    out.push_back(Eye{m, EyeRecord{l.name(o), l.name(i), static_cast<int>(pos), l.name(m), d.x(m)}});
  }
  return out;
}

Diagram remove_element(const Diagram& d, Element e) {
  ElementSet keep;
  for (int z = 0; z < d.size(); ++z)
    if (z != e) keep.push_back(z);
  return restrict_diagram(d, keep).diagram;
}

SlimResult slim(const Diagram& d) {
  SlimResult r{d, {}};
  while (true) {
    auto eyes = find_eyes(r.diagram);
    if (eyes.empty()) break;
    r.diagram = remove_element(r.diagram, eyes.front().element);
    r.eyes.push_back(std::move(eyes.front().record));
  }
  return r;
}

namespace {

Diagram insert_eye(const Diagram& d, const EyeRecord& rec) {
  const Lattice& l = d.lattice();
  auto missing = [&](const std::string& why) {
    return LatticeError(ErrorKind::MissingAnchor,
                        "eye " + rec.label + " [" + rec.lower + ", " + rec.upper + "]: " + why);
  };
  auto lower = l.find(rec.lower);
  auto upper = l.find(rec.upper);
  if (!lower || !upper) throw missing("anchor not present");
  if (!l.less(*lower, *upper)) throw missing("anchors are not ordered");
  if (l.find(rec.label)) throw missing("label already present");
  auto atoms = atoms_between(d, *lower, *upper);
  if (atoms.size() < 2 || rec.slot < 1 || rec.slot >= static_cast<int>(atoms.size()))
    throw missing("slot not between two atoms");

  const Rational& left = d.x(atoms[rec.slot - 1]);
  const Rational& right = d.x(atoms[rec.slot]);
  std::vector<Rational> candidates;
  if (left < rec.x && rec.x < right) candidates.push_back(rec.x);
  candidates.push_back((left + right) / 2);

  std::vector<std::string> names = l.names();
  names.push_back(rec.label);
  std::vector<Cover> covers = l.cover_pairs();
  const Element m = l.size();
  covers.emplace_back(*lower, m);
  covers.emplace_back(m, *upper);
  Lattice grown = Lattice::from_covers(std::move(names), std::move(covers));
  for (const Rational& x : candidates) {
    std::vector<Rational> xs = d.xs();
    xs.push_back(x);
    Diagram out(grown, std::move(xs));
    if (!validate_diagram(out)) return out;
  }
  throw missing("no crossing-free position");
}

}  // namespace

Diagram restore_eyes(const Diagram& d, const std::vector<EyeRecord>& records) {
  Diagram out = d;
  for (auto it = records.rbegin(); it != records.rend(); ++it) out = insert_eye(out, *it);
  return out;
}

Diagram reflect(const Diagram& d) {
  std::vector<Rational> x = d.xs();
  for (auto& v : x) v = -v;
  return Diagram(d.lattice(), std::move(x));
}

std::optional<Diagram> synthesize_embedding(const Lattice& l, std::size_t max_size) {
  if (static_cast<std::size_t>(l.size()) > max_size)
    throw LatticeError(ErrorKind::SizeBoundExceeded,
                       std::to_string(l.size()) + " elements exceeds synthesis bound " +
                           std::to_string(max_size));
  int max_h = 0;
  for (int e = 0; e < l.size(); ++e) max_h = std::max(max_h, l.height(e));
  std::vector<std::vector<Element>> levels(max_h + 1);
  for (int e = 0; e < l.size(); ++e) levels[l.height(e)].push_back(e);

  std::vector<Rational> x(l.size(), Rational(0));
  // Edges grouped by the level of their upper endpoint.
  std::vector<std::vector<Cover>> edges_at(max_h + 1);
  for (const auto& c : l.cover_pairs()) edges_at[l.height(c.second)].push_back(c);

  auto place = [&](const std::vector<Element>& level) {
    const Rational half_span(static_cast<std::int64_t>(level.size()) - 1, 2);
    for (std::size_t i = 0; i < level.size(); ++i)
      x[level[i]] = Rational(static_cast<std::int64_t>(i)) - half_span;
  };

  auto search = [&](auto&& self, int h) -> bool {
    if (h > max_h) return true;
    std::vector<Element> level = levels[h];
    do {
      place(level);
      Coords probe{l, x};
      bool ok = true;
      for (std::size_t i = 0; i < edges_at[h].size() && ok; ++i)
        for (int g = 0; g <= h && ok; ++g)
          for (std::size_t j = 0; j < edges_at[g].size() && ok; ++j) {
            if (g == h && j <= i) continue;
            if (edges_conflict(probe, edges_at[h][i], edges_at[g][j])) ok = false;
          }
      if (ok && self(self, h + 1)) return true;
    } while (std::next_permutation(level.begin(), level.end()));
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  Diagram out(l, x);
  if (validate_diagram(out)) return std::nullopt;
  return out;
}

}  // namespace latpatch
