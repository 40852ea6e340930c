#include "latpatch/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>
#include <unordered_map>

#include "latpatch/error.hpp"

namespace latpatch {

namespace {

std::string pair_text(const std::vector<std::string>& names, Element a, Element b) {
  return "(" + names[a] + ", " + names[b] + ")";
}

}  // namespace

Lattice Lattice::from_covers(std::vector<std::string> names, std::vector<Cover> covers) {
  const int n = static_cast<int>(names.size());
  if (n == 0) throw LatticeError(ErrorKind::NotBounded, "empty element set");

  for (const auto& [a, b] : covers) {
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw LatticeError(ErrorKind::UnknownElement, "cover index out of range");
    if (a == b) throw LatticeError(ErrorKind::CycleDetected, "self-cover at " + names[a]);
  }
  std::sort(covers.begin(), covers.end());
  covers.erase(std::unique(covers.begin(), covers.end()), covers.end());

  Lattice l;
  l.n_ = n;
  l.names_ = std::move(names);
  l.upper_.assign(n, {});
  l.lower_.assign(n, {});
  for (const auto& [a, b] : covers) {
    l.upper_[a].push_back(b);
    l.lower_[b].push_back(a);
  }

  // Kahn's algorithm; the smallest ready id goes first so the order is stable.
  std::vector<int> indeg(n);
  for (int v = 0; v < n; ++v) indeg[v] = static_cast<int>(l.lower_[v].size());
  std::vector<Element> topo;
  topo.reserve(n);
  std::vector<Element> ready;
  for (int v = n - 1; v >= 0; --v)
    if (indeg[v] == 0) ready.push_back(v);
  while (!ready.empty()) {
    std::sort(ready.begin(), ready.end(), std::greater<>());
    Element v = ready.back();
    ready.pop_back();
    topo.push_back(v);
    for (Element u : l.upper_[v])
      if (--indeg[u] == 0) ready.push_back(u);
  }
  if (static_cast<int>(topo.size()) != n)
    throw LatticeError(ErrorKind::CycleDetected, "cover relation has a cycle");

  l.leq_.assign(static_cast<std::size_t>(n) * n, 0);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    Element v = *it;
    l.leq_[l.idx(v, v)] = 1;
    for (Element u : l.upper_[v])
      for (int w = 0; w < n; ++w)
        if (l.leq_[l.idx(u, w)]) l.leq_[l.idx(v, w)] = 1;
  }

  for (const auto& [a, b] : covers) {
    for (int c = 0; c < n; ++c) {
      if (c != a && c != b && l.leq(a, c) && l.leq(c, b))
        throw LatticeError(ErrorKind::NotALattice,
                           "pair " + pair_text(l.names_, a, b) + " is not a cover (passes " +
                               l.names_[c] + ")");
    }
  }

  std::vector<Element> minimal, maximal;
  for (int v = 0; v < n; ++v) {
    if (l.lower_[v].empty()) minimal.push_back(v);
    if (l.upper_[v].empty()) maximal.push_back(v);
  }
  if (minimal.size() != 1) throw LatticeError(ErrorKind::NotBounded, "no unique bottom element");
  if (maximal.size() != 1) throw LatticeError(ErrorKind::NotBounded, "no unique top element");
  l.bottom_ = minimal.front();
  l.top_ = maximal.front();

  l.cov_.assign(static_cast<std::size_t>(n) * n, 0);
  for (const auto& [a, b] : covers) l.cov_[l.idx(a, b)] = 1;
  l.cover_list_ = std::move(covers);

  l.join_.assign(static_cast<std::size_t>(n) * n, -1);
  l.meet_.assign(static_cast<std::size_t>(n) * n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      // The first upper bound in topological order is minimal; it is the
      // join iff it lies below every other upper bound.
      Element lub = -1;
      for (Element u : topo) {
        if (l.leq(a, u) && l.leq(b, u)) {
          lub = u;
          break;
        }
      }
      for (int u = 0; u < n && lub >= 0; ++u)
        if (l.leq(a, u) && l.leq(b, u) && !l.leq(lub, u)) lub = -1;
      if (lub < 0)
        throw LatticeError(ErrorKind::NotALattice,
                           "pair " + pair_text(l.names_, a, b) + " has no least upper bound");
      Element glb = -1;
      for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        if (l.leq(*it, a) && l.leq(*it, b)) {
          glb = *it;
          break;
        }
      }
      for (int u = 0; u < n && glb >= 0; ++u)
        if (l.leq(u, a) && l.leq(u, b) && !l.leq(u, glb)) glb = -1;
      if (glb < 0)
        throw LatticeError(ErrorKind::NotALattice,
                           "pair " + pair_text(l.names_, a, b) + " has no greatest lower bound");
      l.join_[l.idx(a, b)] = l.join_[l.idx(b, a)] = lub;
      l.meet_[l.idx(a, b)] = l.meet_[l.idx(b, a)] = glb;
    }
  }

  l.height_.assign(n, 0);
  for (Element v : topo)
    for (Element u : l.upper_[v]) l.height_[u] = std::max(l.height_[u], l.height_[v] + 1);
  return l;
}

Lattice Lattice::from_labeled_covers(
    const std::vector<std::pair<std::string, std::string>>& covers) {
  std::vector<std::string> names;
  std::unordered_map<std::string, Element> ids;
  auto id_of = [&](const std::string& s) {
    auto [it, inserted] = ids.try_emplace(s, static_cast<Element>(names.size()));
    if (inserted) names.push_back(s);
    return it->second;
  };
  std::vector<Cover> pairs;
  for (const auto& [a, b] : covers) {
    Element ia = id_of(a);
    pairs.emplace_back(ia, id_of(b));
  }
  return from_covers(std::move(names), std::move(pairs));
}

std::optional<Element> Lattice::find(std::string_view label) const {
  for (int i = 0; i < n_; ++i)
    if (names_[i] == label) return i;
  return std::nullopt;
}

Element Lattice::at(std::string_view label) const {
  if (auto e = find(label)) return *e;
  throw LatticeError(ErrorKind::UnknownElement, "no element labeled " + std::string(label));
}

ElementSet normalized(ElementSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ElementSet all_elements(const Lattice& l) {
  ElementSet out(l.size());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

Restriction restrict_to(const Lattice& l, const ElementSet& members) {
  ElementSet s = normalized(members);
  if (s.empty()) throw LatticeError(ErrorKind::EmptySet, "cannot restrict to the empty set");
  const int m = static_cast<int>(s.size());
  std::vector<std::string> names;
  names.reserve(m);
  for (Element e : s) names.push_back(l.name(e));
  std::vector<Cover> covers;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (!l.less(s[i], s[j])) continue;
      bool direct = true;
      for (int k = 0; k < m && direct; ++k)
        if (l.less(s[i], s[k]) && l.less(s[k], s[j])) direct = false;
      if (direct) covers.emplace_back(i, j);
    }
  }
  return Restriction{Lattice::from_covers(std::move(names), std::move(covers)), std::move(s)};
}

ElementSet interval_members(const Lattice& l, Element a, Element b) {
  ElementSet out;
  for (int z = 0; z < l.size(); ++z)
    if (l.leq(a, z) && l.leq(z, b)) out.push_back(z);
  return out;
}

Restriction interval(const Lattice& l, Element a, Element b) {
  if (!l.leq(a, b))
    throw LatticeError(ErrorKind::NotComparable,
                       "interval needs " + l.name(a) + " <= " + l.name(b));
  return restrict_to(l, interval_members(l, a, b));
}

ElementSet down_set(const Lattice& l, Element a) { return interval_members(l, l.bottom(), a); }
ElementSet up_set(const Lattice& l, Element a) { return interval_members(l, a, l.top()); }

std::optional<std::pair<Element, Element>> semimodularity_witness(const Lattice& l) {
  for (int a = 0; a < l.size(); ++a)
    for (int b = 0; b < l.size(); ++b)
      if (l.covers(l.meet(a, b), a) && !l.covers(b, l.join(a, b))) return std::pair{a, b};
  return std::nullopt;
}

bool is_semimodular(const Lattice& l) { return !semimodularity_witness(l).has_value(); }

Irreducibility irreducibility(const Lattice& l, Element x) {
  Irreducibility r;
  r.join_irreducible = l.lower_covers(x).size() == 1;
  r.meet_irreducible = l.upper_covers(x).size() == 1;
  r.doubly_irreducible = r.join_irreducible && r.meet_irreducible;
  return r;
}

bool is_chain(const Lattice& l, const ElementSet& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!l.comparable(s[i], s[j])) return false;
  return true;
}

namespace {

std::vector<char> membership(const Lattice& l, const ElementSet& s) {
  std::vector<char> in(l.size(), 0);
  for (Element e : s) in.at(e) = 1;
  return in;
}

bool closed_under(const Lattice& l, const ElementSet& s, const std::vector<char>& in,
                  bool use_join) {
  for (Element a : s)
    for (Element b : s)
      if (!in[use_join ? l.join(a, b) : l.meet(a, b)]) return false;
  return true;
}

}  // namespace

bool is_ideal(const Lattice& l, const ElementSet& s) {
  if (s.empty()) return false;
  auto in = membership(l, s);
  for (Element e : s)
    for (int z = 0; z < l.size(); ++z)
      if (l.leq(z, e) && !in[z]) return false;
  return closed_under(l, s, in, true);
}

bool is_filter(const Lattice& l, const ElementSet& s) {
  if (s.empty()) return false;
  auto in = membership(l, s);
  for (Element e : s)
    for (int z = 0; z < l.size(); ++z)
      if (l.leq(e, z) && !in[z]) return false;
  return closed_under(l, s, in, false);
}

SubsetRoles classify_subset(const Lattice& l, const ElementSet& s) {
  if (s.empty()) throw LatticeError(ErrorKind::EmptySet, "subset is empty");
  ElementSet t = normalized(s);
  auto in = membership(l, t);
  SubsetRoles r;
  r.ideal = is_ideal(l, t);
  r.filter = is_filter(l, t);
  r.chain = is_chain(l, t);
  r.sublattice = closed_under(l, t, in, true) && closed_under(l, t, in, false);
  return r;
}

namespace {

// Joint colour refinement over both lattices so colours are comparable.
std::pair<std::vector<int>, std::vector<int>> refine_colours(const Lattice& a, const Lattice& b) {
  auto depth = [](const Lattice& l) {
    std::vector<int> d(l.size(), 0);
    std::vector<Element> order(l.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](Element x, Element y) { return l.height(x) > l.height(y); });
    for (Element v : order)
      for (Element u : l.upper_covers(v)) d[v] = std::max(d[v], d[u] + 1);
    return d;
  };

  std::vector<int> ca(a.size()), cb(b.size());
  {
    std::map<std::tuple<int, int, int, int>, int> ids;
    auto key = [](const Lattice& l, const std::vector<int>& d, Element e) {
      return std::tuple{l.height(e), static_cast<int>(l.lower_covers(e).size()),
                        static_cast<int>(l.upper_covers(e).size()), d[e]};
    };
    auto da = depth(a), db = depth(b);
    for (int e = 0; e < a.size(); ++e) ids.try_emplace(key(a, da, e), 0);
    for (int e = 0; e < b.size(); ++e) ids.try_emplace(key(b, db, e), 0);
    int next = 0;
    for (auto& [k, v] : ids) v = next++;
    for (int e = 0; e < a.size(); ++e) ca[e] = ids[key(a, da, e)];
    for (int e = 0; e < b.size(); ++e) cb[e] = ids[key(b, db, e)];
  }

  std::size_t classes = 0;
  while (true) {
    using Sig = std::tuple<int, std::vector<int>, std::vector<int>>;
    auto sig = [](const Lattice& l, const std::vector<int>& c, Element e) {
      std::vector<int> lo, up;
      for (Element x : l.lower_covers(e)) lo.push_back(c[x]);
      for (Element x : l.upper_covers(e)) up.push_back(c[x]);
      std::sort(lo.begin(), lo.end());
      std::sort(up.begin(), up.end());
      return Sig{c[e], std::move(lo), std::move(up)};
    };
    std::map<Sig, int> ids;
    std::vector<Sig> sa, sb;
    for (int e = 0; e < a.size(); ++e) sa.push_back(sig(a, ca, e));
    for (int e = 0; e < b.size(); ++e) sb.push_back(sig(b, cb, e));
    for (const auto& s : sa) ids.try_emplace(s, 0);
    for (const auto& s : sb) ids.try_emplace(s, 0);
    int next = 0;
    for (auto& [k, v] : ids) v = next++;
    for (int e = 0; e < a.size(); ++e) ca[e] = ids[sa[e]];
    for (int e = 0; e < b.size(); ++e) cb[e] = ids[sb[e]];
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  return {ca, cb};
}

}  // namespace

std::optional<std::vector<Element>> is_isomorphic(
    const Lattice& a, const Lattice& b, std::span<const std::pair<Element, Element>> fixed) {
  if (a.size() != b.size() || a.cover_pairs().size() != b.cover_pairs().size())
    return std::nullopt;
  const int n = a.size();
  auto [ca, cb] = refine_colours(a, b);
  {
    auto sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }

  std::vector<Element> image(n, -1);
  std::vector<char> used(n, 0);
  auto consistent = [&](Element x, Element y) {
    if (ca[x] != cb[y] || used[y]) return false;
    for (int u = 0; u < n; ++u) {
      if (image[u] < 0) continue;
      if (a.leq(u, x) != b.leq(image[u], y) || a.leq(x, u) != b.leq(y, image[u])) return false;
    }
    return true;
  };
  for (const auto& [x, y] : fixed) {
    if (x < 0 || x >= n || y < 0 || y >= n) return std::nullopt;
    if (image[x] == y) continue;
    if (image[x] >= 0 || !consistent(x, y)) return std::nullopt;
    image[x] = y;
    used[y] = 1;
  }

  // Assign the remaining elements of `a` in order of (colour class size, height).
  std::vector<int> class_size(n + 1 + *std::max_element(ca.begin(), ca.end()), 0);
  for (int c : ca) ++class_size[c];
  std::vector<Element> order;
  for (int e = 0; e < n; ++e)
    if (image[e] < 0) order.push_back(e);
  std::stable_sort(order.begin(), order.end(), [&](Element x, Element y) {
    return std::pair{class_size[ca[x]], a.height(x)} < std::pair{class_size[ca[y]], a.height(y)};
  });

  auto search = [&](auto&& self, std::size_t k) -> bool {
    if (k == order.size()) return true;
    Element x = order[k];
    for (int y = 0; y < n; ++y) {
      if (!consistent(x, y)) continue;
      image[x] = y;
      used[y] = 1;
      if (self(self, k + 1)) return true;
      image[x] = -1;
      used[y] = 0;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return image;
}

}  // namespace latpatch
