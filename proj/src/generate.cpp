#include <algorithm>
#include <numeric>
#include <random>

#include "latpatch/error.hpp"
#include "latpatch/io.hpp"
#include "latpatch/structure.hpp"

namespace latpatch {

Diagram chain_diagram(int n) {
  if (n < 1) throw LatticeError(ErrorKind::BadParams, "chain needs n >= 1");
  std::vector<std::string> names;
  std::vector<Cover> covers;
  for (int i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    if (i > 0) covers.emplace_back(i - 1, i);
  }
  return Diagram(Lattice::from_covers(std::move(names), std::move(covers)),
                 std::vector<Rational>(n, Rational(0)));
}

Diagram grid_diagram(int m, int n) {
  if (m < 1 || n < 1) throw LatticeError(ErrorKind::BadParams, "grid needs m, n >= 1");
  auto id = [n](int i, int j) { return i * n + j; };
  std::vector<std::string> names;
  std::vector<Rational> x;
  std::vector<Cover> covers;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      names.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
      x.emplace_back(i - j);
      if (i + 1 < m) covers.emplace_back(id(i, j), id(i + 1, j));
      if (j + 1 < n) covers.emplace_back(id(i, j), id(i, j + 1));
    }
  }
  return Diagram(Lattice::from_covers(std::move(names), std::move(covers)), std::move(x));
}

Diagram diamond_diagram(int k) {
  if (k < 1) throw LatticeError(ErrorKind::BadParams, "diamond needs k >= 1");
  std::vector<std::string> names{"0"};
  std::vector<Rational> x{Rational(0)};
  std::vector<Cover> covers;
  const Element top = k + 1;
  for (int i = 1; i <= k; ++i) {
    names.push_back("a" + std::to_string(i));
    x.push_back(Rational(2 * i - (k + 1), 2));
    covers.emplace_back(0, i);
    covers.emplace_back(i, top);
  }
  names.push_back("1");
  x.emplace_back(0);
  return Diagram(Lattice::from_covers(std::move(names), std::move(covers)), std::move(x));
}

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // mt19937_64 output is fully specified, so results match across platforms.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

 private:
  std::mt19937_64 engine_;
};

// Length of the longest top segment of `chain` whose lowest element has a
// chain as its up-set (reading the chain from the top down).
std::size_t top_chain_filter(const Lattice& l, const std::vector<Element>& chain) {
  std::size_t k = 0;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    if (!is_chain(l, up_set(l, *it))) break;
    ++k;
  }
  return k;
}

std::size_t bottom_chain_ideal(const Lattice& l, const std::vector<Element>& chain) {
  std::size_t k = 0;
  for (Element e : chain) {
    if (!is_chain(l, down_set(l, e))) break;
    ++k;
  }
  return k;
}

bool acceptable(const Diagram& d) { return is_semimodular(d.lattice()) && !validate_diagram(d); }

// Glues `lower` below `upper`, identifying k elements at the top of lower's
// right boundary with k elements at the bottom of upper's left boundary.
std::optional<Diagram> glue_boundaries(const Diagram& lower, const Diagram& upper, std::size_t k) {
  auto right = boundaries(lower).right_chain;
  auto left = boundaries(upper).left_chain;
  if (k == 0 || k > top_chain_filter(lower.lattice(), right) ||
      k > bottom_chain_ideal(upper.lattice(), left))
    return std::nullopt;
  std::vector<std::pair<Element, Element>> iso;
  for (std::size_t i = 0; i < k; ++i) iso.emplace_back(right[right.size() - k + i], left[i]);
  try {
    Diagram out = glue_over_chain(lower, upper, iso, 0).diagram;
    if (acceptable(out)) return out;
  } catch (const LatticeError&) {
  }
  return std::nullopt;
}

std::optional<Diagram> insert_square_eye(const Diagram& d, Rng& rng) {
  const Lattice& l = d.lattice();
  struct Square {
    Element o, a, b, i;
  };
  std::vector<Square> squares;
  for (int o = 0; o < l.size(); ++o) {
    for (int i = 0; i < l.size(); ++i) {
      std::vector<Element> atoms;
      for (Element z : l.upper_covers(o))
        if (l.covers(z, i)) atoms.push_back(z);
      if (atoms.size() == 2) squares.push_back({o, atoms[0], atoms[1], i});
    }
  }
  if (squares.empty()) return std::nullopt;
  const Square& s = squares[rng.below(squares.size())];
  std::string label = "m";
  for (int k = 1; l.find(label); ++k) label = "m" + std::to_string(k);
  std::vector<std::string> names = l.names();
  names.push_back(label);
  std::vector<Cover> covers = l.cover_pairs();
  const Element m = l.size();
  covers.emplace_back(s.o, m);
  covers.emplace_back(m, s.i);
  std::vector<Rational> x = d.xs();
  x.push_back((d.x(s.a) + d.x(s.b)) / 2);
  Diagram out(Lattice::from_covers(std::move(names), std::move(covers)), std::move(x));
  if (!acceptable(out)) return std::nullopt;
  return out;
}

Diagram small_piece(Rng& rng, int budget) {
  // Pieces that add at most `budget` elements beyond a one-element overlap.
  switch (rng.below(budget >= 3 ? 4 : 2)) {
    case 0: return chain_diagram(2);
    case 1: return chain_diagram(std::min(2 + static_cast<int>(rng.below(3)), budget + 1));
    case 2: return grid_diagram(2, 2);
    default: return rng.below(2) ? grid_diagram(2, 3) : grid_diagram(3, 2);
  }
}

// Relabels as v0, v1, ... in order of (height, x) so the output does not
// depend on which operations produced it.
Diagram canonical_labels(const Diagram& d) {
  const Lattice& l = d.lattice();
  std::vector<Element> order(l.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Element a, Element b) {
    if (l.height(a) != l.height(b)) return l.height(a) < l.height(b);
    return d.x(a) < d.x(b);
  });
  std::vector<Element> rank(l.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<Element>(i);
  std::vector<std::string> names;
  std::vector<Rational> x;
  for (std::size_t i = 0; i < order.size(); ++i) {
    names.push_back("v" + std::to_string(i));
    x.push_back(d.x(order[i]));
  }
  std::vector<Cover> covers;
  for (const auto& [a, b] : l.cover_pairs()) covers.emplace_back(rank[a], rank[b]);
  return Diagram(Lattice::from_covers(std::move(names), std::move(covers)), std::move(x));
}

}  // namespace

Diagram random_sps_diagram(int size, std::uint64_t seed) {
  if (size < 2) throw LatticeError(ErrorKind::BadParams, "random-sps needs size >= 2");
  Rng rng(seed);
  Diagram cur = chain_diagram(2);
  switch (rng.below(4)) {
    case 1:
      if (size >= 4) cur = grid_diagram(2, 2);
      break;
    case 2:
      if (size >= 6) cur = grid_diagram(2, 3);
      break;
    case 3:
      if (size >= 9) cur = grid_diagram(3, 3);
      break;
    default:
      break;
  }
  while (cur.size() < size) {
    const int remaining = size - cur.size();
    std::optional<Diagram> next;
    switch (rng.below(5)) {
      case 0: {
        auto sites = find_extension_sites(cur);
        if (sites.empty()) break;
        Diagram out = *one_step_extension(cur, sites[rng.below(sites.size())]).after;
        if (acceptable(out)) next = std::move(out);
        break;
      }
      case 1:
        next = insert_square_eye(cur, rng);
        break;
      case 2: {
        if (!is_slim(cur) || is_rectangular(cur)) break;
        try {
          Diagram out = rectangularize(cur).diagram;
          if (out.size() <= size && acceptable(out)) next = std::move(out);
        } catch (const LatticeError&) {
        }
        break;
      }
      default: {
        Diagram piece = small_piece(rng, remaining);
        if (rng.below(2)) piece = reflect(piece);
        const bool piece_on_top = rng.below(2) == 0;
        const Diagram& lower = piece_on_top ? cur : piece;
        const Diagram& upper = piece_on_top ? piece : cur;
        std::size_t max_k = std::min(
            top_chain_filter(lower.lattice(), boundaries(lower).right_chain),
            bottom_chain_ideal(upper.lattice(), boundaries(upper).left_chain));
        if (max_k == 0) break;
        std::size_t k = 1 + rng.below(max_k);
        if (piece.size() - static_cast<int>(k) > remaining || piece.size() <= static_cast<int>(k))
          break;
        next = glue_boundaries(lower, upper, k);
        break;
      }
    }
    if (!next) {
      // Stacking a two-element chain on the top always stays in the class.
      next = glue_boundaries(cur, chain_diagram(2), 1);
    }
    cur = std::move(*next);
  }
  return canonical_labels(cur);
}

Diagram generate(std::string_view kind, const std::vector<int>& params, std::uint64_t seed) {
  auto need = [&](std::size_t count) {
    if (params.size() != count)
      throw LatticeError(ErrorKind::BadParams, std::string(kind) + " takes " +
                                                   std::to_string(count) + " parameter(s)");
  };
  if (kind == "chain") {
    need(1);
    return chain_diagram(params[0]);
  }
  if (kind == "grid") {
    need(2);
    return grid_diagram(params[0], params[1]);
  }
  if (kind == "diamond") {
    need(1);
    return diamond_diagram(params[0]);
  }
  if (kind == "random-sps") {
    need(1);
    return random_sps_diagram(params[0], seed);
  }
  throw LatticeError(ErrorKind::BadParams, "unknown generator " + std::string(kind));
}

}  // namespace latpatch
