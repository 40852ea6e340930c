#include <gtest/gtest.h>

#include <algorithm>

#include "latpatch/io.hpp"
#include "latpatch/pipeline.hpp"
#include "support/builders.hpp"
#include "support/corpus.hpp"
#include "support/expect.hpp"

namespace latpatch {
namespace {

using namespace latpatch::testing;

TEST(Decompose, ThreeChain) {
  Decomposition d = decompose(c3());
  ASSERT_FALSE(d.tree.is_leaf());
  EXPECT_EQ(d.tree.chain_size(), 1u);
  EXPECT_TRUE(d.trace->fallback_used);
  auto seq = sequence_of(d.tree);
  ASSERT_EQ(seq.size(), 3u);
  EXPECT_EQ(seq[0].lattice.size(), 2);
  EXPECT_EQ(seq[1].lattice.size(), 2);
  EXPECT_EQ(seq[2].lattice.size(), 3);
  EXPECT_EQ(seq[2].parts, (std::pair<std::size_t, std::size_t>{1, 2}));
}

TEST(Decompose, DiamondIsALeaf) {
  Decomposition d = decompose(diamond_diagram(3));
  EXPECT_TRUE(d.tree.is_leaf());
  EXPECT_EQ(d.trace, nullptr);
}

TEST(Decompose, GridThreeByThree) {
  Decomposition d = decompose(grid_diagram(3, 3));
  EXPECT_EQ(d.tree.leaf_count(), 4u);
  std::vector<std::size_t> chains;
  auto seq = sequence_of(d.tree);
  for (const auto& e : seq) {
    if (e.parts)
      chains.push_back(e.chain_size);
    else
      EXPECT_TRUE(is_isomorphic(e.lattice.lattice(), lattice_of(b2_covers())));
  }
  std::sort(chains.begin(), chains.end());
  EXPECT_EQ(chains, (std::vector<std::size_t>{2, 2, 3}));
  EXPECT_EQ(d.tree.chain_size(), 3u);

  // [B2, B2, G(2,3), B2, B2, G(2,3), G(3,3)]
  ASSERT_EQ(seq.size(), 7u);
  const Lattice g23 = grid_diagram(2, 3).lattice();
  for (std::size_t i : {0u, 1u, 3u, 4u}) EXPECT_EQ(seq[i].lattice.size(), 4);
  for (std::size_t i : {2u, 5u}) EXPECT_TRUE(is_isomorphic(seq[i].lattice.lattice(), g23));
  EXPECT_EQ(seq[2].parts, (std::pair<std::size_t, std::size_t>{1, 2}));
  EXPECT_EQ(seq[5].parts, (std::pair<std::size_t, std::size_t>{4, 5}));
  EXPECT_EQ(seq[6].parts, (std::pair<std::size_t, std::size_t>{3, 6}));
  EXPECT_FALSE(verify_tree(d.tree, grid_diagram(3, 3)));
}

TEST(Decompose, Errors) {
  Diagram n5 = drawn(n5_covers(), {{"0", "0"}, {"x", "-1"}, {"y", "-1"}, {"z", "1"}, {"1", "0"}});
  EXPECT_EQ(thrown_kind([&] { decompose(n5); }), ErrorKind::NotSemimodular);
  Diagram one(Lattice::from_covers({"x"}, {}), {Rational(0)});
  EXPECT_EQ(thrown_kind([&] { decompose(one); }), ErrorKind::TooSmall);
}

TEST(VerifyTree, Violations) {
  Diagram c = c3();
  auto bad = verify_tree(DecompositionTree::leaf(c), c);
  ASSERT_TRUE(bad);
  EXPECT_NE(bad->find("leaf not patch"), std::string::npos);

  Decomposition g = decompose(grid_diagram(3, 3));
  bad = verify_tree(g.tree, grid_diagram(2, 3));
  ASSERT_TRUE(bad);
  EXPECT_NE(bad->find("root isomorphism"), std::string::npos);
}

TEST(VerifyTree, TamperedWitness) {
  Decomposition g = decompose(grid_diagram(2, 3));
  const DecompositionTree& t = g.tree;
  GluingWitness w = t.witness();
  w.chain.pop_back();
  DecompositionTree bad = DecompositionTree::glue(t.result(), w, t.ideal_part(), t.filter_part());
  auto v = verify_tree(bad, grid_diagram(2, 3));
  ASSERT_TRUE(v);
  EXPECT_NE(v->find("witness invalid"), std::string::npos);

  // Children swapped: labels no longer match A and B.
  DecompositionTree swapped =
      DecompositionTree::glue(t.result(), t.witness(), t.filter_part(), t.ideal_part());
  EXPECT_TRUE(verify_tree(swapped, grid_diagram(2, 3)));
}

TEST(BruteForce, Examples) {
  Lattice c = c3().lattice();
  auto w = brute_force_gluing_search(c);
  ASSERT_TRUE(w);
  EXPECT_EQ(labels(c, w->ideal), (std::vector<std::string>{"0", "b"}));
  EXPECT_EQ(labels(c, w->filter), (std::vector<std::string>{"b", "1"}));
  EXPECT_EQ(labels(c, w->chain), (std::vector<std::string>{"b"}));
  EXPECT_FALSE(brute_force_gluing_search(lattice_of(b2_covers())));
  EXPECT_FALSE(brute_force_gluing_search(diamond_diagram(3).lattice()));
  EXPECT_EQ(thrown_kind([] { brute_force_gluing_search(grid_diagram(3, 5).lattice()); }),
            ErrorKind::SizeBoundExceeded);
}

TEST(Sequence, SingleLeaf) {
  auto seq = sequence_of(DecompositionTree::leaf(b2()));
  ASSERT_EQ(seq.size(), 1u);
  EXPECT_FALSE(seq[0].parts);
}

TEST(Decompose, FallbackAboveOracleBound) {
  // C3 with a zero oracle bound exercises the principal-ideal search.
  Decomposition d = decompose(c3(), PipelineOptions{0, 16});
  EXPECT_TRUE(d.trace->fallback_used);
  EXPECT_FALSE(verify_tree(d.tree, c3()));
}

class PipelineCorpus : public ::testing::Test {
 protected:
  static const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> c = standard_corpus();
    return c;
  }
};

TEST_F(PipelineCorpus, DecomposeVerifies) {
  for (const auto& [name, d] : corpus()) {
    Decomposition dec = decompose(d);
    EXPECT_FALSE(verify_tree(dec.tree, d)) << name;
    auto seq = sequence_of(dec.tree);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (!seq[i].parts) {
        EXPECT_TRUE(is_patch(seq[i].lattice)) << name;
        continue;
      }
      EXPECT_LT(seq[i].parts->first, i + 1) << name;
      EXPECT_LT(seq[i].parts->second, i + 1) << name;
    }
    EXPECT_EQ(seq.back().lattice, d) << name;
  }
}

// Replaying slim, the extension steps and the cut from the input reproduces
// every lattice recorded in the trace.
TEST_F(PipelineCorpus, TraceReplays) {
  int traced = 0;
  for (const auto& [name, d] : corpus()) {
    Decomposition dec = decompose(d);
    if (!dec.trace) continue;
    const PipelineTrace& t = *dec.trace;
    SlimResult s = slim(d);
    EXPECT_EQ(s.diagram, t.slimmed) << name;
    ASSERT_EQ(s.eyes.size(), t.eyes.size()) << name;
    Diagram cur = s.diagram;
    for (const ExtensionStep& step : t.extension_steps)
      cur = *one_step_extension(cur, step.site).after;
    EXPECT_EQ(cur, t.extended) << name;
    if (t.cut) {
      DecompositionCut cut = decompose_at(cur, t.cut->x, t.cut->mode);
      EXPECT_EQ(cut.witness(), t.extended_witness) << name;
    }
    GluingWitness w = t.extended_witness;
    if (t.fallback_used) {
      // The fallback searches the slim lattice itself.
      EXPECT_EQ(w, t.slim_witness) << name;
      ++traced;
      continue;
    }
    for (auto it = t.extension_steps.rbegin(); it != t.extension_steps.rend(); ++it) {
      w = restrict_gluing(w, *it);
      EXPECT_TRUE(is_proper_witness(it->before->lattice(), w)) << name;
    }
    EXPECT_EQ(w, t.slim_witness) << name;
    EXPECT_EQ(restore_eyes(t.slimmed, t.eyes), restore_eyes(s.diagram, s.eyes)) << name;
    ++traced;
  }
  EXPECT_GT(traced, 50);
}

TEST_F(PipelineCorpus, DichotomyOnSmallLattices) {
  for (const auto& [name, d] : corpus()) {
    const bool patch = is_patch(d);
    auto w = brute_force_gluing_search(d.lattice());
    EXPECT_NE(patch, w.has_value()) << name;
    if (w) EXPECT_TRUE(is_proper_witness(d.lattice(), *w)) << name;
  }
}

}  // namespace
}  // namespace latpatch
