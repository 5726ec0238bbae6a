#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "oracle.hpp"

namespace hierprobe {
namespace {

using testing::BruteForceTree;

TEST(Taxonomy, BuildsMinimalTree) {
  TaxonomyRecord r{"t", {testing::concept_node("R"), testing::concept_node("a1"),
                         testing::concept_node("a2")},
                   {{"a1", "R"}, {"a2", "R"}}};
  const auto tax = Taxonomy::build(r);
  EXPECT_EQ(tax.root().id, "R");
  EXPECT_EQ(tax.size(), 3u);
  EXPECT_EQ(tax.height(), 1u);
  EXPECT_EQ(tax.children_of("R"), (std::vector<std::string>{"a1", "a2"}));
}

TEST(Taxonomy, EdgeDistanceOnSevenNodeTree) {
  const auto record = testing::seven_node_record();
  const auto tax = Taxonomy::build(record);
  const BruteForceTree oracle(record);

  EXPECT_EQ(tax.edge_distance("x1", "x1"), 0u);
  // Frozen from the breadth-first oracle.
  EXPECT_EQ(oracle.distance("x1", "A"), 2u);
  EXPECT_EQ(oracle.distance("x1", "a2"), 3u);
  EXPECT_EQ(oracle.distance("x1", "B"), 4u);
  EXPECT_EQ(tax.edge_distance("x1", "A"), 2u);
  EXPECT_EQ(tax.edge_distance("x1", "a2"), 3u);
  EXPECT_EQ(tax.edge_distance("x1", "B"), 4u);

  for (const auto& a : oracle.ids()) {
    for (const auto& b : oracle.ids()) {
      EXPECT_EQ(tax.edge_distance(a, b), oracle.distance(a, b)) << a << " " << b;
    }
  }
}

TEST(Taxonomy, EdgeDistanceUnknownNode) {
  const auto tax = Taxonomy::build(testing::seven_node_record());
  try {
    tax.edge_distance("x1", "nope");
    FAIL() << "expected UnknownNode";
  } catch (const TaxonomyError& e) {
    EXPECT_EQ(e.kind(), TaxonomyErrorKind::UnknownNode);
    EXPECT_EQ(e.node_id(), "nope");
  }
  EXPECT_THROW(tax.relations_of("nope"), TaxonomyError);
}

TEST(Taxonomy, RelationsOfLeaf) {
  const auto tax = Taxonomy::build(testing::seven_node_record());
  const auto rel = tax.relations_of("x1");
  EXPECT_EQ(rel.parent, "a1");
  EXPECT_EQ(rel.ancestor, "A");
  EXPECT_EQ(rel.siblings, std::vector<std::string>{"x2"});
  EXPECT_EQ(rel.far_relatives, std::vector<std::string>{"a2"});
}

TEST(Taxonomy, RelationsOfRoot) {
  const auto tax = Taxonomy::build(testing::seven_node_record());
  const auto rel = tax.relations_of("R");
  EXPECT_FALSE(rel.parent);
  EXPECT_FALSE(rel.ancestor);
  EXPECT_TRUE(rel.siblings.empty());
  EXPECT_TRUE(rel.far_relatives.empty());
}

TEST(Taxonomy, DepthOneNodeHasNoAncestor) {
  const auto tax = Taxonomy::build(testing::seven_node_record());
  const auto rel = tax.relations_of("A");
  EXPECT_EQ(rel.parent, "R");
  EXPECT_FALSE(rel.ancestor);
  EXPECT_EQ(rel.siblings, std::vector<std::string>{"B"});
  EXPECT_TRUE(rel.far_relatives.empty());
}

TEST(Taxonomy, FarRelativesIncludeCousins) {
  const auto tax = Taxonomy::build(testing::eight_node_record());
  const auto rel = tax.relations_of("x1");
  EXPECT_EQ(rel.far_relatives, (std::vector<std::string>{"a2", "y1"}));
  EXPECT_EQ(tax.edge_distance("x1", "a2"), 3u);
  EXPECT_EQ(tax.edge_distance("x1", "y1"), 4u);
}

TEST(Taxonomy, FarRelativesStopTwoEdgesBelowAncestor) {
  // Depth-2 node whose ancestor is the root of a height-3 tree: great-nephews
  // of the root sit 5 edges away and are not far relatives.
  const auto tax = Taxonomy::build(testing::seven_node_record());
  const auto rel = tax.relations_of("a1");
  EXPECT_EQ(rel.ancestor, "R");
  EXPECT_EQ(rel.far_relatives, std::vector<std::string>{"B"});
}

TEST(Taxonomy, RelationsMatchBruteForceOnRandomTrees) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto record = testing::random_tree_record(rng, "r" + std::to_string(i));
    const auto tax = Taxonomy::build(record);
    const BruteForceTree oracle(record);
    for (const auto& n : oracle.ids()) {
      for (auto kind : {RelationKind::Parent, RelationKind::Ancestor, RelationKind::Sibling,
                        RelationKind::FarRelative}) {
        std::vector<std::string> expected;
        for (const auto& x : oracle.ids()) {
          if (oracle.related(kind, n, x)) expected.push_back(x);
        }
        std::sort(expected.begin(), expected.end());
        ASSERT_EQ(tax.related(n, kind), expected) << record.taxonomy_id << " " << n;
      }
    }
  }
}

TEST(Taxonomy, RelationDistanceTableHoldsOnRandomTrees) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto tax = Taxonomy::build(testing::random_tree_record(rng, "r"));
    for (const auto& node : tax.nodes()) {
      const auto rel = tax.relations_of(node.id);
      std::set<std::string> seen;
      if (rel.parent) {
        EXPECT_EQ(tax.edge_distance(node.id, *rel.parent), 1u);
        seen.insert(*rel.parent);
      }
      if (rel.ancestor) {
        EXPECT_EQ(tax.edge_distance(node.id, *rel.ancestor), 2u);
        EXPECT_TRUE(seen.insert(*rel.ancestor).second);
      }
      EXPECT_EQ(rel.ancestor.has_value(), tax.depth(node.id) >= 2);
      for (const auto& s : rel.siblings) {
        EXPECT_EQ(tax.edge_distance(node.id, s), 2u);
        EXPECT_TRUE(seen.insert(s).second);
      }
      for (const auto& f : rel.far_relatives) {
        const auto d = tax.edge_distance(node.id, f);
        EXPECT_TRUE(d == 3 || d == 4) << d;
        EXPECT_TRUE(seen.insert(f).second);
      }
      EXPECT_FALSE(seen.contains(node.id));
    }
  }
}

TEST(Taxonomy, EdgeDistanceIsTreeMetric) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    const auto tax = Taxonomy::build(testing::random_tree_record(rng, "m", 4, 5, 25));
    for (const auto& a : tax.nodes()) {
      for (const auto& b : tax.nodes()) {
        const auto ab = tax.edge_distance(a.id, b.id);
        EXPECT_EQ(ab, tax.edge_distance(b.id, a.id));
        EXPECT_EQ(ab == 0, a.id == b.id);
        for (const auto& c : tax.nodes()) {
          EXPECT_LE(ab, tax.edge_distance(a.id, c.id) + tax.edge_distance(c.id, b.id));
        }
      }
    }
  }
}

TEST(Validate, ValidTreeHasNoViolations) {
  EXPECT_TRUE(validate(testing::seven_node_record()).empty());
}

TEST(Validate, EmptyName) {
  auto r = testing::seven_node_record();
  r.nodes[3].name.clear();
  EXPECT_EQ(validate(r), (std::vector<Violation>{{TaxonomyErrorKind::EmptyName, "a1"}}));
}

TEST(Validate, EmptyDefinitionIsLegal) {
  auto r = testing::seven_node_record();
  for (auto& n : r.nodes) n.definition.clear();
  EXPECT_TRUE(validate(r).empty());
}

TEST(Validate, Disconnected) {
  auto r = testing::seven_node_record();
  // p <-> q form a cycle hanging off nothing reachable from R.
  r.nodes.push_back(testing::concept_node("p"));
  r.nodes.push_back(testing::concept_node("q"));
  r.edges.emplace_back("p", "q");
  r.edges.emplace_back("q", "p");
  const auto v = validate(r);
  EXPECT_EQ(v, (std::vector<Violation>{{TaxonomyErrorKind::CycleDetected, "p"},
                                       {TaxonomyErrorKind::Disconnected, "p"},
                                       {TaxonomyErrorKind::Disconnected, "q"}}));
}

TEST(Validate, TwoCycle) {
  TaxonomyRecord r{"c", {testing::concept_node("a"), testing::concept_node("b")},
                   {{"a", "b"}, {"b", "a"}}};
  const auto v = validate(r);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v.front().kind, TaxonomyErrorKind::CycleDetected);
  try {
    Taxonomy::build(r);
    FAIL();
  } catch (const TaxonomyError& e) {
    EXPECT_EQ(e.kind(), TaxonomyErrorKind::CycleDetected);
    EXPECT_EQ(e.taxonomy_id(), "c");
  }
}

TEST(Validate, ChildWithTwoParents) {
  TaxonomyRecord r{"d",
                   {testing::concept_node("R"), testing::concept_node("S"),
                    testing::concept_node("a")},
                   {{"a", "R"}, {"a", "S"}, {"S", "R"}}};
  const auto v = validate(r);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v.front(), (Violation{TaxonomyErrorKind::ChildHasTwoParents, "a"}));
}

TEST(Validate, DuplicateIdUnknownEdgeAndRoots) {
  TaxonomyRecord dup{"x", {testing::concept_node("R"), testing::concept_node("R")}, {}};
  EXPECT_EQ(validate(dup).front(), (Violation{TaxonomyErrorKind::DuplicateNodeId, "R"}));

  TaxonomyRecord unknown{"x", {testing::concept_node("R")}, {{"ghost", "R"}}};
  EXPECT_EQ(validate(unknown).front(), (Violation{TaxonomyErrorKind::UnknownNodeInEdge, "ghost"}));

  TaxonomyRecord forest{"x", {testing::concept_node("R"), testing::concept_node("S")}, {}};
  EXPECT_EQ(validate(forest), (std::vector<Violation>{{TaxonomyErrorKind::MultipleRoots, "S"}}));
}

}  // namespace
}  // namespace hierprobe
