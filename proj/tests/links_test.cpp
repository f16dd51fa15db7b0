#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "connectif/connectif.hpp"

using namespace connectif;

namespace {

LinkExpression random_expr(std::mt19937_64& rng, int depth) {
  if (depth == 0 || rng() % 3 == 0) return LinkExpression::point(0);
  const std::size_t arity = 1 + rng() % 3;
  std::vector<LinkExpression> kids;
  for (std::size_t i = 0; i < arity + 1; ++i) kids.push_back(random_expr(rng, depth - 1));
  if (rng() % 2) return LinkExpression::necklace(std::move(kids));
  kids.erase(kids.begin() + static_cast<long>(arity), kids.end());
  return LinkExpression::split(std::move(kids));
}

LinkExpression random_necklace_expr(std::mt19937_64& rng, int depth) {
  if (depth == 0 || rng() % 3 == 0) return LinkExpression::point(0);
  std::vector<LinkExpression> kids;
  const std::size_t arity = 2 + rng() % 2;
  for (std::size_t i = 0; i < arity; ++i) kids.push_back(random_necklace_expr(rng, depth - 1));
  return LinkExpression::necklace(std::move(kids));
}

const char* kNestedChain = "N(N(N(N(N(N(N(N(.,.),.),.),.),.),.),.),.)";

}  // namespace

TEST(ParseLinkExpr, Examples) {
  const auto a = parse_link_expr("N(.,.,.)");
  EXPECT_EQ(a.kind(), LinkExpression::Kind::Necklace);
  EXPECT_EQ(a.children().size(), 3u);
  EXPECT_EQ(a.leaves(), (std::vector<unsigned>{1, 2, 3}));

  const auto b = parse_link_expr(" S( . , N(.,.) ) ");
  EXPECT_EQ(b.kind(), LinkExpression::Kind::Split);
  ASSERT_EQ(b.children().size(), 2u);
  EXPECT_EQ(b.children()[0].kind(), LinkExpression::Kind::Point);
  EXPECT_EQ(b.children()[1].kind(), LinkExpression::Kind::Necklace);
  EXPECT_EQ(b.to_string(), "S(.,N(.,.))");

  EXPECT_THROW(parse_link_expr("N(.)"), ArityError);
  EXPECT_EQ(parse_link_expr("S(.)").children().size(), 1u);
  EXPECT_EQ(parse_link_expr(".,N(.,.)").to_string(), "S(.,N(.,.))");
}

TEST(ParseLinkExpr, SyntaxErrors) {
  try {
    parse_link_expr("N(.,.");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 5u);
    EXPECT_EQ(e.expected(), "',' or ')'");
  }
  EXPECT_THROW(parse_link_expr(""), SyntaxError);
  EXPECT_THROW(parse_link_expr("X(.)"), SyntaxError);
  EXPECT_THROW(parse_link_expr("N .,.)"), SyntaxError);
  EXPECT_THROW(parse_link_expr("S()"), SyntaxError);
  EXPECT_THROW(parse_link_expr(". )"), SyntaxError);
}

TEST(LinkStructure, Examples) {
  EXPECT_EQ(link_structure(parse_link_expr("N(.,.,.)")), borromean());
  EXPECT_EQ(link_structure(parse_link_expr("S(.,.)")), discrete(2));
  const auto bb = link_structure(parse_link_expr("N(N(.,.,.),N(.,.,.),N(.,.,.))"));
  EXPECT_EQ(bb.kstar(), (std::vector<Subset>{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}, {1, 2, 3, 4, 5, 6, 7, 8, 9}}));
}

TEST(LinkOrder, Examples) {
  const auto chain = parse_link_expr(kNestedChain);
  EXPECT_EQ(chain.leaf_count(), 9u);
  EXPECT_EQ(link_order(chain), 8u);
  EXPECT_EQ(link_order(parse_link_expr("N(N(.,.,.),N(.,.,.),N(.,.,.))")), 2u);
  EXPECT_EQ(link_order(parse_link_expr(".")), 0u);
}

TEST(LinkStructure, NestedChainCuttingBehaviour) {
  // Cutting component k keeps 1..k-1 linked and frees k+1..n from each other.
  const auto s = link_structure(parse_link_expr(kNestedChain));
  for (unsigned k = 2; k <= 9; ++k) {
    Subset before;
    for (unsigned i = 1; i < k; ++i) before = before | singleton(i);
    if (before.size() >= 2) {
      EXPECT_TRUE(s.connected(before));
    }
    for (unsigned a = k + 1; a <= 9; ++a)
      for (unsigned b = a + 1; b <= 9; ++b) EXPECT_FALSE(s.connected(Subset({a, b})));
  }
}

TEST(LinkStructure, NecklaceIsBrunnianUnion) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<LinkExpression> kids;
    const std::size_t arity = 2 + rng() % 3;
    for (std::size_t i = 0; i < arity; ++i) kids.push_back(random_expr(rng, 3).renumbered());
    std::vector<ConnectivityStructure> parts;
    for (const auto& k : kids) parts.push_back(link_structure(k));
    const auto whole = LinkExpression::necklace(kids).renumbered();
    EXPECT_EQ(link_structure(whole), brunnian_union(parts));
  }
}

TEST(LinkStructure, SplitComponentsAreChildBlocks) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<LinkExpression> kids;
    const std::size_t arity = 1 + rng() % 4;
    std::vector<Subset> blocks;
    unsigned offset = 0;
    for (std::size_t i = 0; i < arity; ++i) {
      auto e = random_necklace_expr(rng, 3);
      const unsigned leaves = e.leaf_count();
      Subset b;
      for (unsigned j = 1; j <= leaves; ++j) b = b | singleton(offset + j);
      blocks.push_back(b);
      offset += leaves;
      kids.push_back(std::move(e));
    }
    const auto s = link_structure(LinkExpression::split(kids).renumbered());
    std::sort(blocks.begin(), blocks.end());
    EXPECT_EQ(components(s), blocks);
  }
}

TEST(LinkOrder, EqualsNecklaceHeight) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 300; ++trial) {
    const auto e = random_necklace_expr(rng, 4).renumbered();
    EXPECT_EQ(link_order(e), e.necklace_height()) << e.to_string();
  }
}

TEST(LinkStructure, KnotIsOnePointSpace) {
  EXPECT_EQ(link_structure(parse_link_expr(".")), discrete(1));
  EXPECT_EQ(link_structure(parse_link_expr("S(.)")), discrete(1));
  EXPECT_EQ(link_structure(parse_link_expr("S(S(.))")), discrete(1));
}

TEST(Realize, Examples) {
  const auto r1 = realize(borromean());
  ASSERT_TRUE(std::holds_alternative<LinkExpression>(r1));
  EXPECT_EQ(std::get<LinkExpression>(r1).to_string(), "N(.,.,.)");

  const auto r2 = realize(discrete(4));
  ASSERT_TRUE(std::holds_alternative<LinkExpression>(r2));
  EXPECT_EQ(std::get<LinkExpression>(r2).to_string(), "S(.,.,.,.)");

  const auto six = generate(GroundSet(6), {{1, 2}, {2, 3}, {4, 5}, {5, 6}, {1, 2, 3, 4, 5, 6}});
  EXPECT_EQ(free_generators(six), (std::vector<Subset>{{1, 2}, {2, 3}, {4, 5}, {5, 6}, {1, 2, 3, 4, 5, 6}}));
  const auto r3 = realize(six);
  ASSERT_TRUE(std::holds_alternative<NotRealizable>(r3));
  const auto& nr = std::get<NotRealizable>(r3);
  EXPECT_EQ(nr.reason, NotRealizable::Reason::Overlap);
  EXPECT_EQ(nr.first, Subset({1, 2}));
  EXPECT_EQ(nr.second, Subset({2, 3}));
}

TEST(Realize, UsesComponentLabels) {
  const auto s = make_structure(GroundSet(3), {{1, 3}});
  const auto r = realize(s);
  ASSERT_TRUE(std::holds_alternative<LinkExpression>(r));
  const auto& e = std::get<LinkExpression>(r);
  EXPECT_EQ(e.to_string(), "S(N(.,.),.)");
  EXPECT_EQ(e.leaves(), (std::vector<unsigned>{1, 3, 2}));
  EXPECT_EQ(link_structure(e), s);
}

TEST(Realize, ExactlyTheLaminarStructuresUpToFivePoints) {
  for (unsigned n = 1; n <= 5; ++n) {
    std::size_t realizable = 0;
    enumerate_free(GroundSet(n), [&](const FreeFamily&, const ConnectivityStructure& s) {
      bool per_component = true;
      for (Subset c : components(s)) {
        if (!is_iterated_brunnian(induced(s, c))) per_component = false;
      }
      const auto r = realize(s);
      const bool ok = std::holds_alternative<LinkExpression>(r);
      EXPECT_EQ(ok, per_component);
      if (ok) {
        ++realizable;
        EXPECT_EQ(link_structure(std::get<LinkExpression>(r)), s);
      } else {
        EXPECT_EQ(std::get<NotRealizable>(r).reason, NotRealizable::Reason::Overlap);
      }
    });
    EXPECT_GT(realizable, 0u);
  }
}

TEST(Realize, RoundTripOnIteratedBrunnianSpaces) {
  for (const char* text : {".", "(.,.)", "(.,.,.)", "((.,.),.)", "((.,.,.),(.,.,.),(.,.,.))", "(((.,.),.),(.,.))"}) {
    const auto s = iterated_brunnian(parse_tree(text));
    const auto r = realize(s);
    ASSERT_TRUE(std::holds_alternative<LinkExpression>(r)) << text;
    EXPECT_EQ(link_structure(std::get<LinkExpression>(r)), s);
  }
}

TEST(LinkStructure, RejectsBadNumbering) {
  const auto e = LinkExpression::necklace({LinkExpression::point(1), LinkExpression::point(1)});
  EXPECT_THROW(link_structure(e), OutOfDomain);
  EXPECT_THROW(LinkExpression::necklace({LinkExpression::point(1)}), BadArity);
}
