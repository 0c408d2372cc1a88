#include <gravhycom/nested_tree.hpp>

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace gravhycom;

namespace {

// independent count: all families of subsets that are laminar and contain the root
std::size_t brute_force_count(int n) {
    std::vector<LeafSet> subsets;
    for (int mask = 1; mask < (1 << n); ++mask) {
        if (__builtin_popcount(mask) < 2 || mask == (1 << n) - 1) continue;
        LeafSet s;
        for (int x = 0; x < n; ++x)
            if (mask >> x & 1) s.push_back(x + 1);
        subsets.push_back(s);
    }
    std::size_t count = 0;
    for (long long pick = 0; pick < (1LL << subsets.size()); ++pick) {
        std::vector<LeafSet> vs = {NestedTree::full_set(n)};
        for (std::size_t k = 0; k < subsets.size(); ++k)
            if (pick >> k & 1) vs.push_back(subsets[k]);
        try {
            NestedTree t(n, vs);
            ++count;
        } catch (const std::invalid_argument&) {
        }
    }
    return count;
}

}  // namespace

TEST(NestedTrees, Counts) {
    EXPECT_EQ(enumerate_nested_trees(2).size(), 1u);
    EXPECT_EQ(enumerate_nested_trees(3).size(), 4u);
    EXPECT_EQ(enumerate_nested_trees(4).size(), 26u);
    EXPECT_EQ(enumerate_nested_trees(4).size(), brute_force_count(4));
    EXPECT_EQ(enumerate_nested_trees(5).size(), 236u);
    EXPECT_THROW(enumerate_nested_trees(1), std::invalid_argument);
}

TEST(NestedTrees, EnumerationOrderAndUniqueness) {
    auto trees = enumerate_nested_trees(5);
    EXPECT_TRUE(std::is_sorted(trees.begin(), trees.end()));
    EXPECT_EQ(std::set<NestedTree>(trees.begin(), trees.end()).size(), trees.size());
    EXPECT_EQ(trees.front(), NestedTree::corolla(5));
}

TEST(NestedTrees, RejectsInvalidFamilies) {
    EXPECT_THROW(NestedTree(3, {{1, 2}}), std::invalid_argument);
    EXPECT_THROW(NestedTree(3, {{1, 2, 3}, {1, 2}, {2, 3}}), std::invalid_argument);
    EXPECT_THROW(NestedTree(3, {{1, 2, 3}, {1}}), std::invalid_argument);
    EXPECT_THROW(NestedTree(3, {{1, 2, 3}, {1, 2}, {1, 2}}), std::invalid_argument);
}

TEST(NestedTrees, GraftExample) {
    NestedTree s(5, {{1, 2, 3, 4, 5}, {1, 2}, {3, 4, 5}});
    NestedTree t(3, {{1, 2, 3}, {1, 2}});
    NestedTree expected(7, {{1, 2, 3, 4, 5, 6, 7}, {1, 2}, {3, 4, 5, 6, 7}, {3, 4, 5}, {3, 4}});
    EXPECT_EQ(graft(s, 3, t), expected);
    EXPECT_EQ(graft(NestedTree::corolla(3), 2, NestedTree::corolla(2)),
              NestedTree(4, {{1, 2, 3, 4}, {2, 3}}));
    EXPECT_THROW(graft(s, 6, t), std::invalid_argument);
    EXPECT_EQ(graft(s, 2, NestedTree::unit()), s);
    EXPECT_EQ(graft(NestedTree::unit(), 1, s), s);
}

TEST(NestedTrees, ContractEdge) {
    EXPECT_EQ(contract_edge(NestedTree(3, {{1, 2, 3}, {1, 2}}), {1, 2}), NestedTree::corolla(3));
    NestedTree chain(4, {{1, 2, 3, 4}, {1, 2, 3}, {1, 2}});
    EXPECT_EQ(contract_edge(chain, {1, 2, 3}), NestedTree(4, {{1, 2, 3, 4}, {1, 2}}));
    EXPECT_THROW(contract_edge(chain, {1, 2, 3, 4}), std::invalid_argument);
    for (const auto& t : enumerate_nested_trees(5)) {
        NestedTree c = t;
        while (c.vertices().size() > 1) c = contract_edge(c, c.dfs_order().back());
        EXPECT_EQ(c, NestedTree::corolla(5));
    }
}

TEST(NestedTrees, Valences) {
    NestedTree chain(4, {{1, 2, 3, 4}, {1, 2, 3}, {1, 2}});
    for (const auto& v : chain.vertices()) EXPECT_EQ(chain.valence(v), 2u);
    EXPECT_EQ(NestedTree::corolla(5).valence({1, 2, 3, 4, 5}), 5u);
    NestedTree s(5, {{1, 2, 3, 4, 5}, {1, 2}, {3, 4, 5}});
    EXPECT_EQ(s.valence(s.root()), 2u);
    EXPECT_THROW(s.valence({1, 3}), std::invalid_argument);
}

TEST(NestedTrees, ValenceSumAndEdgeCount) {
    for (int n = 2; n <= 6; ++n)
        for (const auto& t : enumerate_nested_trees(n)) {
            std::size_t sum = 0;
            for (const auto& v : t.vertices()) sum += t.valence(v) - 1;
            EXPECT_EQ(sum, static_cast<std::size_t>(n - 1));
            EXPECT_EQ(t.internal_edges(), t.vertices().size() - 1);
            EXPECT_EQ(t.dfs_order().size(), t.vertices().size());
        }
}

TEST(NestedTrees, GraftAssociativity) {
    std::vector<std::vector<NestedTree>> by_arity(4);
    for (int n = 2; n <= 3; ++n) by_arity[n] = enumerate_nested_trees(n);
    for (int p = 2; p <= 3; ++p)
        for (int q = 2; q <= 3; ++q)
            for (int r = 2; r <= 3; ++r)
                for (const auto& a : by_arity[p])
                    for (const auto& b : by_arity[q])
                        for (const auto& c : by_arity[r])
                            for (int i = 1; i <= p; ++i) {
                                for (int j = 1; j <= q; ++j)
                                    EXPECT_EQ(graft(graft(a, i, b), i + j - 1, c), graft(a, i, graft(b, j, c)));
                                for (int k = i + 1; k <= p; ++k)
                                    EXPECT_EQ(graft(graft(a, i, b), k + q - 1, c), graft(graft(a, k, c), i, b));
                            }
}

TEST(NestedTrees, DepthFirstOrder) {
    NestedTree s(7, {{1, 2, 3, 4, 5, 6, 7}, {1, 2}, {3, 4, 5, 6, 7}, {3, 4, 5}, {3, 4}});
    std::vector<LeafSet> expected = {{1, 2, 3, 4, 5, 6, 7}, {1, 2}, {3, 4, 5, 6, 7}, {3, 4, 5}, {3, 4}};
    EXPECT_EQ(s.dfs_order(), expected);
    EXPECT_EQ(s.parent({3, 4}), (LeafSet{3, 4, 5}));
    EXPECT_EQ(s.input_slot({3, 4, 5, 6, 7}, {6}), 2);
}
