#include <gtest/gtest.h>

#include "bott/invariants.hpp"
#include "bott/random.hpp"
#include "test_util.hpp"

using namespace bott;
using testing_util::dag;
using testing_util::p3;
using testing_util::t3;

TEST(Levels, Examples)
{
    EXPECT_EQ(levels(p3()).sequence, (std::vector<int>{1, 1, 1}));
    EXPECT_EQ(levels(Digraph::edgeless(3)).sequence, (std::vector<int>{3, 0, 0}));
    const auto fig = levels(testing_util::figure2_left());
    EXPECT_EQ(fig.sequence, (std::vector<int>{2, 2, 1, 0, 0}));
    EXPECT_EQ(fig.level_of, (std::vector<int>{0, 1, 0, 1, 2}));
    EXPECT_EQ(fig.height(), 3);
}

TEST(Levels, InNeighboursSitBelow)
{
    DigraphSampler sampler(41);
    for (int t = 0; t < 1000; ++t) {
        const Digraph d = sampler.dag(1, 12);
        const auto ls = levels(d);
        int total = 0;
        for (int c : ls.sequence)
            total += c;
        ASSERT_EQ(total, d.size());
        for (int v = 0; v < d.size(); ++v) {
            bool has_parent_one_below = ls.level_of[v] == 0;
            for_each_bit(d.in_neighbors(v), [&](int u) {
                ASSERT_LT(ls.level_of[u], ls.level_of[v]);
                has_parent_one_below |= ls.level_of[u] == ls.level_of[v] - 1;
            });
            ASSERT_TRUE(has_parent_one_below);
        }
    }
}

TEST(CutRank, Examples)
{
    EXPECT_EQ(cut_rank(p3(), IndexSet{0}, IndexSet{1, 2}), 1);
    EXPECT_EQ(cut_rank(Digraph::edgeless(4), IndexSet{0, 3}, IndexSet{1, 2}), 0);
    EXPECT_EQ(cut_rank(t3(), IndexSet{0, 1}, IndexSet{2}), 1);
    EXPECT_EQ(cut_rank(p3(), IndexSet{0}), 1);
    EXPECT_THROW(cut_rank(p3(), IndexSet{0}, IndexSet{3}), range_error);
}

TEST(SiblingGroups, Examples)
{
    using Profile = std::vector<std::vector<int>>;
    EXPECT_EQ(sibling_groups(Digraph::edgeless(4)).sizes_by_level, (Profile{{4}}));
    EXPECT_EQ(sibling_groups(dag(3, {{1, 2}, {1, 3}})).sizes_by_level, (Profile{{1}, {2}}));
    EXPECT_EQ(sibling_groups(dag(4, {{1, 2}, {1, 3}, {2, 4}})).sizes_by_level, (Profile{{1}, {2}, {1}}));
    // Roots {1,5} share the empty set; level 1 holds {2,3} under 1 and {4} under 1 and 5.
    EXPECT_EQ(sibling_groups(dag(5, {{1, 2}, {1, 3}, {1, 4}, {5, 4}})).sizes_by_level, (Profile{{2}, {2, 1}}));
}

TEST(OddHeight, Examples)
{
    EXPECT_TRUE(odd_height(Digraph::edgeless(3)).is_infinite());
    EXPECT_EQ(odd_height(dag(2, {{1, 2}})), OddHeight::at(0));
    EXPECT_EQ(odd_height(p3()), OddHeight::at(1));
}

TEST(Orientable, Examples)
{
    EXPECT_TRUE(is_orientable(Digraph::edgeless(5)));
    EXPECT_FALSE(is_orientable(dag(2, {{1, 2}})));
    EXPECT_TRUE(is_orientable(dag(3, {{1, 2}, {1, 3}})));
}

TEST(Orientable, SameAsInfiniteOddHeight)
{
    DigraphSampler sampler(42);
    for (int t = 0; t < 1000; ++t) {
        const Digraph d = sampler.dag(1, 10);
        ASSERT_EQ(is_orientable(d), odd_height(d).is_infinite());
    }
}

TEST(Symplectic, Examples)
{
    EXPECT_TRUE(is_symplectic(Digraph::edgeless(2)));
    EXPECT_FALSE(is_symplectic(Digraph::edgeless(3)));
    EXPECT_FALSE(is_symplectic(dag(4, {{1, 2}, {1, 3}, {2, 4}})));
    EXPECT_TRUE(is_symplectic(dag(4, {{1, 3}, {1, 4}, {2, 3}, {2, 4}})));
}

TEST(Symplectic, ImpliesOrientableExhaustive)
{
    for (int n = 1; n <= 5; ++n) {
        int symplectic = 0;
        for (const auto& m : oracle::labelled_dags(n)) {
            const Digraph d = testing_util::from_matrix(m);
            ASSERT_EQ(is_symplectic(d), oracle::symplectic(m));
            ASSERT_EQ(is_orientable(d), oracle::orientable(m));
            if (is_symplectic(d)) {
                ++symplectic;
                ASSERT_TRUE(is_orientable(d));
            }
        }
        if (n % 2 == 1)
            EXPECT_EQ(symplectic, 0);
        else
            EXPECT_GT(symplectic, 0);
    }
}

TEST(Fingerprint, Edgeless)
{
    const auto fp = fingerprint(Digraph::edgeless(2));
    EXPECT_EQ(fp.level_sequence, (std::vector<int>{2, 0}));
    EXPECT_EQ(fp.rank, 0);
    EXPECT_EQ(fp.levelset_cut_ranks, (std::vector<int>{0, 0}));
    EXPECT_EQ(fp.consecutive_cut_ranks, (std::vector<int>{0}));
    EXPECT_EQ(fp.sibling_profile.sizes_by_level, (std::vector<std::vector<int>>{{2}}));
    EXPECT_TRUE(fp.odd_height.is_infinite());
}

TEST(Fingerprint, Path)
{
    const auto fp = fingerprint(p3());
    EXPECT_EQ(fp.level_sequence, (std::vector<int>{1, 1, 1}));
    EXPECT_EQ(fp.rank, 2);
    // Subset bit i selects level i; ranks worked out by hand.
    EXPECT_EQ(fp.levelset_cut_ranks, (std::vector<int>{0, 1, 1, 1, 0, 1, 0, 0}));
    EXPECT_EQ(fp.consecutive_cut_ranks, (std::vector<int>{1, 1}));
    EXPECT_EQ(fp.sibling_profile.sizes_by_level, (std::vector<std::vector<int>>{{1}, {1}, {1}}));
    EXPECT_EQ(fp.odd_height, OddHeight::at(1));
}

TEST(Fingerprint, FigureTwoPairAgrees)
{
    const auto left = fingerprint(testing_util::figure2_left());
    const auto right = fingerprint(testing_util::figure2_right());
    EXPECT_EQ(left, right);
    EXPECT_EQ(left.digest(), right.digest());
}

TEST(Fingerprint, ConstantUnderMovesAndRelabelling)
{
    DigraphSampler sampler(43);
    for (int t = 0; t < 1000; ++t) {
        const Digraph d = sampler.dag(1, 8);
        const auto fp = fingerprint(d);
        for (int v = 0; v < d.size(); ++v)
            ASSERT_EQ(fingerprint(local_complement(d, v)), fp);
        for (int v = 0; v < d.size(); ++v)
            for (int w = 0; w < d.size(); ++w)
                if (v != w && d.in_neighbors(v) == d.in_neighbors(w))
                    ASSERT_EQ(fingerprint(slide(d, v, w)), fp);
        ASSERT_EQ(fingerprint(relabel(d, sampler.permutation(d.size()))), fp);
    }
}

TEST(Fingerprint, ConsecutiveCutRankIdentity)
{
    // rho(L_i, L_{i+1}) equals the cut-rank of L_i together with L_{i+2}, ...
    DigraphSampler sampler(44);
    for (int t = 0; t < 1000; ++t) {
        const Digraph d = sampler.dag(2, 10);
        const auto ls = levels(d);
        for (int i = 0; i + 1 < d.size(); ++i) {
            Row x = ls.members(i);
            for (int j = i + 2; j < d.size(); ++j)
                x |= ls.members(j);
            ASSERT_EQ(cut_rank(d, IndexSet::from_mask(ls.members(i)), IndexSet::from_mask(ls.members(i + 1))),
                      cut_rank(d, IndexSet::from_mask(x)));
        }
    }
}

TEST(Fingerprint, DigestDistinguishesShapes)
{
    EXPECT_NE(fingerprint(dag(2, {{1, 2}})).digest(), fingerprint(Digraph::edgeless(2)).digest());
    EXPECT_NE(fingerprint(Digraph::edgeless(2)).digest(), fingerprint(Digraph::edgeless(3)).digest());
}
