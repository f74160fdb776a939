#include <gtest/gtest.h>

#include <map>

#include "bott/canonical.hpp"
#include "bott/random.hpp"
#include "test_util.hpp"

using namespace bott;
using testing_util::dag;
using testing_util::p3;
using testing_util::t3;

TEST(CanonicalForm, EdgelessIsZero)
{
    const auto form = canonical_form(Digraph::edgeless(3));
    EXPECT_EQ(form.code, CanonicalCode{});
    EXPECT_EQ(form.n, 3);
}

TEST(CanonicalForm, RelabelledPathAgrees)
{
    EXPECT_EQ(canonical_form(p3()).code, canonical_form(dag(3, {{2, 3}, {3, 1}})).code);
}

TEST(CanonicalForm, ArcAndEdgelessDiffer)
{
    EXPECT_NE(canonical_form(dag(2, {{1, 2}})).code, canonical_form(Digraph::edgeless(2)).code);
}

TEST(CanonicalForm, WitnessRealisesCode)
{
    DigraphSampler sampler(21);
    for (int t = 0; t < 500; ++t) {
        const Digraph d = sampler.dag(1, 12);
        const auto form = canonical_form(d);
        const Digraph relabelled = relabel(d, form.witness);
        EXPECT_EQ(relabelled, form.digraph());
        EXPECT_EQ(pack_upper_triangle(relabelled), form.code);
    }
}

TEST(CanonicalForm, CodeIsUpperTriangular)
{
    DigraphSampler sampler(22);
    for (int t = 0; t < 500; ++t) {
        const Digraph c = canonical_form(sampler.dag(1, 16)).digraph();
        for (const Arc& a : c.arcs())
            ASSERT_LT(a.from, a.to);
    }
}

TEST(CanonicalForm, InvariantUnderRelabelling)
{
    DigraphSampler sampler(23);
    for (int t = 0; t < 1000; ++t) {
        const Digraph d = sampler.dag(1, 16);
        const Permutation p = sampler.permutation(d.size());
        ASSERT_EQ(canonical_code(relabel(d, p)), canonical_code(d));
    }
}

TEST(CanonicalForm, PackRoundTrip)
{
    DigraphSampler sampler(24);
    for (int t = 0; t < 200; ++t) {
        const Digraph c = canonical_form(sampler.dag(1, 16)).digraph();
        EXPECT_EQ(unpack_upper_triangle(c.size(), pack_upper_triangle(c)), c);
    }
}

// Equal codes must coincide with brute-force isomorphism on every pair of
// labelled DAGs for n <= 4, and on every labelled DAG for n = 5.
class CanonicalCompleteness : public ::testing::TestWithParam<int> {};

TEST_P(CanonicalCompleteness, AgreesWithPermutationSearch)
{
    const int n = GetParam();
    std::map<std::uint64_t, CanonicalCode> code_of_class;
    std::map<CanonicalCode, std::uint64_t> class_of_code;
    for (const auto& m : oracle::labelled_dags(n)) {
        const std::uint64_t iso = oracle::iso_key(m);
        const CanonicalCode code = canonical_code(testing_util::from_matrix(m));
        auto [a, fresh_a] = code_of_class.emplace(iso, code);
        auto [b, fresh_b] = class_of_code.emplace(code, iso);
        ASSERT_EQ(a->second, code) << "isomorphic digraphs got different codes";
        ASSERT_EQ(b->second, iso) << "non-isomorphic digraphs share a code";
    }
}

INSTANTIATE_TEST_SUITE_P(SmallN, CanonicalCompleteness, ::testing::Values(1, 2, 3, 4, 5));

TEST(IsIsomorphic, Examples)
{
    EXPECT_FALSE(is_isomorphic(p3(), t3()));
    EXPECT_TRUE(is_isomorphic(dag(2, {{1, 2}}), dag(2, {{2, 1}})));
    EXPECT_FALSE(is_isomorphic(dag(3, {{1, 2}, {1, 3}}), dag(3, {{1, 3}, {2, 3}})));
    EXPECT_FALSE(is_isomorphic(Digraph::edgeless(2), Digraph::edgeless(3)));
}

TEST(CanonicalForm, SymmetricDigraphsFinish)
{
    // Disjoint arcs and large twin classes exercise the branching.
    EXPECT_EQ(canonical_code(Digraph::edgeless(16)), CanonicalCode{});
    std::vector<Arc> matching;
    for (int i = 0; i < 8; ++i)
        matching.push_back({i, i + 8});
    const Digraph m = from_arcs(16, matching);
    EXPECT_EQ(canonical_code(m), canonical_code(relabel(m, DigraphSampler(5).permutation(16))));
}
