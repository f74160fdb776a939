#include <gtest/gtest.h>

#include <set>

#include "bott/random.hpp"
#include "bott/record.hpp"
#include "test_util.hpp"

using namespace bott;
using testing_util::dag;

TEST(FormatRecord, Examples)
{
    EXPECT_EQ(format_record(Digraph::edgeless(3)), "D3:000");
    EXPECT_EQ(format_record(testing_util::p3()), "D3:440");
    EXPECT_EQ(format_record(dag(2, {{1, 2}})), "D2:4");
    EXPECT_EQ(format_record(Digraph::edgeless(1)), "D1:0");
    EXPECT_EQ(format_record(dag(4, {{1, 4}})), "D4:1000");
}

TEST(ParseRecord, Examples)
{
    EXPECT_EQ(parse_record("D3:440"), testing_util::p3());
    EXPECT_EQ(parse_record("3:(1,2),(2,3)"), testing_util::p3());
    EXPECT_EQ(parse_record("3:"), Digraph::edgeless(3));
    EXPECT_EQ(parse_record("D2:4"), dag(2, {{1, 2}}));
}

TEST(ParseRecord, RejectsMalformedText)
{
    for (const char* bad : {"D2:F", "X3:000", "D3:00", "D3:0000", "D3:001", "D3:44a", "D3:440 ", "D3", "D0:",
                            "D17:0", "D:0", "3:(1,2", "3:(1,4)", "3:(2,2)", "3:(1,2)(2,3)", "3:(a,b)"})
        EXPECT_THROW(parse_record(bad), format_error) << bad;
}

TEST(ParseRecord, RejectsCycles)
{
    EXPECT_THROW(parse_record("D2:6"), cycle_error);
    EXPECT_THROW(parse_record("2:(1,2),(2,1)"), cycle_error);
}

TEST(ParseRecord, RoundTripsRandomDigraphs)
{
    DigraphSampler sampler(7);
    for (int t = 0; t < 10000; ++t) {
        const Digraph d = sampler.dag(1, max_vertices);
        const std::string text = format_record(d);
        ASSERT_EQ(parse_record(text), d) << text;
        ASSERT_EQ(format_record(parse_record(text)), text);
    }
}

TEST(FormatRecord, IsInjectiveOnSmallDigraphs)
{
    for (int n = 1; n <= 4; ++n) {
        std::set<std::string> seen;
        const auto all = oracle::labelled_dags(n);
        for (const auto& m : all)
            seen.insert(format_record(testing_util::from_matrix(m)));
        EXPECT_EQ(seen.size(), all.size());
    }
}
