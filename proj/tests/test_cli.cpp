#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "run_cli.hpp"

using testing_util::run_cli;
using json = nlohmann::json;

TEST(Cli, ClassifyReportsCounts)
{
    const auto r = run_cli("classify -n 5");
    ASSERT_EQ(r.exit_code, 0);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["n"], 5);
    EXPECT_EQ(j["dag_count"], 302);
    EXPECT_EQ(j["classes"], 54);
    EXPECT_EQ(j["orientable"], 8);
    EXPECT_EQ(j["symplectic"], 0);
    EXPECT_TRUE(j.contains("elapsed_ms"));
}

TEST(Cli, OmitTimingAndThreadsOption)
{
    const auto r = run_cli("classify -n 4 --omit-timing --threads 2");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out, "{\"n\":4,\"dag_count\":31,\"classes\":12,\"orientable\":3,\"symplectic\":2}\n");
}

TEST(Cli, ClassifyWritesRepresentatives)
{
    const std::string path = ::testing::TempDir() + "bott_reps.txt";
    const auto r = run_cli("classify -n 4 --filter symplectic --reps '" + path + "'");
    ASSERT_EQ(r.exit_code, 0);
    std::ifstream in(path);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) {
        ++lines;
        EXPECT_EQ(line.rfind("D4:", 0), 0u) << line;
        EXPECT_NE(line.find(' '), std::string::npos) << line;
    }
    EXPECT_EQ(lines, 2);

    const auto inv = run_cli("invariants --file '" + path + "'");
    ASSERT_EQ(inv.exit_code, 0);
    std::istringstream rows(inv.out);
    int parsed = 0;
    while (std::getline(rows, line)) {
        EXPECT_EQ(json::parse(line)["n"], 4);
        ++parsed;
    }
    EXPECT_EQ(parsed, 2);
    std::remove(path.c_str());
}

TEST(Cli, EnumerateListsClasses)
{
    const auto r = run_cli("enumerate -n 3");
    ASSERT_EQ(r.exit_code, 0);
    std::istringstream rows(r.out);
    std::string line;
    int count = 0;
    while (std::getline(rows, line))
        ++count;
    EXPECT_EQ(count, 6);
}

TEST(Cli, InvariantsJsonShape)
{
    const auto r = run_cli("invariants D3:440");
    ASSERT_EQ(r.exit_code, 0);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["n"], 3);
    EXPECT_EQ(j["level_sequence"], json::array({1, 1, 1}));
    EXPECT_EQ(j["rank"], 2);
    EXPECT_EQ(j["levelset_cut_ranks"].size(), 8u);
    EXPECT_EQ(j["consecutive_cut_ranks"], json::array({1, 1}));
    EXPECT_TRUE(j.contains("sibling_profile"));
    EXPECT_TRUE(j.contains("odd_height"));
}

TEST(Cli, EquivExitCodes)
{
    auto yes = run_cli("equiv D3:440 D3:640");
    EXPECT_EQ(yes.exit_code, 0);
    EXPECT_EQ(yes.out, "equivalent\n");
    auto no = run_cli("equiv '5:(1,2),(1,5),(3,4),(4,5)' '5:(1,2),(3,2),(3,4),(4,5)'");
    EXPECT_EQ(no.exit_code, 1);
    EXPECT_EQ(no.out, "not equivalent\n");
}

TEST(Cli, OrbitAndLimit)
{
    const auto r = run_cli("orbit D3:440");
    ASSERT_EQ(r.exit_code, 0);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["size"], 2);
    EXPECT_EQ(j["truncated"], false);
    EXPECT_EQ(j["members"].size(), 2u);

    const auto cut = run_cli("orbit '5:(1,2),(2,3),(3,4),(4,5)' --limit 2");
    EXPECT_EQ(cut.exit_code, 3);
    EXPECT_EQ(json::parse(cut.out)["truncated"], true);
}

TEST(Cli, CanonIsLabelIndependent)
{
    const auto a = run_cli("canon '3:(1,2),(2,3)'");
    const auto b = run_cli("canon '3:(3,1),(2,3)'");
    ASSERT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, SelftestPasses)
{
    const auto r = run_cli("selftest -n 8 --trials 200 --seed 5");
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.out.find("selftest passed"), std::string::npos);
}

TEST(Cli, ErrorsMapToExitCodes)
{
    EXPECT_EQ(run_cli("").exit_code, 2);
    EXPECT_EQ(run_cli("classify").exit_code, 2);
    EXPECT_EQ(run_cli("classify -n 40").exit_code, 2);
    EXPECT_EQ(run_cli("invariants D2:F").exit_code, 2);
    EXPECT_EQ(run_cli("invariants D2:6").exit_code, 2);
    EXPECT_EQ(run_cli("--mem-mb 1 classify -n 8").exit_code, 3);
}
