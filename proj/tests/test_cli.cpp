#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "commands.hpp"
#include "gv/io.hpp"

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("gv_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    int run(std::vector<std::string> args)
    {
        args.insert(args.begin(), "gvortex");
        std::vector<const char*> argv;
        for (const auto& a : args)
            argv.push_back(a.c_str());
        out_.str("");
        return gv::cli::run(static_cast<int>(argv.size()), argv.data(), out_);
    }

    void write(const std::string& name, const std::string& text) { gv::io::write_text(path(name), text); }
    std::string read(const std::string& name) const { return gv::io::read_text(path(name)); }

    void make_torus_case()
    {
        ASSERT_EQ(run({"gen", "--kind", "torus", "--rows", "8", "--cols", "8", "--out", path("g.json")}), 0);
        write("v.json", R"({"m":[{"vertex":"0_0","mult":1}],"n":[{"vertex":"4_4","mult":1}]})");
    }

    fs::path dir_;
    std::ostringstream out_;
};

} // namespace

TEST_F(Cli, GenCounts)
{
    ASSERT_EQ(run({"gen", "--kind", "torus", "--rows", "8", "--cols", "8", "--out", path("t.json")}), 0);
    const gv::WeightedGraph t = gv::io::read_graph(path("t.json"));
    EXPECT_EQ(t.vertex_count(), 64u);
    EXPECT_EQ(t.edge_count(), 128u);
    ASSERT_EQ(run({"gen", "--kind", "complete", "--n", "4", "--out", path("k.json")}), 0);
    EXPECT_EQ(gv::io::read_graph(path("k.json")).edge_count(), 6u);
}

TEST_F(Cli, SeededGenerationIsByteIdentical)
{
    const std::vector<std::string> args{"gen", "--kind", "random", "--n", "10", "--p", "0.3", "--seed", "7",
                                        "--random-mu", "--random-w", "--out"};
    auto a = args, b = args;
    a.push_back(path("a.json"));
    b.push_back(path("b.json"));
    ASSERT_EQ(run(a), 0);
    ASSERT_EQ(run(b), 0);
    EXPECT_EQ(read("a.json"), read("b.json"));
}

TEST_F(Cli, SolveThenCheck)
{
    make_torus_case();
    ASSERT_EQ(run({"solve", "--graph", path("g.json"), "--vortices", path("v.json"), "--a", "1", "--b", "2",
                   "--lambda", "1e4", "--out", path("s.json")}),
              0);
    EXPECT_NE(out_.str().find("sandwich_lower_u"), std::string::npos);
    ASSERT_EQ(run({"check", "--graph", path("g.json"), "--vortices", path("v.json"), "--solution", path("s.json"),
                   "--a", "1", "--b", "2"}),
              0)
        << out_.str();
    EXPECT_EQ(out_.str().find("FAIL"), std::string::npos);
}

TEST_F(Cli, PerturbedSolutionFailsTheResidualCheck)
{
    make_torus_case();
    ASSERT_EQ(run({"solve", "--graph", path("g.json"), "--vortices", path("v.json"), "--lambda", "1e4", "--out",
                   path("s.json")}),
              0);
    gv::io::SolutionFile s = gv::io::read_solution(path("s.json"));
    s.u[10] += 1e-3;
    write("bad.json", gv::io::format_solution(s));
    EXPECT_EQ(run({"check", "--graph", path("g.json"), "--vortices", path("v.json"), "--solution", path("bad.json")}),
              3);
    EXPECT_NE(out_.str().find("FAIL residual_1"), std::string::npos);
}

TEST_F(Cli, LengthMismatchIsAnInputError)
{
    make_torus_case();
    write("short.json", R"({"u":[0,0],"v":[0,0],"lambda":1,"residual":[0,0],"iterations":1,"outcome":"Converged"})");
    EXPECT_EQ(run({"check", "--graph", path("g.json"), "--vortices", path("v.json"), "--solution", path("short.json")}),
              2);
}

TEST_F(Cli, VortexFreeSolveIsZero)
{
    make_torus_case();
    write("none.json", "{}");
    ASSERT_EQ(run({"solve", "--graph", path("g.json"), "--vortices", path("none.json"), "--lambda", "5", "--out",
                   path("s.json")}),
              0);
    const gv::io::SolutionFile s = gv::io::read_solution(path("s.json"));
    for (double x : s.u)
        EXPECT_EQ(x, 0.0);
    for (double x : *s.v)
        EXPECT_EQ(x, 0.0);
}

TEST_F(Cli, SmallCouplingExitsNonzero)
{
    make_torus_case();
    EXPECT_EQ(run({"solve", "--graph", path("g.json"), "--vortices", path("v.json"), "--lambda", "0.01", "--out",
                   path("s.json")}),
              3);
    EXPECT_NE(out_.str().find("Diverged"), std::string::npos);
}

TEST_F(Cli, ScalarSolveAndCheck)
{
    make_torus_case();
    write("p.json", R"({"p":[{"vertex":"0_0","mult":1}]})");
    ASSERT_EQ(run({"solve", "--scalar", "--graph", path("g.json"), "--vortices", path("p.json"), "--lambda", "1e4",
                   "--out", path("s.json")}),
              0);
    EXPECT_EQ(run({"check", "--graph", path("g.json"), "--vortices", path("p.json"), "--solution", path("s.json")}), 0)
        << out_.str();
}

TEST_F(Cli, SweepWritesCsvAndLambdaCWritesBracket)
{
    make_torus_case();
    ASSERT_EQ(run({"sweep", "--graph", path("g.json"), "--vortices", path("v.json"), "--lambdas", "1e3,1e4,1e5",
                   "--jobs", "2", "--out", path("sweep.csv")}),
              0);
    const std::string csv = read("sweep.csv");
    EXPECT_EQ(csv.rfind("lambda,outcome,", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
    EXPECT_NE(out_.str().find("decay_rate_sup_dist_u"), std::string::npos);

    write("p.json", R"({"p":[{"vertex":"0_0","mult":1}]})");
    ASSERT_EQ(run({"lambda-c", "--graph", path("g.json"), "--vortices", path("p.json"), "--bracket", "0.0785,78.5",
                   "--width-tol", "0.01", "--out", path("b.json")}),
              0);
    const gv::LambdaCBracket b = gv::io::parse_bracket(read("b.json"));
    EXPECT_LE(b.hi - b.lo, 0.01);
}

TEST_F(Cli, MissingFileIsAnInputError)
{
    EXPECT_EQ(run({"solve", "--graph", path("nope.json"), "--vortices", path("v.json"), "--lambda", "1"}), 2);
    EXPECT_EQ(run({"solve", "--graph"}), 2);
}
