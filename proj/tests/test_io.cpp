#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "gv/error.hpp"
#include "gv/io.hpp"

using namespace gv;
using namespace gv::testing;

TEST(GraphFile, RoundTrip)
{
    const WeightedGraph g = make_random_connected(12, 0.3, 4, {true, true, 4});
    const std::string text = io::format_graph(g);
    const WeightedGraph back = io::parse_graph(text);
    EXPECT_EQ(back.ids(), g.ids());
    EXPECT_EQ(back.measure(), g.measure());
    EXPECT_EQ(back.edge_list(), g.edge_list());
    EXPECT_EQ(io::format_graph(back), text);
}

TEST(GraphFile, MalformedInput)
{
    EXPECT_THROW(io::parse_graph("{"), InputError);
    EXPECT_THROW(io::parse_graph("[]"), InputError);
    EXPECT_THROW(io::parse_graph(R"({"vertices":[{"id":"a","mu":1}]})"), InputError);
    EXPECT_THROW(io::parse_graph(R"({"vertices":[{"id":"a","mu":-1}],"edges":[]})"), InputError);
    EXPECT_THROW(io::parse_graph(R"({"vertices":[{"id":"a","mu":1},{"id":"b","mu":1}],"edges":[]})"), InputError);
    EXPECT_THROW(io::parse_graph(R"({"vertices":[{"id":"a","mu":"x"}],"edges":[]})"), InputError);
    EXPECT_THROW(io::read_graph("/nonexistent/graph.json"), InputError);
}

TEST(VortexFile, RoundTripAndOptionalKeys)
{
    const WeightedGraph g = path3();
    const io::SystemVortices vs = io::parse_system_vortices(
        g, R"({"m":[{"vertex":"x1","mult":1},{"vertex":"x1","mult":0.5}],"n":[{"vertex":"x3","mult":2}]})");
    EXPECT_DOUBLE_EQ(vs.m.total(), 1.5);
    EXPECT_DOUBLE_EQ(vs.n.at(2), 2.0);
    const io::SystemVortices back = io::parse_system_vortices(g, io::format_system_vortices(g, vs));
    EXPECT_DOUBLE_EQ(back.m.at(0), 1.5);
    EXPECT_TRUE(io::parse_system_vortices(g, R"({"m":[]})").n.empty());
    const ScalarVortexSet vp = io::parse_scalar_vortices(g, R"({"p":[{"vertex":"x2","mult":1}]})");
    EXPECT_DOUBLE_EQ(io::parse_scalar_vortices(g, io::format_scalar_vortices(g, vp)).at(1), 1.0);
    EXPECT_THROW(io::parse_system_vortices(g, R"({"m":[{"vertex":"q","mult":1}]})"), InputError);
    EXPECT_THROW(io::parse_system_vortices(g, R"({"m":[{"vertex":"x1","mult":0}]})"), InputError);
    EXPECT_THROW(io::parse_system_vortices(g, R"({"m":[["x1",1]]})"), InputError);
}

TEST(SolutionFile, RoundTripIsExact)
{
    io::SolutionFile s;
    s.u = {-1.0 / 3.0, std::numeric_limits<double>::denorm_min(), -1e300, 0.1};
    s.v = std::vector<double>{1e-17, -2.0, 3.0, std::nextafter(1.0, 2.0)};
    s.lambda = 1e4;
    s.residual = {9.1e-10, 8.7e-10};
    s.iterations = 241;
    s.outcome = Outcome::Converged;
    const std::string text = io::format_solution(s);
    const io::SolutionFile back = io::parse_solution(text);
    EXPECT_EQ(back.u, s.u);
    EXPECT_EQ(*back.v, *s.v);
    EXPECT_EQ(back.lambda, s.lambda);
    EXPECT_EQ(back.residual, s.residual);
    EXPECT_EQ(back.iterations, s.iterations);
    EXPECT_EQ(back.outcome, s.outcome);
    EXPECT_EQ(io::format_solution(back), text);
}

TEST(SolutionFile, ScalarFormHasNoSecondComponent)
{
    io::SolutionFile s;
    s.u = {0.0, -1.0};
    s.lambda = 2;
    s.residual = {0.0};
    s.outcome = Outcome::Diverged;
    const io::SolutionFile back = io::parse_solution(io::format_solution(s));
    EXPECT_FALSE(back.v.has_value());
    EXPECT_EQ(back.outcome, Outcome::Diverged);
}

TEST(SolutionFile, LengthMismatchIsRejected)
{
    EXPECT_THROW(io::parse_solution(R"({"u":[1,2],"v":[1],"lambda":1,"residual":[0,0],"iterations":1,"outcome":"Converged"})"),
                 InputError);
    EXPECT_THROW(io::parse_solution(R"({"u":[1],"lambda":1,"residual":[0],"iterations":1,"outcome":"Sideways"})"),
                 InputError);
}

TEST(SweepCsv, HeaderAndEmptyCells)
{
    SweepRecord r;
    r.lambda = 1000;
    r.outcome = Outcome::Diverged;
    r.iterations = 3;
    r.sup_dist_u = 0.5;
    const std::string csv = io::format_sweep_csv({r});
    EXPECT_EQ(csv,
              "lambda,outcome,iterations,sup_dist_u,sup_dist_v,bound_c,dist_err_1,dist_err_2,residual_1,residual_2\n"
              "1000,Diverged,3,0.5,0,,,,0,0\n");
}

TEST(BracketFile, RoundTrip)
{
    LambdaCBracket b;
    b.lo = 0.95;
    b.hi = 0.96;
    b.probes = {{0.1, Outcome::Diverged}, {10.0, Outcome::Converged}};
    b.tentative = true;
    const LambdaCBracket back = io::parse_bracket(io::format_bracket(b));
    EXPECT_EQ(back.lo, b.lo);
    EXPECT_EQ(back.hi, b.hi);
    ASSERT_EQ(back.probes.size(), 2u);
    EXPECT_EQ(back.probes[1].outcome, Outcome::Converged);
    EXPECT_TRUE(back.tentative);
}

TEST(Numbers, SeventeenDigits)
{
    EXPECT_EQ(io::format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(std::stod(io::format_number(-1.0 / 3.0)), -1.0 / 3.0);
}
