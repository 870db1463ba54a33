#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "gv/error.hpp"
#include "gv/linops.hpp"
#include "gv/solver.hpp"

using namespace gv;
using namespace gv::testing;

TEST(Outcome, RoundTripsNames)
{
    for (Outcome o : {Outcome::Converged, Outcome::Diverged, Outcome::MaxIterations})
        EXPECT_EQ(outcome_from_string(to_string(o)), o);
    EXPECT_THROW(outcome_from_string("Unknown"), InputError);
}

TEST(Options, Validation)
{
    IterationOptions o;
    EXPECT_NO_THROW(o.validate());
    o.max_iter = 0;
    EXPECT_THROW(o.validate(), InputError);
    o = {};
    o.step_tol = -1;
    EXPECT_THROW(o.validate(), InputError);
}

TEST(Background, TwoVertex)
{
    const WeightedGraph g = two_vertex();
    const VortexSet vm(g, std::vector<std::pair<std::string, double>>{{"x1", 1.0}});
    const BackgroundPair bg = background_pair(g, vm, VortexSet{});
    EXPECT_NEAR(bg.u0[0], -kPi, 1e-14);
    EXPECT_NEAR(bg.u0[1], kPi, 1e-14);
    EXPECT_EQ(bg.v0.sup_norm(), 0.0);
}

TEST(Background, SolvesThePoissonProblem)
{
    const TorusCase tc;
    const BackgroundPair bg = background_pair(tc.g, tc.vm, tc.vn);
    EXPECT_LE((mu_laplacian(tc.g, bg.u0) - vortex_rhs(tc.g, tc.vm).total()).sup_norm(), 1e-10);
    EXPECT_LE((mu_laplacian(tc.g, bg.v0) - vortex_rhs(tc.g, tc.vn).total()).sup_norm(), 1e-10);
    EXPECT_LE(std::abs(integrate(tc.g, bg.u0)), 1e-12);
    EXPECT_LE(std::abs(integrate(tc.g, bg.v0)), 1e-12);
    // Logarithmic well at the vortex.
    EXPECT_EQ(bg.u0.min(), bg.u0[tc.g.index_of("0_0")]);
}

TEST(IterateSystem, NoVorticesStopsImmediately)
{
    const WeightedGraph g = make_torus(4, 4);
    const BackgroundPair bg = background_pair(g, {}, {});
    const SystemSolution sol = iterate_system(g, ModelParams(1, 2, 10), bg, {}, {});
    EXPECT_EQ(sol.report.outcome, Outcome::Converged);
    EXPECT_EQ(sol.report.iterations, 1);
    EXPECT_EQ(sol.u.sup_norm(), 0.0);
    EXPECT_EQ(sol.v.sup_norm(), 0.0);
    EXPECT_EQ(sol.report.final_residual, 0.0);
}

TEST(IterateSystem, TorusConvergesInsideTheSandwich)
{
    const TorusCase tc;
    const ModelParams p(1, 2, 1e4);
    const BackgroundPair bg = background_pair(tc.g, tc.vm, tc.vn);
    const SystemSolution sol = iterate_system(tc.g, p, bg, tc.vm, tc.vn);
    ASSERT_EQ(sol.report.outcome, Outcome::Converged);
    EXPECT_TRUE(sol.report.monotone);
    EXPECT_LE(sol.report.final_residual, 1e-9);
    const double c = naive_bound(16 * kPi * 1.0 * 1.0 / (1e4 * 1.0));
    EXPECT_LT(sol.dist_u.max(), 0.0);
    EXPECT_LT(sol.dist_v.max(), 0.0);
    EXPECT_GE(sol.dist_u.min(), -c);
    EXPECT_GE(sol.dist_v.min(), -c);
    EXPECT_LE((sol.u + bg.u0 - sol.dist_u).sup_norm(), 1e-14 * bg.u0.sup_norm());
    const auto [r1, r2] = residual_system(tc.g, p, bg, tc.vm, tc.vn, sol.u, sol.v);
    EXPECT_EQ(r1, sol.report.residuals[0]);
    EXPECT_EQ(r2, sol.report.residuals[1]);
}

TEST(IterateSystem, SmallCouplingDiverges)
{
    const TorusCase tc;
    const BackgroundPair bg = background_pair(tc.g, tc.vm, tc.vn);
    const SystemSolution sol = iterate_system(tc.g, ModelParams(1, 2, 0.01), bg, tc.vm, tc.vn);
    EXPECT_EQ(sol.report.outcome, Outcome::Diverged);
}

TEST(IterateSystem, IterationBudgetIsReported)
{
    const TorusCase tc;
    const BackgroundPair bg = background_pair(tc.g, tc.vm, tc.vn);
    IterationOptions o;
    o.max_iter = 5;
    const SystemSolution sol = iterate_system(tc.g, ModelParams(1, 2, 1e4), bg, tc.vm, tc.vn, o);
    EXPECT_EQ(sol.report.outcome, Outcome::MaxIterations);
    EXPECT_EQ(sol.report.iterations, 5);
    EXPECT_EQ(sol.report.step_history.size(), 4u);
}

TEST(IterateSystem, ObserverSeesDecreasingIterates)
{
    const TorusCase tc;
    const BackgroundPair bg = background_pair(tc.g, tc.vm, tc.vn);
    IterationOptions o;
    int calls = 0;
    VertexFunction prev;
    bool decreasing = true;
    o.observer = [&](int n, const VertexFunction& du, const VertexFunction&) {
        EXPECT_EQ(n, calls + 1);
        if (calls > 0)
            decreasing = decreasing && (du - prev).max() <= 0.0;
        prev = du;
        ++calls;
    };
    const SystemSolution sol = iterate_system(tc.g, ModelParams(1, 2, 1e3), bg, tc.vm, tc.vn, o);
    EXPECT_EQ(calls, sol.report.iterations);
    EXPECT_TRUE(decreasing);
    EXPECT_EQ(prev, sol.dist_u);
}

TEST(IterateSystem, RejectsMismatchedBackground)
{
    const TorusCase tc;
    const BackgroundPair bg = background_pair(tc.g, tc.vm, {});
    EXPECT_THROW(iterate_system(tc.g, ModelParams(1, 2, 1e3), bg, tc.vm, tc.vn), InputError);
}

TEST(IterateScalar, NoVortices)
{
    const WeightedGraph g = make_complete(5);
    const ScalarSolution sol = iterate_scalar(g, 3.0, g.constant(0.0), {});
    EXPECT_EQ(sol.report.outcome, Outcome::Converged);
    EXPECT_EQ(sol.u.sup_norm(), 0.0);
}

TEST(IterateScalar, TorusSandwich)
{
    const TorusCase tc;
    const VertexFunction bg = background_scalar(tc.g, tc.vm);
    const ScalarSolution sol = iterate_scalar(tc.g, 1e4, bg, tc.vm);
    ASSERT_EQ(sol.report.outcome, Outcome::Converged);
    EXPECT_TRUE(sol.report.monotone);
    EXPECT_LE(sol.report.final_residual, 1e-9);
    const double c = naive_bound(16 * kPi / 1e4);
    EXPECT_LT(sol.dist_u.max(), 0.0);
    EXPECT_GE(sol.dist_u.min(), -c);
    EXPECT_EQ(residual_scalar(tc.g, 1e4, bg, tc.vm, sol.u), sol.report.final_residual);
}

TEST(IterateScalar, BelowTheCriticalLowerBoundFails)
{
    const TorusCase tc;
    const VertexFunction bg = background_scalar(tc.g, tc.vm);
    const double lambda = 16 * kPi / 64.0 - 1e-3;
    const ScalarSolution sol = iterate_scalar(tc.g, lambda, bg, tc.vm);
    EXPECT_NE(sol.report.outcome, Outcome::Converged);
}

TEST(Subsolution, ConstantClosedForms)
{
    // -ln((1 + sqrt(1/2)) / 2) to 30 digits: 0.158347183820374938893238857207
    EXPECT_NEAR(subsolution_constant(1.0, 2.0), 0.158347183820374939, 1e-16);
    EXPECT_NEAR(subsolution_constant(1.0, 2.0), naive_bound(0.5), 1e-15);
    EXPECT_NEAR(subsolution_constant(1.0, 1.0), std::log(2.0), 1e-15);
    EXPECT_NEAR(subsolution_constant(1.0, 1e12), 0.25e-12, 1e-20);
    EXPECT_THROW(subsolution_constant(2.0, 1.0), InputError);
}

TEST(Subsolution, ThresholdUsesLargerMultiplicity)
{
    const TorusCase tc;
    const ModelParams p(1, 3, 1.0);
    const VortexSet big = tc.vn.scaled(3.0);
    EXPECT_NEAR(constructive_threshold(tc.g, p, tc.vm, big), 16 * kPi * 3.0 / 4.0, 1e-12);
    EXPECT_NEAR(constructive_threshold_scalar(tc.g, big), 48 * kPi, 1e-12);
}

TEST(Subsolution, SystemAtTwiceTheThreshold)
{
    const TorusCase tc;
    const double threshold = 16 * kPi;
    const ModelParams p(1, 2, 2 * threshold);
    const BackgroundPair bg = background_pair(tc.g, tc.vm, tc.vn);
    const SystemSubSolution s = subsolution_system(tc.g, p, bg, tc.vm, tc.vn);
    EXPECT_NEAR(s.c, 0.158347183820374939, 1e-15);
    EXPECT_LE((s.u_minus + bg.u0 + s.c).sup_norm(), 1e-14);
    EXPECT_TRUE(check_subsolution(tc.g, p, bg, tc.vm, tc.vn, s.u_minus, s.v_minus));
    EXPECT_FALSE(check_subsolution(tc.g, p, bg, tc.vm, tc.vn, -bg.u0 + 1.0, -bg.v0 + 1.0));
    EXPECT_THROW(subsolution_system(tc.g, p.with_lambda(threshold * 0.99), bg, tc.vm, tc.vn), InputError);
    EXPECT_NO_THROW(subsolution_system(tc.g, p.with_lambda(threshold), bg, tc.vm, tc.vn));
}

TEST(Subsolution, Scalar)
{
    const TorusCase tc;
    const VertexFunction bg = background_scalar(tc.g, tc.vm);
    const ScalarSubSolution s = subsolution_scalar(tc.g, 32 * kPi, bg, tc.vm);
    EXPECT_NEAR(s.c, naive_bound(0.5), 1e-15);
    EXPECT_THROW(subsolution_scalar(tc.g, 15 * kPi, bg, tc.vm), InputError);
}

TEST(Residual, BackgroundIsExactWithoutVortices)
{
    const WeightedGraph g = make_torus(3, 3);
    const BackgroundPair bg = background_pair(g, {}, {});
    const auto [r1, r2] = residual_system(g, ModelParams(1, 2, 5), bg, {}, {}, -bg.u0, -bg.v0);
    EXPECT_EQ(r1, 0.0);
    EXPECT_EQ(r2, 0.0);
}

TEST(MaxPrinciple, Verdicts)
{
    const WeightedGraph g = random_graph(17);
    EXPECT_EQ(check_max_principle(g, g.constant(-1.0), 2.0), MaxPrincipleVerdict::PremiseHoldsAndNonpositive);
    EXPECT_EQ(check_max_principle(g, g.constant(1.0), 2.0), MaxPrincipleVerdict::PremiseFails);
    std::mt19937_64 rng(17);
    const VertexFunction s = random_function(g.vertex_count(), rng, 0.0, 2.0);
    EXPECT_EQ(check_max_principle(g, solve_shifted(g, 0.5, s), 0.5), MaxPrincipleVerdict::PremiseHoldsAndNonpositive);
    EXPECT_EQ(to_string(MaxPrincipleVerdict::PremiseHoldsAndViolated), "premise_holds_and_violated");
}
