#include "gv/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "gv/error.hpp"
#include "gv/linops.hpp"

namespace gv {
namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

double vortex_constant(const WeightedGraph& g, const VortexSet& vs)
{
    return kFourPi * vs.total() / g.volume();
}

// Defect Δu - λ f1(u+u0, v+v0) - 4πN1/|V| and its v counterpart.
std::pair<VertexFunction, VertexFunction> system_defect(const WeightedGraph& g, const ModelParams& p,
                                                        const BackgroundPair& bg, double c1, double c2,
                                                        const VertexFunction& u, const VertexFunction& v)
{
    const VertexFunction w1 = u + bg.u0;
    const VertexFunction w2 = v + bg.v0;
    VertexFunction r1 = mu_laplacian(g, u);
    VertexFunction r2 = mu_laplacian(g, v);
    const double a = p.a();
    const double b = p.b();
    const double lambda = p.lambda();
    for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
        r1[x] -= lambda * f1_at(a, b, w1[x], w2[x]) + c1;
        r2[x] -= lambda * f2_at(a, b, w1[x], w2[x]) + c2;
    }
    return {std::move(r1), std::move(r2)};
}

VertexFunction scalar_defect(const WeightedGraph& g, double lambda, const VertexFunction& bg, double c,
                             const VertexFunction& u)
{
    VertexFunction r = mu_laplacian(g, u);
    for (VertexIndex x = 0; x < g.vertex_count(); ++x)
        r[x] -= lambda * scalar_f_at(u[x] + bg[x]) + c;
    return r;
}

// Same defects written in the shifted unknown w = u + u0. Since
// Δu0 = -4πN/|V| + 4π Σ m_j δ_{p_j}, the constant cancels and
//   Δu - λ f(u+u0) - 4πN/|V| = Δw - λ f(w) - 4π Σ m_j δ_{p_j}.
// No background enters, so w keeps full relative precision where it is tiny.
std::array<VertexFunction, 2> shifted_system_defect(const WeightedGraph& g, const ModelParams& p,
                                                    const VertexFunction& dirac1, const VertexFunction& dirac2,
                                                    const std::array<VertexFunction, 2>& w)
{
    VertexFunction r1 = mu_laplacian(g, w[0]) - dirac1;
    VertexFunction r2 = mu_laplacian(g, w[1]) - dirac2;
    for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
        r1[x] -= p.lambda() * f1_at(p.a(), p.b(), w[0][x], w[1][x]);
        r2[x] -= p.lambda() * f2_at(p.a(), p.b(), w[0][x], w[1][x]);
    }
    return {std::move(r1), std::move(r2)};
}

std::array<VertexFunction, 1> shifted_scalar_defect(const WeightedGraph& g, double lambda, const VertexFunction& dirac,
                                                    const std::array<VertexFunction, 1>& w)
{
    VertexFunction r = mu_laplacian(g, w[0]) - dirac;
    for (VertexIndex x = 0; x < g.vertex_count(); ++x)
        r[x] -= lambda * scalar_f_at(w[0][x]);
    return {std::move(r)};
}

void require_background(const WeightedGraph& g, const VertexFunction& bg, const VortexSet& vs, const char* what)
{
    require_same_size(g, bg, what);
    const VertexFunction rhs = vortex_rhs(g, vs).total();
    const double defect = (mu_laplacian(g, bg) - rhs).sup_norm();
    if (defect > 1e-8 * (1.0 + rhs.sup_norm()))
        throw InputError(std::string(what) + ": background does not match the vortex data");
}

// Shared driver for the monotone scheme
//   (Δ - K) u_{n+1} = λ f(u_n + u0) - K u_n + 4πN/|V|,   u_1 = -u0,
// carried out on w_n = u_n + u0 (so w_1 = 0); the sequences are the same.
// Each step is taken in correction form: with r_n the defect at w_n, solve
// (Δ - K) d_n = -r_n and set w_{n+1} = w_n + d_n. This is algebraically the
// scheme above but keeps round-off proportional to the defect instead of
// to K‖w‖.
//
// Convergence is judged on `target`, the defect of the iterate as it will
// be returned (u = w - u0, rounded), so that the reported residual is
// exactly what residual_system recomputes from the stored solution.
template <std::size_t C, class Defect, class Target>
IterationReport run_monotone(const ShiftedSystem& system, std::array<VertexFunction, C>& w, Defect defect,
                             Target target, const IterationOptions& opts)
{
    IterationReport report;
    report.K = system.shift();
    report.iterations = 1;

    auto notify = [&](int n) {
        if (!opts.observer)
            return;
        if constexpr (C == 2)
            opts.observer(n, w[0], w[1]);
        else
            opts.observer(n, w[0], VertexFunction());
    };
    notify(1);

    auto record_residuals = [&] {
        const std::array<double, C> r = target(w);
        report.residuals.assign(r.begin(), r.end());
        report.final_residual = *std::max_element(r.begin(), r.end());
    };

    double last_step = 0.0;
    bool stepped = false;
    while (true) {
        record_residuals();

        if (report.final_residual <= opts.residual_tol && (!stepped || last_step <= opts.step_tol)) {
            report.outcome = Outcome::Converged;
            return report;
        }
        if (report.iterations >= opts.max_iter) {
            report.outcome = Outcome::MaxIterations;
            return report;
        }

        const std::array<VertexFunction, C> r = defect(w);
        double step = 0.0;
        bool decreasing = true;
        bool sunk = false;
        for (std::size_t i = 0; i < C; ++i) {
            VertexFunction next = w[i] + system.solve(-r[i]);
            decreasing = decreasing && (next.vec().array() < w[i].vec().array()).all();
            step = std::max(step, (next - w[i]).sup_norm());
            if (!next.all_finite() || next.min() < -opts.divergence_floor)
                sunk = true;
            w[i] = std::move(next);
        }
        if (step > opts.step_tol && !decreasing)
            report.monotone = false;

        report.step_history.push_back(step);
        ++report.iterations;
        last_step = step;
        stepped = true;
        notify(report.iterations);

        if (sunk) {
            record_residuals();
            report.outcome = Outcome::Diverged;
            return report;
        }
    }
}

} // namespace

std::string_view to_string(Outcome o)
{
    switch (o) {
    case Outcome::Converged: return "Converged";
    case Outcome::Diverged: return "Diverged";
    case Outcome::MaxIterations: return "MaxIterations";
    }
    return "Unknown";
}

Outcome outcome_from_string(std::string_view name)
{
    for (Outcome o : {Outcome::Converged, Outcome::Diverged, Outcome::MaxIterations})
        if (to_string(o) == name)
            return o;
    throw InputError("unknown outcome '" + std::string(name) + "'");
}

void IterationOptions::validate() const
{
    if (!(step_tol > 0.0) || !(residual_tol > 0.0) || max_iter <= 0 || !(divergence_floor > 0.0)
        || !(k_margin > 0.0))
        throw InputError("iteration options must all be positive");
}

BackgroundPair background_pair(const WeightedGraph& g, const VortexSet& vm, const VortexSet& vn)
{
    const PoissonSystem poisson(g);
    return {poisson.solve(vortex_rhs(g, vm).total()), poisson.solve(vortex_rhs(g, vn).total())};
}

VertexFunction background_scalar(const WeightedGraph& g, const ScalarVortexSet& vp)
{
    return solve_poisson(g, vortex_rhs(g, vp).total());
}

SystemSolution iterate_system(const WeightedGraph& g, const ModelParams& params, const BackgroundPair& bg,
                              const VortexSet& vm, const VortexSet& vn, const IterationOptions& opts)
{
    opts.validate();
    require_background(g, bg.u0, vm, "iterate_system (u0)");
    require_background(g, bg.v0, vn, "iterate_system (v0)");

    const VertexFunction dirac1 = vortex_rhs(g, vm).dirac_term;
    const VertexFunction dirac2 = vortex_rhs(g, vn).dirac_term;
    const ShiftedSystem system(g, lipschitz_K(params, opts.k_margin));

    std::array<VertexFunction, 2> w{VertexFunction(g.vertex_count()), VertexFunction(g.vertex_count())};
    auto defect = [&](const std::array<VertexFunction, 2>& it) {
        return shifted_system_defect(g, params, dirac1, dirac2, it);
    };
    const double c1 = vortex_constant(g, vm);
    const double c2 = vortex_constant(g, vn);
    auto target = [&](const std::array<VertexFunction, 2>& it) {
        const auto [r1, r2] = system_defect(g, params, bg, c1, c2, it[0] - bg.u0, it[1] - bg.v0);
        return std::array<double, 2>{r1.sup_norm(), r2.sup_norm()};
    };
    IterationReport report = run_monotone<2>(system, w, defect, target, opts);
    SystemSolution sol;
    sol.u = w[0] - bg.u0;
    sol.v = w[1] - bg.v0;
    sol.dist_u = std::move(w[0]);
    sol.dist_v = std::move(w[1]);
    sol.report = std::move(report);
    return sol;
}

ScalarSolution iterate_scalar(const WeightedGraph& g, double lambda, const VertexFunction& bg_scalar,
                              const ScalarVortexSet& vp, const IterationOptions& opts)
{
    opts.validate();
    require_background(g, bg_scalar, vp, "iterate_scalar");

    const VertexFunction dirac = vortex_rhs(g, vp).dirac_term;
    const ShiftedSystem system(g, scalar_K(lambda, opts.k_margin));

    std::array<VertexFunction, 1> w{VertexFunction(g.vertex_count())};
    auto defect = [&](const std::array<VertexFunction, 1>& it) {
        return shifted_scalar_defect(g, lambda, dirac, it);
    };
    const double c = vortex_constant(g, vp);
    auto target = [&](const std::array<VertexFunction, 1>& it) {
        return std::array<double, 1>{scalar_defect(g, lambda, bg_scalar, c, it[0] - bg_scalar).sup_norm()};
    };
    IterationReport report = run_monotone<1>(system, w, defect, target, opts);
    ScalarSolution sol;
    sol.u = w[0] - bg_scalar;
    sol.dist_u = std::move(w[0]);
    sol.report = std::move(report);
    return sol;
}

double constructive_threshold(const WeightedGraph& g, const ModelParams& params, const VortexSet& vm,
                              const VortexSet& vn)
{
    const double n_max = std::max(vm.total(), vn.total());
    const double gap = params.a() - params.b();
    return 4.0 * kFourPi * n_max * g.eta() / (gap * gap);
}

double constructive_threshold_scalar(const WeightedGraph& g, const ScalarVortexSet& vp)
{
    return 4.0 * kFourPi * vp.total() * g.eta();
}

double subsolution_constant(double threshold, double lambda)
{
    if (!(lambda > 0.0))
        throw InputError("lambda must be positive");
    const double s = threshold / lambda;
    if (!(s >= 0.0 && s <= 1.0))
        throw InputError("lambda " + std::to_string(lambda) + " is below the constructive threshold "
                         + std::to_string(threshold));
    // -ln((1 + sqrt(1-s))/2) = -log1p(-s / (2(1 + sqrt(1-s)))), accurate for small s.
    const double root = std::sqrt(1.0 - s);
    return -std::log1p(-s / (2.0 * (1.0 + root)));
}

SystemSubSolution subsolution_system(const WeightedGraph& g, const ModelParams& params, const BackgroundPair& bg,
                                     const VortexSet& vm, const VortexSet& vn)
{
    require_same_size(g, bg.u0, "subsolution_system");
    require_same_size(g, bg.v0, "subsolution_system");
    const double c = subsolution_constant(constructive_threshold(g, params, vm, vn), params.lambda());
    return {-bg.u0 - c, -bg.v0 - c, c};
}

ScalarSubSolution subsolution_scalar(const WeightedGraph& g, double lambda, const VertexFunction& bg_scalar,
                                     const ScalarVortexSet& vp)
{
    require_same_size(g, bg_scalar, "subsolution_scalar");
    const double c = subsolution_constant(constructive_threshold_scalar(g, vp), lambda);
    return {-bg_scalar - c, c};
}

std::pair<double, double> subsolution_slack(const WeightedGraph& g, const ModelParams& params,
                                            const BackgroundPair& bg, const VortexSet& vm, const VortexSet& vn,
                                            const VertexFunction& u_minus, const VertexFunction& v_minus)
{
    require_same_size(g, u_minus, "subsolution_slack");
    require_same_size(g, v_minus, "subsolution_slack");
    const auto [r1, r2] =
        system_defect(g, params, bg, vortex_constant(g, vm), vortex_constant(g, vn), u_minus, v_minus);
    return {r1.min(), r2.min()};
}

bool check_subsolution(const WeightedGraph& g, const ModelParams& params, const BackgroundPair& bg,
                       const VortexSet& vm, const VortexSet& vn, const VertexFunction& u_minus,
                       const VertexFunction& v_minus)
{
    const auto [s1, s2] = subsolution_slack(g, params, bg, vm, vn, u_minus, v_minus);
    return s1 >= kSubsolutionSlack && s2 >= kSubsolutionSlack;
}

std::string_view to_string(MaxPrincipleVerdict v)
{
    switch (v) {
    case MaxPrincipleVerdict::PremiseHoldsAndNonpositive: return "premise_holds_and_u_nonpositive";
    case MaxPrincipleVerdict::PremiseHoldsAndViolated: return "premise_holds_and_violated";
    case MaxPrincipleVerdict::PremiseFails: return "premise_fails";
    }
    return "unknown";
}

MaxPrincipleVerdict check_max_principle(const WeightedGraph& g, const VertexFunction& u, double K)
{
    if (!(K > 0.0))
        throw InputError("check_max_principle: K must be positive");
    require_same_size(g, u, "check_max_principle");
    VertexFunction premise = mu_laplacian(g, u);
    premise.vec() -= K * u.vec();
    const double tol = 1e-10 * (1.0 + K * u.sup_norm());
    if (premise.min() < -tol)
        return MaxPrincipleVerdict::PremiseFails;
    return u.max() <= tol ? MaxPrincipleVerdict::PremiseHoldsAndNonpositive
                          : MaxPrincipleVerdict::PremiseHoldsAndViolated;
}

std::pair<double, double> residual_system(const WeightedGraph& g, const ModelParams& params, const BackgroundPair& bg,
                                          const VortexSet& vm, const VortexSet& vn, const VertexFunction& u,
                                          const VertexFunction& v)
{
    require_same_size(g, u, "residual_system");
    require_same_size(g, v, "residual_system");
    require_same_size(g, bg.u0, "residual_system");
    require_same_size(g, bg.v0, "residual_system");
    const auto [r1, r2] = system_defect(g, params, bg, vortex_constant(g, vm), vortex_constant(g, vn), u, v);
    return {r1.sup_norm(), r2.sup_norm()};
}

double residual_scalar(const WeightedGraph& g, double lambda, const VertexFunction& bg_scalar,
                       const ScalarVortexSet& vp, const VertexFunction& u)
{
    require_same_size(g, u, "residual_scalar");
    require_same_size(g, bg_scalar, "residual_scalar");
    return scalar_defect(g, lambda, bg_scalar, vortex_constant(g, vp), u).sup_norm();
}

} // namespace gv
