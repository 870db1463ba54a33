#include "gv/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "gv/error.hpp"

namespace gv {
namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

double indicator_error(const WeightedGraph& g, double lambda, const VertexFunction& f, const VortexSet& vs)
{
    double worst = 0.0;
    for (VertexIndex x = 0; x < g.vertex_count(); ++x)
        worst = std::max(worst, std::abs(g.mu(x) * lambda * f[x] + kFourPi * vs.at(x)));
    return worst;
}

std::optional<double> field_of(const SweepRecord& r, SweepField field)
{
    switch (field) {
    case SweepField::SupDistU: return r.sup_dist_u;
    case SweepField::SupDistV: return r.sup_dist_v;
    case SweepField::DistErr1: return r.dist_err_1;
    case SweepField::DistErr2: return r.dist_err_2;
    case SweepField::BoundC: return r.bound_c;
    }
    return std::nullopt;
}

SweepRecord probe(const WeightedGraph& g, const ModelParams& params, const BackgroundPair& bg, const VortexSet& vm,
                  const VortexSet& vn, const IterationOptions& opts)
{
    const SystemSolution sol = iterate_system(g, params, bg, vm, vn, opts);
    SweepRecord rec;
    rec.lambda = params.lambda();
    rec.outcome = sol.report.outcome;
    rec.iterations = sol.report.iterations;
    rec.sup_dist_u = sol.dist_u.sup_norm();
    rec.sup_dist_v = sol.dist_v.sup_norm();
    rec.residual_1 = sol.report.residuals.at(0);
    rec.residual_2 = sol.report.residuals.at(1);
    const double threshold = constructive_threshold(g, params, vm, vn);
    if (params.lambda() >= threshold)
        rec.bound_c = subsolution_constant(threshold, params.lambda());
    if (sol.report.outcome == Outcome::Converged) {
        const auto [e1, e2] = distributional_error(g, params, sol, vm, vn);
        rec.dist_err_1 = e1;
        rec.dist_err_2 = e2;
    }
    return rec;
}

} // namespace

std::pair<double, double> distributional_error(const WeightedGraph& g, const ModelParams& params,
                                               const SystemSolution& sol, const VortexSet& vm,
                                               const VortexSet& vn)
{
    if (sol.report.outcome != Outcome::Converged)
        throw InputError("distributional_error needs a converged solution");
    return {indicator_error(g, params.lambda(), f1(params, sol.dist_u, sol.dist_v), vm),
            indicator_error(g, params.lambda(), f2(params, sol.dist_u, sol.dist_v), vn)};
}

double distributional_error_scalar(const WeightedGraph& g, double lambda, const ScalarSolution& sol, const ScalarVortexSet& vp)
{
    if (sol.report.outcome != Outcome::Converged)
        throw InputError("distributional_error_scalar needs a converged solution");
    return indicator_error(g, lambda, scalar_f(sol.dist_u), vp);
}

std::vector<SweepRecord> lambda_sweep(const WeightedGraph& g, const ModelParams& params_base, const VortexSet& vm,
                                      const VortexSet& vn, const std::vector<double>& lambdas,
                                      const IterationOptions& opts, unsigned jobs)
{
    if (!std::is_sorted(lambdas.begin(), lambdas.end()))
        throw InputError("sweep lambdas must be sorted ascending");
    std::vector<ModelParams> params;
    params.reserve(lambdas.size());
    for (double l : lambdas)
        params.push_back(params_base.with_lambda(l));

    const BackgroundPair bg = background_pair(g, vm, vn);
    std::vector<SweepRecord> records(lambdas.size());

    const unsigned workers = std::clamp<unsigned>(jobs, 1, std::max<std::size_t>(1, lambdas.size()));
    if (workers == 1) {
        for (std::size_t i = 0; i < lambdas.size(); ++i)
            records[i] = probe(g, params[i], bg, vm, vn, opts);
        return records;
    }

    // Observers are caller state and not assumed thread-safe.
    IterationOptions local = opts;
    local.observer = nullptr;
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = next++; i < lambdas.size(); i = next++)
                    records[i] = probe(g, params[i], bg, vm, vn, local);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    for (auto& th : pool)
        th.join();
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return records;
}

double lambda_c_lower_bound(const WeightedGraph& g, const ScalarVortexSet& vp)
{
    return 4.0 * kFourPi * vp.total() / g.volume();
}

LambdaCBracket estimate_lambda_c_scalar(const WeightedGraph& g, const ScalarVortexSet& vp, double lo0, double hi0,
                                        double width_tol, const IterationOptions& opts, int max_probes)
{
    if (!(lo0 > 0.0) || !(hi0 > lo0))
        throw InputError("lambda_c bracket needs 0 < lo < hi");
    if (!(width_tol > 0.0))
        throw InputError("width tolerance must be positive");

    const VertexFunction bg = background_scalar(g, vp);
    LambdaCBracket bracket;
    auto run = [&](double lambda) {
        const Outcome o = iterate_scalar(g, lambda, bg, vp, opts).report.outcome;
        bracket.probes.push_back({lambda, o});
        if (o == Outcome::MaxIterations)
            bracket.tentative = true;
        return o == Outcome::Converged;
    };

    if (run(lo0))
        throw InputError("scalar solve converges at the lower end of the initial bracket");
    if (!run(hi0))
        throw InputError("scalar solve does not converge at the upper end of the initial bracket");
    bracket.lo = lo0;
    bracket.hi = hi0;

    while (bracket.width() > width_tol) {
        if (static_cast<int>(bracket.probes.size()) >= max_probes)
            throw SolverError("lambda_c bisection exhausted its probe budget");
        const double mid = 0.5 * (bracket.lo + bracket.hi);
        if (run(mid))
            bracket.hi = mid;
        else
            bracket.lo = mid;
    }

    for (const auto& p : bracket.probes) {
        const bool converged = p.outcome == Outcome::Converged;
        if ((p.lambda <= bracket.lo && converged) || (p.lambda >= bracket.hi && !converged))
            bracket.tentative = true;
    }

    const double bound = lambda_c_lower_bound(g, vp);
    if (bracket.hi < bound)
        throw SolverError("lambda_c bracket upper end " + std::to_string(bracket.hi)
                          + " lies below the analytic lower bound " + std::to_string(bound));
    return bracket;
}

double decay_rate(const std::vector<SweepRecord>& records, SweepField field)
{
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : records) {
        if (r.outcome != Outcome::Converged)
            continue;
        const auto value = field_of(r, field);
        if (value && *value > 0.0 && r.lambda > 0.0)
            pts.emplace_back(std::log(r.lambda), std::log(*value));
    }
    if (pts.size() < 3)
        throw InputError("decay_rate needs at least three converged records with positive values");

    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0.0, sxx = 0.0;
    for (const auto& [x, y] : pts) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if (sxx == 0.0)
        throw InputError("decay_rate needs at least two distinct lambdas");
    return sxy / sxx;
}

} // namespace gv
