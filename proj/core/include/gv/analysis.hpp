#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gv/graph.hpp"
#include "gv/model.hpp"
#include "gv/solver.hpp"

namespace gv {

/// Outcome of one λ probe in a sweep. Optional fields are empty when the
/// probe did not converge or the constructive bound does not apply.
struct SweepRecord {
    double lambda = 0.0;
    Outcome outcome = Outcome::MaxIterations;
    int iterations = 0;
    double sup_dist_u = 0.0;  ///< ‖u_λ + u0‖∞
    double sup_dist_v = 0.0;  ///< ‖v_λ + v0‖∞
    std::optional<double> bound_c;
    std::optional<double> dist_err_1;
    std::optional<double> dist_err_2;
    double residual_1 = 0.0;
    double residual_2 = 0.0;
};

struct LambdaProbe {
    double lambda;
    Outcome outcome;
};

struct LambdaCBracket {
    double lo = 0.0;  ///< largest probed λ that failed
    double hi = 0.0;  ///< smallest probed λ that converged
    std::vector<LambdaProbe> probes;
    /// Some probe ended at the iteration budget, or the recorded outcomes
    /// were not monotone in λ.
    bool tentative = false;

    double width() const { return hi - lo; }
};

/// Max over indicator test functions φ = 1_x of
/// |∫ λ f_i(dist_u, dist_v) φ dμ + 4π Σ_j m_j φ(p_j)|, for i = 1, 2.
/// Throws InputError unless the solution converged.
std::pair<double, double> distributional_error(const WeightedGraph& g, const ModelParams& params,
                                               const SystemSolution& sol, const VortexSet& vm,
                                               const VortexSet& vn);

/// Scalar analogue of distributional_error.
double distributional_error_scalar(const WeightedGraph& g, double lambda, const ScalarSolution& sol, const ScalarVortexSet& vp);

/// Solves the system at every λ (ascending). Probes are independent and run
/// on up to `jobs` threads; records come back in λ order.
std::vector<SweepRecord> lambda_sweep(const WeightedGraph& g, const ModelParams& params_base, const VortexSet& vm,
                                      const VortexSet& vn, const std::vector<double>& lambdas,
                                      const IterationOptions& opts = {}, unsigned jobs = 1);

/// Bisects on the scalar solve outcome until hi - lo ≤ width_tol. The
/// initial bracket must fail at lo0 and converge at hi0. Throws SolverError
/// if the result contradicts λ_c ≥ 16πN/|V| or max_probes is exhausted.
LambdaCBracket estimate_lambda_c_scalar(const WeightedGraph& g, const ScalarVortexSet& vp, double lo0, double hi0,
                                        double width_tol, const IterationOptions& opts = {}, int max_probes = 200);

/// 16πN/|V|, the analytic lower bound on the critical coupling.
double lambda_c_lower_bound(const WeightedGraph& g, const ScalarVortexSet& vp);

enum class SweepField { SupDistU, SupDistV, DistErr1, DistErr2, BoundC };

/// Least-squares slope of log(field) against log(λ) over converged records
/// with a positive field value. Needs at least three such records.
double decay_rate(const std::vector<SweepRecord>& records, SweepField field);

} // namespace gv
