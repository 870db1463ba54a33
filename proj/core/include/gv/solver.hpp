#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gv/graph.hpp"
#include "gv/model.hpp"

namespace gv {

enum class Outcome { Converged, Diverged, MaxIterations };

std::string_view to_string(Outcome o);
/// Inverse of to_string; throws InputError for unknown names.
Outcome outcome_from_string(std::string_view name);

/// Called for every iterate n = 1, 2, ... with (n, u_n + u0, v_n + v0).
/// Iterates are reported relative to the starting point -u0 because that
/// offset decays geometrically away from the vortices and would otherwise
/// be lost to round-off against u0. For the scalar iteration the third
/// argument is an empty function.
using IterateObserver = std::function<void(int, const VertexFunction&, const VertexFunction&)>;

struct IterationOptions {
    double step_tol = 1e-12;
    double residual_tol = 1e-9;
    int max_iter = 10000;
    /// Diverged once u + u0 < -divergence_floor somewhere.
    double divergence_floor = 50.0;
    double k_margin = 0.1;
    IterateObserver observer;

    /// Throws InputError unless every numeric field is positive.
    void validate() const;
};

struct IterationReport {
    Outcome outcome = Outcome::MaxIterations;
    /// Index n of the last iterate; the starting point is n = 1.
    int iterations = 0;
    /// ‖u_{n+1} - u_n‖∞ (max over components) per step.
    std::vector<double> step_history;
    /// Max over components of the sup-norm equation defect at the last iterate.
    double final_residual = 0.0;
    /// Per-component defects (one entry for the scalar equation).
    std::vector<double> residuals;
    /// Strict pointwise decrease in every component at every step whose
    /// size exceeded step_tol.
    bool monotone = true;
    double K = 0.0;
};

struct BackgroundPair {
    VertexFunction u0;
    VertexFunction v0;
};

struct SystemSolution {
    VertexFunction u;
    VertexFunction v;
    /// u + u0 and v + v0, kept at full relative precision (rounding u
    /// itself erases offsets far below ‖u0‖∞).
    VertexFunction dist_u;
    VertexFunction dist_v;
    IterationReport report;
};

struct ScalarSolution {
    VertexFunction u;
    VertexFunction dist_u;  ///< u + ū0
    IterationReport report;
};

struct SystemSubSolution {
    VertexFunction u_minus;
    VertexFunction v_minus;
    double c = 0.0;
};

struct ScalarSubSolution {
    VertexFunction u_minus;
    double c = 0.0;
};

/// Mean-zero solutions of Δu0 = -4πN1/|V| + 4π Σ m_j δ_{p_j} and the
/// analogous v0 equation.
BackgroundPair background_pair(const WeightedGraph& g, const VortexSet& vm, const VortexSet& vn);
VertexFunction background_scalar(const WeightedGraph& g, const ScalarVortexSet& vp);

/// Monotone iteration for the shifted system
///   Δu = λ f1(u+u0, v+v0) + 4πN1/|V|,  Δv = λ f2(u+u0, v+v0) + 4πN2/|V|,
/// started at (-u0, -v0) with K = lipschitz_K(params, opts.k_margin).
SystemSolution iterate_system(const WeightedGraph& g, const ModelParams& params, const BackgroundPair& bg,
                              const VortexSet& vm, const VortexSet& vn, const IterationOptions& opts = {});

/// Monotone iteration for Δu = λ e^{ū0+u}(e^{ū0+u} - 1) + 4πN/|V|, started at
/// -ū0 with K = scalar_K(λ, opts.k_margin).
ScalarSolution iterate_scalar(const WeightedGraph& g, double lambda, const VertexFunction& bg_scalar,
                              const ScalarVortexSet& vp, const IterationOptions& opts = {});

/// 16π N_max η / (a-b)², the smallest λ for which the closed-form
/// sub-solution exists (N_max = max(N1, N2), η = max 1/μ).
double constructive_threshold(const WeightedGraph& g, const ModelParams& params, const VortexSet& vm,
                              const VortexSet& vn);
/// 16π N η for the scalar equation.
double constructive_threshold_scalar(const WeightedGraph& g, const ScalarVortexSet& vp);

/// c = -ln((1 + sqrt(1 - s)) / 2) for s = threshold/λ ∈ [0, 1].
double subsolution_constant(double threshold, double lambda);

/// (-u0 - c, -v0 - c). Throws InputError when λ is below the constructive
/// threshold.
SystemSubSolution subsolution_system(const WeightedGraph& g, const ModelParams& params, const BackgroundPair& bg,
                                     const VortexSet& vm, const VortexSet& vn);
ScalarSubSolution subsolution_scalar(const WeightedGraph& g, double lambda, const VertexFunction& bg_scalar,
                                     const ScalarVortexSet& vp);

/// Pointwise minimum of Δu - λ f_i(u+u0, v+v0) - 4πN_i/|V| for each component.
std::pair<double, double> subsolution_slack(const WeightedGraph& g, const ModelParams& params,
                                            const BackgroundPair& bg, const VortexSet& vm, const VortexSet& vn,
                                            const VertexFunction& u_minus, const VertexFunction& v_minus);

inline constexpr double kSubsolutionSlack = -1e-10;

/// True iff both sub-solution inequalities hold pointwise with slack ≥ -1e-10.
bool check_subsolution(const WeightedGraph& g, const ModelParams& params, const BackgroundPair& bg,
                       const VortexSet& vm, const VortexSet& vn, const VertexFunction& u_minus,
                       const VertexFunction& v_minus);

enum class MaxPrincipleVerdict { PremiseHoldsAndNonpositive, PremiseHoldsAndViolated, PremiseFails };

std::string_view to_string(MaxPrincipleVerdict v);

/// Evaluates the premise Δu - Ku ≥ 0 and the conclusion u ≤ 0, both up to
/// round-off scaled by 1e-10 (1 + K‖u‖∞).
MaxPrincipleVerdict check_max_principle(const WeightedGraph& g, const VertexFunction& u, double K);

/// Sup-norm defects of both equations of the shifted system.
std::pair<double, double> residual_system(const WeightedGraph& g, const ModelParams& params, const BackgroundPair& bg,
                                          const VortexSet& vm, const VortexSet& vn, const VertexFunction& u,
                                          const VertexFunction& v);
double residual_scalar(const WeightedGraph& g, double lambda, const VertexFunction& bg_scalar,
                       const ScalarVortexSet& vp, const VertexFunction& u);

} // namespace gv
