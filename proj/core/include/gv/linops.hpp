#pragma once

#include <memory>

#include <Eigen/Cholesky>
#include <Eigen/SparseCore>

#include "gv/graph.hpp"

namespace gv {

/// Graphs up to this many vertices are factorized densely; larger ones use
/// Jacobi-preconditioned conjugate gradients on the sparse matrix.
inline constexpr std::size_t kDenseSolveLimit = 2000;

/// Relative energy-norm tolerance handed to conjugate gradients.
inline constexpr double kIterativeTolerance = 1e-12;

/// The shifted operator Δ - K, assembled in its measure-symmetrized form
///
///     A = L + K M,   A_xx = Σ_y ω_xy + K μ(x),   A_xy = -ω_xy,
///
/// so that (Δ - K) u = r  ⟺  A u = -μ ∘ r. A is symmetric and strictly
/// diagonally dominant, hence positive definite for K > 0. Immutable after
/// construction; solve() may be called concurrently.
class ShiftedSystem {
public:
    ShiftedSystem(const WeightedGraph& g, double K);

    double shift() const { return K_; }
    const WeightedGraph& graph() const { return *graph_; }

    /// Returns u with Δu - Ku = rhs. Throws SolverError if the sup-norm
    /// residual exceeds 1e-10 (1 + ‖rhs‖∞).
    VertexFunction solve(const VertexFunction& rhs) const;

    /// Δu - Ku, evaluated directly.
    VertexFunction apply(const VertexFunction& u) const;

private:
    const WeightedGraph* graph_;
    double K_;
    Eigen::SparseMatrix<double> matrix_;
    std::unique_ptr<Eigen::LLT<Eigen::MatrixXd>> dense_;
};

/// The singular operator Δ restricted to mean-zero functions. One reference
/// vertex is pinned to make the reduced Laplacian definite; solutions are
/// shifted to ∫u dμ = 0 afterwards.
class PoissonSystem {
public:
    explicit PoissonSystem(const WeightedGraph& g);

    /// Unique mean-zero u with Δu = rhs. Throws InputError when
    /// |∫rhs dμ| > 1e-10 ‖rhs‖∞ and SolverError on a residual miss.
    VertexFunction solve(const VertexFunction& rhs) const;

private:
    const WeightedGraph* graph_;
    Eigen::SparseMatrix<double> reduced_;
    std::unique_ptr<Eigen::LLT<Eigen::MatrixXd>> dense_;
};

VertexFunction solve_shifted(const WeightedGraph& g, double K, const VertexFunction& rhs);
VertexFunction solve_poisson(const WeightedGraph& g, const VertexFunction& rhs);

/// Sup-norm tolerance shared by both solvers' postconditions.
inline double solve_tolerance(const VertexFunction& rhs)
{
    return 1e-10 * (1.0 + rhs.sup_norm());
}

} // namespace gv
