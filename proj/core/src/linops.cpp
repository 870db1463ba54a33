#include "gv/linops.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/IterativeLinearSolvers>

#include "gv/error.hpp"

namespace gv {
namespace {

using Triplet = Eigen::Triplet<double>;

// Graph Laplacian L = D - W plus `diag_extra` on the diagonal.
Eigen::SparseMatrix<double> assemble(const WeightedGraph& g, const std::vector<double>& diag_extra)
{
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    std::vector<Triplet> triplets;
    triplets.reserve(g.vertex_count() + 2 * g.edge_count());
    for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
        double diag = diag_extra[x];
        for (const auto& nb : g.neighbors(x)) {
            diag += nb.weight;
            triplets.emplace_back(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(nb.index), -nb.weight);
        }
        triplets.emplace_back(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x), diag);
    }
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(triplets.begin(), triplets.end());
    return m;
}

std::unique_ptr<Eigen::LLT<Eigen::MatrixXd>> factorize_dense(const Eigen::SparseMatrix<double>& m)
{
    auto llt = std::make_unique<Eigen::LLT<Eigen::MatrixXd>>(Eigen::MatrixXd(m));
    if (llt->info() != Eigen::Success)
        throw SolverError("Cholesky factorization failed; matrix not positive definite");
    return llt;
}

Eigen::VectorXd solve_spd(const Eigen::SparseMatrix<double>& m, const Eigen::LLT<Eigen::MatrixXd>* dense,
                          const Eigen::VectorXd& b)
{
    if (dense)
        return dense->solve(b);
    // Local solver object: Eigen's CG records iteration stats in mutable
    // members, so sharing one across threads would race.
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(kIterativeTolerance);
    cg.setMaxIterations(std::max<Eigen::Index>(1000, 10 * m.rows()));
    cg.compute(m);
    Eigen::VectorXd x = cg.solve(b);
    if (cg.info() != Eigen::Success)
        throw SolverError("conjugate gradient did not converge (error " + std::to_string(cg.error()) + ")");
    return x;
}

void check_residual(const VertexFunction& residual, const VertexFunction& rhs, const char* what)
{
    const double r = residual.sup_norm();
    if (!(r <= solve_tolerance(rhs)))
        throw SolverError(std::string(what) + ": residual " + std::to_string(r) + " exceeds tolerance");
}

} // namespace

ShiftedSystem::ShiftedSystem(const WeightedGraph& g, double K) : graph_(&g), K_(K)
{
    if (!(K > 0.0) || !std::isfinite(K))
        throw InputError("shift K must be positive and finite");
    std::vector<double> extra(g.vertex_count());
    for (VertexIndex x = 0; x < g.vertex_count(); ++x)
        extra[x] = K * g.mu(x);
    matrix_ = assemble(g, extra);
    if (g.vertex_count() <= kDenseSolveLimit)
        dense_ = factorize_dense(matrix_);
}

VertexFunction ShiftedSystem::apply(const VertexFunction& u) const
{
    VertexFunction out = mu_laplacian(*graph_, u);
    out.vec() -= K_ * u.vec();
    return out;
}

VertexFunction ShiftedSystem::solve(const VertexFunction& rhs) const
{
    const WeightedGraph& g = *graph_;
    require_same_size(g, rhs, "solve_shifted");
    Eigen::VectorXd b(rhs.vec().size());
    for (VertexIndex x = 0; x < g.vertex_count(); ++x)
        b[static_cast<Eigen::Index>(x)] = -g.mu(x) * rhs[x];
    VertexFunction u(solve_spd(matrix_, dense_.get(), b));

    // The factorization is only normwise accurate: where the solution is
    // many orders below its maximum (strongly shifted operators decay
    // geometrically away from the data) it carries noise of either sign.
    // Gauss-Seidel sweeps on the M-matrix recompute each entry from its
    // neighbours, restoring componentwise accuracy; for well-mixed
    // solutions they leave the direct answer unchanged up to round-off.
    constexpr int kMaxSweeps = 32;
    const double eps = std::numeric_limits<double>::epsilon();
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool settled = true;
        for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
            double acc = b[static_cast<Eigen::Index>(x)];
            double diag = K_ * g.mu(x);
            for (const auto& nb : g.neighbors(x)) {
                acc += nb.weight * u[nb.index];
                diag += nb.weight;
            }
            const double next = acc / diag;
            if (std::abs(next - u[x]) > 4.0 * eps * std::abs(next))
                settled = false;
            u[x] = next;
        }
        if (settled)
            break;
    }

    check_residual(apply(u) - rhs, rhs, "solve_shifted");
    return u;
}

PoissonSystem::PoissonSystem(const WeightedGraph& g) : graph_(&g)
{
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    if (n == 1)
        return;
    // Vertex 0 is the pinned reference; keep rows/cols 1..n-1.
    const Eigen::SparseMatrix<double> full = assemble(g, std::vector<double>(g.vertex_count(), 0.0));
    reduced_ = full.bottomRightCorner(n - 1, n - 1);
    if (g.vertex_count() <= kDenseSolveLimit)
        dense_ = factorize_dense(reduced_);
}

VertexFunction PoissonSystem::solve(const VertexFunction& rhs) const
{
    const WeightedGraph& g = *graph_;
    require_same_size(g, rhs, "solve_poisson");
    if (!rhs.all_finite())
        throw InputError("solve_poisson: right-hand side is not finite");

    const double total = integrate(g, rhs);
    if (std::abs(total) > 1e-10 * rhs.sup_norm())
        throw InputError("solve_poisson: incompatible right-hand side, integral " + std::to_string(total));

    const std::size_t n = g.vertex_count();
    if (n == 1)
        return VertexFunction(1);

    // Project onto the compatible subspace, then solve L u = -μ ∘ rhs with u(0) = 0.
    const double mean = total / g.volume();
    VertexFunction projected = rhs - mean;
    Eigen::VectorXd b(static_cast<Eigen::Index>(n - 1));
    for (VertexIndex x = 1; x < n; ++x)
        b[static_cast<Eigen::Index>(x - 1)] = -g.mu(x) * projected[x];
    const Eigen::VectorXd tail = solve_spd(reduced_, dense_.get(), b);

    VertexFunction u(n);
    u.vec().tail(static_cast<Eigen::Index>(n - 1)) = tail;
    u -= integrate(g, u) / g.volume();

    check_residual(mu_laplacian(g, u) - projected, rhs, "solve_poisson");
    return u;
}

VertexFunction solve_shifted(const WeightedGraph& g, double K, const VertexFunction& rhs)
{
    return ShiftedSystem(g, K).solve(rhs);
}

VertexFunction solve_poisson(const WeightedGraph& g, const VertexFunction& rhs)
{
    return PoissonSystem(g).solve(rhs);
}

} // namespace gv
