#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gv/graph.hpp"

namespace gv {

/// Coupling constants of the U(1)×U(1) system. Requires b > a > 0, λ > 0.
class ModelParams {
public:
    ModelParams(double a, double b, double lambda);

    double a() const { return a_; }
    double b() const { return b_; }
    double lambda() const { return lambda_; }

    ModelParams with_lambda(double lambda) const { return {a_, b_, lambda}; }

private:
    double a_;
    double b_;
    double lambda_;
};

struct Vortex {
    VertexIndex vertex;
    double multiplicity;
};

/// Point vortices with positive (real) multiplicities. Repeated vertices are
/// merged by summing; entries are kept sorted by vertex index.
class VortexSet {
public:
    VortexSet() = default;
    VortexSet(const WeightedGraph& g, const std::vector<std::pair<std::string, double>>& entries);
    VortexSet(const WeightedGraph& g, const std::vector<Vortex>& entries);

    const std::vector<Vortex>& vortices() const { return vortices_; }
    bool empty() const { return vortices_.empty(); }
    /// N = Σ multiplicities.
    double total() const { return total_; }
    /// Multiplicity sitting at x (0 when x carries no vortex).
    double at(VertexIndex x) const;

    VortexSet scaled(double factor) const;

private:
    void add(std::size_t vertex_count, VertexIndex v, double m);

    std::vector<Vortex> vortices_;
    double total_ = 0.0;
};

/// The scalar equation uses the same data type; unit masses are the usual
/// case but any positive multiplicity is accepted.
using ScalarVortexSet = VortexSet;

/// f1(u,v) = a(b-a)e^u - b(b-a)e^v + a²e^{2u} - ab e^{2v} + b(b-a)e^{u+v}
VertexFunction f1(const ModelParams& p, const VertexFunction& u, const VertexFunction& v);
/// f2(u,v) = -b(b-a)e^u + a(b-a)e^v - ab e^{2u} + a²e^{2v} + b(b-a)e^{u+v}
VertexFunction f2(const ModelParams& p, const VertexFunction& u, const VertexFunction& v);

// Pointwise kernels behind f1/f2.
double f1_at(double a, double b, double u, double v);
double f2_at(double a, double b, double u, double v);
double df1_du_at(double a, double b, double u, double v);
double df1_dv_at(double a, double b, double u, double v);

/// e^w (e^w - 1), pointwise; λ is applied by the caller.
VertexFunction scalar_f(const VertexFunction& w);
double scalar_f_at(double w);

/// Monotonicity shift for the system iteration:
/// 2λ((a+b)(b-a) + 2a²)(1 + margin). Requires margin ≥ 0.
double lipschitz_K(const ModelParams& p, double margin = 0.1);

/// Monotonicity shift for the scalar iteration: 2λ(1 + margin) + 1.
double scalar_K(double lambda, double margin = 0.1);

struct VortexRhs {
    double constant_term = 0.0;   ///< -4πN/|V|
    VertexFunction dirac_term;    ///< 4π Σ m_j δ_{p_j}

    VertexFunction total() const { return dirac_term + constant_term; }
};

VortexRhs vortex_rhs(const WeightedGraph& g, const VortexSet& vortices);

} // namespace gv
