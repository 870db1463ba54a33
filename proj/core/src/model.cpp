#include "gv/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gv/error.hpp"

namespace gv {

ModelParams::ModelParams(double a, double b, double lambda) : a_(a), b_(b), lambda_(lambda)
{
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(lambda))
        throw InputError("model parameters must be finite");
    if (!(a > 0.0))
        throw InputError("parameter a must be positive");
    if (!(b > a))
        throw InputError("parameter b must exceed a");
    if (!(lambda > 0.0))
        throw InputError("lambda must be positive");
}

VortexSet::VortexSet(const WeightedGraph& g, const std::vector<std::pair<std::string, double>>& entries)
{
    for (const auto& [id, m] : entries)
        add(g.vertex_count(), g.index_of(id), m);
}

VortexSet::VortexSet(const WeightedGraph& g, const std::vector<Vortex>& entries)
{
    for (const auto& e : entries)
        add(g.vertex_count(), e.vertex, e.multiplicity);
}

void VortexSet::add(std::size_t vertex_count, VertexIndex v, double m)
{
    if (v >= vertex_count)
        throw InputError("vortex vertex index out of range");
    if (!(m > 0.0) || !std::isfinite(m))
        throw InputError("vortex multiplicity must be positive");
    auto it = std::lower_bound(vortices_.begin(), vortices_.end(), v,
                               [](const Vortex& lhs, VertexIndex rhs) { return lhs.vertex < rhs; });
    if (it != vortices_.end() && it->vertex == v)
        it->multiplicity += m;
    else
        vortices_.insert(it, Vortex{v, m});
    total_ += m;
}

double VortexSet::at(VertexIndex x) const
{
    auto it = std::lower_bound(vortices_.begin(), vortices_.end(), x,
                               [](const Vortex& lhs, VertexIndex rhs) { return lhs.vertex < rhs; });
    return (it != vortices_.end() && it->vertex == x) ? it->multiplicity : 0.0;
}

VortexSet VortexSet::scaled(double factor) const
{
    if (!(factor > 0.0))
        throw InputError("vortex scale factor must be positive");
    VortexSet out = *this;
    for (auto& v : out.vortices_)
        v.multiplicity *= factor;
    out.total_ *= factor;
    return out;
}

// Both nonlinearities vanish at the origin. Written in E = e^w - 1 they
// lose no relative accuracy as w -> 0:
//   f1 = (a²+b²)E1 - 2ab E2 + a²E1² - ab E2² + b(b-a) E1 E2
// and f2 is f1 with the arguments swapped.
double f1_at(double a, double b, double u, double v)
{
    const double e1 = std::expm1(u);
    const double e2 = std::expm1(v);
    return (a * a + b * b) * e1 - 2.0 * a * b * e2 + a * a * e1 * e1 - a * b * e2 * e2 + b * (b - a) * e1 * e2;
}

double f2_at(double a, double b, double u, double v)
{
    return f1_at(a, b, v, u);
}

double df1_du_at(double a, double b, double u, double v)
{
    const double eu = std::exp(u);
    return a * (b - a) * eu + 2.0 * a * a * eu * eu + b * (b - a) * eu * std::exp(v);
}

double df1_dv_at(double a, double b, double u, double v)
{
    const double ev = std::exp(v);
    return -b * (b - a) * ev - 2.0 * a * b * ev * ev + b * (b - a) * std::exp(u) * ev;
}

namespace {

template <class Kernel>
VertexFunction pointwise(const VertexFunction& u, const VertexFunction& v, Kernel k)
{
    if (u.size() != v.size())
        throw InputError("nonlinearity arguments differ in length");
    VertexFunction out(u.size());
    for (VertexIndex x = 0; x < u.size(); ++x)
        out[x] = k(u[x], v[x]);
    return out;
}

} // namespace

VertexFunction f1(const ModelParams& p, const VertexFunction& u, const VertexFunction& v)
{
    return pointwise(u, v, [a = p.a(), b = p.b()](double s, double t) { return f1_at(a, b, s, t); });
}

VertexFunction f2(const ModelParams& p, const VertexFunction& u, const VertexFunction& v)
{
    return pointwise(u, v, [a = p.a(), b = p.b()](double s, double t) { return f2_at(a, b, s, t); });
}

double scalar_f_at(double w)
{
    const double e = std::expm1(w);
    return (1.0 + e) * e;
}

VertexFunction scalar_f(const VertexFunction& w)
{
    VertexFunction out(w.size());
    for (VertexIndex x = 0; x < w.size(); ++x)
        out[x] = scalar_f_at(w[x]);
    return out;
}

double lipschitz_K(const ModelParams& p, double margin)
{
    if (!(margin >= 0.0))
        throw InputError("K margin must be nonnegative");
    const double a = p.a();
    const double b = p.b();
    return 2.0 * p.lambda() * ((a + b) * (b - a) + 2.0 * a * a) * (1.0 + margin);
}

double scalar_K(double lambda, double margin)
{
    if (!(lambda > 0.0))
        throw InputError("lambda must be positive");
    if (!(margin >= 0.0))
        throw InputError("K margin must be nonnegative");
    return 2.0 * lambda * (1.0 + margin) + 1.0;
}

VortexRhs vortex_rhs(const WeightedGraph& g, const VortexSet& vortices)
{
    constexpr double four_pi = 4.0 * std::numbers::pi;
    VortexRhs out;
    out.constant_term = vortices.empty() ? 0.0 : -four_pi * vortices.total() / g.volume();
    out.dirac_term = VertexFunction(g.vertex_count());
    for (const auto& v : vortices.vortices()) {
        if (v.vertex >= g.vertex_count())
            throw InputError("vortex set does not belong to this graph");
        out.dirac_term[v.vertex] += four_pi * v.multiplicity / g.mu(v.vertex);
    }
    return out;
}

} // namespace gv
