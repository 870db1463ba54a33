#include "gv/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

#include "gv/error.hpp"

namespace gv {

WeightedGraph::WeightedGraph(std::vector<std::string> ids, std::vector<double> mu, const std::vector<EdgeSpec>& edges)
    : ids_(std::move(ids)), mu_(std::move(mu))
{
    const std::size_t n = ids_.size();
    if (n == 0)
        throw InputError("graph has no vertices");
    if (mu_.size() != n)
        throw InputError("measure length does not match vertex count");

    for (VertexIndex i = 0; i < n; ++i) {
        if (!(mu_[i] > 0.0) || !std::isfinite(mu_[i]))
            throw InputError("vertex '" + ids_[i] + "' has nonpositive measure");
        if (!index_.emplace(ids_[i], i).second)
            throw InputError("duplicate vertex id '" + ids_[i] + "'");
    }

    adjacency_.resize(n);
    std::set<std::pair<VertexIndex, VertexIndex>> seen;
    std::vector<std::pair<VertexIndex, VertexIndex>> pairs;
    pairs.reserve(edges.size());
    for (const auto& e : edges) {
        const VertexIndex a = index_of(e.a);
        const VertexIndex b = index_of(e.b);
        if (a == b)
            throw InputError("self-loop at vertex '" + e.a + "'");
        if (!(e.w > 0.0) || !std::isfinite(e.w))
            throw InputError("edge " + e.a + "-" + e.b + " has nonpositive weight");
        const auto key = std::minmax(a, b);
        if (!seen.insert(key).second)
            throw InputError("duplicate edge " + e.a + "-" + e.b);
        adjacency_[a].push_back({b, e.w});
        adjacency_[b].push_back({a, e.w});
        pairs.emplace_back(a, b);
    }
    edge_count_ = pairs.size();

    if (!gv::is_connected(n, pairs))
        throw InputError("graph is not connected");

    for (double m : mu_) {
        volume_ += m;
        eta_ = std::max(eta_, 1.0 / m);
    }
}

VertexIndex WeightedGraph::index_of(const std::string& id) const
{
    const auto it = index_.find(id);
    if (it == index_.end())
        throw InputError("unknown vertex id '" + id + "'");
    return it->second;
}

std::vector<std::tuple<VertexIndex, VertexIndex, double>> WeightedGraph::edge_list() const
{
    std::vector<std::tuple<VertexIndex, VertexIndex, double>> out;
    out.reserve(edge_count_);
    for (VertexIndex x = 0; x < adjacency_.size(); ++x)
        for (const auto& nb : adjacency_[x])
            if (x < nb.index)
                out.emplace_back(x, nb.index, nb.weight);
    return out;
}

bool is_connected(std::size_t vertex_count, std::span<const std::pair<VertexIndex, VertexIndex>> edges)
{
    if (vertex_count == 0)
        return false;
    std::vector<std::vector<VertexIndex>> adj(vertex_count);
    for (const auto& [a, b] : edges) {
        if (a >= vertex_count || b >= vertex_count)
            throw InputError("edge endpoint out of range");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<char> visited(vertex_count, 0);
    std::queue<VertexIndex> frontier;
    frontier.push(0);
    visited[0] = 1;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        const VertexIndex x = frontier.front();
        frontier.pop();
        for (VertexIndex y : adj[x]) {
            if (!visited[y]) {
                visited[y] = 1;
                ++reached;
                frontier.push(y);
            }
        }
    }
    return reached == vertex_count;
}

bool is_connected(const WeightedGraph& g)
{
    std::vector<std::pair<VertexIndex, VertexIndex>> pairs;
    for (const auto& [a, b, w] : g.edge_list())
        pairs.emplace_back(a, b);
    return is_connected(g.vertex_count(), pairs);
}

void require_same_size(const WeightedGraph& g, const VertexFunction& u, const char* what)
{
    if (u.size() != g.vertex_count())
        throw InputError(std::string(what) + ": function has " + std::to_string(u.size()) + " values, graph has "
                         + std::to_string(g.vertex_count()) + " vertices");
}

VertexFunction mu_laplacian(const WeightedGraph& g, const VertexFunction& u)
{
    require_same_size(g, u, "mu_laplacian");
    VertexFunction out(g.vertex_count());
    for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
        double acc = 0.0;
        for (const auto& nb : g.neighbors(x))
            acc += nb.weight * (u[nb.index] - u[x]);
        out[x] = acc / g.mu(x);
    }
    return out;
}

VertexFunction gradient_form(const WeightedGraph& g, const VertexFunction& u, const VertexFunction& v)
{
    require_same_size(g, u, "gradient_form");
    require_same_size(g, v, "gradient_form");
    VertexFunction out(g.vertex_count());
    for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
        double acc = 0.0;
        for (const auto& nb : g.neighbors(x))
            acc += nb.weight * (u[nb.index] - u[x]) * (v[nb.index] - v[x]);
        out[x] = acc / (2.0 * g.mu(x));
    }
    return out;
}

VertexFunction grad_norm(const WeightedGraph& g, const VertexFunction& u)
{
    VertexFunction gamma = gradient_form(g, u, u);
    gamma.vec() = gamma.vec().cwiseSqrt();
    return gamma;
}

double integrate(const WeightedGraph& g, const VertexFunction& u)
{
    require_same_size(g, u, "integrate");
    double acc = 0.0;
    for (VertexIndex x = 0; x < g.vertex_count(); ++x)
        acc += g.mu(x) * u[x];
    return acc;
}

double sobolev_norm(const WeightedGraph& g, const VertexFunction& u)
{
    const VertexFunction gamma = gradient_form(g, u, u);
    double acc = 0.0;
    for (VertexIndex x = 0; x < g.vertex_count(); ++x)
        acc += g.mu(x) * (gamma[x] + u[x] * u[x]);
    return std::sqrt(acc);
}

VertexFunction dirac(const WeightedGraph& g, VertexIndex p)
{
    if (p >= g.vertex_count())
        throw InputError("dirac: vertex index out of range");
    VertexFunction out(g.vertex_count());
    out[p] = 1.0 / g.mu(p);
    return out;
}

VertexFunction dirac(const WeightedGraph& g, const std::string& id)
{
    return dirac(g, g.index_of(id));
}

} // namespace gv
