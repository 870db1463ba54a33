#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace gv {

using VertexIndex = std::size_t;

/// Real-valued function on the vertex set, stored densely in the owning
/// graph's vertex order.
class VertexFunction {
public:
    VertexFunction() = default;
    explicit VertexFunction(std::size_t n, double fill = 0.0) : values_(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), fill)) {}
    explicit VertexFunction(Eigen::VectorXd values) : values_(std::move(values)) {}
    explicit VertexFunction(const std::vector<double>& values)
        : values_(Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()))) {}

    std::size_t size() const { return static_cast<std::size_t>(values_.size()); }

    double operator[](VertexIndex i) const { return values_[static_cast<Eigen::Index>(i)]; }
    double& operator[](VertexIndex i) { return values_[static_cast<Eigen::Index>(i)]; }

    const Eigen::VectorXd& vec() const { return values_; }
    Eigen::VectorXd& vec() { return values_; }

    std::vector<double> to_vector() const { return {values_.data(), values_.data() + values_.size()}; }

    double sup_norm() const { return values_.size() == 0 ? 0.0 : values_.cwiseAbs().maxCoeff(); }
    double min() const { return values_.minCoeff(); }
    double max() const { return values_.maxCoeff(); }
    bool all_finite() const { return values_.allFinite(); }

    VertexFunction& operator+=(const VertexFunction& o) { values_ += o.values_; return *this; }
    VertexFunction& operator-=(const VertexFunction& o) { values_ -= o.values_; return *this; }
    VertexFunction& operator+=(double c) { values_.array() += c; return *this; }
    VertexFunction& operator-=(double c) { values_.array() -= c; return *this; }
    VertexFunction& operator*=(double c) { values_ *= c; return *this; }

    friend VertexFunction operator+(VertexFunction a, const VertexFunction& b) { return a += b; }
    friend VertexFunction operator-(VertexFunction a, const VertexFunction& b) { return a -= b; }
    friend VertexFunction operator+(VertexFunction a, double c) { return a += c; }
    friend VertexFunction operator-(VertexFunction a, double c) { return a -= c; }
    friend VertexFunction operator*(double c, VertexFunction a) { return a *= c; }
    friend VertexFunction operator-(VertexFunction a) { a.values_ = -a.values_; return a; }

    friend bool operator==(const VertexFunction& a, const VertexFunction& b) {
        return a.values_.size() == b.values_.size() && a.values_ == b.values_;
    }

private:
    Eigen::VectorXd values_;
};

struct EdgeSpec {
    std::string a;
    std::string b;
    double w = 1.0;
};

struct Neighbor {
    VertexIndex index;
    double weight;
};

/// Connected finite graph with positive vertex measure and symmetric
/// positive edge weights. Immutable once built.
class WeightedGraph {
public:
    /// Validates and builds. Throws InputError on nonpositive measure or
    /// weight, unknown endpoints, self-loops, duplicate ids or edges, and
    /// disconnected topology.
    WeightedGraph(std::vector<std::string> ids, std::vector<double> mu, const std::vector<EdgeSpec>& edges);

    std::size_t vertex_count() const { return ids_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    const std::vector<std::string>& ids() const { return ids_; }
    const std::string& id(VertexIndex i) const { return ids_.at(i); }
    VertexIndex index_of(const std::string& id) const;

    double mu(VertexIndex i) const { return mu_[i]; }
    const std::vector<double>& measure() const { return mu_; }

    std::span<const Neighbor> neighbors(VertexIndex i) const { return adjacency_[i]; }

    /// |V| = sum of the vertex measure.
    double volume() const { return volume_; }
    /// max over vertices of 1/mu.
    double eta() const { return eta_; }

    /// Each undirected edge once, with a < b.
    std::vector<std::tuple<VertexIndex, VertexIndex, double>> edge_list() const;

    VertexFunction constant(double c) const { return VertexFunction(vertex_count(), c); }

private:
    std::vector<std::string> ids_;
    std::vector<double> mu_;
    std::vector<std::vector<Neighbor>> adjacency_;
    std::unordered_map<std::string, VertexIndex> index_;
    std::size_t edge_count_ = 0;
    double volume_ = 0.0;
    double eta_ = 0.0;
};

/// Breadth-first reachability over a raw edge list on vertices 0..n-1.
bool is_connected(std::size_t vertex_count, std::span<const std::pair<VertexIndex, VertexIndex>> edges);
/// Always true for a successfully constructed graph; kept for symmetry.
bool is_connected(const WeightedGraph& g);

// Discrete calculus. All operators throw InputError on a size mismatch.

/// Δu(x) = (1/μ(x)) Σ_{y~x} ω_xy (u(y) - u(x))
VertexFunction mu_laplacian(const WeightedGraph& g, const VertexFunction& u);

/// Γ(u,v)(x) = (1/2μ(x)) Σ_{y~x} ω_xy (u(y)-u(x)) (v(y)-v(x))
VertexFunction gradient_form(const WeightedGraph& g, const VertexFunction& u, const VertexFunction& v);

/// |∇u| = sqrt(Γ(u,u)).
VertexFunction grad_norm(const WeightedGraph& g, const VertexFunction& u);

/// ∫_V u dμ = Σ μ(x) u(x).
double integrate(const WeightedGraph& g, const VertexFunction& u);

/// (∫_V |∇u|² + u² dμ)^{1/2}
double sobolev_norm(const WeightedGraph& g, const VertexFunction& u);

/// Unit-mass point source: 1/μ(p) at p, zero elsewhere.
VertexFunction dirac(const WeightedGraph& g, VertexIndex p);
VertexFunction dirac(const WeightedGraph& g, const std::string& id);

void require_same_size(const WeightedGraph& g, const VertexFunction& u, const char* what);

} // namespace gv
