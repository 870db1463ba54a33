#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "gv/generate.hpp"
#include "gv/graph.hpp"
#include "gv/model.hpp"

namespace gv::testing {

inline constexpr double kPi = 3.14159265358979323846;

// x1 -- x2 with the given measure and unit weight.
inline WeightedGraph two_vertex(double mu1 = 1.0, double mu2 = 1.0, double w = 1.0)
{
    return WeightedGraph({"x1", "x2"}, {mu1, mu2}, {{"x1", "x2", w}});
}

inline WeightedGraph path3()
{
    return WeightedGraph({"x1", "x2", "x3"}, {1, 1, 1}, {{"x1", "x2", 1}, {"x2", "x3", 1}});
}

// The reference instance: 8×8 periodic lattice, unit measure and weights,
// one m-vortex and one n-vortex on opposite corners.
struct TorusCase {
    WeightedGraph g = make_torus(8, 8);
    VortexSet vm{g, std::vector<std::pair<std::string, double>>{{"0_0", 1.0}}};
    VortexSet vn{g, std::vector<std::pair<std::string, double>>{{"4_4", 1.0}}};
};

inline VertexFunction random_function(std::size_t n, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0)
{
    std::uniform_real_distribution<double> d(lo, hi);
    VertexFunction u(n);
    for (std::size_t i = 0; i < n; ++i)
        u[i] = d(rng);
    return u;
}

// Random connected graph with n ≤ 50 and μ, ω drawn from (0.5, 2].
inline WeightedGraph random_graph(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 50)(rng);
    const double p = std::uniform_real_distribution<double>(0.0, 0.3)(rng);
    return make_random_connected(n, p, seed, {true, true, seed});
}

// Direct evaluation of the five exponential terms, independent of the
// library's expm1 rearrangement.
inline double five_term_f1(double a, double b, double u, double v)
{
    return a * (b - a) * std::exp(u) - b * (b - a) * std::exp(v) + a * a * std::exp(2 * u) -
           a * b * std::exp(2 * v) + b * (b - a) * std::exp(u + v);
}

inline double five_term_f2(double a, double b, double u, double v)
{
    return -b * (b - a) * std::exp(u) + a * (b - a) * std::exp(v) - a * b * std::exp(2 * u) +
           a * a * std::exp(2 * v) + b * (b - a) * std::exp(u + v);
}

// -ln((1 + sqrt(1 - s)) / 2), written out plainly.
inline double naive_bound(double s)
{
    return -std::log((1.0 + std::sqrt(1.0 - s)) / 2.0);
}

} // namespace gv::testing
