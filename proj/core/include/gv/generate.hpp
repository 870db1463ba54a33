#pragma once

#include <cstdint>

#include "gv/graph.hpp"

namespace gv {

/// When set, μ and ω are drawn uniformly from (0.5, 2.0]; otherwise both are 1.
struct WeightOptions {
    bool randomize_mu = false;
    bool randomize_w = false;
    std::uint64_t seed = 0;
};

/// rows × cols grid without wraparound. Vertex ids are "r_c".
WeightedGraph make_lattice(std::size_t rows, std::size_t cols, const WeightOptions& opts = {});

/// rows × cols grid with periodic wraparound; needs rows, cols ≥ 3 so that
/// wrap edges are distinct from interior ones.
WeightedGraph make_torus(std::size_t rows, std::size_t cols, const WeightOptions& opts = {});

/// Complete graph K_n with ids "x0".."x{n-1}".
WeightedGraph make_complete(std::size_t n, const WeightOptions& opts = {});

/// Erdős–Rényi G(n,p) draws with the given seed, redrawn until connected.
/// Throws InputError once max_retries draws have all been disconnected.
WeightedGraph make_random(std::size_t n, double p, std::uint64_t seed, const WeightOptions& opts = {},
                          int max_retries = 1000);

/// Random spanning tree plus each remaining pair with probability extra_p.
/// Always connected; used to build randomized test corpora.
WeightedGraph make_random_connected(std::size_t n, double extra_p, std::uint64_t seed, const WeightOptions& opts = {});

} // namespace gv
