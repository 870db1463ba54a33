#include "gv/generate.hpp"

#include <random>
#include <string>

#include "gv/error.hpp"

namespace gv {
namespace {

class Weighter {
public:
    explicit Weighter(const WeightOptions& opts) : opts_(opts), rng_(opts.seed ^ 0x9e3779b97f4a7c15ULL) {}

    // (0.5, 2.0]: reflect the half-open uniform [0.5, 2.0).
    double draw() { return 2.5 - dist_(rng_); }
    double mu() { return opts_.randomize_mu ? draw() : 1.0; }
    double w() { return opts_.randomize_w ? draw() : 1.0; }

private:
    WeightOptions opts_;
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> dist_{0.5, 2.0};
};

std::string grid_id(std::size_t r, std::size_t c)
{
    return std::to_string(r) + "_" + std::to_string(c);
}

std::string flat_id(std::size_t i)
{
    return "x" + std::to_string(i);
}

WeightedGraph make_grid(std::size_t rows, std::size_t cols, bool wrap, const WeightOptions& opts)
{
    Weighter weigh(opts);
    std::vector<std::string> ids;
    std::vector<double> mu;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            ids.push_back(grid_id(r, c));
            mu.push_back(weigh.mu());
        }

    std::vector<EdgeSpec> edges;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            if (c + 1 < cols || wrap)
                edges.push_back({grid_id(r, c), grid_id(r, (c + 1) % cols), weigh.w()});
            if (r + 1 < rows || wrap)
                edges.push_back({grid_id(r, c), grid_id((r + 1) % rows, c), weigh.w()});
        }
    return WeightedGraph(std::move(ids), std::move(mu), edges);
}

WeightedGraph assemble(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs, Weighter& weigh)
{
    std::vector<std::string> ids;
    std::vector<double> mu;
    for (std::size_t i = 0; i < n; ++i) {
        ids.push_back(flat_id(i));
        mu.push_back(weigh.mu());
    }
    std::vector<EdgeSpec> edges;
    edges.reserve(pairs.size());
    for (const auto& [a, b] : pairs)
        edges.push_back({flat_id(a), flat_id(b), weigh.w()});
    return WeightedGraph(std::move(ids), std::move(mu), edges);
}

} // namespace

WeightedGraph make_lattice(std::size_t rows, std::size_t cols, const WeightOptions& opts)
{
    if (rows < 1 || cols < 1 || rows * cols < 2)
        throw InputError("lattice needs at least two vertices");
    return make_grid(rows, cols, false, opts);
}

WeightedGraph make_torus(std::size_t rows, std::size_t cols, const WeightOptions& opts)
{
    if (rows < 3 || cols < 3)
        throw InputError("torus needs rows, cols >= 3");
    return make_grid(rows, cols, true, opts);
}

WeightedGraph make_complete(std::size_t n, const WeightOptions& opts)
{
    if (n < 2)
        throw InputError("complete graph needs n >= 2");
    Weighter weigh(opts);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            pairs.emplace_back(i, j);
    return assemble(n, pairs, weigh);
}

WeightedGraph make_random(std::size_t n, double p, std::uint64_t seed, const WeightOptions& opts, int max_retries)
{
    if (n < 2)
        throw InputError("random graph needs n >= 2");
    if (!(p > 0.0 && p <= 1.0))
        throw InputError("edge probability must lie in (0, 1]");

    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (coin(rng))
                    pairs.emplace_back(i, j);
        if (is_connected(n, pairs)) {
            Weighter weigh(opts);
            return assemble(n, pairs, weigh);
        }
    }
    throw InputError("no connected G(n,p) draw within " + std::to_string(max_retries) + " retries");
}

WeightedGraph make_random_connected(std::size_t n, double extra_p, std::uint64_t seed, const WeightOptions& opts)
{
    if (n < 2)
        throw InputError("random graph needs n >= 2");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::vector<char>> used(n, std::vector<char>(n, 0));
    for (std::size_t i = 1; i < n; ++i) {
        std::uniform_int_distribution<std::size_t> parent(0, i - 1);
        const std::size_t j = parent(rng);
        pairs.emplace_back(j, i);
        used[j][i] = 1;
    }
    std::bernoulli_distribution coin(extra_p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!used[i][j] && coin(rng))
                pairs.emplace_back(i, j);
    Weighter weigh(opts);
    return assemble(n, pairs, weigh);
}

} // namespace gv
