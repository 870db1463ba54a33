#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "gv/analysis.hpp"
#include "gv/error.hpp"
#include "gv/generate.hpp"
#include "gv/io.hpp"
#include "gv/solver.hpp"

namespace gv::cli {
namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

spdlog::logger& log()
{
    static auto logger = std::make_shared<spdlog::logger>("gvortex", std::make_shared<spdlog::sinks::stderr_sink_mt>());
    return *logger;
}

void configure_logging()
{
    const char* env = std::getenv("GV_LOG");
    const std::string level = env ? env : "info";
    if (level == "error")
        log().set_level(spdlog::level::err);
    else if (level == "debug")
        log().set_level(spdlog::level::debug);
    else
        log().set_level(spdlog::level::info);
    log().set_pattern("[%l] %v");
}

struct RunConfig {
    std::string graph;
    std::string vortices;
    std::string out;
    std::string solution;
    double a = 1.0;
    double b = 2.0;
    double lambda = 1.0;
    bool scalar = false;
    std::vector<double> lambdas;
    std::vector<double> bracket;
    double width_tol = 1e-2;
    unsigned jobs = 1;
    IterationOptions iter;

    // gen
    std::string kind = "torus";
    std::size_t rows = 8;
    std::size_t cols = 8;
    std::size_t n = 10;
    double p = 0.3;
    std::uint64_t seed = 0;
    bool random_mu = false;
    bool random_w = false;
};

void add_iteration_flags(CLI::App* cmd, RunConfig& cfg)
{
    cmd->add_option("--step-tol", cfg.iter.step_tol, "Step sup-norm tolerance")->capture_default_str();
    cmd->add_option("--residual-tol", cfg.iter.residual_tol, "Equation residual tolerance")->capture_default_str();
    cmd->add_option("--max-iter", cfg.iter.max_iter, "Iteration budget")->capture_default_str();
    cmd->add_option("--k-margin", cfg.iter.k_margin, "Relative margin of K over its lower bound")->capture_default_str();
}

void add_model_flags(CLI::App* cmd, RunConfig& cfg)
{
    cmd->add_option("--graph", cfg.graph, "Graph JSON file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--vortices", cfg.vortices, "Vortex JSON file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--a", cfg.a, "Model parameter a (0 < a < b)")->capture_default_str();
    cmd->add_option("--b", cfg.b, "Model parameter b")->capture_default_str();
}

void emit(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-")
        out << text;
    else
        io::write_text(path, text);
}

int cmd_gen(const RunConfig& cfg, std::ostream& out)
{
    const WeightOptions w{cfg.random_mu, cfg.random_w, cfg.seed};
    const WeightedGraph g = [&] {
        if (cfg.kind == "lattice")
            return make_lattice(cfg.rows, cfg.cols, w);
        if (cfg.kind == "torus")
            return make_torus(cfg.rows, cfg.cols, w);
        if (cfg.kind == "complete")
            return make_complete(cfg.n, w);
        if (cfg.kind == "random")
            return make_random(cfg.n, cfg.p, cfg.seed, w);
        throw InputError("unknown graph kind '" + cfg.kind + "'");
    }();
    emit(cfg.out, io::format_graph(g), out);
    log().info("generated {} graph: {} vertices, {} edges", cfg.kind, g.vertex_count(), g.edge_count());
    return kOk;
}

void print_report(const IterationReport& r, std::ostream& out)
{
    out << "outcome: " << to_string(r.outcome) << "\n";
    out << "iterations: " << r.iterations << "\n";
    out << "K: " << io::format_number(r.K) << "\n";
    for (std::size_t i = 0; i < r.residuals.size(); ++i)
        out << "residual_" << (i + 1) << ": " << io::format_number(r.residuals[i]) << "\n";
    out << "monotone: " << (r.monotone ? "yes" : "no") << "\n";
}

// Reports max(u + u0) (must be < 0) and min(u + u0 + c) (must be ≥ 0).
void print_sandwich(const char* name, const VertexFunction& dist, std::optional<double> c, std::ostream& out)
{
    out << "sandwich_upper_" << name << ": " << io::format_number(dist.max()) << "\n";
    if (c)
        out << "sandwich_lower_" << name << ": " << io::format_number(dist.min() + *c) << "\n";
}

int cmd_solve(const RunConfig& cfg, std::ostream& out)
{
    const WeightedGraph g = io::read_graph(cfg.graph);
    io::SolutionFile file;
    Outcome outcome;
    if (cfg.scalar) {
        const ScalarVortexSet vp = io::read_scalar_vortices(g, cfg.vortices);
        const VertexFunction bg = background_scalar(g, vp);
        const ScalarSolution sol = iterate_scalar(g, cfg.lambda, bg, vp, cfg.iter);
        const double threshold = constructive_threshold_scalar(g, vp);
        std::optional<double> c;
        if (cfg.lambda >= threshold)
            c = subsolution_constant(threshold, cfg.lambda);
        print_report(sol.report, out);
        print_sandwich("u", sol.dist_u, c, out);
        file = io::to_solution_file(sol, cfg.lambda);
        outcome = sol.report.outcome;
    } else {
        const ModelParams params(cfg.a, cfg.b, cfg.lambda);
        const io::SystemVortices vs = io::read_system_vortices(g, cfg.vortices);
        const BackgroundPair bg = background_pair(g, vs.m, vs.n);
        const SystemSolution sol = iterate_system(g, params, bg, vs.m, vs.n, cfg.iter);
        const double threshold = constructive_threshold(g, params, vs.m, vs.n);
        std::optional<double> c;
        if (cfg.lambda >= threshold)
            c = subsolution_constant(threshold, cfg.lambda);
        print_report(sol.report, out);
        print_sandwich("u", sol.dist_u, c, out);
        print_sandwich("v", sol.dist_v, c, out);
        file = io::to_solution_file(sol, cfg.lambda);
        outcome = sol.report.outcome;
    }
    if (!cfg.out.empty())
        io::write_text(cfg.out, io::format_solution(file));
    if (outcome != Outcome::Converged) {
        log().error("solve did not converge: {}", to_string(outcome));
        return kNotConverged;
    }
    return kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out)
{
    if (cfg.lambdas.empty())
        throw InputError("--lambdas is required for sweep");
    const WeightedGraph g = io::read_graph(cfg.graph);
    const io::SystemVortices vs = io::read_system_vortices(g, cfg.vortices);
    std::vector<double> lambdas = cfg.lambdas;
    std::sort(lambdas.begin(), lambdas.end());
    const ModelParams base(cfg.a, cfg.b, lambdas.front());

    const auto records = lambda_sweep(g, base, vs.m, vs.n, lambdas, cfg.iter, cfg.jobs);
    const std::string csv = io::format_sweep_csv(records);
    if (cfg.out.empty())
        out << csv;
    else
        io::write_text(cfg.out, csv);

    const auto converged = std::count_if(records.begin(), records.end(),
                                         [](const SweepRecord& r) { return r.outcome == Outcome::Converged; });
    log().info("{} of {} probes converged", converged, records.size());
    if (converged < 3) {
        log().info("fewer than three converged probes; decay rate not estimated");
        return kOk;
    }
    const std::string rate = io::format_number(decay_rate(records, SweepField::SupDistU));
    // stdout carries the CSV itself when no --out is given.
    if (cfg.out.empty())
        log().info("decay_rate_sup_dist_u: {}", rate);
    else
        out << "decay_rate_sup_dist_u: " << rate << "\n";
    return kOk;
}

int cmd_lambda_c(const RunConfig& cfg, std::ostream& out)
{
    if (cfg.bracket.size() != 2)
        throw InputError("--bracket needs exactly two values lo,hi");
    const WeightedGraph g = io::read_graph(cfg.graph);
    const ScalarVortexSet vp = io::read_scalar_vortices(g, cfg.vortices);
    const LambdaCBracket bracket =
        estimate_lambda_c_scalar(g, vp, cfg.bracket[0], cfg.bracket[1], cfg.width_tol, cfg.iter);
    emit(cfg.out, io::format_bracket(bracket), out);
    log().info("lambda_c in [{}, {}] after {} probes (lower bound {})", io::format_number(bracket.lo),
               io::format_number(bracket.hi), bracket.probes.size(),
               io::format_number(lambda_c_lower_bound(g, vp)));
    if (bracket.tentative)
        log().warn("bracket is tentative: some probe hit the iteration budget");
    return kOk;
}

struct CheckLine {
    std::string name;
    bool pass;
    std::string detail;
};

int cmd_check(const RunConfig& cfg, std::ostream& out)
{
    const WeightedGraph g = io::read_graph(cfg.graph);
    const io::SolutionFile s = io::read_solution(cfg.solution);
    if (s.u.size() != g.vertex_count())
        throw InputError("solution length does not match the graph");

    std::vector<CheckLine> lines;
    lines.push_back({"outcome", s.outcome == Outcome::Converged, std::string(to_string(s.outcome))});
    const VertexFunction u(s.u);
    const double tol = cfg.iter.residual_tol;

    auto integral_check = [&](const char* name, const VertexFunction& lf, double n_total, double scale) {
        const double defect = std::abs(integrate(g, lf) + kFourPi * n_total);
        lines.push_back({name, defect <= 1e-8 * kFourPi * scale, io::format_number(defect)});
    };
    // Only u is stored, so u + u0 rounds to exactly 0 wherever the true gap is
    // below ulp(u0); the strict bound is checked by the solver on its own
    // unrounded iterate, here we check what a double can represent.
    auto sandwich_checks = [&](const char* name, const VertexFunction& dist, std::optional<double> c) {
        lines.push_back({std::string("sandwich_upper_") + name, dist.max() <= 0.0, io::format_number(dist.max())});
        if (c)
            lines.push_back({std::string("sandwich_lower_") + name, dist.min() >= -*c,
                             io::format_number(dist.min() + *c)});
    };

    if (!s.v) {
        const ScalarVortexSet vp = io::read_scalar_vortices(g, cfg.vortices);
        const VertexFunction bg = background_scalar(g, vp);
        const double r = residual_scalar(g, s.lambda, bg, vp, u);
        lines.push_back({"residual", r <= tol, io::format_number(r)});
        const double threshold = constructive_threshold_scalar(g, vp);
        sandwich_checks("u", u + bg, s.lambda >= threshold ? std::optional(subsolution_constant(threshold, s.lambda))
                                                           : std::nullopt);
        integral_check("integral_identity", s.lambda * scalar_f(u + bg), vp.total(), vp.total());
    } else {
        if (s.v->size() != g.vertex_count())
            throw InputError("solution length does not match the graph");
        const VertexFunction v(*s.v);
        const ModelParams params(cfg.a, cfg.b, s.lambda);
        const io::SystemVortices vs = io::read_system_vortices(g, cfg.vortices);
        const BackgroundPair bg = background_pair(g, vs.m, vs.n);
        const auto [r1, r2] = residual_system(g, params, bg, vs.m, vs.n, u, v);
        lines.push_back({"residual_1", r1 <= tol, io::format_number(r1)});
        lines.push_back({"residual_2", r2 <= tol, io::format_number(r2)});
        const double threshold = constructive_threshold(g, params, vs.m, vs.n);
        std::optional<double> c;
        if (s.lambda >= threshold)
            c = subsolution_constant(threshold, s.lambda);
        sandwich_checks("u", u + bg.u0, c);
        sandwich_checks("v", v + bg.v0, c);
        const VertexFunction w1 = u + bg.u0;
        const VertexFunction w2 = v + bg.v0;
        const double scale = std::max(vs.m.total(), vs.n.total());
        integral_check("integral_identity_1", s.lambda * f1(params, w1, w2), vs.m.total(), scale);
        integral_check("integral_identity_2", s.lambda * f2(params, w1, w2), vs.n.total(), scale);
    }

    bool all = true;
    for (const auto& l : lines) {
        out << (l.pass ? "PASS " : "FAIL ") << l.name << " " << l.detail << "\n";
        all = all && l.pass;
    }
    return all ? kOk : kNotConverged;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out)
{
    configure_logging();
    RunConfig cfg;

    CLI::App app{"Chern-Simons vortex solver on finite weighted graphs"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "Generate a graph file");
    gen->add_option("--kind", cfg.kind, "lattice | torus | complete | random")
        ->check(CLI::IsMember({"lattice", "torus", "complete", "random"}))
        ->capture_default_str();
    gen->add_option("--rows", cfg.rows, "Rows (lattice, torus)")->capture_default_str();
    gen->add_option("--cols", cfg.cols, "Columns (lattice, torus)")->capture_default_str();
    gen->add_option("--n", cfg.n, "Vertex count (complete, random)")->capture_default_str();
    gen->add_option("--p", cfg.p, "Edge probability (random)")->capture_default_str();
    gen->add_option("--seed", cfg.seed, "Seed for random topology and weights")->capture_default_str();
    gen->add_flag("--random-mu", cfg.random_mu, "Draw vertex measures from (0.5, 2]");
    gen->add_flag("--random-w", cfg.random_w, "Draw edge weights from (0.5, 2]");
    gen->add_option("--out", cfg.out, "Output path (stdout when omitted)");

    auto* solve = app.add_subcommand("solve", "Compute the maximal solution at one lambda");
    add_model_flags(solve, cfg);
    solve->add_flag("--scalar", cfg.scalar, "Use the scalar Chern-Simons equation");
    solve->add_option("--lambda", cfg.lambda, "Coupling lambda")->required();
    solve->add_option("--out", cfg.out, "Solution JSON path");
    add_iteration_flags(solve, cfg);

    auto* sweep = app.add_subcommand("sweep", "Solve over a list of lambdas and write CSV");
    add_model_flags(sweep, cfg);
    sweep->add_option("--lambdas", cfg.lambdas, "Comma-separated lambdas")->delimiter(',')->required();
    sweep->add_option("--jobs", cfg.jobs, "Concurrent probes")->capture_default_str();
    sweep->add_option("--out", cfg.out, "CSV path (stdout when omitted)");
    add_iteration_flags(sweep, cfg);

    auto* lambda_c = app.add_subcommand("lambda-c", "Bracket the critical lambda of the scalar equation");
    lambda_c->add_option("--graph", cfg.graph, "Graph JSON file")->required()->check(CLI::ExistingFile);
    lambda_c->add_option("--vortices", cfg.vortices, "Vortex JSON file with key \"p\"")
        ->required()
        ->check(CLI::ExistingFile);
    lambda_c->add_option("--bracket", cfg.bracket, "Initial bracket lo,hi")->delimiter(',')->expected(2)->required();
    lambda_c->add_option("--width-tol", cfg.width_tol, "Stop once hi - lo <= width")->capture_default_str();
    lambda_c->add_option("--out", cfg.out, "Bracket JSON path (stdout when omitted)");
    add_iteration_flags(lambda_c, cfg);

    auto* check = app.add_subcommand("check", "Verify a stored solution");
    check->add_option("--graph", cfg.graph, "Graph JSON file")->required()->check(CLI::ExistingFile);
    check->add_option("--vortices", cfg.vortices, "Vortex JSON file")->required()->check(CLI::ExistingFile);
    check->add_option("--solution", cfg.solution, "Solution JSON file")->required()->check(CLI::ExistingFile);
    check->add_option("--a", cfg.a, "Model parameter a")->capture_default_str();
    check->add_option("--b", cfg.b, "Model parameter b")->capture_default_str();
    check->add_option("--residual-tol", cfg.iter.residual_tol, "Residual acceptance threshold")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        return kOk;
    } catch (const CLI::ParseError& e) {
        log().error("{}", e.what());
        return kInputError;
    }

    try {
        cfg.iter.validate();
        if (*gen)
            return cmd_gen(cfg, out);
        if (*solve)
            return cmd_solve(cfg, out);
        if (*sweep)
            return cmd_sweep(cfg, out);
        if (*lambda_c)
            return cmd_lambda_c(cfg, out);
        if (*check)
            return cmd_check(cfg, out);
    } catch (const InputError& e) {
        log().error("input error: {}", e.what());
        return kInputError;
    } catch (const SolverError& e) {
        log().error("solver failure: {}", e.what());
        return kSolverFailure;
    } catch (const std::exception& e) {
        log().error("internal error: {}", e.what());
        return kSolverFailure;
    }
    return kInputError;
}

} // namespace gv::cli
