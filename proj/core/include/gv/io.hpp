#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gv/analysis.hpp"
#include "gv/graph.hpp"
#include "gv/model.hpp"
#include "gv/solver.hpp"

namespace gv::io {

// All readers throw InputError on I/O failure, malformed JSON, missing
// fields and any violation of the underlying type invariants.

// {"vertices":[{"id":str,"mu":float}], "edges":[{"a":str,"b":str,"w":float}]}
WeightedGraph parse_graph(const std::string& text);
WeightedGraph read_graph(const std::filesystem::path& path);
std::string format_graph(const WeightedGraph& g);

struct SystemVortices {
    VortexSet m;
    VortexSet n;
};

// {"m":[{"vertex":str,"mult":float}], "n":[...]}; both keys optional.
SystemVortices parse_system_vortices(const WeightedGraph& g, const std::string& text);
SystemVortices read_system_vortices(const WeightedGraph& g, const std::filesystem::path& path);
// {"p":[{"vertex":str,"mult":float}]}
ScalarVortexSet parse_scalar_vortices(const WeightedGraph& g, const std::string& text);
ScalarVortexSet read_scalar_vortices(const WeightedGraph& g, const std::filesystem::path& path);
std::string format_system_vortices(const WeightedGraph& g, const SystemVortices& vs);
std::string format_scalar_vortices(const WeightedGraph& g, const ScalarVortexSet& vp);

/// {"u":[float], "v":[float], "lambda":float, "residual":[float,float],
///  "iterations":int, "outcome":str}. The scalar form has no "v" and a
/// one-element "residual".
struct SolutionFile {
    std::vector<double> u;
    std::optional<std::vector<double>> v;
    double lambda = 0.0;
    std::vector<double> residual;
    int iterations = 0;
    Outcome outcome = Outcome::MaxIterations;
};

SolutionFile to_solution_file(const SystemSolution& sol, double lambda);
SolutionFile to_solution_file(const ScalarSolution& sol, double lambda);
std::string format_solution(const SolutionFile& s);
SolutionFile parse_solution(const std::string& text);
SolutionFile read_solution(const std::filesystem::path& path);

/// Header: lambda,outcome,iterations,sup_dist_u,sup_dist_v,bound_c,
/// dist_err_1,dist_err_2,residual_1,residual_2. Absent values are empty.
std::string format_sweep_csv(const std::vector<SweepRecord>& records);

// {"lo":float,"hi":float,"probes":[{"lambda":float,"outcome":str}],"tentative":bool}
std::string format_bracket(const LambdaCBracket& bracket);
LambdaCBracket parse_bracket(const std::string& text);

/// 17 significant digits ("%.17g"); round-trips exactly.
std::string format_number(double x);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

} // namespace gv::io
