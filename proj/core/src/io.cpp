#include "gv/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gv/error.hpp"

namespace gv::io {
namespace {

using nlohmann::json;

json parse_json(const std::string& text, const char* what)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string(what) + ": " + e.what());
    }
}

// nlohmann throws type_error/out_of_range on schema mismatches; surface
// them uniformly as input errors.
template <class F>
auto guarded(const char* what, F&& f)
{
    try {
        return f();
    } catch (const json::exception& e) {
        throw InputError(std::string(what) + ": " + e.what());
    }
}

double finite_number(const json& j, const char* key)
{
    const json& v = j.at(key);
    if (!v.is_number())
        throw InputError(std::string("field '") + key + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x))
        throw InputError(std::string("field '") + key + "' must be finite");
    return x;
}

std::vector<double> number_array(const json& j, const char* key)
{
    const json& arr = j.at(key);
    if (!arr.is_array())
        throw InputError(std::string("field '") + key + "' must be an array");
    std::vector<double> out;
    out.reserve(arr.size());
    for (const auto& v : arr) {
        if (!v.is_number())
            throw InputError(std::string("field '") + key + "' must hold numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<std::pair<std::string, double>> vortex_entries(const json& j, const char* key)
{
    std::vector<std::pair<std::string, double>> out;
    if (!j.contains(key))
        return out;
    const json& arr = j.at(key);
    if (!arr.is_array())
        throw InputError(std::string("vortex field '") + key + "' must be an array");
    for (const auto& e : arr)
        out.emplace_back(e.at("vertex").get<std::string>(), finite_number(e, "mult"));
    return out;
}

json vortex_json(const WeightedGraph& g, const VortexSet& vs)
{
    json arr = json::array();
    for (const auto& v : vs.vortices())
        arr.push_back({{"vertex", g.id(v.vertex)}, {"mult", v.multiplicity}});
    return arr;
}

} // namespace

std::string format_number(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw InputError("cannot write '" + path.string() + "'");
    out << text;
    if (!out)
        throw InputError("write to '" + path.string() + "' failed");
}

WeightedGraph parse_graph(const std::string& text)
{
    const json j = parse_json(text, "graph file");
    return guarded("graph file", [&] {
        std::vector<std::string> ids;
        std::vector<double> mu;
        for (const auto& v : j.at("vertices")) {
            ids.push_back(v.at("id").get<std::string>());
            mu.push_back(finite_number(v, "mu"));
        }
        std::vector<EdgeSpec> edges;
        for (const auto& e : j.at("edges"))
            edges.push_back({e.at("a").get<std::string>(), e.at("b").get<std::string>(), finite_number(e, "w")});
        return WeightedGraph(std::move(ids), std::move(mu), edges);
    });
}

WeightedGraph read_graph(const std::filesystem::path& path)
{
    return parse_graph(read_text(path));
}

std::string format_graph(const WeightedGraph& g)
{
    json vertices = json::array();
    for (VertexIndex x = 0; x < g.vertex_count(); ++x)
        vertices.push_back({{"id", g.id(x)}, {"mu", g.mu(x)}});
    json edges = json::array();
    for (const auto& [a, b, w] : g.edge_list())
        edges.push_back({{"a", g.id(a)}, {"b", g.id(b)}, {"w", w}});
    json j;
    j["vertices"] = std::move(vertices);
    j["edges"] = std::move(edges);
    return j.dump(1) + "\n";
}

SystemVortices parse_system_vortices(const WeightedGraph& g, const std::string& text)
{
    const json j = parse_json(text, "vortex file");
    return guarded("vortex file", [&] {
        if (!j.is_object())
            throw InputError("vortex file must hold a JSON object");
        return SystemVortices{VortexSet(g, vortex_entries(j, "m")), VortexSet(g, vortex_entries(j, "n"))};
    });
}

SystemVortices read_system_vortices(const WeightedGraph& g, const std::filesystem::path& path)
{
    return parse_system_vortices(g, read_text(path));
}

ScalarVortexSet parse_scalar_vortices(const WeightedGraph& g, const std::string& text)
{
    const json j = parse_json(text, "vortex file");
    return guarded("vortex file", [&] {
        if (!j.is_object())
            throw InputError("vortex file must hold a JSON object");
        return ScalarVortexSet(g, vortex_entries(j, "p"));
    });
}

ScalarVortexSet read_scalar_vortices(const WeightedGraph& g, const std::filesystem::path& path)
{
    return parse_scalar_vortices(g, read_text(path));
}

std::string format_system_vortices(const WeightedGraph& g, const SystemVortices& vs)
{
    json j;
    j["m"] = vortex_json(g, vs.m);
    j["n"] = vortex_json(g, vs.n);
    return j.dump(1) + "\n";
}

std::string format_scalar_vortices(const WeightedGraph& g, const ScalarVortexSet& vp)
{
    json j;
    j["p"] = vortex_json(g, vp);
    return j.dump(1) + "\n";
}

SolutionFile to_solution_file(const SystemSolution& sol, double lambda)
{
    return {sol.u.to_vector(), sol.v.to_vector(), lambda, sol.report.residuals, sol.report.iterations,
            sol.report.outcome};
}

SolutionFile to_solution_file(const ScalarSolution& sol, double lambda)
{
    return {sol.u.to_vector(), std::nullopt, lambda, sol.report.residuals, sol.report.iterations,
            sol.report.outcome};
}

std::string format_solution(const SolutionFile& s)
{
    json j;
    j["u"] = s.u;
    if (s.v)
        j["v"] = *s.v;
    j["lambda"] = s.lambda;
    j["residual"] = s.residual;
    j["iterations"] = s.iterations;
    j["outcome"] = std::string(to_string(s.outcome));
    return j.dump(1) + "\n";
}

SolutionFile parse_solution(const std::string& text)
{
    const json j = parse_json(text, "solution file");
    return guarded("solution file", [&] {
        SolutionFile s;
        s.u = number_array(j, "u");
        if (j.contains("v"))
            s.v = number_array(j, "v");
        s.lambda = finite_number(j, "lambda");
        s.residual = number_array(j, "residual");
        s.iterations = j.at("iterations").get<int>();
        s.outcome = outcome_from_string(j.at("outcome").get<std::string>());
        if (s.v && s.v->size() != s.u.size())
            throw InputError("solution components differ in length");
        return s;
    });
}

SolutionFile read_solution(const std::filesystem::path& path)
{
    return parse_solution(read_text(path));
}

std::string format_sweep_csv(const std::vector<SweepRecord>& records)
{
    auto opt = [](const std::optional<double>& x) { return x ? format_number(*x) : std::string(); };
    std::string out = "lambda,outcome,iterations,sup_dist_u,sup_dist_v,bound_c,dist_err_1,dist_err_2,residual_1,residual_2\n";
    for (const auto& r : records) {
        out += format_number(r.lambda) + "," + std::string(to_string(r.outcome)) + "," + std::to_string(r.iterations)
               + "," + format_number(r.sup_dist_u) + "," + format_number(r.sup_dist_v) + "," + opt(r.bound_c) + ","
               + opt(r.dist_err_1) + "," + opt(r.dist_err_2) + "," + format_number(r.residual_1) + ","
               + format_number(r.residual_2) + "\n";
    }
    return out;
}

std::string format_bracket(const LambdaCBracket& bracket)
{
    json probes = json::array();
    for (const auto& p : bracket.probes)
        probes.push_back({{"lambda", p.lambda}, {"outcome", std::string(to_string(p.outcome))}});
    json j;
    j["lo"] = bracket.lo;
    j["hi"] = bracket.hi;
    j["probes"] = std::move(probes);
    j["tentative"] = bracket.tentative;
    return j.dump(1) + "\n";
}

LambdaCBracket parse_bracket(const std::string& text)
{
    const json j = parse_json(text, "bracket file");
    return guarded("bracket file", [&] {
        LambdaCBracket b;
        b.lo = finite_number(j, "lo");
        b.hi = finite_number(j, "hi");
        b.tentative = j.at("tentative").get<bool>();
        for (const auto& p : j.at("probes"))
            b.probes.push_back({finite_number(p, "lambda"), outcome_from_string(p.at("outcome").get<std::string>())});
        return b;
    });
}

} // namespace gv::io
