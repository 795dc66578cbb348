#ifndef NEWTON_ZETA_CLI_HPP
#define NEWTON_ZETA_CLI_HPP

// JSON front end shared by the newton-zeta tool and its tests.
// Requires nlohmann/json.

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <newton_zeta/mixed_volume.hpp>
#include <newton_zeta/newton_system.hpp>
#include <newton_zeta/zeta.hpp>

namespace nzeta::cli
{

using json = nlohmann::json;

enum ExitCode { ok = 0, input_failure = 2, internal_failure = 3 };

inline const std::vector<std::string> &task_names()
{
    static const std::vector<std::string> names{"deform-origin", "deform-infinity", "polyzeta",
                                                "euler",         "mixedvol",        "info"};
    return names;
}

// Command-line settings; unset fields fall back to the job document.
struct Options {
    std::string task;
    std::optional<std::string> scope;
    std::optional<bool> trace;
    std::optional<std::string> deform_var;
    unsigned jobs = 1;
};

namespace detail
{

[[noreturn]] inline void fail(const std::string &path, const std::string &what)
{
    throw input_error(path + ": " + what);
}

inline json integer_json(const Integer &v)
{
    if (v.fits_slong_p()) {
        return json(v.get_si());
    }
    return json(v.get_str());
}

inline json rational_json(const Rational &v)
{
    if (v.get_den() == 1) {
        return integer_json(v.get_num());
    }
    return json(v.get_str());
}

inline Point read_point(const json &j, std::size_t n, const std::string &path)
{
    if (!j.is_array()) {
        fail(path, "expected an array of integers");
    }
    if (j.size() != n) {
        fail(path, "expected " + std::to_string(n) + " coordinates, got " + std::to_string(j.size()));
    }
    Point p(n);
    for (std::size_t i = 0; i < n; ++i) {
        const json &c = j[i];
        const std::string sub = path + "[" + std::to_string(i) + "]";
        if (c.is_number_integer()) {
            p[i] = Integer(c.get<long>());
        } else if (c.is_string()) {
            try {
                p[i] = Integer(c.get<std::string>());
            } catch (const std::invalid_argument &) {
                fail(sub, "not an integer");
            }
        } else {
            fail(sub, "not an integer");
        }
    }
    return p;
}

inline std::vector<Point> read_points(const json &j, std::size_t n, const std::string &path)
{
    if (!j.is_array() || j.empty()) {
        fail(path, "expected a nonempty array of exponent vectors");
    }
    std::vector<Point> pts;
    for (std::size_t i = 0; i < j.size(); ++i) {
        pts.push_back(read_point(j[i], n, path + "[" + std::to_string(i) + "]"));
    }
    return pts;
}

inline PolynomialInput read_polynomial(const json &j, std::size_t n, const std::vector<std::string> &vars,
                                       const std::string &path)
{
    if (j.is_string()) {
        try {
            return parse_polynomial(j.get<std::string>(), vars);
        } catch (const input_error &e) {
            fail(path, e.what());
        }
    }
    if (j.is_array()) {
        std::vector<Point> pts = read_points(j, n, path);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (std::size_t c = 0; c < n; ++c) {
                if (pts[i][c] < 0) {
                    fail(path + "[" + std::to_string(i) + "]", "negative exponent");
                }
            }
        }
        return polynomial_from_support(pts, n);
    }
    fail(path, "expected a polynomial string or an array of exponent vectors");
}

inline std::size_t read_n(const json &job)
{
    if (!job.contains("n")) {
        fail("n", "missing");
    }
    const json &n = job["n"];
    if (!n.is_number_integer() || n.get<long>() < 1) {
        fail("n", "expected a positive integer");
    }
    return static_cast<std::size_t>(n.get<long>());
}

inline std::vector<std::string> read_variables(const json &job, std::size_t n)
{
    if (!job.contains("variables")) {
        return default_variables(n);
    }
    const json &v = job["variables"];
    if (!v.is_array() || v.size() != n) {
        fail("variables", "expected an array of " + std::to_string(n) + " names");
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (!v[i].is_string() || v[i].get<std::string>().empty()) {
            fail("variables[" + std::to_string(i) + "]", "expected a nonempty name");
        }
        std::string name = v[i].get<std::string>();
        if (std::find(out.begin(), out.end(), name) != out.end()) {
            fail("variables[" + std::to_string(i) + "]", "duplicate name '" + name + "'");
        }
        out.push_back(std::move(name));
    }
    return out;
}

// Reads n, variables, constraints and objective; k is not checked here.
inline SystemSpec read_system(const json &job)
{
    SystemSpec spec;
    spec.n = read_n(job);
    spec.variables = read_variables(job, spec.n);
    if (job.contains("constraints")) {
        const json &cs = job["constraints"];
        if (!cs.is_array()) {
            fail("constraints", "expected an array");
        }
        for (std::size_t i = 0; i < cs.size(); ++i) {
            spec.constraints.push_back(
                read_polynomial(cs[i], spec.n, spec.variables, "constraints[" + std::to_string(i) + "]"));
        }
    }
    if (job.contains("objective") && !job["objective"].is_null()) {
        spec.objective = read_polynomial(job["objective"], spec.n, spec.variables, "objective");
    }
    return spec;
}

template <class T>
std::optional<T> read_option(const json &job, const std::string &key, json::value_t type)
{
    if (!job.contains("options")) {
        return std::nullopt;
    }
    const json &o = job["options"];
    if (!o.is_object()) {
        fail("options", "expected an object");
    }
    if (!o.contains(key)) {
        return std::nullopt;
    }
    if (o[key].type() != type) {
        fail("options." + key, "wrong type");
    }
    return o[key].get<T>();
}

inline Scope read_scope(const json &job, const Options &opt)
{
    std::string s = "torus";
    if (opt.scope) {
        s = *opt.scope;
    } else if (job.contains("scope")) {
        if (!job["scope"].is_string()) {
            fail("scope", "expected \"torus\" or \"affine\"");
        }
        s = job["scope"].get<std::string>();
    }
    if (s == "torus") {
        return Scope::torus;
    }
    if (s == "affine") {
        return Scope::affine;
    }
    fail("scope", "expected \"torus\" or \"affine\", got \"" + s + "\"");
}

inline json index_set_json(const IndexSet &I)
{
    json a = json::array();
    for (auto i : I) {
        a.push_back(i + 1);
    }
    return a;
}

inline json trace_json(const ContributionTrace &tr)
{
    json alpha = json::array();
    for (const auto &c : tr.alpha.comps()) {
        alpha.push_back(integer_json(c));
    }
    return {{"kind", tr.kind == ContributionKind::covector ? "covector" : "zero_level"},
            {"index_set", index_set_json(tr.index_set)},
            {"alpha", alpha},
            {"m", integer_json(tr.m)},
            {"exponent", integer_json(tr.exponent)},
            {"face_dims", tr.face_dims}};
}

inline json zeta_json(const ZetaResult &r, bool with_traces)
{
    json factors = json::array();
    for (const auto &[m, e] : r.zeta.factors()) {
        factors.push_back({{"m", integer_json(m)}, {"exponent", integer_json(e)}});
    }
    json out{{"factors", factors}, {"pretty", pretty(r.zeta)}, {"degree", integer_json(degree(r.zeta))}};
    if (with_traces) {
        json ts = json::array();
        for (const auto &tr : r.traces) {
            ts.push_back(trace_json(tr));
        }
        out["traces"] = ts;
    }
    return out;
}

inline json points_json(const std::vector<Point> &pts)
{
    json a = json::array();
    for (const auto &p : pts) {
        json v = json::array();
        for (const auto &c : p.coords()) {
            v.push_back(integer_json(c));
        }
        a.push_back(v);
    }
    return a;
}

inline json polytope_json(const LatticePolytope &p)
{
    return {{"dim", p.dim()}, {"vertices", points_json(p.vertices())}};
}

inline json run_mixedvol(const json &job)
{
    const std::size_t n = read_n(job);
    if (!job.contains("polytopes") || !job["polytopes"].is_array() || job["polytopes"].empty()) {
        fail("polytopes", "expected a nonempty array of point lists");
    }
    std::vector<LatticePolytope> bodies;
    std::vector<Point> dirs;
    for (std::size_t i = 0; i < job["polytopes"].size(); ++i) {
        auto pts = read_points(job["polytopes"][i], n, "polytopes[" + std::to_string(i) + "]");
        for (const auto &q : pts) {
            dirs.push_back(q - pts.front());
        }
        bodies.push_back(hull(pts, n));
    }
    LatticeFrame frame;
    if (job.contains("frame")) {
        const json &f = job["frame"];
        if (!f.is_object() || !f.contains("basis")) {
            fail("frame", "expected {\"origin\": [...], \"basis\": [[...], ...]}");
        }
        frame.origin = f.contains("origin") ? read_point(f["origin"], n, "frame.origin") : Point(n);
        frame.basis = read_points(f["basis"], n, "frame.basis");
        if (saturated_basis(frame.basis).size() != frame.basis.size()) {
            fail("frame.basis", "vectors are linearly dependent");
        }
    } else if (bodies.size() == n) {
        frame = LatticeFrame::standard(n);
    } else {
        frame = LatticeFrame::from_directions(Point(n), dirs);
    }
    if (frame.rank() != bodies.size()) {
        fail("polytopes", "need as many polytopes as the frame rank (" + std::to_string(frame.rank()) + ")");
    }
    Integer nmv;
    try {
        nmv = normalized_mixed_volume(bodies, frame);
    } catch (const input_error &e) {
        fail("polytopes", e.what());
    }
    json out{{"normalized_mixed_volume", integer_json(nmv)},
             {"mixed_volume", rational_json(Rational(nmv) / Rational(factorial(frame.rank())))},
             {"rank", frame.rank()}};
    return out;
}

inline json run_info(const SystemSpec &spec)
{
    json cs = json::array();
    for (const auto &c : spec.constraints) {
        json e = polytope_json(newton_polytope(c));
        e["text"] = to_string(c, spec.variables);
        cs.push_back(e);
    }
    json out{{"n", spec.n},
             {"variables", spec.variables},
             {"k", spec.constraints.size()},
             {"mode", spec.deformation_mode() ? "deformation" : "polynomial"},
             {"constraints", cs}};
    if (spec.objective) {
        json e = polytope_json(newton_polytope(*spec.objective));
        e["text"] = to_string(*spec.objective, spec.variables);
        out["objective"] = e;
    }
    return out;
}

} // namespace detail

// Runs one job. Throws input_error on bad input and assertion_error on
// internal failures.
inline json run(const json &job, const Options &opt)
{
    if (!job.is_object()) {
        throw input_error("job: expected a JSON object");
    }
    std::string task = opt.task;
    if (job.contains("task")) {
        if (!job["task"].is_string()) {
            detail::fail("task", "expected a string");
        }
        if (task.empty()) {
            task = job["task"].get<std::string>();
        } else if (job["task"].get<std::string>() != task) {
            detail::fail("task", "document says \"" + job["task"].get<std::string>() + "\" but \"" + task +
                                     "\" was requested");
        }
    }
    if (std::find(task_names().begin(), task_names().end(), task) == task_names().end()) {
        detail::fail("task", "unknown task \"" + task + "\"");
    }
    if (task == "mixedvol") {
        return detail::run_mixedvol(job);
    }

    SystemSpec spec = detail::read_system(job);
    spec.nondegeneracy_acknowledged =
        detail::read_option<bool>(job, "assume_nondegenerate", json::value_t::boolean).value_or(false);
    std::optional<std::string> deform_var = opt.deform_var;
    if (!deform_var) {
        deform_var = detail::read_option<std::string>(job, "deform_var", json::value_t::string);
    }
    if (deform_var) {
        spec = with_deformation_variable(spec, *deform_var);
    }
    const bool trace =
        opt.trace.value_or(detail::read_option<bool>(job, "trace", json::value_t::boolean).value_or(false));

    if (task == "info") {
        return detail::run_info(spec);
    }
    const bool wants_objective = task == "polyzeta";
    if (wants_objective && !spec.objective) {
        detail::fail("objective", "required for task polyzeta");
    }
    if (!wants_objective && spec.objective) {
        detail::fail("objective", "only allowed for task polyzeta");
    }

    json out;
    std::vector<std::string> assumptions;
    if (task == "euler") {
        std::vector<LatticePolytope> ps;
        for (const auto &c : spec.constraints) {
            ps.push_back(newton_polytope(c));
        }
        if (ps.size() > spec.n) {
            detail::fail("constraints", "need k <= n");
        }
        out["euler_characteristic"] = detail::integer_json(euler_ci_torus(ps, spec.n));
        assumptions.push_back("generic coefficients: the complete intersection in the torus is non-degenerate");
    } else {
        const Scope scope = detail::read_scope(job, opt);
        spec.validate();
        NewtonSystem sys = NewtonSystem::from_spec(spec);
        ZetaResult r;
        if (task == "polyzeta") {
            r = zeta_polynomial(sys, scope, opt.jobs);
            assumptions.push_back(assumption_text_polynomial());
        } else {
            const DeformationMode mode =
                task == "deform-origin" ? DeformationMode::origin : DeformationMode::infinity;
            r = zeta_deformation(sys, mode, scope, opt.jobs);
            assumptions.push_back(assumption_text(mode));
        }
        out = detail::zeta_json(r, trace);
        out["scope"] = scope == Scope::torus ? "torus" : "affine";
        out["variables"] = spec.variables;
    }
    out["task"] = task;
    out["assumptions"] = assumptions;
    if (!spec.nondegeneracy_acknowledged) {
        out["assumptions_unacknowledged"] = true;
    }
    return out;
}

} // namespace nzeta::cli

#endif
