#ifndef NEWTON_ZETA_ZETA_HPP
#define NEWTON_ZETA_ZETA_HPP

// Monodromy zeta-functions from Newton polytopes.
//
// For a stratum (index set I, l = |I| - 1) the zeta-function is a product
// over primitive covectors alpha of (1 - t^m)^e, where e is l! times a
// Q-form in the l-dimensional mixed volumes of the faces picked out by
// alpha. Only covectors whose face of the total Minkowski sum P of the
// stratum's polytopes is l-dimensional can give e != 0: the faces lie in
// parallel translates of ker(alpha), so a nonzero l-dimensional mixed
// volume forces their sum, which is the face P^alpha, to span ker(alpha).
// The normal cone of an l-face of P is a ray when dim P = l + 1 (these are
// the facet normals) and the line orthogonal to P when dim P = l; for
// dim P < l nothing contributes. This makes the products finite.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <newton_zeta/lattice.hpp>
#include <newton_zeta/mixed_volume.hpp>
#include <newton_zeta/newton_system.hpp>
#include <newton_zeta/polytope.hpp>
#include <newton_zeta/q_forms.hpp>
#include <newton_zeta/types.hpp>

namespace nzeta
{

// Formal product prod_m (1 - t^m)^{e_m} in canonical form.
class ZetaProduct
{
public:
    ZetaProduct() = default;

    void multiply(const Integer &m, const Integer &e)
    {
        if (m < 1) {
            throw assertion_error("ZetaProduct: power must be positive");
        }
        if (e == 0) {
            return;
        }
        auto [it, inserted] = m_factors.emplace(m, e);
        if (!inserted) {
            it->second += e;
            if (it->second == 0) {
                m_factors.erase(it);
            }
        }
    }

    ZetaProduct &operator*=(const ZetaProduct &o)
    {
        for (const auto &[m, e] : o.m_factors) {
            multiply(m, e);
        }
        return *this;
    }
    friend ZetaProduct operator*(ZetaProduct a, const ZetaProduct &b) { return a *= b; }

    const std::map<Integer, Integer> &factors() const { return m_factors; }
    bool is_one() const { return m_factors.empty(); }

    friend bool operator==(const ZetaProduct &a, const ZetaProduct &b) { return a.m_factors == b.m_factors; }
    friend bool operator!=(const ZetaProduct &a, const ZetaProduct &b) { return !(a == b); }

    static ZetaProduct from(std::initializer_list<std::pair<long, long>> fs)
    {
        ZetaProduct z;
        for (auto [m, e] : fs) {
            z.multiply(Integer(m), Integer(e));
        }
        return z;
    }

private:
    std::map<Integer, Integer> m_factors;
};

// Sum of m * e over the factors: the degree of the rational function,
// equal to the Euler characteristic of the fiber.
inline Integer degree(const ZetaProduct &z)
{
    Integer d = 0;
    for (const auto &[m, e] : z.factors()) {
        d += m * e;
    }
    return d;
}

// Human-readable form, e.g. "(1-t)^2" or "(1-t^3)*(1-t)^-1". Factors with
// positive exponents come first; within each group powers ascend.
inline std::string pretty(const ZetaProduct &z)
{
    if (z.is_one()) {
        return "1";
    }
    std::ostringstream os;
    bool first = true;
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto &[m, e] : z.factors()) {
            if ((pass == 0) != (e > 0)) {
                continue;
            }
            os << (first ? "" : "*") << "(1-t";
            if (m != 1) {
                os << '^' << m;
            }
            os << ')';
            if (e != 1) {
                os << '^' << e;
            }
            first = false;
        }
    }
    return os.str();
}

inline std::ostream &operator<<(std::ostream &os, const ZetaProduct &z) { return os << pretty(z); }

// Numerator and denominator coefficient lists (constant term first) of the
// rational function. For display; large powers make these long.
struct ExpandedZeta {
    std::vector<Integer> numerator;
    std::vector<Integer> denominator;
};

inline ExpandedZeta expand(const ZetaProduct &z)
{
    ExpandedZeta out{{1}, {1}};
    for (const auto &[m, e] : z.factors()) {
        auto &poly = e > 0 ? out.numerator : out.denominator;
        const unsigned long mm = m.get_ui();
        const Integer times = e > 0 ? Integer(e) : Integer(-e);
        for (Integer c = 0; c < times; ++c) {
            std::vector<Integer> next(poly.size() + mm, 0);
            for (std::size_t i = 0; i < poly.size(); ++i) {
                next[i] += poly[i];
                next[i + mm] -= poly[i];
            }
            poly = std::move(next);
        }
    }
    return out;
}

// Which part of a formula produced a factor: a covector of the product,
// or the zero level {F_0 = 0} of a polynomial on a stratum (alpha = 0, m = 1).
enum class ContributionKind { covector, zero_level };

struct ContributionTrace {
    ContributionKind kind = ContributionKind::covector;
    IndexSet index_set;
    Covector alpha; // ambient dimension, zero outside the index set
    Integer m;
    Integer exponent;
    std::vector<int> face_dims;
};

enum class DeformationMode { origin, infinity };
enum class Scope { torus, affine };

namespace detail
{

inline void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)> &body)
{
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(jobs);
    const unsigned nw = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
    for (unsigned w = 0; w < nw; ++w) {
        workers.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += nw) {
                    body(i);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : workers) {
        t.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

inline Covector lift_covector(const Covector &local, const IndexSet &index_set, std::size_t n)
{
    IntVector c(n, 0);
    for (std::size_t j = 0; j < index_set.size(); ++j) {
        c[index_set[j]] = local[j];
    }
    return Covector(std::move(c));
}

} // namespace detail

// A restricted system expressed in the coordinates of R^I (so Z^{|I|}),
// with the objective, if any, kept separately.
class Stratum
{
public:
    explicit Stratum(const RestrictedSystem &rs) : m_index_set(rs.index_set), m_n(rs.n)
    {
        if (m_index_set.empty()) {
            throw input_error("stratum: empty index set");
        }
        for (const auto &p : rs.polytopes) {
            m_polytopes.push_back(project_checked(p));
        }
        if (rs.objective) {
            m_has_objective = true;
            if (!rs.objective->empty()) {
                m_objective = project_checked(*rs.objective);
            }
        }
    }

    const IndexSet &index_set() const { return m_index_set; }
    std::size_t ambient_dim() const { return m_n; }
    std::size_t dim() const { return m_index_set.size(); }
    int l() const { return static_cast<int>(m_index_set.size()) - 1; }
    const std::vector<LatticePolytope> &polytopes() const { return m_polytopes; }
    const std::optional<LatticePolytope> &objective() const { return m_objective; }
    bool objective_empty() const { return m_has_objective && !m_objective; }

    // Primitive covectors of Z^{|I|} whose face of the total Minkowski sum is
    // l-dimensional; the objective's polytope is included in the sum when
    // `with_objective` is set.
    std::vector<Covector> candidates(bool with_objective) const
    {
        std::vector<LatticePolytope> all = m_polytopes;
        if (with_objective) {
            if (!m_objective) {
                return {};
            }
            all.push_back(*m_objective);
        }
        LatticePolytope sum = minkowski_sum(all, dim());
        const int d = static_cast<int>(dim());
        std::vector<Covector> out;
        if (sum.dim() == d) {
            for (auto &f : facet_normals(sum)) {
                out.push_back(std::move(f.normal));
            }
        } else if (sum.dim() == d - 1) {
            auto [a, b] = orthogonal_line_generators(sum.frame().basis, dim());
            out.push_back(std::move(a));
            out.push_back(std::move(b));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // l! Q^l_{k(I)}(faces of the constraints at alpha).
    Integer deformation_exponent(const Covector &alpha, std::vector<int> *face_dims = nullptr) const
    {
        std::vector<LatticePolytope> faces;
        for (const auto &p : m_polytopes) {
            faces.push_back(face(p, alpha).face);
            if (face_dims) {
                face_dims->push_back(faces.back().dim());
            }
        }
        return q_exponent(l(), faces, kernel_frame(alpha, Point(dim())));
    }

    // l! Q~^l_{k(I)+1}(objective face, constraint faces at alpha).
    Integer polynomial_exponent(const Covector &alpha, std::vector<int> *face_dims = nullptr) const
    {
        check(m_objective.has_value(), "polynomial_exponent: empty objective restriction");
        FaceRecord f0 = face(*m_objective, alpha);
        std::vector<LatticePolytope> faces;
        if (face_dims) {
            face_dims->push_back(f0.face.dim());
        }
        for (const auto &p : m_polytopes) {
            faces.push_back(face(p, alpha).face);
            if (face_dims) {
                face_dims->push_back(faces.back().dim());
            }
        }
        return q_tilde_exponent(l(), f0.face, faces, kernel_frame(alpha, Point(dim())));
    }

    // |I|! Q^{|I|}_{k(I)+1}(objective, constraints): Euler characteristic of
    // {F_0 = 0} on the complete intersection in the torus (C*)^I.
    Integer zero_level_exponent() const
    {
        check(m_objective.has_value(), "zero_level_exponent: empty objective restriction");
        std::vector<LatticePolytope> all;
        all.push_back(*m_objective);
        all.insert(all.end(), m_polytopes.begin(), m_polytopes.end());
        return q_exponent(static_cast<int>(dim()), all, LatticeFrame::standard(dim()));
    }

    Covector lift(const Covector &local) const { return detail::lift_covector(local, m_index_set, m_n); }

private:
    LatticePolytope project_checked(const LatticePolytope &p) const
    {
        std::vector<bool> in(m_n, false);
        for (auto i : m_index_set) {
            in[i] = true;
        }
        for (const auto &v : p.vertices()) {
            for (std::size_t i = 0; i < m_n; ++i) {
                if (!in[i] && v[i] != 0) {
                    throw input_error("polytope outside R^I");
                }
            }
        }
        return project(p, m_index_set);
    }

    IndexSet m_index_set;
    std::size_t m_n;
    std::vector<LatticePolytope> m_polytopes;
    std::optional<LatticePolytope> m_objective;
    bool m_has_objective = false;
};

// Candidate covectors of R^I for the given polytopes (all contained in R^I),
// lifted to the ambient dual space.
inline std::vector<Covector> candidate_covectors(const std::vector<LatticePolytope> &polytopes, const IndexSet &index_set,
                                                 std::size_t n)
{
    RestrictedSystem rs;
    rs.n = n;
    rs.index_set = index_set;
    rs.polytopes = polytopes;
    Stratum s(rs);
    std::vector<Covector> out;
    for (const auto &a : s.candidates(false)) {
        out.push_back(s.lift(a));
    }
    return out;
}

struct ZetaResult {
    ZetaProduct zeta;
    std::vector<ContributionTrace> traces;
};

namespace detail
{

struct Task {
    const Stratum *stratum;
    Covector alpha;
};

inline ZetaResult evaluate_tasks(const std::vector<Task> &tasks, bool polynomial, DeformationMode mode, unsigned jobs)
{
    std::vector<ContributionTrace> slots(tasks.size());
    parallel_for(tasks.size(), jobs, [&](std::size_t i) {
        const Stratum &s = *tasks[i].stratum;
        const Covector &alpha = tasks[i].alpha;
        ContributionTrace tr;
        tr.index_set = s.index_set();
        tr.alpha = s.lift(alpha);
        if (polynomial) {
            tr.m = support_min(*s.objective(), alpha);
            tr.exponent = s.polynomial_exponent(alpha, &tr.face_dims);
        } else {
            const Integer &last = alpha[s.dim() - 1];
            tr.m = (mode == DeformationMode::origin) ? last : Integer(-last);
            tr.exponent = s.deformation_exponent(alpha, &tr.face_dims);
        }
        slots[i] = std::move(tr);
    });
    ZetaResult r;
    for (auto &tr : slots) {
        if (tr.exponent != 0) {
            r.zeta.multiply(tr.m, tr.exponent);
            r.traces.push_back(std::move(tr));
        }
    }
    return r;
}

inline std::vector<IndexSet> index_sets(std::size_t n, bool containing_last)
{
    std::vector<IndexSet> out;
    for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
        if (containing_last && !(mask & (1UL << (n - 1)))) {
            continue;
        }
        IndexSet s;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1UL << i)) {
                s.push_back(i);
            }
        }
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline void require_deformation_stratum(const RestrictedSystem &rs)
{
    if (rs.index_set.empty() || rs.index_set.back() != rs.n - 1) {
        throw input_error("deformation stratum must contain the last coordinate");
    }
}

} // namespace detail

inline std::vector<Covector> deformation_covectors(const Stratum &s, DeformationMode mode)
{
    std::vector<Covector> out;
    for (auto &a : s.candidates(false)) {
        const Integer &last = a[s.dim() - 1];
        if ((mode == DeformationMode::origin && last > 0) || (mode == DeformationMode::infinity && last < 0)) {
            out.push_back(std::move(a));
        }
    }
    return out;
}

inline std::vector<Covector> polynomial_covectors(const Stratum &s)
{
    std::vector<Covector> out;
    if (!s.objective()) {
        return out;
    }
    for (auto &a : s.candidates(true)) {
        if (support_min(*s.objective(), a) > 0) {
            out.push_back(std::move(a));
        }
    }
    return out;
}

inline ZetaResult zeta_stratum_traced(const RestrictedSystem &rs, DeformationMode mode, unsigned jobs = 1)
{
    detail::require_deformation_stratum(rs);
    Stratum s(rs);
    std::vector<detail::Task> tasks;
    for (auto &a : deformation_covectors(s, mode)) {
        tasks.push_back({&s, std::move(a)});
    }
    return detail::evaluate_tasks(tasks, false, mode, jobs);
}

// zeta^I: product over alpha in Z^I_+ of (1 - t^{alpha_n})^{l! Q^l_{k(I)}}.
inline ZetaProduct zeta_stratum_origin(const RestrictedSystem &rs)
{
    return zeta_stratum_traced(rs, DeformationMode::origin).zeta;
}

// zeta^{I,inf}: product over alpha in Z^I_- of (1 - t^{-alpha_n})^{l! Q^l_{k(I)}}.
inline ZetaProduct zeta_stratum_infinity(const RestrictedSystem &rs)
{
    return zeta_stratum_traced(rs, DeformationMode::infinity).zeta;
}

// Z^I: product over alpha with min(alpha on Delta_0^I) > 0 of
// (1 - t^{min})^{l! Q~^l_{k(I)+1}}; trivial when Delta_0^I is empty.
inline ZetaResult zeta_stratum_polynomial_traced(const RestrictedSystem &rs, unsigned jobs = 1)
{
    if (!rs.objective) {
        throw input_error("polynomial zeta requires an objective");
    }
    if (rs.objective->empty()) {
        return {};
    }
    Stratum s(rs);
    std::vector<detail::Task> tasks;
    for (auto &a : polynomial_covectors(s)) {
        tasks.push_back({&s, std::move(a)});
    }
    return detail::evaluate_tasks(tasks, true, DeformationMode::origin, jobs);
}

inline ZetaProduct zeta_stratum_polynomial(const RestrictedSystem &rs)
{
    return zeta_stratum_polynomial_traced(rs).zeta;
}

namespace detail
{

inline ContributionTrace zero_level_trace(const Stratum &s)
{
    ContributionTrace tr;
    tr.kind = ContributionKind::zero_level;
    tr.index_set = s.index_set();
    tr.alpha = Covector(IntVector(s.ambient_dim(), 0));
    tr.m = 1;
    tr.exponent = s.zero_level_exponent();
    tr.face_dims.push_back(s.objective()->dim());
    for (const auto &p : s.polytopes()) {
        tr.face_dims.push_back(p.dim());
    }
    return tr;
}

} // namespace detail

// Part of the fiber near the regular zero level {F_0 = 0} in (C*)^I: it
// fibres trivially over the small circle, giving (1 - t)^chi. The product
// Z^I above only sees the part of the fiber escaping to the boundary.
inline ZetaProduct zeta_stratum_zero_level(const RestrictedSystem &rs)
{
    if (!rs.objective) {
        throw input_error("polynomial zeta requires an objective");
    }
    ZetaProduct z;
    if (!rs.objective->empty()) {
        z.multiply(1, Stratum(rs).zero_level_exponent());
    }
    return z;
}

namespace detail
{

inline ZetaResult run_strata(const NewtonSystem &sys, const std::vector<IndexSet> &sets, bool polynomial,
                             DeformationMode mode, unsigned jobs)
{
    std::vector<Stratum> strata;
    strata.reserve(sets.size());
    for (const auto &I : sets) {
        RestrictedSystem rs = restrict_system(sys, I);
        if (polynomial && rs.objective->empty()) {
            continue;
        }
        strata.emplace_back(rs);
    }
    std::vector<Task> tasks;
    for (const auto &s : strata) {
        auto alphas = polynomial ? polynomial_covectors(s) : deformation_covectors(s, mode);
        for (auto &a : alphas) {
            tasks.push_back({&s, std::move(a)});
        }
    }
    ZetaResult r = evaluate_tasks(tasks, polynomial, mode, jobs);
    if (polynomial) {
        for (const auto &s : strata) {
            ContributionTrace tr = zero_level_trace(s);
            if (tr.exponent != 0) {
                r.zeta.multiply(tr.m, tr.exponent);
                r.traces.push_back(std::move(tr));
            }
        }
    }
    return r;
}

} // namespace detail

// Monodromy zeta-function of the deformation z_n = sigma of the complete
// intersection {F_1 = ... = F_k = 0}, at sigma -> 0 or sigma -> infinity.
// Torus scope restricts to (C*)^n; affine scope multiplies all strata I
// containing n.
inline ZetaResult zeta_deformation(const NewtonSystem &sys, DeformationMode mode, Scope scope, unsigned jobs = 1)
{
    if (sys.objective) {
        throw input_error("deformation zeta takes a system without objective");
    }
    if (sys.n == 0) {
        throw input_error("dimension must be positive");
    }
    std::vector<IndexSet> sets;
    if (scope == Scope::torus) {
        IndexSet all;
        for (std::size_t i = 0; i < sys.n; ++i) {
            all.push_back(i);
        }
        sets.push_back(std::move(all));
    } else {
        sets = detail::index_sets(sys.n, true);
    }
    return detail::run_strata(sys, sets, false, mode, jobs);
}

// Monodromy zeta-function at the origin of F_0 restricted to
// V = {F_1 = ... = F_k = 0}, on V intersected with the torus or on all of V.
inline ZetaResult zeta_polynomial(const NewtonSystem &sys, Scope scope, unsigned jobs = 1)
{
    if (!sys.objective) {
        throw input_error("polynomial zeta requires an objective");
    }
    std::vector<IndexSet> sets;
    if (scope == Scope::torus) {
        IndexSet all;
        for (std::size_t i = 0; i < sys.n; ++i) {
            all.push_back(i);
        }
        sets.push_back(std::move(all));
    } else {
        sets = detail::index_sets(sys.n, false);
    }
    return detail::run_strata(sys, sets, true, DeformationMode::origin, jobs);
}

// Same torus zeta-function, computed as the deformation zeta-function of
// the cone system G = (F_1..F_k, F_0 - z_{n+1}) in n+1 variables.
inline ZetaProduct zeta_polynomial_via_cone(const SystemSpec &spec, unsigned jobs = 1)
{
    SystemSpec g = cone_system(spec);
    return zeta_deformation(NewtonSystem::from_spec(g), DeformationMode::origin, Scope::torus, jobs).zeta;
}

// n! Q^n_k(Delta_1..Delta_k): Euler characteristic of a generic complete
// intersection with these Newton polytopes in (C*)^n.
inline Integer euler_ci_torus(const std::vector<LatticePolytope> &polytopes, std::size_t n)
{
    for (const auto &p : polytopes) {
        if (p.empty()) {
            return 0;
        }
        if (p.ambient_dim() != n) {
            throw input_error("euler_ci_torus: dimension mismatch");
        }
    }
    if (n == 0) {
        return polytopes.empty() ? 1 : 0;
    }
    return q_exponent(static_cast<int>(n), polytopes, LatticeFrame::standard(n));
}

// Euler characteristic of a generic complete intersection in C^d with the
// given Newton polytopes, summed over the coordinate tori (C*)^J, J a subset
// of {1..d} (the empty set standing for the origin).
inline Integer euler_ci_affine(const std::vector<LatticePolytope> &polytopes, std::size_t d)
{
    Integer total = 0;
    for (unsigned long mask = 0; mask < (1UL << d); ++mask) {
        IndexSet J;
        for (std::size_t i = 0; i < d; ++i) {
            if (mask & (1UL << i)) {
                J.push_back(i);
            }
        }
        std::vector<LatticePolytope> restricted;
        for (const auto &p : polytopes) {
            LatticePolytope r = restrict_to_index_set(p, J);
            if (!r.empty()) {
                restricted.push_back(project(r, J));
            }
        }
        total += euler_ci_torus(restricted, J.size());
    }
    return total;
}

// Stratified Euler characteristic of the generic fiber of a deformation.
inline Integer fiber_euler_characteristic(const NewtonSystem &sys)
{
    return euler_ci_affine(fiber_polytopes(sys), sys.n - 1);
}

inline std::string assumption_text(DeformationMode mode)
{
    return mode == DeformationMode::origin
               ? "sigma-non-degenerate: F_1..F_k are non-degenerate on the faces selected by covectors with positive "
                 "last component"
               : "sigma-non-degenerate at infinity: F_1..F_k are non-degenerate on the faces selected by covectors "
                 "with negative last component";
}

inline std::string assumption_text_polynomial()
{
    return "non-degenerate: both F_0, F_1..F_k and F_1..F_k are non-degenerate with respect to their Newton polytopes";
}

} // namespace nzeta

#endif
