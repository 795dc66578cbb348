#ifndef NEWTON_ZETA_TESTS_SUPPORT_HPP
#define NEWTON_ZETA_TESTS_SUPPORT_HPP

// Test-only generators and oracles. Nothing here calls into the code it
// is used to check, except where noted.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <newton_zeta/zeta.hpp>

namespace nzeta::testing
{

using Rng = std::mt19937_64;

inline Point random_point(Rng &rng, std::size_t n, long lo, long hi)
{
    std::uniform_int_distribution<long> d(lo, hi);
    Point p(n);
    for (std::size_t i = 0; i < n; ++i) {
        p[i] = d(rng);
    }
    return p;
}

inline std::vector<Point> random_points(Rng &rng, std::size_t n, std::size_t count, long lo, long hi)
{
    std::vector<Point> pts;
    for (std::size_t i = 0; i < count; ++i) {
        pts.push_back(random_point(rng, n, lo, hi));
    }
    return pts;
}

inline LatticePolytope random_polytope(Rng &rng, std::size_t n, std::size_t count, long lo, long hi)
{
    return hull(random_points(rng, n, count, lo, hi), n);
}

// Product of random elementary matrices: det = +-1.
inline IntMatrix random_unimodular(Rng &rng, std::size_t n, int steps = 6)
{
    IntMatrix u(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        u[i][i] = 1;
    }
    if (n < 2) {
        return u;
    }
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<long> coef(-2, 2);
    for (int s = 0; s < steps; ++s) {
        std::size_t i = idx(rng), j = idx(rng);
        if (i == j) {
            continue;
        }
        long c = coef(rng);
        for (std::size_t r = 0; r < n; ++r) {
            u[r][i] += c * u[r][j];
        }
    }
    if (coef(rng) > 0) {
        std::swap(u[0], u[1]);
    }
    return u;
}

inline Point linear_map(const IntMatrix &u, const Point &p)
{
    Point q(p.dim());
    for (std::size_t r = 0; r < u.size(); ++r) {
        Integer s = 0;
        for (std::size_t c = 0; c < p.dim(); ++c) {
            s += u[r][c] * p[c];
        }
        q[r] = s;
    }
    return q;
}

inline LatticePolytope linear_map(const IntMatrix &u, const LatticePolytope &p, const Point &shift)
{
    std::vector<Point> pts;
    for (const auto &v : p.vertices()) {
        pts.push_back(linear_map(u, v) + shift);
    }
    return hull(pts, p.ambient_dim());
}

// All primitive integer vectors with components in [-bound, bound].
inline std::vector<Covector> primitive_box(std::size_t d, long bound)
{
    std::vector<Covector> out;
    IntVector v(d, -bound);
    while (true) {
        if (std::any_of(v.begin(), v.end(), [](const Integer &x) { return x != 0; }) && is_primitive(v)) {
            out.emplace_back(v);
        }
        std::size_t i = 0;
        while (i < d && v[i] == bound) {
            v[i] = -bound;
            ++i;
        }
        if (i == d) {
            break;
        }
        v[i] += 1;
    }
    return out;
}

// Affine rank of a point set, by Gaussian elimination over Q.
inline std::size_t affine_rank(const std::vector<Point> &pts)
{
    if (pts.empty()) {
        return 0;
    }
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        std::vector<Rational> r;
        for (std::size_t c = 0; c < pts[0].dim(); ++c) {
            r.emplace_back(pts[i][c] - pts[0][c]);
        }
        rows.push_back(std::move(r));
    }
    std::size_t rank = 0;
    const std::size_t cols = pts[0].dim();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0) {
            ++piv;
        }
        if (piv == rows.size()) {
            continue;
        }
        std::swap(rows[piv], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && rows[r][c] != 0) {
                Rational f = rows[r][c] / rows[rank][c];
                for (std::size_t k = c; k < cols; ++k) {
                    rows[r][k] -= f * rows[rank][k];
                }
            }
        }
        ++rank;
    }
    return rank;
}

// Points of `pts` minimizing alpha.
inline std::vector<Point> argmin(const std::vector<Point> &pts, const Covector &alpha)
{
    Integer best = alpha(pts.front());
    for (const auto &p : pts) {
        best = std::min<Integer>(best, alpha(p));
    }
    std::vector<Point> out;
    for (const auto &p : pts) {
        if (alpha(p) == best) {
            out.push_back(p);
        }
    }
    return out;
}

// Facet normals by scanning a box of covectors: alpha is a facet normal of a
// full-dimensional point set iff its minimizing set has affine rank d-1.
inline std::set<Covector> facet_normals_by_scan(const std::vector<Point> &pts, std::size_t d, long bound)
{
    std::set<Covector> out;
    for (const auto &a : primitive_box(d, bound)) {
        if (affine_rank(argmin(pts, a)) + 1 == d) {
            out.insert(a);
        }
    }
    return out;
}

// Vertices by scanning: p is a vertex iff some covector is minimized at p
// alone. Complete only for small coordinates relative to `bound`.
inline std::set<Point> vertices_by_scan(const std::vector<Point> &pts, std::size_t d, long bound)
{
    std::set<Point> out;
    for (const auto &a : primitive_box(d, bound)) {
        auto m = argmin(pts, a);
        std::sort(m.begin(), m.end());
        m.erase(std::unique(m.begin(), m.end()), m.end());
        if (m.size() == 1) {
            out.insert(m.front());
        }
    }
    return out;
}

// Polytopes D_0..D_k in Z^n, and the same data placed in a hyperplane of
// Z^{n+1} by a random unimodular map and shift, with D_0 replaced by the
// cone over it from a point at lattice distance 1.
struct ConeTuple {
    std::size_t n = 0;
    std::vector<LatticePolytope> base; // D_0..D_k in Z^n
    std::vector<LatticePolytope> lifted; // C D_0, D_1..D_k in Z^{n+1}
};

inline ConeTuple random_cone_tuple(Rng &rng, std::size_t n, std::size_t k)
{
    ConeTuple t;
    t.n = n;
    std::uniform_int_distribution<std::size_t> count(1, n + 2);
    for (std::size_t i = 0; i <= k; ++i) {
        t.base.push_back(random_polytope(rng, n, count(rng), 0, 2));
    }
    IntMatrix u = random_unimodular(rng, n + 1);
    Point shift = random_point(rng, n + 1, -3, 3);
    auto place = [&](const Point &p) {
        IntVector v = p.coords();
        v.resize(n + 1, 0);
        return linear_map(u, Point(v)) + shift;
    };
    std::uniform_int_distribution<long> apex_coord(-2, 2);
    for (std::size_t i = 0; i <= k; ++i) {
        std::vector<Point> pts;
        for (const auto &v : t.base[i].vertices()) {
            pts.push_back(place(v));
        }
        if (i == 0) {
            Point apex(n + 1);
            for (std::size_t c = 0; c < n; ++c) {
                apex[c] = apex_coord(rng);
            }
            apex[n] = 1;
            pts.push_back(linear_map(u, apex) + shift);
        }
        t.lifted.push_back(hull(pts, n + 1));
    }
    return t;
}

inline SystemSpec make_spec(std::size_t n, const std::vector<std::string> &constraints,
                            const std::string &objective = "")
{
    SystemSpec s;
    s.n = n;
    s.variables = default_variables(n);
    for (const auto &c : constraints) {
        s.constraints.push_back(parse_polynomial(c, s.variables));
    }
    if (!objective.empty()) {
        s.objective = parse_polynomial(objective, s.variables);
    }
    s.nondegeneracy_acknowledged = true;
    return s;
}

inline PolynomialInput random_polynomial(Rng &rng, std::size_t n, long box, std::size_t terms)
{
    return polynomial_from_support(random_points(rng, n, terms, 0, box), n);
}

// Systems with objective: n <= 3, k <= 1, supports in [0,3]^n, plus curated
// cases. Used for route equivalence and the covector scan.
inline std::vector<SystemSpec> polynomial_corpus(std::uint64_t seed = 20240611, std::size_t random_count = 30)
{
    std::vector<SystemSpec> out;
    out.push_back(make_spec(1, {}, "z1"));
    out.push_back(make_spec(1, {}, "z1^2"));
    out.push_back(make_spec(1, {}, "z1^3"));
    out.push_back(make_spec(2, {}, "z1*z2"));
    out.push_back(make_spec(1, {}, "1 + z1^3"));
    out.push_back(make_spec(2, {"z1 + z2*(1+z1^2)"}, "z2"));
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> terms(1, 4);
    for (std::size_t i = 0; i < random_count; ++i) {
        const std::size_t n = 1 + i % 3;
        const std::size_t k = n > 1 ? (i / 3) % 2 : 0;
        SystemSpec s;
        s.n = n;
        s.variables = default_variables(n);
        s.nondegeneracy_acknowledged = true;
        for (std::size_t j = 0; j < k; ++j) {
            s.constraints.push_back(random_polynomial(rng, n, 3, 1 + terms(rng)));
        }
        s.objective = random_polynomial(rng, n, 3, terms(rng));
        out.push_back(std::move(s));
    }
    return out;
}

// Deformation systems: n <= 3, k <= n-1, supports in [0,2]^n.
inline std::vector<SystemSpec> deformation_corpus(std::uint64_t seed = 777, std::size_t count = 24)
{
    std::vector<SystemSpec> out;
    out.push_back(make_spec(2, {"z1 + z2*(1+z1^2)"}));
    out.push_back(make_spec(1, {}));
    out.push_back(make_spec(2, {"z1*z2 - 1"}));
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> terms(2, 4);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t n = 2 + i % 2;
        const std::size_t k = 1 + (i / 2) % (n - 1);
        SystemSpec s;
        s.n = n;
        s.variables = default_variables(n);
        s.nondegeneracy_acknowledged = true;
        for (std::size_t j = 0; j < k; ++j) {
            s.constraints.push_back(random_polynomial(rng, n, 2, terms(rng)));
        }
        out.push_back(std::move(s));
    }
    return out;
}

// Hand-picked deformation systems whose generic fibers are non-degenerate.
inline std::vector<SystemSpec> curated_euler_systems()
{
    return {
        make_spec(2, {"z1 + z2*(1+z1^2)"}),          // two points
        make_spec(2, {"1 + z1 + z2"}),               // one point
        make_spec(2, {"1 + z1^2 + z2"}),             // two points
        make_spec(2, {"z1^3 + z1*z2 + z2^2"}),       // three points
        make_spec(3, {"1 + z1 + z2 + z3"}),          // affine line
        make_spec(3, {"1 + z1*z2 + z3"}),            // C*
        make_spec(3, {"1 + z1 + z3", "1 + z2 + z3"}), // one point
        make_spec(3, {"1 + z1 + z2^2 + z3"}),        // parabola, C
    };
}

// Zeta-function at c = 0 of F_0 : C -> C for one variable, from the roots:
// the ord_0(F_0) = a roots tending to 0 are permuted cyclically, giving
// (1 - t^a); every other root of F_0 is simple for generic coefficients and
// nonzero, each giving a fixed point (1 - t).
inline ZetaProduct one_variable_zeta(const std::vector<long> &exponents)
{
    const long a = *std::min_element(exponents.begin(), exponents.end());
    const long deg = *std::max_element(exponents.begin(), exponents.end());
    ZetaProduct z;
    if (a > 0) {
        z.multiply(a, 1);
    }
    z.multiply(1, deg - a);
    return z;
}

} // namespace nzeta::testing

#endif
