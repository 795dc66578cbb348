#ifndef NEWTON_ZETA_POLYTOPE_HPP
#define NEWTON_ZETA_POLYTOPE_HPP

// Exact lattice polytopes in vertex representation.
//
// The hull of a point set is computed in the integer coordinates of its
// affine hull (a saturated lattice frame), where it is full-dimensional.
// Facets are then found by the double description method applied to the
// homogenized cone {a : a.(x,1) >= 0}, whose extreme rays are the facet
// inequalities. Everything is done over GMP integers.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include <newton_zeta/lattice.hpp>
#include <newton_zeta/types.hpp>

namespace nzeta
{

// Facet of a full-dimensional polytope in frame coordinates:
// normal . x >= offset, with `normal` primitive.
struct Facet {
    IntVector normal;
    Integer offset;
    std::vector<std::size_t> vertices;
};

namespace detail
{

class Bits
{
public:
    Bits() = default;
    explicit Bits(std::size_t n) : m_words((n + 63) / 64, 0) {}

    void set(std::size_t i) { m_words[i / 64] |= (std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return (m_words[i / 64] >> (i % 64)) & 1U; }

    std::size_t count() const
    {
        std::size_t c = 0;
        for (auto w : m_words) {
            c += static_cast<std::size_t>(std::popcount(w));
        }
        return c;
    }
    Bits operator&(const Bits &o) const
    {
        Bits r = *this;
        for (std::size_t i = 0; i < m_words.size(); ++i) {
            r.m_words[i] &= o.m_words[i];
        }
        return r;
    }
    bool subset_of(const Bits &o) const
    {
        for (std::size_t i = 0; i < m_words.size(); ++i) {
            if (m_words[i] & ~o.m_words[i]) {
                return false;
            }
        }
        return true;
    }
    friend bool operator==(const Bits &, const Bits &) = default;

private:
    std::vector<std::uint64_t> m_words;
};

// Facet inequalities of the hull of `pts`, which must affinely span Z^d (d >= 1).
inline std::vector<std::pair<IntVector, Integer>> facet_inequalities(const std::vector<Point> &pts)
{
    const std::size_t d = pts.front().dim();
    const std::size_t dh = d + 1;
    const std::size_t npts = pts.size();
    auto row = [&](std::size_t j) {
        IntVector r(pts[j].coords());
        r.emplace_back(1);
        return r;
    };

    // Greedy choice of dh linearly independent rows.
    std::vector<std::size_t> init;
    std::vector<std::vector<Rational>> echelon;
    std::vector<std::size_t> echelon_piv;
    for (std::size_t j = 0; j < npts && init.size() < dh; ++j) {
        IntVector r = row(j);
        std::vector<Rational> v(r.begin(), r.end());
        for (std::size_t e = 0; e < echelon.size(); ++e) {
            const std::size_t p = echelon_piv[e];
            if (v[p] != 0) {
                Rational f = v[p] / echelon[e][p];
                for (std::size_t c = 0; c < dh; ++c) {
                    v[c] -= f * echelon[e][c];
                }
            }
        }
        auto nz = std::find_if(v.begin(), v.end(), [](const Rational &x) { return x != 0; });
        if (nz != v.end()) {
            echelon_piv.push_back(static_cast<std::size_t>(nz - v.begin()));
            echelon.push_back(std::move(v));
            init.push_back(j);
        }
    }
    check(init.size() == dh, "hull: points do not span the frame");

    // Initial rays: columns of the inverse of the initial square block.
    std::vector<std::vector<Rational>> m(dh, std::vector<Rational>(2 * dh));
    for (std::size_t i = 0; i < dh; ++i) {
        IntVector r = row(init[i]);
        for (std::size_t c = 0; c < dh; ++c) {
            m[i][c] = r[c];
        }
        m[i][dh + i] = 1;
    }
    for (std::size_t c = 0; c < dh; ++c) {
        std::size_t p = c;
        while (m[p][c] == 0) {
            ++p;
        }
        std::swap(m[p], m[c]);
        Rational inv = 1 / m[c][c];
        for (auto &e : m[c]) {
            e *= inv;
        }
        for (std::size_t i = 0; i < dh; ++i) {
            if (i != c && m[i][c] != 0) {
                Rational f = m[i][c];
                for (std::size_t k = 0; k < 2 * dh; ++k) {
                    m[i][k] -= f * m[c][k];
                }
            }
        }
    }

    struct Ray {
        IntVector v;
        Bits tight;
    };
    std::vector<Ray> rays;
    for (std::size_t i = 0; i < dh; ++i) {
        Integer den = 1;
        for (std::size_t r = 0; r < dh; ++r) {
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m[r][dh + i].get_den_mpz_t());
        }
        Ray ray{IntVector(dh), Bits(npts)};
        for (std::size_t r = 0; r < dh; ++r) {
            Rational s = m[r][dh + i] * den;
            ray.v[r] = s.get_num();
        }
        make_primitive(ray.v);
        for (std::size_t k = 0; k < dh; ++k) {
            if (k != i) {
                ray.tight.set(init[k]);
            }
        }
        rays.push_back(std::move(ray));
    }

    std::vector<bool> is_init(npts, false);
    for (auto j : init) {
        is_init[j] = true;
    }
    for (std::size_t j = 0; j < npts; ++j) {
        if (is_init[j]) {
            continue;
        }
        const IntVector a = row(j);
        std::vector<Integer> s(rays.size());
        std::vector<std::size_t> plus, zero, minus;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            s[r] = dot(a, rays[r].v);
            const int sg = sgn(s[r]);
            (sg > 0 ? plus : sg < 0 ? minus : zero).push_back(r);
        }
        if (minus.empty()) {
            for (auto r : zero) {
                rays[r].tight.set(j);
            }
            continue;
        }
        std::vector<Ray> next;
        next.reserve(plus.size() + zero.size());
        for (auto r : plus) {
            next.push_back(rays[r]);
        }
        for (auto r : zero) {
            next.push_back(rays[r]);
            next.back().tight.set(j);
        }
        for (auto p : plus) {
            for (auto q : minus) {
                Bits common = rays[p].tight & rays[q].tight;
                if (common.count() + 2 < dh) {
                    continue;
                }
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r != p && r != q && common.subset_of(rays[r].tight)) {
                        adjacent = false;
                    }
                }
                if (!adjacent) {
                    continue;
                }
                Ray nr{IntVector(dh), common};
                for (std::size_t c = 0; c < dh; ++c) {
                    nr.v[c] = s[p] * rays[q].v[c] - s[q] * rays[p].v[c];
                }
                make_primitive(nr.v);
                nr.tight.set(j);
                next.push_back(std::move(nr));
            }
        }
        rays = std::move(next);
    }

    std::vector<std::pair<IntVector, Integer>> out;
    out.reserve(rays.size());
    for (auto &ray : rays) {
        IntVector normal(ray.v.begin(), ray.v.begin() + static_cast<std::ptrdiff_t>(d));
        Integer g = 0;
        for (const auto &c : normal) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        }
        check(g != 0, "hull: degenerate facet normal");
        Integer c = ray.v[d];
        for (auto &x : normal) {
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        }
        check(mpz_divisible_p(c.get_mpz_t(), g.get_mpz_t()) != 0, "hull: non-lattice facet");
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        out.emplace_back(std::move(normal), Integer(-c));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

class LatticePolytope
{
public:
    // Empty polytope in ambient dimension `ambient_dim`.
    explicit LatticePolytope(std::size_t ambient_dim = 0) : m_ambient(ambient_dim) {}

    std::size_t ambient_dim() const { return m_ambient; }
    bool empty() const { return m_vertices.empty(); }
    // Affine dimension; -1 for the empty polytope.
    int dim() const { return empty() ? -1 : static_cast<int>(m_frame.rank()); }
    const std::vector<Point> &vertices() const { return m_vertices; }

    // Affine hull frame; its origin is the lexicographically smallest vertex.
    const LatticeFrame &frame() const { return m_frame; }
    // Vertices in frame coordinates (same order as vertices()).
    const std::vector<Point> &local_vertices() const { return m_local; }
    // Facets in frame coordinates; empty when dim() <= 0.
    const std::vector<Facet> &facets() const { return m_facets; }

    friend bool operator==(const LatticePolytope &a, const LatticePolytope &b)
    {
        return a.m_ambient == b.m_ambient && a.m_vertices == b.m_vertices;
    }
    friend bool operator!=(const LatticePolytope &a, const LatticePolytope &b) { return !(a == b); }
    friend bool operator<(const LatticePolytope &a, const LatticePolytope &b)
    {
        return std::tie(a.m_ambient, a.m_vertices) < std::tie(b.m_ambient, b.m_vertices);
    }

    friend LatticePolytope hull(std::vector<Point> points, std::size_t ambient_dim);

private:
    std::size_t m_ambient = 0;
    std::vector<Point> m_vertices;
    LatticeFrame m_frame;
    std::vector<Point> m_local;
    std::vector<Facet> m_facets;
};

// Convex hull with irredundant, lexicographically sorted vertices.
inline LatticePolytope hull(std::vector<Point> points, std::size_t ambient_dim)
{
    for (const auto &p : points) {
        if (p.dim() != ambient_dim) {
            throw input_error("hull: mixed point dimensions");
        }
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    LatticePolytope poly(ambient_dim);
    if (points.empty()) {
        return poly;
    }
    std::vector<Point> dirs;
    dirs.reserve(points.size());
    for (std::size_t i = 1; i < points.size(); ++i) {
        dirs.push_back(points[i] - points[0]);
    }
    LatticeFrame frame = LatticeFrame::from_directions(points[0], dirs);
    if (frame.basis.empty() && points.size() == 1) {
        frame.origin = points[0];
        poly.m_vertices = points;
        poly.m_frame = std::move(frame);
        poly.m_local = {Point(std::size_t{0})};
        return poly;
    }
    FrameProjector proj(frame);
    std::vector<Point> local;
    local.reserve(points.size());
    for (const auto &p : points) {
        local.push_back(proj.coords(p));
    }

    auto ineqs = detail::facet_inequalities(local);
    const std::size_t np = local.size();
    std::vector<detail::Bits> inc(np, detail::Bits(ineqs.size()));
    for (std::size_t f = 0; f < ineqs.size(); ++f) {
        for (std::size_t j = 0; j < np; ++j) {
            Integer v = detail::dot(ineqs[f].first, local[j].coords());
            check(v >= ineqs[f].second, "hull: point violates facet");
            if (v == ineqs[f].second) {
                inc[j].set(f);
            }
        }
    }
    // A point is a vertex iff no other point lies on all of its facets.
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < np; ++j) {
        bool vertex = inc[j].count() > 0;
        for (std::size_t o = 0; o < np && vertex; ++o) {
            if (o != j && inc[j].subset_of(inc[o])) {
                vertex = false;
            }
        }
        if (vertex) {
            keep.push_back(j);
        }
    }
    check(!keep.empty() && keep.front() == 0, "hull: lexicographic minimum is not a vertex");

    for (auto j : keep) {
        poly.m_vertices.push_back(points[j]);
        poly.m_local.push_back(local[j]);
    }
    for (std::size_t f = 0; f < ineqs.size(); ++f) {
        Facet fac{ineqs[f].first, ineqs[f].second, {}};
        for (std::size_t v = 0; v < keep.size(); ++v) {
            if (inc[keep[v]].test(f)) {
                fac.vertices.push_back(v);
            }
        }
        poly.m_facets.push_back(std::move(fac));
    }
    poly.m_frame = std::move(frame);
    return poly;
}

inline LatticePolytope hull(const std::vector<Point> &points)
{
    if (points.empty()) {
        return LatticePolytope(0);
    }
    return hull(points, points.front().dim());
}

inline int dim(const LatticePolytope &p) { return p.dim(); }

inline Integer support_min(const LatticePolytope &p, const Covector &alpha)
{
    if (p.empty()) {
        throw input_error("support of empty polytope");
    }
    Integer best = alpha(p.vertices().front());
    for (const auto &v : p.vertices()) {
        Integer x = alpha(v);
        if (x < best) {
            best = x;
        }
    }
    return best;
}

// S^alpha together with the covector and the minimum it attains.
struct FaceRecord {
    LatticePolytope face;
    Covector normal;
    Integer min_value;
};

inline FaceRecord face(const LatticePolytope &p, const Covector &alpha)
{
    Integer mn = support_min(p, alpha);
    std::vector<Point> pts;
    for (const auto &v : p.vertices()) {
        if (alpha(v) == mn) {
            pts.push_back(v);
        }
    }
    return {hull(std::move(pts), p.ambient_dim()), alpha, mn};
}

inline LatticePolytope minkowski_sum(const LatticePolytope &a, const LatticePolytope &b)
{
    if (a.ambient_dim() != b.ambient_dim()) {
        throw input_error("minkowski_sum: dimension mismatch");
    }
    if (a.empty() || b.empty()) {
        return LatticePolytope(a.ambient_dim());
    }
    std::vector<Point> pts;
    pts.reserve(a.vertices().size() * b.vertices().size());
    for (const auto &u : a.vertices()) {
        for (const auto &v : b.vertices()) {
            pts.push_back(u + v);
        }
    }
    return hull(std::move(pts), a.ambient_dim());
}

inline LatticePolytope minkowski_sum(const std::vector<LatticePolytope> &ps, std::size_t ambient_dim)
{
    LatticePolytope acc = hull({Point(ambient_dim)}, ambient_dim);
    for (const auto &p : ps) {
        acc = minkowski_sum(acc, p);
    }
    return acc;
}

inline LatticePolytope translate(const LatticePolytope &p, const Point &t)
{
    std::vector<Point> pts;
    for (const auto &v : p.vertices()) {
        pts.push_back(v + t);
    }
    return hull(std::move(pts), p.ambient_dim());
}

// Index sets are sorted lists of 0-based coordinate indices.
using IndexSet = std::vector<std::size_t>;

// P intersected with R^I = {k : k_i = 0 for i not in I}. Valid for polytopes
// in the nonnegative orthant, where this intersection is a face of P.
inline LatticePolytope restrict_to_index_set(const LatticePolytope &p, const IndexSet &index_set)
{
    const std::size_t n = p.ambient_dim();
    std::vector<bool> in(n, false);
    for (auto i : index_set) {
        if (i >= n) {
            throw input_error("index set out of range");
        }
        in[i] = true;
    }
    std::vector<Point> pts;
    for (const auto &v : p.vertices()) {
        bool inside = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (v[i] < 0) {
                throw input_error("restrict_to_index_set: polytope has negative coordinates");
            }
            if (!in[i] && v[i] != 0) {
                inside = false;
            }
        }
        if (inside) {
            pts.push_back(v);
        }
    }
    return hull(std::move(pts), n);
}

// Keeps only the coordinates listed in `coords` (in that order).
inline LatticePolytope project(const LatticePolytope &p, const IndexSet &coords)
{
    std::vector<Point> pts;
    for (const auto &v : p.vertices()) {
        Point q(coords.size());
        for (std::size_t i = 0; i < coords.size(); ++i) {
            q[i] = v[coords[i]];
        }
        pts.push_back(std::move(q));
    }
    return hull(std::move(pts), coords.size());
}

// Pads each vertex with zeros: coordinate i of the result is v[j] when
// coords[j] == i.
inline LatticePolytope embed(const LatticePolytope &p, const IndexSet &coords, std::size_t ambient_dim)
{
    std::vector<Point> pts;
    for (const auto &v : p.vertices()) {
        Point q(ambient_dim);
        for (std::size_t j = 0; j < coords.size(); ++j) {
            q[coords[j]] = v[j];
        }
        pts.push_back(std::move(q));
    }
    return hull(std::move(pts), ambient_dim);
}

// Primitive inner normals of the facets of a full-dimensional polytope,
// paired with the facet itself.
inline std::vector<FaceRecord> facet_normals(const LatticePolytope &p)
{
    if (p.empty() || p.dim() != static_cast<int>(p.ambient_dim()) || p.ambient_dim() == 0) {
        throw input_error("not full-dimensional");
    }
    // A full-rank saturated lattice in Hermite form has the identity basis,
    // so frame normals are ambient covectors.
    for (std::size_t i = 0; i < p.frame().rank(); ++i) {
        for (std::size_t j = 0; j < p.ambient_dim(); ++j) {
            check(p.frame().basis[i][j] == (i == j ? 1 : 0), "facet_normals: non-standard frame");
        }
    }
    std::vector<FaceRecord> out;
    for (const auto &f : p.facets()) {
        Covector alpha(f.normal);
        std::vector<Point> pts;
        for (auto v : f.vertices) {
            pts.push_back(p.vertices()[v]);
        }
        // local coordinates are offsets from the frame origin
        Integer mn = f.offset + alpha(p.frame().origin);
        out.push_back({hull(std::move(pts), p.ambient_dim()), std::move(alpha), std::move(mn)});
    }
    return out;
}

} // namespace nzeta

#endif
