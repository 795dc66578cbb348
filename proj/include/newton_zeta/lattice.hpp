#ifndef NEWTON_ZETA_LATTICE_HPP
#define NEWTON_ZETA_LATTICE_HPP

// Exact integer linear algebra over Z^n: primitive reduction, integer
// kernels, saturated sublattices and lattice frames.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <newton_zeta/types.hpp>

namespace nzeta
{

inline Covector primitive_part(const IntVector &v)
{
    Integer g = 0;
    for (const auto &c : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    if (g == 0) {
        throw input_error("zero covector");
    }
    IntVector r = v;
    if (g != 1) {
        for (auto &c : r) {
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        }
    }
    return Covector(std::move(r));
}

inline Covector primitive_part(const Covector &v) { return primitive_part(v.comps()); }

inline bool is_primitive(const IntVector &v)
{
    Integer g = 0;
    for (const auto &c : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    return g == 1;
}

namespace detail
{

// Divides a vector by the gcd of its entries (no-op for the zero vector).
inline void make_primitive(IntVector &v)
{
    Integer g = 0;
    for (const auto &c : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    if (g > 1) {
        for (auto &c : v) {
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        }
    }
}

inline Integer dot(const IntVector &a, const IntVector &b)
{
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

} // namespace detail

// Basis of {x in Z^n : A x = 0} for the m x n matrix A given by rows.
// The result is a saturated lattice; it is computed by unimodular column
// operations that bring A to lower echelon form.
inline IntMatrix integer_kernel(const IntMatrix &rows, std::size_t n)
{
    const std::size_t m = rows.size();
    IntMatrix a = rows;
    for (const auto &r : a) {
        if (r.size() != n) {
            throw input_error("matrix row length mismatch");
        }
    }
    // u holds columns of the transformation as rows: u[j] is column j.
    IntMatrix u(n, IntVector(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        u[j][j] = 1;
    }
    auto col_combine = [&](std::size_t p, std::size_t q, const Integer &s, const Integer &t, const Integer &x,
                           const Integer &y) {
        // col_p <- s col_p + t col_q ; col_q <- x col_p + y col_q
        for (std::size_t i = 0; i < m; ++i) {
            Integer cp = a[i][p], cq = a[i][q];
            a[i][p] = s * cp + t * cq;
            a[i][q] = x * cp + y * cq;
        }
        for (std::size_t i = 0; i < n; ++i) {
            Integer cp = u[p][i], cq = u[q][i];
            u[p][i] = s * cp + t * cq;
            u[q][i] = x * cp + y * cq;
        }
    };

    std::size_t piv = 0;
    for (std::size_t i = 0; i < m && piv < n; ++i) {
        for (std::size_t q = piv + 1; q < n; ++q) {
            if (a[i][q] == 0) {
                continue;
            }
            if (a[i][piv] == 0) {
                col_combine(piv, q, 0, 1, 1, 0);
                continue;
            }
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[i][piv].get_mpz_t(), a[i][q].get_mpz_t());
            Integer x = -a[i][q] / g;
            Integer y = a[i][piv] / g;
            col_combine(piv, q, s, t, x, y);
        }
        if (a[i][piv] != 0) {
            ++piv;
        }
    }
    IntMatrix ker(u.begin() + static_cast<std::ptrdiff_t>(piv), u.end());
    return ker;
}

inline std::size_t rank(const IntMatrix &rows, std::size_t n)
{
    return n - integer_kernel(rows, n).size();
}

// Row Hermite normal form; zero rows are dropped.
inline IntMatrix hermite_normal_form(IntMatrix rows)
{
    if (rows.empty()) {
        return rows;
    }
    const std::size_t n = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        // Euclid on column c among rows r..end
        while (true) {
            std::optional<std::size_t> best;
            for (std::size_t i = r; i < rows.size(); ++i) {
                if (rows[i][c] != 0 && (!best || abs(rows[i][c]) < abs(rows[*best][c]))) {
                    best = i;
                }
            }
            if (!best) {
                break;
            }
            std::swap(rows[r], rows[*best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) {
                    continue;
                }
                Integer qt;
                mpz_fdiv_q(qt.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
                for (std::size_t j = c; j < n; ++j) {
                    rows[i][j] -= qt * rows[r][j];
                }
                if (rows[i][c] != 0) {
                    done = false;
                }
            }
            if (done) {
                break;
            }
        }
        if (rows[r][c] == 0) {
            continue;
        }
        if (rows[r][c] < 0) {
            for (auto &e : rows[r]) {
                e = -e;
            }
        }
        for (std::size_t i = 0; i < r; ++i) {
            Integer qt;
            mpz_fdiv_q(qt.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
            if (qt != 0) {
                for (std::size_t j = c; j < n; ++j) {
                    rows[i][j] -= qt * rows[r][j];
                }
            }
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

// Basis (in Hermite normal form) of span(vectors) intersected with Z^n.
inline std::vector<Point> saturated_basis(const std::vector<Point> &vectors)
{
    if (vectors.empty()) {
        return {};
    }
    const std::size_t n = vectors.front().dim();
    IntMatrix rows;
    rows.reserve(vectors.size());
    for (const auto &v : vectors) {
        if (v.dim() != n) {
            throw input_error("point dimension mismatch");
        }
        rows.push_back(v.coords());
    }
    IntMatrix orth = integer_kernel(rows, n);
    IntMatrix sat = integer_kernel(orth, n);
    std::vector<Point> out;
    for (auto &r : hermite_normal_form(std::move(sat))) {
        out.emplace_back(std::move(r));
    }
    return out;
}

// An affine lattice frame: origin + basis of a saturated sublattice.
struct LatticeFrame {
    Point origin;
    std::vector<Point> basis;

    std::size_t ambient_dim() const { return origin.dim(); }
    std::size_t rank() const { return basis.size(); }

    // Frame through `origin` whose direction lattice is the saturation of
    // span(directions).
    static LatticeFrame from_directions(Point origin, const std::vector<Point> &directions)
    {
        LatticeFrame f;
        f.basis = saturated_basis(directions);
        f.origin = std::move(origin);
        return f;
    }

    static LatticeFrame standard(std::size_t n)
    {
        LatticeFrame f;
        f.origin = Point(n);
        for (std::size_t i = 0; i < n; ++i) {
            Point e(n);
            e[i] = 1;
            f.basis.push_back(std::move(e));
        }
        return f;
    }
};

// Converts ambient points into integer frame coordinates. Precomputes a
// left inverse of the basis restricted to a set of pivot coordinates.
class FrameProjector
{
public:
    explicit FrameProjector(LatticeFrame frame) : m_frame(std::move(frame))
    {
        const std::size_t r = m_frame.rank();
        const std::size_t n = m_frame.ambient_dim();
        for (const auto &b : m_frame.basis) {
            if (b.dim() != n) {
                throw input_error("frame basis dimension mismatch");
            }
        }
        // Gaussian elimination on B^T (n x r) picks r independent coordinates.
        std::vector<std::vector<Rational>> bt(n, std::vector<Rational>(r));
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                bt[i][j] = m_frame.basis[j][i];
            }
        }
        std::vector<std::vector<Rational>> work = bt;
        std::vector<bool> used(n, false);
        for (std::size_t c = 0; c < r; ++c) {
            std::optional<std::size_t> p;
            for (std::size_t i = 0; i < n; ++i) {
                if (!used[i] && work[i][c] != 0) {
                    p = i;
                    break;
                }
            }
            if (!p) {
                throw input_error("frame basis is linearly dependent");
            }
            used[*p] = true;
            m_pivots.push_back(*p);
            for (std::size_t i = 0; i < n; ++i) {
                if (i != *p && work[i][c] != 0) {
                    Rational f = work[i][c] / work[*p][c];
                    for (std::size_t j = c; j < r; ++j) {
                        work[i][j] -= f * work[*p][j];
                    }
                }
            }
        }
        // Invert the r x r submatrix M[i][j] = basis[j][pivot_i].
        std::vector<std::vector<Rational>> m(r, std::vector<Rational>(2 * r));
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < r; ++j) {
                m[i][j] = m_frame.basis[j][m_pivots[i]];
            }
            m[i][r + i] = 1;
        }
        for (std::size_t c = 0; c < r; ++c) {
            std::size_t p = c;
            while (m[p][c] == 0) {
                ++p;
            }
            std::swap(m[p], m[c]);
            Rational inv = 1 / m[c][c];
            for (auto &e : m[c]) {
                e *= inv;
            }
            for (std::size_t i = 0; i < r; ++i) {
                if (i != c && m[i][c] != 0) {
                    Rational f = m[i][c];
                    for (std::size_t j = 0; j < 2 * r; ++j) {
                        m[i][j] -= f * m[c][j];
                    }
                }
            }
        }
        m_inverse.assign(r, std::vector<Rational>(r));
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < r; ++j) {
                m_inverse[i][j] = m[i][r + j];
            }
        }
    }

    const LatticeFrame &frame() const { return m_frame; }

    std::optional<Point> try_coords(const Point &p) const
    {
        const std::size_t r = m_frame.rank();
        if (p.dim() != m_frame.ambient_dim()) {
            throw input_error("point dimension mismatch");
        }
        Point rel = p - m_frame.origin;
        Point out(r);
        for (std::size_t i = 0; i < r; ++i) {
            Rational s = 0;
            for (std::size_t j = 0; j < r; ++j) {
                s += m_inverse[i][j] * rel[m_pivots[j]];
            }
            if (s.get_den() != 1) {
                return std::nullopt;
            }
            out[i] = s.get_num();
        }
        if (lift(out) != p) {
            return std::nullopt;
        }
        return out;
    }

    Point coords(const Point &p) const
    {
        auto c = try_coords(p);
        if (!c) {
            throw input_error("point not in frame span");
        }
        return *std::move(c);
    }

    Point lift(const Point &c) const
    {
        Point p = m_frame.origin;
        for (std::size_t j = 0; j < m_frame.rank(); ++j) {
            if (c[j] != 0) {
                p += c[j] * m_frame.basis[j];
            }
        }
        return p;
    }

private:
    LatticeFrame m_frame;
    std::vector<std::size_t> m_pivots;
    std::vector<std::vector<Rational>> m_inverse;
};

inline std::vector<Point> to_frame_coords(const std::vector<Point> &points, const LatticeFrame &frame)
{
    FrameProjector proj(frame);
    std::vector<Point> out;
    out.reserve(points.size());
    for (const auto &p : points) {
        out.push_back(proj.coords(p));
    }
    return out;
}

// The two primitive generators of the line annihilating `directions`,
// whose span must have rank d-1 in Z^d.
inline std::pair<Covector, Covector> orthogonal_line_generators(const std::vector<Point> &directions, std::size_t d)
{
    IntMatrix rows;
    for (const auto &v : directions) {
        if (v.dim() != d) {
            throw input_error("point dimension mismatch");
        }
        rows.push_back(v.coords());
    }
    IntMatrix ker = integer_kernel(rows, d);
    if (ker.size() != 1) {
        throw input_error("normal space not a line");
    }
    Covector beta = primitive_part(ker.front());
    // Orient so that the first nonzero component is positive.
    for (const auto &c : beta.comps()) {
        if (c != 0) {
            if (c < 0) {
                beta = -beta;
            }
            break;
        }
    }
    return {beta, -beta};
}

// Primitive basis of ker(alpha) in Z^d, as a frame through `origin`.
inline LatticeFrame kernel_frame(const Covector &alpha, Point origin)
{
    IntMatrix ker = integer_kernel(IntMatrix{alpha.comps()}, alpha.dim());
    LatticeFrame f;
    f.origin = std::move(origin);
    for (auto &r : hermite_normal_form(std::move(ker))) {
        f.basis.emplace_back(std::move(r));
    }
    return f;
}

} // namespace nzeta

#endif
