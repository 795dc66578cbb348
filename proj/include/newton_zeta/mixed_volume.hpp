#ifndef NEWTON_ZETA_MIXED_VOLUME_HPP
#define NEWTON_ZETA_MIXED_VOLUME_HPP

// Lattice-normalized volumes and mixed volumes.
//
// Volumes are measured in the integer coordinates of a lattice frame, so the
// fundamental parallelepiped of the frame lattice has volume 1. Internally
// everything is kept as the integer l! * Vol_l.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include <newton_zeta/lattice.hpp>
#include <newton_zeta/polytope.hpp>
#include <newton_zeta/types.hpp>

namespace nzeta
{

inline Integer factorial(unsigned long n)
{
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

inline Integer binomial(unsigned long n, unsigned long k)
{
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

// Thread-safe memo tables for volume computations. Keys are vertex lists
// translated so that the lexicographically smallest vertex is the origin.
class VolumeCache
{
public:
    using Body = std::vector<Point>;

    static VolumeCache &global()
    {
        static VolumeCache cache;
        return cache;
    }

    bool lookup_volume(const Body &key, Integer &out) const
    {
        std::lock_guard lock(m_mutex);
        auto it = m_volumes.find(key);
        if (it == m_volumes.end()) {
            return false;
        }
        out = it->second;
        return true;
    }
    void store_volume(Body key, const Integer &v)
    {
        std::lock_guard lock(m_mutex);
        m_volumes.emplace(std::move(key), v);
    }
    bool lookup_mixed(const std::vector<Body> &key, Integer &out) const
    {
        std::lock_guard lock(m_mutex);
        auto it = m_mixed.find(key);
        if (it == m_mixed.end()) {
            return false;
        }
        out = it->second;
        return true;
    }
    void store_mixed(std::vector<Body> key, const Integer &v)
    {
        std::lock_guard lock(m_mutex);
        m_mixed.emplace(std::move(key), v);
    }
    std::size_t size() const
    {
        std::lock_guard lock(m_mutex);
        return m_volumes.size() + m_mixed.size();
    }
    void clear()
    {
        std::lock_guard lock(m_mutex);
        m_volumes.clear();
        m_mixed.clear();
    }

private:
    mutable std::mutex m_mutex;
    std::map<Body, Integer> m_volumes;
    std::map<std::vector<Body>, Integer> m_mixed;
};

namespace detail
{

inline std::vector<Point> translated_to_origin(const std::vector<Point> &sorted_vertices)
{
    std::vector<Point> out;
    out.reserve(sorted_vertices.size());
    for (const auto &v : sorted_vertices) {
        out.push_back(v - sorted_vertices.front());
    }
    return out;
}

} // namespace detail

// dim(P)! * Vol(P), with the volume taken in the lattice of P's own affine hull.
// Computed as a sum of pyramids from the base vertex over the facets not
// containing it: height (lattice distance) times the facet's normalized volume.
inline Integer normalized_volume(const LatticePolytope &p, VolumeCache &cache = VolumeCache::global())
{
    if (p.empty()) {
        return 0;
    }
    const int r = p.dim();
    if (r == 0) {
        return 1;
    }
    auto key = detail::translated_to_origin(p.vertices());
    Integer result;
    if (cache.lookup_volume(key, result)) {
        return result;
    }
    if (r == 1) {
        Integer lo = p.local_vertices().front()[0], hi = lo;
        for (const auto &v : p.local_vertices()) {
            lo = std::min(lo, v[0]);
            hi = std::max(hi, v[0]);
        }
        result = hi - lo;
    } else {
        // Base vertex is the frame origin (local coordinates 0).
        result = 0;
        for (const auto &f : p.facets()) {
            if (f.offset == 0) {
                continue;
            }
            std::vector<Point> pts;
            pts.reserve(f.vertices.size());
            for (auto v : f.vertices) {
                pts.push_back(p.local_vertices()[v]);
            }
            LatticePolytope facet = hull(std::move(pts), static_cast<std::size_t>(r));
            check(facet.dim() == r - 1, "normalized_volume: facet has wrong dimension");
            result += (-f.offset) * normalized_volume(facet, cache);
        }
    }
    cache.store_volume(std::move(key), result);
    return result;
}

namespace detail
{

// Direction coordinates (in the frame lattice) of a body, relative to its
// smallest vertex. Throws if the body is not parallel to the frame.
inline std::vector<Point> body_in_frame(const LatticePolytope &body, const FrameProjector &dir_proj)
{
    std::vector<Point> out;
    out.reserve(body.vertices().size());
    for (const auto &v : body.vertices()) {
        out.push_back(dir_proj.coords(v - body.vertices().front()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline FrameProjector direction_projector(const LatticeFrame &frame)
{
    LatticeFrame dirs = frame;
    dirs.origin = Point(frame.ambient_dim());
    return FrameProjector(std::move(dirs));
}

// l! * Vol_l of the hull of `pts` in Z^l; zero when not full-dimensional.
inline Integer full_normalized_volume(const std::vector<Point> &pts, std::size_t l, VolumeCache &cache)
{
    LatticePolytope p = hull(pts, l);
    if (p.dim() < static_cast<int>(l)) {
        return 0;
    }
    return normalized_volume(p, cache);
}

} // namespace detail

// Vol_l(P) in the lattice of `frame`, normalized so the unit lattice cube has
// volume 1. Zero when dim(P) < rank(frame).
inline Rational lattice_volume(const LatticePolytope &p, const LatticeFrame &frame,
                               VolumeCache &cache = VolumeCache::global())
{
    if (p.empty()) {
        throw input_error("lattice_volume: empty polytope");
    }
    const std::size_t l = frame.rank();
    auto pts = detail::body_in_frame(p, detail::direction_projector(frame));
    Rational v(detail::full_normalized_volume(pts, l, cache));
    v /= factorial(l);
    v.canonicalize();
    return v;
}

// Independent route to lattice_volume: counts lattice points of tP for
// t = 0..l and reads the volume off the leading coefficient of the
// counting polynomial (the l-th finite difference divided by l!).
namespace detail
{

template <typename T>
Integer count_dilate(const std::vector<std::vector<T>> &normals, const std::vector<T> &offsets,
                     const std::vector<T> &lo, const std::vector<T> &hi, T t)
{
    const std::size_t l = lo.size();
    const std::size_t nf = normals.size();
    std::vector<T> x(l);
    std::vector<T> partial(nf, T(0));
    Integer total = 0;
    // Odometer over the first l-1 coordinates; the last is solved directly.
    auto recurse = [&](auto &&self, std::size_t i) -> void {
        if (i + 1 == l) {
            T xmin = t * lo[i], xmax = t * hi[i];
            for (std::size_t f = 0; f < nf; ++f) {
                const T a = normals[f][i];
                const T rhs = t * offsets[f] - partial[f];
                // a * x >= rhs
                if (a > 0) {
                    T q = rhs / a;
                    if (q * a < rhs) {
                        q += 1;
                    }
                    xmin = std::max(xmin, q);
                } else if (a < 0) {
                    T q = rhs / a;
                    if (q * a < rhs) {
                        q -= 1;
                    }
                    xmax = std::min(xmax, q);
                } else if (rhs > 0) {
                    return;
                }
            }
            if (xmax >= xmin) {
                total += Integer(xmax - xmin + 1);
            }
            return;
        }
        for (T v = t * lo[i]; v <= t * hi[i]; v += 1) {
            x[i] = v;
            for (std::size_t f = 0; f < nf; ++f) {
                partial[f] += normals[f][i] * v;
            }
            self(self, i + 1);
            for (std::size_t f = 0; f < nf; ++f) {
                partial[f] -= normals[f][i] * v;
            }
        }
    };
    recurse(recurse, 0);
    return total;
}

} // namespace detail

inline Rational lattice_point_volume_oracle(const LatticePolytope &p, const LatticeFrame &frame)
{
    if (p.empty()) {
        throw input_error("lattice_volume: empty polytope");
    }
    const std::size_t l = frame.rank();
    auto pts = detail::body_in_frame(p, detail::direction_projector(frame));
    LatticePolytope q = hull(pts, l);
    if (q.dim() < static_cast<int>(l)) {
        return 0;
    }
    if (l == 0) {
        return 1;
    }
    // Work in the local coordinates of q (identity basis, shifted origin).
    std::vector<Integer> lo(l), hi(l);
    for (std::size_t i = 0; i < l; ++i) {
        lo[i] = hi[i] = q.local_vertices().front()[i];
        for (const auto &v : q.local_vertices()) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    }
    constexpr long bound = 1L << 20;
    bool small = true;
    auto fits = [&](const Integer &x) { return abs(x) < bound; };
    for (std::size_t i = 0; i < l; ++i) {
        small = small && fits(lo[i]) && fits(hi[i]);
    }
    for (const auto &f : q.facets()) {
        small = small && fits(f.offset);
        for (const auto &c : f.normal) {
            small = small && fits(c);
        }
    }
    std::vector<Integer> counts(l + 1);
    counts[0] = 1;
    if (small) {
        std::vector<std::vector<long>> normals;
        std::vector<long> offsets;
        for (const auto &f : q.facets()) {
            std::vector<long> nrm;
            for (const auto &c : f.normal) {
                nrm.push_back(c.get_si());
            }
            normals.push_back(std::move(nrm));
            offsets.push_back(f.offset.get_si());
        }
        std::vector<long> l64(l), h64(l);
        for (std::size_t i = 0; i < l; ++i) {
            l64[i] = lo[i].get_si();
            h64[i] = hi[i].get_si();
        }
        for (std::size_t t = 1; t <= l; ++t) {
            counts[t] = detail::count_dilate<long>(normals, offsets, l64, h64, static_cast<long>(t));
        }
    } else {
        std::vector<std::vector<Integer>> normals;
        std::vector<Integer> offsets;
        for (const auto &f : q.facets()) {
            normals.push_back(f.normal);
            offsets.push_back(f.offset);
        }
        for (std::size_t t = 1; t <= l; ++t) {
            counts[t] = detail::count_dilate<Integer>(normals, offsets, lo, hi, Integer(static_cast<long>(t)));
        }
    }
    Integer diff = 0;
    for (std::size_t t = 0; t <= l; ++t) {
        Integer term = binomial(l, t) * counts[t];
        diff += ((l - t) % 2 == 0) ? term : Integer(-term);
    }
    Rational v(diff);
    v /= factorial(l);
    v.canonicalize();
    return v;
}

// l! * V(S_1, ..., S_l) in the lattice of `frame` (l = rank of frame),
// by inclusion-exclusion over Minkowski subset sums. Repeated bodies are
// grouped so each distinct multiplicity vector is hulled once.
inline Integer normalized_mixed_volume(const std::vector<LatticePolytope> &bodies, const LatticeFrame &frame,
                                       VolumeCache &cache = VolumeCache::global())
{
    const std::size_t l = frame.rank();
    if (bodies.size() != l) {
        throw input_error("normalized_mixed_volume: number of bodies must equal the frame rank");
    }
    for (const auto &b : bodies) {
        if (b.empty()) {
            return 0;
        }
        if (b.ambient_dim() != frame.ambient_dim()) {
            throw input_error("normalized_mixed_volume: dimension mismatch");
        }
    }
    if (l == 0) {
        return 1;
    }
    FrameProjector proj = detail::direction_projector(frame);
    std::vector<std::vector<Point>> local;
    local.reserve(l);
    for (const auto &b : bodies) {
        local.push_back(detail::body_in_frame(b, proj));
    }

    // All bodies together must span the frame, otherwise every sum is flat.
    {
        IntMatrix dirs;
        for (const auto &body : local) {
            for (const auto &v : body) {
                if (!v.is_zero()) {
                    dirs.push_back(v.coords());
                }
            }
        }
        if (rank(dirs, l) < l) {
            return 0;
        }
    }

    std::sort(local.begin(), local.end());
    Integer result;
    if (cache.lookup_mixed(local, result)) {
        return result;
    }

    std::vector<std::vector<Point>> distinct;
    std::vector<unsigned long> mult;
    for (const auto &b : local) {
        if (!distinct.empty() && distinct.back() == b) {
            ++mult.back();
        } else {
            distinct.push_back(b);
            mult.push_back(1);
        }
    }
    const std::size_t r = distinct.size();
    std::vector<unsigned long> c(r, 0);
    Integer total = 0;
    while (true) {
        // next multiplicity vector (odometer)
        std::size_t i = 0;
        while (i < r && c[i] == mult[i]) {
            c[i] = 0;
            ++i;
        }
        if (i == r) {
            break;
        }
        ++c[i];

        unsigned long size = 0;
        Integer weight = 1;
        std::vector<Point> sum{Point(l)};
        for (std::size_t j = 0; j < r; ++j) {
            if (c[j] == 0) {
                continue;
            }
            size += c[j];
            weight *= binomial(mult[j], c[j]);
            std::vector<Point> next;
            next.reserve(sum.size() * distinct[j].size());
            for (const auto &s : sum) {
                for (const auto &v : distinct[j]) {
                    next.push_back(s + Integer(static_cast<unsigned long>(c[j])) * v);
                }
            }
            sum = hull(std::move(next), l).vertices();
        }
        Integer vol = detail::full_normalized_volume(sum, l, cache);
        if ((l - size) % 2 == 0) {
            total += weight * vol;
        } else {
            total -= weight * vol;
        }
    }
    Integer lf = factorial(l);
    check(mpz_divisible_p(total.get_mpz_t(), lf.get_mpz_t()) != 0, "normalized_mixed_volume: non-integral result");
    result = total / lf;
    check(result >= 0, "normalized_mixed_volume: negative result");
    cache.store_mixed(std::move(local), result);
    return result;
}

} // namespace nzeta

#endif
