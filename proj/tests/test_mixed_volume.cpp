#include <gtest/gtest.h>

#include <algorithm>

#include <newton_zeta/mixed_volume.hpp>

#include "support.hpp"

using namespace nzeta;
using namespace nzeta::testing;

namespace
{

LatticePolytope simplex(std::size_t n)
{
    std::vector<Point> pts{Point(n)};
    for (std::size_t i = 0; i < n; ++i) {
        Point e(n);
        e[i] = 1;
        pts.push_back(e);
    }
    return hull(pts, n);
}

LatticePolytope cube(std::size_t n, long side)
{
    std::vector<Point> pts;
    for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
        Point p(n);
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = (mask >> i & 1) ? side : 0;
        }
        pts.push_back(p);
    }
    return hull(pts, n);
}

Integer nmv(const std::vector<LatticePolytope> &bodies)
{
    return normalized_mixed_volume(bodies, LatticeFrame::standard(bodies.front().ambient_dim()));
}

} // namespace

TEST(Factorial, Values)
{
    EXPECT_EQ(factorial(0), 1);
    EXPECT_EQ(factorial(5), 120);
    EXPECT_EQ(binomial(5, 2), 10);
    EXPECT_EQ(binomial(2, 5), 0);
}

TEST(NormalizedVolume, Basics)
{
    EXPECT_EQ(normalized_volume(simplex(3)), 1);
    EXPECT_EQ(normalized_volume(cube(2, 1)), 2);
    EXPECT_EQ(normalized_volume(cube(3, 2)), 48);
    EXPECT_EQ(normalized_volume(hull({Point{0, 0}, Point{3, 3}}, 2)), 3);
    EXPECT_EQ(normalized_volume(hull({Point{1, 1}}, 2)), 1);
    EXPECT_EQ(normalized_volume(hull({}, 2)), 0);
}

TEST(LatticeVolume, UnitTriangleAndFrames)
{
    EXPECT_EQ(lattice_volume(simplex(2), LatticeFrame::standard(2)), Rational(1, 2));
    // A segment measured in a rank-1 frame.
    auto seg = hull({Point{0, 0, 0}, Point{2, 4, 0}}, 3);
    LatticeFrame f{Point(3), {Point{1, 2, 0}}};
    EXPECT_EQ(lattice_volume(seg, f), 2);
    // Flat polytopes have zero volume in a bigger frame.
    EXPECT_EQ(lattice_volume(seg, LatticeFrame::standard(3)), 0);
}

TEST(LatticeVolume, OracleAgreementOnRandomPolytopes)
{
    Rng rng(21);
    int full = 0;
    for (int it = 0; it < 120; ++it) {
        const std::size_t d = 1 + it % 4;
        auto p = random_polytope(rng, d, d + 1 + it % 4, 0, 5 - (d == 4 ? 2 : 0));
        LatticeFrame f = LatticeFrame::standard(d);
        EXPECT_EQ(lattice_volume(p, f), lattice_point_volume_oracle(p, f)) << "iteration " << it;
        full += p.dim() == static_cast<int>(d);
    }
    EXPECT_GT(full, 60);
}

TEST(LatticeVolume, OracleAgreementInSublatticeFrames)
{
    Rng rng(22);
    for (int it = 0; it < 30; ++it) {
        // A 2-dimensional polytope inside a random plane of Z^3.
        IntMatrix u = random_unimodular(rng, 3);
        auto flat = random_polytope(rng, 3, 5, 0, 3);
        std::vector<Point> pts;
        for (const auto &v : flat.vertices()) {
            Point w = v;
            w[2] = 0;
            pts.push_back(linear_map(u, w));
        }
        auto p = hull(pts, 3);
        LatticeFrame f = LatticeFrame::from_directions(Point(3), {linear_map(u, Point{1, 0, 0}), linear_map(u, Point{0, 1, 0})});
        EXPECT_EQ(lattice_volume(p, f), lattice_point_volume_oracle(p, f));
    }
}

TEST(MixedVolume, KnownValues)
{
    auto seg_x = hull({Point{0, 0}, Point{1, 0}}, 2);
    auto seg_y = hull({Point{0, 0}, Point{0, 1}}, 2);
    EXPECT_EQ(nmv({seg_x, seg_y}), 1);
    EXPECT_EQ(nmv({seg_x, seg_x}), 0);
    EXPECT_EQ(nmv({simplex(2), simplex(2)}), 1);
    EXPECT_EQ(nmv({simplex(2), cube(2, 1)}), 2);
    EXPECT_EQ(nmv({cube(2, 2), cube(2, 3)}), 2 * 2 * 3);
    EXPECT_EQ(nmv({hull({}, 2), simplex(2)}), 0);
}

TEST(MixedVolume, RankZeroFrameIsOne)
{
    LatticeFrame f{Point(2), {}};
    EXPECT_EQ(normalized_mixed_volume({}, f), 1);
}

TEST(MixedVolume, WrongArity)
{
    EXPECT_THROW(nmv({simplex(2)}), input_error);
}

TEST(MixedVolume, Symmetry)
{
    Rng rng(23);
    for (int it = 0; it < 20; ++it) {
        std::vector<LatticePolytope> bodies;
        for (int i = 0; i < 3; ++i) {
            bodies.push_back(random_polytope(rng, 3, 4, 0, 3));
        }
        Integer ref = nmv(bodies);
        std::sort(bodies.begin(), bodies.end());
        do {
            EXPECT_EQ(nmv(bodies), ref);
        } while (std::next_permutation(bodies.begin(), bodies.end()));
    }
}

TEST(MixedVolume, Diagonal)
{
    Rng rng(24);
    for (int it = 0; it < 30; ++it) {
        const std::size_t d = 1 + it % 4;
        auto p = random_polytope(rng, d, d + 2, 0, 3);
        std::vector<LatticePolytope> bodies(d, p);
        Rational expected = lattice_volume(p, LatticeFrame::standard(d)) * Rational(factorial(d));
        EXPECT_EQ(Rational(nmv(bodies)), expected);
    }
}

TEST(MixedVolume, TranslationInvariance)
{
    Rng rng(25);
    for (int it = 0; it < 30; ++it) {
        const std::size_t d = 2 + it % 2;
        std::vector<LatticePolytope> bodies, moved;
        for (std::size_t i = 0; i < d; ++i) {
            bodies.push_back(random_polytope(rng, d, 4, 0, 3));
            moved.push_back(translate(bodies.back(), random_point(rng, d, -5, 5)));
        }
        EXPECT_EQ(nmv(bodies), nmv(moved));
    }
}

TEST(MixedVolume, Multilinearity)
{
    Rng rng(26);
    for (int it = 0; it < 30; ++it) {
        const std::size_t d = 2 + it % 2;
        auto a = random_polytope(rng, d, 3, 0, 3);
        auto b = random_polytope(rng, d, 3, 0, 3);
        std::vector<LatticePolytope> rest;
        for (std::size_t i = 1; i < d; ++i) {
            rest.push_back(random_polytope(rng, d, 4, 0, 3));
        }
        auto with = [&](const LatticePolytope &first) {
            std::vector<LatticePolytope> v{first};
            v.insert(v.end(), rest.begin(), rest.end());
            return nmv(v);
        };
        EXPECT_EQ(with(minkowski_sum(a, b)), with(a) + with(b));
    }
}

TEST(MixedVolume, UnimodularInvariance)
{
    Rng rng(27);
    for (int it = 0; it < 30; ++it) {
        const std::size_t d = 2 + it % 3;
        IntMatrix u = random_unimodular(rng, d);
        std::vector<LatticePolytope> bodies, mapped;
        for (std::size_t i = 0; i < d; ++i) {
            bodies.push_back(random_polytope(rng, d, d + 1, 0, 2));
            mapped.push_back(linear_map(u, bodies.back(), Point(d)));
        }
        EXPECT_EQ(nmv(bodies), nmv(mapped));
    }
}

TEST(MixedVolume, SublatticeFrame)
{
    // Two segments spanning the plane z = 1 in Z^3; the frame's lattice is
    // the plane's own, so the answer matches the planar computation.
    auto a = hull({Point{0, 0, 1}, Point{1, 0, 1}}, 3);
    auto b = hull({Point{0, 0, 1}, Point{1, 2, 1}}, 3);
    LatticeFrame f{Point{0, 0, 1}, {Point{1, 0, 0}, Point{0, 1, 0}}};
    EXPECT_EQ(normalized_mixed_volume({a, b}, f), 2);
}

TEST(VolumeCache, ResultsIndependentOfCache)
{
    Rng rng(28);
    VolumeCache fresh;
    for (int it = 0; it < 20; ++it) {
        std::vector<LatticePolytope> bodies;
        for (int i = 0; i < 3; ++i) {
            bodies.push_back(random_polytope(rng, 3, 4, 0, 2));
        }
        EXPECT_EQ(normalized_mixed_volume(bodies, LatticeFrame::standard(3), fresh), nmv(bodies));
    }
    EXPECT_GT(fresh.size(), 0u);
    fresh.clear();
    EXPECT_EQ(fresh.size(), 0u);
}
