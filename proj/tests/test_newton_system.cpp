#include <gtest/gtest.h>

#include <newton_zeta/newton_system.hpp>

#include "support.hpp"

using namespace nzeta;
using namespace nzeta::testing;

namespace
{

const std::vector<std::string> xy{"z1", "z2"};

std::map<Point, Rational> terms(std::initializer_list<std::pair<Point, long>> ts)
{
    std::map<Point, Rational> m;
    for (const auto &[p, c] : ts) {
        m[p] = c;
    }
    return m;
}

PolynomialInput product(const PolynomialInput &a, const PolynomialInput &b)
{
    PolynomialInput out;
    out.n = a.n;
    for (const auto &[ea, ca] : a.terms) {
        for (const auto &[eb, cb] : b.terms) {
            out.terms[ea + eb] += ca * cb;
        }
    }
    for (auto it = out.terms.begin(); it != out.terms.end();) {
        it = it->second == 0 ? out.terms.erase(it) : std::next(it);
    }
    return out;
}

} // namespace

TEST(Parser, NestedProduct)
{
    auto p = parse_polynomial("z1 + z2*(1+z1^2)", xy);
    EXPECT_EQ(p.terms, terms({{Point{1, 0}, 1}, {Point{0, 1}, 1}, {Point{2, 1}, 1}}));
}

TEST(Parser, ConstantsAndRationals)
{
    EXPECT_EQ(parse_polynomial("3", xy).terms, terms({{Point{0, 0}, 3}}));
    auto p = parse_polynomial("1/2*z1 - 3/4", xy);
    EXPECT_EQ(p.terms.at(Point{1, 0}), Rational(1, 2));
    EXPECT_EQ(p.terms.at(Point{0, 0}), Rational(-3, 4));
    EXPECT_EQ(parse_polynomial("-z1", xy).terms, terms({{Point{1, 0}, -1}}));
    EXPECT_EQ(parse_polynomial("2z1", xy).terms, terms({{Point{1, 0}, 2}}));
}

TEST(Parser, PowersAndCancellation)
{
    auto p = parse_polynomial("(z1 + z2)^2 - z1^2 - z2 ^ 2", xy);
    EXPECT_EQ(p.terms, terms({{Point{1, 1}, 2}}));
}

TEST(Parser, Errors)
{
    EXPECT_THROW(parse_polynomial("z1 - z1", xy), input_error);
    EXPECT_THROW(parse_polynomial("z3", xy), input_error);
    EXPECT_THROW(parse_polynomial("z1 +", xy), input_error);
    EXPECT_THROW(parse_polynomial("z1^-1", xy), input_error);
    EXPECT_THROW(parse_polynomial("(z1", xy), input_error);
    EXPECT_THROW(parse_polynomial("1/0", xy), input_error);
    try {
        parse_polynomial("z1 + * z2", xy);
        FAIL();
    } catch (const input_error &e) {
        EXPECT_NE(std::string(e.what()).find("position"), std::string::npos);
    }
}

TEST(Parser, RoundTrip)
{
    Rng rng(41);
    std::uniform_int_distribution<long> coef(-5, 5);
    for (int it = 0; it < 50; ++it) {
        PolynomialInput p = random_polynomial(rng, 3, 3, 5);
        for (auto &[e, c] : p.terms) {
            long v = coef(rng);
            c = Rational(v == 0 ? 7 : v, 1 + it % 3);
            c.canonicalize();
        }
        auto vars = default_variables(3);
        std::string text = to_string(p, vars);
        EXPECT_EQ(parse_polynomial(text, vars).terms, p.terms) << text;
    }
}

TEST(NewtonPolytope, Examples)
{
    EXPECT_EQ(newton_polytope(parse_polynomial("z1 + z2 + z1^2*z2", xy)),
              hull({Point{1, 0}, Point{0, 1}, Point{2, 1}}, 2));
    EXPECT_EQ(newton_polytope(parse_polynomial("5*z1^2*z2", xy)).dim(), 0);
    EXPECT_EQ(newton_polytope(parse_polynomial("1 + z1 + z2", xy)), hull({Point{0, 0}, Point{1, 0}, Point{0, 1}}, 2));
}

TEST(NewtonPolytope, ProductIsMinkowskiSum)
{
    Rng rng(42);
    int checked = 0;
    for (int it = 0; it < 40; ++it) {
        // Coefficients from random supports are all 1, so cancellation in
        // the product cannot remove a vertex: vertices of a sum arise once.
        PolynomialInput a = random_polynomial(rng, 2, 3, 3);
        PolynomialInput b = random_polynomial(rng, 2, 3, 3);
        PolynomialInput ab = product(a, b);
        EXPECT_EQ(newton_polytope(ab), minkowski_sum(newton_polytope(a), newton_polytope(b)));
        ++checked;
    }
    EXPECT_EQ(checked, 40);
}

TEST(RestrictSystem, TwoPointFiberStrata)
{
    auto spec = make_spec(2, {"z1 + z2*(1+z1^2)"});
    auto r2 = restrict_system(spec, {1});
    EXPECT_EQ(r2.k(), 1u);
    EXPECT_EQ(r2.polytopes[0].vertices(), (std::vector<Point>{Point{0, 1}}));
    auto all = restrict_system(spec, {0, 1});
    EXPECT_EQ(all.polytopes[0], newton_polytope(spec.constraints[0]));
}

TEST(RestrictSystem, DropsConstraintsMissingTheStratum)
{
    auto spec = make_spec(4, {"z1", "z2 + z3", "z3^2"});
    auto r = restrict_system(spec, {1});
    EXPECT_EQ(r.indices, (std::vector<std::size_t>{1}));
    auto r13 = restrict_system(spec, {2, 0});
    EXPECT_EQ(r13.index_set, (IndexSet{0, 2}));
    EXPECT_EQ(r13.indices, (std::vector<std::size_t>{0, 1, 2}));
    auto r4 = restrict_system(spec, {3});
    EXPECT_EQ(r4.k(), 0u);
}

TEST(RestrictSystem, IndicesIncreasing)
{
    for (const auto &spec : deformation_corpus(43, 10)) {
        auto sys = NewtonSystem::from_spec(spec);
        for (unsigned long mask = 1; mask < (1UL << spec.n); ++mask) {
            IndexSet I;
            for (std::size_t i = 0; i < spec.n; ++i) {
                if (mask >> i & 1) {
                    I.push_back(i);
                }
            }
            auto r = restrict_system(sys, I);
            EXPECT_TRUE(std::is_sorted(r.indices.begin(), r.indices.end()));
            EXPECT_EQ(std::adjacent_find(r.indices.begin(), r.indices.end()), r.indices.end());
            std::vector<std::size_t> expected;
            for (std::size_t j = 0; j < sys.constraints.size(); ++j) {
                if (!restrict_to_index_set(sys.constraints[j], I).empty()) {
                    expected.push_back(j);
                }
            }
            EXPECT_EQ(r.indices, expected);
        }
    }
}

TEST(SystemSpec, Validation)
{
    EXPECT_THROW(make_spec(1, {"z1"}).validate(), input_error);
    auto s = make_spec(2, {"z1"});
    s.variables.pop_back();
    EXPECT_THROW(s.validate(), input_error);
    EXPECT_NO_THROW(make_spec(3, {"z1", "z2"}).validate());
}

TEST(ConeSystem, Examples)
{
    auto g = cone_system(make_spec(1, {}, "z1"));
    ASSERT_EQ(g.n, 2u);
    ASSERT_EQ(g.constraints.size(), 1u);
    EXPECT_EQ(newton_polytope(g.constraints[0]), hull({Point{1, 0}, Point{0, 1}}, 2));

    auto g2 = cone_system(make_spec(2, {}, "z1*z2"));
    EXPECT_EQ(newton_polytope(g2.constraints.back()), hull({Point{1, 1, 0}, Point{0, 0, 1}}, 3));

    auto g3 = cone_system(make_spec(2, {"z1 + z2*(1+z1^2)"}, "z2"));
    EXPECT_EQ(g3.constraints.back().terms, terms({{Point{0, 1, 0}, 1}, {Point{0, 0, 1}, -1}}));
    EXPECT_EQ(g3.variables, (std::vector<std::string>{"z1", "z2", "z3"}));
}

TEST(ConeSystem, RequiresObjective)
{
    EXPECT_THROW(cone_system(make_spec(2, {"z1"})), input_error);
}

TEST(ConeSystem, PolytopeIsHeightOneCone)
{
    for (const auto &spec : polynomial_corpus()) {
        SystemSpec g = cone_system(spec);
        auto c = newton_polytope(g.constraints.back());
        IntVector comps(g.n, 0);
        comps[spec.n] = 1;
        Covector height(comps);
        auto base = face(c, height).face;
        EXPECT_EQ(base, hull(lift_polynomial(*spec.objective, 1).support(), g.n));
        EXPECT_EQ(support_min(c, -height), -1);
    }
}

TEST(FiberPolytopes, Projections)
{
    auto fp = fiber_polytopes(make_spec(2, {"z1 + z2 + z1^2*z2"}));
    ASSERT_EQ(fp.size(), 1u);
    EXPECT_EQ(fp[0], hull({Point{0}, Point{2}}, 1));
    EXPECT_EQ(fiber_polytopes(make_spec(2, {"z1*z2"}))[0], hull({Point{1}}, 1));
    EXPECT_EQ(fiber_polytopes(make_spec(2, {"7"}))[0], hull({Point{0}}, 1));
}

TEST(DeformationVariable, MovesVariableLast)
{
    auto s = with_deformation_variable(make_spec(3, {"z1 + z2^2*z3^3"}), "z1");
    EXPECT_EQ(s.variables, (std::vector<std::string>{"z2", "z3", "z1"}));
    EXPECT_EQ(s.constraints[0].terms, terms({{Point{0, 0, 1}, 1}, {Point{2, 3, 0}, 1}}));
    EXPECT_THROW(with_deformation_variable(s, "w"), input_error);
}
