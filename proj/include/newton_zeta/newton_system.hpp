#ifndef NEWTON_ZETA_NEWTON_SYSTEM_HPP
#define NEWTON_ZETA_NEWTON_SYSTEM_HPP

// Input assembly: polynomial parsing, Newton polytopes, restriction of a
// system to coordinate subspaces R^I, and the cone system used to turn a
// polynomial on a complete intersection into a deformation.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <newton_zeta/polytope.hpp>
#include <newton_zeta/types.hpp>

namespace nzeta
{

// A polynomial as a map from exponent vectors to nonzero rational coefficients.
struct PolynomialInput {
    std::map<Point, Rational> terms;
    std::size_t n = 0;
    std::string source_text;

    std::vector<Point> support() const
    {
        std::vector<Point> s;
        s.reserve(terms.size());
        for (const auto &[e, c] : terms) {
            s.push_back(e);
        }
        return s;
    }
};

namespace detail
{

using TermMap = std::map<Point, Rational>;

inline void add_term(TermMap &m, const Point &e, const Rational &c)
{
    if (c == 0) {
        return;
    }
    auto [it, inserted] = m.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            m.erase(it);
        }
    }
}

inline TermMap poly_add(const TermMap &a, const TermMap &b, int sign)
{
    TermMap r = a;
    for (const auto &[e, c] : b) {
        add_term(r, e, sign > 0 ? c : Rational(-c));
    }
    return r;
}

inline TermMap poly_mul(const TermMap &a, const TermMap &b)
{
    TermMap r;
    for (const auto &[ea, ca] : a) {
        for (const auto &[eb, cb] : b) {
            add_term(r, ea + eb, ca * cb);
        }
    }
    return r;
}

inline TermMap poly_pow(const TermMap &base, unsigned long e, std::size_t n)
{
    TermMap result{{Point(n), Rational(1)}};
    TermMap b = base;
    while (e > 0) {
        if (e & 1U) {
            result = poly_mul(result, b);
        }
        e >>= 1U;
        if (e > 0) {
            b = poly_mul(b, b);
        }
    }
    return result;
}

class PolynomialParser
{
public:
    PolynomialParser(std::string_view text, const std::vector<std::string> &vars) : m_text(text), m_vars(vars) {}

    TermMap parse()
    {
        TermMap r = expr();
        skip_ws();
        if (m_pos != m_text.size()) {
            fail("unexpected character '" + std::string(1, m_text[m_pos]) + "'");
        }
        return r;
    }

private:
    [[noreturn]] void fail(const std::string &msg) const
    {
        throw input_error("syntax error at position " + std::to_string(m_pos + 1) + ": " + msg);
    }

    void skip_ws()
    {
        while (m_pos < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[m_pos]))) {
            ++m_pos;
        }
    }
    char peek()
    {
        skip_ws();
        return m_pos < m_text.size() ? m_text[m_pos] : '\0';
    }
    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

    Integer uint_literal()
    {
        skip_ws();
        std::size_t start = m_pos;
        while (m_pos < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) {
            ++m_pos;
        }
        if (start == m_pos) {
            fail("expected an integer");
        }
        return Integer(std::string(m_text.substr(start, m_pos - start)));
    }

    TermMap constant(const Rational &c) const
    {
        TermMap m;
        add_term(m, Point(m_vars.size()), c);
        return m;
    }

    TermMap expr()
    {
        TermMap acc;
        int sign = 1;
        char c = peek();
        if (c == '+' || c == '-') {
            sign = (c == '-') ? -1 : 1;
            ++m_pos;
        }
        acc = poly_add(acc, term(), sign);
        while (true) {
            c = peek();
            if (c != '+' && c != '-') {
                break;
            }
            ++m_pos;
            acc = poly_add(acc, term(), c == '-' ? -1 : 1);
        }
        return acc;
    }

    TermMap term()
    {
        bool numeric = false;
        TermMap acc = factor(numeric);
        while (true) {
            char c = peek();
            if (c == '*') {
                ++m_pos;
                bool dummy = false;
                acc = poly_mul(acc, factor(dummy));
                numeric = false;
            } else if (numeric && ident_start(c)) {
                // coefficient written directly before a variable, e.g. 3z1
                bool dummy = false;
                acc = poly_mul(acc, factor(dummy));
                numeric = false;
            } else {
                break;
            }
        }
        return acc;
    }

    TermMap factor(bool &numeric)
    {
        TermMap b = base(numeric);
        if (peek() == '^') {
            ++m_pos;
            if (peek() == '-') {
                fail("negative exponent");
            }
            Integer e = uint_literal();
            if (!e.fits_ulong_p()) {
                fail("exponent too large");
            }
            b = poly_pow(b, e.get_ui(), m_vars.size());
            numeric = false;
        }
        return b;
    }

    TermMap base(bool &numeric)
    {
        char c = peek();
        numeric = false;
        if (c == '(') {
            ++m_pos;
            TermMap r = expr();
            if (peek() != ')') {
                fail("expected ')'");
            }
            ++m_pos;
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer num = uint_literal();
            Integer den = 1;
            std::size_t save = m_pos;
            if (peek() == '/') {
                ++m_pos;
                if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                    m_pos = save;
                    fail("expected denominator");
                }
                den = uint_literal();
                if (den == 0) {
                    fail("zero denominator");
                }
            }
            Rational q(num, den);
            q.canonicalize();
            numeric = true;
            return constant(q);
        }
        if (ident_start(c)) {
            std::size_t start = m_pos;
            while (m_pos < m_text.size() &&
                   (std::isalnum(static_cast<unsigned char>(m_text[m_pos])) || m_text[m_pos] == '_')) {
                ++m_pos;
            }
            std::string name(m_text.substr(start, m_pos - start));
            auto it = std::find(m_vars.begin(), m_vars.end(), name);
            if (it == m_vars.end()) {
                m_pos = start;
                fail("unknown variable '" + name + "'");
            }
            Point e(m_vars.size());
            e[static_cast<std::size_t>(it - m_vars.begin())] = 1;
            TermMap m;
            add_term(m, e, Rational(1));
            return m;
        }
        if (c == '\0') {
            fail("unexpected end of input");
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view m_text;
    const std::vector<std::string> &m_vars;
    std::size_t m_pos = 0;
};

} // namespace detail

inline PolynomialInput parse_polynomial(const std::string &text, const std::vector<std::string> &variables)
{
    PolynomialInput p;
    p.n = variables.size();
    p.source_text = text;
    p.terms = detail::PolynomialParser(text, variables).parse();
    if (p.terms.empty()) {
        throw input_error("zero polynomial");
    }
    return p;
}

// Polynomial with coefficient 1 on each listed exponent vector.
inline PolynomialInput polynomial_from_support(const std::vector<Point> &support, std::size_t n)
{
    PolynomialInput p;
    p.n = n;
    for (const auto &e : support) {
        if (e.dim() != n) {
            throw input_error("exponent vector has wrong length");
        }
        for (const auto &c : e.coords()) {
            if (c < 0) {
                throw input_error("negative exponent");
            }
        }
        p.terms[e] = 1;
    }
    if (p.terms.empty()) {
        throw input_error("zero polynomial");
    }
    return p;
}

inline std::string to_string(const PolynomialInput &p, const std::vector<std::string> &variables)
{
    std::ostringstream os;
    bool first = true;
    for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
        const auto &[e, c] = *it;
        Rational a = abs(c);
        if (first) {
            os << (c < 0 ? "-" : "");
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool wrote = false;
        if (a != 1 || e.is_zero()) {
            os << a.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < e.dim(); ++i) {
            if (e[i] == 0) {
                continue;
            }
            os << (wrote ? "*" : "") << variables[i];
            if (e[i] != 1) {
                os << '^' << e[i].get_str();
            }
            wrote = true;
        }
    }
    return os.str();
}

inline LatticePolytope newton_polytope(const PolynomialInput &p) { return hull(p.support(), p.n); }

// F_1..F_k (constraints) and an optional objective F_0 on C^n.
struct SystemSpec {
    std::size_t n = 0;
    std::vector<std::string> variables;
    std::vector<PolynomialInput> constraints;
    std::optional<PolynomialInput> objective;
    bool nondegeneracy_acknowledged = false;

    bool deformation_mode() const { return !objective.has_value(); }

    void validate() const
    {
        if (n == 0) {
            throw input_error("dimension must be positive");
        }
        if (variables.size() != n) {
            throw input_error("number of variables differs from n");
        }
        if (constraints.size() + 1 > n) {
            throw input_error("too many constraints: need k <= n-1");
        }
        auto check_poly = [&](const PolynomialInput &p) {
            if (p.n != n || p.terms.empty()) {
                throw input_error("polynomial does not match the system dimension");
            }
        };
        for (const auto &c : constraints) {
            check_poly(c);
        }
        if (objective) {
            check_poly(*objective);
        }
    }
};

inline std::vector<std::string> default_variables(std::size_t n)
{
    std::vector<std::string> v;
    for (std::size_t i = 1; i <= n; ++i) {
        v.push_back("z" + std::to_string(i));
    }
    return v;
}

// Newton polytopes of a system, computed once.
struct NewtonSystem {
    std::size_t n = 0;
    std::vector<LatticePolytope> constraints;
    std::optional<LatticePolytope> objective;

    static NewtonSystem from_spec(const SystemSpec &spec)
    {
        spec.validate();
        NewtonSystem s;
        s.n = spec.n;
        for (const auto &c : spec.constraints) {
            s.constraints.push_back(newton_polytope(c));
        }
        if (spec.objective) {
            s.objective = newton_polytope(*spec.objective);
        }
        return s;
    }
};

// The system seen on R^I: constraints whose polytope meets R^I, in their
// original order, each intersected with R^I.
struct RestrictedSystem {
    std::size_t n = 0;
    IndexSet index_set;
    std::vector<std::size_t> indices;
    std::vector<LatticePolytope> polytopes;
    std::optional<LatticePolytope> objective;

    std::size_t k() const { return polytopes.size(); }
};

inline RestrictedSystem restrict_system(const NewtonSystem &sys, IndexSet index_set)
{
    std::sort(index_set.begin(), index_set.end());
    index_set.erase(std::unique(index_set.begin(), index_set.end()), index_set.end());
    for (auto i : index_set) {
        if (i >= sys.n) {
            throw input_error("index set out of range");
        }
    }
    RestrictedSystem rs;
    rs.n = sys.n;
    rs.index_set = index_set;
    for (std::size_t j = 0; j < sys.constraints.size(); ++j) {
        LatticePolytope r = restrict_to_index_set(sys.constraints[j], index_set);
        if (!r.empty()) {
            rs.indices.push_back(j);
            rs.polytopes.push_back(std::move(r));
        }
    }
    if (sys.objective) {
        rs.objective = restrict_to_index_set(*sys.objective, index_set);
    }
    return rs;
}

inline RestrictedSystem restrict_system(const SystemSpec &spec, IndexSet index_set)
{
    return restrict_system(NewtonSystem::from_spec(spec), std::move(index_set));
}

inline PolynomialInput lift_polynomial(const PolynomialInput &p, std::size_t extra)
{
    PolynomialInput q;
    q.n = p.n + extra;
    q.source_text = p.source_text;
    for (const auto &[e, c] : p.terms) {
        IntVector v = e.coords();
        v.resize(q.n, 0);
        q.terms.emplace(Point(std::move(v)), c);
    }
    return q;
}

// G_i = F_i (i = 1..k) and G_{k+1} = F_0 - z_{n+1} in n+1 variables.
// The Newton polytope of G_{k+1} is the height-1 cone over that of F_0.
inline SystemSpec cone_system(const SystemSpec &spec)
{
    if (!spec.objective) {
        throw input_error("cone_system: objective required");
    }
    spec.validate();
    SystemSpec g;
    g.n = spec.n + 1;
    g.variables = spec.variables;
    std::string extra = "z" + std::to_string(spec.n + 1);
    while (std::find(g.variables.begin(), g.variables.end(), extra) != g.variables.end()) {
        extra += "_";
    }
    g.variables.push_back(extra);
    g.nondegeneracy_acknowledged = spec.nondegeneracy_acknowledged;
    for (const auto &c : spec.constraints) {
        g.constraints.push_back(lift_polynomial(c, 1));
    }
    PolynomialInput last = lift_polynomial(*spec.objective, 1);
    Point apex(g.n);
    apex[spec.n] = 1;
    detail::add_term(last.terms, apex, Rational(-1));
    last.source_text.clear();
    g.constraints.push_back(std::move(last));

    std::vector<Point> cone_pts = lift_polynomial(*spec.objective, 1).support();
    cone_pts.push_back(apex);
    check(newton_polytope(g.constraints.back()) == hull(cone_pts, g.n), "cone_system: Newton polytope is not the cone");
    return g;
}

// Newton polytopes of the generic fiber F_i(z_1..z_{n-1}, sigma): the
// projections forgetting the last coordinate.
inline std::vector<LatticePolytope> fiber_polytopes(const NewtonSystem &sys)
{
    if (sys.n < 1) {
        throw input_error("fiber_polytopes: dimension must be positive");
    }
    IndexSet keep;
    for (std::size_t i = 0; i + 1 < sys.n; ++i) {
        keep.push_back(i);
    }
    std::vector<LatticePolytope> out;
    for (const auto &p : sys.constraints) {
        out.push_back(project(p, keep));
    }
    return out;
}

inline std::vector<LatticePolytope> fiber_polytopes(const SystemSpec &spec)
{
    return fiber_polytopes(NewtonSystem::from_spec(spec));
}

// Moves variable `name` to the last position (the deformation parameter).
inline SystemSpec with_deformation_variable(const SystemSpec &spec, const std::string &name)
{
    auto it = std::find(spec.variables.begin(), spec.variables.end(), name);
    if (it == spec.variables.end()) {
        throw input_error("unknown deformation variable '" + name + "'");
    }
    const std::size_t pos = static_cast<std::size_t>(it - spec.variables.begin());
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < spec.n; ++i) {
        if (i != pos) {
            order.push_back(i);
        }
    }
    order.push_back(pos);
    auto permute = [&](const PolynomialInput &p) {
        PolynomialInput q;
        q.n = p.n;
        q.source_text = p.source_text;
        for (const auto &[e, c] : p.terms) {
            Point f(p.n);
            for (std::size_t i = 0; i < p.n; ++i) {
                f[i] = e[order[i]];
            }
            q.terms.emplace(std::move(f), c);
        }
        return q;
    };
    SystemSpec out = spec;
    for (std::size_t i = 0; i < spec.n; ++i) {
        out.variables[i] = spec.variables[order[i]];
    }
    for (auto &c : out.constraints) {
        c = permute(c);
    }
    if (out.objective) {
        out.objective = permute(*out.objective);
    }
    return out;
}

} // namespace nzeta

#endif
