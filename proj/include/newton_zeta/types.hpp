#ifndef NEWTON_ZETA_TYPES_HPP
#define NEWTON_ZETA_TYPES_HPP

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace nzeta
{

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;

// Raised for malformed user input (bad polynomial text, dimension mismatch, ...).
class input_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when an internal consistency check fails.
class assertion_error : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

inline void check(bool cond, const std::string &what)
{
    if (!cond) {
        throw assertion_error(what);
    }
}

// Exponent vector / lattice point in Z^n.
class Point
{
public:
    Point() = default;
    explicit Point(std::size_t dim) : m_coords(dim) {}
    explicit Point(IntVector coords) : m_coords(std::move(coords)) {}
    Point(std::initializer_list<long> coords)
    {
        m_coords.reserve(coords.size());
        for (long c : coords) {
            m_coords.emplace_back(c);
        }
    }

    std::size_t dim() const { return m_coords.size(); }
    const IntVector &coords() const { return m_coords; }
    IntVector &coords() { return m_coords; }
    const Integer &operator[](std::size_t i) const { return m_coords[i]; }
    Integer &operator[](std::size_t i) { return m_coords[i]; }

    bool is_zero() const
    {
        for (const auto &c : m_coords) {
            if (c != 0) {
                return false;
            }
        }
        return true;
    }

    Point &operator+=(const Point &o)
    {
        require_same_dim(o);
        for (std::size_t i = 0; i < m_coords.size(); ++i) {
            m_coords[i] += o.m_coords[i];
        }
        return *this;
    }
    Point &operator-=(const Point &o)
    {
        require_same_dim(o);
        for (std::size_t i = 0; i < m_coords.size(); ++i) {
            m_coords[i] -= o.m_coords[i];
        }
        return *this;
    }
    friend Point operator+(Point a, const Point &b) { return a += b; }
    friend Point operator-(Point a, const Point &b) { return a -= b; }
    friend Point operator*(const Integer &s, Point p)
    {
        for (auto &c : p.m_coords) {
            c *= s;
        }
        return p;
    }

    friend bool operator==(const Point &a, const Point &b) { return a.m_coords == b.m_coords; }
    friend bool operator!=(const Point &a, const Point &b) { return !(a == b); }
    friend bool operator<(const Point &a, const Point &b) { return a.m_coords < b.m_coords; }

private:
    void require_same_dim(const Point &o) const
    {
        if (o.dim() != dim()) {
            throw input_error("point dimension mismatch");
        }
    }

    IntVector m_coords;
};

// Integer linear functional on Z^n. Kept apart from Point so that the only
// way to combine the two is evaluation alpha(k).
class Covector
{
public:
    Covector() = default;
    explicit Covector(std::size_t dim) : m_comps(dim) {}
    explicit Covector(IntVector comps) : m_comps(std::move(comps)) {}
    Covector(std::initializer_list<long> comps)
    {
        m_comps.reserve(comps.size());
        for (long c : comps) {
            m_comps.emplace_back(c);
        }
    }

    std::size_t dim() const { return m_comps.size(); }
    const IntVector &comps() const { return m_comps; }
    const Integer &operator[](std::size_t i) const { return m_comps[i]; }

    Integer operator()(const Point &p) const
    {
        if (p.dim() != dim()) {
            throw input_error("covector/point dimension mismatch");
        }
        Integer s = 0;
        for (std::size_t i = 0; i < m_comps.size(); ++i) {
            s += m_comps[i] * p[i];
        }
        return s;
    }

    bool is_zero() const
    {
        for (const auto &c : m_comps) {
            if (c != 0) {
                return false;
            }
        }
        return true;
    }

    Covector operator-() const
    {
        Covector r = *this;
        for (auto &c : r.m_comps) {
            c = -c;
        }
        return r;
    }

    friend bool operator==(const Covector &a, const Covector &b) { return a.m_comps == b.m_comps; }
    friend bool operator!=(const Covector &a, const Covector &b) { return !(a == b); }
    friend bool operator<(const Covector &a, const Covector &b) { return a.m_comps < b.m_comps; }

private:
    IntVector m_comps;
};

inline std::ostream &operator<<(std::ostream &os, const IntVector &v)
{
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        os << (i ? "," : "") << v[i];
    }
    return os << ')';
}
inline std::ostream &operator<<(std::ostream &os, const Point &p) { return os << p.coords(); }
inline std::ostream &operator<<(std::ostream &os, const Covector &a) { return os << a.comps(); }

} // namespace nzeta

#endif
