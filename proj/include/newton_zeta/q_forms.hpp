#ifndef NEWTON_ZETA_Q_FORMS_HPP
#define NEWTON_ZETA_Q_FORMS_HPP

// The forms Q^l_k = [prod_i x_i / (1 + x_i)]_l and their difference
// Q~^l_{k+1}(x_0, x_1..x_k) = Q^l_k(x_1..x_k) - Q^l_{k+1}(x_0..x_k),
// evaluated on polytopes by replacing each monomial x_1^{a_1}...x_k^{a_k}
// with the normalized mixed volume of the bodies repeated a_i times.

#include <cstddef>
#include <utility>
#include <vector>

#include <newton_zeta/mixed_volume.hpp>
#include <newton_zeta/polytope.hpp>
#include <newton_zeta/types.hpp>

namespace nzeta
{

struct Composition {
    std::vector<unsigned> parts;

    unsigned degree() const
    {
        unsigned s = 0;
        for (auto p : parts) {
            s += p;
        }
        return s;
    }
    friend bool operator==(const Composition &, const Composition &) = default;
};

// Monomials of Q^l_k with their signs. Since x/(1+x) = sum_{a>=1} (-1)^{a-1} x^a,
// these are the compositions of l into k positive parts, all with sign (-1)^{l-k}.
// Listed in lexicographic order.
inline std::vector<std::pair<Composition, int>> q_compositions(int l, int k)
{
    if (l < 0 || k < 0) {
        throw input_error("q_compositions: negative argument");
    }
    std::vector<std::pair<Composition, int>> out;
    if (k > l || (k == 0 && l > 0)) {
        return out;
    }
    const int sign = ((l - k) % 2 == 0) ? 1 : -1;
    std::vector<unsigned> parts;
    auto rec = [&](auto &&self, int remaining, int slots) -> void {
        if (slots == 0) {
            if (remaining == 0) {
                out.push_back({Composition{parts}, sign});
            }
            return;
        }
        for (int a = 1; a <= remaining - (slots - 1); ++a) {
            parts.push_back(static_cast<unsigned>(a));
            self(self, remaining - a, slots - 1);
            parts.pop_back();
        }
    };
    rec(rec, l, k);
    return out;
}

// l! * Q^l_k(faces), where the mixed volumes live in the rank-l lattice `frame`.
inline Integer q_exponent(int l, const std::vector<LatticePolytope> &faces, const LatticeFrame &frame,
                          VolumeCache &cache = VolumeCache::global())
{
    const int k = static_cast<int>(faces.size());
    if (l == 0) {
        return k == 0 ? 1 : 0;
    }
    if (static_cast<int>(frame.rank()) != l) {
        throw input_error("q_exponent: frame rank differs from degree");
    }
    if (k == 0 || k > l) {
        return 0;
    }
    for (const auto &f : faces) {
        if (f.empty()) {
            return 0;
        }
    }
    Integer total = 0;
    std::vector<LatticePolytope> bodies;
    for (const auto &[comp, sign] : q_compositions(l, k)) {
        bodies.clear();
        for (std::size_t i = 0; i < comp.parts.size(); ++i) {
            for (unsigned a = 0; a < comp.parts[i]; ++a) {
                bodies.push_back(faces[i]);
            }
        }
        Integer mv = normalized_mixed_volume(bodies, frame, cache);
        if (sign > 0) {
            total += mv;
        } else {
            total -= mv;
        }
    }
    return total;
}

// l! * (Q^l_k(faces) - Q^l_{k+1}(face0, faces)).
inline Integer q_tilde_exponent(int l, const LatticePolytope &face0, const std::vector<LatticePolytope> &faces,
                                const LatticeFrame &frame, VolumeCache &cache = VolumeCache::global())
{
    if (face0.empty()) {
        throw input_error("q_tilde_exponent: empty distinguished body");
    }
    std::vector<LatticePolytope> with0;
    with0.reserve(faces.size() + 1);
    with0.push_back(face0);
    with0.insert(with0.end(), faces.begin(), faces.end());
    return q_exponent(l, faces, frame, cache) - q_exponent(l, with0, frame, cache);
}

} // namespace nzeta

#endif
