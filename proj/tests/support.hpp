#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ramify/digit_poly.hpp"
#include "ramify/local_field.hpp"
#include "ramify/ram_polygon.hpp"
#include "ramify/residual_invariants.hpp"
#include "ramify/serialization.hpp"

namespace support {

using namespace ramify;

inline LocalField q2u2() { return LocalField(2, {1, 1, 1}, {}); }
inline LocalField q3r2() { return LocalField(3, {}, {{{0}, {2}}, {{0}}, {{1}}}); }

inline DigitPoly poly(const LocalField& K, const std::string& text) { return parse_integer_poly(K, text); }

/// Integer coefficients phi_0..phi_n of a polynomial over Q_p.
inline std::vector<long long> ints(const LocalField& K, const DigitPoly& phi) {
    std::vector<long long> out;
    for (const auto& row : phi.digits) {
        long long v = 0, pw = 1;
        for (auto d : row) {
            v += static_cast<long long>(d.code) * pw;
            pw *= K.p();
        }
        out.push_back(v);
    }
    out.push_back(1);
    return out;
}

inline RamPolygon polygon(const LocalField& K, long n, std::vector<std::pair<long, long>> pts) {
    return RamPolygon(K, n, pts);
}

using Seg = std::initializer_list<std::pair<long, int>>;

/// Residual tuple over a prime field from (position, value) lists.
inline ResidualTuple tuple(const LocalField& K, std::initializer_list<Seg> segs) {
    ResidualTuple A;
    for (const auto& s : segs) {
        std::map<long, ResidueElem> m;
        for (auto [pos, v] : s) m[pos] = K.residue_field().from_int(v);
        A.segments.push_back(m);
    }
    return A;
}

inline std::vector<std::pair<long, long>> ppower(const RamPolygon& R) {
    std::vector<std::pair<long, long>> out;
    for (const auto& pt : R.ppower_points()) out.emplace_back(pt.x, pt.J);
    return out;
}

}  // namespace support
