#include "ramify/residual_invariants.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ramify {

std::vector<std::uint32_t> ResidualTuple::key() const {
    std::vector<std::uint32_t> k;
    for (const auto& seg : segments)
        for (const auto& [pos, c] : seg) k.push_back(c.code);
    return k;
}

std::vector<ResidueElem> point_values(const RamPolygon& R, const ResidualTuple& A) {
    const int np = static_cast<int>(R.points().size());
    if (A.segments.size() != R.segments().size()) throw std::domain_error("tuple shape does not match polygon");
    std::vector<ResidueElem> v(np);
    for (int k = 0; k < np; ++k) {
        int s = R.segment_of(k);
        auto it = A.segments[s].find(R.position(s, k));
        if (it == A.segments[s].end()) throw std::domain_error("tuple lacks a coefficient at a polygon point");
        v[k] = it->second;
    }
    return v;
}

ResidualTuple tuple_from_point_values(const RamPolygon& R, const std::vector<ResidueElem>& values) {
    ResidualTuple A;
    for (int s = 0; s < static_cast<int>(R.segments().size()); ++s) {
        std::map<long, ResidueElem> seg;
        for (int k = R.segments()[s].left; k <= R.segments()[s].right; ++k) seg[R.position(s, k)] = values.at(k);
        A.segments.push_back(seg);
    }
    return A;
}

ResidueElem forced_point_value(const LocalField& K, const RamPolygon& R, int k, ResidueElem delta0) {
    const ResidueField& F = K.residue_field();
    const PolyPoint& pt = R.points().at(k);
    if (pt.b != 0) throw std::domain_error("point coefficient is not forced");
    return F.mul(K.binom_unit_residue(R.n(), pt.x), F.pow(F.neg(delta0), -pt.a));
}

namespace {

/// Ratio v_t / v_q required between two points with the same b.
ResidueElem linked_ratio(const LocalField& K, const PolyPoint& t, const PolyPoint& q, ResidueElem delta0) {
    const ResidueField& F = K.residue_field();
    ResidueElem r = F.mul(K.binom_unit_residue(t.b, t.x), F.inv(K.binom_unit_residue(q.b, q.x)));
    return F.mul(r, F.pow(F.neg(delta0), q.a - t.a));
}

}  // namespace

std::optional<TupleViolation> validate_residuals(const LocalField& K, const RamPolygon& R, const ResidualTuple& A,
                                                 ResidueElem delta0) {
    if (delta0.is_zero()) throw std::domain_error("delta_0 must be nonzero");
    if (A.segments.size() != R.segments().size()) throw std::domain_error("tuple shape does not match polygon");
    const ResidueField& F = K.residue_field();
    auto fail = [](std::string c, std::string d) { return TupleViolation{std::move(c), std::move(d)}; };

    for (int s = 0; s < static_cast<int>(R.segments().size()); ++s) {
        const Segment& S = R.segments()[s];
        std::set<long> positions;
        for (int k = S.left; k <= S.right; ++k) positions.insert(R.position(s, k));
        for (const auto& [pos, c] : A.segments[s]) {
            if (!positions.count(pos))
                return fail("b", "segment " + std::to_string(s + 1) + " has a coefficient at position " +
                                     std::to_string(pos) + " without a polygon point");
            if (c.is_zero())
                return fail("b", "segment " + std::to_string(s + 1) + " has a zero coefficient at a polygon point");
        }
        for (long pos : positions)
            if (!A.segments[s].count(pos))
                return fail("b", "segment " + std::to_string(s + 1) + " lacks the coefficient at position " +
                                     std::to_string(pos));
    }
    for (int s = 0; s + 1 < static_cast<int>(A.segments.size()); ++s)
        if (A.segments[s].rbegin()->second != A.segments[s + 1].begin()->second)
            return fail("a", "leading coefficient of segment " + std::to_string(s + 1) +
                                 " differs from the constant coefficient of segment " + std::to_string(s + 2));

    const auto v = point_values(R, A);
    const auto& pts = R.points();
    for (int k = 0; k < static_cast<int>(pts.size()); ++k) {
        if (pts[k].b != 0) continue;
        if (v[k] != forced_point_value(K, R, k, delta0))
            return fail(pts[k].J == 0 ? "horizontal" : "forced",
                        "coefficient at (" + std::to_string(pts[k].x) + "," + std::to_string(pts[k].J) +
                            ") differs from its forced value");
    }
    for (int t = 0; t < static_cast<int>(pts.size()); ++t)
        for (int q = t + 1; q < static_cast<int>(pts.size()); ++q) {
            if (pts[t].b == 0 || pts[t].b != pts[q].b) continue;
            if (v[t] != F.mul(v[q], linked_ratio(K, pts[t], pts[q], delta0)))
                return fail("c", "coefficients at abscissas " + std::to_string(pts[t].x) + " and " +
                                     std::to_string(pts[q].x) + " are not linked");
        }
    return std::nullopt;
}

std::vector<ResidualTuple> enumerate_residual_tuples(const LocalField& K, const RamPolygon& R, ResidueElem delta0) {
    if (delta0.is_zero()) throw std::domain_error("delta_0 must be nonzero");
    const ResidueField& F = K.residue_field();
    const auto& pts = R.points();
    const int np = static_cast<int>(pts.size());
    std::vector<ResidueElem> base(np);
    std::vector<int> leader(np, -1);  // point whose free value determines this one
    std::vector<int> free_points;
    for (int k = 0; k < np; ++k) {
        if (pts[k].b == 0) {
            base[k] = forced_point_value(K, R, k, delta0);
            continue;
        }
        for (int q = 0; q < k; ++q)
            if (pts[q].b == pts[k].b) {
                leader[k] = q;
                break;
            }
        if (leader[k] < 0) free_points.push_back(k);
    }
    const auto units = F.units();
    std::vector<ResidualTuple> out;
    std::vector<std::size_t> idx(free_points.size(), 0);
    while (true) {
        std::vector<ResidueElem> v = base;
        for (std::size_t g = 0; g < free_points.size(); ++g) v[free_points[g]] = units[idx[g]];
        for (int k = 0; k < np; ++k)
            if (leader[k] >= 0) v[k] = F.mul(v[leader[k]], linked_ratio(K, pts[k], pts[leader[k]], delta0));
        out.push_back(tuple_from_point_values(R, v));
        std::size_t g = 0;
        while (g < idx.size() && ++idx[g] == units.size()) idx[g++] = 0;
        if (g == idx.size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

ResidualTuple act(const LocalField& K, const RamPolygon& R, const ResidualTuple& A, ResidueElem delta) {
    const ResidueField& F = K.residue_field();
    auto v = point_values(R, A);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = F.mul(v[k], F.pow(delta, -R.points()[k].J));
    return tuple_from_point_values(R, v);
}

InvariantOrbit orbit(const LocalField& K, const RamPolygon& R, const ResidualTuple& A) {
    std::set<ResidualTuple> seen;
    InvariantOrbit O;
    for (ResidueElem d : K.residue_field().units()) {
        ResidualTuple B = act(K, R, A, d);
        if (B == A) ++O.stabilizer_size;
        seen.insert(B);
    }
    O.members.assign(seen.begin(), seen.end());
    O.canonical = O.members.front();
    O.orbit_size = O.members.size();
    return O;
}

std::vector<InvariantOrbit> enumerate_orbits(const LocalField& K, const RamPolygon& R) {
    std::map<ResidualTuple, InvariantOrbit> found;
    for (ResidueElem d0 : nth_power_class_reps(K.residue_field(), R.n()))
        for (const auto& A : enumerate_residual_tuples(K, R, d0)) {
            InvariantOrbit O = orbit(K, R, A);
            found.emplace(O.canonical, O);
        }
    std::vector<InvariantOrbit> out;
    for (auto& [k, O] : found) out.push_back(std::move(O));
    return out;
}

std::vector<std::vector<ResidualTuple>> partition_star(const LocalField& K, const RamPolygon& R,
                                                       const InvariantOrbit& O, long n) {
    const auto roots = unity_roots(K.residue_field(), n);
    std::set<ResidualTuple> done;
    std::vector<std::vector<ResidualTuple>> classes;
    for (const auto& A : O.members) {
        if (done.count(A)) continue;
        std::set<ResidualTuple> cls;
        for (ResidueElem d : roots) cls.insert(act(K, R, A, d));
        done.insert(cls.begin(), cls.end());
        classes.emplace_back(cls.begin(), cls.end());
    }
    return classes;
}

ComponentResidual component_residual(const LocalField& K, const RamPolygon& R, const ResidualTuple& A, long m) {
    if (m < 1) throw std::domain_error("m must be positive");
    (void)K;
    const auto v = point_values(R, A);
    const auto pp = R.ppower_points();
    ComponentResidual out;
    out.m = m;
    out.value_nphi = nphi(R, m);
    for (std::size_t k = 0; k < pp.size(); ++k)
        if (pp[k].J + m * pp[k].x == out.value_nphi) out.map.terms[pp[k].s] = v[k];
    return out;
}

long steepest_slope(const RamPolygon& R) {
    const auto pp = R.ppower_points();
    if (pp.size() < 2) return 0;
    return (pp[0].J - pp[1].J) / (pp[1].x - 1);
}

std::uint64_t aut_upper_bound(const LocalField& K, const RamPolygon& R, const ResidualTuple& A) {
    std::uint64_t bound = unity_roots(K.residue_field(), R.n()).size();
    for (long m = 1; m <= steepest_slope(R); ++m)
        bound *= additive_map_analysis(component_residual(K, R, A, m).map, K.residue_field()).kernel_size;
    return bound;
}

std::string tuple_to_string(const LocalField& K, const ResidualTuple& A) {
    const ResidueField& F = K.residue_field();
    std::string out = "(";
    for (std::size_t s = 0; s < A.segments.size(); ++s) {
        if (s) out += ", ";
        bool first = true;
        for (const auto& [pos, c] : A.segments[s]) {
            if (!first) out += "+";
            first = false;
            std::string cs = F.to_string(c);
            if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
            if (pos == 0) {
                out += cs;
                continue;
            }
            if (cs != "1") out += cs;
            out += "x";
            if (pos > 1) out += "^" + std::to_string(pos);
        }
    }
    return out + ")";
}

}  // namespace ramify
