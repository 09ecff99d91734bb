#include "ramify/template_builder.hpp"

#include <set>
#include <stdexcept>

namespace ramify {

const char* to_string(CellTag t) {
    switch (t) {
        case CellTag::zero_default: return "zero";
        case CellTag::free: return "free";
        case CellTag::cokernel: return "cokernel";
        case CellTag::fixed_by_A: return "fixed-by-A";
        case CellTag::fixed_delta0: return "fixed-delta0";
    }
    return "?";
}

namespace {

/// Digit value fixed by a point with b != 0 and its residual coefficient v.
ResidueElem fixed_digit(const LocalField& K, const PolyPoint& pt, ResidueElem v, ResidueElem delta0) {
    const ResidueField& F = K.residue_field();
    ResidueElem w = F.mul(v, F.pow(F.neg(delta0), pt.a + 1));
    return F.mul(w, F.inv(K.binom_unit_residue(pt.b, pt.x)));
}

}  // namespace

CoeffTemplate build_template(const LocalField& K, const RamPolygon& R, const ResidualTuple& A, ResidueElem delta0) {
    if (auto bad = validate_polygon(K, R)) throw std::domain_error("invalid polygon: (" + bad->condition + ") " + bad->detail);
    if (auto bad = validate_residuals(K, R, A, delta0))
        throw std::domain_error("invalid residual polynomials: (" + bad->condition + ") " + bad->detail);
    const ResidueField& F = K.residue_field();
    const long n = R.n();
    const CoeffBounds bounds = coeff_lower_bounds(R, K);
    const auto values = point_values(R, A);
    const auto& pts = R.points();

    // fixed digits first, so inconsistencies surface before any cell is written
    std::vector<std::tuple<long, long, ResidueElem>> fixed;
    for (int k = 0; k < static_cast<int>(pts.size()); ++k) {
        if (pts[k].b == 0) continue;
        long j = pts[k].a + 1 - K.vpi_binom(pts[k].b, pts[k].x);
        if (j != bounds.L[pts[k].b]) throw std::domain_error("forced coefficient valuation disagrees with L_R");
        ResidueElem d = fixed_digit(K, pts[k], values[k], delta0);
        for (const auto& [i2, j2, d2] : fixed)
            if (i2 == pts[k].b && (j2 != j || d2 != d)) throw std::domain_error("linked points fix different digits");
        fixed.emplace_back(pts[k].b, j, d);
    }

    CoeffTemplate T;
    T.n = n;
    // a tame polygon with J_0 = 0 still needs the digit phi_{0,1}
    T.c = std::max(1L, krasner_precision(K, n, R.J0()));
    T.cells.assign(n, std::vector<std::vector<ResidueElem>>(T.c, {F.zero()}));
    T.tags.assign(n, std::vector<CellTag>(T.c, CellTag::zero_default));

    // free digits: every n*phi(m) counts, not only m up to the steepest slope
    std::set<long> hit;
    for (long m = 1;; ++m) {
        long v = nphi(R, m);
        if (v > n * (T.c + 1)) break;
        hit.insert(v);
    }
    const auto all = F.elements();
    for (long i = 0; i < n; ++i)
        for (long j = std::max(1L, bounds.L[i]); j <= T.c; ++j)
            if (!hit.count(n * (j - 1) + i)) {
                T.cells[i][j - 1] = all;
                T.tags[i][j - 1] = CellTag::free;
            }

    // cokernel cells
    for (long m = 1; m <= steepest_slope(R); ++m) {
        const long v = nphi(R, m);
        const long i = v % n, j = v / n + 1;
        if (j > T.c) continue;
        auto an = additive_map_analysis(component_residual(K, R, A, m).map, F);
        if (j < std::max(1L, bounds.L[i])) {
            if (!an.surjective)
                T.notes.push_back("S_" + std::to_string(m) + " addresses (" + std::to_string(i) + "," +
                                  std::to_string(j) + ") below the coefficient bound");
            continue;
        }
        T.cells[i][j - 1] = an.cokernel_reps;
        T.tags[i][j - 1] = CellTag::cokernel;
    }

    // digits fixed by the residual polynomials
    for (const auto& [i, j, d] : fixed) {
        if (j < 1 || j > T.c) throw std::domain_error("fixed digit outside the template");
        T.cells[i][j - 1] = {d};
        T.tags[i][j - 1] = CellTag::fixed_by_A;
    }
    // constant term class
    T.cells[0][0] = {delta0};
    T.tags[0][0] = CellTag::fixed_delta0;
    return T;
}

BigInt template_count(const CoeffTemplate& T) {
    BigInt c = 1;
    for (const auto& row : T.cells)
        for (const auto& cell : row) c *= static_cast<unsigned>(cell.size());
    return c;
}

TemplateStream::TemplateStream(const CoeffTemplate& T) : T_(T) {
    for (long j = 1; j <= T.c; ++j)
        for (long i = 0; i < T.n; ++i) {
            if (T.cell(i, j).empty()) done_ = true;
            if (T.cell(i, j).size() > 1) order_.push_back({i, j});
        }
    idx_.assign(order_.size(), 0);
}

bool TemplateStream::next(DigitPoly& out) {
    if (done_) return false;
    if (started_) {
        std::size_t k = idx_.size();
        while (k > 0) {
            --k;
            if (++idx_[k] < T_.cell(order_[k].first, order_[k].second).size()) break;
            idx_[k] = 0;
            if (k == 0) {
                done_ = true;
                return false;
            }
        }
        if (idx_.empty()) {
            done_ = true;
            return false;
        }
    }
    started_ = true;
    out.n = T_.n;
    out.digits.assign(T_.n, std::vector<ResidueElem>(T_.c + 1));
    for (long i = 0; i < T_.n; ++i)
        for (long j = 1; j <= T_.c; ++j) out.digits[i][j] = T_.cell(i, j).front();
    for (std::size_t k = 0; k < order_.size(); ++k) {
        auto [i, j] = order_[k];
        out.digits[i][j] = T_.cell(i, j)[idx_[k]];
    }
    return true;
}

std::vector<DigitPoly> template_polynomials(const CoeffTemplate& T) {
    std::vector<DigitPoly> out;
    TemplateStream s(T);
    DigitPoly phi;
    while (s.next(phi)) out.push_back(phi);
    return out;
}

Guarantee uniqueness_guarantee(const LocalField& K, const RamPolygon& R, const ResidualTuple& A) {
    Guarantee g;
    for (long m = 1; m <= steepest_slope(R); ++m)
        if (!additive_map_analysis(component_residual(K, R, A, m).map, K.residue_field()).surjective)
            g.non_surjective.push_back(m);
    if (g.non_surjective.empty()) {
        g.guaranteed = true;
        g.via = "b";
        g.justification = "every S_m is surjective";
        return g;
    }
    if (g.non_surjective.size() == 1) {
        const long m = g.non_surjective.front();
        const long n = R.n();
        const long c = std::max(1L, krasner_precision(K, n, R.J0()));
        std::set<long> hit;
        for (long mm = 1;; ++mm) {
            long v = nphi(R, mm);
            if (v > n * (c + 1)) break;
            hit.insert(v);
        }
        for (long k = nphi(R, m) + 1; k <= n * (c + 1); ++k)
            if (!hit.count(k)) {
                g.justification = "only S_" + std::to_string(m) + " is not surjective but " + std::to_string(k) +
                                  " is not a value of n*phi_R";
                return g;
            }
        g.guaranteed = true;
        g.via = "c";
        g.justification = "only S_" + std::to_string(m) + " is not surjective and every larger index is a value of n*phi_R";
        return g;
    }
    g.justification = std::to_string(g.non_surjective.size()) + " components are not surjective";
    return g;
}

ResidualTuple residuals_of_polynomial(const LocalField& K, const DigitPoly& phi, const RamPolygon& R) {
    if (!phi.is_eisenstein()) throw std::domain_error("polynomial is not Eisenstein");
    if (!(polygon_of_valuations(K, phi.valuations()) == R))
        throw std::domain_error("polynomial does not have the given ramification polygon");
    const ResidueField& F = K.residue_field();
    const ResidueElem delta0 = phi.digit(0, 1);
    const auto& pts = R.points();
    std::vector<ResidueElem> v(pts.size());
    for (int k = 0; k < static_cast<int>(pts.size()); ++k) {
        const PolyPoint& pt = pts[k];
        if (pt.b == 0) {
            v[k] = forced_point_value(K, R, k, delta0);
            continue;
        }
        long j = pt.a + 1 - K.vpi_binom(pt.b, pt.x);
        ResidueElem d = phi.digit(pt.b, j);
        v[k] = F.mul(F.mul(d, K.binom_unit_residue(pt.b, pt.x)), F.pow(F.neg(delta0), -(pt.a + 1)));
    }
    return tuple_from_point_values(R, v);
}

}  // namespace ramify
