#include "suites.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "ramify/extension_enumerator.hpp"
#include "ramify/root_counter.hpp"
#include "support.hpp"

namespace suites {

using namespace ramify;
using support::ints;

namespace {

using Rng = std::mt19937_64;

long uniform(Rng& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

ResidueElem random_elem(const ResidueField& F, Rng& g) {
    return ResidueElem{static_cast<std::uint32_t>(uniform(g, 0, F.order() - 1))};
}

ResidueElem random_unit(const ResidueField& F, Rng& g) {
    return ResidueElem{static_cast<std::uint32_t>(uniform(g, 1, F.order() - 1))};
}

/// Eisenstein polynomial with digits 1..width-1 drawn at random.
DigitPoly random_eisenstein(const LocalField& K, long n, long width, Rng& g) {
    const auto& F = K.residue_field();
    DigitPoly phi;
    phi.n = n;
    phi.digits.assign(n, std::vector<ResidueElem>(width));
    for (long i = 0; i < n; ++i)
        for (long j = 1; j < width; ++j) phi.digits[i][j] = random_elem(F, g);
    phi.digits[0][1] = random_unit(F, g);
    return phi;
}

DigitPoly sample_template(const CoeffTemplate& T, Rng& g) {
    DigitPoly phi;
    phi.n = T.n;
    phi.digits.assign(T.n, std::vector<ResidueElem>(T.c + 1));
    for (long i = 0; i < T.n; ++i)
        for (long j = 1; j <= T.c; ++j) {
            const auto& cell = T.cell(i, j);
            phi.digits[i][j] = cell[uniform(g, 0, static_cast<long>(cell.size()) - 1)];
        }
    return phi;
}

struct Instance {
    const LocalField* K;
    RamPolygon R;
    ResidualTuple A;
    ResidueElem delta0;
};

struct Catalog {
    std::vector<LocalField> fields;
    std::vector<std::vector<long>> degrees;
};

Catalog catalog() {
    Catalog c;
    c.fields = {LocalField::rational(2), LocalField::rational(3), support::q2u2(), LocalField(3, {2, 2, 1}, {}),
                support::q3r2(), LocalField::rational(5)};
    c.degrees = {{2, 4, 6, 8}, {3, 6, 9}, {2, 4, 6}, {3, 6}, {3, 6}, {5, 10}};
    return c;
}

std::vector<Instance> instances(const Catalog& c, std::size_t cap_per_degree) {
    std::vector<Instance> out;
    for (std::size_t f = 0; f < c.fields.size(); ++f) {
        const LocalField& K = c.fields[f];
        for (long n : c.degrees[f]) {
            std::size_t before = out.size();
            for (long J0 : ore_range(K, n))
                for (const auto& R : enumerate_polygons(K, n, J0))
                    for (auto d0 : K.residue_field().units())
                        for (const auto& A : enumerate_residual_tuples(K, R, d0)) {
                            if (out.size() - before >= cap_per_degree) break;
                            out.push_back({&K, R, A, d0});
                        }
        }
    }
    return out;
}

std::string describe(const Instance& in) {
    return "K=" + std::to_string(in.K->p()) + "^" + std::to_string(in.K->f()) + " R=" + in.R.to_string() +
           " A=" + tuple_to_string(*in.K, in.A);
}

SuiteResult additive_maps(Rng& g) {
    SuiteResult r{"random additive maps are linear and satisfy rank-nullity"};
    std::vector<ResidueField> fields{ResidueField::prime(2), ResidueField::prime(3), ResidueField(2, {1, 1, 1}),
                                     ResidueField(3, {2, 2, 1}), ResidueField(2, {1, 1, 0, 1}),
                                     ResidueField::prime(5)};
    for (int t = 0; t < 2000; ++t) {
        const auto& F = fields[t % fields.size()];
        AdditiveMap T;
        for (int s = 0; s <= F.degree(); ++s)
            if (uniform(g, 0, 1)) T.terms[s] = random_elem(F, g);
        auto a = random_elem(F, g), b = random_elem(F, g);
        auto c = F.from_int(uniform(g, 0, F.p() - 1));
        auto an = additive_map_analysis(T, F);
        std::set<ResidueElem> image;
        std::uint64_t kernel = 0;
        for (auto x : F.elements()) {
            auto y = T.eval(F, x);
            image.insert(y);
            kernel += y.is_zero();
        }
        bool reps_ok = an.cokernel_reps.size() * image.size() == F.order() && !an.cokernel_reps.empty() &&
                       an.cokernel_reps.front().is_zero();
        // distinct representatives lie in distinct cosets
        for (std::size_t i = 0; i < an.cokernel_reps.size() && reps_ok; ++i)
            for (std::size_t j = i + 1; j < an.cokernel_reps.size() && reps_ok; ++j)
                reps_ok = !image.count(F.sub(an.cokernel_reps[i], an.cokernel_reps[j]));
        r.check(T.eval(F, F.add(a, b)) == F.add(T.eval(F, a), T.eval(F, b)) &&
                    T.eval(F, F.mul(c, a)) == F.mul(c, T.eval(F, a)) && image.size() * an.kernel_size == F.order() &&
                    an.kernel_size == kernel && an.surjective == (image.size() == F.order()) && reps_ok,
                "additive map over F_" + std::to_string(F.order()));
    }
    return r;
}

SuiteResult field_axioms(Rng& g) {
    SuiteResult r{"residue field axioms"};
    std::vector<ResidueField> fields{ResidueField(2, {1, 1, 1}), ResidueField(3, {2, 2, 1}),
                                     ResidueField(2, {1, 1, 0, 1}), ResidueField::prime(7),
                                     ResidueField(5, {2, 0, 1})};
    for (int t = 0; t < 2000; ++t) {
        const auto& F = fields[t % fields.size()];
        auto a = random_elem(F, g), b = random_elem(F, g), c = random_elem(F, g);
        bool ok = F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)) &&
                  F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)) && F.add(a, F.neg(a)).is_zero() &&
                  F.pow(a, F.order()) == a;
        if (!a.is_zero()) ok = ok && F.mul(a, F.inv(a)) == F.one();
        r.check(ok, "field axioms over F_" + std::to_string(F.order()));
    }
    return r;
}

SuiteResult component_residuals(const std::vector<Instance>& ins, Rng& g) {
    SuiteResult r{"component residuals are additive and exponent one past the steepest slope"};
    for (const auto& in : ins) {
        const auto& F = in.K->residue_field();
        long top = steepest_slope(in.R);
        for (long m = 1; m <= top + 2; ++m) {
            auto S = component_residual(*in.K, in.R, in.A, m);
            auto a = random_elem(F, g), b = random_elem(F, g);
            bool ok = S.map.eval(F, F.add(a, b)) == F.add(S.map.eval(F, a), S.map.eval(F, b)) &&
                      S.value_nphi == nphi(in.R, m) && !S.map.terms.empty();
            for (const auto& [s, c] : S.map.terms) ok = ok && s >= 0 && s <= in.R.r() && !c.is_zero();
            if (m > top)
                ok = ok && S.map.terms.size() == 1 && S.map.terms.begin()->first == 0 &&
                     additive_map_analysis(S.map, F).surjective;
            r.check(ok, describe(in) + " m=" + std::to_string(m));
        }
    }
    return r;
}

SuiteResult orbits(const std::vector<Instance>& ins) {
    SuiteResult r{"orbit canonicalization is idempotent and A-star classes are stable"};
    for (const auto& in : ins) {
        const auto& F = in.K->residue_field();
        auto O = orbit(*in.K, in.R, in.A);
        auto again = orbit(*in.K, in.R, O.canonical);
        bool ok = again.canonical == O.canonical && again.members == O.members &&
                  O.orbit_size * O.stabilizer_size == F.order() - 1 && O.members.size() == O.orbit_size &&
                  std::binary_search(O.members.begin(), O.members.end(), in.A) &&
                  O.canonical == O.members.front();
        for (const auto& M : O.members) ok = ok && orbit(*in.K, in.R, M).canonical == O.canonical;
        auto classes = partition_star(*in.K, in.R, O, in.R.n());
        std::size_t total = 0;
        for (const auto& cls : classes) {
            total += cls.size();
            for (auto d : unity_roots(F, in.R.n()))
                for (const auto& M : cls)
                    ok = ok && std::find(cls.begin(), cls.end(), act(*in.K, in.R, M, d)) != cls.end();
        }
        r.check(ok && total == O.members.size(), describe(in));
    }
    return r;
}

SuiteResult polygons(const Catalog& c) {
    SuiteResult r{"enumerated polygons are valid, convex and divisible"};
    for (std::size_t f = 0; f < c.fields.size(); ++f) {
        const LocalField& K = c.fields[f];
        for (long n : c.degrees[f])
            for (long J0 : ore_range(K, n))
                for (const auto& R : enumerate_polygons(K, n, J0)) {
                    auto pts = R.ppower_points();
                    bool ok = !validate_polygon(K, R).has_value() && R.J0() == J0;
                    for (std::size_t k = 0; k < pts.size(); ++k) {
                        ok = ok && pts[k].J % pts[k].x == 0 && pts[k].J == pts[k].a * n + pts[k].b;
                        if (k + 1 < pts.size()) ok = ok && pts[k + 1].J < pts[k].J;
                        // slopes increase along the polygon
                        if (k + 2 < pts.size())
                            ok = ok && (pts[k + 1].J - pts[k].J) * (pts[k + 2].x - pts[k + 1].x) <=
                                           (pts[k + 2].J - pts[k + 1].J) * (pts[k + 1].x - pts[k].x);
                    }
                    // n * phi_R is concave and nondecreasing on the integers
                    for (long m = 1; m <= 6; ++m)
                        ok = ok && nphi(R, m + 1) >= nphi(R, m) &&
                             nphi(R, m + 2) - nphi(R, m + 1) <= nphi(R, m + 1) - nphi(R, m);
                    r.check(ok, R.to_string());
                }
    }
    return r;
}

SuiteResult binomials() {
    SuiteResult r{"binomial valuations agree with Legendre"};
    for (int p : {2, 3, 5})
        for (auto K : {LocalField::rational(p)})
            for (long n = 0; n <= 200; ++n)
                for (long k = 0; k <= n; ++k)
                    r.check(K.vpi_binom(n, k) == oracle::legendre_binom(n, k, p),
                            "C(" + std::to_string(n) + "," + std::to_string(k) + ")");
    auto K = support::q3r2();
    for (long n = 0; n <= 60; ++n)
        for (long k = 0; k <= n; ++k)
            r.check(K.vpi_binom(n, k) == 2 * oracle::legendre_binom(n, k, 3), "ramified base binomial");
    return r;
}

SuiteResult valuations(Rng& g) {
    SuiteResult r{"valuations are multiplicative"};
    std::vector<LocalField> fields{LocalField::rational(3), support::q2u2(), support::q3r2()};
    for (int t = 0; t < 3000; ++t) {
        const LocalField& K = fields[t % fields.size()];
        long long a = uniform(g, 1, 5000) * (uniform(g, 0, 1) ? 1 : -1), b = uniform(g, 1, 5000);
        bool ok = *K.vpi_int(a * b) == *K.vpi_int(a) + *K.vpi_int(b);
        OKRing R(K, 8);
        std::vector<ResidueElem> da(8), db(8);
        long va = uniform(g, 0, 3), vb = uniform(g, 0, 3);
        for (long j = va; j < 8; ++j) da[j] = j == va ? random_unit(K.residue_field(), g) : random_elem(K.residue_field(), g);
        for (long j = vb; j < 8; ++j) db[j] = j == vb ? random_unit(K.residue_field(), g) : random_elem(K.residue_field(), g);
        auto x = R.from_digits(da), y = R.from_digits(db);
        ok = ok && R.valuation(x) == va && R.valuation(y) == vb && R.valuation(R.mul(x, y)) == va + vb &&
             R.digits(x, 8) == da;
        r.check(ok, "valuation product");
    }
    return r;
}

SuiteResult ext_ring(Rng& g) {
    SuiteResult r{"extension ring multiplication matches the oracle quotient ring"};
    for (int t = 0; t < 600; ++t) {
        int p = t % 2 ? 3 : 2;
        auto K = LocalField::rational(p);
        long n = p == 2 ? std::vector<long>{2, 4, 8}[t % 3] : std::vector<long>{3, 9}[t % 2];
        auto psi = random_eisenstein(K, n, 3, g);
        int N = 4;
        ExtRing L(K, psi, N);
        auto pc = ints(K, psi);
        oracle::QuotientRing Q(p, N, std::vector<long long>(pc.begin(), pc.end() - 1));
        std::vector<long long> a(n), b(n);
        for (auto& x : a) x = uniform(g, 0, static_cast<long>(Q.modulus()) - 1);
        for (auto& x : b) x = uniform(g, 0, static_cast<long>(Q.modulus()) - 1);
        auto emb = [&](const std::vector<long long>& v) {
            auto z = L.zero();
            auto pw = L.one();
            for (long i = 0; i < n; ++i) {
                z = L.add(z, L.scale(pw, L.base().from_int(v[i])));
                pw = L.mul_alpha(pw);
            }
            return z;
        };
        auto qa = Q.from_int(0), qb = Q.from_int(0);
        for (long i = 0; i < n; ++i) {
            qa = Q.add(qa, Q.mul(Q.from_int(a[i]), Q.pow_gen(i)));
            qb = Q.add(qb, Q.mul(Q.from_int(b[i]), Q.pow_gen(i)));
        }
        auto prod = L.mul(emb(a), emb(b));
        auto qp = Q.mul(qa, qb);
        std::vector<long long> back(qp.begin(), qp.end());
        r.check(prod == emb(back) && L.valuation(prod) == Q.val(qp), "product in degree " + std::to_string(n));
    }
    return r;
}

SuiteResult oracle_polygons(Rng& g) {
    SuiteResult r{"polygon and residues of random polynomials match the oracle"};
    for (int t = 0; t < 1200; ++t) {
        int p = t % 2 ? 3 : 2;
        auto K = LocalField::rational(p);
        long n = p == 2 ? std::vector<long>{2, 4, 6, 8}[t % 4] : std::vector<long>{3, 6, 9}[t % 3];
        long width = uniform(g, 2, 4);
        auto phi = random_eisenstein(K, n, width, g);
        // thin out digits so that several polygons occur
        for (long i = 1; i < n; ++i)
            if (uniform(g, 0, 2))
                std::fill(phi.digits[i].begin() + 1, phi.digits[i].begin() + uniform(g, 1, width - 1), ResidueElem{});
        auto R = polygon_of_valuations(K, phi.valuations());
        auto od = oracle::ram_data(p, ints(K, phi));
        bool ok = support::ppower(R) == od.ppower;
        if (ok) {
            auto vals = point_values(R, residuals_of_polynomial(K, phi, R));
            for (std::size_t k = 0; k < R.points().size(); ++k)
                ok = ok && static_cast<int>(vals[k].code) == od.residues[R.points()[k].x];
        }
        r.check(ok, render_integer(K, phi));
    }
    return r;
}

SuiteResult roots(Rng& g) {
    SuiteResult r{"root counts are robust and agree with the oracle"};
    for (int t = 0; t < 400; ++t) {
        int p = t % 2 ? 3 : 2;
        auto K = LocalField::rational(p);
        long n = p;
        auto phi = random_eisenstein(K, n, 3, g), psi = random_eisenstein(K, n, 3, g);
        if (t % 5 == 0) psi = phi;
        auto c = count_roots(K, phi, psi);
        RootCountOptions hi;
        hi.precision = 2 * default_alpha_precision(K, phi, psi);
        auto c2 = count_roots(K, phi, psi, hi);
        auto brute = static_cast<std::uint64_t>(oracle::brute_root_count(p, ints(K, phi), ints(K, psi)));
        bool sym = (c > 0) == (count_roots(K, psi, phi) > 0);
        r.check(c == c2 && c == brute && sym && (c == 0 || n % c == 0),
                render_integer(K, phi) + " in " + render_integer(K, psi));
    }
    // larger degrees through template classes: robustness, dichotomy and symmetry
    auto K = LocalField::rational(3);
    std::vector<DigitPoly> pool;
    for (long J0 : {10L, 13L, 14L})
        for (const auto& R : enumerate_polygons(K, 9, J0))
            for (const auto& A : enumerate_residual_tuples(K, R, K.residue_field().one())) {
                auto T = build_template(K, R, A, K.residue_field().one());
                for (int s = 0; s < 2; ++s) pool.push_back(sample_template(T, g));
            }
    for (int t = 0; t < 150; ++t) {
        const auto& phi = pool[uniform(g, 0, static_cast<long>(pool.size()) - 1)];
        const auto& psi = t % 3 ? pool[uniform(g, 0, static_cast<long>(pool.size()) - 1)] : phi;
        auto c = count_roots(K, phi, psi);
        RootCountOptions hi;
        hi.precision = 2 * default_alpha_precision(K, phi, psi);
        bool ok = c == count_roots(K, phi, psi, hi) && (c == 0 || 9 % c == 0) &&
                  (c > 0) == (count_roots(K, psi, phi) > 0);
        r.check(ok, render_integer(K, phi) + " in " + render_integer(K, psi));
    }
    return r;
}

SuiteResult aut_bounds(Rng& g) {
    SuiteResult r{"automorphism counts respect the bound"};
    auto K = LocalField::rational(3);
    for (long J0 : ore_range(K, 9))
        for (const auto& R : enumerate_polygons(K, 9, J0))
            for (const auto& A : enumerate_residual_tuples(K, R, K.residue_field().one())) {
                auto T = build_template(K, R, A, K.residue_field().one());
                auto phi = sample_template(T, g);
                auto a = aut_count(K, phi);
                r.check(a >= 1 && 9 % a == 0 && a <= aut_upper_bound(K, R, A), render_integer(K, phi));
            }
    return r;
}

}  // namespace

std::vector<SuiteResult> property_suites(unsigned seed) {
    Rng g(seed);
    auto c = catalog();
    auto ins = instances(c, 400);
    std::vector<SuiteResult> out;
    out.push_back(field_axioms(g));
    out.push_back(additive_maps(g));
    out.push_back(component_residuals(ins, g));
    out.push_back(orbits(ins));
    out.push_back(polygons(c));
    out.push_back(binomials());
    out.push_back(valuations(g));
    out.push_back(ext_ring(g));
    out.push_back(oracle_polygons(g));
    out.push_back(roots(g));
    out.push_back(aut_bounds(g));
    return out;
}

SuiteResult roundtrip_suite(int p, const std::vector<long>& degrees, std::uint64_t exhaustive_cap,
                            std::uint64_t samples, unsigned seed) {
    SuiteResult r{"template round trip over Q_" + std::to_string(p)};
    Rng g(seed);
    auto K = LocalField::rational(p);
    for (long n : degrees)
        for (long J0 : ore_range(K, n))
            for (const auto& R : enumerate_polygons(K, n, J0))
                for (auto d0 : K.residue_field().units())
                    for (const auto& A : enumerate_residual_tuples(K, R, d0)) {
                        auto T = build_template(K, R, A, d0);
                        auto check = [&](const DigitPoly& phi) {
                            bool ok = phi.is_eisenstein() && phi.digit(0, 1) == d0;
                            ok = ok && polygon_of_valuations(K, phi.valuations()) == R;
                            ok = ok && residuals_of_polynomial(K, phi, R) == A;
                            auto od = oracle::ram_data(p, ints(K, phi));
                            ok = ok && od.ppower == support::ppower(R);
                            auto vals = point_values(R, A);
                            for (std::size_t k = 0; ok && k < R.points().size(); ++k)
                                ok = static_cast<int>(vals[k].code) == od.residues[R.points()[k].x];
                            r.check(ok, R.to_string() + " " + tuple_to_string(K, A) + " " + render_integer(K, phi));
                        };
                        if (template_count(T) <= exhaustive_cap) {
                            TemplateStream s(T);
                            DigitPoly phi;
                            while (s.next(phi)) check(phi);
                        } else {
                            for (std::uint64_t t = 0; t < samples; ++t) check(sample_template(T, g));
                        }
                    }
    return r;
}

std::vector<CompletenessRow> brute_completeness(int p, long n) {
    auto K = LocalField::rational(p);
    std::vector<CompletenessRow> out;
    for (long J0 : ore_range(K, n)) {
        CompletenessRow row;
        row.J0 = J0;
        long c = krasner_precision(K, n, J0);
        long pc = 1;
        for (long j = 0; j < c; ++j) pc *= p;
        // coefficient phi_0 = p * u with u a unit mod p^c, the others p * t with t mod p^c
        std::vector<long long> coeff(n + 1, 0);
        coeff[n] = 1;
        std::vector<std::vector<long long>> reps;
        std::function<void(long)> rec = [&](long i) {
            if (i == n) {
                auto od = oracle::ram_data(p, coeff);
                if (!od.v[1] || *od.v[1] != J0) return;
                ++row.candidates;
                for (const auto& rep : reps)
                    if (oracle::brute_root_count(p, rep, coeff) > 0) return;
                reps.push_back(coeff);
                return;
            }
            for (long t = 0; t < pc; ++t) {
                if (i == 0 && t % p == 0) continue;
                coeff[i] = static_cast<long long>(p) * t;
                rec(i + 1);
            }
        };
        rec(0);
        row.brute = static_cast<long>(reps.size());
        auto E = all_extensions_by_disc(K, n, J0);
        row.library = E.total;
        std::set<std::size_t> hit;
        for (const auto& rec_ : E.records) {
            auto gi = ints(K, rec_.generator);
            std::size_t k = 0;
            while (k < reps.size() && oracle::brute_root_count(p, reps[k], gi) == 0) ++k;
            if (k == reps.size() || !hit.insert(k).second) row.library_generators_match = false;
        }
        out.push_back(row);
    }
    return out;
}

}  // namespace suites
