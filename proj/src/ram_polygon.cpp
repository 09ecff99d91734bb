#include "ramify/ram_polygon.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ramify {

namespace {

long ipow(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}


/// v_pi(C(m,k)); nullopt when k > m (the binomial is zero).
Valuation vbin(const LocalField& K, long m, long k) {
    if (k > m || k < 0) return std::nullopt;
    return K.vpi_binom(m, k);
}

}  // namespace

RamPolygon::RamPolygon(const LocalField& K, long n, const std::vector<std::pair<long, long>>& pts)
    : n_(n), p_(K.p()) {
    if (n < 1) throw std::invalid_argument("degree must be positive");
    r_ = 0;
    for (long m = n; m % p_ == 0; m /= p_) ++r_;
    const long pr = ipow(p_, r_);
    if (pts.empty() || pts.front().first != 1) throw std::invalid_argument("polygon must start at abscissa 1");
    if (pts.back() != std::make_pair(pr, 0L))
        throw std::invalid_argument("polygon must end at (" + std::to_string(pr) + ",0)");
    long prev = 0;
    for (const auto& [x, J] : pts) {
        if (x <= prev) throw std::invalid_argument("abscissas must increase");
        prev = x;
        int s = 0;
        long y = x;
        while (y % p_ == 0) {
            y /= p_;
            ++s;
        }
        if (y != 1) throw std::invalid_argument("abscissa " + std::to_string(x) + " is not a power of p");
        if (J < 0) throw std::invalid_argument("ordinates must be nonnegative");
        points_.push_back(PolyPoint{x, J, J / n, J % n, s});
    }
    for (long i = pr + 1; i <= n; ++i)
        if (K.vpi_binom(n, i) == 0) points_.push_back(PolyPoint{i, 0, 0, 0, -1});

    for (int i = 0; i + 1 < static_cast<int>(points_.size());) {
        const PolyPoint& L = points_[i];
        long dJ = points_[i + 1].J - L.J, dx = points_[i + 1].x - L.x;
        int j = i + 1;
        while (j + 1 < static_cast<int>(points_.size()) &&
               (points_[j + 1].J - points_[j].J) * dx == dJ * (points_[j + 1].x - points_[j].x))
            ++j;
        long H = L.J - points_[j].J, E = points_[j].x - L.x;
        long g = std::gcd(std::abs(H), E);
        segments_.push_back(Segment{i, j, H / g, E / g});
        i = j;
    }
}

std::vector<PolyPoint> RamPolygon::ppower_points() const {
    std::vector<PolyPoint> out;
    for (const auto& pt : points_)
        if (pt.s >= 0) out.push_back(pt);
    return out;
}

long RamPolygon::position(int seg, int k) const {
    const Segment& S = segments_.at(seg);
    return (points_.at(k).x - points_[S.left].x) / S.e;
}

int RamPolygon::segment_of(int k) const {
    for (int i = 0; i < static_cast<int>(segments_.size()); ++i)
        if (segments_[i].left < k && k <= segments_[i].right) return i;
    return 0;
}

std::string RamPolygon::to_string() const {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < points_.size(); ++i)
        os << (i ? "," : "") << "(" << points_[i].x << "," << points_[i].J << ")";
    os << "}";
    return os.str();
}

bool operator==(const RamPolygon& a, const RamPolygon& b) {
    if (a.n_ != b.n_ || a.p_ != b.p_ || a.points_.size() != b.points_.size()) return false;
    for (std::size_t i = 0; i < a.points_.size(); ++i)
        if (a.points_[i].x != b.points_[i].x || a.points_[i].J != b.points_[i].J) return false;
    return true;
}

bool operator<(const RamPolygon& a, const RamPolygon& b) {
    auto key = [](const RamPolygon& R) {
        std::vector<long> ords, xs;
        for (const auto& pt : R.ppower_points()) {
            ords.push_back(pt.J);
            xs.push_back(pt.x);
        }
        return std::make_tuple(R.n_, ords, xs);
    };
    return key(a) < key(b);
}

// ---------------------------------------------------------------------------

bool in_ore_range(const LocalField& K, long n, long J0) {
    if (n < 1 || J0 < 0) return false;
    const long vn = *K.vpi_int(n);
    const long b0 = J0 % n;
    long lo = vn * n;
    if (b0 != 0) lo = std::min(lo, *K.vpi_int(b0) * n);
    return lo <= J0 && J0 <= vn * n;
}

std::vector<long> ore_range(const LocalField& K, long n) {
    std::vector<long> out;
    if (n < 2) return out;
    const long hi = *K.vpi_int(n) * n;
    for (long J = 0; J <= hi; ++J)
        if (in_ore_range(K, n, J)) out.push_back(J);
    return out;
}

long krasner_precision(const LocalField& K, long n, long J0) {
    if (!in_ore_range(K, n, J0)) throw std::domain_error("J_0 outside Ore's range");
    const long a0 = J0 / n, b0 = J0 % n;
    // digits at pi^j with j <= 1 + 2 J_0 / n can change the field, including the integral case
    return ((1 + 2 * a0) * n + 2 * b0) / n;
}

// ---------------------------------------------------------------------------

std::optional<PolygonViolation> validate_polygon(const LocalField& K, const RamPolygon& R) {
    const long n = R.n();
    const auto pp = R.ppower_points();
    const auto& pts = R.points();
    auto fail = [](std::string c, std::string d) { return PolygonViolation{std::move(c), std::move(d)}; };

    for (std::size_t i = 0; i + 1 < pp.size(); ++i)
        if (pp[i].J <= pp[i + 1].J) return fail("convexity", "ordinates must strictly decrease to 0");
    for (std::size_t i = 0; i + 2 < pts.size(); ++i) {
        long l1 = (pts[i + 1].J - pts[i].J) * (pts[i + 2].x - pts[i + 1].x);
        long l2 = (pts[i + 2].J - pts[i + 1].J) * (pts[i + 1].x - pts[i].x);
        if (l2 < l1)
            return fail("convexity", "slope decreases at (" + std::to_string(pts[i + 1].x) + "," +
                                         std::to_string(pts[i + 1].J) + ")");
    }
    for (const auto& pt : pp)
        if (pt.J % pt.x != 0)
            return fail("divisibility", std::to_string(pt.x) + " does not divide " + std::to_string(pt.J));

    // (a) Ore-type bounds at every point
    for (const auto& pt : pp) {
        const long hi = *vbin(K, n, pt.x) * n;
        long lo = hi;
        if (auto vb = vbin(K, pt.b, pt.x)) lo = std::min(lo, *vb * n);
        if (pt.J < lo || pt.J > hi)
            return fail("a", "J=" + std::to_string(pt.J) + " at abscissa " + std::to_string(pt.x) + " outside [" +
                                 std::to_string(lo) + "," + std::to_string(hi) + "]");
    }
    // (b) equal remainders force related quotients
    for (std::size_t i = 0; i < pp.size(); ++i)
        for (std::size_t k = i + 1; k < pp.size(); ++k) {
            if (pp[i].b != pp[k].b || pp[i].b == 0) continue;
            auto vi = vbin(K, pp[i].b, pp[i].x), vk = vbin(K, pp[k].b, pp[k].x);
            if (!vi || !vk || pp[i].a != pp[k].a - *vk + *vi)
                return fail("b", "points above " + std::to_string(pp[i].x) + " and " + std::to_string(pp[k].x) +
                                     " share b=" + std::to_string(pp[i].b));
        }
    // (c) the fixed coefficient phi_{b_i} respects the bound coming from every other point
    for (std::size_t i = 0; i < pp.size(); ++i) {
        if (pp[i].b == 0) continue;
        const long vi = *vbin(K, pp[i].b, pp[i].x);
        for (std::size_t t = 0; t < pp.size(); ++t) {
            if (t == i || pp[t].J == 0 || pp[t].x > pp[i].b) continue;
            long rhs = (pp[i].b < pp[t].b ? 1 : 0) + pp[t].a - *vbin(K, pp[i].b, pp[t].x) + vi;
            if (pp[i].a < rhs)
                return fail("c", "coefficient " + std::to_string(pp[i].b) + " conflicts with point above " +
                                     std::to_string(pp[t].x));
        }
    }
    // (d) abscissas p^w without a point must lie strictly above the polygon
    for (std::size_t t = 0; t + 1 < pp.size(); ++t) {
        for (int w = pp[t].s + 1; w < pp[t + 1].s; ++w) {
            const long pw = ipow(R.p(), w);
            const long D = pp[t + 1].x - pp[t].x;
            // line(p^w) * D
            const long lineD = (pp[t + 1].J - pp[t].J) * (pw - pp[t].x) + pp[t].J * D;
            if (lineD >= n * *vbin(K, n, pw) * D)
                return fail("d", "point above " + std::to_string(pw) + " from the leading term lies on or below the polygon");
            for (const auto& pk : pp) {
                if (pk.b == 0 || pk.b < pw) continue;
                // a_k > (line - b_k)/n - v(C(b_k,p^w)) + v(C(b_k,p^{s_k}))
                long lhs = pk.a + *vbin(K, pk.b, pw) - *vbin(K, pk.b, pk.x);
                if (lhs * n * D <= lineD - pk.b * D)
                    return fail("d", "coefficient " + std::to_string(pk.b) + " creates a point above " +
                                         std::to_string(pw));
            }
        }
    }
    // (e) horizontal points
    const long pr = pp.back().x;
    std::vector<long> expected, actual;
    for (long i = pr + 1; i <= n; ++i)
        if (K.vpi_binom(n, i) == 0) expected.push_back(i);
    for (const auto& pt : pts)
        if (pt.x > pr) {
            if (pt.J != 0) return fail("e", "horizontal point with nonzero ordinate");
            actual.push_back(pt.x);
        }
    if (expected != actual) return fail("e", "horizontal points differ from the binomial pattern");

    // constructive check: coefficients phi_{b_t} of the forced valuations, all others zero
    std::vector<Valuation> vals(n + 1);
    vals[0] = 1;
    vals[n] = 0;
    for (const auto& pt : pp)
        if (pt.b != 0) vals[pt.b] = pt.a + 1 - *vbin(K, pt.b, pt.x);
    for (long i = 1; i < n; ++i)
        if (vals[i] && *vals[i] < 1) return fail("realizable", "forced coefficient valuation below 1");
    if (!(polygon_of_valuations(K, vals) == R))
        return fail("realizable", "the polynomial with the forced coefficients has a different polygon");
    return std::nullopt;
}

std::vector<RamPolygon> enumerate_polygons(const LocalField& K, long n, long J0) {
    if (!in_ore_range(K, n, J0)) throw std::domain_error("J_0 outside Ore's range");
    int r = 0;
    for (long m = n; m % K.p() == 0; m /= K.p()) ++r;
    std::vector<RamPolygon> out;
    if (r == 0) {
        RamPolygon R(K, n, {{1, 0}});
        if (!validate_polygon(K, R)) out.push_back(R);
        return out;
    }
    const long pr = ipow(K.p(), r);
    std::vector<std::pair<long, long>> cur{{1, J0}};
    std::function<void(int)> rec = [&](int s) {
        if (s == r) {
            cur.push_back({pr, 0});
            RamPolygon R(K, n, cur);
            if (!validate_polygon(K, R)) out.push_back(R);
            cur.pop_back();
            return;
        }
        rec(s + 1);  // no point above p^s
        const long ps = ipow(K.p(), s);
        const long hi = std::min(K.vpi_binom(n, ps) * n, cur.back().second - 1);
        for (long J = ps; J <= hi; J += ps) {
            cur.push_back({ps, J});
            rec(s + 1);
            cur.pop_back();
        }
    };
    rec(1);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------

HasseHerbrand hasse_herbrand(const RamPolygon& R, boost::rational<long long> lambda) {
    if (lambda <= 0) throw std::domain_error("lambda must be positive");
    HasseHerbrand out;
    bool first = true;
    for (const auto& pt : R.ppower_points()) {
        boost::rational<long long> v = pt.J + lambda * pt.x;
        if (first || v < out.value) {
            out.value = v;
            out.argmin = {pt.x};
            first = false;
        } else if (v == out.value) {
            out.argmin.push_back(pt.x);
        }
    }
    return out;
}

long nphi(const RamPolygon& R, long m) {
    long best = 0;
    bool first = true;
    for (const auto& pt : R.ppower_points()) {
        long v = pt.J + m * pt.x;
        if (first || v < best) best = v;
        first = false;
    }
    return best;
}

CoeffBounds coeff_lower_bounds(const RamPolygon& R, const LocalField& K) {
    const long n = R.n();
    const auto pp = R.ppower_points();
    CoeffBounds out;
    out.L.assign(n + 1, 1);
    out.L[n] = 0;
    for (long i = 1; i < n; ++i) {
        long best = 1;
        for (const auto& pt : pp) {
            if (pt.x > i) continue;
            long l = (i < pt.b ? 2 : 1) + pt.a - *vbin(K, i, pt.x);
            best = std::max(best, l);
        }
        for (std::size_t t = 0; t + 1 < pp.size(); ++t)
            for (int w = pp[t].s + 1; w < pp[t + 1].s; ++w) {
                const long pw = ipow(R.p(), w);
                if (pw > i) continue;
                const long D = pp[t + 1].x - pp[t].x;
                const long num = (pp[t + 1].J - pp[t].J) * (pw - pp[t].x) + (pp[t].J - i) * D;
                // strict inequality: smallest integer exceeding num/(nD) + 1 - v(C(i,p^w))
                long l = floor_div(num, n * D) + 2 - *vbin(K, i, pw);
                best = std::max(best, l);
            }
        out.L[i] = best;
    }
    for (const auto& pt : pp)
        if (pt.b != 0) out.forced.push_back({pt.b, pt.a + 1 - *vbin(K, pt.b, pt.x)});
    return out;
}

RamPolygon polygon_of_valuations(const LocalField& K, const std::vector<Valuation>& vals) {
    const long n = static_cast<long>(vals.size()) - 1;
    if (n < 1) throw std::invalid_argument("polynomial must have positive degree");
    if (!vals[0] || *vals[0] != 1 || !vals[n] || *vals[n] != 0)
        throw std::invalid_argument("polynomial is not Eisenstein");
    for (long i = 1; i < n; ++i)
        if (vals[i] && *vals[i] < 1) throw std::invalid_argument("polynomial is not Eisenstein");

    // v_alpha(rho_i) = min_{k >= i} n(v(C(k,i)) + v(phi_k) - 1) + k, exact since terms differ mod n
    std::vector<long> v(n + 1, 0);
    for (long i = 1; i <= n; ++i) {
        long best = -1;
        for (long k = i; k <= n; ++k) {
            if (!vals[k]) continue;
            long t = n * (K.vpi_binom(k, i) + *vals[k] - 1) + k;
            if (best < 0 || t < best) best = t;
        }
        v[i] = best;
    }
    // lower convex hull of (i, v_i), then every point lying on it
    std::vector<long> hull;
    for (long i = 1; i <= n; ++i) {
        while (hull.size() >= 2) {
            long a = hull[hull.size() - 2], b = hull.back();
            // remove b if it lies on or above segment a -> i
            if ((v[b] - v[a]) * (i - a) >= (v[i] - v[a]) * (b - a))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }
    std::vector<std::pair<long, long>> pp;
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        long a = hull[h], b = hull[h + 1];
        for (long i = a; i < b; ++i)
            if ((v[i] - v[a]) * (b - a) == (v[b] - v[a]) * (i - a) && v[i] > 0) pp.push_back({i, v[i]});
    }
    long last = hull.back();
    if (v[last] > 0) pp.push_back({last, v[last]});
    // first abscissa with ordinate 0 closes the sloped part
    long pr = 1;
    while (n % (pr * K.p()) == 0) pr *= K.p();
    if (v[pr] != 0) throw std::logic_error("ramification polynomial has positive valuation at p^r");
    pp.push_back({pr, 0});
    RamPolygon R(K, n, pp);
    for (const auto& pt : R.points())
        if (v[pt.x] != pt.J) throw std::logic_error("polygon point disagrees with coefficient valuation");
    return R;
}

}  // namespace ramify
