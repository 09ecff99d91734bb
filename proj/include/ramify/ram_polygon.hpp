#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "ramify/local_field.hpp"

namespace ramify {

struct PolyPoint {
    long x = 0;
    long J = 0;
    long a = 0;  // J = a*n + b, 0 <= b < n
    long b = 0;
    int s = -1;  // x = p^s, or -1 for a horizontal point that is not a p-power
};

/// Maximal run of collinear points; slope -h/e in lowest terms.
struct Segment {
    int left = 0;
    int right = 0;
    long h = 0;
    long e = 1;
};

/**
 * Ramification polygon given by its full point set: the p-power points
 * (1,J_0),...,(p^r,0) with r = v_p(n), followed by the horizontal points
 * (i,0), i > p^r, with v_p(C(n,i)) = 0.
 */
class RamPolygon {
public:
    /// Builds the point set from the p-power points only; checks shape, not validity.
    RamPolygon(const LocalField& K, long n, const std::vector<std::pair<long, long>>& ppower_points);

    long n() const { return n_; }
    int p() const { return p_; }
    int r() const { return r_; }
    long J0() const { return points_.front().J; }
    const std::vector<PolyPoint>& points() const { return points_; }
    /// Points above p-powers, in order; the last one is (p^r, 0).
    std::vector<PolyPoint> ppower_points() const;
    const std::vector<Segment>& segments() const { return segments_; }
    /// Offset of point k on segment seg, i.e. (x_k - x_left)/e.
    long position(int seg, int k) const;
    /// Segment index containing point k as a non-left point, or as left point if k = 0.
    int segment_of(int k) const;

    /// "{(1,10),(3,3),(9,0)}" including horizontal points.
    std::string to_string() const;

    friend bool operator==(const RamPolygon& a, const RamPolygon& b);
    friend bool operator<(const RamPolygon& a, const RamPolygon& b);

private:
    long n_;
    int p_;
    int r_;
    std::vector<PolyPoint> points_;
    std::vector<Segment> segments_;
};

struct PolygonViolation {
    std::string condition;  // "convexity", "divisibility", "a".."e", "realizable"
    std::string detail;
};

/// Ore's range of admissible J_0 (the discriminant exponent is n + J_0 - 1).
std::vector<long> ore_range(const LocalField& K, long n);
bool in_ore_range(const LocalField& K, long n, long J0);

/// Largest pi-adic digit index that matters: floor(1 + 2 a_0 + 2 b_0 / n).
long krasner_precision(const LocalField& K, long n, long J0);

std::optional<PolygonViolation> validate_polygon(const LocalField& K, const RamPolygon& R);

std::vector<RamPolygon> enumerate_polygons(const LocalField& K, long n, long J0);

struct HasseHerbrand {
    boost::rational<long long> value;  // n * phi_R(lambda)
    std::vector<long> argmin;          // abscissas attaining the minimum
};

HasseHerbrand hasse_herbrand(const RamPolygon& R, boost::rational<long long> lambda);
/// n * phi_R(m) for a positive integer m.
long nphi(const RamPolygon& R, long m);

struct CoeffBounds {
    std::vector<long> L;                              // L[i] for 0 <= i <= n
    std::vector<std::pair<long, long>> forced;        // (b_t, L(b_t)) with v(phi_{b_t}) = L(b_t)
};

CoeffBounds coeff_lower_bounds(const RamPolygon& R, const LocalField& K);

/**
 * Ramification polygon of an Eisenstein polynomial given by the pi-adic
 * valuations of its coefficients phi_0..phi_n (nullopt for zero).
 */
RamPolygon polygon_of_valuations(const LocalField& K, const std::vector<Valuation>& vals);

}  // namespace ramify
