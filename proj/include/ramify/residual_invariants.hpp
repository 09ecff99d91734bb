#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ramify/local_field.hpp"
#include "ramify/ram_polygon.hpp"
#include "ramify/residue_field.hpp"

namespace ramify {

/// Residual polynomials A_1..A_l, one coefficient map (position -> value) per segment.
struct ResidualTuple {
    std::vector<std::map<long, ResidueElem>> segments;

    /// Coefficients segment by segment, position by position.
    std::vector<std::uint32_t> key() const;

    friend bool operator==(const ResidualTuple&, const ResidualTuple&) = default;
    friend bool operator<(const ResidualTuple& a, const ResidualTuple& b) { return a.key() < b.key(); }
};

/// One residue per point of R: the coefficient of that point in its segment(s).
std::vector<ResidueElem> point_values(const RamPolygon& R, const ResidualTuple& A);
ResidualTuple tuple_from_point_values(const RamPolygon& R, const std::vector<ResidueElem>& values);

/// Forced residual coefficient of a point with b = 0, given delta_0.
ResidueElem forced_point_value(const LocalField& K, const RamPolygon& R, int k, ResidueElem delta0);

struct TupleViolation {
    std::string condition;  // "a", "b", "c", "horizontal", "forced"
    std::string detail;
};

std::optional<TupleViolation> validate_residuals(const LocalField& K, const RamPolygon& R, const ResidualTuple& A,
                                                 ResidueElem delta0);

std::vector<ResidualTuple> enumerate_residual_tuples(const LocalField& K, const RamPolygon& R, ResidueElem delta0);

/// The tuple attached to the uniformizer delta * alpha.
ResidualTuple act(const LocalField& K, const RamPolygon& R, const ResidualTuple& A, ResidueElem delta);

struct InvariantOrbit {
    ResidualTuple canonical;
    std::vector<ResidualTuple> members;  // sorted
    std::uint64_t orbit_size = 0;
    std::uint64_t stabilizer_size = 0;
};

InvariantOrbit orbit(const LocalField& K, const RamPolygon& R, const ResidualTuple& A);

/// All orbits of tuples over every delta_0, sorted by canonical representative.
std::vector<InvariantOrbit> enumerate_orbits(const LocalField& K, const RamPolygon& R);

/// Classes of the orbit under the delta with delta^n = 1, each sorted, ordered by first member.
std::vector<std::vector<ResidualTuple>> partition_star(const LocalField& K, const RamPolygon& R,
                                                       const InvariantOrbit& O, long n);

struct ComponentResidual {
    long m = 0;
    AdditiveMap map;
    long value_nphi = 0;
};

ComponentResidual component_residual(const LocalField& K, const RamPolygon& R, const ResidualTuple& A, long m);

/// Largest m whose cokernel cells the template fills: floor((J_0 - J_1)/(p^{s_1} - 1)).
long steepest_slope(const RamPolygon& R);

std::uint64_t aut_upper_bound(const LocalField& K, const RamPolygon& R, const ResidualTuple& A);

std::string tuple_to_string(const LocalField& K, const ResidualTuple& A);

}  // namespace ramify
