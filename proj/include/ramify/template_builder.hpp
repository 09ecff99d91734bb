#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ramify/digit_poly.hpp"
#include "ramify/local_field.hpp"
#include "ramify/ram_polygon.hpp"
#include "ramify/residual_invariants.hpp"

namespace ramify {

using BigInt = boost::multiprecision::cpp_int;

enum class CellTag { zero_default, free, cokernel, fixed_by_A, fixed_delta0 };

const char* to_string(CellTag t);

/// Sets tau_{i,j} of allowed residue digits, 0 <= i < n, 1 <= j <= c.
struct CoeffTemplate {
    long n = 0;
    long c = 0;
    std::vector<std::vector<std::vector<ResidueElem>>> cells;  // cells[i][j-1]
    std::vector<std::vector<CellTag>> tags;
    /// Step (d) cells that fell below the coefficient bound L (kept at zero).
    std::vector<std::string> notes;

    const std::vector<ResidueElem>& cell(long i, long j) const { return cells.at(i).at(j - 1); }
    CellTag tag(long i, long j) const { return tags.at(i).at(j - 1); }
};

CoeffTemplate build_template(const LocalField& K, const RamPolygon& R, const ResidualTuple& A, ResidueElem delta0);

BigInt template_count(const CoeffTemplate& T);

/// Odometer over cell choices; cells ordered by (j, i), the last cell varies fastest.
class TemplateStream {
public:
    explicit TemplateStream(const CoeffTemplate& T);
    /// Writes the next polynomial into out; false once exhausted.
    bool next(DigitPoly& out);

private:
    const CoeffTemplate& T_;
    std::vector<std::pair<long, long>> order_;
    std::vector<std::size_t> idx_;
    bool started_ = false;
    bool done_ = false;
};

std::vector<DigitPoly> template_polynomials(const CoeffTemplate& T);

struct Guarantee {
    bool guaranteed = false;
    std::string via;                   // "b", "c" or empty
    std::vector<long> non_surjective;  // m with S_m not surjective
    std::string justification;
};

Guarantee uniqueness_guarantee(const LocalField& K, const RamPolygon& R, const ResidualTuple& A);

/// Residual polynomials read off the digits of phi; phi must have polygon R.
ResidualTuple residuals_of_polynomial(const LocalField& K, const DigitPoly& phi, const RamPolygon& R);

}  // namespace ramify
