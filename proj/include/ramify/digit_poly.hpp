#pragma once

#include <string>
#include <vector>

#include "ramify/local_field.hpp"

namespace ramify {

/**
 * Monic polynomial x^n + sum_{i<n} phi_i x^i over O_K given by pi-adic digits:
 * phi_i = sum_j lift(digits[i][j]) pi^j with lifts from the fixed representative set.
 */
struct DigitPoly {
    long n = 0;
    std::vector<std::vector<ResidueElem>> digits;  // n rows, each of a common width

    ResidueElem digit(long i, long j) const;
    /// Valuations of phi_0..phi_n (phi_n = 1).
    std::vector<Valuation> valuations() const;
    bool is_eisenstein() const;

    friend bool operator==(const DigitPoly&, const DigitPoly&) = default;
};

/// "x^9+6x^3+9x+3"; requires K = Q_p.
std::string render_integer(const LocalField& K, const DigitPoly& phi);

/// Integer form over Q_p, otherwise digits as "x^8+(g*pi^2)x+pi" with pi the uniformizer of K.
std::string render(const LocalField& K, const DigitPoly& phi);

/// Digit rows of phi_i as elements of O_K modulo p^N (index 0..n, leading 1 included).
std::vector<OKRing::Vec> to_ring(const OKRing& R, const DigitPoly& phi);

/**
 * Parses an integer polynomial such as "x^9+6x^3+9x+3" or "x^2-3" over Q_p.
 * Negative coefficients are expanded to `width` p-adic digits.
 */
DigitPoly parse_integer_poly(const LocalField& K, const std::string& text, long width = 0);

}  // namespace ramify
