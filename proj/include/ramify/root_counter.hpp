#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ramify/digit_poly.hpp"
#include "ramify/local_field.hpp"

namespace ramify {

struct InsufficientPrecision : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * O_L = O_K[alpha]/(psi) modulo p^N for an Eisenstein psi of degree n.
 * An element is a flat array of n blocks, block i holding the O_K coordinate of alpha^i.
 */
class ExtRing {
public:
    using u64 = OKRing::u64;
    using Elem = std::vector<u64>;

    ExtRing(const LocalField& K, const DigitPoly& psi, int N);

    const OKRing& base() const { return R_; }
    long n() const { return n_; }
    int block() const { return d_; }
    /// Number of alpha-adic digits an element carries.
    long alpha_precision() const { return n_ * R_.pi_precision(); }

    Elem zero() const { return Elem(static_cast<std::size_t>(n_) * d_, 0); }
    Elem one() const;
    Elem alpha() const;
    /// Embeds an element of O_K.
    Elem embed(const OKRing::Vec& c) const;

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem mul_alpha(const Elem& a) const;
    /// Multiplies by an element of O_K.
    Elem scale(const Elem& a, const OKRing::Vec& c) const;

    /// v_alpha as min_i(n v_pi(a_i) + i); nullopt when a is zero modulo p^N.
    Valuation valuation(const Elem& a) const;
    /// Residue of a / alpha^v, where v <= valuation(a).
    ResidueElem residue_at(const Elem& a, long v) const;

private:
    OKRing R_;
    long n_;
    int d_;
    std::vector<OKRing::Vec> psi_;  // psi_0..psi_{n-1}
    ResidueElem psi01_;
    ResidueElem inv_unit_;          // (-psi_{0,1})^{-1}
};

/// Default alpha-digit precision for counting roots of phi in the field of psi.
long default_alpha_precision(const LocalField& K, const DigitPoly& phi, const DigitPoly& psi);

struct RootCountOptions {
    /// Alpha-digit precision; 0 selects the default.
    long precision = 0;
    int retries = 3;
    /// Stop counting once this many roots are found (0 for no limit).
    std::uint64_t limit = 0;
};

/// Number of roots of phi in K[x]/(psi); both Eisenstein of the same degree.
std::uint64_t count_roots(const LocalField& K, const DigitPoly& phi, const DigitPoly& psi, RootCountOptions opt = {});

/// One attempt at a fixed ring; throws InsufficientPrecision.
std::uint64_t count_roots_in(const ExtRing& L, const DigitPoly& phi, std::uint64_t limit = 0);

bool same_extension(const LocalField& K, const DigitPoly& phi, const DigitPoly& psi);

/// Number of roots of phi in its own field, i.e. #Aut(L/K).
std::uint64_t aut_count(const LocalField& K, const DigitPoly& phi);

struct FilterResult {
    std::vector<std::size_t> kept;       // indices into the input, in stream order
    std::vector<std::size_t> merged_to;  // merged_to[i] = index of the kept representative of input i
    std::vector<std::uint64_t> aut;      // aut_count of every input polynomial
};

/**
 * Keeps the first polynomial of each isomorphism class in stream order.
 * Inputs must share polygon, residual invariant and delta_0.
 */
FilterResult filter_minimal(const LocalField& K, const std::vector<DigitPoly>& F, int jobs = 1);

}  // namespace ramify
