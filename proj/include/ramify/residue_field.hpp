#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ramify {

/**
 * Element of F_q = F_p(gamma), stored as the integer sum coords[i] * p^i.
 * Comparing codes gives the lexicographic order on coordinates with the
 * most significant coordinate last.
 */
struct ResidueElem {
    std::uint32_t code = 0;

    bool is_zero() const { return code == 0; }
    friend bool operator==(ResidueElem, ResidueElem) = default;
    friend auto operator<=>(ResidueElem, ResidueElem) = default;
};

/// Finite field F_p[y]/(g) with g monic irreducible of degree f.
class ResidueField {
public:
    /// modulus holds c_0..c_f of a monic polynomial over F_p.
    ResidueField(int p, std::vector<int> modulus);
    static ResidueField prime(int p);

    int p() const { return p_; }
    int degree() const { return f_; }
    std::uint32_t order() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    ResidueElem zero() const { return {}; }
    ResidueElem one() const { return {1}; }
    ResidueElem from_int(long long m) const;
    ResidueElem from_coords(const std::vector<int>& coords) const;
    std::vector<int> coords(ResidueElem a) const;

    ResidueElem add(ResidueElem a, ResidueElem b) const;
    ResidueElem sub(ResidueElem a, ResidueElem b) const;
    ResidueElem neg(ResidueElem a) const;
    ResidueElem mul(ResidueElem a, ResidueElem b) const;
    ResidueElem inv(ResidueElem a) const;
    /// Negative exponents are allowed for nonzero a.
    ResidueElem pow(ResidueElem a, long long e) const;

    /// All q elements in increasing order.
    std::vector<ResidueElem> elements() const;
    std::vector<ResidueElem> units() const;

    /// "2" over a prime field, "g+1" style otherwise.
    std::string to_string(ResidueElem a) const;

    friend bool operator==(const ResidueField& a, const ResidueField& b) {
        return a.p_ == b.p_ && a.modulus_ == b.modulus_;
    }

private:
    ResidueElem mul_slow(ResidueElem a, ResidueElem b) const;
    void check(ResidueElem a) const;

    int p_;
    int f_;
    std::uint32_t q_;
    std::vector<int> modulus_;
    // log/exp tables for small fields; empty otherwise
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> exp_;
};

/// One representative per coset of F_q^x / (F_q^x)^n, smallest first.
std::vector<ResidueElem> nth_power_class_reps(const ResidueField& F, long long n);

/// All delta in F_q^x with delta^n = 1, in increasing order.
std::vector<ResidueElem> unity_roots(const ResidueField& F, long long n);

/// Additive polynomial sum_s c_s x^{p^s}, keyed by s.
struct AdditiveMap {
    std::map<int, ResidueElem> terms;

    ResidueElem eval(const ResidueField& F, ResidueElem x) const;
};

struct AdditiveAnalysis {
    std::vector<ResidueElem> image_basis;
    std::vector<ResidueElem> cokernel_reps;
    std::uint64_t kernel_size = 1;
    bool surjective = true;
};

AdditiveAnalysis additive_map_analysis(const AdditiveMap& T, const ResidueField& F);

}  // namespace ramify
