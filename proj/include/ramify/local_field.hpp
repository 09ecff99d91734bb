#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ramify/residue_field.hpp"

namespace ramify {

/// A valuation; std::nullopt stands for +infinity (the valuation of zero).
using Valuation = std::optional<long>;

/**
 * Base field K: Q_p, optionally followed by one unramified step of degree f
 * and then one Eisenstein step of degree e over the unramified field.
 * The uniformizer pi is p when there is no Eisenstein step.
 */
class LocalField {
public:
    static LocalField rational(int p);

    /**
     * unram: coefficients c_0..c_f of the residue field modulus (empty for f = 1).
     * eis: coefficients c_0..c_e of the Eisenstein polynomial, each given as a
     * digit array (digit j is the coordinate vector of the coefficient of p^j).
     * Empty for e = 1.
     */
    LocalField(int p, std::vector<int> unram, std::vector<std::vector<std::vector<int>>> eis);

    int p() const { return p_; }
    int f() const { return F_.degree(); }
    int e() const { return e_; }
    const ResidueField& residue_field() const { return F_; }
    bool is_prime_field() const { return f() == 1 && e_ == 1; }

    /// Coordinates (over 1, y, ..., y^{f-1}) of the Eisenstein coefficients c_0..c_e as exact integers.
    const std::vector<std::vector<long long>>& eisenstein_coeffs() const { return eis_; }
    const std::vector<std::vector<std::vector<int>>>& eisenstein_digits() const { return eis_digits_; }
    const std::vector<int>& unram_modulus() const { return F_.modulus(); }

    Valuation vpi_int(long long m) const;
    /// v_pi of the binomial coefficient C(n, k) by counting base-p carries.
    long vpi_binom(long long n, long long k) const;
    /// Residue class of m / pi^{v_pi(m)} for m != 0.
    ResidueElem unit_residue(long long m) const;
    /// Residue class of C(n,k) / pi^{v_pi(C(n,k))} for 0 <= k <= n.
    ResidueElem binom_unit_residue(long long n, long long k) const;
    /// Residue class of p / pi^e.
    ResidueElem eps() const { return eps_; }

    friend bool operator==(const LocalField& a, const LocalField& b) {
        return a.F_ == b.F_ && a.eis_ == b.eis_;
    }

private:
    int p_;
    int e_ = 1;
    ResidueField F_;
    std::vector<std::vector<long long>> eis_;
    std::vector<std::vector<std::vector<int>>> eis_digits_;
    ResidueElem eps_{1};
};

/// Exponent of p in m (m != 0).
int vp_int(long long m, int p);
/// Number of carries when adding a and b in base p.
int base_p_carries(long long a, long long b, int p);

/**
 * O_K modulo p^N. Elements are flat coordinate arrays over the basis
 * y^a pi^b (index b*f + a), entries reduced modulo p^N.
 */
class OKRing {
public:
    using u64 = std::uint64_t;
    using Vec = std::vector<u64>;

    OKRing(const LocalField& K, int N);

    const LocalField& field() const { return K_; }
    int N() const { return N_; }
    u64 modulus() const { return M_; }
    int dim() const { return d_; }
    /// Number of pi-adic digits an element carries.
    long pi_precision() const { return static_cast<long>(K_.e()) * N_; }

    Vec zero() const { return Vec(d_, 0); }
    Vec one() const;
    Vec from_int(long long m) const;
    Vec lift(ResidueElem r) const;
    Vec pi() const;

    u64 mod_add(u64 a, u64 b) const { u64 s = a + b; return s >= M_ ? s - M_ : s; }
    u64 mod_sub(u64 a, u64 b) const { return a >= b ? a - b : a + M_ - b; }
    u64 mod_mul(u64 a, u64 b) const {
        return static_cast<u64>(static_cast<unsigned __int128>(a) * b % M_);
    }

    void add(const u64* a, const u64* b, u64* out) const;
    void sub(const u64* a, const u64* b, u64* out) const;
    /// out may not alias a or b.
    void mul(const u64* a, const u64* b, u64* out) const;
    /// out += a * b; out may not alias a or b.
    void mul_acc(const u64* a, const u64* b, u64* out) const;

    Vec add(const Vec& a, const Vec& b) const;
    Vec sub(const Vec& a, const Vec& b) const;
    Vec mul(const Vec& a, const Vec& b) const;
    Vec neg(const Vec& a) const;

    /// nullopt when the element is zero modulo p^N.
    Valuation valuation(const u64* a) const;
    Valuation valuation(const Vec& a) const { return valuation(a.data()); }
    /// Residue of a / pi^v where v is the valuation of a.
    ResidueElem leading_residue(const u64* a, long v) const;
    ResidueElem residue(const Vec& a) const;

    Vec mul_pi(const Vec& a) const;
    /// Requires valuation(a) >= 1; the top p-adic digit of the result is lost.
    Vec div_pi(const Vec& a) const;
    Vec inverse_unit(const Vec& u) const;

    Vec from_digits(const std::vector<ResidueElem>& digits) const;
    std::vector<ResidueElem> digits(Vec a, long count) const;

private:
    Vec slow_mul(const Vec& a, const Vec& b) const;
    Vec ou_mul(const Vec& a, const Vec& b) const;

    LocalField K_;
    int N_;
    u64 M_;
    int f_, e_, d_;
    Vec g_;                     // lifted residue modulus, coefficients c_0..c_{f-1}
    std::vector<Vec> E_;        // Eisenstein coefficients E_0..E_{e-1} in O_U
    std::vector<u64> table_;    // d*d*d structure constants
    Vec p_over_pi_;
};

/// Element of O_K as a truncated pi-adic digit expansion.
struct OKElem {
    std::vector<ResidueElem> digits;
    long prec = 0;

    Valuation valuation() const;
};

enum class OKOp { add, sub, mul };

OKElem ok_arith(const LocalField& K, const OKElem& a, const OKElem& b, OKOp op);
ResidueElem ok_residue(const OKElem& a);
OKElem ok_lift(const LocalField& K, ResidueElem r, long prec);
OKElem ok_from_int(const LocalField& K, long long m, long prec);

}  // namespace ramify
