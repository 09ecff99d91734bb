#include "ramify/local_field.hpp"

#include <algorithm>
#include <stdexcept>

namespace ramify {

int vp_int(long long m, int p) {
    if (m == 0) throw std::domain_error("valuation of zero");
    int v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

int base_p_carries(long long a, long long b, int p) {
    int carries = 0, carry = 0;
    while (a > 0 || b > 0 || carry > 0) {
        long long s = a % p + b % p + carry;
        carry = s >= p ? 1 : 0;
        carries += carry;
        a /= p;
        b /= p;
    }
    return carries;
}

LocalField LocalField::rational(int p) { return LocalField(p, {}, {}); }

LocalField::LocalField(int p, std::vector<int> unram, std::vector<std::vector<std::vector<int>>> eis)
    : p_(p), F_(p, unram.empty() ? std::vector<int>{0, 1} : std::move(unram)), eis_digits_(std::move(eis)) {
    if (eis_digits_.empty()) return;
    if (eis_digits_.size() < 3) throw std::invalid_argument("Eisenstein step must have degree at least 2");
    e_ = static_cast<int>(eis_digits_.size()) - 1;
    const int f = F_.degree();
    for (const auto& coeff : eis_digits_) {
        std::vector<long long> c(f, 0);
        long long pj = 1;
        for (const auto& digit : coeff) {
            if (static_cast<int>(digit.size()) > f) throw std::invalid_argument("Eisenstein digit has too many coordinates");
            for (std::size_t a = 0; a < digit.size(); ++a) {
                if (digit[a] < 0 || digit[a] >= p) throw std::invalid_argument("Eisenstein digit out of range");
                c[a] += digit[a] * pj;
            }
            if (pj > (1LL << 40)) throw std::invalid_argument("Eisenstein coefficient too long");
            pj *= p;
        }
        eis_.push_back(c);
    }
    auto vp_vec = [&](const std::vector<long long>& c) {
        int v = 1 << 20;
        for (long long x : c)
            if (x != 0) v = std::min(v, vp_int(x, p));
        return v;
    };
    std::vector<long long> lead(f, 0);
    lead[0] = 1;
    if (eis_.back() != lead) throw std::invalid_argument("Eisenstein polynomial must be monic");
    if (vp_vec(eis_[0]) != 1) throw std::invalid_argument("Eisenstein constant term must have valuation 1");
    for (int i = 1; i < e_; ++i)
        if (vp_vec(eis_[i]) < 1) throw std::invalid_argument("Eisenstein coefficient must be divisible by p");
    std::vector<int> r(f);
    for (int a = 0; a < f; ++a) r[a] = static_cast<int>((eis_[0][a] / p) % p);
    // pi^e = -c_0 - ... so p / pi^e has residue (-c_0/p)^{-1}
    eps_ = F_.inv(F_.neg(F_.from_coords(r)));
}

Valuation LocalField::vpi_int(long long m) const {
    if (m == 0) return std::nullopt;
    return static_cast<long>(e_) * vp_int(m, p_);
}

long LocalField::vpi_binom(long long n, long long k) const {
    if (k < 0 || k > n) throw std::domain_error("binomial index out of range");
    return static_cast<long>(e_) * base_p_carries(k, n - k, p_);
}

ResidueElem LocalField::unit_residue(long long m) const {
    if (m == 0) throw std::domain_error("unit part of zero");
    int k = vp_int(m, p_);
    for (int i = 0; i < k; ++i) m /= p_;
    return F_.mul(F_.from_int(m), F_.pow(eps_, k));
}

ResidueElem LocalField::binom_unit_residue(long long n, long long k) const {
    if (k < 0 || k > n) throw std::domain_error("binomial index out of range");
    // C(n,k) = prod_{i=1}^k (n-k+i)/i; multiply the prime-to-p parts
    long long num = 1, den = 1;
    int v = 0;
    for (long long i = 1; i <= k; ++i) {
        long long a = n - k + i, b = i;
        while (a % p_ == 0) {
            a /= p_;
            ++v;
        }
        while (b % p_ == 0) {
            b /= p_;
            --v;
        }
        num = num * (a % p_) % p_;
        den = den * (b % p_) % p_;
    }
    return F_.mul(F_.mul(F_.from_int(num), F_.inv(F_.from_int(den))), F_.pow(eps_, v));
}

// ---------------------------------------------------------------------------

OKRing::OKRing(const LocalField& K, int N) : K_(K), N_(N), f_(K.f()), e_(K.e()), d_(K.f() * K.e()) {
    if (N < 1) throw std::invalid_argument("precision must be positive");
    unsigned __int128 m = 1;
    for (int i = 0; i < N; ++i) {
        m *= static_cast<unsigned>(K.p());
        if (m >= (static_cast<unsigned __int128>(1) << 62)) throw std::invalid_argument("precision too large for word arithmetic");
    }
    M_ = static_cast<u64>(m);
    auto red = [&](long long x) {
        long long r = static_cast<long long>(static_cast<unsigned long long>(x < 0 ? -x : x) % M_);
        return static_cast<u64>(x < 0 && r != 0 ? static_cast<long long>(M_) - r : r);
    };
    for (int a = 0; a < f_; ++a) g_.push_back(red(K.unram_modulus()[a]));
    for (int i = 0; i < e_ && e_ > 1; ++i) {
        Vec c(f_);
        for (int a = 0; a < f_; ++a) c[a] = red(K.eisenstein_coeffs()[i][a]);
        E_.push_back(c);
    }
    table_.assign(static_cast<std::size_t>(d_) * d_ * d_, 0);
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) {
            Vec a(d_, 0), b(d_, 0);
            a[i] = 1;
            b[j] = 1;
            Vec c = slow_mul(a, b);
            for (int k = 0; k < d_; ++k) table_[(static_cast<std::size_t>(i) * d_ + j) * d_ + k] = c[k];
        }
    if (e_ == 1) {
        p_over_pi_ = one();
    } else {
        // p = -pi^e / U with U = sum (c_i/p) pi^i, so p/pi = -pi^{e-1} U^{-1}
        Vec U(d_, 0);
        for (int i = 0; i < e_; ++i)
            for (int a = 0; a < f_; ++a) U[i * f_ + a] = red(K.eisenstein_coeffs()[i][a] / K.p());
        Vec w = inverse_unit(U);
        for (int i = 0; i + 1 < e_; ++i) w = mul_pi(w);
        p_over_pi_ = neg(w);
    }
}

OKRing::Vec OKRing::one() const {
    Vec v(d_, 0);
    v[0] = 1 % M_;
    return v;
}

OKRing::Vec OKRing::from_int(long long m) const {
    Vec v(d_, 0);
    u64 r = static_cast<u64>(m < 0 ? -(m + 1) : m) % M_;
    if (m < 0) r = mod_sub(M_ - 1 - r, 0);
    v[0] = r;
    return v;
}

OKRing::Vec OKRing::lift(ResidueElem r) const {
    Vec v(d_, 0);
    std::vector<int> c = K_.residue_field().coords(r);
    for (int a = 0; a < f_; ++a) v[a] = static_cast<u64>(c[a]);
    return v;
}

OKRing::Vec OKRing::pi() const {
    if (e_ == 1) return from_int(K_.p());
    Vec v(d_, 0);
    v[f_] = 1;
    return v;
}

OKRing::Vec OKRing::ou_mul(const Vec& a, const Vec& b) const {
    std::vector<u64> c(2 * f_ - 1, 0);
    for (int i = 0; i < f_; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < f_; ++j) c[i + j] = mod_add(c[i + j], mod_mul(a[i], b[j]));
    }
    for (int t = 2 * f_ - 2; t >= f_; --t) {
        u64 x = c[t];
        if (!x) continue;
        for (int a = 0; a < f_; ++a) c[t - f_ + a] = mod_sub(c[t - f_ + a], mod_mul(x, g_[a]));
    }
    c.resize(f_);
    return c;
}

OKRing::Vec OKRing::slow_mul(const Vec& a, const Vec& b) const {
    std::vector<Vec> c(2 * e_ - 1, Vec(f_, 0));
    for (int i = 0; i < e_; ++i)
        for (int j = 0; j < e_; ++j) {
            Vec ai(a.begin() + i * f_, a.begin() + (i + 1) * f_);
            Vec bj(b.begin() + j * f_, b.begin() + (j + 1) * f_);
            Vec prod = ou_mul(ai, bj);
            for (int k = 0; k < f_; ++k) c[i + j][k] = mod_add(c[i + j][k], prod[k]);
        }
    for (int t = 2 * e_ - 2; t >= e_; --t) {
        for (int i = 0; i < e_; ++i) {
            Vec prod = ou_mul(c[t], E_[i]);
            for (int k = 0; k < f_; ++k) c[t - e_ + i][k] = mod_sub(c[t - e_ + i][k], prod[k]);
        }
    }
    Vec out(d_, 0);
    for (int i = 0; i < e_; ++i)
        for (int k = 0; k < f_; ++k) out[i * f_ + k] = c[i][k];
    return out;
}

void OKRing::add(const u64* a, const u64* b, u64* out) const {
    for (int i = 0; i < d_; ++i) out[i] = mod_add(a[i], b[i]);
}

void OKRing::sub(const u64* a, const u64* b, u64* out) const {
    for (int i = 0; i < d_; ++i) out[i] = mod_sub(a[i], b[i]);
}

void OKRing::mul(const u64* a, const u64* b, u64* out) const {
    std::fill(out, out + d_, 0);
    mul_acc(a, b, out);
}

void OKRing::mul_acc(const u64* a, const u64* b, u64* out) const {
    if (d_ == 1) {
        out[0] = mod_add(out[0], mod_mul(a[0], b[0]));
        return;
    }
    for (int i = 0; i < d_; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < d_; ++j) {
            if (!b[j]) continue;
            u64 s = mod_mul(a[i], b[j]);
            const u64* t = &table_[(static_cast<std::size_t>(i) * d_ + j) * d_];
            for (int k = 0; k < d_; ++k)
                if (t[k]) out[k] = mod_add(out[k], mod_mul(s, t[k]));
        }
    }
}

OKRing::Vec OKRing::add(const Vec& a, const Vec& b) const {
    Vec c(d_);
    add(a.data(), b.data(), c.data());
    return c;
}

OKRing::Vec OKRing::sub(const Vec& a, const Vec& b) const {
    Vec c(d_);
    sub(a.data(), b.data(), c.data());
    return c;
}

OKRing::Vec OKRing::mul(const Vec& a, const Vec& b) const {
    Vec c(d_);
    mul(a.data(), b.data(), c.data());
    return c;
}

OKRing::Vec OKRing::neg(const Vec& a) const { return sub(zero(), a); }

Valuation OKRing::valuation(const u64* a) const {
    Valuation best;
    const int p = K_.p();
    for (int b = 0; b < e_; ++b)
        for (int i = 0; i < f_; ++i) {
            u64 x = a[b * f_ + i];
            if (!x) continue;
            long v = 0;
            while (x % p == 0) {
                x /= p;
                ++v;
            }
            long w = v * e_ + b;
            if (!best || w < *best) best = w;
        }
    return best;
}

ResidueElem OKRing::leading_residue(const u64* a, long v) const {
    const int p = K_.p();
    const long b = v % e_, k = v / e_;
    u64 pk = 1;
    for (long i = 0; i < k; ++i) pk *= static_cast<u64>(p);
    std::vector<int> c(f_);
    for (int i = 0; i < f_; ++i) c[i] = static_cast<int>((a[b * f_ + i] / pk) % p);
    const ResidueField& F = K_.residue_field();
    return F.mul(F.from_coords(c), F.pow(K_.eps(), k));
}

ResidueElem OKRing::residue(const Vec& a) const {
    std::vector<int> c(f_);
    for (int i = 0; i < f_; ++i) c[i] = static_cast<int>(a[i] % K_.p());
    return K_.residue_field().from_coords(c);
}

OKRing::Vec OKRing::mul_pi(const Vec& a) const {
    if (e_ == 1) {
        Vec c(d_);
        for (int i = 0; i < d_; ++i) c[i] = mod_mul(a[i], static_cast<u64>(K_.p()));
        return c;
    }
    Vec c(d_, 0);
    for (int b = e_ - 2; b >= 0; --b)
        for (int i = 0; i < f_; ++i) c[(b + 1) * f_ + i] = a[b * f_ + i];
    Vec top(a.begin() + (e_ - 1) * f_, a.end());
    for (int i = 0; i < e_; ++i) {
        Vec prod = ou_mul(top, E_[i]);
        for (int k = 0; k < f_; ++k) c[i * f_ + k] = mod_sub(c[i * f_ + k], prod[k]);
    }
    return c;
}

OKRing::Vec OKRing::div_pi(const Vec& a) const {
    const u64 p = static_cast<u64>(K_.p());
    for (int i = 0; i < f_; ++i)
        if (a[i] % p != 0) throw std::domain_error("division by pi of a unit");
    if (e_ == 1) {
        Vec c(d_);
        for (int i = 0; i < d_; ++i) c[i] = a[i] / p;
        return c;
    }
    Vec c(d_, 0);
    for (int b = 1; b < e_; ++b)
        for (int i = 0; i < f_; ++i) c[(b - 1) * f_ + i] = a[b * f_ + i];
    Vec low(d_, 0);
    for (int i = 0; i < f_; ++i) low[i] = a[i] / p;
    return add(c, mul(low, p_over_pi_));
}

OKRing::Vec OKRing::inverse_unit(const Vec& u) const {
    Vec x = lift(K_.residue_field().inv(residue(u)));
    Vec two = from_int(2);
    for (long prec = 1; prec < 2 * pi_precision() + 2; prec *= 2) x = mul(x, sub(two, mul(u, x)));
    return x;
}

OKRing::Vec OKRing::from_digits(const std::vector<ResidueElem>& digits) const {
    Vec x = zero();
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) x = add(mul_pi(x), lift(*it));
    return x;
}

std::vector<ResidueElem> OKRing::digits(Vec a, long count) const {
    std::vector<ResidueElem> out;
    for (long j = 0; j < count; ++j) {
        ResidueElem d = residue(a);
        out.push_back(d);
        a = div_pi(sub(a, lift(d)));
    }
    return out;
}

// ---------------------------------------------------------------------------

Valuation OKElem::valuation() const {
    for (std::size_t j = 0; j < digits.size() && static_cast<long>(j) < prec; ++j)
        if (!digits[j].is_zero()) return static_cast<long>(j);
    return std::nullopt;
}

namespace {

int ring_precision(const LocalField& K, long prec) { return static_cast<int>((prec + K.e() - 1) / K.e()) + 1; }

}  // namespace

OKElem ok_arith(const LocalField& K, const OKElem& a, const OKElem& b, OKOp op) {
    long prec = std::min(a.prec, b.prec);
    OKRing R(K, ring_precision(K, prec));
    OKRing::Vec x = R.from_digits(a.digits), y = R.from_digits(b.digits), z;
    switch (op) {
        case OKOp::add: z = R.add(x, y); break;
        case OKOp::sub: z = R.sub(x, y); break;
        case OKOp::mul: z = R.mul(x, y); break;
    }
    return OKElem{R.digits(z, prec), prec};
}

ResidueElem ok_residue(const OKElem& a) { return a.digits.empty() ? ResidueElem{} : a.digits[0]; }

OKElem ok_lift(const LocalField& K, ResidueElem r, long prec) {
    std::vector<ResidueElem> d(std::max<long>(prec, 1), K.residue_field().zero());
    d[0] = r;
    d.resize(prec);
    return OKElem{d, prec};
}

OKElem ok_from_int(const LocalField& K, long long m, long prec) {
    OKRing R(K, ring_precision(K, prec));
    return OKElem{R.digits(R.from_int(m), prec), prec};
}

}  // namespace ramify
