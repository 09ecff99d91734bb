#include "ramify/residue_field.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ramify {

namespace {

using Poly = std::vector<int>;  // coefficients over F_p, low degree first

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int inv_mod(int a, int p) {
    int r = 1;
    for (int e = p - 2, b = a % p; e > 0; e >>= 1, b = b * b % p)
        if (e & 1) r = r * b % p;
    return r;
}

Poly poly_mod(Poly a, const Poly& m, int p) {
    trim(a);
    Poly mm = m;
    trim(mm);
    int lead_inv = inv_mod(mm.back(), p);
    while (a.size() >= mm.size()) {
        int c = a.back() * lead_inv % p;
        std::size_t shift = a.size() - mm.size();
        for (std::size_t i = 0; i < mm.size(); ++i)
            a[shift + i] = ((a[shift + i] - c * mm[i]) % p + p) % p;
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, int p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return poly_mod(r, m, p);
}

Poly poly_gcd(Poly a, Poly b, int p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool is_irreducible(const Poly& g, int p) {
    int f = static_cast<int>(g.size()) - 1;
    if (f <= 1) return true;
    for (int x = 0; x < p; ++x) {
        long long v = 0;
        for (int i = f; i >= 0; --i) v = (v * x + g[i]) % p;
        if (v == 0) return false;
    }
    // x^{p^k} mod g for k = 1..f/2
    Poly xp = {0, 1};
    for (int k = 1; k <= f / 2; ++k) {
        Poly r = {1};
        Poly base = xp;
        for (int e = p; e > 0; e >>= 1) {
            if (e & 1) r = poly_mulmod(r, base, g, p);
            base = poly_mulmod(base, base, g, p);
        }
        xp = r;
        Poly d = xp;
        d.resize(std::max<std::size_t>(d.size(), 2), 0);
        d[1] = (d[1] - 1 + p) % p;
        if (poly_gcd(g, d, p).size() > 1) return false;
    }
    return true;
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

ResidueField::ResidueField(int p, std::vector<int> modulus) : p_(p), modulus_(std::move(modulus)) {
    if (!is_prime(p)) throw std::invalid_argument("residue characteristic must be prime");
    if (modulus_.size() < 2) throw std::invalid_argument("modulus must have degree >= 1");
    for (int& c : modulus_) c = ((c % p) + p) % p;
    if (modulus_.back() != 1) throw std::invalid_argument("modulus must be monic");
    f_ = static_cast<int>(modulus_.size()) - 1;
    unsigned long long q = 1;
    for (int i = 0; i < f_; ++i) {
        q *= static_cast<unsigned long long>(p);
        if (q > (1ULL << 32)) throw std::invalid_argument("residue field too large");
    }
    q_ = static_cast<std::uint32_t>(q);
    if (!is_irreducible(modulus_, p)) throw std::invalid_argument("modulus is not irreducible");

    if (q_ <= 65536) {
        log_.assign(q_, 0);
        exp_.assign(q_, 0);
        for (std::uint32_t g = 1; g < q_; ++g) {
            ResidueElem x{1};
            std::uint32_t k = 0;
            bool primitive = true;
            for (; k < q_ - 1; ++k) {
                exp_[k] = x.code;
                x = mul_slow(x, ResidueElem{g});
                if (x.code == 1 && k + 1 < q_ - 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) break;
        }
        for (std::uint32_t k = 0; k + 1 < q_; ++k) log_[exp_[k]] = k;
    }
}

ResidueField ResidueField::prime(int p) { return ResidueField(p, {0, 1}); }

void ResidueField::check(ResidueElem a) const {
    if (a.code >= q_) throw std::invalid_argument("residue element out of range");
}

ResidueElem ResidueField::from_int(long long m) const {
    long long r = m % p_;
    if (r < 0) r += p_;
    return ResidueElem{static_cast<std::uint32_t>(r)};
}

ResidueElem ResidueField::from_coords(const std::vector<int>& c) const {
    if (static_cast<int>(c.size()) > f_) throw std::invalid_argument("too many residue coordinates");
    std::uint64_t code = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        if (c[i] < 0 || c[i] >= p_) throw std::invalid_argument("residue coordinate out of range");
        code = code * p_ + c[i];
    }
    return ResidueElem{static_cast<std::uint32_t>(code)};
}

std::vector<int> ResidueField::coords(ResidueElem a) const {
    std::vector<int> c(f_);
    std::uint32_t x = a.code;
    for (int i = 0; i < f_; ++i) {
        c[i] = static_cast<int>(x % p_);
        x /= p_;
    }
    return c;
}

ResidueElem ResidueField::add(ResidueElem a, ResidueElem b) const {
    if (f_ == 1) return ResidueElem{(a.code + b.code) % p_};
    std::uint32_t x = a.code, y = b.code, r = 0, w = 1;
    for (int i = 0; i < f_; ++i) {
        r += ((x % p_ + y % p_) % p_) * w;
        x /= p_;
        y /= p_;
        w *= p_;
    }
    return ResidueElem{r};
}

ResidueElem ResidueField::neg(ResidueElem a) const {
    std::uint32_t x = a.code, r = 0, w = 1;
    for (int i = 0; i < f_; ++i) {
        r += ((p_ - x % p_) % p_) * w;
        x /= p_;
        w *= p_;
    }
    return ResidueElem{r};
}

ResidueElem ResidueField::sub(ResidueElem a, ResidueElem b) const { return add(a, neg(b)); }

ResidueElem ResidueField::mul_slow(ResidueElem a, ResidueElem b) const {
    Poly pa = coords(a), pb = coords(b);
    trim(pa);
    trim(pb);
    Poly r = poly_mulmod(pa, pb, modulus_, p_);
    r.resize(f_, 0);
    return from_coords(r);
}

ResidueElem ResidueField::mul(ResidueElem a, ResidueElem b) const {
    if (a.is_zero() || b.is_zero()) return {};
    if (f_ == 1) return ResidueElem{static_cast<std::uint32_t>(std::uint64_t(a.code) * b.code % p_)};
    if (!log_.empty()) return ResidueElem{exp_[(log_[a.code] + log_[b.code]) % (q_ - 1)]};
    return mul_slow(a, b);
}

ResidueElem ResidueField::inv(ResidueElem a) const {
    if (a.is_zero()) throw std::domain_error("inverse of zero in residue field");
    if (!log_.empty()) return ResidueElem{exp_[(q_ - 1 - log_[a.code]) % (q_ - 1)]};
    return pow(a, static_cast<long long>(q_) - 2);
}

ResidueElem ResidueField::pow(ResidueElem a, long long e) const {
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    if (a.is_zero()) return e == 0 ? one() : zero();
    e %= static_cast<long long>(q_ - 1);
    ResidueElem r = one();
    for (; e > 0; e >>= 1, a = mul(a, a))
        if (e & 1) r = mul(r, a);
    return r;
}

std::vector<ResidueElem> ResidueField::elements() const {
    std::vector<ResidueElem> v(q_);
    for (std::uint32_t i = 0; i < q_; ++i) v[i].code = i;
    return v;
}

std::vector<ResidueElem> ResidueField::units() const {
    std::vector<ResidueElem> v(q_ - 1);
    for (std::uint32_t i = 1; i < q_; ++i) v[i - 1].code = i;
    return v;
}

std::string ResidueField::to_string(ResidueElem a) const {
    if (f_ == 1) return std::to_string(a.code);
    if (a.is_zero()) return "0";
    std::vector<int> c = coords(a);
    std::string out;
    for (int i = f_ - 1; i >= 0; --i) {
        if (c[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(c[i]);
            continue;
        }
        if (c[i] != 1) out += std::to_string(c[i]) + "*";
        out += "g";
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

std::vector<ResidueElem> nth_power_class_reps(const ResidueField& F, long long n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    std::set<std::uint32_t> powers;
    for (ResidueElem u : F.units()) powers.insert(F.pow(u, n).code);
    std::vector<bool> covered(F.order(), false);
    std::vector<ResidueElem> reps;
    for (ResidueElem u : F.units()) {
        if (covered[u.code]) continue;
        reps.push_back(u);
        for (std::uint32_t h : powers) covered[F.mul(u, ResidueElem{h}).code] = true;
    }
    return reps;
}

std::vector<ResidueElem> unity_roots(const ResidueField& F, long long n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    std::vector<ResidueElem> out;
    for (ResidueElem u : F.units())
        if (F.pow(u, n) == F.one()) out.push_back(u);
    return out;
}

ResidueElem AdditiveMap::eval(const ResidueField& F, ResidueElem x) const {
    ResidueElem r = F.zero();
    for (const auto& [s, c] : terms) {
        ResidueElem y = x;
        for (int k = 0; k < s; ++k) y = F.pow(y, F.p());
        r = F.add(r, F.mul(c, y));
    }
    return r;
}

AdditiveAnalysis additive_map_analysis(const AdditiveMap& T, const ResidueField& F) {
    const int f = F.degree(), p = F.p();
    // row-echelon basis of the image, each row with a distinct pivot coordinate
    std::vector<std::vector<int>> rows;
    std::vector<int> pivots;
    auto reduce = [&](std::vector<int> v) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            int c = v[pivots[r]];
            if (c == 0) continue;
            for (int i = 0; i < f; ++i) v[i] = ((v[i] - c * rows[r][i]) % p + p) % p;
        }
        return v;
    };
    std::uint32_t basis = 1;
    for (int k = 0; k < f; ++k, basis *= p) {
        std::vector<int> v = reduce(F.coords(T.eval(F, ResidueElem{basis})));
        auto it = std::find_if(v.begin(), v.end(), [](int c) { return c != 0; });
        if (it == v.end()) continue;
        int piv = static_cast<int>(it - v.begin());
        int s = inv_mod(v[piv], p);
        for (int& c : v) c = c * s % p;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            int c = rows[r][piv];
            if (c == 0) continue;
            for (int i = 0; i < f; ++i) rows[r][i] = ((rows[r][i] - c * v[i]) % p + p) % p;
        }
        rows.push_back(v);
        pivots.push_back(piv);
    }

    AdditiveAnalysis out;
    for (const auto& r : rows) out.image_basis.push_back(F.from_coords(r));
    std::sort(out.image_basis.begin(), out.image_basis.end());
    int rank = static_cast<int>(rows.size());
    out.surjective = rank == f;
    out.kernel_size = 1;
    for (int i = rank; i < f; ++i) out.kernel_size *= static_cast<std::uint64_t>(p);

    // fully reduced vectors are canonical coset labels
    std::set<std::uint32_t> seen;
    const std::uint64_t want = out.kernel_size;
    for (ResidueElem x : F.elements()) {
        std::uint32_t label = F.from_coords(reduce(F.coords(x))).code;
        if (seen.insert(label).second) {
            out.cokernel_reps.push_back(x);
            if (out.cokernel_reps.size() == want) break;
        }
    }
    return out;
}

}  // namespace ramify
