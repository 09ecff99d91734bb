#include "ramify/root_counter.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "ramify/ram_polygon.hpp"

namespace ramify {

ExtRing::ExtRing(const LocalField& K, const DigitPoly& psi, int N)
    : R_(K, N), n_(psi.n), d_(R_.dim()) {
    if (!psi.is_eisenstein()) throw std::domain_error("defining polynomial is not Eisenstein");
    for (long i = 0; i < n_; ++i) psi_.push_back(R_.from_digits(psi.digits[i]));
    const ResidueField& F = K.residue_field();
    psi01_ = psi.digit(0, 1);
    inv_unit_ = F.inv(F.neg(psi01_));
}

ExtRing::Elem ExtRing::one() const {
    Elem z = zero();
    z[0] = 1 % R_.modulus();
    return z;
}

ExtRing::Elem ExtRing::alpha() const {
    if (n_ == 1) return embed(R_.neg(psi_[0]));
    Elem z = zero();
    z[d_] = 1 % R_.modulus();
    return z;
}

ExtRing::Elem ExtRing::embed(const OKRing::Vec& c) const {
    Elem z = zero();
    std::copy(c.begin(), c.end(), z.begin());
    return z;
}

ExtRing::Elem ExtRing::add(const Elem& a, const Elem& b) const {
    Elem z(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) z[k] = R_.mod_add(a[k], b[k]);
    return z;
}

ExtRing::Elem ExtRing::sub(const Elem& a, const Elem& b) const {
    Elem z(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) z[k] = R_.mod_sub(a[k], b[k]);
    return z;
}

ExtRing::Elem ExtRing::mul(const Elem& a, const Elem& b) const {
    const std::size_t D = d_;
    std::vector<u64> c((2 * n_ - 1) * D, 0);
    for (long i = 0; i < n_; ++i)
        for (long j = 0; j < n_; ++j) R_.mul_acc(&a[i * D], &b[j * D], &c[(i + j) * D]);
    std::vector<u64> t(D), prod(D);
    for (long k = 2 * n_ - 2; k >= n_; --k) {
        std::copy(&c[k * D], &c[k * D] + D, t.begin());
        std::fill(&c[k * D], &c[k * D] + D, 0);
        for (long i = 0; i < n_; ++i) {
            R_.mul(t.data(), psi_[i].data(), prod.data());
            R_.sub(&c[(k - n_ + i) * D], prod.data(), &c[(k - n_ + i) * D]);
        }
    }
    c.resize(n_ * D);
    return c;
}

ExtRing::Elem ExtRing::mul_alpha(const Elem& a) const {
    const std::size_t D = d_;
    Elem z = zero();
    std::copy(a.begin(), a.end() - D, z.begin() + D);
    const u64* top = &a[(n_ - 1) * D];
    std::vector<u64> prod(D);
    for (long i = 0; i < n_; ++i) {
        R_.mul(top, psi_[i].data(), prod.data());
        R_.sub(&z[i * D], prod.data(), &z[i * D]);
    }
    return z;
}

ExtRing::Elem ExtRing::scale(const Elem& a, const OKRing::Vec& c) const {
    Elem z(a.size());
    for (long i = 0; i < n_; ++i) R_.mul(&a[i * d_], c.data(), &z[i * d_]);
    return z;
}

Valuation ExtRing::valuation(const Elem& a) const {
    Valuation best;
    for (long i = 0; i < n_; ++i) {
        Valuation v = R_.valuation(&a[i * d_]);
        if (v && (!best || n_ * *v + i < *best)) best = n_ * *v + i;
    }
    return best;
}

ResidueElem ExtRing::residue_at(const Elem& a, long v) const {
    const long i = v % n_, k = v / n_;
    const ResidueField& F = R_.field().residue_field();
    ResidueElem r = R_.leading_residue(&a[i * d_], k);
    return F.mul(r, F.pow(inv_unit_, k));
}

namespace {

/// v_alpha(phi'(alpha)) for an Eisenstein phi, i.e. the different exponent.
long different_exponent(const LocalField& K, const DigitPoly& phi) {
    const auto v = phi.valuations();
    long best = -1;
    for (long i = 1; i <= phi.n; ++i) {
        if (!v[i]) continue;
        long d = phi.n * (*v[i] + *K.vpi_int(i)) + i - 1;
        if (best < 0 || d < best) best = d;
    }
    return best;
}

long alpha_precision_for(const LocalField& K, const DigitPoly& phi) {
    const long d = different_exponent(K, phi);
    const long J0 = d - phi.n + 1;
    const long c = std::max(1L, krasner_precision(K, phi.n, J0));
    return std::max(2 * d + 1, phi.n * (c + 1));
}

}  // namespace

long default_alpha_precision(const LocalField& K, const DigitPoly& phi, const DigitPoly& psi) {
    return std::max(alpha_precision_for(K, phi), alpha_precision_for(K, psi));
}

std::uint64_t count_roots_in(const ExtRing& L, const DigitPoly& phi, std::uint64_t limit) {
    if (phi.n != L.n()) throw std::domain_error("polynomial degree differs from the extension degree");
    const OKRing& R = L.base();
    const ResidueField& F = R.field().residue_field();
    const long n = phi.n;
    const auto elements = F.elements();

    std::vector<std::vector<ExtRing::Elem>> work;
    {
        std::vector<ExtRing::Elem> g;
        for (long i = 0; i < n; ++i) g.push_back(L.embed(R.from_digits(phi.digits[i])));
        g.push_back(L.one());
        work.push_back(std::move(g));
    }
    std::uint64_t count = 0;
    while (!work.empty()) {
        std::vector<ExtRing::Elem> g = std::move(work.back());
        work.pop_back();
        std::vector<Valuation> vals(g.size());
        Valuation content;
        for (std::size_t i = 0; i < g.size(); ++i) {
            vals[i] = L.valuation(g[i]);
            if (vals[i] && (!content || *vals[i] < *content)) content = vals[i];
        }
        if (!content) throw InsufficientPrecision("root search exhausted the working precision");
        std::vector<ResidueElem> r(g.size());
        long deg = 0;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (vals[i] == content) {
                r[i] = L.residue_at(g[i], *content);
                deg = static_cast<long>(i);
            }
        if (deg == 0) continue;
        for (ResidueElem t : elements) {
            ResidueElem val{}, der{};
            for (long i = deg; i >= 0; --i) val = F.add(F.mul(val, t), r[i]);
            for (long i = deg; i >= 1; --i) der = F.add(F.mul(der, t), F.mul(F.from_int(i), r[i]));
            if (!val.is_zero()) continue;
            if (!der.is_zero()) {
                if (++count == limit) return count;
                continue;
            }
            // g(t^ + alpha x): Taylor shift by the lift, then scale x^i by alpha^i
            std::vector<ExtRing::Elem> h = g;
            const OKRing::Vec lift = R.lift(t);
            if (!t.is_zero())
                for (long k = 0; k + 1 < static_cast<long>(h.size()); ++k)
                    for (long i = static_cast<long>(h.size()) - 2; i >= k; --i) h[i] = L.add(h[i], L.scale(h[i + 1], lift));
            for (std::size_t i = 1; i < h.size(); ++i)
                for (std::size_t k = 0; k < i; ++k) h[i] = L.mul_alpha(h[i]);
            work.push_back(std::move(h));
        }
    }
    return count;
}

std::uint64_t count_roots(const LocalField& K, const DigitPoly& phi, const DigitPoly& psi, RootCountOptions opt) {
    if (!phi.is_eisenstein() || !psi.is_eisenstein()) throw std::domain_error("polynomials must be Eisenstein");
    if (phi.n != psi.n) throw std::domain_error("polynomials must have the same degree");
    long P = opt.precision > 0 ? opt.precision : default_alpha_precision(K, phi, psi);
    const long unit = phi.n * K.e();
    int N = static_cast<int>((P + unit - 1) / unit) + 1;
    for (int attempt = 0;; ++attempt) {
        std::optional<ExtRing> L;
        try {
            L.emplace(K, psi, N);
        } catch (const std::invalid_argument&) {
            throw InsufficientPrecision("required precision exceeds word arithmetic");
        }
        try {
            return count_roots_in(*L, phi, opt.limit);
        } catch (const InsufficientPrecision&) {
            if (attempt >= opt.retries) throw;
            N *= 2;
        }
    }
}

bool same_extension(const LocalField& K, const DigitPoly& phi, const DigitPoly& psi) {
    RootCountOptions opt;
    opt.limit = 1;
    return count_roots(K, phi, psi, opt) > 0;
}

std::uint64_t aut_count(const LocalField& K, const DigitPoly& phi) { return count_roots(K, phi, phi); }

FilterResult filter_minimal(const LocalField& K, const std::vector<DigitPoly>& F, int jobs) {
    FilterResult out;
    out.aut.assign(F.size(), 0);
    out.merged_to.assign(F.size(), 0);
    jobs = std::max(1, jobs);
    {
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_lock;
        auto worker = [&] {
            for (std::size_t i; (i = next++) < F.size();) {
                try {
                    out.aut[i] = aut_count(K, F[i]);
                } catch (...) {
                    std::lock_guard<std::mutex> g(error_lock);
                    if (!error) error = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
    }
    for (std::size_t i = 0; i < F.size(); ++i) {
        bool merged = false;
        for (std::size_t k : out.kept) {
            // isomorphic fields have the same number of automorphisms
            if (out.aut[k] != out.aut[i]) continue;
            if (same_extension(K, F[i], F[k])) {
                out.merged_to[i] = k;
                merged = true;
                break;
            }
        }
        if (!merged) {
            out.merged_to[i] = i;
            out.kept.push_back(i);
        }
    }
    return out;
}

}  // namespace ramify
