#include "ramify/digit_poly.hpp"

#include <cctype>
#include <map>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace ramify {

using boost::multiprecision::cpp_int;

ResidueElem DigitPoly::digit(long i, long j) const {
    if (i < 0 || i >= n) return {};
    const auto& row = digits[i];
    if (j < 0 || j >= static_cast<long>(row.size())) return {};
    return row[j];
}

std::vector<Valuation> DigitPoly::valuations() const {
    std::vector<Valuation> v(n + 1);
    v[n] = 0;
    for (long i = 0; i < n; ++i)
        for (std::size_t j = 0; j < digits[i].size(); ++j)
            if (!digits[i][j].is_zero()) {
                v[i] = static_cast<long>(j);
                break;
            }
    return v;
}

bool DigitPoly::is_eisenstein() const {
    if (n < 1) return false;
    auto v = valuations();
    if (!v[0] || *v[0] != 1) return false;
    for (long i = 1; i < n; ++i)
        if (v[i] && *v[i] < 1) return false;
    return true;
}

std::string render_integer(const LocalField& K, const DigitPoly& phi) {
    if (!K.is_prime_field()) throw std::domain_error("integer rendering needs K = Q_p");
    std::string out = "x^" + std::to_string(phi.n);
    if (phi.n == 1) out = "x";
    for (long i = phi.n - 1; i >= 0; --i) {
        cpp_int c = 0, pj = 1;
        for (const auto& d : phi.digits[i]) {
            c += pj * d.code;
            pj *= K.p();
        }
        if (c == 0) continue;
        out += "+";
        if (i == 0 || c != 1) out += c.str();
        if (i >= 1) out += "x";
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
}

std::string render(const LocalField& K, const DigitPoly& phi) {
    if (K.is_prime_field()) return render_integer(K, phi);
    const ResidueField& F = K.residue_field();
    std::string out = phi.n == 1 ? "x" : "x^" + std::to_string(phi.n);
    for (long i = phi.n - 1; i >= 0; --i) {
        std::string c;
        for (std::size_t j = 0; j < phi.digits[i].size(); ++j) {
            ResidueElem d = phi.digits[i][j];
            if (d.is_zero()) continue;
            std::string t = F.to_string(d);
            if (t.find('+') != std::string::npos) t = "(" + t + ")";
            std::string pj = j == 0 ? "" : (j == 1 ? "pi" : "pi^" + std::to_string(j));
            if (!pj.empty()) t = t == "1" ? pj : t + "*" + pj;
            c += (c.empty() ? "" : "+") + t;
        }
        if (c.empty()) continue;
        out += "+";
        if (i == 0) {
            out += c;
            continue;
        }
        out += "(" + c + ")x";
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
}

std::vector<OKRing::Vec> to_ring(const OKRing& R, const DigitPoly& phi) {
    std::vector<OKRing::Vec> out;
    for (long i = 0; i < phi.n; ++i) out.push_back(R.from_digits(phi.digits[i]));
    out.push_back(R.one());
    return out;
}

DigitPoly parse_integer_poly(const LocalField& K, const std::string& text, long width) {
    if (!K.is_prime_field()) throw std::domain_error("integer polynomials need K = Q_p");
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty polynomial");
    std::map<long, cpp_int> coeffs;
    std::size_t i = 0;
    auto digits_at = [&](std::size_t& k) {
        std::size_t start = k;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        return s.substr(start, k - start);
    };
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            throw std::invalid_argument("expected + or - at position " + std::to_string(i));
        }
        std::string num = digits_at(i);
        cpp_int c = num.empty() ? cpp_int(1) : cpp_int(num);
        long e = 0;
        if (i < s.size() && s[i] == '*') {
            if (num.empty()) throw std::invalid_argument("dangling *");
            ++i;
        }
        if (i < s.size() && s[i] == 'x') {
            ++i;
            e = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string ex = digits_at(i);
                if (ex.empty()) throw std::invalid_argument("missing exponent");
                e = std::stol(ex);
            }
        } else if (num.empty()) {
            throw std::invalid_argument("malformed term at position " + std::to_string(i));
        }
        coeffs[e] += sign * c;
    }
    for (auto it = coeffs.begin(); it != coeffs.end();)
        it = it->second == 0 ? coeffs.erase(it) : std::next(it);
    if (coeffs.empty()) throw std::invalid_argument("zero polynomial");
    const long n = coeffs.rbegin()->first;
    if (n < 1 || coeffs.rbegin()->second != 1) throw std::invalid_argument("polynomial must be monic of positive degree");

    const int p = K.p();
    if (width <= 0) {
        width = 1;
        bool negative = false;
        for (const auto& [e, c] : coeffs) {
            if (c < 0) negative = true;
            cpp_int a = abs(c);
            long len = 0;
            while (a > 0) {
                a /= p;
                ++len;
            }
            width = std::max(width, len + 1);
        }
        if (negative) {
            long w = 0;
            for (cpp_int pw = 1; pw < (cpp_int(1) << 64); pw *= p) ++w;
            width = std::max(width, w);
        }
    }
    cpp_int mod = 1;
    for (long k = 0; k < width; ++k) mod *= p;
    DigitPoly phi;
    phi.n = n;
    phi.digits.assign(n, std::vector<ResidueElem>(width));
    for (const auto& [e, c0] : coeffs) {
        if (e == n) continue;
        cpp_int c = ((c0 % mod) + mod) % mod;
        for (long k = 0; k < width; ++k) {
            phi.digits[e][k] = ResidueElem{static_cast<std::uint32_t>(c % p)};
            c /= p;
        }
    }
    return phi;
}

}  // namespace ramify
