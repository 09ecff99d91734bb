#include "ramify/serialization.hpp"

#include <fstream>
#include <regex>
#include <stdexcept>

namespace ramify {

LocalField field_from_json(const json& j) {
    try {
        int p = j.at("p").get<int>();
        std::vector<int> unram;
        std::vector<std::vector<std::vector<int>>> eis;
        if (j.contains("unramified")) unram = j.at("unramified").get<std::vector<int>>();
        if (j.contains("eisenstein")) eis = j.at("eisenstein").get<std::vector<std::vector<std::vector<int>>>>();
        return LocalField(p, unram, eis);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed field config: ") + e.what());
    }
}

json field_to_json(const LocalField& K) {
    json j = {{"p", K.p()}};
    if (K.f() > 1) j["unramified"] = K.unram_modulus();
    if (K.e() > 1) j["eisenstein"] = K.eisenstein_digits();
    return j;
}

LocalField load_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open field config " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("cannot parse field config " + path + ": " + e.what());
    }
    return field_from_json(j);
}

json elem_to_json(const LocalField& K, ResidueElem a) { return K.residue_field().coords(a); }

ResidueElem elem_from_json(const LocalField& K, const json& j) {
    const ResidueField& F = K.residue_field();
    if (j.is_number_integer()) return F.from_int(j.get<long long>());
    auto c = j.get<std::vector<int>>();
    if (static_cast<int>(c.size()) > F.degree()) throw std::invalid_argument("residue coordinates too long");
    for (int x : c)
        if (x < 0 || x >= K.p()) throw std::invalid_argument("residue coordinate out of range");
    c.resize(F.degree(), 0);
    return F.from_coords(c);
}

json polygon_to_json(const RamPolygon& R) {
    json pts = json::array();
    for (const auto& pt : R.ppower_points()) pts.push_back({pt.x, pt.J});
    return {{"n", R.n()}, {"points", pts}};
}

RamPolygon polygon_from_json(const LocalField& K, const json& j) {
    try {
        long n = j.at("n").get<long>();
        std::vector<std::pair<long, long>> pts;
        for (const auto& q : j.at("points")) pts.emplace_back(q.at(0).get<long>(), q.at(1).get<long>());
        return RamPolygon(K, n, pts);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed polygon: ") + e.what());
    }
}

RamPolygon parse_polygon(const LocalField& K, long n, const std::string& text) {
    static const std::regex point(R"(\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\))");
    std::vector<std::pair<long, long>> pts;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), point); it != std::sregex_iterator(); ++it) {
        long x = std::stol((*it)[1]), J = std::stol((*it)[2]);
        long q = 1;
        while (q < x) q *= K.p();
        if (q == x) {
            pts.emplace_back(x, J);
        } else if (J != 0) {
            throw std::invalid_argument("point (" + std::to_string(x) + "," + std::to_string(J) +
                                        ") is neither above a power of p nor horizontal");
        }
    }
    if (pts.empty()) throw std::invalid_argument("no polygon points in \"" + text + "\"");
    return RamPolygon(K, n, pts);
}

json tuple_to_json(const LocalField& K, const ResidualTuple& A) {
    json out = json::array();
    for (const auto& seg : A.segments) {
        json s = json::array();
        for (const auto& [pos, c] : seg) s.push_back({pos, elem_to_json(K, c)});
        out.push_back(s);
    }
    return out;
}

ResidualTuple tuple_from_json(const LocalField& K, const json& j) {
    ResidualTuple A;
    try {
        for (const auto& s : j) {
            std::map<long, ResidueElem> seg;
            for (const auto& q : s) seg[q.at(0).get<long>()] = elem_from_json(K, q.at(1));
            A.segments.push_back(seg);
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed residual tuple: ") + e.what());
    }
    return A;
}

json poly_to_json(const LocalField& K, const DigitPoly& phi) {
    json coeffs = json::array();
    for (const auto& row : phi.digits) {
        json r = json::array();
        for (std::size_t j = 0; j < row.size(); ++j)
            if (!row[j].is_zero()) r.push_back({j, elem_to_json(K, row[j])});
        coeffs.push_back(r);
    }
    long width = phi.digits.empty() ? 0 : static_cast<long>(phi.digits.front().size());
    return {{"n", phi.n}, {"width", width}, {"coeffs", coeffs}};
}

DigitPoly poly_from_json(const LocalField& K, const json& j) {
    DigitPoly phi;
    try {
        phi.n = j.at("n").get<long>();
        const auto& coeffs = j.at("coeffs");
        if (phi.n < 1 || static_cast<long>(coeffs.size()) != phi.n)
            throw std::invalid_argument("polynomial needs exactly n coefficient rows");
        long width = j.contains("width") ? j.at("width").get<long>() : 2;
        for (const auto& r : coeffs)
            for (const auto& d : r) width = std::max(width, d.at(0).get<long>() + 1);
        phi.digits.assign(phi.n, std::vector<ResidueElem>(width));
        for (long i = 0; i < phi.n; ++i)
            for (const auto& d : coeffs[i]) {
                long k = d.at(0).get<long>();
                if (k < 0) throw std::invalid_argument("negative digit index");
                phi.digits[i][k] = elem_from_json(K, d.at(1));
            }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed polynomial: ") + e.what());
    }
    return phi;
}

json record_to_json(const LocalField& K, const ExtensionRecord& rec) {
    json j = {{"polygon", polygon_to_json(rec.R)},
              {"invariant", tuple_to_json(K, rec.invariant)},
              {"residuals", tuple_to_json(K, rec.residuals)},
              {"delta0", elem_to_json(K, rec.delta0)},
              {"generator", poly_to_json(K, rec.generator)},
              {"aut_bound", rec.aut_bound},
              {"aut_count", rec.aut_count ? json(*rec.aut_count) : json(nullptr)},
              {"siblings_merged", rec.siblings_merged},
              {"filtered", rec.filtered}};
    if (K.is_prime_field()) j["generator_text"] = render_integer(K, rec.generator);
    return j;
}

ExtensionRecord record_from_json(const LocalField& K, const json& j) {
    try {
        ExtensionRecord rec{poly_from_json(K, j.at("generator")),
                            polygon_from_json(K, j.at("polygon")),
                            tuple_from_json(K, j.at("invariant")),
                            tuple_from_json(K, j.at("residuals")),
                            elem_from_json(K, j.at("delta0")),
                            j.at("aut_bound").get<std::uint64_t>(),
                            std::nullopt,
                            j.at("siblings_merged").get<std::uint64_t>(),
                            j.at("filtered").get<bool>()};
        if (!j.at("aut_count").is_null()) rec.aut_count = j.at("aut_count").get<std::uint64_t>();
        return rec;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed record: ") + e.what());
    }
}

}  // namespace ramify
