#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ramify/extension_enumerator.hpp"
#include "ramify/root_counter.hpp"
#include "ramify/serialization.hpp"

using namespace ramify;

namespace {

constexpr int kInputError = 2;
constexpr int kOracleError = 3;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string field_path;
    int p = 3;
    long n = 0;
    std::optional<long> disc, j0;
    std::string polygon;
    std::string invariant;
    bool count_only = false;
    bool no_filter = false;
    bool with_aut = false;
    bool json_out = false;
    bool roots = false;
    int jobs = 1;
    std::string poly, poly2;
};

LocalField field_of(const Config& cfg) {
    try {
        if (!cfg.field_path.empty()) return load_field(cfg.field_path);
        return LocalField::rational(cfg.p);
    } catch (const std::exception& e) {
        throw InputError(e.what());
    }
}

std::string ore_message(const LocalField& K, long n) {
    auto range = ore_range(K, n);
    if (range.empty()) return "degree " + std::to_string(n) + " admits no totally ramified J_0 here";
    std::ostringstream s;
    s << "admissible J_0 for n=" << n << ":";
    for (long J : range) s << " " << J;
    s << " (discriminant exponents " << n + range.front() - 1 << ".." << n + range.back() - 1 << ")";
    return s.str();
}

long j0_of(const LocalField& K, const Config& cfg) {
    if (cfg.n < 1) throw InputError("degree -n must be positive");
    if (cfg.disc.has_value() == cfg.j0.has_value()) throw InputError("give exactly one of --disc and --j0");
    long J0 = cfg.j0 ? *cfg.j0 : *cfg.disc - cfg.n + 1;
    if (!in_ore_range(K, cfg.n, J0))
        throw InputError("J_0 = " + std::to_string(J0) + " is not admissible; " + ore_message(K, cfg.n));
    return J0;
}

/// The polygons selected by --polygon (index or point list), or all polygons for (n, J_0).
std::vector<RamPolygon> polygons_of(const LocalField& K, const Config& cfg) {
    const long J0 = j0_of(K, cfg);
    auto all = enumerate_polygons(K, cfg.n, J0);
    if (cfg.polygon.empty()) return all;
    bool index = cfg.polygon.find_first_not_of("0123456789") == std::string::npos;
    if (index) {
        std::size_t k = std::stoul(cfg.polygon);
        if (k >= all.size())
            throw InputError("polygon index " + cfg.polygon + " out of range (" + std::to_string(all.size()) +
                             " polygons)");
        return {all[k]};
    }
    std::optional<RamPolygon> R;
    try {
        R = parse_polygon(K, cfg.n, cfg.polygon);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    if (R->J0() != J0) throw InputError("polygon starts at J_0 = " + std::to_string(R->J0()) + ", expected " +
                                        std::to_string(J0));
    if (auto bad = validate_polygon(K, *R))
        throw InputError("invalid polygon " + R->to_string() + ": condition (" + bad->condition + ") " + bad->detail);
    return {*R};
}

DigitPoly parse_poly(const LocalField& K, const std::string& text) {
    try {
        if (!text.empty() && text.front() == '{') return poly_from_json(K, json::parse(text));
        return parse_integer_poly(K, text);
    } catch (const std::exception& e) {
        throw InputError(std::string("cannot parse polynomial: ") + e.what());
    }
}

std::string strip(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

const InvariantOrbit& select_orbit(const LocalField& K, const std::vector<InvariantOrbit>& orbits,
                                   const std::string& sel) {
    if (sel.find_first_not_of("0123456789") == std::string::npos) {
        std::size_t k = std::stoul(sel);
        if (k >= orbits.size())
            throw InputError("invariant index " + sel + " out of range (" + std::to_string(orbits.size()) +
                             " invariants)");
        return orbits[k];
    }
    for (const auto& O : orbits)
        for (const auto& A : O.members)
            if (strip(tuple_to_string(K, A)) == strip(sel)) return O;
    throw InputError("no invariant of this polygon contains " + sel);
}

std::string slope_text(const Segment& s) {
    if (s.h == 0) return "0";
    return "-" + std::to_string(s.h) + (s.e == 1 ? "" : "/" + std::to_string(s.e));
}

int cmd_polygons(const Config& cfg) {
    const LocalField K = field_of(cfg);
    const auto polys = polygons_of(K, cfg);
    for (std::size_t k = 0; k < polys.size(); ++k) {
        const RamPolygon& R = polys[k];
        if (cfg.json_out) {
            std::cout << polygon_to_json(R).dump() << "\n";
            continue;
        }
        std::cout << "[" << k << "] " << R.to_string() << "\n";
        for (const auto& s : R.segments())
            std::cout << "    segment (" << R.points()[s.left].x << "," << R.points()[s.left].J << ")-("
                      << R.points()[s.right].x << "," << R.points()[s.right].J << ") slope " << slope_text(s) << "\n";
        std::cout << "    n*phi_R(m), m=1..";
        const long M = std::max(1L, steepest_slope(R) + 1);
        std::cout << M << ":";
        for (long m = 1; m <= M; ++m) std::cout << " " << nphi(R, m);
        std::cout << "\n";
    }
    if (!cfg.json_out) std::cout << polys.size() << " polygon(s)\n";
    return 0;
}

int cmd_invariants(const Config& cfg) {
    const LocalField K = field_of(cfg);
    const auto polys = polygons_of(K, cfg);
    const ResidueField& F = K.residue_field();
    for (const auto& R : polys) {
        const auto orbits = enumerate_orbits(K, R);
        if (!cfg.json_out) std::cout << R.to_string() << ": " << orbits.size() << " invariant(s)\n";
        for (std::size_t k = 0; k < orbits.size(); ++k) {
            const auto& O = orbits[k];
            const auto reps = class_representatives(K, R, O);
            if (cfg.json_out) {
                json classes = json::array();
                for (const auto& [d0, A] : reps)
                    classes.push_back({{"delta0", elem_to_json(K, d0)}, {"residuals", tuple_to_json(K, A)}});
                std::cout << json{{"polygon", polygon_to_json(R)},
                                  {"index", k},
                                  {"invariant", tuple_to_json(K, O.canonical)},
                                  {"orbit_size", O.orbit_size},
                                  {"classes", classes}}
                                 .dump()
                          << "\n";
                continue;
            }
            std::cout << "  [" << k << "] " << tuple_to_string(K, O.canonical) << "  orbit size " << O.orbit_size
                      << "\n";
            for (const auto& [d0, A] : reps)
                std::cout << "      delta0=" << F.to_string(d0) << "  class of " << tuple_to_string(K, A)
                          << "  aut bound " << aut_upper_bound(K, R, A) << "\n";
        }
    }
    return 0;
}

int cmd_enumerate(const Config& cfg) {
    const LocalField K = field_of(cfg);
    EnumerationOptions opt;
    opt.count_only = cfg.count_only;
    opt.no_filter = cfg.no_filter;
    opt.with_aut = cfg.with_aut;
    opt.jobs = std::max(1, cfg.jobs);
    Enumeration E;
    if (cfg.polygon.empty() && cfg.invariant.empty()) {
        E = all_extensions_by_disc(K, cfg.n, j0_of(K, cfg), opt);
    } else {
        if (!cfg.invariant.empty() && cfg.polygon.empty()) throw InputError("--invariant needs --polygon");
        const auto polys = polygons_of(K, cfg);
        for (const auto& R : polys) {
            const auto orbits = enumerate_orbits(K, R);
            std::vector<const InvariantOrbit*> chosen;
            if (!cfg.invariant.empty()) {
                chosen.push_back(&select_orbit(K, orbits, cfg.invariant));
            } else {
                for (const auto& O : orbits) chosen.push_back(&O);
            }
            for (const auto* O : chosen) {
                Enumeration part = all_extensions(K, R, *O, opt);
                E.total += part.total;
                for (auto& c : part.classes) E.classes.push_back(std::move(c));
                for (auto& r : part.records) E.records.push_back(std::move(r));
            }
        }
    }
    const ResidueField& F = K.residue_field();
    if (cfg.json_out) {
        if (cfg.count_only) {
            for (const auto& c : E.classes)
                std::cout << json{{"polygon", polygon_to_json(c.R)},
                                  {"invariant", tuple_to_json(K, c.invariant)},
                                  {"residuals", tuple_to_json(K, c.residuals)},
                                  {"delta0", elem_to_json(K, c.delta0)},
                                  {"template_count", c.template_count.str()},
                                  {"guaranteed", c.guarantee.guaranteed},
                                  {"filtered", c.filtered},
                                  {"count", c.count.str()}}
                                 .dump()
                          << "\n";
            std::cout << json{{"total", E.total.str()}}.dump() << "\n";
        } else {
            for (const auto& r : E.records) std::cout << record_to_json(K, r).dump() << "\n";
        }
        return 0;
    }
    for (const auto& c : E.classes)
        std::cout << c.R.to_string() << "  " << tuple_to_string(K, c.residuals) << "  delta0=" << F.to_string(c.delta0)
                  << "  template " << c.template_count << "  "
                  << (c.guarantee.guaranteed ? "unique (" + c.guarantee.via + ")" : std::string("needs filter"))
                  << (c.filtered ? "  filtered" : "") << "  -> " << c.count << "\n";
    if (!cfg.count_only) {
        for (const auto& r : E.records) {
            std::cout << "  " << render(K, r.generator);
            if (r.aut_count) std::cout << "  aut " << *r.aut_count;
            if (r.siblings_merged > 1) std::cout << "  merged " << r.siblings_merged;
            std::cout << "\n";
        }
    }
    std::cout << "total " << E.total << "\n";
    return 0;
}

int cmd_verify(const Config& cfg) {
    const LocalField K = field_of(cfg);
    const DigitPoly phi = parse_poly(K, cfg.poly);
    if (!phi.is_eisenstein()) throw InputError("polynomial is not Eisenstein");
    const RamPolygon R = polygon_of_valuations(K, phi.valuations());
    const ResidualTuple A = residuals_of_polynomial(K, phi, R);
    const InvariantOrbit O = orbit(K, R, A);
    const ResidueField& F = K.residue_field();
    const long disc = R.n() + R.J0() - 1;
    std::optional<std::uint64_t> aut;
    if (cfg.roots) aut = aut_count(K, phi);
    const std::uint64_t bound = aut_upper_bound(K, R, A);
    if (aut && (*aut > bound || R.n() % static_cast<long>(*aut) != 0)) {
        std::cerr << "error: automorphism count " << *aut << " violates the bound " << bound << "\n";
        return kOracleError;
    }
    if (cfg.json_out) {
        json orbit_members = json::array();
        for (const auto& B : O.members) orbit_members.push_back(tuple_to_json(K, B));
        json j = {{"polygon", polygon_to_json(R)},
                  {"disc", disc},
                  {"J0", R.J0()},
                  {"residuals", tuple_to_json(K, A)},
                  {"invariant", tuple_to_json(K, O.canonical)},
                  {"orbit", orbit_members},
                  {"delta0", elem_to_json(K, phi.digit(0, 1))},
                  {"aut_bound", bound},
                  {"aut_count", aut ? json(*aut) : json(nullptr)}};
        std::cout << j.dump() << "\n";
        return 0;
    }
    std::cout << "polygon   " << R.to_string() << "\n";
    std::cout << "disc      " << disc << " (J_0 = " << R.J0() << ")\n";
    std::cout << "residuals " << tuple_to_string(K, A) << "\n";
    std::cout << "orbit     {";
    for (std::size_t k = 0; k < O.members.size(); ++k) std::cout << (k ? ", " : "") << tuple_to_string(K, O.members[k]);
    std::cout << "}\n";
    std::cout << "delta0    " << F.to_string(phi.digit(0, 1)) << "\n";
    std::cout << "aut bound " << bound << "\n";
    if (aut) std::cout << "aut count " << *aut << "\n";
    return 0;
}

int cmd_roots(const Config& cfg) {
    const LocalField K = field_of(cfg);
    const DigitPoly phi = parse_poly(K, cfg.poly);
    const DigitPoly psi = cfg.poly2.empty() ? phi : parse_poly(K, cfg.poly2);
    if (!phi.is_eisenstein() || !psi.is_eisenstein()) throw InputError("polynomials must be Eisenstein");
    if (phi.n != psi.n) throw InputError("polynomials must have the same degree");
    const std::uint64_t c = count_roots(K, phi, psi);
    if (cfg.json_out)
        std::cout << json{{"roots", c}}.dump() << "\n";
    else
        std::cout << c << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimal generating sets of totally ramified extensions of p-adic fields"};
    app.require_subcommand(1);
    Config cfg;

    auto add_field = [&](CLI::App* sub) {
        sub->add_option("--field", cfg.field_path, "Field config (JSON)")->check(CLI::ExistingFile);
        sub->add_option("-p,--prime", cfg.p, "Base prime when --field is absent")->check(CLI::Range(2, 65521));
        sub->add_flag("--json", cfg.json_out, "JSON-lines output");
    };
    auto add_degree = [&](CLI::App* sub) {
        sub->add_option("-n,--degree", cfg.n, "Extension degree")->required();
        sub->add_option("--disc", cfg.disc, "Discriminant exponent v_pi(disc)");
        sub->add_option("--j0", cfg.j0, "J_0 = disc - n + 1");
        sub->add_option("--polygon", cfg.polygon, "Polygon index or point list such as \"{(1,9),(2,6),(8,0)}\"");
    };

    auto* polygons = app.add_subcommand("polygons", "List ramification polygons");
    add_field(polygons);
    add_degree(polygons);

    auto* invariants = app.add_subcommand("invariants", "List residual invariants per polygon");
    add_field(invariants);
    add_degree(invariants);

    auto* enumerate = app.add_subcommand("enumerate", "Enumerate a minimal set of generating polynomials");
    add_field(enumerate);
    add_degree(enumerate);
    enumerate->add_option("--invariant", cfg.invariant, "Invariant index within the polygon, or a member such as \"(g+gx, g+x^6)\"");
    enumerate->add_flag("--count-only", cfg.count_only, "Only count generators");
    enumerate->add_flag("--no-filter", cfg.no_filter, "Skip root-counting filter");
    enumerate->add_flag("--with-aut", cfg.with_aut, "Compute automorphism counts for every generator");
    enumerate->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1, 1024));

    auto* verify = app.add_subcommand("verify", "Polygon and invariants of an Eisenstein polynomial");
    add_field(verify);
    verify->add_option("polynomial", cfg.poly, "Polynomial, e.g. \"x^9+6x^3+9x+3\", or digit JSON")->required();
    verify->add_flag("--roots", cfg.roots, "Count automorphisms by root counting");

    auto* roots = app.add_subcommand("roots", "Count roots of phi in K[x]/(psi)");
    add_field(roots);
    roots->add_option("phi", cfg.poly, "Polynomial whose roots are counted")->required();
    roots->add_option("psi", cfg.poly2, "Defining polynomial of the field (default: phi)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        if (polygons->parsed()) return cmd_polygons(cfg);
        if (invariants->parsed()) return cmd_invariants(cfg);
        if (enumerate->parsed()) return cmd_enumerate(cfg);
        if (verify->parsed()) return cmd_verify(cfg);
        if (roots->parsed()) return cmd_roots(cfg);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const OracleMismatch& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kOracleError;
    } catch (const InsufficientPrecision& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kOracleError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kOracleError;
    }
    return 0;
}
