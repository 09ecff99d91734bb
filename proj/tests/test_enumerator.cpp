#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "ramify/extension_enumerator.hpp"
#include "ramify/root_counter.hpp"
#include "support.hpp"

using namespace ramify;
using support::polygon;
using support::tuple;

TEST_CASE("orbit of the running example gives 18 generators") {
    auto K = LocalField::rational(3);
    auto R = polygon(K, 9, {{1, 10}, {3, 3}, {9, 0}});
    auto O = orbit(K, R, tuple(K, {{{0, 1}, {1, 2}}, {{0, 2}, {3, 1}}}));
    auto E = all_extensions(K, R, O);
    CHECK(E.records.size() == 18);
    CHECK(E.total == 18);
    CHECK(E.classes.size() == 2);
    for (const auto& c : E.classes) {
        CHECK(c.guarantee.guaranteed);
        CHECK_FALSE(c.filtered);
    }
}

TEST_CASE("orbit of the steep polygon keeps the x^2-free generators") {
    auto K = LocalField::rational(3);
    auto R = polygon(K, 9, {{1, 10}, {3, 6}, {9, 0}});
    auto O = orbit(K, R, tuple(K, {{{0, 2}, {2, 2}}, {{0, 2}, {6, 1}}}));
    auto E = all_extensions(K, R, O);
    std::set<std::string> gens;
    for (const auto& r : E.records) {
        gens.insert(render_integer(K, r.generator));
        CHECK(r.filtered);
        REQUIRE(r.aut_count.has_value());
        CHECK(*r.aut_count <= r.aut_bound);
    }
    CHECK(gens.count("x^9+6x^6+18x+12") == 1);
    CHECK(gens.count("x^9+6x^6+18x+21") == 1);
}

TEST_CASE("degree-15 orbit over Q5 gives 125 generators") {
    auto K = LocalField::rational(5);
    auto R = polygon(K, 15, {{1, 15}, {5, 0}});
    auto orbits = enumerate_orbits(K, R);
    REQUIRE(orbits.size() == 1);
    auto E = all_extensions(K, R, orbits[0]);
    CHECK(E.records.size() == 125);
}

TEST_CASE("counts by discriminant") {
    auto K = LocalField::rational(3);
    CHECK(all_extensions_by_disc(K, 9, 1).total == 2);
    CHECK(all_extensions_by_disc(K, 9, 1).records.size() == 2);
    CHECK_THROWS_AS(all_extensions_by_disc(K, 9, 19), std::invalid_argument);
}

TEST_CASE("count-only agrees with materialization when no filter runs") {
    auto K = LocalField::rational(2);
    for (long J0 : ore_range(K, 4)) {
        EnumerationOptions co;
        co.count_only = true;
        auto full = all_extensions_by_disc(K, 4, J0);
        auto cnt = all_extensions_by_disc(K, 4, J0, co);
        INFO("J0=" << J0);
        CHECK(cnt.records.empty());
        CHECK(cnt.total >= full.total);
        bool all_guaranteed = true;
        for (const auto& c : full.classes) all_guaranteed = all_guaranteed && c.guarantee.guaranteed;
        if (all_guaranteed) CHECK(cnt.total == full.total);
        CHECK(full.total == full.records.size());
    }
}

TEST_CASE("parallel and sequential enumeration agree") {
    auto K = LocalField::rational(3);
    EnumerationOptions par;
    par.jobs = 4;
    auto a = all_extensions_by_disc(K, 9, 13);
    auto b = all_extensions_by_disc(K, 9, 13, par);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) CHECK(a.records[i].generator == b.records[i].generator);
}

TEST_CASE("summary rows") {
    auto K = LocalField::rational(3);
    CHECK(summarize(K, {}).empty());
    auto E = all_extensions_by_disc(K, 9, 14);
    std::uint64_t sum = 0;
    for (const auto& row : summarize(K, E.records)) sum += row.count;
    CHECK(sum == E.records.size());
    CHECK(E.total == 96);
}

TEST_CASE("records from different classes are not isomorphic") {
    auto K = LocalField::rational(3);
    auto E = all_extensions_by_disc(K, 9, 10);
    for (std::size_t i = 0; i < E.records.size(); i += 3)
        for (std::size_t j = i + 1; j < E.records.size(); j += 5)
            CHECK_FALSE(same_extension(K, E.records[i].generator, E.records[j].generator));
}
