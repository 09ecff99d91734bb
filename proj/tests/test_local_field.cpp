#include <catch2/catch_amalgamated.hpp>

#include "ramify/local_field.hpp"
#include "support.hpp"

using namespace ramify;

TEST_CASE("pi-adic valuation of integers") {
    CHECK(LocalField::rational(3).vpi_int(9) == 2);
    CHECK(support::q3r2().vpi_int(3) == 2);
    CHECK(support::q2u2().vpi_int(12) == 2);
    CHECK(LocalField::rational(3).vpi_int(7) == 0);
    CHECK_FALSE(LocalField::rational(3).vpi_int(0).has_value());
}

TEST_CASE("pi-adic valuation of binomials") {
    CHECK(LocalField::rational(3).vpi_binom(9, 3) == 1);
    CHECK(LocalField::rational(3).vpi_binom(9, 9) == 0);
    CHECK(LocalField::rational(5).vpi_binom(15, 10) == 0);
    CHECK(support::q3r2().vpi_binom(9, 3) == 2);
    CHECK_THROWS(LocalField::rational(3).vpi_binom(9, 10));
    CHECK_THROWS(LocalField::rational(3).vpi_binom(9, -1));
}

TEST_CASE("non-Eisenstein tower step is rejected") {
    CHECK_THROWS(LocalField(3, {}, {{{1}}, {{0}}, {{1}}}));
    CHECK_THROWS(LocalField(3, {}, {{{0}, {0}, {1}}, {{0}}, {{1}}}));
}

TEST_CASE("digit arithmetic with carries over Q3") {
    auto K = LocalField::rational(3);
    auto F = K.residue_field();
    OKElem a{{F.from_int(1), F.from_int(1), F.zero()}, 3};
    OKElem b{{F.from_int(2), F.from_int(2), F.zero()}, 3};
    auto s = ok_arith(K, a, b, OKOp::add);
    // 4 + 8 = 12 = 110 in base 3
    CHECK(s.digits == std::vector<ResidueElem>{F.zero(), F.one(), F.one()});
    CHECK(s.valuation() == 1);
    auto d = ok_arith(K, s, a, OKOp::sub);
    CHECK(d.digits == b.digits);
}

TEST_CASE("uniformizer squared in a ramified quadratic base") {
    auto K = support::q3r2();
    auto F = K.residue_field();
    OKElem pi{{F.zero(), F.one(), F.zero(), F.zero()}, 4};
    auto sq = ok_arith(K, pi, pi, OKOp::mul);
    CHECK(sq.digits == std::vector<ResidueElem>{F.zero(), F.zero(), F.one(), F.zero()});
    CHECK(sq.valuation() == 2);
    CHECK(ok_from_int(K, 3, 4).valuation() == 2);
}

TEST_CASE("unramified multiplication lifts residue multiplication") {
    auto K = support::q2u2();
    auto F = K.residue_field();
    auto g = F.from_coords({0, 1});
    auto sq = ok_arith(K, ok_lift(K, g, 3), ok_lift(K, g, 3), OKOp::mul);
    CHECK(ok_residue(sq) == F.from_coords({1, 1}));
    CHECK(sq.valuation() == 0);
}

TEST_CASE("residue and lift") {
    auto K = LocalField::rational(3);
    auto F = K.residue_field();
    CHECK(ok_residue(ok_from_int(K, 4, 3)) == F.one());
    CHECK(ok_residue(ok_lift(K, F.from_int(2), 3)) == F.from_int(2));
    CHECK(ok_lift(K, F.zero(), 3).valuation() == std::nullopt);
    auto K2 = support::q2u2();
    auto g = K2.residue_field().from_coords({0, 1});
    CHECK(ok_lift(K2, g, 2).digits.front() == g);
}

TEST_CASE("OK ring inverse of a unit") {
    auto K = support::q2u2();
    OKRing R(K, 6);
    auto u = R.add(R.lift(K.residue_field().from_coords({0, 1})), R.from_int(4));
    CHECK(R.mul(u, R.inverse_unit(u)) == R.one());
    CHECK(R.valuation(R.mul_pi(u)) == 1);
}

TEST_CASE("OK ring rejects precision beyond 62 bits") { CHECK_THROWS(OKRing(LocalField::rational(3), 40)); }
