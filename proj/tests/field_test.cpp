#include <doctest.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "pdss/field.hpp"

using pdss::Fe;
using pdss::Field;

namespace {

// Deterministic draw helper for the axiom sweeps.
struct Draw {
    std::mt19937_64 g{12345};
    Fe element(const Field& f) { return static_cast<Fe>(g() % f.order()); }
};

std::vector<Field> representative_fields() {
    return {
        Field::prime(2),   Field::prime(3),   Field::prime(5),    Field::prime(7),
        Field::prime(13),  Field::prime(251), Field::prime(65521), Field::binary(2),
        Field::binary(3),  Field::binary(4),  Field::binary(8),   Field::binary(16),
    };
}

}  // namespace

TEST_CASE("parse accepts canonical and spaced forms") {
    CHECK(Field::parse("gf(2)") == Field::prime(2));
    CHECK(Field::parse("GF(7)") == Field::prime(7));
    CHECK(Field::parse(" gf( 16 ) ") == Field::binary(4));
    CHECK(Field::parse("gf(65536)") == Field::binary(16));
    CHECK(Field::parse("gf(65521)") == Field::prime(65521));
}

TEST_CASE("parse rejects non-prime-power and oversized orders") {
    CHECK_THROWS_AS(Field::parse("gf(0)"), std::invalid_argument);
    CHECK_THROWS_AS(Field::parse("gf(1)"), std::invalid_argument);
    CHECK_THROWS_AS(Field::parse("gf(6)"), std::invalid_argument);
    CHECK_THROWS_AS(Field::parse("gf(9)"), std::invalid_argument);   // odd prime power
    CHECK_THROWS_AS(Field::parse("gf(12)"), std::invalid_argument);
    CHECK_THROWS_AS(Field::parse("gf(65537)"), std::invalid_argument);  // prime, too large
    CHECK_THROWS_AS(Field::parse("gf(131072)"), std::invalid_argument);
    CHECK_THROWS_AS(Field::parse("gf()"), std::invalid_argument);
    CHECK_THROWS_AS(Field::parse("gf(x)"), std::invalid_argument);
    CHECK_THROWS_AS(Field::parse("field(4)"), std::invalid_argument);
    CHECK_THROWS_AS(Field::parse(""), std::invalid_argument);
}

TEST_CASE("parse round-trips every representative field's name") {
    for (const Field& f : representative_fields()) {
        CAPTURE(f.name());
        CHECK(Field::parse(f.name()) == f);
    }
}

TEST_CASE("prime field accessors") {
    const Field f = Field::prime(7);
    CHECK(f.order() == 7);
    CHECK(f.characteristic() == 7);
    CHECK(f.degree() == 1);
    CHECK(f.name() == "gf(7)");
    CHECK_THROWS_AS(Field::prime(4), std::invalid_argument);
    CHECK_THROWS_AS(Field::prime(1), std::invalid_argument);
    CHECK_THROWS_AS(Field::prime(65537), std::invalid_argument);
}

TEST_CASE("extension field accessors and modulus validation") {
    const Field f = Field::binary(4);
    CHECK(f.order() == 16);
    CHECK(f.characteristic() == 2);
    CHECK(f.degree() == 4);
    CHECK(f.modulus() == 0x13);  // x^4 + x + 1
    CHECK(f.name() == "gf(16)");

    // x^4 + x^3 + 1 and x^4 + x^3 + x^2 + x + 1 are also irreducible.
    CHECK(Field::binary(4, 0x19).modulus() == 0x19);
    CHECK(Field::binary(4, 0x1F).modulus() == 0x1F);
    // x^4 + 1 = (x + 1)^4 is not.
    CHECK_THROWS_AS(Field::binary(4, 0x11), std::invalid_argument);
    // Wrong degree.
    CHECK_THROWS_AS(Field::binary(4, 0x0B), std::invalid_argument);
    CHECK_THROWS_AS(Field::binary(4, 0x2B), std::invalid_argument);
    CHECK_THROWS_AS(Field::binary(1), std::invalid_argument);
    CHECK_THROWS_AS(Field::binary(17), std::invalid_argument);
}

TEST_CASE("parse forwards an explicit modulus and rejects it for primes") {
    CHECK(Field::parse("gf(16)", 0x19).modulus() == 0x19);
    CHECK_THROWS_AS(Field::parse("gf(7)", 0x13), std::invalid_argument);
}

TEST_CASE("hand-checked arithmetic on gf(4)") {
    const Field f = Field::binary(2);  // x^2 + x + 1
    CHECK(f.mul(2, 2) == 3);
    CHECK(f.mul(2, 3) == 1);
    CHECK(f.mul(3, 3) == 2);
    CHECK(f.inv(2) == 3);
    CHECK(f.inv(3) == 2);
    CHECK(f.add(2, 3) == 1);
    CHECK(f.sub(1, 3) == 2);
    CHECK(f.neg(2) == 2);  // characteristic 2
}

TEST_CASE("hand-checked arithmetic on gf(8) and gf(16)") {
    const Field f8 = Field::binary(3);  // x^3 + x + 1
    CHECK(f8.mul(2, 2) == 4);
    CHECK(f8.mul(2, 4) == 3);
    CHECK(f8.mul(3, 3) == 5);
    CHECK(f8.mul(5, 6) == 3);

    const Field f16 = Field::binary(4);  // x^4 + x + 1
    CHECK(f16.pow(2, 4) == 3);
    CHECK(f16.mul(8, 2) == 3);
    CHECK(f16.mul(9, 9) == 13);
}

TEST_CASE("hand-checked arithmetic on gf(5)") {
    const Field f = Field::prime(5);
    CHECK(f.add(3, 4) == 2);
    CHECK(f.mul(3, 4) == 2);
    CHECK(f.neg(2) == 3);
    CHECK(f.sub(1, 3) == 3);
    CHECK(f.inv(2) == 3);
    CHECK(f.pow(2, 4) == 1);
    CHECK(f.pow(3, 0) == 1);
    CHECK(f.div(4, 2) == 2);
}

TEST_CASE("gf(2) is xor and and") {
    const Field f = Field::prime(2);
    CHECK(f.add(1, 1) == 0);
    CHECK(f.add(1, 0) == 1);
    CHECK(f.mul(1, 1) == 1);
    CHECK(f.mul(1, 0) == 0);
    CHECK(f.inv(1) == 1);
}

TEST_CASE("operands outside canonical range are rejected") {
    for (const Field& f : {Field::prime(5), Field::binary(3)}) {
        const Fe q = f.order();
        CAPTURE(f.name());
        CHECK_THROWS_AS(f.add(q, 0), std::invalid_argument);
        CHECK_THROWS_AS(f.add(0, q + 3), std::invalid_argument);
        CHECK_THROWS_AS(f.sub(q, 1), std::invalid_argument);
        CHECK_THROWS_AS(f.neg(q), std::invalid_argument);
        CHECK_THROWS_AS(f.mul(0, q), std::invalid_argument);
        CHECK_THROWS_AS(f.inv(q), std::invalid_argument);
        CHECK_THROWS_AS(f.div(q, 1), std::invalid_argument);
        CHECK_THROWS_AS(f.pow(q, 2), std::invalid_argument);
    }
}

TEST_CASE("division and inversion of zero throw domain errors") {
    for (const Field& f : {Field::prime(7), Field::binary(4)}) {
        CAPTURE(f.name());
        CHECK_THROWS_AS(f.inv(0), std::domain_error);
        CHECK_THROWS_AS(f.div(3, 0), std::domain_error);
    }
}

TEST_CASE("field axioms hold on sampled triples") {
    Draw rng;
    for (const Field& f : representative_fields()) {
        CAPTURE(f.name());
        const std::size_t trials = f.order() <= 16 ? 4096 : 10000;
        for (std::size_t k = 0; k < trials; ++k) {
            const Fe a = rng.element(f), b = rng.element(f), c = rng.element(f);
            // Commutativity and associativity.
            REQUIRE(f.add(a, b) == f.add(b, a));
            REQUIRE(f.mul(a, b) == f.mul(b, a));
            REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
            REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            // Distributivity.
            REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            // Identities and inverses.
            REQUIRE(f.add(a, 0) == a);
            REQUIRE(f.mul(a, 1) == a);
            REQUIRE(f.add(a, f.neg(a)) == 0);
            REQUIRE(f.sub(a, b) == f.add(a, f.neg(b)));
            if (b != 0) REQUIRE(f.mul(f.div(a, b), b) == a);
        }
    }
}

TEST_CASE("inversion is exact for every nonzero element") {
    for (const Field& f : representative_fields()) {
        CAPTURE(f.name());
        for (Fe a = 1; a < f.order(); ++a) {
            const Fe ia = f.inv(a);
            REQUIRE(f.mul(a, ia) == 1);
            REQUIRE(f.div(1, a) == ia);
        }
    }
}

TEST_CASE("pow agrees with repeated multiplication") {
    Draw rng;
    for (const Field& f : {Field::prime(7), Field::binary(4), Field::prime(251)}) {
        CAPTURE(f.name());
        for (std::size_t k = 0; k < 200; ++k) {
            const Fe a = rng.element(f);
            const std::uint64_t e = rng.g() % 64;
            Fe expect = 1;
            for (std::uint64_t i = 0; i < e; ++i) expect = f.mul(expect, a);
            REQUIRE(f.pow(a, e) == expect);
        }
        CHECK(f.pow(0, 0) == 1);  // empty product
        // Fermat / Lagrange: a^(q-1) = 1 for nonzero a.
        for (Fe a = 1; a < std::min<Fe>(f.order(), 64); ++a)
            REQUIRE(f.pow(a, f.order() - 1) == 1);
    }
}
