#include <doctest.h>

#include <stdexcept>
#include <string>

#include "pdss/goodmatrix.hpp"
#include "pdss/plucker.hpp"

using namespace pdss;

namespace {

// Reference schedules, hand-checked against all six validator conditions.
const std::string kGolden5 =
    "0 0 1 1 0\n"
    "1 0 0 1 0\n"
    "0 1 0 0 0\n"
    "0 0 1 0 0\n"
    "1 1 1 1 0\n";

const std::string kGolden6 =
    "0 0 0 1 1 0\n"
    "1 0 0 0 1 0\n"
    "1 1 0 0 0 0\n"
    "0 1 1 0 0 0\n"
    "0 0 1 1 0 0\n"
    "1 1 1 1 1 0\n";

}  // namespace

TEST_CASE("construction matches the reference schedules") {
    CHECK(build_good_matrix(5).to_text() == kGolden5);
    CHECK(build_good_matrix(6).to_text() == kGolden6);
}

TEST_CASE("construction is rejected below b = 3") {
    CHECK_THROWS_AS(build_good_matrix(2), std::invalid_argument);
    CHECK_THROWS_AS(build_good_matrix(0), std::invalid_argument);
}

TEST_CASE("constructed schedules validate for a range of dimensions") {
    for (std::size_t b = 3; b <= 12; ++b) {
        CAPTURE(b);
        const GoodMatrix n = build_good_matrix(b);
        const GoodMatrixCheck check = validate_good_matrix(n);
        for (const std::string& v : check.violations) {
            INFO(v);
            CHECK(false);
        }
        REQUIRE(check.pass);
        REQUIRE(n.total_weight() == pair_count(b));
        std::size_t total = 0;
        for (std::size_t c = 0; c < b; ++c) total += n.column_weight(c);
        REQUIRE(total == n.total_weight());
    }
}

TEST_CASE("validator pinpoints each violated condition") {
    const auto violated = [](const GoodMatrix& m) {
        const GoodMatrixCheck check = validate_good_matrix(m);
        REQUIRE_FALSE(check.pass);
        REQUIRE_FALSE(check.violations.empty());
        return check.violations.front();
    };

    GoodMatrix m = build_good_matrix(6);

    SUBCASE("nonzero last column") {
        m.set(2, 5, true);
        CHECK(violated(m).find("column") != std::string::npos);
    }
    SUBCASE("nonzero diagonal") {
        m.set(2, 2, true);
        CHECK(violated(m).find("diagonal") != std::string::npos);
    }
    SUBCASE("missing last-row entry") {
        m.set(5, 0, false);
        CHECK_FALSE(validate_good_matrix(m).pass);
    }
    SUBCASE("both orientations of one pair") {
        // (0,3) is set; setting (3,0) too delivers the pair twice.
        REQUIRE(m.at(0, 3));
        m.set(3, 0, true);
        CHECK_FALSE(validate_good_matrix(m).pass);
    }
    SUBCASE("neither orientation of one pair") {
        REQUIRE(m.at(0, 3));
        m.set(0, 3, false);
        CHECK_FALSE(validate_good_matrix(m).pass);
    }
    SUBCASE("unbalanced columns") {
        // Swap one delivery between columns: pair (0,3) handled by node 0
        // instead of node 3 keeps every pair covered once but skews weights.
        REQUIRE(m.at(0, 3));
        m.set(0, 3, false);
        m.set(3, 0, true);
        CHECK(violated(m).find("weight") != std::string::npos);
    }
}

TEST_CASE("validator rejects malformed shapes") {
    GoodMatrix m;
    m.b = 2;
    m.bits.assign(4, 0);
    CHECK_FALSE(validate_good_matrix(m).pass);

    GoodMatrix ragged;
    ragged.b = 4;
    ragged.bits.assign(12, 0);  // wrong storage size
    CHECK_FALSE(validate_good_matrix(ragged).pass);

    GoodMatrix nonbinary = build_good_matrix(4);
    nonbinary.bits[1] = 2;
    CHECK_FALSE(validate_good_matrix(nonbinary).pass);
}

TEST_CASE("text round trip") {
    for (std::size_t b = 3; b <= 12; ++b) {
        CAPTURE(b);
        const GoodMatrix n = build_good_matrix(b);
        REQUIRE(parse_good_matrix(n.to_text()) == n);
    }
    // Comments and blank lines are tolerated.
    const GoodMatrix commented = parse_good_matrix("# schedule\n0 1\n\n1 0\n");
    CHECK(commented.b == 2);
    CHECK(commented.at(0, 1));
}

TEST_CASE("parse rejects non-grids") {
    CHECK_THROWS_AS(parse_good_matrix(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_good_matrix("0 1\n1\n"), std::invalid_argument);       // ragged
    CHECK_THROWS_AS(parse_good_matrix("0 1\n"), std::invalid_argument);          // not square
    CHECK_THROWS_AS(parse_good_matrix("0 2\n1 0\n"), std::invalid_argument);     // not 0/1
    CHECK_THROWS_AS(parse_good_matrix("0 x\n1 0\n"), std::invalid_argument);
}
