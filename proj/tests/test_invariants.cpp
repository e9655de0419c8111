#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>

#include "dsl_corpus.hpp"
#include "sip/invariants.hpp"

using Catch::Approx;
using sip::ParamVector;

TEST_CASE("ParamVector basics", "[invariants]") {
    const ParamVector p{1.0, 2.0, 3.0};
    CHECK(p.mean() == 2.0);
    CHECK(p.translate(1.0).mean() == 1.0);
    CHECK(p.translate(1.0).translate(2.0) == p.translate(3.0));
    CHECK(p.translate(2.0).size() == 3);
    CHECK_THROWS_AS(ParamVector(std::vector<double>{}), sip::RangeError);
    CHECK_THROWS_AS(ParamVector({1.0, NAN}), sip::RangeError);
}

TEST_CASE("parse and evaluate spec examples", "[invariants]") {
    const auto e = sip::parse_invariant("sin(2*pi*m1)^2 + cos(2*pi*m1) + 1");
    CHECK(e.depth() == 4);
    CHECK(e.max_index() == 1);
    const double want = std::pow(std::sin(0.4 * std::numbers::pi), 2) + std::cos(0.4 * std::numbers::pi) + 1.0;
    CHECK(e(ParamVector{0.2}) == Approx(want).epsilon(1e-14));
    CHECK(e(ParamVector{0.2}) == Approx(2.213525).margin(1e-6));

    CHECK(sip::parse_invariant("1")(ParamVector{-4.0, 3.0}) == 1.0);
    CHECK(sip::parse_invariant("(m2 - m1)/2")(ParamVector{1.5, 2.5}) == 0.5);
    CHECK(sip::parse_invariant("M")(ParamVector{1.0, 2.0, 3.0}) == 2.0);
}

TEST_CASE("precedence and associativity", "[invariants]") {
    const ParamVector p{2.0, 3.0, 2.0};
    CHECK(sip::parse_invariant("-m1^2")(p) == -4.0);
    CHECK(sip::parse_invariant("m1^m2^m3")(p) == std::pow(2.0, 9.0));
    CHECK(sip::parse_invariant("2^-1")(p) == 0.5);
    CHECK(sip::parse_invariant("m1 - m2 - m3")(p) == -3.0);
    CHECK(sip::parse_invariant("12 / m1 / m2")(p) == 2.0);
    CHECK(sip::parse_invariant("1 + 2 * 3")(p) == 7.0);
}

TEST_CASE("parse errors", "[invariants]") {
    try {
        sip::parse_invariant("m1 + * 2");
        FAIL("expected a parse error");
    } catch (const sip::ParseError& err) {
        CHECK(err.offset() == 5);
    }
    try {
        sip::parse_invariant("m1 + q");
        FAIL("expected a parse error");
    } catch (const sip::ParseError& err) {
        CHECK(std::string(err.what()).find("unknown identifier") != std::string::npos);
        CHECK(err.offset() == 5);
    }
    try {
        sip::parse_invariant("sec(m1)");
        FAIL("expected a parse error");
    } catch (const sip::ParseError& err) {
        CHECK(std::string(err.what()).find("unknown function") != std::string::npos);
    }
    CHECK_THROWS_AS(sip::parse_invariant(""), sip::ParseError);
    CHECK_THROWS_AS(sip::parse_invariant("(m1"), sip::ParseError);
    CHECK_THROWS_AS(sip::parse_invariant("m1)"), sip::ParseError);
    CHECK_THROWS_AS(sip::parse_invariant("m0"), sip::ParseError);
    CHECK_THROWS_AS(sip::parse_invariant("m10"), sip::ParseError);
}

TEST_CASE("evaluation errors", "[invariants]") {
    CHECK_THROWS_AS(sip::parse_invariant("ln(m1)")(ParamVector{-1.0}), sip::DomainError);
    CHECK_THROWS_AS(sip::parse_invariant("sqrt(m1)")(ParamVector{-1.0}), sip::DomainError);
    CHECK_THROWS_AS(sip::parse_invariant("1/m1")(ParamVector{0.0}), sip::DomainError);
    CHECK_THROWS_AS(sip::parse_invariant("m3")(ParamVector{1.0, 2.0}), sip::RangeError);
}

TEST_CASE("print/parse round trip", "[invariants]") {
    auto roundtrip = [](std::string_view src) {
        const auto a = sip::parse_invariant(src);
        const auto b = sip::parse_invariant(a.print());
        INFO(src << "  ->  " << a.print());
        CHECK(a == b);
        CHECK(b.print() == a.print());
    };
    for (auto s : corpus::kInvariant) roundtrip(s);
    for (auto s : corpus::kSyntax) roundtrip(s);
    CHECK(sip::parse_invariant("m1 - (m2 - m3)").print() == "m1 - (m2 - m3)");
    CHECK(sip::parse_invariant("(-m1)^2").print() == "(-m1)^2");
    CHECK(sip::parse_invariant("(m1^m2)^m3").print() == "(m1^m2)^m3");
}

TEST_CASE("check_invariance", "[invariants]") {
    for (auto s : corpus::kInvariant) {
        const auto e = sip::parse_invariant(s);
        const auto n = std::max<std::size_t>(3, std::size_t(e.max_index()));
        const auto res = sip::check_invariance(e, n, 64, 1e-9);
        INFO(s);
        CHECK(res.verified());
        CHECK(res.expr.verified());
    }
    const auto bad = sip::check_invariance(sip::parse_invariant("m1"), 1, 16, 1e-9);
    REQUIRE_FALSE(bad.verified());
    CHECK_FALSE(bad.expr.verified());
    CHECK(bad.violation->delta == Approx(double(bad.violation->shift)).epsilon(1e-12));
    CHECK(bad.violation->m.size() == 1);
    CHECK_THROWS_AS(sip::check_invariance(sip::parse_invariant("1"), 1, 8), sip::RangeError);
    CHECK_THROWS_AS(sip::check_invariance(sip::parse_invariant("m2"), 1, 16), sip::RangeError);
    // always-failing domain: retries exhaust and the error propagates
    CHECK_THROWS_AS(sip::check_invariance(sip::parse_invariant("ln(-1 - abs(m1))"), 1, 16), sip::DomainError);
}
