#include <catch2/catch_amalgamated.hpp>

#include "pdcalc/expr.hpp"

using namespace pdcalc;

TEST_CASE("pontryagin square of the curve class") {
    TautClass got = eval_expression("w[1]*w[1]", 3);
    REQUIRE(got == Int(2) * TautClass::w(3, 2));
}

TEST_CASE("double transform is the identity at even genus") {
    REQUIRE(eval_expression("F(F(w[2]))", 2) == TautClass::w(2, 2));
    // and the signed inversion at odd genus is invisible on w classes either
    // way: F^2 = (-1)^g [-1]* and [-1]* fixes every w_n
    REQUIRE(eval_expression("F(F(w[1]))", 3) == Int(-1) * TautClass::w(3, 1));
}

TEST_CASE("triple theta intersection") {
    REQUIRE(eval_expression("theta.theta.theta", 3) == Int(6) * TautClass::w(3, 0));
}

TEST_CASE("theta and c are genus-dependent aliases") {
    for (int g = 1; g <= 5; ++g) {
        REQUIRE(eval_expression("theta", g) == TautClass::w(g, g - 1));
        REQUIRE(eval_expression("c", g) == TautClass::w(g, 1));
    }
}

TEST_CASE("scalars scale through either product") {
    REQUIRE(eval_expression("2*w[1]", 2) == Int(2) * TautClass::w(2, 1));
    REQUIRE(eval_expression("w[1]*2", 2) == Int(2) * TautClass::w(2, 1));
    REQUIRE(eval_expression("2.w[1]", 2) == Int(2) * TautClass::w(2, 1));
    REQUIRE(eval_expression("2*3", 1) == Int(6) * TautClass::w(1, 1));
    REQUIRE(eval_expression("2+3", 1) == Int(5) * TautClass::w(1, 1));
}

TEST_CASE("sums subtract back to zero") {
    TautClass z = eval_expression("w[1]*w[1] - 2*w[2]", 4);
    REQUIRE(z == TautClass::zero(4));
}

TEST_CASE("parentheses group before products") {
    // (w1 + w2).theta versus distributing by hand
    TautClass lhs = eval_expression("(w[1]+w[2]).theta", 3);
    TautClass rhs = eval_expression("w[1].theta + w[2].theta", 3);
    REQUIRE(lhs == rhs);
}

TEST_CASE("star exponential of the curve class") {
    TautClass got = eval_expression("E(c)", 3);
    REQUIRE(got == taut_star_exp(taut_minimal(3)));
    // degree by degree it is gamma_d(c), and gamma_d(w1) = w_d
    REQUIRE(got.coeff(0) == 1);
    for (int d = 1; d <= 3; ++d) REQUIRE(got.coeff(d) == 1);
}

TEST_CASE("transform of theta is the signed curve class") {
    for (int g = 1; g <= 4; ++g) {
        Int s = (g & 1) ? 1 : -1;
        REQUIRE(eval_expression("F(theta)", g) == s * taut_minimal(g));
    }
}

TEST_CASE("whitespace is insignificant") {
    REQUIRE(eval_expression("  w[ 1 ] *  w[1]  ", 3) == eval_expression("w[1]*w[1]", 3));
}

TEST_CASE("coefficients can be reduced modulo m") {
    TautClass got = eval_expression("w[1]*w[1]", 3, 2);
    REQUIRE(got == TautClass::zero(3, 2));
}

TEST_CASE("parse errors carry positions") {
    auto pos_of = [](const std::string& src, int g) -> size_t {
        try {
            eval_expression(src, g);
        } catch (const ParseError& e) {
            return e.pos;
        }
        return (size_t)-1;
    };
    REQUIRE(pos_of("w[1", 2) == 3);         // missing ']'
    REQUIRE(pos_of("w[5]", 2) == 2);        // index beyond genus
    REQUIRE(pos_of("1 + w[1]", 2) == 2);    // number plus class
    REQUIRE(pos_of("F(2)", 2) == 0);        // transform of a bare number
    REQUIRE(pos_of("w[1] w[1]", 2) == 5);   // trailing input
    REQUIRE(pos_of("spam", 2) == 0);        // unknown name
    REQUIRE(pos_of("", 2) == 0);            // empty input
    REQUIRE(pos_of("w[1]*w[1]", 8) == (size_t)-1); // well-formed parses fine
}

TEST_CASE("genus range errors mention the offending index") {
    try {
        eval_expression("w[7]", 3);
        FAIL("expected a ParseError");
    } catch (const ParseError& e) {
        REQUIRE(std::string(e.what()).find("w[7]") != std::string::npos);
        REQUIRE(std::string(e.what()).find("genus 3") != std::string::npos);
    }
}
