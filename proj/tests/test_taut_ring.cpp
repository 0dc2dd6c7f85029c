#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pdcalc/taut_ring.hpp"

using namespace pdcalc;

static TautClass taut_cup_pow(const TautClass& x, unsigned k) {
    TautClass out = taut_unit_cup(x.g, x.modulus);
    for (unsigned i = 0; i < k; ++i) out = taut_cup(out, x);
    return out;
}

static TautClass random_taut(std::mt19937_64& rng, int g, bool no_star_unit = false,
                             bool no_cup_unit = false) {
    TautClass x = TautClass::zero(g);
    for (int t = 0; t < 3; ++t) {
        int n = (int)(rng() % (unsigned)(g + 1));
        if (no_star_unit && n == 0) continue;
        if (no_cup_unit && n == g) continue;
        long c = (long)(rng() % 9) - 4;
        if (c != 0) x.add_term(n, c);
    }
    return x;
}

TEST_CASE("theta powers against the basis") {
    for (int g = 1; g <= 8; ++g) {
        TautClass th = taut_theta(g);
        for (int n = 0; n <= g; ++n)
            REQUIRE(taut_cup_pow(th, (unsigned)n) == factorial((unsigned)n) * TautClass::w(g, g - n));
        REQUIRE(taut_cup_pow(th, (unsigned)g + 1).is_zero());
    }
}

TEST_CASE("both products agree with the exterior embedding") {
    for (int g = 1; g <= 8; ++g)
        for (int a = 0; a <= g; ++a)
            for (int b = 0; b <= g; ++b) {
                TautClass wa = TautClass::w(g, a), wb = TautClass::w(g, b);
                REQUIRE(embed_taut(taut_cup(wa, wb)) == cup(embed_taut(wa), embed_taut(wb)));
                REQUIRE(embed_taut(taut_star(wa, wb)) ==
                        pontryagin(embed_taut(wa), embed_taut(wb)));
            }
}

TEST_CASE("units of the two products") {
    std::mt19937_64 rng(211);
    for (int g = 1; g <= 6; ++g) {
        TautClass x = random_taut(rng, g);
        REQUIRE(taut_cup(taut_unit_cup(g), x) == x);
        REQUIRE(taut_star(taut_unit_star(g), x) == x);
        TautClass y = random_taut(rng, g);
        REQUIRE(taut_cup(x, y) == taut_cup(y, x));
        REQUIRE(taut_star(x, y) == taut_star(y, x));
        TautClass z = random_taut(rng, g);
        REQUIRE(taut_cup(taut_cup(x, y), z) == taut_cup(x, taut_cup(y, z)));
        REQUIRE(taut_star(taut_star(x, y), z) == taut_star(x, taut_star(y, z)));
    }
}

TEST_CASE("transform squares to the parity of the genus") {
    std::mt19937_64 rng(223);
    for (int g = 1; g <= 8; ++g) {
        TautClass x = random_taut(rng, g);
        TautClass ffx = taut_fourier(taut_fourier(x));
        REQUIRE(ffx == ((g & 1) ? Int(-1) * x : x));
        REQUIRE(taut_fourier(taut_theta(g)) ==
                ((g & 1) ? taut_minimal(g) : Int(-1) * taut_minimal(g)));
    }
}

TEST_CASE("transform exchanges the two products") {
    for (int g = 1; g <= 8; ++g)
        for (int a = 0; a <= g; ++a)
            for (int b = 0; b <= g; ++b) {
                TautClass wa = TautClass::w(g, a), wb = TautClass::w(g, b);
                REQUIRE(taut_fourier(taut_star(wa, wb)) ==
                        taut_cup(taut_fourier(wa), taut_fourier(wb)));
                TautClass lhs = taut_fourier(taut_cup(wa, wb));
                TautClass rhs = taut_star(taut_fourier(wa), taut_fourier(wb));
                REQUIRE(lhs == ((g & 1) ? Int(-1) * rhs : rhs));
            }
}

TEST_CASE("divided powers on the basis and their embedding") {
    REQUIRE(taut_gamma(TautClass::w(4, 1), 3) == TautClass::w(4, 3));
    REQUIRE(taut_gamma(TautClass::w(4, 2), 2) == Int(3) * TautClass::w(4, 4));
    REQUIRE(taut_gamma(TautClass::w(6, 2), 3) == Int(15) * TautClass::w(6, 6));
    std::mt19937_64 rng(227);
    for (int g = 1; g <= 5; ++g)
        for (int iter = 0; iter < 4; ++iter) {
            TautClass x = random_taut(rng, g, /*no_star_unit=*/true);
            for (unsigned d = 1; d <= 4; ++d)
                REQUIRE(embed_taut(taut_gamma(x, d)) == star_divided_power(embed_taut(x), d));
        }
    REQUIRE_THROWS_AS(taut_gamma(taut_unit_star(3), 2), std::domain_error);
}

TEST_CASE("divided power axioms in the lattice") {
    std::mt19937_64 rng(229);
    for (int g = 2; g <= 6; ++g)
        for (int iter = 0; iter < 6; ++iter) {
            TautClass x = random_taut(rng, g, true);
            TautClass y = random_taut(rng, g, true);
            for (unsigned d = 1; d <= 3; ++d) {
                for (unsigned e = d; d * e <= 6; ++e) {
                    REQUIRE(taut_star(taut_gamma(x, d), taut_gamma(x, e)) ==
                            binom(d + e, d) * taut_gamma(x, d + e));
                    REQUIRE(taut_gamma(taut_gamma(x, e), d) ==
                            sym_power_degree(d, e) * taut_gamma(x, d * e));
                }
                TautClass rhs = TautClass::zero(g);
                for (unsigned i = 0; i <= d; ++i)
                    rhs = rhs + taut_star(taut_gamma(x, i), taut_gamma(y, d - i));
                REQUIRE(taut_gamma(x + y, d) == rhs);
                REQUIRE(taut_gamma(Int(-2) * x, d) == pow(Int(-2), d) * taut_gamma(x, d));
            }
        }
}

TEST_CASE("dual divided powers") {
    std::mt19937_64 rng(233);
    for (int g = 1; g <= 6; ++g) {
        for (unsigned n = 0; n + 1 <= (unsigned)g; ++n)
            REQUIRE(taut_delta(taut_theta(g), n) == TautClass::w(g, g - (int)n));
        for (int iter = 0; iter < 6; ++iter) {
            TautClass x = random_taut(rng, g, false, /*no_cup_unit=*/true);
            REQUIRE(taut_delta(x, 1) == x);
            TautClass y = random_taut(rng, g, false, true);
            for (unsigned d = 1; d <= 3; ++d) {
                for (unsigned e = d; d * e <= 6; ++e)
                    REQUIRE(taut_cup(taut_delta(x, d), taut_delta(x, e)) ==
                            binom(d + e, d) * taut_delta(x, d + e));
                TautClass rhs = TautClass::zero(g);
                for (unsigned i = 0; i <= d; ++i)
                    rhs = rhs + taut_cup(taut_delta(x, i), taut_delta(y, d - i));
                REQUIRE(taut_delta(x + y, d) == rhs);
            }
        }
    }
}

TEST_CASE("reduced coefficients") {
    TautClass two = Int(2) * TautClass::w(3, 1, 2);
    REQUIRE(two.is_zero());
    // the embedding lifts to Z before dividing, so mod 5 at genus 3 works
    TautClass pt = TautClass::w(3, 0, 5);
    ExtClass e = embed_taut(pt);
    REQUIRE(e.modulus == 5);
    REQUIRE(e == reduce_coefficients(embed_taut(TautClass::w(3, 0)), 5));
    // product tables survive reduction
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b) {
            TautClass wa = TautClass::w(3, a, 6), wb = TautClass::w(3, b, 6);
            REQUIRE(embed_taut(taut_cup(wa, wb)) == cup(embed_taut(wa), embed_taut(wb)));
        }
}
