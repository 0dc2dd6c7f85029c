#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pdcalc/fourier.hpp"

using namespace pdcalc;

static ExtClass random_kernel(std::mt19937_64& rng, int g, bool even_only = false,
                              int max_terms = 3) {
    ExtClass x = ExtClass::zero(g, 2);
    Mask full = x.full_mask();
    for (int t = 0; t < max_terms; ++t) {
        Mask m = rng() & full;
        while (even_only && (std::popcount(m) & 1)) m = rng() & full;
        long c = (long)(rng() % 9) - 4;
        if (c != 0) x.add_term(m, c);
    }
    return x;
}

// Column-by-column image of the J basis under a callable.
template <class Fn>
static std::vector<ExtClass> image_columns(int g, Fn&& f) {
    std::vector<ExtClass> cols;
    for (Mask S = 0; S < (Mask(1) << (2 * g)); ++S)
        cols.push_back(f(ExtClass::basis(g, 1, S)));
    return cols;
}

TEST_CASE("genus one transform matrix is frozen") {
    // On the four-dimensional model (1, a, b, ab) the transform sends
    // 1 -> -ab, a -> -a, b -> -b, ab -> 1. Derived by expanding both kernel
    // routes by hand; the ab column doubles as the point-to-unit law.
    KernelOperator F = kernel_fourier(1);
    REQUIRE(F.column(0) == Int(-1) * ExtClass::basis(1, 1, 3));
    REQUIRE(F.column(1) == Int(-1) * ExtClass::basis(1, 1, 1));
    REQUIRE(F.column(2) == Int(-1) * ExtClass::basis(1, 1, 2));
    REQUIRE(F.column(3) == ExtClass::unit(1, 1));
}

TEST_CASE("star and cup kernel routes produce the same operator") {
    for (int g = 1; g <= 3; ++g) {
        KernelOperator via_star = kernel_fourier(g);
        KernelOperator via_cup = classical_fourier(g);
        REQUIRE(via_star.same_matrix(via_cup));
        // the kernels themselves differ once g > 0: only the operators agree
        REQUIRE(via_star.kernel.n == 2);
        REQUIRE(via_cup.kernel.n == 2);
        REQUIRE(!(via_star.kernel == via_cup.kernel));
    }
}

TEST_CASE("transform diagonalizes the tautological basis") {
    for (int g = 1; g <= 4; ++g) {
        KernelOperator F = kernel_fourier(g);
        for (int n = 0; n <= g; ++n) {
            TautClass wn = TautClass::w(g, n);
            ExtClass lhs = F.apply(embed_taut(wn));
            REQUIRE(lhs == embed_taut(taut_fourier(wn)));
            Int sign = (n & 1) ? -1 : 1;
            REQUIRE(lhs == sign * embed_taut(TautClass::w(g, g - n)));
        }
    }
}

TEST_CASE("theta maps to the curve class") {
    for (int g = 1; g <= 3; ++g) {
        KernelOperator F = classical_fourier(g);
        Int sign = (g & 1) ? 1 : -1; // (-1)^{g+1}
        REQUIRE(F.apply(theta_class(g)) == sign * embed_taut(taut_minimal(g)));
        REQUIRE(F.apply(point_class(g, 1)) == ExtClass::unit(g, 1));
    }
}

TEST_CASE("doubling pushes the curve class to four times itself") {
    for (int g = 1; g <= 4; ++g) {
        ExtClass c = embed_taut(taut_minimal(g));
        REQUIRE(pushforward(HomMatrix::mult_by(2), c) == Int(4) * c);
        for (long n = -3; n <= 3; ++n)
            REQUIRE(pushforward(HomMatrix::mult_by(n), c) == Int(n * n) * c);
    }
}

TEST_CASE("transform squares to the inversion up to the genus sign") {
    for (int g = 1; g <= 3; ++g) {
        KernelOperator F = kernel_fourier(g);
        Int sign = (g & 1) ? -1 : 1;
        for (Mask S = 0; S < (Mask(1) << (2 * g)); ++S) {
            ExtClass expect =
                sign * pushforward(HomMatrix::mult_by(-1), ExtClass::basis(g, 1, S));
            REQUIRE(F.apply(F.column(S)) == expect);
        }
    }
}

TEST_CASE("kernel of the squared transform is the signed diagonal") {
    for (int g = 1; g <= 3; ++g) {
        ExtClass eg = star_exp(gamma_class(g));
        HomMatrix j12 = HomMatrix::inclusion({0, 1}, 3);
        HomMatrix j23 = HomMatrix::inclusion({1, 2}, 3);
        HomMatrix j13 = HomMatrix::inclusion({0, 2}, 3);
        ExtClass composite =
            pullback(j13, pontryagin(pushforward(j12, eg), pushforward(j23, eg)));
        Int sign = (g & 1) ? -1 : 1;
        REQUIRE(composite == sign * diagonal_class(g));
        // same statement through the composition helper
        REQUIRE(compose_kernels(eg, eg) == composite);
    }
}

TEST_CASE("diagonal kernel acts as the inversion") {
    for (int g = 1; g <= 2; ++g) {
        KernelOperator D(diagonal_class(g));
        for (Mask S = 0; S < (Mask(1) << (2 * g)); ++S)
            REQUIRE(D.column(S) ==
                    pushforward(HomMatrix::mult_by(-1), ExtClass::basis(g, 1, S)));
    }
}

TEST_CASE("kernel composition mirrors operator composition") {
    // even-degree kernels: composing odd ones costs the usual super sign
    std::mt19937_64 rng(4051);
    for (int g = 1; g <= 2; ++g)
        for (int trial = 0; trial < 8; ++trial) {
            ExtClass e1 = random_kernel(rng, g, true);
            ExtClass e2 = random_kernel(rng, g, true);
            KernelOperator K1(e1), K2(e2), K12(compose_kernels(e1, e2));
            for (Mask S = 0; S < (Mask(1) << (2 * g)); ++S)
                REQUIRE(K12.column(S) == K2.apply(K1.column(S)));
        }
}

TEST_CASE("odd kernels compose with the super sign") {
    // for homogeneous kernels of odd degree the composite kernel gives the
    // negated operator product; seen degreewise on basis kernels
    int g = 1;
    Mask full2 = ExtClass::zero(g, 2).full_mask();
    for (Mask m1 = 0; m1 <= full2; ++m1)
        for (Mask m2 = 0; m2 <= full2; ++m2) {
            ExtClass e1 = ExtClass::basis(g, 2, m1);
            ExtClass e2 = ExtClass::basis(g, 2, m2);
            Int sign = ((std::popcount(m1) & 1) && (std::popcount(m2) & 1)) ? -1 : 1;
            KernelOperator K1(e1), K2(e2), K12(compose_kernels(e1, e2));
            for (Mask S = 0; S < (Mask(1) << (2 * g)); ++S)
                REQUIRE(K12.column(S) == sign * K2.apply(K1.column(S)));
        }
}

TEST_CASE("kernel operator matrix comes from the reflected kernel pairing") {
    std::mt19937_64 rng(977);
    HomMatrix flip = HomMatrix::from({{-1, 0}, {0, 1}});
    for (int g = 1; g <= 2; ++g)
        for (int trial = 0; trial < 10; ++trial) {
            ExtClass eps = random_kernel(rng, g);
            KernelOperator K(eps);
            std::vector<ExtClass> paired = pairing_columns(pullback(flip, eps));
            for (Mask S = 0; S < (Mask(1) << (2 * g)); ++S)
                REQUIRE(K.column(S) == paired[(size_t)S]);
        }
}

TEST_CASE("correspondence action of the cup exponential matches the transform") {
    // the classical route: cup against exp(ell) and push down the second
    // projection; per-column agreement with the kernel operator
    for (int g = 1; g <= 2; ++g) {
        ExtClass kappa = exp_cup(ell_class(g));
        KernelOperator F = kernel_fourier(g);
        for (Mask S = 0; S < (Mask(1) << (2 * g)); ++S)
            REQUIRE(corr_action(kappa, ExtClass::basis(g, 1, S)) == F.column(S));
    }
}

TEST_CASE("transform intertwines the multiplication maps") {
    for (int g = 1; g <= 2; ++g) {
        KernelOperator F = kernel_fourier(g);
        for (long n = -2; n <= 2; ++n) {
            HomMatrix mn = HomMatrix::mult_by(n);
            for (Mask S = 0; S < (Mask(1) << (2 * g)); ++S) {
                ExtClass x = ExtClass::basis(g, 1, S);
                REQUIRE(pullback(mn, F.column(S)) == F.apply(pushforward(mn, x)));
                REQUIRE(F.apply(pullback(mn, x)) == pushforward(mn, F.column(S)));
            }
        }
    }
}

TEST_CASE("cup exponential of theta transforms to a star exponential") {
    for (int g = 1; g <= 3; ++g) {
        KernelOperator F = kernel_fourier(g);
        Int sign = (g & 1) ? -1 : 1;
        for (long t : {-1L, 1L}) {
            ExtClass y = Int(t) * theta_class(g);
            ExtClass lhs = F.apply(exp_cup(y));
            ExtClass rhs = sign * star_exp(sign * F.apply(y));
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("axis restriction of the exponential kernel") {
    for (int g = 1; g <= 4; ++g) {
        ExtClass eg = star_exp(gamma_class(g));
        Int sign = (g & 1) ? -1 : 1;
        REQUIRE(pullback(HomMatrix::inclusion({0}, 2), eg) == sign * ExtClass::unit(g, 1));
        REQUIRE(pullback(HomMatrix::inclusion({1}, 2), eg) == sign * ExtClass::unit(g, 1));
    }
}

TEST_CASE("kernel class matches the transform of the two-form recipe") {
    for (int g = 1; g <= 3; ++g) {
        KernelOperator F = classical_fourier(g);
        ExtClass ft = F.apply(theta_class(g));
        ExtClass tau = pushforward(HomMatrix::diagonal(), ft) -
                       pushforward(HomMatrix::inclusion({0}, 2), ft) -
                       pushforward(HomMatrix::inclusion({1}, 2), ft);
        if (g & 1) tau = Int(-1) * tau;
        REQUIRE(tau == gamma_class(g));
    }
}

TEST_CASE("shear conjugation identities") {
    HomMatrix phi = HomMatrix::from({{1, 0}, {1, -1}});
    HomMatrix j1 = HomMatrix::inclusion({0}, 2);
    HomMatrix j2 = HomMatrix::inclusion({1}, 2);
    HomMatrix diag = HomMatrix::diagonal();
    REQUIRE(compose(phi, j1).M == diag.M);
    REQUIRE(compose(phi, j2).M == compose(j2, HomMatrix::mult_by(-1)).M);
    REQUIRE(compose(phi, diag).M == j1.M);
    REQUIRE(compose(phi, phi).M == HomMatrix::identity(2).M);
}

TEST_CASE("mixed contractions against the diagonal") {
    for (int g = 1; g <= 2; ++g) {
        HomMatrix j1 = HomMatrix::inclusion({0}, 2);
        HomMatrix j2 = HomMatrix::inclusion({1}, 2);
        HomMatrix diag = HomMatrix::diagonal();
        for (int i = 0; i <= g; ++i)
            for (int j = 0; j <= g; ++j) {
                ExtClass a = embed_taut(TautClass::w(g, i));
                ExtClass b = embed_taut(TautClass::w(g, j));
                ExtClass prod = cup(a, b);
                REQUIRE(pullback(j1, pontryagin(pushforward(j2, a), pushforward(diag, b))) ==
                        prod);
                REQUIRE(pullback(diag, pontryagin(pushforward(j2, a), pushforward(j1, b))) ==
                        prod);
            }
    }
}

TEST_CASE("product exchange as an operator identity") {
    for (int g = 1; g <= 2; ++g) {
        KernelOperator F = kernel_fourier(g);
        std::vector<ExtClass> tensor = fourier_tensor_columns(g);
        HomMatrix m = HomMatrix::sum();
        HomMatrix diag = HomMatrix::diagonal();
        Int sign = (g & 1) ? -1 : 1;
        for (Mask S = 0; S < (Mask(1) << (4 * g)); ++S) {
            ExtClass x = ExtClass::basis(g, 2, S);
            // F(m_* x) = Delta^* (F (x) F)(x)
            REQUIRE(F.apply(pushforward(m, x)) == pullback(diag, tensor[(size_t)S]));
            // F(Delta^* x) = (-1)^g m_* (F (x) F)(x)
            REQUIRE(F.apply(pullback(diag, x)) == sign * pushforward(m, tensor[(size_t)S]));
        }
    }
}

TEST_CASE("tensor square factors on even outer classes") {
    // On even-degree slices no reordering signs appear, so the four-factor
    // kernel route must literally factor through the two single-factor maps.
    for (int g = 1; g <= 2; ++g) {
        KernelOperator F = kernel_fourier(g);
        std::vector<ExtClass> tensor = fourier_tensor_columns(g);
        for (Mask S = 0; S < (Mask(1) << (2 * g)); ++S) {
            if (std::popcount(S) & 1) continue;
            for (Mask T = 0; T < (Mask(1) << (2 * g)); ++T) {
                if (std::popcount(T) & 1) continue;
                Mask key = S | (T << (2 * g));
                REQUIRE(tensor[(size_t)key] == outer(F.column(S), F.column(T)));
            }
        }
    }
}

TEST_CASE("kernel product relation on three factors") {
    for (int g = 1; g <= 2; ++g) {
        ExtClass eg = star_exp(gamma_class(g));
        HomMatrix dxi = HomMatrix::from({{1, 0}, {1, 0}, {0, 1}}); // (x,y) -> (x,x,y)
        HomMatrix j13 = HomMatrix::inclusion({0, 2}, 3);
        HomMatrix j23 = HomMatrix::inclusion({1, 2}, 3);
        REQUIRE(pushforward(dxi, eg) ==
                pontryagin(pushforward(j13, eg), pushforward(j23, eg)));
    }
}

TEST_CASE("verification suites are green at small genus") {
    for (int g = 1; g <= 2; ++g) {
        SuiteReport cub = verify_cubical(g);
        REQUIRE(cub.all_pass());
        REQUIRE(cub.suite == "cubical");
        REQUIRE(cub.genus == g);
        SuiteReport mot = verify_mot_fourier(g);
        REQUIRE(mot.all_pass());
        bool has_n = false;
        for (auto& c : mot.checks) REQUIRE(c.pass);
        for (auto& c : cub.checks)
            if (c.witness.find("N = " + std::to_string(factor_N(g))) != std::string::npos)
                has_n = true;
        REQUIRE(has_n);
    }
    SuiteReport ell = verify_elliptic();
    REQUIRE(ell.all_pass());
    REQUIRE(ell.genus == 1);
    std::mt19937_64 seed_probe(1);
    (void)seed_probe;
    SuiteReport cons = verify_kernel_consistency(2, 20260816, 6);
    REQUIRE(cons.all_pass());
}

TEST_CASE("elliptic closed forms") {
    ExtClass gam = gamma_class(1);
    ExtClass unit = ExtClass::unit(1, 2);
    ExtClass pt = point_class(1, 2);
    ExtClass axis1 = pullback(HomMatrix::projection({1}, 2), point_class(1, 1)); // E x 0
    ExtClass axis2 = pullback(HomMatrix::projection({0}, 2), point_class(1, 1)); // 0 x E
    ExtClass diag = pushforward(HomMatrix::diagonal(), ExtClass::unit(1, 1));
    REQUIRE(gam == axis1 + axis2 - diag);
    REQUIRE(star_exp(gam) == pt + gam - unit);
}

TEST_CASE("elliptic kernel relations at unit factor") {
    ExtClass eps = star_exp(gamma_class(1));
    HomMatrix j12 = HomMatrix::inclusion({0, 1}, 3);
    HomMatrix j23 = HomMatrix::inclusion({1, 2}, 3);
    HomMatrix j13 = HomMatrix::inclusion({0, 2}, 3);
    ExtClass lhs = pullback(j13, pontryagin(pushforward(j12, eps), pushforward(j23, eps)));
    REQUIRE(lhs == Int(-1) * diagonal_class(1));

    HomMatrix dxi = HomMatrix::from({{1, 0}, {1, 0}, {0, 1}});
    REQUIRE(pushforward(dxi, eps) ==
            pontryagin(pushforward(j13, eps), pushforward(j23, eps)));

    // cross terms of the unit against the curve class vanish on three factors
    ExtClass gam = gamma_class(1);
    ExtClass unit2 = ExtClass::unit(1, 2);
    REQUIRE(pontryagin(pushforward(j12, gam), pushforward(j23, unit2)).is_zero());
    REQUIRE(pontryagin(pushforward(j12, unit2), pushforward(j23, gam)).is_zero());
}
