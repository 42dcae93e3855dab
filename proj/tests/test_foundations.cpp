// SPDX-License-Identifier: Apache-2.0
// Scalar special functions and numerics underpinning the library: complex
// gamma, Gauss hypergeometric, modified Bessel functions, deterministic
// summation, and adaptive quadrature.
#include <catch2/catch_amalgamated.hpp>

#include "gegreen/gegreen.hpp"
#include "oracle_values.hpp"
#include "test_helpers.hpp"

using namespace gegreen;
using testutil::rel;
using Cx = ComplexValue;

TEST_CASE("complex gamma matches the frozen multiprecision reference") {
    CHECK(rel(gamma(Cx(1.0, 1.0)), oracle::ORACLE_GAMMA_1_1I) < 1e-14);
}

TEST_CASE("gamma reflection and recurrence identities") {
    const Cx z(0.3, 0.7);
    CHECK(rel(gamma(z) * gamma(1.0 - z), pi / std::sin(pi * z)) < 1e-13);
    CHECK(rel(gamma(z + 1.0), z * gamma(z)) < 1e-13);
    CHECK(rel(gamma(Cx(5.0, 0.0)), Cx(24.0, 0.0)) < 1e-14);
    // reciprocal gamma is entire and vanishes at the poles
    CHECK(std::abs(rgamma(Cx(-3.0, 0.0))) < 1e-13);
    CHECK(std::abs(rgamma(Cx(0.0, 0.0))) < 1e-13);
}

TEST_CASE("log_gamma agrees with the real lgamma on the positive axis") {
    for (double x : {0.5, 1.0, 2.5, 7.3, 20.0}) {
        CHECK(std::abs(log_gamma(Cx(x, 0.0)).real() - std::lgamma(x)) <
              1e-12 * (1.0 + std::abs(std::lgamma(x))));
        CHECK(std::abs(log_gamma(Cx(x, 0.0)).imag()) < 1e-13);
    }
}

TEST_CASE("hypergeometric 2F1 matches the frozen reference value") {
    CHECK(rel(hyp2f1(Cx(1.0, 0.5), Cx(2.0, -0.3), Cx(3.0, 0.0), Cx(0.4, 0.0)),
              oracle::ORACLE_HYP2F1_A) < 1e-12);
}

TEST_CASE("hypergeometric 2F1 elementary reductions") {
    const Cx a(1.3, -0.4), z(0.35, 0.2);
    // 2F1(a, b; b; z) = (1-z)^(-a)
    CHECK(rel(hyp2f1(a, Cx(2.5, 0.0), Cx(2.5, 0.0), z),
              std::exp(-a * std::log(1.0 - z))) < 1e-12);
    // polynomial case a = -2
    const Cx b(1.7, 0.0), c(2.2, 0.0);
    const Cx poly = 1.0 - 2.0 * b / c * z + b * (b + 1.0) / (c * (c + 1.0)) * z * z;
    CHECK(rel(hyp2f1(Cx(-2.0, 0.0), b, c, z), poly) < 1e-13);
    // 2F1(1, 1; 2; z) = -log(1-z)/z
    CHECK(rel(hyp2f1(Cx(1.0, 0.0), Cx(1.0, 0.0), Cx(2.0, 0.0), z),
              -std::log(1.0 - z) / z) < 1e-12);
}

TEST_CASE("hypergeometric 2F1 contiguity in the third parameter on random draws") {
    // c(c-1)(z-1) F(c-1) + c[c-1-(2c-a-b-1)z] F(c) + (c-a)(c-b)z F(c+1) = 0
    testutil::Rng rng(101);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Cx a = rng.cuni(-4.0, 4.0, -4.0, 4.0);
        const Cx b = rng.cuni(-4.0, 4.0, -4.0, 4.0);
        Cx c = rng.cuni(0.7, 5.0, -2.0, 2.0);
        Cx z;
        if (i % 3 == 0) {
            // outside the unit disc: exercised through the continuation routes
            const double s = (i % 6 == 0) ? 1.0 : -1.0;
            z = Cx(rng.uni(-6.0, 6.0), s * rng.uni(0.4, 2.0));
        } else {
            z = rng.cuni(-0.75, 0.75, -0.5, 0.5);
        }
        const Cx fm = hyp2f1(a, b, c - 1.0, z);
        const Cx f0 = hyp2f1(a, b, c, z);
        const Cx fp = hyp2f1(a, b, c + 1.0, z);
        const Cx t1 = c * (c - 1.0) * (z - 1.0) * fm;
        const Cx t2 = c * (c - 1.0 - (2.0 * c - a - b - 1.0) * z) * f0;
        const Cx t3 = (c - a) * (c - b) * z * fp;
        const double res = std::abs(t1 + t2 + t3) /
                           (std::abs(t1) + std::abs(t2) + std::abs(t3) + 1e-300);
        worst = std::max(worst, res);
    }
    INFO("worst contiguity residual " << worst);
    CHECK(worst < 1e-9);
}

TEST_CASE("Bessel functions match the frozen references") {
    CHECK(rel(hankel1(0.5, Cx(2.0, 1.0)), oracle::ORACLE_HANKEL1_HALF_2_1I) < 1e-12);
    CHECK(rel(bessel_i(1.3, Cx(0.8, 0.6)), oracle::ORACLE_BESSELI_13_08_06I) < 1e-12);
    CHECK(rel(bessel_k(0.7, Cx(1.2, -0.4)), oracle::ORACLE_BESSELK_07_12_M04I) < 1e-12);
}

TEST_CASE("half-integer Bessel functions reduce to elementary forms") {
    for (double x : {0.7, 2.0, 6.5}) {
        const Cx z(x, 0.0);
        CHECK(rel(bessel_i(0.5, z),
                  std::sqrt(2.0 / (pi * x)) * std::sinh(x)) < 1e-12);
        CHECK(rel(bessel_k(0.5, z),
                  std::sqrt(pi / (2.0 * x)) * std::exp(-x)) < 1e-12);
    }
}

TEST_CASE("pairwise summation is deterministic and order-stable") {
    testutil::Rng rng(7);
    std::vector<Cx> v(1023);
    for (auto& x : v) x = rng.cuni(-1.0, 1.0, -1.0, 1.0);
    const Cx s1 = pairwise_sum(v);
    const Cx s2 = pairwise_sum(v);
    CHECK(s1.real() == s2.real());
    CHECK(s1.imag() == s2.imag());
    // small-vector exactness
    std::vector<Cx> w{Cx(1.0, 0.0), Cx(2.0, 0.0), Cx(3.0, 0.0)};
    CHECK(pairwise_sum(w) == Cx(6.0, 0.0));
}

TEST_CASE("Gauss panels integrate polynomials to machine accuracy") {
    // degree-9 polynomial, 16-point rule is exact
    auto f = [](double x) { return Cx(std::pow(x, 9.0) - 3.0 * x * x + 1.0, 0.0); };
    const Cx got = integrate_gauss(f, -1.0, 2.0, 16);
    const double exact = (std::pow(2.0, 10.0) - 1.0) / 10.0 - (8.0 + 1.0) + 3.0;
    CHECK(std::abs(got.real() - exact) < 1e-10);
}

TEST_CASE("adaptive quadrature meets tolerance on smooth oscillatory integrands") {
    auto f = [](double x) { return std::exp(Cx(0.0, 3.0) * x) * std::exp(-x * x); };
    const Cx got = integrate_adaptive(f, -6.0, 6.0, 1e-12);
    // exact Gaussian Fourier transform, tails below 1e-15
    const Cx exact = std::sqrt(pi) * std::exp(Cx(-2.25, 0.0));
    CHECK(rel(got, exact) < 1e-10);
}

TEST_CASE("adaptive quadrature reports non-convergence instead of silent error") {
    // near-singular integrand with a depth limit too small to resolve it
    auto f = [](double x) { return Cx(1.0 / std::sqrt(x + 1e-14), 0.0); };
    CHECK_THROWS_AS(integrate_adaptive(f, 0.0, 1.0, 1e-13, 4), ConvergenceError);
}
