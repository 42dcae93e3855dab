// SPDX-License-Identifier: Apache-2.0
// Fixed-frequency and time-domain radiation Green functions on both constant
// curvature geometries: closed-form anchors, contour/residue equivalence, the
// flat-space limit, the wave-equation residual, and causal arrival fronts.
#include <catch2/catch_amalgamated.hpp>

#include "gegreen/gegreen.hpp"
#include "oracle_values.hpp"
#include "test_helpers.hpp"

using namespace gegreen;
using testutil::rel;
using Cx = ComplexValue;

namespace {

struct FrontReport {
    double peak = 0.0;
    double pre = 0.0; // max magnitude more than two steps before arrival
};

FrontReport front_report(const std::vector<double>& tg, const std::vector<Cx>& s,
                         double arrival, double dt) {
    FrontReport r;
    for (std::size_t i = 0; i < tg.size(); ++i) {
        r.peak = std::max(r.peak, std::abs(s[i]));
        if (tg[i] < arrival - 2.0 * dt) r.pre = std::max(r.pre, std::abs(s[i]));
    }
    return r;
}

std::vector<double> time_grid(double lo, double hi, double dt) {
    std::vector<double> tg;
    for (double t = lo; t <= hi + 1e-12; t += dt) tg.push_back(t);
    return tg;
}

} // namespace

TEST_CASE("three-dimensional closed forms match the frozen references") {
    // propagating hyperbolic, kR = 5
    PhysicalParams ph{3.0, 1.0, 5.0, 1.0};
    CHECK(rel(green_radial_H(ph, 1.0, 0.4).value, oracle::ORACLE_GREEN_RH_D3_KR5_TH1_TP04) <
          1e-11);
    CHECK(rel(green_scalar_H(ph, 1.3).value, oracle::ORACLE_GREEN_SH_D3_KR5_TH13) < 1e-11);
    // long-wavelength hyperbolic strip, kR = 0.5
    PhysicalParams pe{3.0, 1.0, 0.5, 1.0};
    const GreenValue ge = green_scalar_H(pe, 3.0);
    CHECK(ge.regime == Regime::Evanescent);
    CHECK(rel(ge.value, oracle::ORACLE_GREEN_SH_D3_KR05_TH3) < 1e-11);
    // spherical, kR = 4
    PhysicalParams ps{3.0, 1.0, 4.0, 1.0};
    CHECK(rel(green_radial_S(ps, 1.0, 0.3).value, oracle::ORACLE_GREEN_RS_D3_KR4_TH1_TP03) <
          1e-11);
    CHECK(rel(green_scalar_S(ps, 1.2).value, oracle::ORACLE_GREEN_SS_D3_KR4_TH12) < 1e-11);
}

TEST_CASE("long-wavelength hyperbolic decay rate") {
    // |G| falls off like e^{-X Theta}/sinh(Theta) with X = sqrt(alpha^2 - k^2R^2)
    PhysicalParams pe{3.0, 1.0, 0.5, 1.0};
    const double X = std::sqrt(1.0 - 0.25);
    const double ratio = std::abs(green_scalar_H(pe, 6.0).value) * std::sinh(6.0) /
                         (std::abs(green_scalar_H(pe, 3.0).value) * std::sinh(3.0));
    CHECK(std::abs(ratio - std::exp(-3.0 * X)) < 1e-10);
}

TEST_CASE("scalar spherical value agrees between the one-sided and cut forms") {
    PhysicalParams ps{3.4, 1.0, 4.0, 1.0};
    for (double th : {0.7, 1.9, 2.8}) {
        CHECK(rel(green_scalar_S(ps, th).value, green_scalar_S_cut_form(ps, th).value) <
              1e-12);
    }
}

TEST_CASE("retarded pole residues reproduce the closed-form Green functions") {
    PhysicalParams ph{2.6, 1.0, 5.0, 1.0};
    CHECK(rel(contour_pole_residue(ph, ContourPole::MinusSigma, Space::Hyperbolic, 1.0, 0.4)
                  .value,
              green_radial_H(ph, 1.0, 0.4).value) < 1e-14);
    PhysicalParams ps{3.2, 1.0, 4.0, 1.0};
    CHECK(rel(contour_pole_residue(ps, ContourPole::PlusTau, Space::Spherical, 1.3, 0.5)
                  .value,
              green_radial_S(ps, 1.3, 0.5).value) < 1e-14);
}

TEST_CASE("numerical retarded contour matches the residue evaluation") {
    PhysicalParams p{3.0, 1.0, 5.0, 1.0};
    CHECK(rel(green_contour_H(p, 1.0, 0.4), green_radial_H(p, 1.0, 0.4).value) < 1e-10);
    PhysicalParams pf{2.5, 1.0, 6.0, 1.0};
    CHECK(rel(green_contour_H(pf, 1.2, 0.5), green_radial_H(pf, 1.2, 0.5).value) < 1e-10);
}

TEST_CASE("flat-space limit at short distance and high frequency") {
    // doubling sweep at Theta = 0.1 keeps kR*Theta inside the regime guard
    double prev_h = 1e300, prev_s = 1e300;
    for (double kr : {125.0, 250.0, 500.0}) {
        PhysicalParams p{3.0, 1.0, kr, 1.0};
        const double dev_h = flat_limit_check(p, 0.1, Space::Hyperbolic);
        const double dev_s = flat_limit_check(p, 0.1, Space::Spherical);
        CHECK(dev_h < prev_h);
        CHECK(dev_s < prev_s);
        prev_h = dev_h;
        prev_s = dev_s;
    }
    CHECK(prev_h < 0.05);
    CHECK(prev_s < 0.05);
    // pinned short-distance point
    PhysicalParams p{3.0, 1.0, 500.0, 1.0};
    CHECK(flat_limit_check(p, 0.05, Space::Hyperbolic) < 0.05);
    CHECK(flat_limit_check(p, 0.05, Space::Spherical) < 0.05);
}

TEST_CASE("radial Green functions satisfy the wave equation away from the source") {
    for (Space sp : {Space::Hyperbolic, Space::Spherical}) {
        PhysicalParams p{3.0, 1.0, 5.0, 1.0};
        std::vector<double> grid;
        for (int i = 0; i <= 1000; ++i) grid.push_back(0.5 + 1e-3 * i);
        const auto rep = wave_residual(sp, p, grid, 1.0);
        INFO((sp == Space::Hyperbolic ? "hyperbolic" : "spherical")
             << " offdiag " << rep.offdiag_residual << " scale " << rep.scale
             << " strength " << rep.delta_strength);
        CHECK(rep.offdiag_residual < 1e-4 * rep.scale);
        const double w = std::pow(sp == Space::Hyperbolic ? std::sinh(1.0) : std::sin(1.0),
                                  2.0 * p.alpha());
        CHECK(std::abs(rep.delta_strength * w - 1.0) < 0.02);
    }
}

TEST_CASE("time-domain fronts are causal and the rejected branches are not") {
    const double dt = 0.2;
    const auto tg = time_grid(-2.0, 4.0, dt);
    const TimeDomainSpec spec{400.0, 4001, -1.0, 0.1};
    // hyperbolic retarded front arrives at the geodesic separation
    {
        PhysicalParams p{3.0, 1.0, 5.0, 1.0};
        const auto s = time_domain_green(p, Space::Hyperbolic, 1.0, 0.4, tg, spec);
        const auto r = front_report(tg, s, 0.6, dt);
        CHECK(r.pre < 1e-4 * r.peak);
        // the advanced pole choice radiates before the arrival time
        const auto sa =
            time_domain_green(p, Space::Hyperbolic, 1.0, 0.4, tg, spec, ContourPole::PlusSigma);
        const auto ra = front_report(tg, sa, 0.6, dt);
        CHECK(ra.pre > 1e-2 * ra.peak);
    }
    // spherical retarded front
    {
        PhysicalParams p{3.0, 1.0, 4.0, 1.0};
        const auto s = time_domain_green(p, Space::Spherical, 2.2, 0.5, tg, spec);
        const auto r = front_report(tg, s, 1.7, dt);
        CHECK(r.pre < 1e-4 * r.peak);
        const auto sa =
            time_domain_green(p, Space::Spherical, 2.2, 0.5, tg, spec, ContourPole::MinusTau);
        const auto ra = front_report(tg, sa, 1.7, dt);
        CHECK(ra.pre > 1e-2 * ra.peak);
    }
}

TEST_CASE("validation and regime errors in the Green-function layer") {
    PhysicalParams p{3.0, 1.0, 5.0, 1.0};
    CHECK_THROWS_AS(green_scalar_H(p, 0.0), DegenerateParams);
    CHECK_THROWS_AS(green_radial_S(p, 3.5, 0.5), DegenerateParams);
    CHECK_THROWS_AS(PhysicalParams({-1.0, 1.0, 5.0, 1.0}).validate(), DegenerateParams);
    // pole/space mismatch
    CHECK_THROWS_AS(contour_pole_residue(p, ContourPole::PlusTau, Space::Hyperbolic, 1.0, 0.4),
                    PoleMissing);
    // the numerical contour needs the propagating regime
    PhysicalParams pe{3.0, 1.0, 0.5, 1.0};
    CHECK_THROWS_AS(green_contour_H(pe, 1.0, 0.4), RegimeViolation);
    // flat-limit probe outside its regime
    CHECK_THROWS_AS(flat_limit_check(pe, 0.05, Space::Hyperbolic), RegimeViolation);
    // time-domain synthesis validation
    const auto tg = time_grid(-1.0, 1.0, 0.2);
    CHECK_THROWS_AS(time_domain_green(p, Space::Hyperbolic, 1.0, 0.4, tg,
                                      TimeDomainSpec{400.0, 8, -1.0, 0.1}),
                    DegenerateParams);
    CHECK_THROWS_AS(time_domain_green(p, Space::Spherical, 1.0, 0.4, tg,
                                      TimeDomainSpec{400.0, 4001, -1.0, 0.1},
                                      ContourPole::MinusSigma),
                    PoleMissing);
}
