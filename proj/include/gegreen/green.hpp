// SPDX-License-Identifier: Apache-2.0
#ifndef GEGREEN_GREEN_HPP
#define GEGREEN_GREEN_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "bessel.hpp"
#include "errors.hpp"
#include "gamma.hpp"
#include "gegenbauer.hpp"
#include "mehler_fock.hpp"
#include "quadrature.hpp"
#include "types.hpp"

namespace gegreen {

// =========================================================================
// Physical parameters and result types
// =========================================================================

// Dimension d (possibly non-integer), curvature radius R, angular frequency
// omega, and wave speed c.  Derived quantities:
//   alpha = (d-1)/2,      k = omega/c,
//   sigma = sqrt(k^2R^2 - alpha^2)   (hyperbolic shifted wavenumber),
//   tau   = sqrt(k^2R^2 + alpha^2)   (spherical shifted wavenumber).
// In the long-wavelength strip k^2R^2 < alpha^2 the hyperbolic branch is
// sigma = +i sqrt(alpha^2 - k^2R^2), which makes the degree -i sigma positive
// real and selects the exponentially decaying (bounded) solution.
struct PhysicalParams {
    double d = 3.0;
    double R = 1.0;
    double omega = 1.0;
    double c = 1.0;

    void validate() const {
        if (!(d > 0.0) || !std::isfinite(d)) {
            throw DegenerateParams("PhysicalParams: requires d > 0");
        }
        if (!(R > 0.0) || !std::isfinite(R)) {
            throw DegenerateParams("PhysicalParams: requires R > 0");
        }
        if (!(c > 0.0) || !std::isfinite(c)) {
            throw DegenerateParams("PhysicalParams: requires c > 0");
        }
        if (!std::isfinite(omega)) {
            throw DegenerateParams("PhysicalParams: omega must be finite");
        }
    }

    double alpha() const { return 0.5 * (d - 1.0); }
    double k() const { return omega / c; }
    double kR() const { return omega * R / c; }

    bool evanescent() const { return kR() * kR() < alpha() * alpha(); }

    // Real-axis sigma: odd in omega in the propagating regime, +i sqrt in the
    // evanescent strip (boundary value from the upper half omega plane).
    ComplexValue sigma() const {
        const double a = alpha();
        const double x = kR();
        if (x * x >= a * a) {
            const double s = std::sqrt(x * x - a * a);
            return ComplexValue(omega >= 0.0 ? s : -s, 0.0);
        }
        return ComplexValue(0.0, std::sqrt(a * a - x * x));
    }

    // Continuation of sigma to complex frequency w with Im w >= 0, analytic in
    // the upper half plane and matching sigma() on the real axis.
    ComplexValue sigma_at(ComplexValue w) const {
        if (w.imag() == 0.0) {
            PhysicalParams q = *this;
            q.omega = w.real();
            return q.sigma();
        }
        const double a = alpha();
        const ComplexValue xr = w * R / c;
        return detail::I_unit * std::sqrt(ComplexValue(a, 0.0) - xr) *
               std::sqrt(ComplexValue(a, 0.0) + xr);
    }

    // Real-axis tau >= alpha; even in omega.
    double tau() const { return std::hypot(kR(), alpha()); }

    // Continuation of tau to complex w near the positive real axis.
    ComplexValue tau_at(ComplexValue w) const {
        const double a = alpha();
        const ComplexValue xr = w * R / c;
        return std::sqrt(xr * xr + ComplexValue(a * a, 0.0));
    }
};

enum class Regime { Propagating, Evanescent, Caustic };

struct GreenValue {
    ComplexValue value{};
    Regime regime = Regime::Propagating;
    SpaceTag space{};
};

// Composite angle between source and field points.
//   Hyperbolic: cosh(Theta) = cosh(t) cosh(t') - sinh(t) sinh(t') cos(phi)
//   Spherical:  cos(Theta)  = cos(t) cos(t') + sin(t) sin(t') cos(phi)
struct CompositeAngle {
    double theta = 0.0;
    double theta_prime = 0.0;
    double phi = 0.0;
    double Theta = 0.0;

    static CompositeAngle make(double theta, double theta_prime, double phi, Space space) {
        CompositeAngle out;
        out.theta = theta;
        out.theta_prime = theta_prime;
        out.phi = phi;
        out.Theta = composite_angle(theta, theta_prime, phi, space);
        return out;
    }
};

// Solid angle Omega = 2 pi^alpha / Gamma(alpha) and the radius power
// R^(2 alpha - 1) = R^(d-2) divided out of the scalar Green functions.
struct NormalizationConstants {
    double solid_angle = 0.0;
    double radius_power = 0.0;
};

inline NormalizationConstants normalization_constants(const PhysicalParams& p) {
    p.validate();
    const double a = p.alpha();
    NormalizationConstants n;
    n.solid_angle = 2.0 * std::pow(pi, a) / std::exp(std::lgamma(a));
    n.radius_power = std::pow(p.R, 2.0 * a - 1.0);
    return n;
}

namespace detail {

// 2^(2a-1) [Gamma(a)]^2 Gamma(nu-a+1)/Gamma(nu+a)
inline ComplexValue radial_prefactor(ComplexValue nu, ComplexValue a) {
    return std::exp((2.0 * a - 1.0) * std::log(2.0) + 2.0 * log_gamma(a) +
                    log_gamma(nu - a + 1.0) - log_gamma(nu + a));
}

// Gamma(a) / (2 pi^a R^(2a-1))
inline ComplexValue scalar_prefactor(ComplexValue a, double R) {
    return std::exp(log_gamma(a) - a * std::log(pi) - (2.0 * a - 1.0) * std::log(R)) / 2.0;
}

inline void order_angles(double& lo, double& hi) {
    if (lo > hi) std::swap(lo, hi);
}

} // namespace detail

// =========================================================================
// Frequency-domain Green functions
// =========================================================================

// Radial (phi-integrated) retarded Green function on the hyperbolic space.
inline GreenValue green_radial_H(const PhysicalParams& p, double theta, double theta_prime) {
    p.validate();
    if (!(theta > 0.0) || !(theta_prime > 0.0) || !std::isfinite(theta) ||
        !std::isfinite(theta_prime)) {
        throw DegenerateParams("green_radial_H: requires theta, theta_prime > 0");
    }
    const ComplexValue a(p.alpha(), 0.0);
    const ComplexValue nu = -detail::I_unit * p.sigma();
    detail::check_degree_pole(nu, a);
    double lo = theta_prime, hi = theta;
    detail::order_angles(lo, hi);
    const ComplexValue dv = eval_D({nu, a, BranchedArg{ComplexValue(std::cosh(hi), 0.0)}});
    const ComplexValue cv = eval_C({nu, a, BranchedArg{ComplexValue(std::cosh(lo), 0.0)}});
    GreenValue out;
    out.value = std::exp(-detail::I_unit * pi * a) * detail::radial_prefactor(nu, a) * dv * cv;
    out.regime = p.evanescent() ? Regime::Evanescent : Regime::Propagating;
    out.space = SpaceTag{Space::Hyperbolic};
    return out;
}

// Scalar retarded Green function on the hyperbolic space, a function of the
// composite angle Theta only.
inline GreenValue green_scalar_H(const PhysicalParams& p, double Theta) {
    p.validate();
    if (!(Theta > 0.0) || !std::isfinite(Theta)) {
        throw DegenerateParams("green_scalar_H: requires Theta > 0");
    }
    const ComplexValue a(p.alpha(), 0.0);
    const ComplexValue nu = -detail::I_unit * p.sigma();
    detail::check_degree_pole(nu, a);
    const ComplexValue dv = eval_D({nu, a, BranchedArg{ComplexValue(std::cosh(Theta), 0.0)}});
    GreenValue out;
    out.value = std::exp(-detail::I_unit * pi * a) * detail::scalar_prefactor(a, p.R) * dv;
    out.regime = p.evanescent() ? Regime::Evanescent : Regime::Propagating;
    out.space = SpaceTag{Space::Hyperbolic};
    return out;
}

// Radial (phi-integrated) retarded Green function on the sphere.
inline GreenValue green_radial_S(const PhysicalParams& p, double theta, double theta_prime) {
    p.validate();
    if (!(theta > 0.0) || !(theta < pi) || !(theta_prime > 0.0) || !(theta_prime < pi)) {
        throw DegenerateParams("green_radial_S: requires theta, theta_prime in (0, pi)");
    }
    const ComplexValue a(p.alpha(), 0.0);
    const ComplexValue nu(p.tau(), 0.0);
    detail::check_degree_pole(nu, a);
    double lo = theta_prime, hi = theta;
    detail::order_angles(lo, hi);
    const ComplexValue dv = eval_D({nu, a, minus_i0(std::cos(hi))});
    const ComplexValue cv = eval_C({nu, a, BranchedArg{ComplexValue(std::cos(lo), 0.0)}});
    GreenValue out;
    out.value = detail::I_unit * std::exp(-2.0 * detail::I_unit * pi * a) *
                detail::radial_prefactor(nu, a) * dv * cv;
    out.regime = Regime::Propagating;
    out.space = SpaceTag{Space::Spherical};
    return out;
}

// Scalar retarded Green function on the sphere.  Within 1e-6 of the antipode
// Theta = pi the value is computed from the one-sided limit and tagged as a
// caustic; the divergence there reflects wave refocusing, not a source.
inline GreenValue green_scalar_S(const PhysicalParams& p, double Theta) {
    p.validate();
    if (!(Theta > 0.0) || !(Theta <= pi) || !std::isfinite(Theta)) {
        throw DegenerateParams("green_scalar_S: requires Theta in (0, pi]");
    }
    const bool caustic = std::abs(Theta - pi) < 1e-6;
    const double th = caustic ? pi - 1e-6 : Theta;
    const ComplexValue a(p.alpha(), 0.0);
    const ComplexValue nu(p.tau(), 0.0);
    detail::check_degree_pole(nu, a);
    const ComplexValue dv = eval_D({nu, a, minus_i0(std::cos(th))});
    GreenValue out;
    out.value = detail::I_unit * std::exp(-2.0 * detail::I_unit * pi * a) *
                detail::scalar_prefactor(a, p.R) * dv;
    out.regime = caustic ? Regime::Caustic : Regime::Propagating;
    out.space = SpaceTag{Space::Spherical};
    return out;
}

// Equivalent form of the spherical scalar Green function through the
// real-axis cut functions: i Gamma(a)/(4 pi^a R^(2a-1)) (C_cut - i D_cut).
inline GreenValue green_scalar_S_cut_form(const PhysicalParams& p, double Theta) {
    p.validate();
    if (!(Theta > 0.0) || !(Theta < pi)) {
        throw DegenerateParams("green_scalar_S_cut_form: requires Theta in (0, pi)");
    }
    const ComplexValue a(p.alpha(), 0.0);
    const ComplexValue nu(p.tau(), 0.0);
    detail::check_degree_pole(nu, a);
    const GegenbauerArgs args{nu, a, BranchedArg{ComplexValue(std::cos(Theta), 0.0)}};
    const ComplexValue cc = eval_cut(Kind::CutC, args);
    const ComplexValue dd = eval_cut(Kind::CutD, args);
    GreenValue out;
    out.value = detail::I_unit * detail::scalar_prefactor(a, p.R) * 0.5 *
                (cc - detail::I_unit * dd);
    out.regime = Regime::Propagating;
    out.space = SpaceTag{Space::Spherical};
    return out;
}

// =========================================================================
// Euclidean (flat-space) limit
// =========================================================================

// Relative deviation of the scalar Green function from the flat-space form
// (i/4) (k/(2 pi R Theta))^(a-1/2) H^(1)_(a-1/2)(k R Theta), valid for
// k R Theta >> 1 with Theta << 1.
inline double flat_limit_check(const PhysicalParams& p, double Theta, Space space) {
    p.validate();
    const double krt = std::abs(p.kR()) * Theta;
    if (!(krt >= 10.0) || !(Theta <= 0.1) || !(Theta > 0.0)) {
        throw RegimeViolation("flat_limit_check: requires kR*Theta >= 10 and 0 < Theta <= 0.1");
    }
    const double a = p.alpha();
    const ComplexValue g = (space == Space::Hyperbolic) ? green_scalar_H(p, Theta).value
                                                        : green_scalar_S(p, Theta).value;
    const ComplexValue flat = ComplexValue(0.0, 0.25) *
                              std::pow(std::abs(p.k()) / (2.0 * pi * p.R * Theta), a - 0.5) *
                              hankel1(a - 0.5, ComplexValue(krt, 0.0));
    return std::abs(g - flat) / std::abs(flat);
}

// =========================================================================
// Pole residues and the numerical retarded contour
// =========================================================================

enum class ContourPole { PlusSigma, MinusSigma, PlusTau, MinusTau };

namespace detail {

// Closed-form pole contributions at complex frequency w (Im w >= 0), used
// both for the residue API and for time-domain synthesis.
inline ComplexValue pole_green_value(const PhysicalParams& p, ComplexValue w, ContourPole pole,
                                     double theta_gt, double theta_lt) {
    const ComplexValue a(p.alpha(), 0.0);
    switch (pole) {
        case ContourPole::MinusSigma:
        case ContourPole::PlusSigma: {
            const ComplexValue s = p.sigma_at(w);
            const ComplexValue nu = (pole == ContourPole::MinusSigma) ? -I_unit * s : I_unit * s;
            check_degree_pole(nu, a);
            const ComplexValue dv =
                eval_D({nu, a, BranchedArg{ComplexValue(std::cosh(theta_gt), 0.0)}});
            const ComplexValue cv =
                eval_C({nu, a, BranchedArg{ComplexValue(std::cosh(theta_lt), 0.0)}});
            return std::exp(-I_unit * pi * a) * radial_prefactor(nu, a) * dv * cv;
        }
        case ContourPole::PlusTau:
        case ContourPole::MinusTau: {
            const ComplexValue t = p.tau_at(w);
            const ComplexValue nu = (pole == ContourPole::PlusTau) ? t : -t;
            check_degree_pole(nu, a);
            const ComplexValue dv = eval_D({nu, a, minus_i0(std::cos(theta_gt))});
            const ComplexValue cv =
                eval_C({nu, a, BranchedArg{ComplexValue(std::cos(theta_lt), 0.0)}});
            const ComplexValue base = I_unit * std::exp(-2.0 * I_unit * pi * a) *
                                      radial_prefactor(nu, a) * dv * cv;
            return (pole == ContourPole::PlusTau) ? base : -base;
        }
    }
    throw PoleMissing("pole_green_value: unknown pole");
}

} // namespace detail

// Contribution of a single denominator pole to the radial Green function,
// with the closure orientation of the retarded construction.  MinusSigma
// reproduces green_radial_H exactly; PlusTau reproduces green_radial_S.
inline GreenValue contour_pole_residue(const PhysicalParams& p, ContourPole pole, Space space,
                                       double theta, double theta_prime) {
    p.validate();
    const bool hyper = (pole == ContourPole::PlusSigma || pole == ContourPole::MinusSigma);
    if (hyper != (space == Space::Hyperbolic)) {
        throw PoleMissing("contour_pole_residue: pole does not exist on the requested space");
    }
    if (hyper && std::abs(p.sigma()) < 1e-8) {
        throw PoleMissing("contour_pole_residue: coincident poles at sigma = 0");
    }
    double lo = theta_prime, hi = theta;
    detail::order_angles(lo, hi);
    if (hyper) {
        if (!(lo > 0.0)) {
            throw DegenerateParams("contour_pole_residue: requires theta, theta_prime > 0");
        }
    } else if (!(lo > 0.0) || !(hi < pi)) {
        throw DegenerateParams("contour_pole_residue: requires theta, theta_prime in (0, pi)");
    }
    GreenValue out;
    out.value =
        detail::pole_green_value(p, ComplexValue(p.omega, 0.0), pole, hi, lo);
    out.regime = (hyper && p.evanescent()) ? Regime::Evanescent : Regime::Propagating;
    out.space = SpaceTag{hyper ? Space::Hyperbolic : Space::Spherical};
    return out;
}

// Direct quadrature of the retarded spectral representation on the
// hyperbolic space: the lambda contour runs above the pole at -sigma and
// below the pole at +sigma, with both tails bent into the lower half plane
// where the integrand decays like e^{Im(lambda) (theta_> - theta_<)}.
inline ComplexValue green_contour_H(const PhysicalParams& p, double theta, double theta_prime,
                                    double hat_halfwidth = 0.4, double rail_depth = 0.25) {
    p.validate();
    double lo = theta_prime, hi = theta;
    detail::order_angles(lo, hi);
    if (!(lo > 0.0)) {
        throw DegenerateParams("green_contour_H: requires theta, theta_prime > 0");
    }
    const double s = hi - lo;
    if (s < 0.05) {
        throw DegenerateParams("green_contour_H: requires |theta - theta_prime| >= 0.05 so the "
                               "bent tails converge");
    }
    if (p.evanescent()) {
        throw RegimeViolation("green_contour_H: the numerical contour requires the propagating "
                              "regime (real sigma)");
    }
    const double sig = std::abs(p.sigma().real());
    const ComplexValue a(p.alpha(), 0.0);
    const double sig2 = sig * sig;
    auto f = [&](ComplexValue lam) {
        const ComplexValue nu = detail::I_unit * lam;
        const ComplexValue dv = eval_D({nu, a, BranchedArg{ComplexValue(std::cosh(hi), 0.0)}});
        const ComplexValue cv = eval_C({nu, a, BranchedArg{ComplexValue(std::cosh(lo), 0.0)}});
        return detail::kernel_weight(nu, a) * dv * cv / (lam * lam - sig2);
    };
    auto segment = [&](ComplexValue za, ComplexValue zb, double panel_len) {
        const double len = std::abs(zb - za);
        const int np = std::max(1, static_cast<int>(std::ceil(len / panel_len)));
        std::vector<ComplexValue> parts(static_cast<std::size_t>(np));
        for (int m = 0; m < np; ++m) {
            const double t0 = double(m) / np, t1 = double(m + 1) / np;
            parts[static_cast<std::size_t>(m)] = integrate_gauss(
                [&](double t) { return f(za + t * (zb - za)) * (zb - za); }, t0, t1, 16);
        }
        return pairwise_sum(parts);
    };
    const double h = rail_depth;
    const double hw = std::min(hat_halfwidth, 0.45 * sig);
    const double L = sig + 8.0;
    const double Y = h + std::min(80.0, 40.0 / s);
    const ComplexValue mih(0.0, -h), pih(0.0, h);
    std::vector<ComplexValue> legs;
    legs.push_back(segment(ComplexValue(-L, -Y), ComplexValue(-L, -h), 0.5));
    legs.push_back(segment(ComplexValue(-L, -h), ComplexValue(-sig - hw, -h), 0.5));
    legs.push_back(segment(ComplexValue(-sig - hw, -h), ComplexValue(-sig - hw, h), 0.2));
    legs.push_back(segment(ComplexValue(-sig - hw, h), ComplexValue(-sig + hw, h), 0.2));
    legs.push_back(segment(ComplexValue(-sig + hw, h), ComplexValue(-sig + hw, -h), 0.2));
    legs.push_back(segment(ComplexValue(-sig + hw, -h), ComplexValue(L, -h), 0.5));
    legs.push_back(segment(ComplexValue(L, -h), ComplexValue(L, -Y), 0.5));
    return std::exp(-detail::I_unit * pi * a) / (2.0 * pi) * pairwise_sum(legs);
}

// =========================================================================
// Time-domain synthesis
// =========================================================================

// Uniform symmetric frequency grid, Hermitian spectrum (negative frequencies
// by conjugation), smooth cosine rolloff over the outer taper_fraction of the
// band, and the omega + i epsilon retarded prescription (default
// epsilon = 3 / T with T the time-window length).
struct TimeDomainSpec {
    double omega_max = 0.0;
    int n_omega = 0;
    double epsilon = -1.0; // < 0: use 3 / (time window length)
    double taper_fraction = 0.1;

    void validate() const {
        if (!(omega_max > 0.0)) {
            throw DegenerateParams("TimeDomainSpec: requires omega_max > 0");
        }
        if (n_omega < 16) {
            throw DegenerateParams("TimeDomainSpec: requires n_omega >= 16");
        }
        if (!(taper_fraction > 0.0) || !(taper_fraction < 0.5)) {
            throw DegenerateParams("TimeDomainSpec: taper_fraction must lie in (0, 0.5)");
        }
    }
};

namespace detail {

inline std::vector<ComplexValue> synthesize_time_series(
    const std::function<ComplexValue(ComplexValue)>& g_of_w, const std::vector<double>& t_grid,
    const TimeDomainSpec& spec, double min_auto_epsilon = 0.0) {
    spec.validate();
    if (t_grid.empty()) {
        throw DegenerateParams("time_domain_green: empty time grid");
    }
    double span = t_grid.back() - t_grid.front();
    if (!(span > 0.0)) span = std::abs(t_grid.back()) + 1.0;
    const double eps =
        (spec.epsilon >= 0.0) ? spec.epsilon : std::max(3.0 / span, min_auto_epsilon);
    const int n = spec.n_omega | 1; // force odd so omega = 0 is a node
    const double dw = 2.0 * spec.omega_max / (n - 1);
    // spectrum on the non-negative half grid; negative half by conjugation
    const int nh = (n + 1) / 2;
    auto half = parallel_map<ComplexValue>(nh, [&](int j) {
        const double w = j * dw;
        return g_of_w(ComplexValue(w, eps));
    });
    std::vector<double> wgrid(static_cast<std::size_t>(n));
    std::vector<ComplexValue> spec_vals(static_cast<std::size_t>(n));
    double peak = 0.0;
    for (int j = 0; j < n; ++j) {
        const double w = -spec.omega_max + j * dw;
        wgrid[static_cast<std::size_t>(j)] = w;
        const int jh = std::abs(j - (nh - 1));
        ComplexValue v = half[static_cast<std::size_t>(jh)];
        if (w < 0.0) v = std::conj(v);
        // cosine rolloff over the outer taper_fraction of the band
        const double u = std::abs(w) / spec.omega_max;
        const double edge = 1.0 - spec.taper_fraction;
        double win = 1.0;
        if (u > edge) {
            win = 0.5 * (1.0 + std::cos(pi * (u - edge) / spec.taper_fraction));
        }
        spec_vals[static_cast<std::size_t>(j)] = v * win;
        peak = std::max(peak, std::abs(v));
    }
    // the taper zeroes the endpoints; the untapered spectrum must already be
    // a subdominant fraction of the peak there or the window is too narrow
    const double endmag =
        std::max(std::abs(half[static_cast<std::size_t>(nh - 1)]), 0.0) / (peak + 1e-300);
    if (endmag > 0.2) {
        throw TailNotNegligible("time_domain_green: spectrum at omega_max exceeds 20% of its "
                                "peak; enlarge omega_max");
    }
    const int nt = static_cast<int>(t_grid.size());
    return parallel_map<ComplexValue>(nt, [&](int it) {
        const double t = t_grid[static_cast<std::size_t>(it)];
        std::vector<ComplexValue> terms(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            const std::size_t jj = static_cast<std::size_t>(j);
            terms[jj] = spec_vals[jj] * std::exp(-detail::I_unit * wgrid[jj] * t);
        }
        // undo the exponential window: the spectrum was sampled at omega + i eps,
        // i.e. the transform of G(t) e^{-eps t}
        return std::exp(eps * t) * dw / (2.0 * pi) * pairwise_sum(terms);
    });
}

} // namespace detail

// Time-domain radial Green function by discrete Fourier synthesis for the
// selected pole branch (MinusSigma / PlusTau are the retarded choices).
inline std::vector<ComplexValue> time_domain_green(const PhysicalParams& p, Space space,
                                                   double theta, double theta_prime,
                                                   const std::vector<double>& t_grid,
                                                   const TimeDomainSpec& spec,
                                                   ContourPole pole) {
    p.validate();
    const bool hyper = (pole == ContourPole::PlusSigma || pole == ContourPole::MinusSigma);
    if (hyper != (space == Space::Hyperbolic)) {
        throw PoleMissing("time_domain_green: pole does not exist on the requested space");
    }
    double lo = theta_prime, hi = theta;
    detail::order_angles(lo, hi);
    if (!(lo > 0.0) || (space == Space::Spherical && !(hi < pi))) {
        throw DegenerateParams("time_domain_green: angles outside the space's domain");
    }
    auto g = [&, hi, lo](ComplexValue w) {
        return detail::pole_green_value(p, w, pole, hi, lo);
    };
    // On the sphere the retarded branch of nu(omega) has a branch segment ending
    // at omega = i alpha c / R; the synthesis line must pass above it or the
    // wrapped segment contributes a smooth acausal floor.
    const double min_eps = hyper ? 0.0 : 1.25 * p.alpha() * p.c / p.R;
    return detail::synthesize_time_series(g, t_grid, spec, min_eps);
}

inline std::vector<ComplexValue> time_domain_green(const PhysicalParams& p, Space space,
                                                   double theta, double theta_prime,
                                                   const std::vector<double>& t_grid,
                                                   const TimeDomainSpec& spec) {
    return time_domain_green(p, space, theta, theta_prime, t_grid, spec,
                             space == Space::Hyperbolic ? ContourPole::MinusSigma
                                                        : ContourPole::PlusTau);
}

// Time-domain scalar Green function at composite angle Theta.
inline std::vector<ComplexValue> time_domain_green_scalar(const PhysicalParams& p, Space space,
                                                          double Theta,
                                                          const std::vector<double>& t_grid,
                                                          const TimeDomainSpec& spec) {
    p.validate();
    if (!(Theta > 0.0) || (space == Space::Spherical && !(Theta <= pi))) {
        throw DegenerateParams("time_domain_green_scalar: Theta outside the space's domain");
    }
    const ComplexValue a(p.alpha(), 0.0);
    const double th =
        (space == Space::Spherical && std::abs(Theta - pi) < 1e-6) ? pi - 1e-6 : Theta;
    auto g = [&, th](ComplexValue w) {
        if (space == Space::Hyperbolic) {
            const ComplexValue nu = -detail::I_unit * p.sigma_at(w);
            const ComplexValue dv =
                eval_D({nu, a, BranchedArg{ComplexValue(std::cosh(th), 0.0)}});
            return std::exp(-detail::I_unit * pi * a) * detail::scalar_prefactor(a, p.R) * dv;
        }
        const ComplexValue nu = p.tau_at(w);
        const ComplexValue dv = eval_D({nu, a, minus_i0(std::cos(th))});
        return detail::I_unit * std::exp(-2.0 * detail::I_unit * pi * a) *
               detail::scalar_prefactor(a, p.R) * dv;
    };
    const double min_eps =
        (space == Space::Spherical) ? 1.25 * p.alpha() * p.c / p.R : 0.0;
    return detail::synthesize_time_series(g, t_grid, spec, min_eps);
}

// =========================================================================
// Wave-equation residual
// =========================================================================

// Finite-difference application of the radial wave operator
//   -(w^2a)^{-1} d/dtheta (w^2a d/dtheta) - k^2 R^2,   w = sinh or sin,
// to the radial Green function on a uniform grid straddling theta_prime.
struct WaveResidualReport {
    double offdiag_residual = 0.0; // max |residual| outside the source window
    double scale = 0.0;            // max |k^2 R^2 G| over the grid
    double delta_strength = 0.0;   // |discrete residual integral| over the window
};

inline WaveResidualReport wave_residual(Space space, const PhysicalParams& p,
                                        const std::vector<double>& theta_grid,
                                        double theta_prime) {
    p.validate();
    const std::size_t n = theta_grid.size();
    if (n < 9) {
        throw DegenerateParams("wave_residual: grid must have at least 9 points");
    }
    const double h = theta_grid[1] - theta_grid[0];
    if (!(h > 0.0) || h > 1e-3 + 1e-12) {
        throw DegenerateParams("wave_residual: grid spacing must be positive and <= 1e-3");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(theta_grid[i] - theta_grid[i - 1] - h) > 1e-9 * (1.0 + h)) {
            throw DegenerateParams("wave_residual: grid must be uniform");
        }
    }
    if (!(theta_grid.front() < theta_prime) || !(theta_grid.back() > theta_prime)) {
        throw DegenerateParams("wave_residual: grid must straddle theta_prime");
    }
    const double krr = p.kR() * p.kR();
    auto weight = [&](double t) {
        return std::pow(space == Space::Hyperbolic ? std::sinh(t) : std::sin(t),
                        2.0 * p.alpha());
    };
    auto gval = detail::parallel_map<ComplexValue>(static_cast<int>(n), [&](int i) {
        const double t = theta_grid[static_cast<std::size_t>(i)];
        return (space == Space::Hyperbolic) ? green_radial_H(p, t, theta_prime).value
                                            : green_radial_S(p, t, theta_prime).value;
    });
    WaveResidualReport rep;
    ComplexValue window_sum(0.0, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double t = theta_grid[i];
        const double wp = weight(t + 0.5 * h);
        const double wm = weight(t - 0.5 * h);
        const ComplexValue flux =
            (wp * (gval[i + 1] - gval[i]) - wm * (gval[i] - gval[i - 1])) / (h * h);
        const ComplexValue res = -flux / weight(t) - krr * gval[i];
        rep.scale = std::max(rep.scale, std::abs(krr * gval[i]));
        if (std::abs(t - theta_prime) > 5.0 * h) {
            rep.offdiag_residual = std::max(rep.offdiag_residual, std::abs(res));
        } else {
            window_sum += res * h;
        }
    }
    rep.delta_strength = std::abs(window_sum);
    return rep;
}

} // namespace gegreen

#endif
