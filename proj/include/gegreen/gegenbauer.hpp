// SPDX-License-Identifier: Apache-2.0
#ifndef GEGREEN_GEGENBAUER_HPP
#define GEGREEN_GEGENBAUER_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "bessel.hpp"
#include "errors.hpp"
#include "gamma.hpp"
#include "hyp2f1.hpp"
#include "quadrature.hpp"
#include "types.hpp"

namespace gegreen {

namespace detail {

inline const ComplexValue I_unit(0.0, 1.0);

// Principal inverse cosh: log(z + sqrt(z-1) sqrt(z+1)); Re >= 0, cut on (-inf, 1].
inline ComplexValue acosh_principal(ComplexValue z) {
    return std::log(z + std::sqrt(z - 1.0) * std::sqrt(z + 1.0));
}

inline bool arg_on_cut(const BranchedArg& z) {
    return z.value.imag() == 0.0 && z.value.real() >= -1.0 && z.value.real() <= 1.0;
}

inline void check_degree_pole(ComplexValue nu, ComplexValue alpha) {
    if (near_nonpositive_integer(nu + alpha, 1e-12)) {
        throw PoleInDegree("Gegenbauer degree pole: nu + alpha within 1e-12 of a "
                           "non-positive integer");
    }
}

// -------------------------------------------------------------------------
// Second kind, argument off the cut.
//
// For z = cosh(th) with Re th > 0 the defining hypergeometric form reduces to
//   D = e^{i pi a} e^{-(nu+a) th} * Sum_n A_n t^n,   t = e^{-2 th},
//   A_n = Gamma(nu+a+n) / (Gamma(nu+1+n) Gamma(a)) * (a)_n / n!,
// which converges at the uniform rate |t|^n for every nu (the ratio
// (nu+a+n)/(nu+1+n) tends to 1), with no cancellation.  The coefficients are
// smooth across negative-integer nu; the exact-integer limit starts the sum
// at n = m where 1/Gamma(nu+1+n) first becomes nonzero.
// -------------------------------------------------------------------------
inline ComplexValue D_reduced_series(ComplexValue nu, ComplexValue alpha, ComplexValue th,
                                     int max_terms = 400000) {
    const ComplexValue t = std::exp(-2.0 * th);
    int n0 = 0;
    ComplexValue a0;
    const double rn = std::round(nu.real());
    const bool exact_neg_int = nu.imag() == 0.0 && rn <= -1.0 && std::abs(nu.real() - rn) < 1e-13;
    if (exact_neg_int) {
        const int m = static_cast<int>(-rn);
        n0 = m;
        // A_m = Gamma(nu+a+m) Gamma(a+m) / (Gamma(a)^2 Gamma(m+1)) * rgamma(nu+1+m)
        a0 = std::exp(log_gamma(nu + alpha + double(m)) + log_gamma(alpha + double(m)) -
                      2.0 * log_gamma(alpha) - log_gamma(ComplexValue(m + 1.0, 0.0))) *
             rgamma(nu + double(m) + 1.0) * std::pow(t, double(m));
    } else if (near_nonpositive_integer(nu + 1.0, 1e-6)) {
        // close enough to a degree pole that the log form would cancel badly
        a0 = std::exp(log_gamma(nu + alpha) - log_gamma(alpha)) * rgamma(nu + 1.0);
    } else {
        // fully logarithmic: the two gamma factors can separately overflow or
        // underflow for large |Im nu| even though their ratio is moderate
        a0 = std::exp(log_gamma(nu + alpha) - log_gamma(alpha) - log_gamma(nu + 1.0));
    }
    ComplexValue term = a0 * std::pow(t, 0.0); // t^{n0} folded into a0 above
    ComplexValue sum = term;
    int quiet = 0;
    for (int n = n0; n < max_terms; ++n) {
        term *= (nu + alpha + double(n)) * (alpha + double(n)) * t /
                ((nu + 1.0 + double(n)) * double(n + 1));
        sum += term;
        if (std::abs(term) < 1e-17 * (std::abs(sum) + 1e-290)) {
            if (++quiet >= 3) {
                return std::exp(ComplexValue(0.0, pi) * alpha - (nu + alpha) * th) * sum;
            }
        } else {
            quiet = 0;
        }
    }
    throw NonConvergent("D_reduced_series: series did not converge");
}

// Off-cut D through the defining hypergeometric form (used where the reduced
// series converges too slowly, i.e. z within ~1e-5 of 1).
inline ComplexValue D_hyp2f1_route(ComplexValue nu, ComplexValue alpha, ComplexValue z,
                                   CutSide side) {
    const ComplexValue u = 2.0 / (1.0 - z);
    CutSide uside = CutSide::None;
    if (side != CutSide::None) uside = side; // 2/(1-(x +- i0)) = u +- i0, u real
    const ComplexValue F = hyp2f1(nu + alpha, nu + 0.5, 2.0 * nu + 1.0, BranchedArg{u, uside});
    ComplexValue log2zm1;
    if (side == CutSide::None) {
        log2zm1 = std::log(2.0 * (z - 1.0));
    } else {
        // z - 1 < 0 on the cut: pick the branch explicitly from the side tag.
        const double sgn = (side == CutSide::PlusI0) ? 1.0 : -1.0;
        log2zm1 = ComplexValue(std::log(2.0 * (1.0 - z.real())), sgn * pi);
    }
    return std::exp(ComplexValue(0.0, pi) * alpha - (nu + alpha) * log2zm1 +
                    log_gamma(nu + alpha) - log_gamma(nu + 1.0) - log_gamma(alpha)) *
           F;
}

// -------------------------------------------------------------------------
// Second kind on the cut: z = x +- i0, x = cos(thc), thc in (0, pi).
// Continuation of the z>1 reduced form with z_+ -> e^{+- i thc}:
//   D(x +- i0) = e^{i pi a} e^{-+ i (nu+a) thc} F(nu+a, a; nu+1; e^{-+ 2 i thc}).
// The 2F1 on the unit circle is produced by an Euler-integral anchor pair at
// Re nu near Re alpha + 2 and carried to the target degree by the three-term
// recurrence in nu, which is neutrally stable on the cut.
// -------------------------------------------------------------------------
inline ComplexValue euler_anchor_D(ComplexValue nu, ComplexValue alpha, double thc,
                                   CutSide side) {
    const double sgn = (side == CutSide::PlusI0) ? -1.0 : 1.0; // exponent sign of e^{sgn*2i thc}
    const ComplexValue t = std::exp(ComplexValue(0.0, sgn * 2.0 * thc));
    const int p = std::max(2, static_cast<int>(std::ceil(2.2 / std::max(alpha.real(), 0.1))));
    auto integrand = [&](double u) {
        if (u <= 0.0) return ComplexValue(0.0, 0.0);
        const double s = std::pow(u, p);
        const ComplexValue one_m_ts = 1.0 - t * s;
        return double(p) *
               std::exp((double(p) * alpha - 1.0) * std::log(u) +
                        (nu - alpha) * std::log1p(-s) - (nu + alpha) * std::log(one_m_ts));
    };
    // the endpoint factor (1-s)^{nu-alpha} oscillates in log(1-s) for complex nu;
    // the dyadic refinement resolves it only after its amplitude decays, which
    // can take ~|Im nu| extra levels beyond the smooth-integrand depth
    const ComplexValue I = integrate_adaptive(integrand, 0.0, 1.0, 1e-13, 30);
    return std::exp(ComplexValue(0.0, pi) * alpha + ComplexValue(0.0, sgn * thc) * (nu + alpha) +
                    log_gamma(nu + alpha) - 2.0 * log_gamma(alpha) -
                    log_gamma(nu + 1.0 - alpha)) *
           I;
}

// One step of the degree recurrence, centered at nu:
//   (nu+1-alpha) F_{nu+1} = 2 nu x F_nu - (nu+alpha-1) F_{nu-1}.
inline ComplexValue recur_up(ComplexValue nu, ComplexValue alpha, double x, ComplexValue f,
                             ComplexValue f_minus) {
    const ComplexValue den = nu + 1.0 - alpha;
    if (std::abs(den) < 1e-8) throw NonConvergent("degree recurrence pivot ~ 0 (up)");
    return (2.0 * nu * x * f - (nu + alpha - 1.0) * f_minus) / den;
}
inline ComplexValue recur_down(ComplexValue nu, ComplexValue alpha, double x, ComplexValue f,
                               ComplexValue f_plus) {
    const ComplexValue den = nu + alpha - 1.0;
    if (std::abs(den) < 1e-8) throw NonConvergent("degree recurrence pivot ~ 0 (down)");
    return (2.0 * nu * x * f - (nu + 1.0 - alpha) * f_plus) / den;
}

inline ComplexValue D_cut_march(ComplexValue nu, ComplexValue alpha, double thc, CutSide side) {
    if (alpha.real() <= 0.0) throw NonConvergent("on-cut anchor requires Re alpha > 0");
    const int m = static_cast<int>(std::round(nu.real() - (alpha.real() + 2.2)));
    const ComplexValue nu_a = nu - double(m);
    const double x = std::cos(thc);
    ComplexValue f = euler_anchor_D(nu_a, alpha, thc, side);
    if (m == 0) return f;
    ComplexValue f_prev = euler_anchor_D(nu_a - 1.0, alpha, thc, side);
    if (m > 0) {
        ComplexValue lo = f_prev, hi = f;
        for (int j = 0; j < m; ++j) {
            const ComplexValue nc = nu_a + double(j);
            const ComplexValue next = recur_up(nc, alpha, x, hi, lo);
            lo = hi;
            hi = next;
        }
        return hi;
    }
    ComplexValue hi = f, lo = f_prev;
    for (int j = 0; j < -m - 1; ++j) {
        const ComplexValue nc = nu_a - 1.0 - double(j);
        const ComplexValue next = recur_down(nc, alpha, x, lo, hi);
        hi = lo;
        lo = next;
    }
    return lo;
}

// Values of D^alpha_{nu-alpha}(cos thc +- i0) along the unit-spaced degree
// ladder nu0 + j, j = 0..count-1, from one anchor pair near Re nu = Re alpha + 2.
inline std::vector<ComplexValue> D_cut_ladder(ComplexValue nu0, ComplexValue alpha, double thc,
                                              CutSide side, int count) {
    std::vector<ComplexValue> out(static_cast<std::size_t>(count));
    int ja = static_cast<int>(std::round(alpha.real() + 2.2 - nu0.real()));
    ja = std::clamp(ja, 1, count - 1);
    const double x = std::cos(thc);
    ComplexValue f = D_cut_march(nu0 + double(ja), alpha, thc, side);
    ComplexValue f_prev = D_cut_march(nu0 + double(ja) - 1.0, alpha, thc, side);
    out[static_cast<std::size_t>(ja)] = f;
    out[static_cast<std::size_t>(ja - 1)] = f_prev;
    ComplexValue lo = f_prev, hi = f;
    for (int j = ja + 1; j < count; ++j) {
        const ComplexValue next = recur_up(nu0 + double(j - 1), alpha, x, hi, lo);
        lo = hi;
        hi = next;
        out[static_cast<std::size_t>(j)] = next;
    }
    hi = f;
    lo = f_prev;
    for (int j = ja - 2; j >= 0; --j) {
        const ComplexValue next = recur_down(nu0 + double(j + 1), alpha, x, lo, hi);
        hi = lo;
        lo = next;
        out[static_cast<std::size_t>(j)] = next;
    }
    return out;
}

inline ComplexValue D_on_cut(ComplexValue nu, ComplexValue alpha, double x, CutSide side) {
    if (side == CutSide::None) {
        throw CutUnresolved("eval_D: argument on [-1, 1] requires a side tag");
    }
    if (x >= 1.0 - 1e-12 || x <= -1.0 + 1e-12) {
        throw DegenerateParams("eval_D: argument at a cut endpoint (z = +-1) is singular");
    }
    const double thc = std::acos(x);
    try {
        return D_cut_march(nu, alpha, thc, side);
    } catch (const ConvergenceError&) {
        return D_hyp2f1_route(nu, alpha, ComplexValue(x, 0.0), side);
    }
}

inline ComplexValue D_dispatch(ComplexValue nu, ComplexValue alpha, const BranchedArg& z) {
    check_degree_pole(nu, alpha);
    if (arg_on_cut(z)) return D_on_cut(nu, alpha, z.value.real(), z.side);
    if (z.value.imag() == 0.0 && z.value.real() < -1.0) {
        throw CutUnresolved("eval_D: real argument below -1 lies on the principal cut; "
                            "supply a complex argument");
    }
    const ComplexValue th = acosh_principal(z.value);
    if (th.real() >= 0.005) return D_reduced_series(nu, alpha, th);
    try {
        return D_hyp2f1_route(nu, alpha, z.value, CutSide::None);
    } catch (const Error&) {
        return D_reduced_series(nu, alpha, th);
    }
}

// -------------------------------------------------------------------------
// First kind: defining series with a-posteriori cancellation tracking.
// -------------------------------------------------------------------------
struct SeriesResult {
    ComplexValue value;
    double digits_lost;
    bool converged;
};

inline SeriesResult C_direct_series(ComplexValue nu, ComplexValue alpha, ComplexValue x_arg,
                                    int max_terms = 200000) {
    // Gamma(nu+a)/(Gamma(nu-a+1) Gamma(2a)) 2F1(a-nu, a+nu; a+1/2; x_arg)
    const ComplexValue a = alpha - nu, b = alpha + nu, c = alpha + 0.5;
    ComplexValue term(1.0, 0.0), sum(1.0, 0.0);
    double maxmag = 1.0;
    bool ok = false;
    int quiet = 0;
    for (int n = 0; n < max_terms; ++n) {
        term *= (a + double(n)) * (b + double(n)) * x_arg / ((c + double(n)) * double(n + 1));
        sum += term;
        maxmag = std::max(maxmag, std::abs(term));
        if (std::abs(term) < 1e-17 * (std::abs(sum) + 1e-290)) {
            if (++quiet >= 3) {
                ok = true;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    ComplexValue pref;
    if (near_nonpositive_integer(nu - alpha + 1.0, 1e-6)) {
        pref = std::exp(log_gamma(nu + alpha) - log_gamma(2.0 * alpha)) *
               rgamma(nu - alpha + 1.0);
    } else {
        pref = std::exp(log_gamma(nu + alpha) - log_gamma(2.0 * alpha) -
                        log_gamma(nu - alpha + 1.0));
    }
    const double lost = std::log10(maxmag / (std::abs(sum) + 1e-290));
    return {pref * sum, std::max(lost, 0.0), ok};
}

// sin(pi(nu-alpha))/sin(pi nu), stable for large |Im nu|.
inline ComplexValue sin_ratio(ComplexValue nu, ComplexValue alpha) {
    return std::exp(log_sin_pi(nu - alpha) - log_sin_pi(nu));
}

inline ComplexValue C_from_D_offcut(ComplexValue nu, ComplexValue alpha, ComplexValue th) {
    // C = e^{-i pi a} sin(pi(nu-a))/sin(pi nu) [D_{nu-a} - D_{-nu-a}]
    const ComplexValue dp = D_reduced_series(nu, alpha, th);
    const ComplexValue dm = D_reduced_series(-nu, alpha, th);
    return std::exp(-ComplexValue(0.0, pi) * alpha) * sin_ratio(nu, alpha) * (dp - dm);
}

inline ComplexValue C_from_D_oncut(ComplexValue nu, ComplexValue alpha, double x) {
    const CutSide s = CutSide::PlusI0; // C is one-valued; either side gives the same result
    const ComplexValue dp = D_on_cut(nu, alpha, x, s);
    const ComplexValue dm = D_on_cut(-nu, alpha, x, s);
    return std::exp(-ComplexValue(0.0, pi) * alpha) * sin_ratio(nu, alpha) * (dp - dm);
}

// Average of f at nu +- h: removes the simple-pole-free removable singularity
// of sin-ratio expressions near integer nu with O(h^2) error.
template <typename F>
inline ComplexValue richardson_near_integer(F&& f, ComplexValue nu) {
    const double h = 1e-5;
    return 0.5 * (f(nu + h) + f(nu - h));
}

inline ComplexValue C_dispatch(ComplexValue nu, ComplexValue alpha, const BranchedArg& z) {
    check_degree_pole(nu, alpha);
    const bool on_cut = arg_on_cut(z);
    const ComplexValue x_arg = 0.5 * (1.0 - z.value);
    if (std::abs(x_arg) <= 0.9) {
        const SeriesResult r = C_direct_series(nu, alpha, x_arg);
        if (r.converged && r.digits_lost <= 6.0) return r.value;
    }
    auto via_connection = [&](ComplexValue nu_s) {
        if (on_cut) return C_from_D_oncut(nu_s, alpha, z.value.real());
        return C_from_D_offcut(nu_s, alpha, acosh_principal(z.value));
    };
    if (near_integer(nu, 1e-6)) return richardson_near_integer(via_connection, nu);
    return via_connection(nu);
}

// Values of C^alpha_{nu-alpha}(cos thc) along the degree ladder nu0 + j,
// j = 0..count-1.  Anchored by direct evaluation near Re nu = Re alpha + 2
// (where the defining series has negligible cancellation), then carried by
// the same neutrally-stable degree recurrence.
inline std::vector<ComplexValue> C_cut_ladder(ComplexValue nu0, ComplexValue alpha, double thc,
                                              int count) {
    std::vector<ComplexValue> out(static_cast<std::size_t>(count));
    int ja = static_cast<int>(std::round(alpha.real() + 2.2 - nu0.real()));
    ja = std::clamp(ja, 1, count - 1);
    const double x = std::cos(thc);
    const BranchedArg zx{ComplexValue(x, 0.0)};
    ComplexValue f = C_dispatch(nu0 + double(ja), alpha, zx);
    ComplexValue f_prev = C_dispatch(nu0 + double(ja) - 1.0, alpha, zx);
    out[static_cast<std::size_t>(ja)] = f;
    out[static_cast<std::size_t>(ja - 1)] = f_prev;
    ComplexValue lo = f_prev, hi = f;
    for (int j = ja + 1; j < count; ++j) {
        const ComplexValue next = recur_up(nu0 + double(j - 1), alpha, x, hi, lo);
        lo = hi;
        hi = next;
        out[static_cast<std::size_t>(j)] = next;
    }
    hi = f;
    lo = f_prev;
    for (int j = ja - 2; j >= 0; --j) {
        const ComplexValue next = recur_down(nu0 + double(j + 1), alpha, x, lo, hi);
        hi = lo;
        lo = next;
        out[static_cast<std::size_t>(j)] = next;
    }
    return out;
}

} // namespace detail

// =========================================================================
// Public operations
// =========================================================================

// Gegenbauer function of the first kind C^alpha_{nu-alpha}(z).
inline ComplexValue eval_C(const GegenbauerArgs& a) {
    return detail::C_dispatch(a.nu, a.alpha, a.z);
}

// Gegenbauer function of the second kind D^alpha_{nu-alpha}(z).
inline ComplexValue eval_D(const GegenbauerArgs& a) {
    return detail::D_dispatch(a.nu, a.alpha, a.z);
}

// Functions "on the cut": real combinations of the two one-sided limits of D.
inline ComplexValue eval_cut(Kind kind, const GegenbauerArgs& a) {
    switch (kind) {
        case Kind::FirstKind_C:
            return eval_C(a);
        case Kind::SecondKind_D:
            return eval_D(a);
        default:
            break;
    }
    const double x = a.z.value.real();
    if (a.z.value.imag() != 0.0 || x <= -1.0 || x >= 1.0) {
        throw CutUnresolved("eval_cut: cut functions require real x in (-1, 1)");
    }
    const ComplexValue ep = std::exp(detail::I_unit * pi * a.alpha);
    const ComplexValue em = std::exp(-detail::I_unit * pi * a.alpha);
    const ComplexValue dp = detail::D_on_cut(a.nu, a.alpha, x, CutSide::PlusI0);
    const ComplexValue dm = detail::D_on_cut(a.nu, a.alpha, x, CutSide::MinusI0);
    if (kind == Kind::CutD) return -detail::I_unit * em * (ep * dp - em * dm);
    return em * (ep * dp + em * dm); // CutC
}

// Residual of C_{-nu-mu} = -sin(pi(nu+mu))/sin(pi(nu-mu)) C_{nu-mu}.
inline double symmetry_check_C(const GegenbauerArgs& a) {
    const ComplexValue den = std::sin(pi * (a.nu - a.alpha));
    if (std::abs(den) < 1e-10) {
        throw ResonantDenominator("symmetry_check_C: sin(pi(nu-mu)) vanishes");
    }
    const ComplexValue lhs = eval_C({-a.nu, a.alpha, a.z});
    const ComplexValue rhs =
        -std::exp(log_sin_pi(a.nu + a.alpha) - log_sin_pi(a.nu - a.alpha)) *
        eval_C({a.nu, a.alpha, a.z});
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1e-300);
}

// Residual of e^{i pi (mu-1)} D^{-mu+1}_{nu+mu-1}
//   = e^{-i pi mu} 2^{2mu-1} (z^2-1)^{mu-1/2}
//     Gamma(nu-mu+1)Gamma(mu)/(Gamma(nu+mu)Gamma(-mu+1)) D^{mu}_{nu-mu}.
inline double symmetry_check_D(const GegenbauerArgs& a) {
    const ComplexValue mu = a.alpha;
    const ComplexValue lhs =
        std::exp(detail::I_unit * pi * (mu - 1.0)) * eval_D({a.nu, -mu + 1.0, a.z});
    const ComplexValue z = a.z.value;
    const ComplexValue rhs =
        std::exp(-detail::I_unit * pi * mu + (2.0 * mu - 1.0) * std::log(2.0) +
                 (mu - 0.5) * std::log(z * z - 1.0) + log_gamma(a.nu - mu + 1.0) +
                 log_gamma(mu) - log_gamma(a.nu + mu) - log_gamma(1.0 - mu)) *
        eval_D({a.nu, mu, a.z});
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1e-300);
}

// C rebuilt from the two D solutions; agrees with eval_C.
inline ComplexValue connection_CfromD(const GegenbauerArgs& a) {
    if (std::abs(std::sin(pi * a.nu)) < 1e-10 && std::abs(a.nu.imag()) < 1.0) {
        throw ResonantDenominator("connection_CfromD: sin(pi nu) vanishes");
    }
    detail::check_degree_pole(a.nu, a.alpha);
    if (detail::arg_on_cut(a.z)) {
        return detail::C_from_D_oncut(a.nu, a.alpha, a.z.value.real());
    }
    return detail::C_from_D_offcut(a.nu, a.alpha, detail::acosh_principal(a.z.value));
}

// Wronskian W{D, C}(theta) = D dC/dtheta - C dD/dtheta, closed form.
inline ComplexValue wronskian_DC(ComplexValue nu, ComplexValue alpha, double theta,
                                 Space space) {
    const ComplexValue common =
        std::exp((1.0 - 2.0 * alpha) * std::log(2.0) + log_gamma(nu + alpha) -
                 2.0 * log_gamma(alpha) - log_gamma(nu - alpha + 1.0));
    if (space == Space::Hyperbolic) {
        return std::exp(detail::I_unit * pi * alpha) * common *
               std::pow(std::sinh(theta), -2.0 * alpha);
    }
    return -detail::I_unit * std::exp(2.0 * detail::I_unit * pi * alpha) * common *
           std::pow(std::sin(theta), -2.0 * alpha);
}

// Companion: the same Wronskian by central differences (step h = 1e-5).
// Hyperbolic: z = cosh(theta).  Spherical: z = cos(theta) - i0.
inline ComplexValue wronskian_DC_fd(ComplexValue nu, ComplexValue alpha, double theta,
                                    Space space, double h = 1e-5) {
    auto Dv = [&](double th) {
        if (space == Space::Hyperbolic) {
            return eval_D({nu, alpha, BranchedArg{ComplexValue(std::cosh(th), 0.0)}});
        }
        return eval_D({nu, alpha, minus_i0(std::cos(th))});
    };
    auto Cv = [&](double th) {
        if (space == Space::Hyperbolic) {
            return eval_C({nu, alpha, BranchedArg{ComplexValue(std::cosh(th), 0.0)}});
        }
        return eval_C({nu, alpha, BranchedArg{ComplexValue(std::cos(th), 0.0)}});
    };
    const ComplexValue dD = (Dv(theta + h) - Dv(theta - h)) / (2.0 * h);
    const ComplexValue dC = (Cv(theta + h) - Cv(theta - h)) / (2.0 * h);
    return Dv(theta) * dC - Cv(theta) * dD;
}

enum class AsymptoticRegime { Plane, BesselUniform, OnCut };

// Large-|nu| approximants.
inline ComplexValue asymptotic_D(const GegenbauerArgs& a, AsymptoticRegime regime) {
    const ComplexValue nu = a.nu, mu = a.alpha;
    if (regime == AsymptoticRegime::OnCut) {
        if (!detail::arg_on_cut(a.z) || a.z.side == CutSide::None) {
            throw RegimeViolation("asymptotic_D OnCut: side-tagged x in (-1,1) required");
        }
        const double thc = std::acos(a.z.value.real());
        if (std::abs(nu) * thc < 5.0) {
            throw RegimeViolation("asymptotic_D OnCut: |nu| theta >= 5 required");
        }
        const double sgn = (a.z.side == CutSide::PlusI0) ? -1.0 : 1.0;
        // D(x +- i0) ~ e^{i pi mu} e^{-+ i pi mu} 2^{-mu}/Gamma(mu)
        //              nu^{mu-1} (sin thc)^{-mu} e^{-+ i(nu thc - pi mu/2)}
        return std::exp(detail::I_unit * pi * mu * (1.0 + sgn) - mu * std::log(2.0) -
                        log_gamma(mu) + (mu - 1.0) * std::log(nu) -
                        mu * std::log(std::sin(thc)) +
                        ComplexValue(0.0, sgn) * (nu * thc - 0.5 * pi * mu));
    }
    const ComplexValue z = a.z.value;
    const ComplexValue sq = std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
    if (regime == AsymptoticRegime::Plane) {
        if (std::abs(nu) * std::abs(std::sqrt(z - 1.0)) < 5.0) {
            throw RegimeViolation("asymptotic_D Plane: |nu|*|sqrt(z-1)| >= 5 required");
        }
        const ComplexValue zp = z + sq;
        return std::exp(detail::I_unit * pi * mu - mu * std::log(2.0) - log_gamma(mu) +
                        (mu - 1.0) * std::log(nu) - 0.5 * mu * std::log(z * z - 1.0) -
                        nu * std::log(zp));
    }
    // BesselUniform
    if (std::abs(std::sqrt(z - 1.0)) > std::pow(std::abs(nu), -1.0 / 3.0)) {
        throw RegimeViolation("asymptotic_D BesselUniform: |sqrt(z-1)| <= |nu|^{-1/3} required");
    }
    const ComplexValue Z = std::sqrt(2.0 * nu * nu * (z - 1.0));
    const double ordv = (mu - 0.5).real();
    return std::exp(detail::I_unit * pi * mu) / std::sqrt(pi) *
           std::exp((0.5 - mu) * std::log(2.0) - log_gamma(mu) + (mu - 0.5) * std::log(nu) +
                    (0.25 - 0.5 * mu) * std::log(z * z - 1.0)) *
           bessel_k(ordv, Z);
}

inline ComplexValue asymptotic_C(const GegenbauerArgs& a, AsymptoticRegime regime) {
    const ComplexValue nu = a.nu, mu = a.alpha;
    if (regime == AsymptoticRegime::OnCut) {
        if (!detail::arg_on_cut(a.z)) {
            throw RegimeViolation("asymptotic_C OnCut: x in (-1,1) required");
        }
        const double thc = std::acos(a.z.value.real());
        if (std::abs(nu) * thc < 5.0) {
            throw RegimeViolation("asymptotic_C OnCut: |nu| theta >= 5 required");
        }
        return std::exp((1.0 - mu) * std::log(2.0) - log_gamma(mu) +
                        (mu - 1.0) * std::log(nu) - mu * std::log(std::sin(thc))) *
               std::cos(nu * thc - 0.5 * pi * mu);
    }
    const ComplexValue z = a.z.value;
    const ComplexValue sq = std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
    if (regime == AsymptoticRegime::Plane) {
        if (std::abs(nu) * std::abs(std::sqrt(z - 1.0)) < 5.0) {
            throw RegimeViolation("asymptotic_C Plane: |nu|*|sqrt(z-1)| >= 5 required");
        }
        const ComplexValue zp = z + sq;
        const double s = (z.imag() >= 0.0) ? 1.0 : -1.0;
        const ComplexValue osc =
            std::exp(detail::I_unit * (s * pi) * mu - nu * std::log(zp)) +
            std::exp(nu * std::log(zp));
        return std::exp(-mu * std::log(2.0) - log_gamma(mu) + (mu - 1.0) * std::log(nu) -
                        0.5 * mu * std::log(z * z - 1.0)) *
               osc;
    }
    if (std::abs(std::sqrt(z - 1.0)) > std::pow(std::abs(nu), -1.0 / 3.0)) {
        throw RegimeViolation("asymptotic_C BesselUniform: |sqrt(z-1)| <= |nu|^{-1/3} required");
    }
    const ComplexValue Z = std::sqrt(2.0 * nu * nu * (z - 1.0));
    const double ordv = (mu - 0.5).real();
    return std::sqrt(pi) *
           std::exp((0.5 - mu) * std::log(2.0) - log_gamma(mu) + (mu - 0.5) * std::log(nu) +
                    (0.25 - 0.5 * mu) * std::log(z * z - 1.0)) *
           bessel_i(ordv, Z);
}

// Composite angle Theta from (theta, theta', phi).
inline double composite_angle(double theta, double theta_prime, double phi, Space space) {
    if (space == Space::Hyperbolic) {
        const double ch = std::cosh(theta) * std::cosh(theta_prime) -
                          std::sinh(theta) * std::sinh(theta_prime) * std::cos(phi);
        return std::acosh(std::max(ch, 1.0));
    }
    double c = std::cos(theta) * std::cos(theta_prime) +
               std::sin(theta) * std::sin(theta_prime) * std::cos(phi);
    c = std::clamp(c, -1.0, 1.0);
    return std::acos(c);
}

// Residual of the phi-integrated product formula:
//   Int_0^pi F(Theta) (sin phi)^{2mu-1} dphi
//     = 2^{2mu-1} Gamma(nu-mu+1)[Gamma(mu)]^2/Gamma(nu+mu) * {C C | D(>) C(<)}.
inline double product_formula_check(ComplexValue nu, ComplexValue mu, double theta,
                                    double theta_prime, Space space,
                                    Kind kind = Kind::SecondKind_D) {
    if (mu.real() <= 0.0) throw DegenerateParams("product_formula_check: Re mu > 0 required");
    auto Fbig = [&](double phi) {
        const double Theta = composite_angle(theta, theta_prime, phi, space);
        const BranchedArg zc = (space == Space::Hyperbolic)
                                   ? BranchedArg{ComplexValue(std::cosh(Theta), 0.0)}
                                   : minus_i0(std::cos(Theta));
        const ComplexValue F = (kind == Kind::FirstKind_C)
                                   ? eval_C({nu, mu, (space == Space::Hyperbolic)
                                                         ? zc
                                                         : BranchedArg{zc.value}})
                                   : eval_D({nu, mu, zc});
        return F * std::pow(std::sin(phi), 2.0 * mu.real() - 1.0);
    };
    // substitute phi = pi (1 - cos psi)/2: clusters nodes at both endpoints so the
    // (sin phi)^{2mu-1} weight is resolved smoothly
    auto g = [&](double psi) {
        const double phi = 0.5 * pi * (1.0 - std::cos(psi));
        return Fbig(phi) * 0.5 * pi * std::sin(psi);
    };
    const ComplexValue lhs = integrate_adaptive(g, 0.0, pi, 1e-10);
    const double th_g = std::max(theta, theta_prime), th_l = std::min(theta, theta_prime);
    const BranchedArg zg = (space == Space::Hyperbolic)
                               ? BranchedArg{ComplexValue(std::cosh(th_g), 0.0)}
                               : minus_i0(std::cos(th_g));
    const BranchedArg zl = (space == Space::Hyperbolic)
                               ? BranchedArg{ComplexValue(std::cosh(th_l), 0.0)}
                               : BranchedArg{ComplexValue(std::cos(th_l), 0.0)};
    const ComplexValue big = (kind == Kind::FirstKind_C) ? eval_C({nu, mu, BranchedArg{zg.value}})
                                                         : eval_D({nu, mu, zg});
    const ComplexValue rhs = std::exp((2.0 * mu - 1.0) * std::log(2.0) +
                                      log_gamma(nu - mu + 1.0) + 2.0 * log_gamma(mu) -
                                      log_gamma(nu + mu)) *
                             big * eval_C({nu, mu, zl});
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1e-300);
}

// Partial sum (N terms) of the addition series for F(cosh Theta) (hyperbolic).
inline ComplexValue addition_series(ComplexValue nu, ComplexValue mu, double theta,
                                    double theta_prime, double phi, Kind kind, int N) {
    if (near_nonpositive_integer(2.0 * mu - 1.0, 1e-10)) {
        throw DegenerateParams("addition_series: Gamma(2mu-1) pole (mu = 1/2, 0, ...)");
    }
    const double th_g = std::max(theta, theta_prime), th_l = std::min(theta, theta_prime);
    const double cphi = std::cos(phi);
    const double beta = mu.real() - 0.5;
    // Gegenbauer polynomials C_n^{mu-1/2}(cos phi) by three-term recurrence
    std::vector<double> gp(static_cast<std::size_t>(N));
    if (N > 0) gp[0] = 1.0;
    if (N > 1) gp[1] = 2.0 * beta * cphi;
    for (int n = 2; n < N; ++n) {
        gp[static_cast<std::size_t>(n)] =
            (2.0 * (n + beta - 1.0) * cphi * gp[static_cast<std::size_t>(n - 1)] -
             (n + 2.0 * beta - 2.0) * gp[static_cast<std::size_t>(n - 2)]) /
            n;
    }
    const double sh = std::sinh(theta) * std::sinh(theta_prime);
    auto term_at = [&](ComplexValue nu_s, int n) {
        const ComplexValue mun = mu + double(n);
        const ComplexValue coeff =
            std::exp(log_gamma(2.0 * mu - 1.0) - 2.0 * log_gamma(mu) +
                     2.0 * double(n) * std::log(2.0) + log_gamma(nu_s - mun + 1.0) +
                     2.0 * log_gamma(mun) - log_gamma(nu_s + mun)) *
            ((n % 2 == 0) ? 1.0 : -1.0) * (2.0 * n + 2.0 * mu - 1.0) *
            std::pow(sh, double(n)) * gp[static_cast<std::size_t>(n)];
        const ComplexValue big =
            (kind == Kind::FirstKind_C)
                ? eval_C({nu_s, mun, BranchedArg{ComplexValue(std::cosh(th_g), 0.0)}})
                : eval_D({nu_s, mun, BranchedArg{ComplexValue(std::cosh(th_g), 0.0)}});
        return coeff * big *
               eval_C({nu_s, mun, BranchedArg{ComplexValue(std::cosh(th_l), 0.0)}});
    };
    std::vector<ComplexValue> terms(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n) {
        // Gamma(nu - mu - n + 1) poles are removable against the vanishing
        // Gegenbauer prefactors; take the two-sided limit there.
        if (near_nonpositive_integer(nu - mu - double(n) + 1.0, 1e-9)) {
            const double h = 1e-5;
            terms[static_cast<std::size_t>(n)] = 0.5 * (term_at(nu + h, n) + term_at(nu - h, n));
        } else {
            terms[static_cast<std::size_t>(n)] = term_at(nu, n);
        }
    }
    return pairwise_sum(terms);
}

} // namespace gegreen

#endif
