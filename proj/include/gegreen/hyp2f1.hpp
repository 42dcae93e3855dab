// SPDX-License-Identifier: Apache-2.0
#ifndef GEGREEN_HYP2F1_HPP
#define GEGREEN_HYP2F1_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include "errors.hpp"
#include "gamma.hpp"
#include "types.hpp"

namespace gegreen {

namespace detail {

// log(1 - z) honoring the side tag for real z >= 1 (the principal cut).
inline ComplexValue log_one_minus(ComplexValue z, CutSide side) {
    if (side != CutSide::None && z.imag() == 0.0 && z.real() > 1.0) {
        const double mag = std::log(z.real() - 1.0);
        return side == CutSide::PlusI0 ? ComplexValue(mag, -pi) : ComplexValue(mag, pi);
    }
    return std::log(1.0 - z);
}

// log(-z) honoring the side tag for real z >= 1.
inline ComplexValue log_minus(ComplexValue z, CutSide side) {
    if (side != CutSide::None && z.imag() == 0.0 && z.real() > 0.0) {
        const double mag = std::log(z.real());
        return side == CutSide::PlusI0 ? ComplexValue(mag, -pi) : ComplexValue(mag, pi);
    }
    return std::log(-z);
}

inline bool is_poly_degree(ComplexValue a, int& n) {
    if (near_nonpositive_integer(a, 1e-12)) {
        n = static_cast<int>(std::lround(-a.real()));
        return true;
    }
    return false;
}

} // namespace detail

// Direct Maclaurin series; requires |z| < 1 (or polynomial truncation).
inline ComplexValue hyp2f1_series(ComplexValue a, ComplexValue b, ComplexValue c, ComplexValue z,
                                  long max_terms = 200000) {
    int na = 0, nb = 0;
    const bool pa = detail::is_poly_degree(a, na);
    const bool pb = detail::is_poly_degree(b, nb);
    long nmax = max_terms;
    if (pa || pb) {
        nmax = pa && pb ? std::min(na, nb) : (pa ? na : nb);
    } else if (near_nonpositive_integer(c, 1e-12)) {
        throw DegenerateParams("hyp2f1: c is a non-positive integer in a non-polynomial case");
    }
    ComplexValue sum(1.0, 0.0), term(1.0, 0.0);
    for (long n = 0; n < nmax; ++n) {
        const ComplexValue cn(static_cast<double>(n), 0.0);
        term *= (a + cn) * (b + cn) / ((c + cn) * (cn + 1.0)) * z;
        sum += term;
        if (!(pa || pb) && std::abs(term) < 1e-18 * (std::abs(sum) + 1e-290) && n > 4) return sum;
    }
    if (pa || pb) return sum;
    throw NonConvergent("hyp2f1_series: term cap reached without convergence");
}

namespace detail {

// Connection at w = 1 - z for c - a - b = m, a non-negative integer (the
// logarithmic degenerate case).  log_w supplies the branch of log(1 - z).
inline ComplexValue hyp2f1_one_minus_z_integer(ComplexValue a, ComplexValue b, int m,
                                               ComplexValue w, ComplexValue log_w) {
    const ComplexValue c = a + b + ComplexValue(m, 0.0);
    ComplexValue result(0.0, 0.0);
    if (m > 0) {
        // finite part: Gamma(m) Gamma(c) / (Gamma(a+m) Gamma(b+m)) * sum_{k<m}
        const ComplexValue pref =
            std::exp(log_gamma(ComplexValue(m, 0.0)) + log_gamma(c) - log_gamma(a + double(m)) -
                     log_gamma(b + double(m)));
        ComplexValue term(1.0, 0.0), s(1.0, 0.0);
        for (int k = 0; k < m - 1; ++k) {
            const double kd = k;
            term *= (a + kd) * (b + kd) / ((kd + 1.0) * (1.0 - m + kd)) * w;
            s += term;
        }
        if (m == 1) s = ComplexValue(1.0, 0.0);
        result += pref * s;
    }
    // logarithmic part: -Gamma(c)/(Gamma(a)Gamma(b)) (z-1)^m * sum_k ...
    const ComplexValue lpref = std::exp(log_gamma(c) - log_gamma(a) - log_gamma(b));
    // (z-1)^m = (-1)^m w^m with w = 1-z; integer power, no branch subtlety.
    ComplexValue wm = std::exp(double(m) * log_w);
    if (m % 2 != 0) wm = -wm;
    const ComplexValue am = a + double(m), bm = b + double(m);
    ComplexValue poch(1.0, 0.0); // (a+m)_k (b+m)_k / (k! (k+m)!)
    double fact_shift = 1.0;
    for (int j = 1; j <= m; ++j) fact_shift *= j;
    poch /= fact_shift;
    ComplexValue psi1 = digamma(ComplexValue(1.0, 0.0));
    ComplexValue psi2 = digamma(ComplexValue(m + 1.0, 0.0));
    ComplexValue psi3 = digamma(am);
    ComplexValue psi4 = digamma(bm);
    ComplexValue wk(1.0, 0.0);
    ComplexValue s(0.0, 0.0);
    for (int k = 0; k < 100000; ++k) {
        const ComplexValue term = poch * wk * (log_w - psi1 - psi2 + psi3 + psi4);
        s += term;
        if (std::abs(term) < 1e-18 * (std::abs(s) + 1e-290) && k > 4) break;
        const double kd = k;
        poch *= (am + kd) * (bm + kd) / ((kd + 1.0) * (kd + m + 1.0));
        wk *= w;
        psi1 += 1.0 / (kd + 1.0);
        psi2 += 1.0 / (kd + m + 1.0);
        psi3 += 1.0 / (am + kd);
        psi4 += 1.0 / (bm + kd);
    }
    result -= lpref * wm * s;
    return result;
}

// Generic connection at w = 1 - z (c - a - b not an integer).
inline ComplexValue hyp2f1_one_minus_z(ComplexValue a, ComplexValue b, ComplexValue c,
                                       ComplexValue w, ComplexValue log_w) {
    const ComplexValue s = c - a - b;
    const ComplexValue coef1 = std::exp(log_gamma(c) - log_gamma(c - a) + log_gamma(s) -
                                        log_gamma(c - b));
    ComplexValue t1 = near_nonpositive_integer(c - a, 1e-12) || near_nonpositive_integer(c - b, 1e-12)
                          ? ComplexValue(0.0, 0.0)
                          : coef1 * hyp2f1_series(a, b, a + b - c + 1.0, w);
    // fold the power of w into the gamma exponent so that a large prefactor
    // balanced by a small power does not overflow on its own
    ComplexValue t2 = near_nonpositive_integer(a, 1e-12) || near_nonpositive_integer(b, 1e-12)
                          ? ComplexValue(0.0, 0.0)
                          : std::exp(log_gamma(c) - log_gamma(a) + log_gamma(-s) - log_gamma(b) +
                                     s * log_w) *
                                hyp2f1_series(c - a, c - b, s + 1.0, w);
    return t1 + t2;
}

// Generic connection at w = 1/z (a - b not an integer).
inline ComplexValue hyp2f1_inv_z(ComplexValue a, ComplexValue b, ComplexValue c, ComplexValue z,
                                 ComplexValue log_mz) {
    const ComplexValue w = 1.0 / z;
    // keep the gamma prefactor and the power of z in one exponent: each alone
    // can overflow for large parameters even when the product is moderate
    ComplexValue t1 = near_nonpositive_integer(c - a, 1e-12)
                          ? ComplexValue(0.0, 0.0)
                          : std::exp(log_gamma(c) - log_gamma(b) + log_gamma(b - a) -
                                     log_gamma(c - a) - a * log_mz) *
                                hyp2f1_series(a, a - c + 1.0, a - b + 1.0, w);
    ComplexValue t2 = near_nonpositive_integer(c - b, 1e-12)
                          ? ComplexValue(0.0, 0.0)
                          : std::exp(log_gamma(c) - log_gamma(a) + log_gamma(a - b) -
                                     log_gamma(c - b) - b * log_mz) *
                                hyp2f1_series(b, b - c + 1.0, b - a + 1.0, w);
    return t1 + t2;
}

// Analytic continuation of the hypergeometric ODE along a polyline, used as a
// universal fallback where no series transformation converges.  State vector
// is (F, F').
inline ComplexValue hyp2f1_ode(ComplexValue a, ComplexValue b, ComplexValue c, ComplexValue zt,
                               CutSide side) {
    // starting point on the ray toward the target
    ComplexValue dir = zt / std::abs(zt);
    ComplexValue z0 = 0.3 * dir;
    ComplexValue y = hyp2f1_series(a, b, c, z0);
    ComplexValue yp = a * b / c * hyp2f1_series(a + 1.0, b + 1.0, c + 1.0, z0);

    // waypoints: detour around z = 1 on the side consistent with the tag
    std::array<ComplexValue, 3> pts{zt, zt, zt};
    int npts = 1;
    const double im_detour = (side == CutSide::MinusI0) ? -0.6 : 0.6;
    auto seg_near_one = [](ComplexValue p, ComplexValue q) {
        // distance from 1 to segment pq
        const ComplexValue d = q - p;
        const double L2 = std::norm(d);
        if (L2 == 0.0) return std::abs(p - 1.0);
        double t = ((1.0 - p.real()) * d.real() + (0.0 - p.imag()) * d.imag()) / L2;
        t = std::clamp(t, 0.0, 1.0);
        return std::abs(p + t * d - 1.0);
    };
    if (seg_near_one(z0, zt) < 0.3) {
        pts = {ComplexValue(1.0, im_detour), zt, zt};
        npts = 2;
    }

    auto rhs = [&](ComplexValue z, ComplexValue f, ComplexValue fp, ComplexValue& df,
                   ComplexValue& dfp) {
        const ComplexValue denom = z * (1.0 - z);
        df = fp;
        dfp = ((a + b + 1.0) * z - c) * fp / denom + a * b * f / denom;
    };

    ComplexValue zc = z0;
    for (int seg = 0; seg < npts; ++seg) {
        const ComplexValue target = pts[seg];
        double remaining = std::abs(target - zc);
        ComplexValue d = (target - zc) / remaining;
        double h = std::min(0.05, remaining);
        const double tol = 1e-13;
        while (remaining > 1e-15) {
            h = std::min(h, remaining);
            // two half steps vs one full step, classic RK4 with Richardson control
            auto rk4 = [&](ComplexValue z, ComplexValue f, ComplexValue fp, double hh,
                           ComplexValue& fo, ComplexValue& fpo) {
                ComplexValue k1f, k1p, k2f, k2p, k3f, k3p, k4f, k4p;
                const ComplexValue hd = hh * d;
                rhs(z, f, fp, k1f, k1p);
                rhs(z + 0.5 * hd, f + 0.5 * hd * k1f, fp + 0.5 * hd * k1p, k2f, k2p);
                rhs(z + 0.5 * hd, f + 0.5 * hd * k2f, fp + 0.5 * hd * k2p, k3f, k3p);
                rhs(z + hd, f + hd * k3f, fp + hd * k3p, k4f, k4p);
                fo = f + hd / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
                fpo = fp + hd / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
            };
            ComplexValue f1, fp1, f2, fp2, fh, fph;
            rk4(zc, y, yp, h, f1, fp1);
            rk4(zc, y, yp, 0.5 * h, fh, fph);
            rk4(zc + 0.5 * h * d, fh, fph, 0.5 * h, f2, fp2);
            const double err = std::abs(f2 - f1) / (std::abs(f2) + 1e-290);
            if (err < tol || h < 1e-8) {
                // accept (with Richardson extrapolation)
                y = f2 + (f2 - f1) / 15.0;
                yp = fp2 + (fp2 - fp1) / 15.0;
                zc += h * d;
                remaining -= h;
                if (err < 0.1 * tol) h *= 1.7;
            } else {
                h *= 0.5;
            }
        }
        zc = target;
    }
    return y;
}

} // namespace detail

// Gauss hypergeometric function 2F1(a, b; c; z) with complex parameters and a
// branch-side tag for arguments on the principal cut [1, inf).
inline ComplexValue hyp2f1(ComplexValue a, ComplexValue b, ComplexValue c, BranchedArg zarg) {
    const ComplexValue z = zarg.value;
    const CutSide side = zarg.side;
    if (z == ComplexValue(0.0, 0.0)) return ComplexValue(1.0, 0.0);

    int na = 0, nb = 0;
    const bool poly = detail::is_poly_degree(a, na) || detail::is_poly_degree(b, nb);
    if (!poly && near_nonpositive_integer(c, 1e-12)) {
        throw DegenerateParams("hyp2f1: c is a non-positive integer in a non-polynomial case");
    }
    if (poly) return hyp2f1_series(a, b, c, z);

    const double az = std::abs(z);
    const double a1mz = std::abs(1.0 - z);
    const double apf = az / a1mz;   // |z/(z-1)|
    const double ainv = 1.0 / az;   // |1/z|
    const double thresh = 0.80;

    // candidates ranked by argument magnitude
    struct Cand { double mag; int which; };
    std::array<Cand, 4> cands{Cand{az, 0}, Cand{apf, 1}, Cand{a1mz, 2}, Cand{ainv, 3}};
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return x.mag < y.mag; });

    for (const auto& cand : cands) {
        if (cand.mag > thresh) break;
        switch (cand.which) {
            case 0:
                return hyp2f1_series(a, b, c, z);
            case 1: {
                // Pfaff: (1-z)^{-a} 2F1(a, c-b; c; z/(z-1))
                const ComplexValue w = z / (z - 1.0);
                return std::exp(-a * detail::log_one_minus(z, side)) *
                       hyp2f1_series(a, c - b, c, w);
            }
            case 2: {
                const ComplexValue s = c - a - b;
                const ComplexValue w = 1.0 - z;
                const ComplexValue lw = detail::log_one_minus(z, side);
                if (near_integer(s, 1e-10)) {
                    const int m = static_cast<int>(std::lround(s.real()));
                    if (m >= 0) return detail::hyp2f1_one_minus_z_integer(a, b, m, w, lw);
                    // Euler transformation flips the sign of c-a-b.
                    return std::exp(s * lw) *
                           detail::hyp2f1_one_minus_z_integer(c - a, c - b, -m, w, lw);
                }
                if (near_integer(s, 1e-5)) {
                    throw DegenerateParams(
                        "hyp2f1: c-a-b too close to an integer for the generic connection");
                }
                return detail::hyp2f1_one_minus_z(a, b, c, w, lw);
            }
            case 3: {
                const ComplexValue diff = a - b;
                if (near_integer(diff, 1e-8)) break; // fall through to other candidates / ODE
                return detail::hyp2f1_inv_z(a, b, c, z, detail::log_minus(z, side));
            }
        }
    }
    return detail::hyp2f1_ode(a, b, c, z, side);
}

inline ComplexValue hyp2f1(ComplexValue a, ComplexValue b, ComplexValue c, ComplexValue z) {
    return hyp2f1(a, b, c, BranchedArg{z});
}

} // namespace gegreen

#endif
