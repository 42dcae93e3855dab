// SPDX-License-Identifier: Apache-2.0
#ifndef GEGREEN_BESSEL_HPP
#define GEGREEN_BESSEL_HPP

#include <cmath>
#include <complex>

#include "errors.hpp"
#include "gamma.hpp"
#include "quadrature.hpp"
#include "types.hpp"

namespace gegreen {

namespace detail {

// Maclaurin series for I_v, |z| modest; assumes v not a negative integer.
inline ComplexValue bessel_i_series(double v, ComplexValue z) {
    const ComplexValue h = 0.5 * z;
    const ComplexValue h2 = h * h;
    ComplexValue term = std::exp(v * std::log(h)) * rgamma(ComplexValue(v + 1.0, 0.0));
    ComplexValue sum = term;
    for (int k = 1; k < 4000; ++k) {
        term *= h2 / (k * (v + k));
        sum += term;
        if (std::abs(term) < 1e-17 * (std::abs(sum) + 1e-290)) break;
    }
    return sum;
}

// J_v by Maclaurin series (adequate for |z| <= 12 with mild cancellation).
inline ComplexValue bessel_j_series(double v, ComplexValue z) {
    const ComplexValue h = 0.5 * z;
    const ComplexValue h2 = -h * h;
    ComplexValue term = std::exp(v * std::log(h)) * rgamma(ComplexValue(v + 1.0, 0.0));
    ComplexValue sum = term;
    for (int k = 1; k < 4000; ++k) {
        term *= h2 / (k * (v + k));
        sum += term;
        if (std::abs(term) < 1e-17 * (std::abs(sum) + 1e-290)) break;
    }
    return sum;
}

// Schlaefli-type integral representations, valid Re z > 0.
inline ComplexValue bessel_j_integral(double v, ComplexValue z) {
    auto osc = [&](double t) { return std::cos(z * std::sin(t) - v * t); };
    ComplexValue part1 = integrate_adaptive(osc, 0.0, pi, 1e-15) / pi;
    const double sv = std::sin(v * pi);
    if (std::abs(sv) < 1e-15) return part1;
    double smax = std::asinh((760.0 + std::abs(v) * 20.0) / std::max(z.real(), 1e-3));
    auto tail = [&](double s) { return std::exp(-z * std::sinh(s) - v * s); };
    ComplexValue part2 = integrate_adaptive(tail, 0.0, smax, 1e-15);
    return part1 - sv / pi * part2;
}

inline ComplexValue bessel_y_integral(double v, ComplexValue z) {
    auto osc = [&](double t) { return std::sin(z * std::sin(t) - v * t); };
    ComplexValue part1 = integrate_adaptive(osc, 0.0, pi, 1e-15) / pi;
    const double cv = std::cos(v * pi);
    double smax = std::asinh((760.0 + std::abs(v) * 20.0) / std::max(z.real(), 1e-3));
    auto tail = [&](double s) {
        return (std::exp(v * s) + std::exp(-v * s) * cv) * std::exp(-z * std::sinh(s));
    };
    ComplexValue part2 = integrate_adaptive(tail, 0.0, smax, 1e-14);
    return part1 - part2 / pi;
}

inline ComplexValue bessel_i_integral(double v, ComplexValue z) {
    auto osc = [&](double t) { return std::exp(z * std::cos(t)) * std::cos(v * t); };
    ComplexValue part1 = integrate_adaptive(osc, 0.0, pi, 1e-15) / pi;
    const double sv = std::sin(v * pi);
    if (std::abs(sv) < 1e-15) return part1;
    double smax = std::acosh((760.0 + std::abs(v) * 20.0) / std::max(z.real(), 1.0)) + 1.0;
    auto tail = [&](double s) { return std::exp(-z * std::cosh(s) - v * s); };
    ComplexValue part2 = integrate_adaptive(tail, 0.0, smax, 1e-15);
    return part1 - sv / pi * part2;
}

inline ComplexValue bessel_k_integral(double v, ComplexValue z) {
    double smax = std::acosh((760.0 + std::abs(v) * 20.0) / std::max(z.real(), 1e-2)) + 1.0;
    auto f = [&](double s) { return std::exp(-z * std::cosh(s)) * std::cosh(v * s); };
    return integrate_adaptive(f, 0.0, smax, 1e-15, 18);
}

// K_n for integer n >= 0, |z| modest, via the logarithmic series.
inline ComplexValue bessel_i_fwd(double v, ComplexValue z); // fwd decl

inline ComplexValue bessel_k_integer_series(int n, ComplexValue z) {
    const ComplexValue h = 0.5 * z;
    const ComplexValue h2 = h * h;
    ComplexValue sum(0.0, 0.0);
    if (n > 0) {
        // (1/2)(z/2)^{-n} sum_{k=0}^{n-1} (n-k-1)!/k! (-z^2/4)^k
        ComplexValue term = 0.5 * std::exp(-double(n) * std::log(h));
        double fact = 1.0;
        for (int j = 1; j < n; ++j) fact *= j; // (n-1)!
        term *= fact;
        ComplexValue acc = term;
        for (int k = 1; k < n; ++k) {
            term *= -h2 / (double(k) * double(n - k));
            acc += term;
        }
        sum += acc;
    }
    const ComplexValue In = bessel_i_fwd(n, z);
    const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
    sum += -sgn * std::log(h) * In;
    // sgn * 1/2 (z/2)^n sum_k [psi(k+1)+psi(n+k+1)] (z^2/4)^k / (k! (n+k)!)
    double psi1 = -0.5772156649015328606;
    double psi2 = psi1;
    for (int j = 1; j <= n; ++j) psi2 += 1.0 / j;
    double fact_nk = 1.0;
    for (int j = 1; j <= n; ++j) fact_nk *= j;
    ComplexValue term = 0.5 * std::exp(double(n) * std::log(h)) / fact_nk;
    ComplexValue acc = term * (psi1 + psi2);
    for (int k = 1; k < 2000; ++k) {
        term *= h2 / (double(k) * double(n + k));
        psi1 += 1.0 / k;
        psi2 += 1.0 / (n + k);
        const ComplexValue t = term * (psi1 + psi2);
        acc += t;
        if (std::abs(t) < 1e-17 * (std::abs(acc) + 1e-290)) break;
    }
    sum += sgn * acc;
    return sum;
}

} // namespace detail

// Modified Bessel function I_v(z), real order.
inline ComplexValue bessel_i(double v, ComplexValue z) {
    if (z == ComplexValue(0.0, 0.0)) {
        return v == 0.0 ? ComplexValue(1.0, 0.0) : ComplexValue(0.0, 0.0);
    }
    if (v < 0.0 && std::abs(v - std::round(v)) < 1e-12) v = -v; // I_{-n} = I_n
    if (z.real() < 0.0) {
        // I_v(e^{+-i pi} w) = e^{+-i pi v} I_v(w)
        const double s = (z.imag() >= 0.0) ? 1.0 : -1.0;
        return std::exp(ComplexValue(0.0, s * pi * v)) * bessel_i(v, -z);
    }
    if (std::abs(z) <= 12.0) return detail::bessel_i_series(v, z);
    const double ang = std::abs(std::arg(z));
    if (ang <= 0.25 * pi) return detail::bessel_i_integral(v, z);
    // near the imaginary axis: route through J with a rotated argument
    if (z.imag() >= 0.0) {
        // I_v(z) = e^{+i pi v/2} J_v(-i z), Re(-i z) > 0
        return std::exp(ComplexValue(0.0, 0.5 * pi * v)) *
               detail::bessel_j_integral(v, ComplexValue(0.0, -1.0) * z);
    }
    return std::exp(ComplexValue(0.0, -0.5 * pi * v)) *
           detail::bessel_j_integral(v, ComplexValue(0.0, 1.0) * z);
}

namespace detail {
inline ComplexValue bessel_i_fwd(double v, ComplexValue z) { return bessel_i(v, z); }
} // namespace detail

// Modified Bessel function K_v(z), real order.
inline ComplexValue bessel_k(double v, ComplexValue z) {
    if (z == ComplexValue(0.0, 0.0)) throw OriginSingularity("bessel_k: z = 0");
    v = std::abs(v); // K_{-v} = K_v
    if (z.real() < 0.0) {
        // K_v(e^{+-i pi} w) = e^{-+ i pi v} K_v(w) -+ i pi I_v(w)
        const double s = (z.imag() >= 0.0) ? 1.0 : -1.0;
        const ComplexValue w = -z;
        return std::exp(ComplexValue(0.0, -s * pi * v)) * bessel_k(v, w) -
               ComplexValue(0.0, s * pi) * bessel_i(v, w);
    }
    const bool integer_order = std::abs(v - std::round(v)) < 1e-9;
    if (z.real() > 6.0) return detail::bessel_k_integral(v, z);
    if (!integer_order) {
        const double sv = std::sin(pi * v);
        return 0.5 * pi * (bessel_i(-v, z) - bessel_i(v, z)) / sv;
    }
    const int n = static_cast<int>(std::lround(v));
    if (std::abs(z) <= 12.0) return detail::bessel_k_integer_series(n, z);
    if (z.real() > 0.2) return detail::bessel_k_integral(v, z);
    throw NonConvergent("bessel_k: integer order with large nearly-imaginary argument "
                        "is outside the supported envelope");
}

// Hankel function of the first kind H^(1)_v(z), real order.
inline ComplexValue hankel1(double v, ComplexValue z) {
    if (z == ComplexValue(0.0, 0.0)) throw OriginSingularity("hankel1: z = 0");
    if (z.real() > 0.05) {
        if (std::abs(z) <= 12.0) {
            // J + iY with Y from the connection through J (non-integer order)
            // or the integral representation (integer order).
            const bool integer_order = std::abs(v - std::round(v)) < 1e-9;
            const ComplexValue J = detail::bessel_j_series(v, z);
            ComplexValue Y;
            if (!integer_order) {
                const double cv = std::cos(pi * v), sv = std::sin(pi * v);
                Y = (J * cv - detail::bessel_j_series(-v, z)) / sv;
            } else {
                Y = detail::bessel_y_integral(v, z);
            }
            return J + ComplexValue(0.0, 1.0) * Y;
        }
        return detail::bessel_j_integral(v, z) +
               ComplexValue(0.0, 1.0) * detail::bessel_y_integral(v, z);
    }
    // H^(1)_v(z) = (2/(i pi)) e^{-i pi v/2} K_v(-i z), valid -pi/2 < arg z <= pi
    const ComplexValue arg = ComplexValue(0.0, -1.0) * z;
    return 2.0 / (ComplexValue(0.0, 1.0) * pi) * std::exp(ComplexValue(0.0, -0.5 * pi * v)) *
           bessel_k(v, arg);
}

} // namespace gegreen

#endif
