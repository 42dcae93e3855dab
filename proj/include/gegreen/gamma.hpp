// SPDX-License-Identifier: Apache-2.0
#ifndef GEGREEN_GAMMA_HPP
#define GEGREEN_GAMMA_HPP

#include <cmath>
#include <complex>

#include "errors.hpp"
#include "types.hpp"

namespace gegreen {

namespace detail {

// Lanczos rational approximation, g = 7, 9 terms.
inline constexpr double lanczos_g = 7.0;
inline constexpr double lanczos_c[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

// log Gamma for Re z >= 0.5 (no reflection needed).
inline ComplexValue log_gamma_right(ComplexValue z) {
    ComplexValue sum(lanczos_c[0], 0.0);
    for (int k = 1; k < 9; ++k) sum += lanczos_c[k] / (z + ComplexValue(k - 1, 0.0));
    const ComplexValue t = z + ComplexValue(lanczos_g - 0.5, 0.0);
    // Gamma(z) = sqrt(2 pi) * sum * t^(z - 1/2) * e^(-t) / 1   with the c-series
    // shifted so that the leading argument is z itself.
    return 0.5 * std::log(2.0 * pi) + (z - 0.5) * std::log(t) - t + std::log(sum);
}

} // namespace detail

// log(sin(pi z)), stable for large |Im z| (avoids overflow in sin).
inline ComplexValue log_sin_pi(ComplexValue z) {
    const ComplexValue ipz = ComplexValue(0.0, pi) * z;
    if (z.imag() > 1.0) {
        // sin(pi z) = -e^{-i pi z} (1 - e^{2 i pi z}) / (2 i)
        return -ipz - std::log(ComplexValue(0.0, 2.0)) + std::log(1.0 - std::exp(2.0 * ipz)) +
               ComplexValue(0.0, pi);
        // note: -1/(2i) = e^{i pi} / (2 i); the extra i*pi keeps the principal form
    }
    if (z.imag() < -1.0) {
        // sin(pi z) = e^{i pi z} (1 - e^{-2 i pi z}) / (2 i)
        return ipz - std::log(ComplexValue(0.0, 2.0)) + std::log(1.0 - std::exp(-2.0 * ipz));
    }
    return std::log(std::sin(pi * z));
}

// pi * cot(pi z), stable for large |Im z|.
inline ComplexValue cot_pi_scaled(ComplexValue z) {
    if (std::abs(z.imag()) > 1.0) {
        const ComplexValue e = std::exp(ComplexValue(0.0, 2.0 * pi) * (z.imag() > 0 ? z : -z));
        ComplexValue c = ComplexValue(0.0, 1.0) * (e + 1.0) / (e - 1.0);
        return pi * (z.imag() > 0 ? c : -c);
    }
    return pi * std::cos(pi * z) / std::sin(pi * z);
}

// Principal-path log Gamma; for Re z < 0.5 uses the reflection formula, so the
// imaginary part may differ from the principal log by multiples of 2 pi.  All
// internal uses exponentiate differences, which is insensitive to that.
inline ComplexValue log_gamma(ComplexValue z) {
    if (z.real() >= 0.5) return detail::log_gamma_right(z);
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(ComplexValue(pi, 0.0)) - log_sin_pi(z) - detail::log_gamma_right(1.0 - z);
}

// 1 / Gamma(z): entire; exactly 0 at non-positive integers.
inline ComplexValue rgamma(ComplexValue z) {
    if (near_nonpositive_integer(z, 1e-13)) {
        // sin(pi z) vanishes to first order; use the reflection form directly.
        return std::sin(pi * z) * std::exp(detail::log_gamma_right(1.0 - z)) / pi;
    }
    return std::exp(-log_gamma(z));
}

// Gamma(z).  Raises on poles per the library contract.
inline ComplexValue gamma(ComplexValue z) {
    if (near_nonpositive_integer(z, 1e-14)) {
        throw PoleAtNonPositiveInteger("gamma: argument within 1e-14 of a non-positive integer");
    }
    return std::exp(log_gamma(z));
}

// Ratio Gamma(a)/Gamma(b) assembled in log space (avoids overflow for large |a|, |b|).
inline ComplexValue gamma_ratio(ComplexValue a, ComplexValue b) {
    return std::exp(log_gamma(a) - log_gamma(b));
}

// Digamma function psi(z).
inline ComplexValue digamma(ComplexValue z) {
    if (z.real() < 0.5) {
        // psi(z) = psi(1 - z) - pi cot(pi z)
        return digamma(1.0 - z) - cot_pi_scaled(z);
    }
    ComplexValue acc(0.0, 0.0);
    while (z.real() < 10.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    // asymptotic series with Bernoulli numbers
    const ComplexValue inv = 1.0 / z, inv2 = inv * inv;
    static const double b[7] = {1.0 / 6.0,  -1.0 / 30.0,     1.0 / 42.0, -1.0 / 30.0,
                                5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0};
    ComplexValue s = std::log(z) - 0.5 * inv;
    ComplexValue p = inv2;
    for (int n = 0; n < 7; ++n) {
        s -= b[n] / (2.0 * (n + 1)) * p;
        p *= inv2;
    }
    return acc + s;
}

} // namespace gegreen

#endif
