#!/usr/bin/env python3
"""Generate tests/oracle_values.hpp from independent multiprecision formulas.

Every constant in the frozen header is computed here at 40+ decimal digits
from defining series / integral representations that are independent of the
C++ implementation.  Where two independent routes exist (defining series vs
Legendre bridge) both are evaluated and must agree to 1e-30 before the value
is emitted; a route disagreement aborts generation.

Usage:  python3 tests/gen_oracles.py > tests/oracle_values.hpp
"""

import sys

import mpmath as mp

mp.mp.dps = 40

TOL = mp.mpf("1e-30")


def C(nu, a, z):
    return (
        mp.gamma(nu + a)
        / (mp.gamma(nu - a + 1) * mp.gamma(2 * a))
        * mp.hyp2f1(-nu + a, nu + a, a + mp.mpf(1) / 2, (1 - z) / 2)
    )


def D_def(nu, a, z):
    return (
        mp.exp(1j * mp.pi * a)
        * (2 * (z - 1)) ** (-nu - a)
        * mp.gamma(nu + a)
        / (mp.gamma(nu + 1) * mp.gamma(a))
        * mp.hyp2f1(nu + a, nu + mp.mpf(1) / 2, 2 * nu + 1, 2 / (1 - z))
    )


def D_exp(nu, a, theta):
    # reduced form; theta -> -+ i*theta_c gives the x +- i0 cut sides
    return (
        mp.exp(1j * mp.pi * a)
        * mp.gamma(nu + a)
        / (mp.gamma(nu + 1) * mp.gamma(a))
        * mp.exp(-(nu + a) * theta)
        * mp.hyp2f1(nu + a, a, nu + 1, mp.exp(-2 * theta))
    )


def check(label, x, y):
    r = abs(x - y) / (abs(x) + abs(y) + mp.mpf("1e-300"))
    if r > TOL:
        print(f"route disagreement for {label}: {r}", file=sys.stderr)
        sys.exit(1)


def legendre_C(nu, a, z):
    # bridge through Legendre P (type 3), valid for z > 1
    mu = a
    p = mp.legenp(nu - mp.mpf(1) / 2, -mu + mp.mpf(1) / 2, z, type=3)
    return (
        mp.sqrt(mp.pi)
        * 2 ** (-mu + mp.mpf(1) / 2)
        * mp.gamma(nu + mu)
        / (mp.gamma(mu) * mp.gamma(nu - mu + 1))
        * (z * z - 1) ** (-mu / 2 + mp.mpf(1) / 4)
        * p
    )


def legendre_D(nu, a, z):
    # bridge through Legendre Q (type 3), valid for z > 1
    mu = a
    q = mp.legenq(nu - mp.mpf(1) / 2, -mu + mp.mpf(1) / 2, z, type=3)
    return (
        1
        / mp.sqrt(mp.pi)
        * mp.exp(2j * mp.pi * (mu - mp.mpf(1) / 4))
        * 2 ** (-mu + mp.mpf(1) / 2)
        * mp.gamma(nu + mu)
        / (mp.gamma(mu) * mp.gamma(nu - mu + 1))
        * (z * z - 1) ** (-mu / 2 + mp.mpf(1) / 4)
        * q
    )


values = []


def emit(name, v):
    v = mp.mpc(v)
    values.append((name, mp.nstr(v.real, 17, strip_zeros=False),
                   mp.nstr(v.imag, 17, strip_zeros=False)))


# --- scalar special functions ------------------------------------------------
emit("ORACLE_GAMMA_1_1I", mp.gamma(1 + 1j))
emit("ORACLE_HYP2F1_A", mp.hyp2f1(1 + 0.5j, 2 - 0.3j, 3, mp.mpf("0.4")))
emit("ORACLE_HANKEL1_HALF_2_1I", mp.hankel1(mp.mpf(1) / 2, 2 + 1j))
emit("ORACLE_BESSELI_13_08_06I", mp.besseli(mp.mpf("1.3"), mp.mpc("0.8", "0.6")))
emit("ORACLE_BESSELK_07_12_M04I", mp.besselk(mp.mpf("0.7"), mp.mpc("1.2", "-0.4")))

# --- Gegenbauer anchors ------------------------------------------------------
z12 = mp.cosh(mp.mpf("1.2"))
c_a = C(mp.mpc("0.5", "2"), 1, z12)
check("C(0.5+2i,1,cosh 1.2)", c_a, legendre_C(mp.mpc("0.5", "2"), 1, z12))
emit("ORACLE_C_05_2I_A1_COSH12", c_a)

d_b = D_exp(2, 1, 1)
check("D(2,1,cosh 1)", d_b, D_def(2, 1, mp.cosh(1)))
check("D(2,1,cosh 1) legendre", d_b, legendre_D(2, 1, mp.cosh(1)))
emit("ORACLE_D_2_A1_TH1", d_b)

z15 = mp.mpf("1.5")
d_c = D_def(mp.mpc(1, -3), 2, z15)
check("D(1-3i,2,1.5)", d_c, legendre_D(mp.mpc(1, -3), 2, z15))
emit("ORACLE_D_1M3I_A2_Z15", d_c)

# on-cut anchors at x = -0.4: direct one-sided limits via theta -> -+ i thc
thc = mp.acos(mp.mpf("-0.4"))
nu_c, a_c = mp.mpf("3.7"), mp.mpf("1.2")
dp = D_exp(nu_c, a_c, 1j * thc)  # x + i0
dm = D_exp(nu_c, a_c, -1j * thc)  # x - i0
check("D cut side consistency", dp, D_def(nu_c, a_c, mp.mpc("-0.4", "1e-35")))
check("D cut side consistency minus", dm, D_def(nu_c, a_c, mp.mpc("-0.4", "-1e-35")))
ph = mp.exp(1j * mp.pi * a_c)
emit("ORACLE_D_PLUS_37_A12_XM04", dp)
emit("ORACLE_D_MINUS_37_A12_XM04", dm)
emit("ORACLE_CUTC_37_A12_XM04", (1 / ph) * (ph * dp + (1 / ph) * dm))
emit("ORACLE_CUTD_37_A12_XM04", -1j * (1 / ph) * (ph * dp - (1 / ph) * dm))

# --- forward hyperbolic transform of a Gaussian bump -------------------------
lam, a_f = 2, 1


def fwd_integrand(t):
    return mp.exp(-4 * (t - 1) ** 2) * C(1j * lam, a_f, mp.cosh(t)) * mp.sinh(t) ** 2


emit("ORACLE_FWD_H_GAUSS_L2",
     mp.quad(fwd_integrand, [0, 1, 2, 4, 8]) / mp.sin(mp.pi * (1j * lam - a_f)))

# --- d = 3 radial / scalar Green values (elementary closed forms) ------------
# hyperbolic, kR = 5: nu = -i sigma, sigma = sqrt(24)
nu = -1j * mp.sqrt(mp.mpf(24))
Dh = -mp.exp(-nu * 1) / (2 * mp.sinh(1))
Ch = mp.sinh(nu * mp.mpf("0.4")) / mp.sinh(mp.mpf("0.4"))
check("H radial D elementary", Dh, D_exp(nu, 1, 1))
check("H radial C elementary", Ch, C(nu, 1, mp.cosh(mp.mpf("0.4"))))
emit("ORACLE_GREEN_RH_D3_KR5_TH1_TP04", -(2 / nu) * Dh * Ch)
emit("ORACLE_GREEN_SH_D3_KR5_TH13",
     mp.exp(-nu * mp.mpf("1.3")) / (4 * mp.pi * mp.sinh(mp.mpf("1.3"))))
# evanescent, kR = 0.5: nu = sqrt(3)/2
nu_e = mp.sqrt(mp.mpf(3)) / 2
emit("ORACLE_GREEN_SH_D3_KR05_TH3",
     mp.exp(-nu_e * 3) / (4 * mp.pi * mp.sinh(mp.mpf(3))))
# spherical, kR = 4: nu = tau = sqrt(17)
tau = mp.sqrt(mp.mpf(17))
Ds = mp.exp(1j * tau * 1) / (2j * mp.sin(1))
Cs = mp.sin(tau * mp.mpf("0.3")) / mp.sin(mp.mpf("0.3"))
check("S radial D elementary", Ds, D_exp(tau, 1, -1j * 1))
check("S radial C elementary", Cs, C(tau, 1, mp.cos(mp.mpf("0.3"))))
emit("ORACLE_GREEN_RS_D3_KR4_TH1_TP03", 1j * (2 / tau) * Ds * Cs)
emit("ORACLE_GREEN_SS_D3_KR4_TH12",
     mp.exp(1j * tau * mp.mpf("1.2")) / (4 * mp.pi * mp.sin(mp.mpf("1.2"))))

# --- emit header -------------------------------------------------------------
print("// Auto-generated by tests/gen_oracles.py -- do not edit by hand.")
print("// Frozen multiprecision reference values (40-digit computation).")
print("#pragma once")
print()
print("#include <complex>")
print()
print("namespace oracle {")
print()
for name, re, im in values:
    print(f"inline const std::complex<double> {name}{{{re}, {im}}};")
print()
print("} // namespace oracle")
