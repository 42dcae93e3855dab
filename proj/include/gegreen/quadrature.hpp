// SPDX-License-Identifier: Apache-2.0
#ifndef GEGREEN_QUADRATURE_HPP
#define GEGREEN_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "errors.hpp"
#include "types.hpp"

namespace gegreen {

struct GaussRule {
    std::vector<double> x; // nodes on (-1, 1)
    std::vector<double> w; // weights
};

// Gauss-Legendre nodes/weights by Newton iteration on the Legendre polynomial.
inline GaussRule make_gauss_rule(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        r.w[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        r.w[n - 1 - i] = r.w[i];
    }
    return r;
}

inline const GaussRule& gauss_rule(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_rule(n)).first;
    return it->second;
}

// Deterministic pairwise sum (stable across thread counts when inputs are
// accumulated per-index first).
template <typename T>
inline T pairwise_sum(const std::vector<T>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        T s{};
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

template <typename T>
inline T pairwise_sum(const std::vector<T>& v) {
    return v.empty() ? T{} : pairwise_sum(v, 0, v.size());
}

// Fixed-order Gauss-Legendre on [a, b].
template <typename F>
inline auto integrate_gauss(F&& f, double a, double b, int n) {
    const GaussRule& r = gauss_rule(n);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    using R = decltype(f(a));
    std::vector<R> terms(r.x.size());
    for (std::size_t i = 0; i < r.x.size(); ++i) terms[i] = (h * r.w[i]) * f(c + h * r.x[i]);
    return pairwise_sum(terms);
}

// Adaptive Gauss-Legendre by panel bisection with order-doubling error estimate.
template <typename F>
inline auto integrate_adaptive(F&& f, double a, double b, double tol, int depth_limit = 14,
                               int base_order = 16) {
    using R = decltype(f(a));
    struct Rec {
        const F& f;
        double tol;
        int base;
        int limit;
        R run(double a, double b, int depth) const {
            R coarse = integrate_gauss(f, a, b, base);
            R fine = integrate_gauss(f, a, b, 2 * base);
            if (std::abs(fine - coarse) <= tol * (1.0 + std::abs(fine)) || depth >= limit) {
                if (depth >= limit && std::abs(fine - coarse) > 1e3 * tol * (1.0 + std::abs(fine)))
                    throw QuadratureNotConverged("integrate_adaptive: depth limit reached");
                return fine;
            }
            const double m = 0.5 * (a + b);
            return run(a, m, depth + 1) + run(m, b, depth + 1);
        }
    };
    Rec rec{f, tol, base_order, depth_limit};
    return rec.run(a, b, 0);
}

} // namespace gegreen

#endif
