#pragma once

// Test-only oracles.  Everything here evaluates the defining integrals and
// equations directly -- adaptive Simpson quadrature, bisection, Newton -- and
// is deliberately independent of the AGM / Carlson / Landen fast paths in the
// library.  Slow and simple on purpose.

#include <cmath>
#include <functional>
#include <stdexcept>

#include "spiralflow/profile.hpp"

namespace oracle {

using Fn = std::function<long double(long double)>;

inline long double simpson_rec(const Fn& f, long double a, long double b,
                               long double fa, long double fm, long double fb,
                               long double whole, long double tol, int depth) {
    const long double m = 0.5L * (a + b);
    const long double lm = 0.5L * (a + m), rm = 0.5L * (m + b);
    const long double flm = f(lm), frm = f(rm);
    const long double left = (m - a) / 6.0L * (fa + 4.0L * flm + fm);
    const long double right = (b - m) / 6.0L * (fm + 4.0L * frm + fb);
    const long double sum = left + right;
    // Floor the tolerance at the long double roundoff of the local value so
    // the recursion terminates instead of chasing unreachable accuracy.
    const long double floor_tol = 1e-18L * std::fabs(sum) + 1e-25L;
    if (depth <= 0 || std::fabs(sum - whole) <= 15.0L * std::max(tol, floor_tol)) {
        return sum + (sum - whole) / 15.0L;
    }
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5L * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5L * tol, depth - 1);
}

inline double adaptive_simpson(const Fn& f, double a, double b,
                               double tol = 1e-14, int depth = 30) {
    const long double fa = f(a), fb = f(b), fm = f(0.5L * (a + b));
    const long double whole =
        (static_cast<long double>(b) - a) / 6.0L * (fa + 4.0L * fm + fb);
    return static_cast<double>(
        simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth));
}

// The amplitude substitution t = sin(theta) removes the endpoint singularity
// from the defining integrals, so the integrands below are smooth.
inline double K_quad(double alpha) {
    const long double a2 = static_cast<long double>(alpha) * alpha;
    return adaptive_simpson(
        [a2](long double th) {
            const long double s = std::sin(th);
            return 1.0L / std::sqrt(1.0L - a2 * s * s);
        },
        0.0, M_PI / 2);
}

inline double E_quad(double alpha) {
    const long double a2 = static_cast<long double>(alpha) * alpha;
    return adaptive_simpson(
        [a2](long double th) {
            const long double s = std::sin(th);
            return std::sqrt(1.0L - a2 * s * s);
        },
        0.0, M_PI / 2);
}

inline double F_quad(double x, double alpha) {
    const long double a2 = static_cast<long double>(alpha) * alpha;
    return adaptive_simpson(
        [a2](long double th) {
            const long double s = std::sin(th);
            return 1.0L / std::sqrt(1.0L - a2 * s * s);
        },
        0.0, std::asin(x));
}

inline double H_quad(double alpha) {
    const long double k = K_quad(alpha);
    const long double e = E_quad(alpha);
    const long double a2 = static_cast<long double>(alpha) * alpha;
    return static_cast<double>(((a2 - 2.0L) * k + 3.0L * e) * k);
}

// Inverts F(s; alpha) = u on s in [0, 1] through the quadrature oracle:
// bisection bracket, then Newton with the analytic integrand derivative.
inline double sn_quad(double u, double alpha) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 40; ++i) {
        const double mid = 0.5 * (lo + hi);
        (F_quad(mid, alpha) < u ? lo : hi) = mid;
    }
    double s = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i) {
        const double fprime =
            1.0 / std::sqrt((1.0 - s * s) * (1.0 - alpha * alpha * s * s));
        s -= (F_quad(s, alpha) - u) / fprime;
        s = std::min(1.0, std::max(0.0, s));
    }
    return s;
}

// Solves H(alpha) = (pi^2 + pi*flux/4)/(n^2(1+a^2)) by bisection on the
// quadrature-backed H.
inline double alpha_quad(int n, double flux, double a, int iters = 48) {
    const double target =
        (M_PI * M_PI + M_PI * flux / 4.0) / (n * n * (1.0 + a * a));
    double lo = 1e-12, hi = 1.0 - 1e-12;
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        (H_quad(mid) - target > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Flux by direct quadrature of the profile over one full turn.
inline double flux_z_quad(const spiralflow::ProfileSolution& p) {
    return -adaptive_simpson(
        [&p](long double z) {
            return static_cast<long double>(
                spiralflow::eval_phi(p, static_cast<double>(z)).phi);
        },
        -M_PI, M_PI, 1e-12);
}

}  // namespace oracle
