#pragma once

// Complete and incomplete elliptic integrals of the first and second kind,
// and the Jacobi elliptic functions sn, cn, dn.  The modulus convention is
// alpha (not the parameter m = alpha^2):
//
//   F(x; alpha) = integral_0^x dt / sqrt((1 - t^2)(1 - alpha^2 t^2)),
//   K(alpha) = F(1; alpha),  E(alpha) = integral_0^1 sqrt(1-alpha^2 t^2)/sqrt(1-t^2) dt.
//
// K and E use the arithmetic-geometric mean, the incomplete integral uses the
// Carlson symmetric form, and sn/cn/dn invert the AGM chain through the
// ascending phase recursion.  Internals run in long double so the double
// results are accurate to a few ulp over the whole admissible range.

#include <cmath>
#include <stdexcept>
#include <string>

#include "spiralflow/errors.hpp"

namespace spiralflow {

struct JacobiTriple {
    double sn;
    double cn;
    double dn;
};

namespace detail {

inline constexpr long double pi_l = 3.14159265358979323846264338327950288L;
// Below this modulus the alpha = 0 closed forms (arcsin/sin) are exact to
// double precision; using them avoids cancellation in the small-amplitude
// regime where alpha -> 0.
inline constexpr double tiny_modulus = 1e-8;
inline constexpr long double agm_rel_tol = 1e-15L;

inline void require_modulus(double alpha, bool allow_one, const char* fn) {
    const bool ok = allow_one ? (alpha >= 0.0 && alpha <= 1.0)
                              : (alpha >= 0.0 && alpha < 1.0);
    if (!ok) {
        throw std::domain_error(std::string(fn) + ": modulus alpha = " +
                                std::to_string(alpha) + " outside [0, 1" +
                                (allow_one ? "]" : ")"));
    }
}

// Carlson symmetric integral R_F(x, y, z) by the duplication theorem.
// Valid for non-negative arguments with at most one of them zero.
inline long double carlson_rf(long double x, long double y, long double z) {
    long double mu = 0.0L;
    for (int it = 0; it < 200; ++it) {
        const long double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const long double lam = sx * sy + sy * sz + sz * sx;
        x = 0.25L * (x + lam);
        y = 0.25L * (y + lam);
        z = 0.25L * (z + lam);
        mu = (x + y + z) / 3.0L;
        const long double eps =
            std::max({std::fabs(x - mu), std::fabs(y - mu), std::fabs(z - mu)});
        if (eps < 1e-6L * mu) break;
    }
    const long double dx = 1.0L - x / mu;
    const long double dy = 1.0L - y / mu;
    const long double dz = 1.0L - z / mu;
    const long double e2 = dx * dy + dy * dz + dz * dx;
    const long double e3 = dx * dy * dz;
    const long double s =
        1.0L - e2 / 10.0L + e3 / 14.0L + e2 * e2 / 24.0L - 3.0L * e2 * e3 / 44.0L;
    return s / std::sqrt(mu);
}

struct AgmChain {
    static constexpr int max_depth = 64;
    long double a[max_depth];
    long double c[max_depth];
    int depth = 0;  // index of the final (converged) mean
};

// Runs the AGM for a0 = 1, b0 = alpha' and records the a_i, c_i sequences.
inline AgmChain agm_chain(long double alpha) {
    AgmChain ch;
    long double a = 1.0L;
    long double b = std::sqrt((1.0L - alpha) * (1.0L + alpha));
    long double c = alpha;
    int i = 0;
    ch.a[0] = a;
    ch.c[0] = c;
    while (i + 1 < AgmChain::max_depth) {
        const long double an = 0.5L * (a + b);
        const long double cn = 0.5L * (a - b);
        b = std::sqrt(a * b);
        a = an;
        c = cn;
        ++i;
        ch.a[i] = a;
        ch.c[i] = c;
        if (std::fabs(c) <= agm_rel_tol * a) break;
    }
    ch.depth = i;
    return ch;
}

}  // namespace detail

// Complete elliptic integral of the first kind, K(alpha) = F(1; alpha).
inline double complete_K(double alpha) {
    detail::require_modulus(alpha, /*allow_one=*/false, "complete_K");
    if (alpha < detail::tiny_modulus) return static_cast<double>(detail::pi_l / 2.0L);
    const detail::AgmChain ch = detail::agm_chain(static_cast<long double>(alpha));
    return static_cast<double>(detail::pi_l / (2.0L * ch.a[ch.depth]));
}

// Complete elliptic integral of the second kind, E(alpha).
inline double complete_E(double alpha) {
    detail::require_modulus(alpha, /*allow_one=*/true, "complete_E");
    if (alpha < detail::tiny_modulus) return static_cast<double>(detail::pi_l / 2.0L);
    if (alpha == 1.0) return 1.0;
    const detail::AgmChain ch = detail::agm_chain(static_cast<long double>(alpha));
    long double sum = 0.0L;
    long double two_pow = 0.5L;  // 2^{i-1}
    for (int i = 0; i <= ch.depth; ++i) {
        sum += two_pow * ch.c[i] * ch.c[i];
        two_pow *= 2.0L;
    }
    const long double k = detail::pi_l / (2.0L * ch.a[ch.depth]);
    return static_cast<double>(k * (1.0L - sum));
}

// Incomplete elliptic integral of the first kind in the x = sin(amplitude)
// convention; F(1; alpha) coincides with complete_K(alpha) by construction.
inline double incomplete_F(double x, double alpha) {
    detail::require_modulus(alpha, /*allow_one=*/false, "incomplete_F");
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("incomplete_F: x = " + std::to_string(x) +
                                " outside [0, 1]");
    }
    if (alpha < detail::tiny_modulus) return std::asin(x);
    if (x == 1.0) return complete_K(alpha);
    const long double xl = static_cast<long double>(x);
    const long double al = static_cast<long double>(alpha);
    const long double y = (1.0L - xl) * (1.0L + xl);
    const long double z = (1.0L - al * xl) * (1.0L + al * xl);
    return static_cast<double>(xl * detail::carlson_rf(y, z, 1.0L));
}

// Jacobi elliptic functions at argument u.  sn inverts incomplete_F on
// [0, K(alpha)] and extends to all real u through the quarter-period
// symmetries sn(-u) = -sn(u), sn(2K - u) = sn(u), period 4K.
inline JacobiTriple jacobi(double u, double alpha) {
    detail::require_modulus(alpha, /*allow_one=*/false, "jacobi");
    if (!std::isfinite(u)) throw std::domain_error("jacobi: non-finite argument");
    const long double al = static_cast<long double>(alpha);
    if (alpha < detail::tiny_modulus) {
        const double sn = std::sin(u);
        const double cn = std::cos(u);
        const double dn = static_cast<double>(
            std::sqrt(1.0L - al * al * static_cast<long double>(sn) * sn));
        return {sn, cn, dn};
    }

    const detail::AgmChain ch = detail::agm_chain(al);
    const long double K = detail::pi_l / (2.0L * ch.a[ch.depth]);

    // Reduce to v in [0, K] and record the sign flips of sn and cn.
    long double v = std::fmod(static_cast<long double>(u), 4.0L * K);
    if (v < 0.0L) v += 4.0L * K;
    long double sgn_sn = 1.0L, sgn_cn = 1.0L;
    if (v >= 2.0L * K) {
        v -= 2.0L * K;
        sgn_sn = -sgn_sn;
        sgn_cn = -sgn_cn;
    }
    if (v > K) {
        v = 2.0L * K - v;
        sgn_cn = -sgn_cn;
    }

    // Ascending phase recursion through the recorded AGM chain.
    long double phi = std::ldexp(ch.a[ch.depth] * v, ch.depth);
    for (int i = ch.depth; i >= 1; --i) {
        long double s = (ch.c[i] / ch.a[i]) * std::sin(phi);
        s = std::min(1.0L, std::max(-1.0L, s));
        phi = 0.5L * (phi + std::asin(s));
    }
    const long double sn = std::sin(phi);
    const long double cn = std::cos(phi);
    const long double dn =
        std::sqrt((1.0L - al) * (1.0L + al) + al * al * cn * cn);
    return {static_cast<double>(sgn_sn * sn), static_cast<double>(sgn_cn * cn),
            static_cast<double>(dn)};
}

}  // namespace spiralflow
