#pragma once

// The reduced problem behind the generalized spiral solutions: an angular
// profile phi that the velocity field carries along log-spiral rays.  phi
// oscillates in the cubic potential
//
//   V(phi) = [C phi + 2 phi^2 - phi^3/3] / (1 + a^2),
//
// i.e. (1 + a^2) phi'' + 4 phi = phi^2 - C, and is pinned down by three
// requirements: the roots phi1 < phi2 < phi3 of the energy cubic sum to 6,
// the orbit closes after 2*pi/n, and the mean of phi reproduces the requested
// flux.  Those three conditions collapse to one transcendental equation for
// the elliptic modulus alpha,
//
//   H(alpha) = (pi^2 + pi*flux/4) / (n^2 (1 + a^2)),
//   H(alpha) = [(alpha^2 - 2) K(alpha) + 3 E(alpha)] K(alpha),
//
// with H strictly decreasing from H(0) = pi^2/4 to -infinity, so the modulus
// is unique whenever the right-hand side is strictly below pi^2/4.  The
// profile itself is phi(z) = phi1 + (phi2 - phi1) sn^2(kappa z; alpha) with
// kappa = n K(alpha) / pi, the minimum placed at z = 0.  See
// docs/math_notes.md for the coefficient-matching derivations of C and the
// mechanical energy.

#include <array>
#include <cmath>
#include <string>

#include "spiralflow/elliptic.hpp"
#include "spiralflow/errors.hpp"

namespace spiralflow {

struct SolutionParams {
    int n = 1;             // branch count, n >= 1
    double flux = 0.0;     // net outflow through any curve around the origin
    double a = 0.0;        // spiral parameter; a = 0 is the purely radial case
    double theta0 = 0.0;   // free phase
};

// Mean swirl induced by the spiral parameter; the damping-free profile ODE
// requires exactly this value.
inline double swirl_mu(const SolutionParams& p) { return -4.0 * p.a; }

struct ProfileSolution {
    SolutionParams params;
    double alpha = 0.0;               // elliptic modulus in (0, 1)
    double phi1 = 0.0, phi2 = 0.0, phi3 = 0.0;  // energy-cubic roots, ascending
    double c_const = 0.0;             // ODE constant C
    double energy = 0.0;              // mechanical energy of the phi oscillator
    double kappa = 0.0;               // n K(alpha) / pi
};

struct PhiJet {
    double phi;
    double dphi;
    double d2phi;
};

namespace detail {

inline constexpr double pi_d = 3.141592653589793238462643383279502884;

inline double profile_target(int n, double flux, double a) {
    return (pi_d * pi_d + pi_d * flux / 4.0) / (n * n * (1.0 + a * a));
}

inline void require_branch_count(int n, const char* fn) {
    if (n < 1) throw std::invalid_argument(std::string(fn) + ": n must be >= 1");
}

}  // namespace detail

// H(alpha) = [(alpha^2 - 2) K + 3 E] K; strictly decreasing, H(0) = pi^2/4.
inline double shape_H(double alpha) {
    const long double k = complete_K(alpha);
    const long double e = complete_E(alpha);
    const long double a2 = static_cast<long double>(alpha) * alpha;
    return static_cast<double>(((a2 - 2.0L) * k + 3.0L * e) * k);
}

// Largest admissible flux at given (n, a); the existence region is strictly
// below this parabola in the (a, flux) plane.
inline double existence_flux_bound(int n, double a) {
    detail::require_branch_count(n, "existence_flux_bound");
    return detail::pi_d * (static_cast<double>(n) * n * (1.0 + a * a) - 4.0);
}

struct ModulusSolution {
    double alpha;
    double bracket_width;   // final bisection bracket width
    double residual;        // |H(alpha) - target|
};

namespace detail {

inline ModulusSolution solve_modulus_impl(int n, double flux, double a) {
    require_branch_count(n, "solve_modulus");
    const double target = profile_target(n, flux, a);
    const double h0 = pi_d * pi_d / 4.0;
    if (target > h0) {
        throw NoSolution("no profile for n=" + std::to_string(n) + ", a=" +
                         std::to_string(a) + ": flux " + std::to_string(flux) +
                         " exceeds the existence bound flux_max = " +
                         std::to_string(existence_flux_bound(n, a)));
    }
    if (target == h0) {
        throw DegenerateProfile(
            "parameters sit on the existence boundary (flux == flux_max = " +
            std::to_string(existence_flux_bound(n, a)) +
            "): the profile degenerates to a constant");
    }

    // H is strictly decreasing, so bisection on a sign change of H - target
    // is unconditionally safe; near alpha = 0 the difference underflows to a
    // nonnegative value, which keeps the bracket valid.
    double lo = 1e-12, hi = 1.0 - 1e-12;
    if (shape_H(hi) > target) {
        throw std::domain_error(
            "solve_modulus: modulus within 1e-12 of 1 (flux too negative for "
            "the supported bracket)");
    }
    while (hi - lo >= 1e-14) {
        const double mid = 0.5 * (lo + hi);
        if (shape_H(mid) - target > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // One guarded secant refinement inside the final bracket.
    double alpha = 0.5 * (lo + hi);
    const double flo = shape_H(lo) - target;
    const double fhi = shape_H(hi) - target;
    if (flo != fhi) {
        const double cand = lo - flo * (hi - lo) / (fhi - flo);
        if (cand > lo && cand < hi) alpha = cand;
    }
    return {alpha, hi - lo, std::fabs(shape_H(alpha) - target)};
}

}  // namespace detail

// Unique modulus solving H(alpha) = (pi^2 + pi*flux/4)/(n^2(1+a^2)), with the
// bracket diagnostics exposed.
inline ModulusSolution solve_modulus_info(int n, double flux, double a) {
    return detail::solve_modulus_impl(n, flux, a);
}

inline double solve_modulus(int n, double flux, double a) {
    return detail::solve_modulus_impl(n, flux, a).alpha;
}

// Roots of the energy cubic from (alpha, n, a): the spread phi3 - phi1 is
// fixed by the closing condition, phi2 - phi1 by the modulus, the sum by
// Vieta.
inline std::array<double, 3> compute_roots(double alpha, int n, double a) {
    detail::require_branch_count(n, "compute_roots");
    detail::require_modulus(alpha, /*allow_one=*/false, "compute_roots");
    const double k = complete_K(alpha);
    const double spread =
        6.0 * n * n * (1.0 + a * a) * k * k / (detail::pi_d * detail::pi_d);
    const double phi1 = 2.0 - (1.0 + alpha * alpha) * spread / 3.0;
    return {phi1, phi1 + alpha * alpha * spread, phi1 + spread};
}

// Closed-form flux of a resolved profile; must reproduce params.flux.
inline double flux_closed_form(const ProfileSolution& p) {
    const double spread = p.phi3 - p.phi1;
    const double k = complete_K(p.alpha);
    const double e = complete_E(p.alpha);
    return -2.0 * std::sqrt(6.0) * p.params.n *
           std::sqrt(1.0 + p.params.a * p.params.a) / std::sqrt(spread) *
           (p.phi3 * k - spread * e);
}

// Resolve the full profile from the public parameters.
inline ProfileSolution build_profile(const SolutionParams& params) {
    const double alpha = solve_modulus(params.n, params.flux, params.a);
    const auto [phi1, phi2, phi3] = compute_roots(alpha, params.n, params.a);
    ProfileSolution p;
    p.params = params;
    p.alpha = alpha;
    p.phi1 = phi1;
    p.phi2 = phi2;
    p.phi3 = phi3;
    // Coefficient matching of the factorized energy cubic (docs/math_notes.md).
    p.c_const = -(phi1 * phi2 + phi1 * phi3 + phi2 * phi3) / 3.0;
    p.energy = -(phi1 * phi2 * phi3) / (3.0 * (1.0 + params.a * params.a));
    p.kappa = params.n * complete_K(alpha) / detail::pi_d;
    const double flux_echo = flux_closed_form(p);
    if (std::fabs(flux_echo - params.flux) > 1e-8) {
        throw InternalInconsistency(
            "build_profile: closed-form flux " + std::to_string(flux_echo) +
            " deviates from requested " + std::to_string(params.flux));
    }
    return p;
}

// Profile value and derivatives at z (minimum at z = 0, period 2*pi/n).
// d2phi comes from the ODE itself; phi_d2_chain below gives the independent
// chain-rule value.
inline PhiJet eval_phi(const ProfileSolution& p, double z) {
    const JacobiTriple j = jacobi(p.kappa * z, p.alpha);
    const long double sn = j.sn, cn = j.cn, dn = j.dn;
    const long double width = static_cast<long double>(p.phi2) - p.phi1;
    const long double phi = p.phi1 + width * sn * sn;
    const long double dphi = 2.0L * p.kappa * width * sn * cn * dn;
    const long double a2 = static_cast<long double>(p.params.a) * p.params.a;
    const long double d2phi = (phi * phi - p.c_const - 4.0L * phi) / (1.0L + a2);
    return {static_cast<double>(phi), static_cast<double>(dphi),
            static_cast<double>(d2phi)};
}

// Second derivative of phi by differentiating the sn^2 form directly.
inline double phi_d2_chain(const ProfileSolution& p, double z) {
    const JacobiTriple j = jacobi(p.kappa * z, p.alpha);
    const long double sn2 = static_cast<long double>(j.sn) * j.sn;
    const long double cn2 = static_cast<long double>(j.cn) * j.cn;
    const long double dn2 = static_cast<long double>(j.dn) * j.dn;
    const long double a2 = static_cast<long double>(p.alpha) * p.alpha;
    const long double curv = cn2 * dn2 - sn2 * dn2 - a2 * sn2 * cn2;
    return static_cast<double>(2.0L * static_cast<long double>(p.kappa) * p.kappa *
                               (p.phi2 - p.phi1) * curv);
}

// Potential of the phi oscillator.
inline double phi_potential(const ProfileSolution& p, double phi) {
    const long double c = p.c_const;
    const long double f = phi;
    const long double a2 = static_cast<long double>(p.params.a) * p.params.a;
    return static_cast<double>((c * f + 2.0L * f * f - f * f * f / 3.0L) /
                               (1.0L + a2));
}

// Admissible window for (1 + a^2) * energy at given C: between the potential
// values at its local minimum and local maximum.
inline std::array<double, 2> admissible_energy_window(double c_const) {
    if (!(c_const > -4.0)) {
        throw std::domain_error("admissible_energy_window: requires C > -4");
    }
    const double s = std::sqrt(c_const + 4.0);
    const double lo = (2.0 / 3.0) * (s - 2.0) * (s - 2.0 - c_const);
    const double hi = (2.0 / 3.0) * (s + 2.0) * (s + 2.0 + c_const);
    return {lo, hi};
}

}  // namespace spiralflow
