#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "spiralflow/profile.hpp"

using namespace spiralflow;

namespace {

// Valid parameter sets reused across the dynamics checks: small-amplitude,
// moderate, zero-flux and strongly inflowing cases.
const SolutionParams kSweep[] = {
    {2, 0.0, 0.5, 0.0},          {2, 0.0, 1e-3, 0.0},
    {1, 0.0, std::sqrt(3.0) + 1e-4, 0.0},
    {3, -4.0 * M_PI, 0.0, 0.0},  {3, -4.0 * M_PI, 0.7, 0.0},
    {4, -4.0 * M_PI, 2.0, 0.0},  {1, 0.0, 2.0, 0.0},
};

}  // namespace

TEST_CASE("shape_H: anchors, golden values, sign change") {
    CHECK(shape_H(0.0) == Catch::Approx(M_PI * M_PI / 4).margin(1e-13));
    // Golden values frozen from the quadrature oracle.
    CHECK(shape_H(0.5) == Catch::Approx(2.4482548673901577).epsilon(1e-14));
    CHECK(shape_H(0.2) == Catch::Approx(2.4670156215481645).epsilon(1e-14));
    CHECK(shape_H(0.9) == Catch::Approx(1.8272619090554287).epsilon(1e-14));
    CHECK(std::fabs(shape_H(0.5) - oracle::H_quad(0.5)) < 1e-13);
    CHECK(shape_H(0.999) < 0.0);
    CHECK(shape_H(0.999) == Catch::Approx(-6.7101265651707489).epsilon(1e-13));
}

TEST_CASE("shape_H: strictly decreasing") {
    double prev = shape_H(0.0);
    for (int i = 1; i <= 99; ++i) {
        const double h = shape_H(i / 100.0);
        CHECK(h < prev);
        prev = h;
    }
}

TEST_CASE("solve_modulus: boundary classification") {
    CHECK_THROWS_AS(solve_modulus(2, 0.0, 0.0), DegenerateProfile);
    CHECK_THROWS_AS(solve_modulus(1, 0.0, 1.0), NoSolution);
    CHECK_THROWS_AS(solve_modulus(1, 2.0 * M_PI, 0.0), NoSolution);
    CHECK_THROWS_AS(solve_modulus(0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("solve_modulus: small-amplitude values") {
    // Leading-order predictions with 5% bands, plus golden values from the
    // quadrature-backed bisection oracle.
    const double a1 = solve_modulus(1, 0.0, std::sqrt(3.0) + 1e-4);
    CHECK(a1 == Catch::Approx(std::pow(256.0 / 3.0, 0.125) * std::pow(1e-4, 0.25))
                    .epsilon(0.05));
    CHECK(a1 == Catch::Approx(0.17301827193047087).epsilon(1e-10));

    const double a2 = solve_modulus(2, 0.0, 1e-3);
    CHECK(a2 == Catch::Approx(std::pow(32.0 / 3.0, 0.25) * std::sqrt(1e-3))
                    .epsilon(0.05));
    CHECK(a2 == Catch::Approx(0.057102164070760554).epsilon(1e-10));
}

TEST_CASE("solve_modulus: bracket diagnostics and oracle agreement") {
    for (const auto& params : kSweep) {
        const ModulusSolution m =
            solve_modulus_info(params.n, params.flux, params.a);
        CHECK(m.bracket_width < 1e-14);
        CHECK(m.residual < 1e-12);
    }
    CHECK(std::fabs(solve_modulus(3, -4.0 * M_PI, 0.0) -
                    oracle::alpha_quad(3, -4.0 * M_PI, 0.0)) < 1e-9);
}

TEST_CASE("compute_roots: degenerate limit and small-amplitude expansions") {
    // alpha -> 0 with n = 2, a = 0: spread -> 6, double root at the minimum.
    const auto [p1, p2, p3] = compute_roots(1e-9, 2, 0.0);
    CHECK(p1 == Catch::Approx(0.0).margin(1e-8));
    CHECK(p2 == Catch::Approx(0.0).margin(1e-8));
    CHECK(p3 == Catch::Approx(6.0).margin(1e-8));

    {
        const double alpha = solve_modulus(2, 0.0, 1e-3);
        const auto [q1, q2, q3] = compute_roots(alpha, 2, 1e-3);
        const double amp = 4.0 * std::sqrt(6.0) * 1e-3;
        CHECK(q1 == Catch::Approx(-amp).epsilon(0.05));
        CHECK(q2 == Catch::Approx(amp).epsilon(0.05));
        CHECK(q3 == Catch::Approx(6.0).margin(0.05));
    }
    {
        const double eps = 1e-4;
        const double alpha = solve_modulus(1, 0.0, std::sqrt(3.0) + eps);
        const auto [q1, q2, q3] = compute_roots(alpha, 1, std::sqrt(3.0) + eps);
        const double amp = 4.0 * std::pow(3.0, 0.75) * std::sqrt(eps);
        CHECK(q1 == Catch::Approx(-amp).epsilon(0.05));
        CHECK(q2 == Catch::Approx(amp).epsilon(0.05));
        CHECK(q3 == Catch::Approx(6.0).margin(0.05));
    }
}

TEST_CASE("build_profile: golden end-to-end resolution") {
    // All constants frozen from the high-precision bisection + quadrature
    // oracle for (n, flux, a) = (2, 0, 0.5).
    const ProfileSolution p = build_profile({2, 0.0, 0.5, 0.0});
    CHECK(p.alpha == Catch::Approx(0.87604461071124098).epsilon(1e-11));
    CHECK(p.phi1 == Catch::Approx(-6.5811518386490375).epsilon(1e-11));
    CHECK(p.phi2 == Catch::Approx(4.5970288887372620).epsilon(1e-11));
    CHECK(p.phi3 == Catch::Approx(7.9841229499117755).epsilon(1e-11));
    CHECK(p.c_const == Catch::Approx(15.365075567757744).epsilon(1e-11));
    CHECK(p.energy == Catch::Approx(64.413232202881765).epsilon(1e-11));
    CHECK(p.kappa == Catch::Approx(1.3935697465411536).epsilon(1e-11));

    // Type invariants.
    CHECK(p.phi1 < p.phi2);
    CHECK(p.phi2 < p.phi3);
    CHECK(std::fabs(p.phi1 + p.phi2 + p.phi3 - 6.0) < 1e-10);
    CHECK(std::fabs(p.alpha * p.alpha * (p.phi3 - p.phi1) - (p.phi2 - p.phi1)) <
          1e-10);
    CHECK(std::fabs(p.kappa - p.params.n * complete_K(p.alpha) / M_PI) < 1e-12);
    CHECK(p.c_const > -4.0);
}

TEST_CASE("build_profile: rejections and the zero-target flux case") {
    CHECK_THROWS_AS(build_profile({1, 0.0, 1.0, 0.0}), NoSolution);
    CHECK_THROWS_AS(build_profile({2, 0.0, 0.0, 0.0}), DegenerateProfile);

    const ProfileSolution p = build_profile({3, -4.0 * M_PI, 0.0, 0.0});
    CHECK(p.alpha == Catch::Approx(0.98038231082634335).epsilon(1e-11));
    CHECK(std::fabs(flux_closed_form(p) + 4.0 * M_PI) < 1e-8);
}

TEST_CASE("eval_phi: turning points and phase convention") {
    for (const auto& params : kSweep) {
        const ProfileSolution p = build_profile(params);
        const double scale = std::max(1.0, p.phi2 - p.phi1);
        const PhiJet at0 = eval_phi(p, 0.0);
        CHECK(std::fabs(at0.phi - p.phi1) < 1e-12 * scale);
        CHECK(std::fabs(at0.dphi) < 1e-12 * scale);
        const PhiJet at_half = eval_phi(p, M_PI / params.n);
        CHECK(std::fabs(at_half.phi - p.phi2) < 1e-11 * scale);
        CHECK(std::fabs(at_half.dphi) < 1e-9 * scale);
    }
}

TEST_CASE("eval_phi: small-amplitude cosine shape") {
    const double eps = 1e-3;
    const ProfileSolution p = build_profile({2, 0.0, eps, 0.0});
    const double amp = 4.0 * std::sqrt(6.0) * eps;
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double z = 2.0 * M_PI * i / 200.0;
        worst = std::max(
            worst, std::fabs(eval_phi(p, z).phi - (-amp * std::cos(2.0 * z))));
    }
    CHECK(worst < 10.0 * eps * eps);
}

TEST_CASE("flux_closed_form: self-consistency and quadrature oracle") {
    const ProfileSolution a = build_profile({2, 0.0, 1e-3, 0.0});
    CHECK(std::fabs(flux_closed_form(a) - 0.0) < 1e-8);
    const ProfileSolution b = build_profile({3, -4.0 * M_PI, 0.0, 0.0});
    CHECK(std::fabs(flux_closed_form(b) + 4.0 * M_PI) < 1e-8);
    for (const auto& params : {SolutionParams{2, 0.0, 0.5, 0.0},
                               SolutionParams{3, -4.0 * M_PI, 0.7, 0.0}}) {
        const ProfileSolution p = build_profile(params);
        CHECK(std::fabs(flux_closed_form(p) - oracle::flux_z_quad(p)) < 1e-8);
    }
}

TEST_CASE("invariant: ODE residual with chain-rule second derivative") {
    for (const auto& params : kSweep) {
        const ProfileSolution p = build_profile(params);
        const double a2 = params.a * params.a;
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double z = 2.0 * M_PI * i / 100.0 + 0.013;
            const PhiJet j = eval_phi(p, z);
            const long double res =
                (1.0L + static_cast<long double>(a2)) * phi_d2_chain(p, z) +
                4.0L * j.phi - static_cast<long double>(j.phi) * j.phi +
                p.c_const;
            worst = std::max(worst, std::fabs(static_cast<double>(res)));
        }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("invariant: ODE residual with finite-difference second derivative") {
    // Step 1e-4 instead of 1e-5: the three-point second difference of an
    // O(10) profile at step 1e-5 carries ~1e-4 of pure rounding noise, which
    // would swamp the 1e-5 tolerance.  Large-amplitude profiles additionally
    // get the textbook finite-difference error budget added on top: the
    // h^2/12 truncation term with the fourth derivative bounded through the
    // ODE itself, plus the rounding term 6 eps |phi| / h^2.
    const double h = 1e-4;
    for (const auto& params : kSweep) {
        const ProfileSolution p = build_profile(params);
        const double a2 = params.a * params.a;
        const double m = std::max(std::fabs(p.phi1), std::fabs(p.phi2));
        const double d2_max = (m * m + 4.0 * m + std::fabs(p.c_const)) / (1.0 + a2);
        const double d1sq_max =
            p.kappa * p.kappa * (p.phi2 - p.phi1) * (p.phi2 - p.phi1);
        const double d4_bound =
            ((2.0 * m + 4.0) * d2_max + 2.0 * d1sq_max) / (1.0 + a2);
        const double fd_budget = (1.0 + a2) * (h * h / 12.0 * d4_bound +
                                               6.0 * m * 1.1e-16 / (h * h));
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double z = 2.0 * M_PI * i / 100.0;
            const double fp = eval_phi(p, z + h).phi;
            const double f0 = eval_phi(p, z).phi;
            const double fm = eval_phi(p, z - h).phi;
            const double d2 = (fp - 2.0 * f0 + fm) / (h * h);
            worst = std::max(worst, std::fabs((1.0 + a2) * d2 + 4.0 * f0 -
                                              f0 * f0 + p.c_const));
        }
        CHECK(worst < 1e-5 + fd_budget);
    }
}

TEST_CASE("invariant: energy conservation") {
    for (const auto& params : kSweep) {
        const ProfileSolution p = build_profile(params);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double z = 2.0 * M_PI * i / 100.0 + 0.007;
            const PhiJet j = eval_phi(p, z);
            const long double en =
                0.5L * static_cast<long double>(j.dphi) * j.dphi +
                phi_potential(p, j.phi) - p.energy;
            worst = std::max(worst, std::fabs(static_cast<double>(en)));
        }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("invariant: periodicity and root bracketing") {
    for (const auto& params : kSweep) {
        const ProfileSolution p = build_profile(params);
        const double period = 2.0 * M_PI / params.n;
        const double scale = std::max(1.0, p.phi2 - p.phi1);
        for (int i = 0; i < 50; ++i) {
            const double z = -7.0 + 14.0 * i / 49.0;
            const double f = eval_phi(p, z).phi;
            CHECK(std::fabs(eval_phi(p, z + period).phi - f) < 1e-10 * scale);
            CHECK(f >= p.phi1 - 1e-12 * scale);
            CHECK(f <= p.phi2 + 1e-12 * scale);
        }
    }
}

TEST_CASE("invariant: modulus varies continuously along a parameter path") {
    // alpha grows like sqrt(a) near the degenerate corner, so the path starts
    // away from it and the step bound reflects the sqrt slope.
    double prev = solve_modulus(2, 0.0, 0.1);
    for (int i = 1; i <= 200; ++i) {
        const double a = 0.1 + (2.0 - 0.1) * i / 200.0;
        const double alpha = solve_modulus(2, 0.0, a);
        CHECK(std::fabs(alpha - prev) < 0.05);
        prev = alpha;
    }
}

TEST_CASE("invariant: energy sits strictly inside the admissible window") {
    for (const auto& params : kSweep) {
        const ProfileSolution p = build_profile(params);
        const auto [lo, hi] = admissible_energy_window(p.c_const);
        const double scaled = (1.0 + params.a * params.a) * p.energy;
        CHECK(scaled > lo);
        CHECK(scaled < hi);
    }
}

TEST_CASE("swirl accessor") {
    CHECK(swirl_mu({2, 0.0, 0.5, 0.0}) == -2.0);
    CHECK(swirl_mu({1, 0.0, 0.0, 0.0}) == 0.0);
}
