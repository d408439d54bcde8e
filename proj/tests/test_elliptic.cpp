#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "spiralflow/elliptic.hpp"

using namespace spiralflow;

namespace {

// Deterministic uniform samples without std::uniform_real_distribution, so
// the suite behaves identically on every platform.
struct Rng {
    std::uint64_t s;
    double next01() {
        s += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return static_cast<double>((z ^ (z >> 31)) >> 11) * 0x1.0p-53;
    }
    double in(double lo, double hi) { return lo + (hi - lo) * next01(); }
};

}  // namespace

TEST_CASE("complete_K: anchors and oracle agreement") {
    CHECK(complete_K(0.0) == M_PI / 2);
    // Golden value frozen from the quadrature oracle.
    CHECK(complete_K(1.0 / std::sqrt(2.0)) ==
          Catch::Approx(1.8540746773013719).epsilon(1e-15));
    CHECK(std::fabs(complete_K(1.0 / std::sqrt(2.0)) -
                    oracle::K_quad(1.0 / std::sqrt(2.0))) < 1e-13);
    // Near-degenerate modulus: finite, large, no overflow.
    const double k_extreme = complete_K(0.999999);
    CHECK(k_extreme > 7.0);
    CHECK(std::isfinite(k_extreme));
    CHECK(std::fabs(k_extreme - oracle::K_quad(0.999999)) < 1e-9);
    CHECK_THROWS_AS(complete_K(1.0), std::domain_error);
    CHECK_THROWS_AS(complete_K(-0.1), std::domain_error);
}

TEST_CASE("complete_E: anchors and oracle agreement") {
    CHECK(complete_E(0.0) == M_PI / 2);
    CHECK(complete_E(1.0) == 1.0);
    CHECK(complete_E(1.0 / std::sqrt(2.0)) ==
          Catch::Approx(1.3506438810476755).epsilon(1e-15));
    CHECK(std::fabs(complete_E(1.0 / std::sqrt(2.0)) -
                    oracle::E_quad(1.0 / std::sqrt(2.0))) < 1e-13);
    CHECK_THROWS_AS(complete_E(1.0 + 1e-12), std::domain_error);
    CHECK_THROWS_AS(complete_E(-0.1), std::domain_error);
}

TEST_CASE("incomplete_F: reductions and golden value") {
    CHECK(incomplete_F(0.5, 0.0) == Catch::Approx(M_PI / 6).epsilon(1e-15));
    CHECK(incomplete_F(1.0, 0.3) == complete_K(0.3));
    // Golden value frozen from the quadrature oracle before the Carlson path
    // was written.
    CHECK(incomplete_F(0.8, 0.6) ==
          Catch::Approx(0.97272020948290381).epsilon(5e-15));
    CHECK(std::fabs(incomplete_F(0.8, 0.6) - oracle::F_quad(0.8, 0.6)) < 1e-13);
    CHECK_THROWS_AS(incomplete_F(-0.1, 0.5), std::domain_error);
    CHECK_THROWS_AS(incomplete_F(1.1, 0.5), std::domain_error);
    CHECK_THROWS_AS(incomplete_F(0.5, 1.0), std::domain_error);
}

TEST_CASE("jacobi: anchors, golden triple, quarter period") {
    const JacobiTriple trig = jacobi(M_PI / 6, 0.0);
    CHECK(trig.sn == Catch::Approx(0.5).epsilon(1e-15));
    CHECK(trig.cn == Catch::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
    CHECK(trig.dn == 1.0);

    // Golden triple frozen from Newton inversion of the quadrature oracle.
    const JacobiTriple j = jacobi(0.5, 0.7);
    CHECK(j.sn == Catch::Approx(0.47092357369852285).epsilon(2e-14));
    CHECK(j.cn == Catch::Approx(0.88217401216257324).epsilon(2e-14));
    CHECK(j.dn == Catch::Approx(0.94410443489592603).epsilon(2e-14));
    CHECK(std::fabs(j.sn - oracle::sn_quad(0.5, 0.7)) < 1e-11);

    const JacobiTriple q = jacobi(complete_K(0.4), 0.4);
    CHECK(q.sn == Catch::Approx(1.0).margin(1e-12));
    CHECK(q.cn == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("jacobi: symmetry extension to all real arguments") {
    const double alpha = 0.8;
    const double k = complete_K(alpha);
    Rng rng{11};
    for (int i = 0; i < 50; ++i) {
        const double u = rng.in(0.0, k);
        const JacobiTriple a = jacobi(u, alpha);
        const JacobiTriple refl = jacobi(2.0 * k - u, alpha);
        CHECK(std::fabs(refl.sn - a.sn) < 1e-12);
        CHECK(std::fabs(refl.cn + a.cn) < 1e-12);
        const JacobiTriple neg = jacobi(-u, alpha);
        CHECK(std::fabs(neg.sn + a.sn) < 1e-12);
        CHECK(std::fabs(neg.cn - a.cn) < 1e-12);
        const JacobiTriple per = jacobi(u + 4.0 * k, alpha);
        CHECK(std::fabs(per.sn - a.sn) < 1e-12);
    }
}

TEST_CASE("property: F/sn round trip") {
    Rng rng{42};
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double alpha = rng.in(0.0, 0.999);
        const double u = rng.in(0.0, complete_K(alpha));
        const double s = jacobi(u, alpha).sn;
        worst = std::max(worst, std::fabs(incomplete_F(s, alpha) - u));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("property: Legendre relation") {
    for (int i = 1; i <= 20; ++i) {
        const double a = i / 21.0;
        const double ap = std::sqrt((1.0 - a) * (1.0 + a));
        const double defect = complete_E(a) * complete_K(ap) +
                              complete_E(ap) * complete_K(a) -
                              complete_K(a) * complete_K(ap) - M_PI / 2;
        CHECK(std::fabs(defect) < 1e-12);
    }
}

TEST_CASE("property: triple algebraic invariants") {
    Rng rng{7};
    for (int i = 0; i < 500; ++i) {
        const double alpha = rng.in(0.0, 0.9999);
        const double u = rng.in(-20.0, 20.0);
        const JacobiTriple j = jacobi(u, alpha);
        CHECK(std::fabs(j.sn * j.sn + j.cn * j.cn - 1.0) < 1e-12);
        CHECK(std::fabs(j.dn * j.dn + alpha * alpha * j.sn * j.sn - 1.0) < 1e-12);
    }
}

TEST_CASE("property: monotonicity of K and E") {
    double prev_k = complete_K(0.0);
    double prev_e = complete_E(0.0);
    for (int i = 1; i <= 99; ++i) {
        const double alpha = i / 100.0;
        const double k = complete_K(alpha);
        const double e = complete_E(alpha);
        CHECK(k > prev_k);
        CHECK(e < prev_e);
        prev_k = k;
        prev_e = e;
    }
}

TEST_CASE("near-degenerate modulus falls back to trigonometric forms") {
    CHECK(complete_K(1e-9) == M_PI / 2);
    CHECK(incomplete_F(0.3, 1e-9) == std::asin(0.3));
    const JacobiTriple j = jacobi(0.7, 1e-9);
    CHECK(j.sn == std::sin(0.7));
    CHECK(j.cn == std::cos(0.7));
    CHECK(j.dn == Catch::Approx(1.0).margin(1e-15));
    // Continuity across the fallback threshold.
    CHECK(std::fabs(complete_K(2e-8) - complete_K(5e-9)) < 1e-14);
}
