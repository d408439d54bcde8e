#pragma once

// Small quadrature tool kit: fixed-order Gauss-Legendre panels for smooth
// non-periodic integrands and the composite trapezoid rule for periodic ones
// (spectrally accurate there).

#include <array>
#include <cmath>
#include <cstddef>

namespace spiralflow::detail {

template <std::size_t N>
struct GaussRule {
    std::array<double, N> node;    // on [-1, 1]
    std::array<double, N> weight;
};

// Nodes and weights by Newton iteration on the Legendre recurrence; computed
// once per order, accurate to machine precision.
template <std::size_t N>
inline const GaussRule<N>& gauss_rule() {
    static const GaussRule<N> rule = [] {
        GaussRule<N> r{};
        const std::size_t m = (N + 1) / 2;
        for (std::size_t i = 0; i < m; ++i) {
            // Chebyshev-based initial guess.
            long double x = std::cos(3.14159265358979323846L * (i + 0.75L) / (N + 0.5L));
            long double dp = 0.0L;
            for (int it = 0; it < 100; ++it) {
                long double p0 = 1.0L, p1 = x;
                for (std::size_t k = 2; k <= N; ++k) {
                    const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = N * (x * p1 - p0) / (x * x - 1.0L);
                const long double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-19L) break;
            }
            const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
            r.node[i] = static_cast<double>(-x);
            r.node[N - 1 - i] = static_cast<double>(x);
            r.weight[i] = static_cast<double>(w);
            r.weight[N - 1 - i] = static_cast<double>(w);
        }
        return r;
    }();
    return rule;
}

// Composite Gauss-Legendre over [a, b] split into `panels` equal panels.
template <std::size_t N = 20, typename F>
double gauss_panels(F&& f, double a, double b, int panels) {
    const GaussRule<N>& rule = gauss_rule<N>();
    const double h = (b - a) / panels;
    long double total = 0.0L;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        long double s = 0.0L;
        for (std::size_t i = 0; i < N; ++i) {
            s += rule.weight[i] * f(lo + 0.5 * h * (1.0 + rule.node[i]));
        }
        total += s * 0.5L * h;
    }
    return static_cast<double>(total);
}

// Trapezoid rule for a `period`-periodic integrand over one full period
// starting at `a`; `nodes` equispaced samples, left endpoints only.
template <typename F>
double periodic_trapezoid(F&& f, double a, double period, int nodes) {
    const double h = period / nodes;
    long double s = 0.0L;
    for (int i = 0; i < nodes; ++i) s += f(a + i * h);
    return static_cast<double>(s * h);
}

}  // namespace spiralflow::detail
