#pragma once

// Streamline tracing on the unit-speed direction field u/|u|, so the
// integration parameter is arc length and spiral orbits with many turns cost
// the same per unit length everywhere.  Dormand-Prince 5(4) pair with FSAL
// and standard step control.

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "spiralflow/flowfield.hpp"

namespace spiralflow {

enum class StopReason {
    ArcSpan,        // covered the requested arc length
    RMin,           // left the domain through the inner cutoff
    RMax,           // left the domain through the outer cutoff
    Stagnation,     // |u| below the stagnation threshold
    StepUnderflow,  // step control could not advance
};

inline const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::ArcSpan: return "arc_span";
        case StopReason::RMin: return "r_min";
        case StopReason::RMax: return "r_max";
        case StopReason::Stagnation: return "stagnation";
        case StopReason::StepUnderflow: return "step_underflow";
    }
    return "unknown";
}

struct StreamlineOptions {
    double arc_span = 10.0;
    double rel_tol = 1e-8;
    double r_min = 1e-6;
    double r_max = 1e6;
    double stagnation_speed = 1e-14;
    std::size_t max_points = 500000;
};

struct Streamline {
    // Backward arm (reversed) + seed + forward arm.
    std::vector<std::array<double, 2>> points;
    StopReason backward_stop = StopReason::ArcSpan;
    StopReason forward_stop = StopReason::ArcSpan;
    bool truncated() const {
        return backward_stop == StopReason::Stagnation ||
               forward_stop == StopReason::Stagnation;
    }
};

namespace detail {

struct DirSample {
    double x, y;
    bool stagnant;
};

inline DirSample unit_velocity(const FieldSpec& spec, double x, double y,
                               double sign, double stagnation_speed) {
    const double r = std::hypot(x, y);
    const PolarPoint pt{r, std::atan2(y, x)};
    const FlowSample s = eval_field_core(spec, pt);
    const auto [ux, uy] = to_cartesian(s, pt);
    const double speed = std::hypot(ux, uy);
    if (speed < stagnation_speed) return {0.0, 0.0, true};
    return {sign * ux / speed, sign * uy / speed, false};
}

// One arm of the trace, in direction sign = +-1; appends points after the
// seed (seed itself excluded).
inline StopReason trace_arm(const FieldSpec& spec, std::array<double, 2> x0,
                            double sign, const StreamlineOptions& opt,
                            std::vector<std::array<double, 2>>& out) {
    // Dormand-Prince 5(4) tableau.
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double d1 = 71.0 / 57600, d3 = -71.0 / 16695,
                            d4 = 71.0 / 1920, d5 = -17253.0 / 339200,
                            d6 = 22.0 / 525, d7 = -1.0 / 40;

    double x = x0[0], y = x0[1];
    DirSample k1 = unit_velocity(spec, x, y, sign, opt.stagnation_speed);
    if (k1.stagnant) return StopReason::Stagnation;

    double s = 0.0;
    double h = std::min(0.01 * std::max(1.0, std::hypot(x, y)), opt.arc_span);
    while (s < opt.arc_span) {
        if (out.size() >= opt.max_points) return StopReason::StepUnderflow;
        h = std::min(h, opt.arc_span - s);
        if (h < 1e-14 * std::max(1.0, s)) return StopReason::StepUnderflow;

        bool rejected_domain = false;
        DirSample k2{}, k3{}, k4{}, k5{}, k6{}, k7{};
        double x5 = 0, y5 = 0;
        // Any stage outside the admissible annulus forces a smaller step so
        // the cutoff is located accurately.
        try {
            k2 = unit_velocity(spec, x + h * a21 * k1.x, y + h * a21 * k1.y, sign,
                               opt.stagnation_speed);
            k3 = unit_velocity(spec, x + h * (a31 * k1.x + a32 * k2.x),
                               y + h * (a31 * k1.y + a32 * k2.y), sign,
                               opt.stagnation_speed);
            k4 = unit_velocity(spec, x + h * (a41 * k1.x + a42 * k2.x + a43 * k3.x),
                               y + h * (a41 * k1.y + a42 * k2.y + a43 * k3.y), sign,
                               opt.stagnation_speed);
            k5 = unit_velocity(
                spec, x + h * (a51 * k1.x + a52 * k2.x + a53 * k3.x + a54 * k4.x),
                y + h * (a51 * k1.y + a52 * k2.y + a53 * k3.y + a54 * k4.y), sign,
                opt.stagnation_speed);
            k6 = unit_velocity(
                spec,
                x + h * (a61 * k1.x + a62 * k2.x + a63 * k3.x + a64 * k4.x +
                         a65 * k5.x),
                y + h * (a61 * k1.y + a62 * k2.y + a63 * k3.y + a64 * k4.y +
                         a65 * k5.y),
                sign, opt.stagnation_speed);
            x5 = x + h * (b1 * k1.x + b3 * k3.x + b4 * k4.x + b5 * k5.x + b6 * k6.x);
            y5 = y + h * (b1 * k1.y + b3 * k3.y + b4 * k4.y + b5 * k5.y + b6 * k6.y);
            k7 = unit_velocity(spec, x5, y5, sign, opt.stagnation_speed);
        } catch (const std::domain_error&) {
            rejected_domain = true;
        }
        if (rejected_domain) {
            h *= 0.25;
            continue;
        }
        if (k2.stagnant || k3.stagnant || k4.stagnant || k5.stagnant ||
            k6.stagnant || k7.stagnant) {
            return StopReason::Stagnation;
        }

        const double ex = h * (d1 * k1.x + d3 * k3.x + d4 * k4.x + d5 * k5.x +
                               d6 * k6.x + d7 * k7.x);
        const double ey = h * (d1 * k1.y + d3 * k3.y + d4 * k4.y + d5 * k5.y +
                               d6 * k6.y + d7 * k7.y);
        const double sc = opt.rel_tol * (1.0 + std::hypot(x5, y5));
        const double err = std::hypot(ex, ey) / sc;
        if (err <= 1.0) {
            x = x5;
            y = y5;
            s += h;
            out.push_back({x, y});
            k1 = k7;  // FSAL
            const double r = std::hypot(x, y);
            if (r <= opt.r_min) return StopReason::RMin;
            if (r >= opt.r_max) return StopReason::RMax;
        }
        const double grow =
            0.9 * std::pow(1.0 / std::max(err, 1e-10), 0.2);
        h *= std::min(5.0, std::max(0.2, grow));
    }
    return StopReason::ArcSpan;
}

}  // namespace detail

inline Streamline trace_streamline(const FieldSpec& spec, PolarPoint seed,
                                   const StreamlineOptions& opt) {
    detail::require_positive_radius(seed.r, "trace_streamline");
    const std::array<double, 2> x0{seed.r * std::cos(seed.theta),
                                   seed.r * std::sin(seed.theta)};
    std::vector<std::array<double, 2>> back, fwd;
    Streamline line;
    line.backward_stop = detail::trace_arm(spec, x0, -1.0, opt, back);
    line.forward_stop = detail::trace_arm(spec, x0, +1.0, opt, fwd);
    line.points.reserve(back.size() + fwd.size() + 1);
    line.points.insert(line.points.end(), back.rbegin(), back.rend());
    line.points.push_back(x0);
    line.points.insert(line.points.end(), fwd.begin(), fwd.end());
    return line;
}

}  // namespace spiralflow
