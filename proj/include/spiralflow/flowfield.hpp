#pragma once

// Evaluable planar velocity fields on the punctured plane, all decaying like
// 1/r: the generalized spiral family built from a ProfileSolution, the
// classical n = 0 comparators (source/vortex with an optional extra swirl
// term), and the two Stokes reference fields (rotlet and quadrupole).  Each
// kind supplies velocity, pressure, vorticity and stream function, plus an
// analytic derivative jet deep enough to assemble the Navier-Stokes momentum
// residual pointwise.  Pressure derivations for the comparator fields are in
// docs/math_notes.md.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <variant>

#include "spiralflow/errors.hpp"
#include "spiralflow/profile.hpp"
#include "spiralflow/quadrature.hpp"

namespace spiralflow {

struct PolarPoint {
    double r;       // > 0; the origin is excluded
    double theta;   // radians
};

struct FlowSample {
    double u_r;
    double u_theta;
    double p;
    double omega;   // scalar vorticity
    double psi;     // stream function (principal branch of theta)
};

struct GeneralizedSpiral {
    ProfileSolution profile;
};

struct HamelN0 {
    double flux;
    double mu;
};

// Source/vortex plus the extra swirl A r^{1 + flux/(2 pi)}; an exact solution
// only for flux < -2 pi, and bounded by 1/r only for flux <= -4 pi.
struct HamelN0A {
    double flux;
    double mu;
    double A;
};

struct StokesTorque {
    double m;   // torque moment; u = -m/(4 pi r) e_theta
};

struct StokesQuadrupole {
    double q;   // quadrupole moment; u_r = -q cos(2 theta)/(4 pi r)
};

using FieldSpec = std::variant<GeneralizedSpiral, HamelN0, HamelN0A,
                               StokesTorque, StokesQuadrupole>;

namespace detail {

inline void require_positive_radius(double r, const char* fn) {
    if (!(r > 0.0)) {
        throw std::domain_error(std::string(fn) + ": radius must be > 0, got " +
                                std::to_string(r));
    }
}

inline void require_hamel_n0a(const HamelN0A& h) {
    if (!(h.flux < -2.0 * pi_d)) {
        throw std::domain_error(
            "HamelN0A: requires flux < -2*pi, got flux = " + std::to_string(h.flux));
    }
}

}  // namespace detail

// Antiderivative of the profile with Gamma(0) = 0, by cumulative panel
// quadrature: whole periods first, then the fractional remainder.  Grows by
// -flux/n per period, so it is evaluated without reduction losses for any z.
inline double phi_antiderivative(const ProfileSolution& p, double z) {
    const double period = 2.0 * detail::pi_d / p.params.n;
    const double k = std::floor(z / period);
    const double frac = z - k * period;
    const auto f = [&p](double s) { return eval_phi(p, s).phi; };
    const double per_period = detail::gauss_panels<20>(f, 0.0, period, 8);
    const double rest = detail::gauss_panels<20>(f, 0.0, frac, 8);
    return k * per_period + rest;
}

// Spiral phase coordinate carried by the field.
inline double spiral_phase(const SolutionParams& params, PolarPoint pt) {
    return params.theta0 + pt.theta + params.a * std::log(pt.r);
}

namespace detail {

// Everything except the stream function; psi needs the cumulative quadrature
// and is filled in only by the full sampling entry points.
inline FlowSample spiral_core(const ProfileSolution& profile, PolarPoint pt) {
    const double a = profile.params.a;
    const double z = spiral_phase(profile.params, pt);
    const PhiJet j = eval_phi(profile, z);
    const double r = pt.r;
    const double a2 = a * a;
    FlowSample s;
    s.u_r = -j.phi / r;
    s.u_theta = a * (j.phi - 4.0) / r;
    s.omega = (1.0 + a2) * j.dphi / (r * r);
    s.p = (a * (1.0 + a2) * j.dphi - (2.0 - 2.0 * a2) * j.phi - 8.0 * a2 -
           0.5 * profile.c_const * (1.0 + a2)) /
          (r * r);
    s.psi = 0.0;
    return s;
}

}  // namespace detail

inline FlowSample eval_spiral(const ProfileSolution& profile, PolarPoint pt) {
    detail::require_positive_radius(pt.r, "eval_spiral");
    FlowSample s = detail::spiral_core(profile, pt);
    s.psi = -4.0 * profile.params.a * std::log(pt.r) +
            phi_antiderivative(profile, spiral_phase(profile.params, pt));
    return s;
}

inline FlowSample eval_hamel(const HamelN0& h, PolarPoint pt) {
    detail::require_positive_radius(pt.r, "eval_hamel");
    const double b = h.flux / (2.0 * detail::pi_d);
    const double r = pt.r;
    FlowSample s;
    s.u_r = b / r;
    s.u_theta = h.mu / r;
    s.p = -(b * b + h.mu * h.mu) / (2.0 * r * r);
    s.omega = 0.0;
    s.psi = h.mu * std::log(r) - b * pt.theta;
    return s;
}

inline FlowSample eval_hamel(const HamelN0A& h, PolarPoint pt) {
    detail::require_positive_radius(pt.r, "eval_hamel");
    detail::require_hamel_n0a(h);
    const double q = h.flux / (2.0 * detail::pi_d);   // q < -1
    const double r = pt.r;
    FlowSample s;
    s.u_r = q / r;
    s.u_theta = h.mu / r + h.A * std::pow(r, 1.0 + q);
    s.p = -(q * q + h.mu * h.mu) / (2.0 * r * r) +
          2.0 * h.mu * h.A * std::pow(r, q) / q +
          h.A * h.A * std::pow(r, 2.0 * q + 2.0) / (2.0 * q + 2.0);
    s.omega = h.A * (2.0 + q) * std::pow(r, q);
    s.psi = h.mu * std::log(r) - q * pt.theta;
    if (std::fabs(2.0 + q) < 1e-12) {
        s.psi += h.A * std::log(r);
    } else {
        s.psi += h.A * std::pow(r, 2.0 + q) / (2.0 + q);
    }
    return s;
}

inline FlowSample eval_stokes(const StokesTorque& f, PolarPoint pt) {
    detail::require_positive_radius(pt.r, "eval_stokes");
    const double c = -f.m / (4.0 * detail::pi_d);
    FlowSample s;
    s.u_r = 0.0;
    s.u_theta = c / pt.r;
    s.p = 0.0;      // Stokes pressure; the rotlet is pressure-free
    s.omega = 0.0;
    s.psi = c * std::log(pt.r);
    return s;
}

inline FlowSample eval_stokes(const StokesQuadrupole& f, PolarPoint pt) {
    detail::require_positive_radius(pt.r, "eval_stokes");
    const double c = -f.q / (4.0 * detail::pi_d);
    const double r = pt.r;
    const double c2 = std::cos(2.0 * pt.theta);
    const double s2 = std::sin(2.0 * pt.theta);
    FlowSample s;
    s.u_r = c * c2 / r;
    s.u_theta = 0.0;
    s.p = 2.0 * c * c2 / (r * r);
    s.omega = 2.0 * c * s2 / (r * r);
    s.psi = -0.5 * c * s2;
    return s;
}

inline FlowSample eval_field(const FieldSpec& spec, PolarPoint pt) {
    return std::visit(
        [&pt](const auto& f) -> FlowSample {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, GeneralizedSpiral>) {
                return eval_spiral(f.profile, pt);
            } else if constexpr (std::is_same_v<T, HamelN0> ||
                                 std::is_same_v<T, HamelN0A>) {
                return eval_hamel(f, pt);
            } else {
                return eval_stokes(f, pt);
            }
        },
        spec);
}

namespace detail {

// Velocity and pressure only.  The finite-difference and quadrature paths
// probe fields millions of times; skipping the stream function there keeps
// them cheap without touching the FlowSample contract.
inline FlowSample eval_field_core(const FieldSpec& spec, PolarPoint pt) {
    return std::visit(
        [&pt](const auto& f) -> FlowSample {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, GeneralizedSpiral>) {
                require_positive_radius(pt.r, "eval_field");
                return spiral_core(f.profile, pt);
            } else if constexpr (std::is_same_v<T, HamelN0> ||
                                 std::is_same_v<T, HamelN0A>) {
                return eval_hamel(f, pt);
            } else {
                return eval_stokes(f, pt);
            }
        },
        spec);
}

}  // namespace detail

// Polar-to-Cartesian rotation of the velocity components.
inline std::array<double, 2> to_cartesian(const FlowSample& s, PolarPoint pt) {
    const double c = std::cos(pt.theta);
    const double sn = std::sin(pt.theta);
    return {s.u_r * c - s.u_theta * sn, s.u_r * sn + s.u_theta * c};
}

inline std::string field_kind_name(const FieldSpec& spec) {
    return std::visit(
        [](const auto& f) -> std::string {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, GeneralizedSpiral>) return "spiral";
            else if constexpr (std::is_same_v<T, HamelN0>) return "hamel0";
            else if constexpr (std::is_same_v<T, HamelN0A>) return "hamel0a";
            else if constexpr (std::is_same_v<T, StokesTorque>) return "stokes-torque";
            else return "stokes-quadrupole";
        },
        spec);
}

// ---------------------------------------------------------------------------
// Analytic derivative jets and pointwise residual operators.
// ---------------------------------------------------------------------------

// Velocity, pressure and the polar partial derivatives needed for the vector
// Laplacian, the convective term and the stress tensor.
struct VelocityJet {
    double u_r = 0, u_t = 0, p = 0;
    double dr_ur = 0, dt_ur = 0, dr_ut = 0, dt_ut = 0;
    double drr_ur = 0, dtt_ur = 0, drr_ut = 0, dtt_ut = 0;
    double dr_p = 0, dt_p = 0;
};

namespace detail {

inline VelocityJet jet_spiral(const ProfileSolution& p, PolarPoint pt) {
    const double a = p.params.a;
    const double a2 = a * a;
    const double z = spiral_phase(p.params, pt);
    const PhiJet pj = eval_phi(p, z);
    const double f = pj.phi, f1 = pj.dphi;
    const double f2 = phi_d2_chain(p, z);   // chain-rule value, not the ODE closure
    const double r = pt.r, r2 = r * r, r3 = r2 * r;
    VelocityJet v;
    v.u_r = -f / r;
    v.u_t = a * (f - 4.0) / r;
    v.dr_ur = (f - a * f1) / r2;
    v.dt_ur = -f1 / r;
    v.drr_ur = (3.0 * a * f1 - a2 * f2 - 2.0 * f) / r3;
    v.dtt_ur = -f2 / r;
    v.dr_ut = (a2 * f1 - a * f + 4.0 * a) / r2;
    v.dt_ut = a * f1 / r;
    v.drr_ut = (a2 * a * f2 - 3.0 * a2 * f1 + 2.0 * a * f - 8.0 * a) / r3;
    v.dtt_ut = a * f2 / r;
    const double c = p.c_const;
    const double q = a * (1.0 + a2) * f1 - (2.0 - 2.0 * a2) * f - 8.0 * a2 -
                     0.5 * c * (1.0 + a2);
    const double q1 = a * (1.0 + a2) * f2 - (2.0 - 2.0 * a2) * f1;
    v.p = q / r2;
    v.dr_p = (a * q1 - 2.0 * q) / r3;
    v.dt_p = q1 / r2;
    return v;
}

inline VelocityJet jet_hamel(const HamelN0A& h, PolarPoint pt) {
    require_hamel_n0a(h);
    const double q = h.flux / (2.0 * pi_d);
    const double r = pt.r, r2 = r * r, r3 = r2 * r;
    const double s = 1.0 + q;   // swirl exponent
    const double rp = std::pow(r, q);
    VelocityJet v;
    v.u_r = q / r;
    v.u_t = h.mu / r + h.A * rp * r;
    v.dr_ur = -q / r2;
    v.drr_ur = 2.0 * q / r3;
    v.dr_ut = -h.mu / r2 + h.A * s * rp;
    v.drr_ut = 2.0 * h.mu / r3 + h.A * s * (s - 1.0) * rp / r;
    v.p = -(q * q + h.mu * h.mu) / (2.0 * r2) + 2.0 * h.mu * h.A * rp / q +
          h.A * h.A * rp * rp * r2 / (2.0 * q + 2.0);
    v.dr_p = (q * q + h.mu * h.mu) / r3 + 2.0 * h.mu * h.A * rp / r +
             h.A * h.A * rp * rp * r;
    return v;
}

inline VelocityJet jet_hamel(const HamelN0& h, PolarPoint pt) {
    const double b = h.flux / (2.0 * pi_d);
    const double r = pt.r, r2 = r * r, r3 = r2 * r;
    VelocityJet v;
    v.u_r = b / r;
    v.u_t = h.mu / r;
    v.dr_ur = -b / r2;
    v.drr_ur = 2.0 * b / r3;
    v.dr_ut = -h.mu / r2;
    v.drr_ut = 2.0 * h.mu / r3;
    v.p = -(b * b + h.mu * h.mu) / (2.0 * r2);
    v.dr_p = (b * b + h.mu * h.mu) / r3;
    return v;
}

inline VelocityJet jet_stokes(const StokesTorque& f, PolarPoint pt) {
    const double c = -f.m / (4.0 * pi_d);
    const double r = pt.r;
    VelocityJet v;
    v.u_t = c / r;
    v.dr_ut = -c / (r * r);
    v.drr_ut = 2.0 * c / (r * r * r);
    return v;
}

inline VelocityJet jet_stokes(const StokesQuadrupole& f, PolarPoint pt) {
    const double c = -f.q / (4.0 * pi_d);
    const double r = pt.r, r2 = r * r, r3 = r2 * r;
    const double c2 = std::cos(2.0 * pt.theta);
    const double s2 = std::sin(2.0 * pt.theta);
    VelocityJet v;
    v.u_r = c * c2 / r;
    v.dr_ur = -c * c2 / r2;
    v.drr_ur = 2.0 * c * c2 / r3;
    v.dt_ur = -2.0 * c * s2 / r;
    v.dtt_ur = -4.0 * c * c2 / r;
    v.p = 2.0 * c * c2 / r2;
    v.dr_p = -4.0 * c * c2 / r3;
    v.dt_p = -4.0 * c * s2 / r2;
    return v;
}

}  // namespace detail

inline VelocityJet analytic_jet(const FieldSpec& spec, PolarPoint pt) {
    detail::require_positive_radius(pt.r, "analytic_jet");
    return std::visit(
        [&pt](const auto& f) -> VelocityJet {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, GeneralizedSpiral>) {
                return detail::jet_spiral(f.profile, pt);
            } else if constexpr (std::is_same_v<T, HamelN0> ||
                                 std::is_same_v<T, HamelN0A>) {
                return detail::jet_hamel(f, pt);
            } else {
                return detail::jet_stokes(f, pt);
            }
        },
        spec);
}

struct PolarVec {
    double r;
    double t;
    double norm() const { return std::hypot(r, t); }
};

namespace detail {

struct MomentumTerms {
    PolarVec laplacian, grad_p, convection;
};

inline MomentumTerms momentum_terms(const VelocityJet& v, double r) {
    const double r2 = r * r;
    MomentumTerms m;
    m.laplacian.r = v.drr_ur + v.dr_ur / r + v.dtt_ur / r2 - v.u_r / r2 -
                    2.0 * v.dt_ut / r2;
    m.laplacian.t = v.drr_ut + v.dr_ut / r + v.dtt_ut / r2 - v.u_t / r2 +
                    2.0 * v.dt_ur / r2;
    m.grad_p = {v.dr_p, v.dt_p / r};
    m.convection.r = v.u_r * v.dr_ur + v.u_t * v.dt_ur / r - v.u_t * v.u_t / r;
    m.convection.t = v.u_r * v.dr_ut + v.u_t * v.dt_ut / r + v.u_r * v.u_t / r;
    return m;
}

}  // namespace detail

// Pointwise stationary Navier-Stokes momentum residual from the analytic jet.
inline PolarVec momentum_residual(const FieldSpec& spec, PolarPoint pt) {
    const VelocityJet v = analytic_jet(spec, pt);
    const auto m = detail::momentum_terms(v, pt.r);
    return {m.laplacian.r - m.grad_p.r - m.convection.r,
            m.laplacian.t - m.grad_p.t - m.convection.t};
}

// Stokes residual (no convection), the exactness check for the reference
// fields.
inline PolarVec stokes_residual(const FieldSpec& spec, PolarPoint pt) {
    const VelocityJet v = analytic_jet(spec, pt);
    const auto m = detail::momentum_terms(v, pt.r);
    return {m.laplacian.r - m.grad_p.r, m.laplacian.t - m.grad_p.t};
}

// Polar divergence (d_r(r u_r) + d_theta u_theta)/r by central finite
// differences of the velocity alone; the radial step scales with r so the
// truncation error stays uniform near the origin.  The default five-point
// stencil holds the error below 1e-6 even for the largest-amplitude
// profiles; order = 2 gives the plain three-point stencil.
inline double divergence_fd(const FieldSpec& spec, PolarPoint pt,
                            double step_rel = 1e-4, int order = 4) {
    const double hr = step_rel * pt.r;
    const double ht = step_rel;
    const auto g = [&](double r) {
        return r * detail::eval_field_core(spec, {r, pt.theta}).u_r;
    };
    const auto ut = [&](double t) {
        return detail::eval_field_core(spec, {pt.r, t}).u_theta;
    };
    double d_rur, d_tut;
    if (order == 4) {
        d_rur = (-g(pt.r + 2 * hr) + 8.0 * g(pt.r + hr) - 8.0 * g(pt.r - hr) +
                 g(pt.r - 2 * hr)) /
                (12.0 * hr);
        d_tut = (-ut(pt.theta + 2 * ht) + 8.0 * ut(pt.theta + ht) -
                 8.0 * ut(pt.theta - ht) + ut(pt.theta - 2 * ht)) /
                (12.0 * ht);
    } else {
        d_rur = (g(pt.r + hr) - g(pt.r - hr)) / (2.0 * hr);
        d_tut = (ut(pt.theta + ht) - ut(pt.theta - ht)) / (2.0 * ht);
    }
    return (d_rur + d_tut) / pt.r;
}

struct FdMomentum {
    PolarVec residual;
    double term_scale;  // |laplacian| + |grad p| + |convection|, for relative use
};

// Momentum residual with every derivative replaced by central finite
// differences of the velocity and pressure samples; a cross-check of the
// analytic jet at FD accuracy.  The term scale is reported alongside because
// a second-difference cross-check can only confirm the cancellation relative
// to the magnitude of the terms being cancelled.
inline FdMomentum momentum_residual_fd_scaled(const FieldSpec& spec,
                                              PolarPoint pt,
                                              double step_rel = 2e-4) {
    const double r = pt.r, th = pt.theta;
    const double hr = step_rel * r;
    const double ht = step_rel;
    const auto at = [&](double rr, double tt) {
        return detail::eval_field_core(spec, {rr, tt});
    };
    const FlowSample c = at(r, th);
    const FlowSample rp = at(r + hr, th), rm = at(r - hr, th);
    const FlowSample tp = at(r, th + ht), tm = at(r, th - ht);
    VelocityJet v;
    v.u_r = c.u_r;
    v.u_t = c.u_theta;
    v.p = c.p;
    v.dr_ur = (rp.u_r - rm.u_r) / (2.0 * hr);
    v.dr_ut = (rp.u_theta - rm.u_theta) / (2.0 * hr);
    v.dt_ur = (tp.u_r - tm.u_r) / (2.0 * ht);
    v.dt_ut = (tp.u_theta - tm.u_theta) / (2.0 * ht);
    v.drr_ur = (rp.u_r - 2.0 * c.u_r + rm.u_r) / (hr * hr);
    v.drr_ut = (rp.u_theta - 2.0 * c.u_theta + rm.u_theta) / (hr * hr);
    v.dtt_ur = (tp.u_r - 2.0 * c.u_r + tm.u_r) / (ht * ht);
    v.dtt_ut = (tp.u_theta - 2.0 * c.u_theta + tm.u_theta) / (ht * ht);
    v.dr_p = (rp.p - rm.p) / (2.0 * hr);
    v.dt_p = (tp.p - tm.p) / (2.0 * ht);
    const auto m = detail::momentum_terms(v, r);
    return {{m.laplacian.r - m.grad_p.r - m.convection.r,
             m.laplacian.t - m.grad_p.t - m.convection.t},
            m.laplacian.norm() + m.grad_p.norm() + m.convection.norm()};
}

inline PolarVec momentum_residual_fd(const FieldSpec& spec, PolarPoint pt,
                                     double step_rel = 2e-4) {
    return momentum_residual_fd_scaled(spec, pt, step_rel).residual;
}

// Rotation rate of the scaling symmetry: the spiral family rotates by
// -a log(lambda), the pure 1/r fields are scale-invariant outright, and the
// extra-swirl comparator has no such symmetry.
inline std::optional<double> symmetry_rotation_rate(const FieldSpec& spec) {
    return std::visit(
        [](const auto& f) -> std::optional<double> {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, GeneralizedSpiral>) {
                return f.profile.params.a;
            } else if constexpr (std::is_same_v<T, HamelN0A>) {
                return std::nullopt;
            } else {
                return 0.0;
            }
        },
        spec);
}

// Defect of the scaling-up-to-rotation identity at scale lambda: compares the
// polar components of lambda*u(lambda r, theta) against u(r, theta + a log
// lambda).  Zero for every field kind that has the symmetry.
inline double symmetry_defect(const FieldSpec& spec, double lambda,
                              PolarPoint pt) {
    const auto rate = symmetry_rotation_rate(spec);
    if (!rate) {
        throw std::domain_error(
            "symmetry_defect: field kind has no scaling symmetry");
    }
    const FlowSample scaled =
        detail::eval_field_core(spec, {lambda * pt.r, pt.theta});
    const FlowSample rotated =
        detail::eval_field_core(spec, {pt.r, pt.theta + *rate * std::log(lambda)});
    return std::hypot(lambda * scaled.u_r - rotated.u_r,
                      lambda * scaled.u_theta - rotated.u_theta);
}

// Uniform bound on r |u| for the spiral family.
inline double spiral_decay_bound(const ProfileSolution& p) {
    const double m = std::max(std::fabs(p.phi1), std::fabs(p.phi2));
    return m + std::fabs(p.params.a) * (m + 4.0);
}

}  // namespace spiralflow
