// spiralflow command-line front end: build exact spiral solutions of the
// planar stationary Navier-Stokes equations, verify them, and export
// figure-ready tables (fields, profiles, existence region, streamlines).
//
// Exit codes: 0 success, 2 invalid arguments, 3 existence-region violation,
// 4 degenerate boundary, 5 verification failure, 6 I/O error.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spiralflow/diagnostics.hpp"
#include "spiralflow/io.hpp"
#include "spiralflow/streamline.hpp"

namespace {

using namespace spiralflow;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNoSolution = 3;
constexpr int kExitDegenerate = 4;
constexpr int kExitVerifyFailed = 5;
constexpr int kExitIo = 6;

struct FieldOptions {
    std::string kind = "spiral";
    int n = 2;
    double flux = 0.0;
    double a = 0.5;
    double theta0 = 0.0;
    double mu = 0.0;
    double A = 0.0;
    double m = 1.0;
    double q = 1.0;

    void attach(CLI::App* cmd, bool spiral_only = false) {
        if (!spiral_only) {
            cmd->add_option("--field", kind,
                            "field kind: spiral | hamel0 | hamel0a | "
                            "stokes-torque | stokes-quadrupole")
                ->check(CLI::IsMember({"spiral", "hamel0", "hamel0a",
                                       "stokes-torque", "stokes-quadrupole"}));
        }
        cmd->add_option("--n", n, "branch count (spiral)");
        cmd->add_option("--flux", flux, "flux through any curve around the origin");
        cmd->add_option("--a", a, "spiral parameter (spiral)");
        cmd->add_option("--theta0", theta0, "free phase in radians (spiral)");
        if (!spiral_only) {
            cmd->add_option("--mu", mu, "swirl strength (hamel0, hamel0a)");
            cmd->add_option("--A", A, "extra swirl amplitude (hamel0a)");
            cmd->add_option("--m", m, "torque moment (stokes-torque)");
            cmd->add_option("--q", q, "quadrupole moment (stokes-quadrupole)");
        }
    }

    FieldSpec build() const {
        if (kind == "spiral") {
            return GeneralizedSpiral{build_profile({n, flux, a, theta0})};
        }
        if (kind == "hamel0") return HamelN0{flux, mu};
        if (kind == "hamel0a") {
            detail::require_hamel_n0a(HamelN0A{flux, mu, A});
            return HamelN0A{flux, mu, A};
        }
        if (kind == "stokes-torque") return StokesTorque{m};
        return StokesQuadrupole{q};
    }
};

// Writes to the file when a path is set, otherwise to stdout.
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path.empty()) {
        fn(std::cout);
    } else {
        auto out = io::open_output(path);
        fn(out);
        if (!out) throw IoError(path, "write failed");
    }
}

int cmd_solve(const FieldOptions& f, const std::string& out_path) {
    const ProfileSolution p = build_profile({f.n, f.flux, f.a, f.theta0});
    with_output(out_path, [&](std::ostream& out) { io::write_profile_record(out, p); });
    return kExitOk;
}

int cmd_verify(const FieldOptions& f, const VerifyConfig& cfg,
               const std::string& out_path) {
    const DiagnosticsReport rep = verify(f.build(), cfg);
    with_output(out_path, [&](std::ostream& out) { io::write_report_record(out, rep); });
    return rep.all_passed() ? kExitOk : kExitVerifyFailed;
}

struct GridOptions {
    double r_min = 0.5;
    double r_max = 5.0;
    int n_r = 32;
    int n_theta = 64;

    void attach(CLI::App* cmd) {
        cmd->add_option("--rmin", r_min, "inner grid radius (> 0)");
        cmd->add_option("--rmax", r_max, "outer grid radius");
        cmd->add_option("--nr", n_r, "radial node count (>= 2)");
        cmd->add_option("--ntheta", n_theta, "angular node count (>= 2)");
    }

    void validate() const {
        if (!(r_min > 0.0) || !(r_min < r_max) || n_r < 2 || n_theta < 2) {
            throw std::invalid_argument(
                "grid requires 0 < rmin < rmax and nr, ntheta >= 2");
        }
    }
};

int cmd_sample(const FieldOptions& f, const GridOptions& grid,
               const std::string& out_path) {
    grid.validate();
    const FieldSpec spec = f.build();
    with_output(out_path, [&](std::ostream& out) {
        io::Table table(out);
        table.header({"r", "theta", "x", "y", "u_r", "u_theta", "u_x", "u_y",
                      "p", "omega", "psi", "r_times_speed"});
        // Log-radial spacing matches the spiral structure: the solutions are
        // functions of theta + a log r.
        const double log_step =
            std::log(grid.r_max / grid.r_min) / (grid.n_r - 1);
        for (int i = 0; i < grid.n_r; ++i) {
            const double r = grid.r_min * std::exp(i * log_step);
            for (int j = 0; j < grid.n_theta; ++j) {
                const double theta =
                    -detail::pi_d + 2.0 * detail::pi_d * j / grid.n_theta;
                const PolarPoint pt{r, theta};
                const FlowSample s = eval_field(spec, pt);
                const auto [ux, uy] = to_cartesian(s, pt);
                table.row({r, theta, r * std::cos(theta), r * std::sin(theta),
                           s.u_r, s.u_theta, ux, uy, s.p, s.omega, s.psi,
                           r * std::hypot(s.u_r, s.u_theta)});
            }
        }
    });
    return kExitOk;
}

int cmd_region(int n_max, double a_min, double a_max, int n_a,
               const std::string& out_path) {
    if (n_max < 1 || n_a < 2 || !(a_min < a_max)) {
        throw std::invalid_argument("region requires nmax >= 1, na >= 2, amin < amax");
    }
    with_output(out_path, [&](std::ostream& out) {
        io::Table table(out);
        table.comment("family=parabola: solutions exist strictly below phi_boundary");
        table.comment("family=hamel0-exists / hamel0-decay: n=0 comparator bands");
        table.comment("the linearization threshold curve has no closed form and is omitted");
        table.header({"family", "n", "a", "phi_boundary"});
        for (int i = 0; i < n_a; ++i) {
            const double a = a_min + (a_max - a_min) * i / (n_a - 1);
            for (int n = 1; n <= n_max; ++n) {
                table.row_mixed({"parabola", std::to_string(n), io::g17(a),
                                 io::g17(existence_flux_bound(n, a))});
            }
            table.row_mixed({"hamel0-exists", "0", io::g17(a),
                             io::g17(-2.0 * detail::pi_d)});
            table.row_mixed({"hamel0-decay", "0", io::g17(a),
                             io::g17(-4.0 * detail::pi_d)});
        }
    });
    return kExitOk;
}

int cmd_profile_curve(const FieldOptions& f, int samples,
                      const std::string& out_path) {
    if (samples < 2) throw std::invalid_argument("profile-curve requires samples >= 2");
    const ProfileSolution p = build_profile({f.n, f.flux, f.a, f.theta0});
    with_output(out_path, [&](std::ostream& out) {
        io::Table table(out);
        table.header({"z", "phi", "dphi"});
        for (int i = 0; i < samples; ++i) {
            const double z = 2.0 * detail::pi_d * i / (samples - 1);
            const PhiJet j = eval_phi(p, z);
            table.row({z, j.phi, j.dphi});
        }
    });
    return kExitOk;
}

int cmd_streamlines(const FieldOptions& f, const std::vector<double>& seeds,
                    const StreamlineOptions& opt, const std::string& out_path) {
    if (seeds.empty() || seeds.size() % 2 != 0) {
        throw std::invalid_argument(
            "streamlines requires one or more --start r theta pairs");
    }
    const FieldSpec spec = f.build();
    with_output(out_path, [&](std::ostream& out) {
        io::Table table(out);
        table.header({"polyline", "x", "y"});
        for (std::size_t s = 0; s < seeds.size(); s += 2) {
            const PolarPoint seed{seeds[s], seeds[s + 1]};
            const Streamline line = trace_streamline(spec, seed, opt);
            table.comment("polyline " + std::to_string(s / 2) +
                          " seed_r=" + io::g17(seed.r) +
                          " seed_theta=" + io::g17(seed.theta) +
                          " backward=" + to_string(line.backward_stop) +
                          " forward=" + to_string(line.forward_stop));
            for (const auto& pt : line.points) {
                table.row_mixed({std::to_string(s / 2), io::g17(pt[0]),
                                 io::g17(pt[1])});
            }
        }
    });
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "spiralflow: exact spiral solutions of the planar stationary "
        "Navier-Stokes equations"};
    app.require_subcommand(1);

    FieldOptions solve_field, verify_field, sample_field, curve_field,
        stream_field;
    GridOptions grid;
    VerifyConfig vcfg;
    StreamlineOptions sopt;
    std::string out_solve, out_verify, out_sample, out_region, out_curve,
        out_stream;
    int region_nmax = 4, region_na = 81, curve_samples = 721;
    double region_amin = -3.0, region_amax = 3.0;
    std::vector<double> stream_seeds;

    CLI::App* solve = app.add_subcommand(
        "solve", "resolve a spiral profile and write its record");
    solve_field.attach(solve, /*spiral_only=*/true);
    solve->add_option("--out", out_solve, "output path (default: stdout)");

    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "run the verification suite on a field");
    verify_field.attach(verify_cmd);
    verify_cmd->add_option("--seed", vcfg.seed, "random seed for sample points");
    verify_cmd->add_option("--samples", vcfg.samples, "number of sample points");
    verify_cmd->add_option("--radius", vcfg.radius, "stress quadrature radius");
    verify_cmd->add_option("--tol-flux", vcfg.tol.flux, "flux tolerance");
    verify_cmd->add_option("--tol-force", vcfg.tol.force, "force tolerance");
    verify_cmd->add_option("--tol-torque", vcfg.tol.torque_rel,
                           "relative torque tolerance");
    verify_cmd->add_option("--tol-momentum", vcfg.tol.momentum,
                           "momentum residual tolerance");
    verify_cmd->add_option("--tol-divergence", vcfg.tol.divergence,
                           "divergence tolerance");
    verify_cmd->add_option("--tol-symmetry", vcfg.tol.symmetry,
                           "symmetry defect tolerance");
    verify_cmd->add_option("--tol-ode", vcfg.tol.ode, "ODE residual tolerance");
    verify_cmd->add_option("--tol-energy", vcfg.tol.energy,
                           "energy conservation tolerance");
    verify_cmd->add_option("--out", out_verify, "output path (default: stdout)");

    CLI::App* sample = app.add_subcommand(
        "sample", "tabulate a field on a log-radial grid");
    sample_field.attach(sample);
    grid.attach(sample);
    sample->add_option("--out", out_sample, "output path")->required();

    CLI::App* region = app.add_subcommand(
        "region", "tabulate the existence boundaries in the (a, flux) plane");
    region->add_option("--nmax", region_nmax, "largest branch count");
    region->add_option("--amin", region_amin, "left end of the a range");
    region->add_option("--amax", region_amax, "right end of the a range");
    region->add_option("--na", region_na, "number of a samples");
    region->add_option("--out", out_region, "output path")->required();

    CLI::App* curve = app.add_subcommand(
        "profile-curve", "tabulate phi over one full turn");
    curve_field.attach(curve, /*spiral_only=*/true);
    curve->add_option("--samples", curve_samples,
                      "row count (extrema land on the grid when samples-1 is "
                      "divisible by 2n)");
    curve->add_option("--out", out_curve, "output path")->required();

    CLI::App* stream = app.add_subcommand(
        "streamlines", "trace streamlines from seed points");
    stream_field.attach(stream);
    stream->add_option("--start", stream_seeds,
                       "seed point as r theta (repeatable)")
        ->expected(-2);
    stream->add_option("--arc", sopt.arc_span, "arc length per direction");
    stream->add_option("--reltol", sopt.rel_tol, "integrator tolerance");
    stream->add_option("--rmin", sopt.r_min, "inner cutoff radius");
    stream->add_option("--rmax", sopt.r_max, "outer cutoff radius");
    stream->add_option("--out", out_stream, "output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (solve->parsed()) return cmd_solve(solve_field, out_solve);
        if (verify_cmd->parsed()) return cmd_verify(verify_field, vcfg, out_verify);
        if (sample->parsed()) return cmd_sample(sample_field, grid, out_sample);
        if (region->parsed()) {
            return cmd_region(region_nmax, region_amin, region_amax, region_na,
                              out_region);
        }
        if (curve->parsed()) return cmd_profile_curve(curve_field, curve_samples, out_curve);
        if (stream->parsed()) return cmd_streamlines(stream_field, stream_seeds, sopt, out_stream);
    } catch (const NoSolution& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoSolution;
    } catch (const DegenerateProfile& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
