#pragma once

// Output formats shared by the CLI and the tests.  Two formats only:
//
//  * delimited tables: header row, comma separator, LF line endings, every
//    number printed with 17 significant digits (round-trip safe);
//  * hierarchical records: two-space indented "key: value" lines for profile
//    and verification summaries, same number formatting.
//
// Identical inputs produce byte-identical files.

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "spiralflow/diagnostics.hpp"
#include "spiralflow/profile.hpp"

namespace spiralflow::io {

inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path, "cannot open output file");
    return out;
}

class Table {
  public:
    explicit Table(std::ostream& out) : out_(out) {}

    void comment(const std::string& text) { out_ << "# " << text << "\n"; }

    void header(const std::vector<std::string>& cols) {
        write_row(cols);
    }

    void row(const std::vector<double>& values) {
        std::vector<std::string> cells;
        cells.reserve(values.size());
        for (double v : values) cells.push_back(g17(v));
        write_row(cells);
    }

    void row_mixed(const std::vector<std::string>& cells) { write_row(cells); }

  private:
    void write_row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }
    std::ostream& out_;
};

inline void write_profile_record(std::ostream& out, const ProfileSolution& p) {
    out << "profile-record:\n";
    out << "  input:\n";
    out << "    n: " << p.params.n << "\n";
    out << "    flux: " << g17(p.params.flux) << "\n";
    out << "    a: " << g17(p.params.a) << "\n";
    out << "    theta0: " << g17(p.params.theta0) << "\n";
    out << "  solution:\n";
    out << "    alpha: " << g17(p.alpha) << "\n";
    out << "    phi1: " << g17(p.phi1) << "\n";
    out << "    phi2: " << g17(p.phi2) << "\n";
    out << "    phi3: " << g17(p.phi3) << "\n";
    out << "    c_const: " << g17(p.c_const) << "\n";
    out << "    energy: " << g17(p.energy) << "\n";
    out << "    kappa: " << g17(p.kappa) << "\n";
    out << "    mu: " << g17(swirl_mu(p.params)) << "\n";
    out << "  checks:\n";
    out << "    flux_closed_form: " << g17(flux_closed_form(p)) << "\n";
    out << "    torque: " << g17(torque_formula(p)) << "\n";
}

inline void write_report_record(std::ostream& out, const DiagnosticsReport& r) {
    out << "verification-report:\n";
    out << "  field: " << r.field << "\n";
    out << "  seed: " << r.seed << "\n";
    out << "  samples: " << r.samples << "\n";
    out << "  summary:\n";
    out << "    flux_quadrature: " << g17(r.flux_quad) << "\n";
    out << "    force_x: " << g17(r.force[0]) << "\n";
    out << "    force_y: " << g17(r.force[1]) << "\n";
    out << "    torque_quadrature: " << g17(r.torque_quad) << "\n";
    if (r.torque_closed_form) {
        out << "    torque_closed_form: " << g17(*r.torque_closed_form) << "\n";
    }
    out << "    max_momentum_residual: " << g17(r.max_momentum_residual) << "\n";
    out << "    max_divergence: " << g17(r.max_divergence) << "\n";
    if (r.max_symmetry_defect) {
        out << "    max_symmetry_defect: " << g17(*r.max_symmetry_defect) << "\n";
    }
    out << "  checks:\n";
    for (const auto& c : r.checks) {
        out << "    " << c.name << ": value=" << g17(c.value)
            << " tol=" << g17(c.tolerance)
            << " pass=" << (c.passed ? "true" : "false") << "\n";
    }
    out << "  overall: " << (r.all_passed() ? "pass" : "fail") << "\n";
}

}  // namespace spiralflow::io
