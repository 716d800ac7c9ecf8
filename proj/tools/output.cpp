#include "output.hpp"

#include "config.hpp"

#include <string>

namespace optocool::cli {

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

nlohmann::json complex_json(complex z) {
    return {{"re", z.real()}, {"im", z.imag()}};
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
    out << kTrajectoryHeader << '\n';
    for (const auto& s : trajectory.samples) {
        out << format_number(s.t) << ',' << format_number(s.a.real()) << ','
            << format_number(s.a.imag()) << ',' << format_number(s.b.real()) << ','
            << format_number(s.b.imag()) << ',' << format_number(s.n_phonon) << ','
            << format_number(s.n_photon) << ',' << format_number(s.omega.real()) << ','
            << format_number(s.omega.imag()) << '\n';
    }
}

void write_sweep_csv(std::ostream& out, const SweepGrid& grid) {
    for (const auto& axis : grid.axes) out << to_string(axis.parameter) << ',';
    out << to_string(grid.observable) << ",error\n";

    SweepSpec shape;
    shape.axes = grid.axes;
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
        const auto idx = unflatten(shape, i);
        for (std::size_t k = 0; k < grid.axes.size(); ++k) {
            out << format_number(grid.axes[k].values[idx[k]]) << ',';
        }
        out << (grid.failed(i) ? std::string("nan") : format_number(grid.values[i])) << ','
            << csv_field(grid.errors[i]) << '\n';
    }
}

nlohmann::json steady_result_json(const SteadyResult& r) {
    return {
        {"omega0", complex_json(r.omega0)},
        {"a_ss", complex_json(r.a_ss)},
        {"b_ss", complex_json(r.b_ss)},
        {"n_total", r.n_total},
        {"sigma_eq", r.sigma_eq},
        {"s_bac", r.s_bac},
    };
}

}  // namespace optocool::cli
