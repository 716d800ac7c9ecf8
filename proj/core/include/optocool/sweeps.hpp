// Named presets and deterministic parallel parameter grids.

#pragma once

#include "optocool/model.hpp"
#include "optocool/propagation.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace optocool {

enum class SweepParameter {
    kappa,
    coupling_a,
    coupling_b,
    ratio_a_over_b,  // sets A = ratio * B, B held at its base value
    beta,
    delta,
    chi0,
    alpha,
    t0,
    n_th,
    gamma,
};

enum class Observable { phonon_at_t_end, steady_total, steady_sigma_eq, steady_s_bac };

enum class FigurePreset { fig1, fig2, fig3a, fig3b, fig3c, fig4a, fig4b, fig4c, fig4d };

std::string_view to_string(SweepParameter parameter) noexcept;
std::string_view to_string(Observable observable) noexcept;
std::string_view to_string(FigurePreset preset) noexcept;
std::optional<SweepParameter> parse_sweep_parameter(std::string_view name);
std::optional<Observable> parse_observable(std::string_view name);
std::optional<FigurePreset> parse_figure_preset(std::string_view name);

struct SweepAxis {
    SweepParameter parameter;
    std::vector<double> values;
};

struct SweepBase {
    SystemParams params;
    DriveSignal drive;
    MeanFieldState mf0;
    PropagationControls controls;
    // When set (and chi0 is not an axis), chi0 = chi0_scale * hypot(alpha, beta)
    // after the axis values are applied.
    std::optional<double> chi0_scale;
    // Replace the drive at every point by the constant Omega whose mean-field
    // fixed point holds <a> at mf0.a (no-chirp comparison runs).
    bool hold_initial_amplitude{false};
    complex target_a{0.0, 0.0};  // steady observables only
};

struct SweepSpec {
    SweepBase base;
    std::vector<SweepAxis> axes;  // one or two; the first axis is the slow index
    Observable observable{Observable::phonon_at_t_end};

    // Throws Error(InvalidParameter) on a malformed spec.
    void validate() const;
    std::size_t size() const;
};

// Fully resolved inputs of one grid point.
struct PointSetup {
    SystemParams params;
    DriveSignal drive;
    MeanFieldState mf0;
    PropagationControls controls;
    complex target_a;
};

struct SweepGrid {
    std::vector<SweepAxis> axes;
    Observable observable{Observable::phonon_at_t_end};
    std::vector<double> values;       // row-major, NaN where the point failed
    std::vector<std::string> errors;  // empty string where the point succeeded

    bool failed(std::size_t index) const { return !errors[index].empty(); }
};

// Row-major multi-index of a flat grid index.
std::vector<std::size_t> unflatten(const SweepSpec& spec, std::size_t flat_index);

PointSetup point_setup(const SweepSpec& spec, std::size_t flat_index);

// Runs one point exactly as a standalone propagate / steady computation would.
double evaluate_point(const PointSetup& point, Observable observable);

// Named parameter sets. `resolution` overrides the number of points of the
// range-based axes (0 keeps the default).
SweepSpec figure_preset(FigurePreset preset, std::size_t resolution = 0);

// Evaluates every point with `workers` threads. The result does not depend on
// the worker count; per-point failures are recorded instead of thrown.
SweepGrid run_sweep(const SweepSpec& spec, unsigned workers);

}  // namespace optocool
