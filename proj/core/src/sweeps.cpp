#include "optocool/sweeps.hpp"

#include "optocool/errors.hpp"
#include "optocool/steady_state.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <utility>

namespace optocool {

namespace {

constexpr std::array<std::pair<SweepParameter, std::string_view>, 11> kParameterNames{{
    {SweepParameter::kappa, "kappa"},
    {SweepParameter::coupling_a, "coupling_a"},
    {SweepParameter::coupling_b, "coupling_b"},
    {SweepParameter::ratio_a_over_b, "ratio_a_over_b"},
    {SweepParameter::beta, "beta"},
    {SweepParameter::delta, "delta"},
    {SweepParameter::chi0, "chi0"},
    {SweepParameter::alpha, "alpha"},
    {SweepParameter::t0, "t0"},
    {SweepParameter::n_th, "n_th"},
    {SweepParameter::gamma, "gamma"},
}};

constexpr std::array<std::pair<Observable, std::string_view>, 4> kObservableNames{{
    {Observable::phonon_at_t_end, "phonon_at_t_end"},
    {Observable::steady_total, "steady_total"},
    {Observable::steady_sigma_eq, "steady_sigma_eq"},
    {Observable::steady_s_bac, "steady_s_bac"},
}};

constexpr std::array<std::pair<FigurePreset, std::string_view>, 9> kPresetNames{{
    {FigurePreset::fig1, "fig1"},
    {FigurePreset::fig2, "fig2"},
    {FigurePreset::fig3a, "fig3a"},
    {FigurePreset::fig3b, "fig3b"},
    {FigurePreset::fig3c, "fig3c"},
    {FigurePreset::fig4a, "fig4a"},
    {FigurePreset::fig4b, "fig4b"},
    {FigurePreset::fig4c, "fig4c"},
    {FigurePreset::fig4d, "fig4d"},
}};

template <class Enum, std::size_t N>
std::string_view name_of(const std::array<std::pair<Enum, std::string_view>, N>& table,
                         Enum value) noexcept {
    for (const auto& [e, name] : table)
        if (e == value) return name;
    return "unknown";
}

template <class Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::pair<Enum, std::string_view>, N>& table,
                           std::string_view name) {
    for (const auto& [e, n] : table)
        if (n == name) return e;
    return std::nullopt;
}

ChirpedDrive& chirp_of(DriveSignal& drive, SweepParameter parameter) {
    if (auto* chirp = std::get_if<ChirpedDrive>(&drive)) return *chirp;
    throw Error(ErrorKind::InvalidParameter,
                std::string(to_string(parameter)) + " axis requires a chirped drive");
}

void apply(PointSetup& point, SweepParameter parameter, double value) {
    auto& p = point.params;
    switch (parameter) {
        case SweepParameter::kappa: p.kappa = value; break;
        case SweepParameter::coupling_a: p.coupling_a = value; break;
        case SweepParameter::coupling_b: p.coupling_b = value; break;
        case SweepParameter::ratio_a_over_b: p.coupling_a = value * p.coupling_b; break;
        case SweepParameter::delta: p.delta = value; break;
        case SweepParameter::n_th: p.n_th = value; break;
        case SweepParameter::gamma: p.gamma = value; break;
        case SweepParameter::beta: chirp_of(point.drive, parameter).beta = value; break;
        case SweepParameter::chi0: chirp_of(point.drive, parameter).chi0 = value; break;
        case SweepParameter::alpha: chirp_of(point.drive, parameter).alpha = value; break;
        case SweepParameter::t0: chirp_of(point.drive, parameter).t0 = value; break;
    }
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n == 1) return {lo};
    std::vector<double> v(n);
    const double span = hi - lo;
    for (std::size_t i = 0; i < n; ++i)
        v[i] = lo + span * (static_cast<double>(i) / static_cast<double>(n - 1));
    return v;
}

// Zero followed by n - 1 log-spaced ratios.
std::vector<double> ratio_axis(double lo, double hi, std::size_t n) {
    std::vector<double> v{0.0};
    const auto logs = linspace(std::log10(lo), std::log10(hi), n - 1);
    for (double e : logs) v.push_back(std::pow(10.0, e));
    return v;
}

// Grid of step 1/denominator from first/denominator, n points.
std::vector<double> decimal_axis(int first, int denominator, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = static_cast<double>(first + static_cast<int>(i)) / denominator;
    return v;
}

SweepBase fig4_base() {
    SweepBase base;
    base.params = {.delta = -1.0, .kappa = 0.3, .gamma = 1e-6, .coupling_a = 0.0,
                   .coupling_b = 2e-4, .n_th = 50.0};
    base.drive = ChirpedDrive{1.5 * std::hypot(0.15, 0.05), 0.15, 0.05, 30.0};
    base.mf0 = {complex{200.0, 0.0}, complex{0.0, 0.0}};
    base.controls = {.t_end = 70.0, .dt = 1e-3, .sample_every = 100};
    base.chi0_scale = 1.5;
    return base;
}

SweepBase fig3_base(double a, double b, double delta) {
    SweepBase base;
    base.params = {.delta = delta, .kappa = 0.3, .gamma = 1e-6, .coupling_a = a,
                   .coupling_b = b, .n_th = 50.0};
    base.drive = ConstantDrive{};
    base.controls = {.t_end = 70.0, .dt = 1e-3, .sample_every = 100};
    base.target_a = complex{1000.0, 0.0};
    return base;
}

}  // namespace

std::string_view to_string(SweepParameter parameter) noexcept {
    return name_of(kParameterNames, parameter);
}
std::string_view to_string(Observable observable) noexcept {
    return name_of(kObservableNames, observable);
}
std::string_view to_string(FigurePreset preset) noexcept {
    return name_of(kPresetNames, preset);
}
std::optional<SweepParameter> parse_sweep_parameter(std::string_view name) {
    return lookup(kParameterNames, name);
}
std::optional<Observable> parse_observable(std::string_view name) {
    return lookup(kObservableNames, name);
}
std::optional<FigurePreset> parse_figure_preset(std::string_view name) {
    return lookup(kPresetNames, name);
}

void SweepSpec::validate() const {
    if (axes.empty() || axes.size() > 2) {
        throw Error(ErrorKind::InvalidParameter, "a sweep needs one or two axes");
    }
    if (axes.size() == 2 && axes[0].parameter == axes[1].parameter) {
        throw Error(ErrorKind::InvalidParameter, "sweep axes must be distinct");
    }
    for (const auto& axis : axes) {
        if (axis.values.empty()) {
            throw Error(ErrorKind::InvalidParameter,
                        "axis " + std::string(to_string(axis.parameter)) + " has no values");
        }
        for (double v : axis.values) {
            if (!std::isfinite(v)) {
                throw Error(ErrorKind::InvalidParameter,
                            "axis " + std::string(to_string(axis.parameter)) +
                                " has a non-finite value");
            }
        }
    }
    if (observable == Observable::phonon_at_t_end) base.controls.validate();
}

std::size_t SweepSpec::size() const {
    std::size_t n = 1;
    for (const auto& axis : axes) n *= axis.values.size();
    return n;
}

std::vector<std::size_t> unflatten(const SweepSpec& spec, std::size_t flat_index) {
    std::vector<std::size_t> idx(spec.axes.size());
    for (std::size_t k = spec.axes.size(); k-- > 0;) {
        const std::size_t len = spec.axes[k].values.size();
        idx[k] = flat_index % len;
        flat_index /= len;
    }
    return idx;
}

PointSetup point_setup(const SweepSpec& spec, std::size_t flat_index) {
    PointSetup point{spec.base.params, spec.base.drive, spec.base.mf0, spec.base.controls,
                     spec.base.target_a};
    const auto idx = unflatten(spec, flat_index);
    bool chi0_on_axis = false;
    for (std::size_t k = 0; k < spec.axes.size(); ++k) {
        apply(point, spec.axes[k].parameter, spec.axes[k].values[idx[k]]);
        chi0_on_axis = chi0_on_axis || spec.axes[k].parameter == SweepParameter::chi0;
    }
    if (spec.base.chi0_scale && !chi0_on_axis) {
        if (auto* chirp = std::get_if<ChirpedDrive>(&point.drive)) {
            chirp->chi0 = *spec.base.chi0_scale * std::hypot(chirp->alpha, chirp->beta);
        }
    }
    if (spec.base.hold_initial_amplitude) {
        point.drive = ConstantDrive{solve_steady_mean_field(point.params, point.mf0.a).omega0};
    }
    return point;
}

double evaluate_point(const PointSetup& point, Observable observable) {
    if (observable == Observable::phonon_at_t_end) {
        PropagationControls controls = point.controls;
        controls.sample_every = std::numeric_limits<std::size_t>::max();
        return propagate(point.params, point.drive, point.mf0, controls).back().n_phonon;
    }
    const auto steady = solve_steady_state(point.params, point.target_a);
    switch (observable) {
        case Observable::steady_total: return steady.n_total;
        case Observable::steady_sigma_eq: return steady.sigma_eq;
        case Observable::steady_s_bac: return steady.s_bac;
        case Observable::phonon_at_t_end: break;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

SweepSpec figure_preset(FigurePreset preset, std::size_t resolution) {
    const std::size_t n2d = resolution == 0 ? 41 : std::max<std::size_t>(resolution, 2);
    const std::size_t n3 = resolution == 0 ? 20 : std::max<std::size_t>(resolution, 2);

    SweepSpec spec;
    switch (preset) {
        case FigurePreset::fig1: {
            auto& b = spec.base;
            b.params = {.delta = -1.0, .kappa = 0.01, .gamma = 1e-5, .coupling_a = 0.0,
                        .coupling_b = 2e-4, .n_th = 100.0};
            b.drive = ChirpedDrive{0.5 * std::hypot(0.14, 0.04), 0.14, 0.04, 40.0};
            b.mf0 = {complex{200.0, 0.0}, complex{0.0, 0.0}};
            b.controls = {.t_end = 120.0, .dt = 1e-3, .sample_every = 100};
            b.chi0_scale = 0.5;
            // Single time trace; the one-point axis only records kappa.
            spec.axes = {{SweepParameter::kappa, {0.01}}};
            break;
        }
        case FigurePreset::fig2: {
            auto& b = spec.base;
            b.params = {.delta = 0.5, .kappa = 0.5, .gamma = 1e-6, .coupling_a = 0.0,
                        .coupling_b = 2e-4, .n_th = 50.0};
            b.drive = ChirpedDrive{1.5 * std::hypot(0.15, 0.05), 0.15, 0.05, 30.0};
            b.mf0 = {complex{1000.0, 0.0}, complex{0.0, 0.0}};
            b.controls = {.t_end = 70.0, .dt = 1e-3, .sample_every = 100};
            b.chi0_scale = 1.5;
            spec.axes = {{SweepParameter::kappa, {0.1, 0.2, 0.3, 0.4, 0.5}}};
            break;
        }
        case FigurePreset::fig3a:
        case FigurePreset::fig3b:
        case FigurePreset::fig3c: {
            if (preset == FigurePreset::fig3a) spec.base = fig3_base(2e-4, 0.0, -1.0);
            if (preset == FigurePreset::fig3b) spec.base = fig3_base(0.0, 2e-4, -1.0);
            if (preset == FigurePreset::fig3c) spec.base = fig3_base(0.0, 2e-4, 0.5);
            spec.axes = {{SweepParameter::kappa, linspace(0.5 / static_cast<double>(n3), 0.5, n3)}};
            spec.observable = Observable::steady_total;
            break;
        }
        case FigurePreset::fig4a:
            spec.base = fig4_base();
            spec.axes = {{SweepParameter::ratio_a_over_b, ratio_axis(1e-3, 10.0, n2d)},
                         {SweepParameter::beta,
                          resolution == 0 ? decimal_axis(-20, 100, 41) : linspace(-0.2, 0.2, n2d)}};
            break;
        case FigurePreset::fig4b:
        case FigurePreset::fig4c:
            spec.base = fig4_base();
            if (preset == FigurePreset::fig4c) {
                spec.base.drive = ConstantDrive{};
                spec.base.chi0_scale.reset();
                spec.base.hold_initial_amplitude = true;
            }
            spec.axes = {{SweepParameter::ratio_a_over_b, ratio_axis(1e-3, 10.0, n2d)},
                         {SweepParameter::delta,
                          resolution == 0 ? decimal_axis(-30, 20, 41) : linspace(-1.5, 0.5, n2d)}};
            break;
        case FigurePreset::fig4d:
            spec.base = fig4_base();
            spec.axes = {{SweepParameter::beta,
                          resolution == 0 ? decimal_axis(-20, 80, 41) : linspace(-0.25, 0.25, n2d)},
                         {SweepParameter::delta,
                          resolution == 0 ? decimal_axis(-30, 20, 41) : linspace(-1.5, 0.5, n2d)}};
            break;
    }
    return spec;
}

SweepGrid run_sweep(const SweepSpec& spec, unsigned workers) {
    spec.validate();
    if (workers == 0) throw Error(ErrorKind::InvalidParameter, "workers must be >= 1");

    const std::size_t n = spec.size();
    SweepGrid grid;
    grid.axes = spec.axes;
    grid.observable = spec.observable;
    grid.values.assign(n, std::numeric_limits<double>::quiet_NaN());
    grid.errors.assign(n, std::string{});

    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                grid.values[i] = evaluate_point(point_setup(spec, i), spec.observable);
            } catch (const Error& e) {
                grid.errors[i] = e.what();
            }
        }
    };

    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    if (threads <= 1) {
        work();
        return grid;
    }
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    }
    return grid;
}

}  // namespace optocool
