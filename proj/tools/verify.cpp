#include "verify.hpp"

#include "config.hpp"
#include "optocool/errors.hpp"
#include "optocool/steady_state.hpp"
#include "optocool/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace optocool::cli {

namespace {

constexpr double kOracleTolerance = 1e-6;
constexpr double kDecoupledCommutatorTolerance = 1e-6;
constexpr double kCoupledCommutatorTolerance = 0.05;
constexpr double kSymmetryTolerance = 1e-8;
constexpr double kImagTolerance = 1e-8;
constexpr double kAdditivityTolerance = 1e-6;
constexpr double kThermalTolerance = 1e-6;
constexpr double kStepHalvingTolerance = 1e-6;

NamedRun run_at(FigurePreset preset, std::vector<SweepAxis> axes, std::string label) {
    auto spec = figure_preset(preset);
    spec.axes = std::move(axes);
    const auto point = point_setup(spec, 0);
    return {std::move(label), point.params, point.drive, point.mf0, point.controls};
}

std::string fmt(double v) { return format_number(v); }

std::string short_fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

template <class Measure>
double max_over_samples(const Trajectory& traj, Measure measure) {
    double worst = 0.0;
    for (const auto& s : traj.samples) worst = std::max(worst, measure(s.covariance));
    return worst;
}

CheckResult check(std::string name, bool passed, std::string detail) {
    return {std::move(name), passed, std::move(detail)};
}

}  // namespace

std::vector<NamedRun> preset_runs() {
    std::vector<NamedRun> runs;
    runs.push_back(run_at(FigurePreset::fig1, {{SweepParameter::kappa, {0.01}}}, "fig1"));
    for (double kappa : {0.1, 0.2, 0.3, 0.4, 0.5}) {
        runs.push_back(run_at(FigurePreset::fig2, {{SweepParameter::kappa, {kappa}}},
                              "fig2[kappa=" + short_fmt(kappa) + "]"));
    }
    runs.push_back(run_at(FigurePreset::fig4a,
                          {{SweepParameter::ratio_a_over_b, {0.0}}, {SweepParameter::beta, {0.14}}},
                          "fig4a[A/B=0,beta=0.14]"));
    runs.push_back(run_at(FigurePreset::fig4b,
                          {{SweepParameter::ratio_a_over_b, {1.0}}, {SweepParameter::delta, {-1.0}}},
                          "fig4b[A/B=1,delta=-1]"));
    runs.push_back(run_at(FigurePreset::fig4c,
                          {{SweepParameter::ratio_a_over_b, {1.0}}, {SweepParameter::delta, {-1.0}}},
                          "fig4c[A/B=1,delta=-1]"));
    runs.push_back(run_at(FigurePreset::fig4d,
                          {{SweepParameter::beta, {0.125}}, {SweepParameter::delta, {0.4}}},
                          "fig4d[beta=0.125,delta=0.4]"));
    return runs;
}

double oracle_relative_error(const NamedRun& run, std::span<const double> times) {
    double worst = 0.0;
    for (double t : times) {
        PropagationControls controls = run.controls;
        controls.t_end = t;
        controls.sample_every = static_cast<std::size_t>(-1);
        const auto direct = propagate(run.params, run.drive, run.mf0, controls).back().covariance.r;
        const auto oracle = propagate_oracle(run.params, run.drive, run.mf0, t, run.controls.dt).r;
        for (int i = 0; i < 16; ++i) {
            const double diff = std::abs(direct(i) - oracle(i));
            const double scale = std::abs(oracle(i));
            worst = std::max(worst, scale > 0.0 ? diff / scale : diff);
        }
    }
    return worst;
}

std::vector<CheckResult> run_verification() {
    std::vector<CheckResult> results;
    const auto runs = preset_runs();

    // Oracle equivalence on [0, 10].
    const std::vector<double> times{2.5, 5.0, 7.5, 10.0};
    for (const auto& run : {runs[0], runs[5]}) {
        try {
            const double err = oracle_relative_error(run, times);
            results.push_back(check("oracle_equivalence " + run.name, err < kOracleTolerance,
                                    "max relative difference " + fmt(err)));
        } catch (const Error& e) {
            results.push_back(check("oracle_equivalence " + run.name, false, e.what()));
        }
    }

    // Decoupled limit: commutators exact and the thermal state is a fixed point.
    {
        const SystemParams p{.delta = -1.0, .kappa = 0.01, .gamma = 1e-5, .coupling_a = 0.0,
                             .coupling_b = 0.0, .n_th = 100.0};
        const auto traj = propagate(p, ConstantDrive{}, MeanFieldState{{200.0, 0.0}, {}},
                                    {.t_end = 100.0, .dt = 1e-3, .sample_every = 1000});
        const double comm = max_over_samples(traj, commutator_defect);
        results.push_back(check("commutator decoupled", comm < kDecoupledCommutatorTolerance,
                                "max |[.,.] - 1| = " + fmt(comm)));
        double drift = 0.0;
        for (const auto& s : traj.samples) drift = std::max(drift, std::abs(s.n_phonon - p.n_th));
        results.push_back(check("thermal fixed point", drift < kThermalTolerance,
                                "max |n_phonon - n_th| = " + fmt(drift)));
    }

    // Figure presets: commutators, symmetry, reality, step halving.
    for (const auto& run : runs) {
        try {
            const auto traj = propagate(run.params, run.drive, run.mf0, run.controls);
            const double comm = max_over_samples(traj, commutator_defect);
            const double sym = max_over_samples(traj, symmetry_defect);
            const double imag = max_over_samples(traj, occupation_imag);
            results.push_back(check("commutator " + run.name, comm <= kCoupledCommutatorTolerance,
                                    "max |[.,.] - 1| = " + fmt(comm)));
            results.push_back(check("symmetry " + run.name, sym < kSymmetryTolerance,
                                    "max |R^T - S R* S| = " + fmt(sym)));
            results.push_back(check("reality " + run.name, imag < kImagTolerance,
                                    "max |Im n| = " + fmt(imag)));

            PropagationControls halved = run.controls;
            halved.dt *= 0.5;
            halved.sample_every = static_cast<std::size_t>(-1);
            const double coarse = traj.back().n_phonon;
            const double fine = propagate(run.params, run.drive, run.mf0, halved).back().n_phonon;
            const double rel = std::abs(fine - coarse) / std::abs(coarse);
            results.push_back(check("step_halving " + run.name, rel < kStepHalvingTolerance,
                                    "relative change " + fmt(rel)));
        } catch (const Error& e) {
            results.push_back(check("propagate " + run.name, false, e.what()));
        }
    }

    // Steady-state decomposition additivity over the fig3 presets.
    for (auto preset : {FigurePreset::fig3a, FigurePreset::fig3b, FigurePreset::fig3c}) {
        const auto spec = figure_preset(preset);
        double worst = 0.0;
        std::string failure;
        for (double kappa : {0.1, 0.2, 0.3, 0.4, 0.5}) {
            SystemParams p = spec.base.params;
            p.kappa = kappa;
            try {
                const auto r = solve_steady_state(p, spec.base.target_a);
                worst = std::max(worst, std::abs(r.n_total - (r.sigma_eq + r.s_bac)) /
                                            std::max(1.0, std::abs(r.n_total)));
            } catch (const Error& e) {
                failure = e.what();
            }
        }
        const std::string name = "additivity " + std::string(to_string(preset));
        if (!failure.empty()) {
            results.push_back(check(name, false, failure));
        } else {
            results.push_back(check(name, worst < kAdditivityTolerance,
                                    "max relative defect " + fmt(worst)));
        }
    }
    return results;
}

}  // namespace optocool::cli
