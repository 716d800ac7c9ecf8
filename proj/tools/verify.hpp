// Oracle-equivalence and invariant checks behind `optocool verify`.

#pragma once

#include "optocool/model.hpp"
#include "optocool/propagation.hpp"

#include <span>
#include <string>
#include <vector>

namespace optocool::cli {

struct CheckResult {
    std::string name;
    bool passed{false};
    std::string detail;
};

struct NamedRun {
    std::string name;
    SystemParams params;
    DriveSignal drive;
    MeanFieldState mf0;
    PropagationControls controls;
};

// Representative time-domain runs of the figure presets: fig1, the five fig2
// cavity dampings and one point of each fig4 surface.
std::vector<NamedRun> preset_runs();

// Largest elementwise relative difference between propagate and
// propagate_oracle over the given sample times.
double oracle_relative_error(const NamedRun& run, std::span<const double> times);

std::vector<CheckResult> run_verification();

}  // namespace optocool::cli
