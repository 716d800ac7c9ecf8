// CSV and JSON writers for trajectories, sweep grids and steady states.

#pragma once

#include "optocool/propagation.hpp"
#include "optocool/steady_state.hpp"
#include "optocool/sweeps.hpp"

#include "json.hpp"

#include <ostream>
#include <string_view>

namespace optocool::cli {

inline constexpr std::string_view kTrajectoryHeader =
    "t,re_a,im_a,re_b,im_b,n_phonon,n_photon,re_omega,im_omega";

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

// One row per grid point in row-major order: axis values, observable, error.
void write_sweep_csv(std::ostream& out, const SweepGrid& grid);

nlohmann::json steady_result_json(const SteadyResult& result);

}  // namespace optocool::cli
