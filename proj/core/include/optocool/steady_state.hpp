// Constant-drive steady state and the split of the stationary
// phonon number into the mechanical-bath part (sigma_eq) and the optical
// backaction part (s_bac).

#pragma once

#include "optocool/model.hpp"

#include <cstddef>

namespace optocool {

struct SteadyMeanField {
    complex omega0;
    complex b_ss;
};

struct SteadyResult {
    complex omega0;
    complex a_ss;
    complex b_ss;
    double n_total{0.0};
    double sigma_eq{0.0};
    double s_bac{0.0};
};

struct FixedPointOptions {
    double tolerance{1e-10};
    std::size_t max_iterations{10000};
    double damping{0.5};  // weight of the previous <b> in each update
};

struct StationarityOptions {
    double step{1.0};          // exact-propagator step
    double window{10.0};       // criterion must hold this long
    double tolerance{1e-10};   // |dR42/dt| < tolerance * max(1, R42)
    double t_max{1e7};
};

// Finds (Omega0, <b>) holding <a> at target_a with both mean-field
// derivatives zero. Throws NoConvergence.
SteadyMeanField solve_steady_mean_field(const SystemParams& params, complex target_a,
                                        const FixedPointOptions& options = {});

// Propagates R with the constant coefficients of the fixed point until R42 is
// stationary, once per noise channel (all, thermal, optical). Throws
// NoStationaryState.
SteadyResult steady_phonon_decomposition(const SystemParams& params, complex omega0,
                                         complex a_ss, complex b_ss,
                                         const StationarityOptions& options = {});

// solve_steady_mean_field followed by steady_phonon_decomposition.
SteadyResult solve_steady_state(const SystemParams& params, complex target_a);

}  // namespace optocool
