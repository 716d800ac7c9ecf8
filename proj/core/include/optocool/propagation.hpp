// Joint integration of the mean field and the second moments
// R_{ll'} = <v_l v_l'> of the fluctuation vector V = [da, db, da^dag, db^dag].
//
// The primary path integrates dR/dt = M R + R M^T + C together with the
// mean-field equations. propagate_oracle evaluates the fundamental-matrix form
// R = G R(0) G^T + G Z G^T instead and is kept as an independent cross-check.

#pragma once

#include "optocool/model.hpp"

#include <cstddef>
#include <vector>

namespace optocool {

struct CovarianceMatrix {
    Matrix4c r{Matrix4c::Zero()};
};

struct TrajectorySample {
    double t{0.0};
    complex a;
    complex b;
    double n_phonon{0.0};  // Re R42 = <db^dag db>
    double n_photon{0.0};  // Re R31 = <da^dag da>
    complex omega;
    CovarianceMatrix covariance;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;  // strictly increasing t, first at t = 0

    const TrajectorySample& back() const { return samples.back(); }
};

struct PropagationControls {
    double t_end{0.0};
    double dt{1e-3};
    std::size_t sample_every{100};

    void validate() const;
};

struct Observables {
    double n_phonon;
    double n_photon;
};

// Magnitude above which any state component counts as a blow-up.
inline constexpr double kDivergenceThreshold = 1e12;

// Upper bound on cond(G) accepted by propagate_oracle.
inline constexpr double kOracleConditionLimit = 1e8;

// R13 = 1, R24 = n_th + 1, R42 = n_th. Throws NegativeOccupation for n_th < 0.
CovarianceMatrix initial_covariance(double n_th);

// M R + R M^T + C (plain transpose).
Matrix4c covariance_rhs(const Matrix4c& m, const Matrix4c& r, const Matrix4c& c);

Observables extract_observables(const CovarianceMatrix& cov);

// Invariant diagnostics.
// max(|R13 - R31 - 1|, |R24 - R42 - 1|): bosonic commutators of the fluctuations.
double commutator_defect(const CovarianceMatrix& cov);
// ||R^T - Sigma R* Sigma||_max; zero for any physical second-moment matrix.
double symmetry_defect(const CovarianceMatrix& cov);
// max(|Im R42|, |Im R31|).
double occupation_imag(const CovarianceMatrix& cov);

// The step actually used is t_end / ceil(t_end / dt) so that the last step
// lands on t_end; the final state is always sampled. Ω, M and C are recomputed
// at every Runge-Kutta stage. Throws Diverged on blow-up.
Trajectory propagate(const SystemParams& params, const DriveSignal& drive,
                     const MeanFieldState& mf0, const PropagationControls& controls);

// Same step grid and mean-field trajectory as propagate. Throws IllConditioned
// once cond(G) exceeds kOracleConditionLimit.
CovarianceMatrix propagate_oracle(const SystemParams& params, const DriveSignal& drive,
                                  const MeanFieldState& mf0, double t_end, double dt);

}  // namespace optocool
