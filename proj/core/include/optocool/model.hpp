// Parameters, drive signals and coefficient functions of the
// linearized optomechanical model with dispersive (A) and dissipative (B) coupling.
//
// Frequencies and rates are in units of the mechanical frequency, which is fixed
// to one; times are dimensionless (omega_m * t). The fluctuation vector is ordered
// V = [da, db, da^dag, db^dag] and obeys dV/dt = M(t) V + N(t), with Markovian
// noise correlator <N(t) N(t')^T> = C(t) delta(t - t').

#pragma once

#include <Eigen/Core>

#include <complex>
#include <variant>

namespace optocool {

using complex = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;

struct SystemParams {
    double delta{0.0};       // drive detuning omega_d - omega_c
    double kappa{0.0};       // cavity damping
    double gamma{0.0};       // mechanical damping
    double coupling_a{0.0};  // dispersive strength A
    double coupling_b{0.0};  // dissipative strength B
    double n_th{0.0};        // mechanical bath occupation

    // Throws Error(InvalidParameter) on negative rates/occupation or non-finite fields.
    void validate() const;

    friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

struct ConstantDrive {
    complex omega0{0.0, 0.0};

    friend bool operator==(const ConstantDrive&, const ConstantDrive&) = default;
};

// Drive fixed implicitly by A kappa <a> - Omega B/2 = chi(t) exp(i phi(t)) with
// chi = chi0 sech(alpha (t - t0)) and dphi/dt = beta tanh(alpha (t - t0)).
struct ChirpedDrive {
    double chi0{0.0};
    double alpha{0.0};
    double beta{0.0};
    double t0{0.0};

    friend bool operator==(const ChirpedDrive&, const ChirpedDrive&) = default;
};

using DriveSignal = std::variant<ConstantDrive, ChirpedDrive>;

// Checks chirp parameters and that a chirped drive is paired with B != 0.
void validate_drive(const SystemParams& params, const DriveSignal& drive);

struct MeanFieldState {
    complex a{0.0, 0.0};  // intracavity amplitude <a>
    complex b{0.0, 0.0};  // mechanical amplitude <b>

    friend bool operator==(const MeanFieldState&, const MeanFieldState&) = default;
};

struct CoefficientSet {
    complex f1;
    complex f2;
    complex f3;
    complex f4;
};

struct MeanFieldDerivative {
    complex da;
    complex db;
};

struct ChirpSample {
    double chi;
    double phi;
    double phidot;
};

// Which noise sources enter C. `thermal` keeps only the gamma N_th and
// gamma (N_th + 1) terms; `optical` keeps everything else.
enum class NoiseChannel { all, thermal, optical };

CoefficientSet eval_coefficients(const SystemParams& params, const MeanFieldState& mf,
                                 complex omega);

Matrix4c build_drift_matrix(const SystemParams& params, const CoefficientSet& coeffs);

Matrix4c build_noise_matrix(const SystemParams& params, const MeanFieldState& mf,
                            const CoefficientSet& coeffs,
                            NoiseChannel channel = NoiseChannel::all);

MeanFieldDerivative mean_field_rhs(const SystemParams& params, const MeanFieldState& mf,
                                   complex omega);

// phi uses the antiderivative with phi(t0) = 0.
ChirpSample chirp_envelope(const ChirpedDrive& drive, double t);

// Omega(t). For the chirped variant this solves the constraint for Omega at the
// instantaneous mean field; throws ChirpWithoutDissipation when B == 0.
complex drive_amplitude(const SystemParams& params, const DriveSignal& drive,
                        const MeanFieldState& mf, double t);

// Sigma X* Sigma, where Sigma swaps indices (1,3) and (2,4).
Matrix4c swap_conjugate(const Matrix4c& x);

}  // namespace optocool
