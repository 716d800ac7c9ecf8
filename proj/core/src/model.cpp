#include "optocool/model.hpp"

#include "optocool/errors.hpp"

#include <cmath>
#include <string>

namespace optocool {

namespace {

constexpr complex kI{0.0, 1.0};

void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw Error(ErrorKind::InvalidParameter, std::string(name) + " must be finite");
    }
}

// log(cosh(x)) without overflow for large |x|.
double log_cosh(double x) {
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
}

}  // namespace

void SystemParams::validate() const {
    require_finite(delta, "delta");
    require_finite(kappa, "kappa");
    require_finite(gamma, "gamma");
    require_finite(coupling_a, "coupling_a");
    require_finite(coupling_b, "coupling_b");
    require_finite(n_th, "n_th");
    if (kappa < 0.0) throw Error(ErrorKind::InvalidParameter, "kappa must be >= 0");
    if (gamma < 0.0) throw Error(ErrorKind::InvalidParameter, "gamma must be >= 0");
    if (n_th < 0.0) throw Error(ErrorKind::InvalidParameter, "n_th must be >= 0");
}

void validate_drive(const SystemParams& params, const DriveSignal& drive) {
    if (const auto* c = std::get_if<ConstantDrive>(&drive)) {
        require_finite(c->omega0.real(), "drive.omega0_re");
        require_finite(c->omega0.imag(), "drive.omega0_im");
        return;
    }
    const auto& chirp = std::get<ChirpedDrive>(drive);
    require_finite(chirp.chi0, "drive.chi0");
    require_finite(chirp.alpha, "drive.alpha");
    require_finite(chirp.beta, "drive.beta");
    require_finite(chirp.t0, "drive.t0");
    if (chirp.chi0 <= 0.0) throw Error(ErrorKind::InvalidParameter, "drive.chi0 must be > 0");
    if (chirp.alpha <= 0.0) throw Error(ErrorKind::InvalidParameter, "drive.alpha must be > 0");
    if (params.coupling_b == 0.0) {
        throw Error(ErrorKind::ChirpWithoutDissipation,
                    "chirped drive requires coupling_b != 0");
    }
}

CoefficientSet eval_coefficients(const SystemParams& p, const MeanFieldState& mf,
                                 complex omega) {
    const double re_b = mf.b.real();
    const double ak = p.coupling_a * p.kappa;
    const double half_b = 0.5 * p.coupling_b;

    CoefficientSet c;
    c.f1 = kI * p.delta + kI * (2.0 * ak * re_b) - 0.5 * p.kappa - p.kappa * p.coupling_b * re_b;
    c.f2 = kI * ak * mf.a - 0.5 * p.kappa * p.coupling_b * mf.a - kI * half_b * omega;
    c.f3 = std::sqrt(p.kappa) * (1.0 + p.coupling_b * re_b);
    c.f4 = kI * ak * std::conj(mf.a) - kI * half_b * std::conj(omega);
    return c;
}

Matrix4c build_drift_matrix(const SystemParams& p, const CoefficientSet& c) {
    const complex mech_lower{-0.5 * p.gamma, -1.0};
    const complex mech_upper{-0.5 * p.gamma, 1.0};
    const complex zero{0.0, 0.0};

    Matrix4c m;
    m << c.f1, c.f2, zero, c.f2,
         c.f4, mech_lower, -std::conj(c.f4), zero,
         zero, std::conj(c.f2), std::conj(c.f1), std::conj(c.f2),
         -c.f4, zero, std::conj(c.f4), mech_upper;
    return m;
}

Matrix4c build_noise_matrix(const SystemParams& p, const MeanFieldState& mf,
                            const CoefficientSet& c, NoiseChannel channel) {
    const bool optical = channel != NoiseChannel::thermal;
    const bool thermal = channel != NoiseChannel::optical;

    const double sqrt_kappa = std::sqrt(p.kappa);
    const double b_sq_quarter = 0.25 * p.coupling_b * p.coupling_b;
    const double a_norm_sq = std::norm(mf.a);
    const complex h = 0.5 * p.coupling_b * sqrt_kappa * mf.a;  // (B/2) sqrt(kappa) <a>
    const complex cross = 0.5 * p.coupling_b * sqrt_kappa * std::conj(c.f3) * std::conj(mf.a);
    const double b_noise = b_sq_quarter * p.kappa * a_norm_sq;
#ifdef OPTOCOOL_SQRT_KAPPA_C42
    const double b_noise_42 = b_sq_quarter * sqrt_kappa * a_norm_sq;
#else
    const double b_noise_42 = b_noise;
#endif

    Matrix4c m = Matrix4c::Zero();
    if (optical) {
        m(0, 1) = -c.f3 * h;
        m(0, 2) = std::norm(c.f3);
        m(0, 3) = c.f3 * h;
        m(1, 1) = -b_noise;
        m(1, 2) = cross;
        m(1, 3) = b_noise;
        m(3, 1) = b_noise_42;
        m(3, 2) = -cross;
        m(3, 3) = -b_noise;
    }
    if (thermal) {
        m(1, 3) += p.gamma * (p.n_th + 1.0);
        m(3, 1) += p.gamma * p.n_th;
    }
    return m;
}

MeanFieldDerivative mean_field_rhs(const SystemParams& p, const MeanFieldState& mf,
                                   complex omega) {
    const double re_b = mf.b.real();
    const double ak = p.coupling_a * p.kappa;
    const double bb = p.coupling_b;

    MeanFieldDerivative d;
    d.da = kI * p.delta * mf.a + kI * (2.0 * ak * re_b) * mf.a - p.kappa * bb * re_b * mf.a
         - kI * omega - kI * (bb * re_b) * omega - 0.5 * p.kappa * mf.a;
    d.db = -kI * mf.b + kI * ak * std::norm(mf.a) - 0.5 * p.gamma * mf.b
         - kI * (0.5 * bb) * (omega * std::conj(mf.a) + std::conj(omega) * mf.a);
    return d;
}

ChirpSample chirp_envelope(const ChirpedDrive& drive, double t) {
    const double x = drive.alpha * (t - drive.t0);
    ChirpSample s;
    s.chi = drive.chi0 / std::cosh(x);
    s.phidot = drive.beta * std::tanh(x);
    s.phi = (drive.beta / drive.alpha) * log_cosh(x);
    return s;
}

complex drive_amplitude(const SystemParams& p, const DriveSignal& drive,
                        const MeanFieldState& mf, double t) {
    if (const auto* c = std::get_if<ConstantDrive>(&drive)) return c->omega0;

    if (p.coupling_b == 0.0) {
        throw Error(ErrorKind::ChirpWithoutDissipation,
                    "chirped drive requires coupling_b != 0");
    }
    const auto env = chirp_envelope(std::get<ChirpedDrive>(drive), t);
    const complex target = std::polar(env.chi, env.phi);
    return (2.0 / p.coupling_b) * (p.coupling_a * p.kappa * mf.a - target);
}

Matrix4c swap_conjugate(const Matrix4c& x) {
    static constexpr int swap[4] = {2, 3, 0, 1};
    Matrix4c out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out(i, j) = std::conj(x(swap[i], swap[j]));
    return out;
}

}  // namespace optocool
