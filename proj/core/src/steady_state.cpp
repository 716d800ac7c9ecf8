#include "optocool/steady_state.hpp"

#include "optocool/errors.hpp"
#include "optocool/propagation.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <cmath>
#include <string>

namespace optocool {

namespace {

constexpr complex kI{0.0, 1.0};

using Matrix8c = Eigen::Matrix<complex, 8, 8>;

// Omega that zeroes d<a>/dt at fixed <a> and <b>.
complex drive_for_amplitude(const SystemParams& p, complex a, complex b) {
    const double re_b = b.real();
    const double scale = 1.0 + p.coupling_b * re_b;
    if (scale == 0.0) {
        throw Error(ErrorKind::NoConvergence, "1 + B Re<b> vanished during iteration");
    }
    const complex rate = kI * p.delta + kI * (2.0 * p.coupling_a * p.kappa * re_b)
                       - p.kappa * p.coupling_b * re_b - 0.5 * p.kappa;
    return rate * a / (kI * scale);
}

// <b> that zeroes d<b>/dt at fixed <a> and Omega.
complex mechanics_for_drive(const SystemParams& p, complex a, complex omega) {
    const complex force = kI * (p.coupling_a * p.kappa) * std::norm(a)
                        - kI * (0.5 * p.coupling_b) * (omega * std::conj(a) + std::conj(omega) * a);
    return force / complex{0.5 * p.gamma, 1.0};
}

// Exact one-step map R -> E R E^T + Q for constant M and C (Van Loan).
struct DiscreteStep {
    Matrix4c e;
    Matrix4c q;
};

DiscreteStep exact_step(const Matrix4c& m, const Matrix4c& c, double h) {
    Matrix8c block = Matrix8c::Zero();
    block.topLeftCorner<4, 4>() = -m * h;
    block.topRightCorner<4, 4>() = c * h;
    block.bottomRightCorner<4, 4>() = m.transpose() * h;
    const Matrix8c x = block.exp();
    DiscreteStep step;
    step.e = x.bottomRightCorner<4, 4>().transpose();
    step.q = step.e * x.topRightCorner<4, 4>();
    return step;
}

// Once R42 has settled, keep stepping with doubled exact steps until the
// propagator has decayed; the result is the fixed point up to rounding.
Matrix4c settle(DiscreteStep step, Matrix4c r) {
    for (int i = 0; i < 64 && step.e.cwiseAbs().maxCoeff() > 1e-20; ++i) {
        const Matrix4c next = step.e * r * step.e.transpose() + step.q;
        if (!next.allFinite()) return r;
        r = next;
        step.q = step.e * step.q * step.e.transpose() + step.q;
        step.e = step.e * step.e;
    }
    return r;
}

bool finite_and_bounded(const Matrix4c& r) {
    for (int i = 0; i < 16; ++i) {
        const complex z = r(i);
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
            std::abs(z) > kDivergenceThreshold) {
            return false;
        }
    }
    return true;
}

}  // namespace

SteadyMeanField solve_steady_mean_field(const SystemParams& p, complex target_a,
                                        const FixedPointOptions& options) {
    p.validate();
    if (!(p.gamma > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "steady state requires gamma > 0");
    }

    complex b{0.0, 0.0};
    complex omega = drive_for_amplitude(p, target_a, b);
    double residual = 0.0;
    for (std::size_t it = 0; it < options.max_iterations; ++it) {
        const complex b_next = mechanics_for_drive(p, target_a, omega);
        b = options.damping * b + (1.0 - options.damping) * b_next;
        omega = drive_for_amplitude(p, target_a, b);

        const auto d = mean_field_rhs(p, MeanFieldState{target_a, b}, omega);
        residual = std::hypot(std::abs(d.da), std::abs(d.db));
        if (!std::isfinite(residual)) break;
        if (residual < options.tolerance) return {omega, b};
    }
    throw Error(ErrorKind::NoConvergence,
                "mean-field residual " + std::to_string(residual) + " after " +
                    std::to_string(options.max_iterations) + " iterations");
}

SteadyResult steady_phonon_decomposition(const SystemParams& p, complex omega0,
                                         complex a_ss, complex b_ss,
                                         const StationarityOptions& options) {
    p.validate();
    if (!(options.step > 0.0) || !(options.window >= 0.0) || !(options.t_max > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "invalid stationarity options");
    }

    const MeanFieldState mf{a_ss, b_ss};
    const auto coeffs = eval_coefficients(p, mf, omega0);
    const Matrix4c m = build_drift_matrix(p, coeffs);

    // Channels: all, thermal, optical. The initial state goes with the
    // thermal channel so that all = thermal + optical at every step.
    const std::array<NoiseChannel, 3> channels{NoiseChannel::all, NoiseChannel::thermal,
                                               NoiseChannel::optical};
    std::array<Matrix4c, 3> noise;
    std::array<DiscreteStep, 3> steps;
    std::array<Matrix4c, 3> r;
    for (std::size_t k = 0; k < channels.size(); ++k) {
        noise[k] = build_noise_matrix(p, mf, coeffs, channels[k]);
        steps[k] = exact_step(m, noise[k], options.step);
    }
    r[0] = initial_covariance(p.n_th).r;
    r[1] = r[0];
    r[2] = Matrix4c::Zero();

    const auto stationary = [&](std::size_t k) {
        const complex rate = covariance_rhs(m, r[k], noise[k])(3, 1);
        return std::abs(rate) < options.tolerance * std::max(1.0, std::abs(r[k](3, 1).real()));
    };

    const auto needed =
        static_cast<std::size_t>(std::ceil(options.window / options.step - 1e-9)) + 1;
    std::size_t streak = 0;
    const auto max_steps = static_cast<std::size_t>(std::ceil(options.t_max / options.step));

    for (std::size_t n = 0; n <= max_steps; ++n) {
        const bool all_stationary = stationary(0) && stationary(1) && stationary(2);
        streak = all_stationary ? streak + 1 : 0;
        if (streak >= needed) {
            for (std::size_t k = 0; k < channels.size(); ++k) r[k] = settle(steps[k], r[k]);
            SteadyResult res;
            res.omega0 = omega0;
            res.a_ss = a_ss;
            res.b_ss = b_ss;
            res.n_total = r[0](3, 1).real();
            res.sigma_eq = r[1](3, 1).real();
            res.s_bac = r[2](3, 1).real();
            return res;
        }
        for (std::size_t k = 0; k < channels.size(); ++k) {
            r[k] = steps[k].e * r[k] * steps[k].e.transpose() + steps[k].q;
            if (!finite_and_bounded(r[k])) {
                throw Error(ErrorKind::NoStationaryState,
                            "covariance grows without bound (t = " +
                                std::to_string(static_cast<double>(n + 1) * options.step) + ")");
            }
        }
    }
    throw Error(ErrorKind::NoStationaryState,
                "R42 not stationary by t = " + std::to_string(options.t_max));
}

SteadyResult solve_steady_state(const SystemParams& p, complex target_a) {
    const auto fixed = solve_steady_mean_field(p, target_a);
    return steady_phonon_decomposition(p, fixed.omega0, target_a, fixed.b_ss);
}

}  // namespace optocool
