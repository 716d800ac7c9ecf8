#include "optocool/propagation.hpp"

#include "optocool/errors.hpp"
#include "rk4.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace optocool {

namespace {

struct JointState {
    complex a;
    complex b;
    Matrix4c r;

    friend JointState operator+(const JointState& x, const JointState& y) {
        return {x.a + y.a, x.b + y.b, x.r + y.r};
    }
    friend JointState operator*(double s, const JointState& x) {
        return {s * x.a, s * x.b, s * x.r};
    }
};

struct OracleState {
    complex a;
    complex b;
    Matrix4c g;
    Matrix4c z;

    friend OracleState operator+(const OracleState& x, const OracleState& y) {
        return {x.a + y.a, x.b + y.b, x.g + y.g, x.z + y.z};
    }
    friend OracleState operator*(double s, const OracleState& x) {
        return {s * x.a, s * x.b, s * x.g, s * x.z};
    }
};

struct StepGrid {
    std::size_t steps;
    double h;
};

StepGrid make_grid(double t_end, double dt) {
    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    const std::size_t n = steps == 0 ? 1 : steps;
    return {n, t_end / static_cast<double>(n)};
}

bool out_of_range(complex z) {
    return !std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
           std::abs(z) > kDivergenceThreshold;
}

bool out_of_range(const Matrix4c& m) {
    for (int i = 0; i < 16; ++i)
        if (out_of_range(m(i))) return true;
    return false;
}

[[noreturn]] void diverged(double t) {
    throw Error(ErrorKind::Diverged, "state exceeded 1e12 at t = " + std::to_string(t));
}

double condition_number(const Matrix4c& g) {
    Eigen::JacobiSVD<Matrix4c> svd(g);
    const auto& s = svd.singularValues();
    if (s(3) == 0.0) return std::numeric_limits<double>::infinity();
    return s(0) / s(3);
}

TrajectorySample make_sample(const SystemParams& p, const DriveSignal& drive, double t,
                             const JointState& y) {
    TrajectorySample s;
    s.t = t;
    s.a = y.a;
    s.b = y.b;
    s.covariance.r = y.r;
    const auto obs = extract_observables(s.covariance);
    s.n_phonon = obs.n_phonon;
    s.n_photon = obs.n_photon;
    s.omega = drive_amplitude(p, drive, MeanFieldState{y.a, y.b}, t);
    return s;
}

}  // namespace

void PropagationControls::validate() const {
    if (!(t_end > 0.0) || !std::isfinite(t_end))
        throw Error(ErrorKind::InvalidParameter, "t_end must be > 0");
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw Error(ErrorKind::InvalidParameter, "dt must be > 0");
    if (sample_every == 0)
        throw Error(ErrorKind::InvalidParameter, "sample_every must be >= 1");
}

CovarianceMatrix initial_covariance(double n_th) {
    if (n_th < 0.0 || std::isnan(n_th)) {
        throw Error(ErrorKind::NegativeOccupation, "n_th must be >= 0");
    }
    CovarianceMatrix cov;
    cov.r(0, 2) = 1.0;
    cov.r(1, 3) = n_th + 1.0;
    cov.r(3, 1) = n_th;
    return cov;
}

Matrix4c covariance_rhs(const Matrix4c& m, const Matrix4c& r, const Matrix4c& c) {
    return m * r + r * m.transpose() + c;
}

Observables extract_observables(const CovarianceMatrix& cov) {
    return {cov.r(3, 1).real(), cov.r(2, 0).real()};
}

double commutator_defect(const CovarianceMatrix& cov) {
    const auto& r = cov.r;
    return std::max(std::abs(r(0, 2) - r(2, 0) - 1.0), std::abs(r(1, 3) - r(3, 1) - 1.0));
}

double symmetry_defect(const CovarianceMatrix& cov) {
    return (cov.r.transpose() - swap_conjugate(cov.r)).cwiseAbs().maxCoeff();
}

double occupation_imag(const CovarianceMatrix& cov) {
    return std::max(std::abs(cov.r(3, 1).imag()), std::abs(cov.r(2, 0).imag()));
}

Trajectory propagate(const SystemParams& p, const DriveSignal& drive,
                     const MeanFieldState& mf0, const PropagationControls& controls) {
    p.validate();
    validate_drive(p, drive);
    controls.validate();

    const auto rhs = [&](double t, const JointState& y) {
        const MeanFieldState mf{y.a, y.b};
        const complex omega = drive_amplitude(p, drive, mf, t);
        const auto d = mean_field_rhs(p, mf, omega);
        const auto coeffs = eval_coefficients(p, mf, omega);
        const Matrix4c m = build_drift_matrix(p, coeffs);
        const Matrix4c c = build_noise_matrix(p, mf, coeffs);
        return JointState{d.da, d.db, covariance_rhs(m, y.r, c)};
    };

    const auto grid = make_grid(controls.t_end, controls.dt);
    JointState y{mf0.a, mf0.b, initial_covariance(p.n_th).r};

    Trajectory traj;
    traj.samples.reserve(grid.steps / controls.sample_every + 2);
    traj.samples.push_back(make_sample(p, drive, 0.0, y));

    for (std::size_t i = 0; i < grid.steps; ++i) {
        const double t = static_cast<double>(i) * grid.h;
        y = detail::rk4_step(y, t, grid.h, rhs);
        const std::size_t done = i + 1;
        const double t_next = static_cast<double>(done) * grid.h;
        if (out_of_range(y.a) || out_of_range(y.b) || out_of_range(y.r)) diverged(t_next);
        if (done % controls.sample_every == 0 || done == grid.steps) {
            traj.samples.push_back(make_sample(p, drive, t_next, y));
        }
    }
    return traj;
}

CovarianceMatrix propagate_oracle(const SystemParams& p, const DriveSignal& drive,
                                  const MeanFieldState& mf0, double t_end, double dt) {
    p.validate();
    validate_drive(p, drive);
    PropagationControls{t_end, dt, 1}.validate();

    const auto rhs = [&](double t, const OracleState& y) {
        const MeanFieldState mf{y.a, y.b};
        const complex omega = drive_amplitude(p, drive, mf, t);
        const auto d = mean_field_rhs(p, mf, omega);
        const auto coeffs = eval_coefficients(p, mf, omega);
        const Matrix4c m = build_drift_matrix(p, coeffs);
        const Matrix4c c = build_noise_matrix(p, mf, coeffs);
        const Matrix4c g_inv = y.g.inverse();
        return OracleState{d.da, d.db, m * y.g, g_inv * c * g_inv.transpose()};
    };

    constexpr std::size_t kConditionCheckEvery = 100;
    const auto grid = make_grid(t_end, dt);
    OracleState y{mf0.a, mf0.b, Matrix4c::Identity(), Matrix4c::Zero()};

    for (std::size_t i = 0; i < grid.steps; ++i) {
        const double t = static_cast<double>(i) * grid.h;
        y = detail::rk4_step(y, t, grid.h, rhs);
        const std::size_t done = i + 1;
        if (out_of_range(y.a) || out_of_range(y.b) || out_of_range(y.g)) {
            diverged(static_cast<double>(done) * grid.h);
        }
        if (done % kConditionCheckEvery == 0 || done == grid.steps) {
            const double cond = condition_number(y.g);
            if (!(cond < kOracleConditionLimit)) {
                throw Error(ErrorKind::IllConditioned,
                            "cond(G) = " + std::to_string(cond) + " at t = " +
                                std::to_string(static_cast<double>(done) * grid.h));
            }
        }
    }

    const Matrix4c r0 = initial_covariance(p.n_th).r;
    CovarianceMatrix out;
    out.r = y.g * (r0 + y.z) * y.g.transpose();
    return out;
}

}  // namespace optocool
