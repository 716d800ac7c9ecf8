#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "optocool/errors.hpp"
#include "optocool/propagation.hpp"
#include "optocool/steady_state.hpp"

#include <cmath>
#include <random>

using namespace optocool;

namespace {

constexpr complex kI{0.0, 1.0};

SystemParams fig3(double a, double b, double delta, double kappa) {
    return {.delta = delta, .kappa = kappa, .gamma = 1e-6, .coupling_a = a, .coupling_b = b, .n_th = 50.0};
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no optocool::Error thrown");
    return ErrorKind::InvalidParameter;
}

// Stationary R42 for one noise channel from the Kronecker-form Lyapunov solve.
double lyapunov_r42(const SystemParams& p, complex omega, const MeanFieldState& mf, NoiseChannel channel) {
    const auto coeffs = eval_coefficients(p, mf, omega);
    return oracles::stationary(build_drift_matrix(p, coeffs), build_noise_matrix(p, mf, coeffs, channel))(3, 1)
        .real();
}

}  // namespace

TEST_CASE("steady mean field: closed forms") {
    SUBCASE("uncoupled resonant cavity") {
        const auto s = solve_steady_mean_field(fig3(0.0, 0.0, 0.0, 0.3), 1000.0);
        CHECK(std::abs(s.omega0 - complex{0.0, 150.0}) < 1e-9);
        CHECK(std::abs(s.b_ss) < 1e-12);
    }
    SUBCASE("empty cavity") {
        const auto s = solve_steady_mean_field(fig3(2e-4, 2e-4, -1.0, 0.3), 0.0);
        CHECK(std::abs(s.omega0) == 0.0);
        CHECK(std::abs(s.b_ss) == 0.0);
    }
    SUBCASE("dispersive shift") {
        const auto p = fig3(2e-4, 0.0, -1.0, 0.3);
        const complex a = 1000.0;
        const complex b = kI * p.coupling_a * p.kappa * std::norm(a) / (kI + 0.5 * p.gamma);
        const double shifted = p.delta + 2.0 * p.coupling_a * p.kappa * b.real();
        const complex omega = (shifted + 0.5 * kI * p.kappa) * a;
        const auto s = solve_steady_mean_field(p, a);
        CHECK(std::abs(s.b_ss - b) < 1e-9 * std::abs(b));
        CHECK(std::abs(s.omega0 - omega) < 1e-9 * std::abs(omega));
    }
}

TEST_CASE("steady mean field: residual") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const auto p = fig3(2e-4 * u(rng), 2e-4 * u(rng), 2.0 * u(rng) - 1.0, 0.05 + 0.45 * u(rng));
        const complex a{1000.0 * u(rng), 1000.0 * u(rng)};
        const auto s = solve_steady_mean_field(p, a);
        const auto d = mean_field_rhs(p, {a, s.b_ss}, s.omega0);
        CHECK(std::abs(d.da) < 1e-10 * std::max(1.0, std::abs(a)));
        CHECK(std::abs(d.db) < 1e-10 * std::max(1.0, std::abs(s.b_ss)));
    }
}

TEST_CASE("steady mean field: failures") {
    CHECK(kind_of([] { solve_steady_mean_field(fig3(0.0, 2e-4, -1.0, 0.3), 1000.0, {1e-10, 2, 0.5}); }) ==
          ErrorKind::NoConvergence);
    auto lossless = fig3(2e-4, 0.0, -1.0, 0.3);
    lossless.gamma = 0.0;
    CHECK(kind_of([&] { solve_steady_mean_field(lossless, 1000.0); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("steady decomposition: uncoupled") {
    const auto p = fig3(0.0, 0.0, -1.0, 0.3);
    const auto s = solve_steady_state(p, 1000.0);
    CHECK(s.n_total == doctest::Approx(50.0).epsilon(1e-10));
    CHECK(s.sigma_eq == doctest::Approx(50.0).epsilon(1e-10));
    CHECK(std::abs(s.s_bac) < 1e-10);
}

TEST_CASE("steady decomposition: Lyapunov oracle, additivity and signs") {
    for (double kappa : {0.05, 0.1, 0.2, 0.3, 0.4, 0.5}) {
        for (const auto& p : {fig3(2e-4, 0.0, -1.0, kappa), fig3(0.0, 2e-4, -1.0, kappa),
                              fig3(0.0, 2e-4, 0.5, kappa), fig3(2e-4, 2e-4, -1.0, kappa)}) {
            CAPTURE(kappa);
            CAPTURE(p.coupling_a);
            CAPTURE(p.delta);
            const complex a = 1000.0;
            const auto s = solve_steady_state(p, a);
            const MeanFieldState mf{a, s.b_ss};
            CHECK(s.n_total == doctest::Approx(lyapunov_r42(p, s.omega0, mf, NoiseChannel::all)).epsilon(1e-8));
            CHECK(s.sigma_eq ==
                  doctest::Approx(lyapunov_r42(p, s.omega0, mf, NoiseChannel::thermal)).epsilon(1e-8));
            CHECK(s.s_bac == doctest::Approx(lyapunov_r42(p, s.omega0, mf, NoiseChannel::optical)).epsilon(1e-7));
            CHECK(std::abs(s.n_total - s.sigma_eq - s.s_bac) <= 1e-9 * s.n_total);
            CHECK(s.sigma_eq >= 0.0);
            CHECK(s.s_bac >= 0.0);
        }
    }
}

TEST_CASE("steady decomposition agrees with a long propagation") {
    const auto p = fig3(0.0, 2e-4, -1.0, 0.3);
    const complex a = 1000.0;
    const auto s = solve_steady_state(p, a);
    const auto traj = propagate(p, ConstantDrive{s.omega0}, {a, s.b_ss}, {4000.0, 1e-2, 100000});
    CHECK(std::abs(traj.back().n_phonon - s.n_total) / s.n_total < 1e-4);
}

TEST_CASE("steady decomposition: unstable point") {
    const auto p = fig3(2e-3, 0.0, 1.0, 0.3);
    CHECK(kind_of([&] { solve_steady_state(p, 1000.0); }) == ErrorKind::NoStationaryState);
}

TEST_CASE("dissipative steady state: backaction floor decreases with kappa at positive detuning") {
    double previous = INFINITY;
    for (double kappa : {0.1, 0.2, 0.3, 0.4, 0.5}) {
        const double sigma = solve_steady_state(fig3(0.0, 2e-4, 0.5, kappa), 1000.0).sigma_eq;
        CHECK(sigma < previous);
        previous = sigma;
    }
}
