#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "optocool/errors.hpp"
#include "optocool/model.hpp"

#include <cmath>
#include <random>

using namespace optocool;

namespace {

constexpr complex kI{0.0, 1.0};

bool close(complex x, complex y, double tol) { return std::abs(x - y) <= tol; }

struct RandomCase {
    SystemParams params;
    MeanFieldState mf;
    complex omega;
};

RandomCase random_case(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RandomCase c;
    c.params = {.delta = 2.0 * u(rng), .kappa = 0.5 * std::abs(u(rng)),
                .gamma = 1e-4 * std::abs(u(rng)), .coupling_a = 1e-3 * u(rng),
                .coupling_b = 1e-3 * u(rng), .n_th = 100.0 * std::abs(u(rng))};
    c.mf = {complex{1000.0 * u(rng), 1000.0 * u(rng)}, complex{100.0 * u(rng), 100.0 * u(rng)}};
    c.omega = complex{1000.0 * u(rng), 1000.0 * u(rng)};
    return c;
}

// Noise correlator built from the noise vector N = L x with
// x = (xi, xi^dag, eta, eta^dag), zero-temperature optical bath and a thermal
// mechanical bath: <xi xi^dag> = 1, <eta eta^dag> = n_th + 1, <eta^dag eta> = n_th.
Matrix4c noise_from_correlators(const SystemParams& p, const MeanFieldState& mf,
                                const CoefficientSet& c) {
    const complex h = 0.5 * p.coupling_b * std::sqrt(p.kappa) * mf.a;
    const double sg = std::sqrt(p.gamma);
    Matrix4c l = Matrix4c::Zero();
    l(0, 0) = -c.f3;
    l(1, 0) = -std::conj(h);
    l(1, 1) = h;
    l(1, 2) = -sg;
    l(2, 1) = -std::conj(c.f3);
    l(3, 0) = std::conj(h);
    l(3, 1) = -h;
    l(3, 3) = -sg;
    Matrix4c k = Matrix4c::Zero();
    k(0, 1) = 1.0;
    k(2, 3) = p.n_th + 1.0;
    k(3, 2) = p.n_th;
    return l * k * l.transpose();
}

}  // namespace

TEST_CASE("eval_coefficients hand-evaluated points") {
    SUBCASE("pure dissipative, undriven") {
        const SystemParams p{.delta = -1.0, .kappa = 0.01, .gamma = 1e-5, .coupling_a = 0.0,
                             .coupling_b = 2e-4, .n_th = 100.0};
        const auto c = eval_coefficients(p, {{200.0, 0.0}, {0.0, 0.0}}, 0.0);
        CHECK(close(c.f1, {-0.005, -1.0}, 1e-15));
        CHECK(close(c.f2, {-2e-4, 0.0}, 1e-15));
        CHECK(close(c.f3, {0.1, 0.0}, 1e-15));
        CHECK(close(c.f4, 0.0, 1e-15));
    }
    SUBCASE("decoupled limit") {
        const SystemParams p{.delta = 0.0, .kappa = 0.01};
        const auto c = eval_coefficients(p, {{123.0, -4.0}, {7.0, 2.0}}, 0.0);
        CHECK(close(c.f1, -0.005, 1e-15));
        CHECK(close(c.f2, 0.0, 1e-15));
        CHECK(close(c.f3, 0.1, 1e-15));
        CHECK(close(c.f4, 0.0, 1e-15));
    }
    SUBCASE("pure dispersive") {
        const SystemParams p{.delta = -1.0, .kappa = 0.3, .gamma = 1e-6, .coupling_a = 2e-4,
                             .coupling_b = 0.0, .n_th = 50.0};
        const auto c = eval_coefficients(p, {{1000.0, 0.0}, {0.0, 0.0}}, 0.0);
        CHECK(close(c.f1, {-0.15, -1.0}, 1e-15));
        CHECK(close(c.f2, {0.0, 0.06}, 1e-15));
        CHECK(close(c.f3, std::sqrt(0.3), 1e-15));
        CHECK(close(c.f4, {0.0, 0.06}, 1e-15));
    }
}

TEST_CASE("F3 is real") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const auto rc = random_case(rng);
        CHECK(eval_coefficients(rc.params, rc.mf, rc.omega).f3.imag() == 0.0);
    }
}

TEST_CASE("build_drift_matrix") {
    SUBCASE("decoupled coefficients give a diagonal matrix") {
        const SystemParams p{.gamma = 1e-6};
        const CoefficientSet c{-0.005, 0.0, 0.1, 0.0};
        Matrix4c expected = Matrix4c::Zero();
        expected.diagonal() << complex{-0.005, 0.0}, complex{-5e-7, -1.0}, complex{-0.005, 0.0},
            complex{-5e-7, 1.0};
        CHECK((build_drift_matrix(p, c) - expected).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("dissipative example") {
        const SystemParams p{.delta = -1.0, .kappa = 0.01, .gamma = 1e-5, .coupling_b = 2e-4,
                             .n_th = 100.0};
        const auto m = build_drift_matrix(p, eval_coefficients(p, {{200.0, 0.0}, {}}, 0.0));
        CHECK(close(m(0, 1), -2e-4, 1e-15));
        CHECK(close(m(0, 3), -2e-4, 1e-15));
        CHECK(close(m(1, 0), 0.0, 1e-15));
        CHECK(close(m(1, 3), 0.0, 1e-15));
        CHECK(close(m(3, 0), 0.0, 1e-15));
        CHECK(close(m(0, 0), {-0.005, -1.0}, 1e-15));
    }
    SUBCASE("conjugation symmetry M = S M* S") {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 200; ++i) {
            const auto rc = random_case(rng);
            const auto m = build_drift_matrix(rc.params, eval_coefficients(rc.params, rc.mf, rc.omega));
            CHECK((m - swap_conjugate(m)).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("build_noise_matrix") {
    SUBCASE("uncoupled: only the bath entries survive") {
        const SystemParams p{.kappa = 0.01, .gamma = 1e-5, .n_th = 100.0};
        const MeanFieldState mf{{200.0, 0.0}, {}};
        const auto c = build_noise_matrix(p, mf, eval_coefficients(p, mf, 0.0));
        Matrix4c expected = Matrix4c::Zero();
        expected(0, 2) = 0.01;
        expected(1, 3) = 1.01e-3;
        expected(3, 1) = 1.0e-3;
        CHECK((c - expected).cwiseAbs().maxCoeff() < 1e-17);
    }
    SUBCASE("dissipative example") {
        const SystemParams p{.kappa = 0.01, .gamma = 0.0, .coupling_b = 2e-4, .n_th = 0.0};
        const MeanFieldState mf{{200.0, 0.0}, {}};
        const auto c = build_noise_matrix(p, mf, eval_coefficients(p, mf, 0.0));
        // (B^2/4) kappa |a|^2 = 1e-8 * 0.01 * 4e4
        CHECK(close(c(1, 1), -4e-6, 1e-18));
        CHECK(close(c(1, 3), 4e-6, 1e-18));
        CHECK(close(c(3, 1), 4e-6, 1e-18));
        CHECK(close(c(3, 3), -4e-6, 1e-18));
        CHECK(close(c(0, 2), 0.01, 1e-16));
        // F3 (B/2) sqrt(kappa) <a> = 0.1 * 1e-4 * 0.1 * 200
        CHECK(close(c(0, 1), -2e-4, 1e-18));
        CHECK(close(c(0, 3), 2e-4, 1e-18));
    }
    SUBCASE("zero pattern and agreement with the noise-vector correlators") {
        std::mt19937_64 rng(13);
        for (int i = 0; i < 200; ++i) {
            const auto rc = random_case(rng);
            const auto coeffs = eval_coefficients(rc.params, rc.mf, rc.omega);
            const auto c = build_noise_matrix(rc.params, rc.mf, coeffs);
            for (int k = 0; k < 4; ++k) CHECK(c(k, 0) == complex{});
            CHECK(c(2, 0) == complex{});
            CHECK(c(2, 1) == complex{});
            CHECK(c(2, 2) == complex{});
            const auto oracle = noise_from_correlators(rc.params, rc.mf, coeffs);
            CHECK((c - oracle).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + oracle.cwiseAbs().maxCoeff()));
        }
    }
    SUBCASE("channels add up to the full matrix") {
        std::mt19937_64 rng(17);
        for (int i = 0; i < 50; ++i) {
            const auto rc = random_case(rng);
            const auto coeffs = eval_coefficients(rc.params, rc.mf, rc.omega);
            const auto all = build_noise_matrix(rc.params, rc.mf, coeffs, NoiseChannel::all);
            const auto th = build_noise_matrix(rc.params, rc.mf, coeffs, NoiseChannel::thermal);
            const auto op = build_noise_matrix(rc.params, rc.mf, coeffs, NoiseChannel::optical);
            CHECK((all - th - op).cwiseAbs().maxCoeff() <= 1e-15 * (1.0 + all.cwiseAbs().maxCoeff()));
            CHECK(th(1, 3) == complex{rc.params.gamma * (rc.params.n_th + 1.0), 0.0});
            CHECK(th(3, 1) == complex{rc.params.gamma * rc.params.n_th, 0.0});
        }
    }
}

TEST_CASE("mean_field_rhs") {
    SUBCASE("undriven cavity") {
        const SystemParams p{.delta = -1.0, .kappa = 0.01, .gamma = 1e-5};
        const auto d = mean_field_rhs(p, {{200.0, 0.0}, {}}, 0.0);
        CHECK(close(d.da, {-1.0, -200.0}, 1e-12));
        CHECK(close(d.db, 0.0, 1e-15));
    }
    SUBCASE("vacuum is a fixed point") {
        const auto d = mean_field_rhs(SystemParams{}, {}, 0.0);
        CHECK(d.da == complex{});
        CHECK(d.db == complex{});
    }
    SUBCASE("dispersive radiation pressure") {
        const SystemParams p{.delta = -1.0, .kappa = 0.3, .gamma = 1e-6, .coupling_a = 2e-4};
        const auto d = mean_field_rhs(p, {{1000.0, 0.0}, {}}, 0.0);
        // i A kappa |a|^2 = i * 2e-4 * 0.3 * 1e6
        CHECK(close(d.db, {0.0, 60.0}, 1e-12));
    }
}

TEST_CASE("chirp_envelope") {
    const ChirpedDrive drive{0.5 * std::hypot(0.14, 0.04), 0.14, 0.04, 40.0};

    SUBCASE("pulse centre") {
        const auto s = chirp_envelope(drive, 40.0);
        CHECK(s.chi == doctest::Approx(drive.chi0).epsilon(1e-15));
        CHECK(s.phi == 0.0);
        CHECK(s.phidot == 0.0);
    }
    SUBCASE("fig1 amplitude") { CHECK(drive.chi0 == doctest::Approx(0.072801).epsilon(1e-5)); }
    SUBCASE("far tail") {
        const auto s = chirp_envelope(drive, 40.0 + 1e4);
        CHECK(s.chi < 1e-300);
        CHECK(s.phidot == doctest::Approx(drive.beta).epsilon(1e-15));
        CHECK(std::isfinite(s.phi));
    }
    SUBCASE("phase derivative matches a central difference") {
        const double eps = 1e-5;
        for (double t = 0.0; t <= 80.0; t += 3.7) {
            const double fd = (chirp_envelope(drive, t + eps).phi - chirp_envelope(drive, t - eps).phi) / (2 * eps);
            CHECK(fd == doctest::Approx(chirp_envelope(drive, t).phidot).epsilon(1e-7));
        }
    }
    SUBCASE("parity about t0") {
        std::mt19937_64 rng(19);
        std::uniform_real_distribution<double> u(0.0, 60.0);
        for (int i = 0; i < 100; ++i) {
            const double tau = u(rng);
            const auto plus = chirp_envelope(drive, drive.t0 + tau);
            const auto minus = chirp_envelope(drive, drive.t0 - tau);
            CHECK(plus.chi == doctest::Approx(minus.chi).epsilon(1e-12));
            CHECK(plus.phi == doctest::Approx(minus.phi).epsilon(1e-12));
            CHECK(plus.phidot == doctest::Approx(-minus.phidot).epsilon(1e-12));
        }
    }
}

TEST_CASE("drive_amplitude") {
    const SystemParams p{.delta = -1.0, .kappa = 0.01, .gamma = 1e-5, .coupling_a = 0.0,
                         .coupling_b = 2e-4, .n_th = 100.0};

    SUBCASE("chirp peak") {
        const ChirpedDrive drive{0.0728, 0.14, 0.04, 40.0};
        const auto omega = drive_amplitude(p, drive, {{200.0, 0.0}, {}}, 40.0);
        CHECK(close(omega, -728.0, 1e-9));
    }
    SUBCASE("constant pass-through") {
        CHECK(drive_amplitude(p, ConstantDrive{{0.0, -150.0}}, {{3.0, 1.0}, {2.0, 0.0}}, 12.0) ==
              complex{0.0, -150.0});
    }
    SUBCASE("vanishes far from the pulse") {
        const ChirpedDrive drive{0.0728, 0.14, 0.04, 40.0};
        CHECK(std::abs(drive_amplitude(p, drive, {{200.0, 0.0}, {}}, 40.0 + 1e3)) < 1e-30);
    }
    SUBCASE("B = 0 is rejected") {
        SystemParams q = p;
        q.coupling_b = 0.0;
        try {
            drive_amplitude(q, ChirpedDrive{0.07, 0.14, 0.04, 40.0}, {}, 0.0);
            FAIL("expected ChirpWithoutDissipation");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::ChirpWithoutDissipation);
        }
    }
    SUBCASE("solution satisfies the constraint") {
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int i = 0; i < 200; ++i) {
            auto rc = random_case(rng);
            if (rc.params.coupling_b == 0.0) continue;
            const ChirpedDrive drive{0.3 * std::abs(u(rng)) + 1e-3, 0.1 + 0.1 * std::abs(u(rng)),
                                     0.2 * u(rng), 30.0};
            const double t = 60.0 * std::abs(u(rng));
            const complex omega = drive_amplitude(rc.params, drive, rc.mf, t);
            const auto env = chirp_envelope(drive, t);
            const complex lhs = rc.params.coupling_a * rc.params.kappa * rc.mf.a -
                                omega * 0.5 * rc.params.coupling_b;
            CHECK(std::abs(lhs - std::polar(env.chi, env.phi)) < 1e-12);
        }
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((SystemParams{.kappa = -0.1}.validate()), Error);
    CHECK_THROWS_AS((SystemParams{.gamma = -1e-6}.validate()), Error);
    CHECK_THROWS_AS((SystemParams{.n_th = -1.0}.validate()), Error);
    CHECK_THROWS_AS((SystemParams{.delta = std::nan("")}.validate()), Error);
    CHECK_NOTHROW((SystemParams{.kappa = 0.3, .gamma = 1e-6, .n_th = 50.0}.validate()));

    const SystemParams dissipative{.coupling_b = 2e-4};
    CHECK_THROWS_AS(validate_drive(dissipative, ChirpedDrive{0.0, 0.1, 0.0, 0.0}), Error);
    CHECK_THROWS_AS(validate_drive(dissipative, ChirpedDrive{0.1, -0.1, 0.0, 0.0}), Error);
    CHECK_NOTHROW(validate_drive(dissipative, ChirpedDrive{0.1, 0.1, 0.0, 0.0}));
    try {
        validate_drive(SystemParams{}, ChirpedDrive{0.1, 0.1, 0.0, 0.0});
        FAIL("expected ChirpWithoutDissipation");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ChirpWithoutDissipation);
    }
}
