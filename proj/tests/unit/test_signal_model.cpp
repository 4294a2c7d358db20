// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "doctest.h"
#include "starloc/rng.hpp"
#include "starloc/signal_model.hpp"

using namespace starloc;

namespace {

Eigen::MatrixXcd random_complex(int rows, int cols, Rng& rng) {
    Eigen::MatrixXcd m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) m(r, c) = rng.complex_normal(1.0);
    }
    return m;
}

// stack the per-slot signal equation column by column and vectorize
Eigen::VectorXcd slot_by_slot(const Eigen::MatrixXcd& h4, const PhaseSchedule& s,
                              const Eigen::VectorXcd& h1, const Eigen::VectorXcd& h2,
                              const Eigen::VectorXcd& h3, const PowerConfig& pc) {
    const int m = static_cast<int>(h4.rows());
    const int k = s.k();
    Eigen::VectorXcd y(static_cast<Eigen::Index>(k) * m);
    const double root_p = std::sqrt(pc.p);
    for (int slot = 0; slot < k; ++slot) {
        const Eigen::VectorXcd yk =
            pc.eta1 * root_p * h1 +
            pc.eta1 * root_p * pc.eps2 *
                (h4 * (h2.cwiseProduct(s.omega2_bar.col(slot)))) +
            pc.eta2 * root_p * pc.eps1 *
                (h4 * (h3.cwiseProduct(s.omega1_bar.col(slot))));
        y.segment(static_cast<Eigen::Index>(slot) * m, m) = yk;
    }
    return y;
}

}  // namespace

TEST_CASE("build_measurement_matrices scalar case and stacking") {
    PhaseSchedule s;
    s.omega1_bar = Eigen::MatrixXcd::Constant(1, 1, std::polar(1.0, 0.4));
    s.omega2_bar = Eigen::MatrixXcd::Constant(1, 1, std::polar(1.0, 1.3));
    Eigen::MatrixXcd h4(1, 1);
    h4(0, 0) = cplx(0.3, -0.7);
    const MeasurementMatrices mm = build_measurement_matrices(h4, s);
    CHECK(std::abs(mm.a2(0, 0) - h4(0, 0) * s.omega2_bar(0, 0)) < 1e-15);
    CHECK(std::abs(mm.a3(0, 0) - h4(0, 0) * s.omega1_bar(0, 0)) < 1e-15);

    // A1^T A1 = K I_M
    Rng rng(5);
    const int k = 7, m = 3, n = 4;
    PhaseSchedule rs = random_design(n, k, 1);
    const Eigen::MatrixXcd h4r = random_complex(m, n, rng);
    const MeasurementMatrices mmr = build_measurement_matrices(h4r, rs);
    CHECK((mmr.a1.transpose() * mmr.a1 - double(k) * Eigen::MatrixXcd::Identity(m, m))
              .norm() < 1e-12);
}

TEST_CASE("A2 h2 equals the per-slot synthesis") {
    Rng rng(17);
    const int k = 9, m = 4, n = 5;
    const PhaseSchedule s = random_design(n, k, 2);
    const Eigen::MatrixXcd h4 = random_complex(m, n, rng);
    const Eigen::VectorXcd h2 = random_complex(n, 1, rng);
    const MeasurementMatrices mm = build_measurement_matrices(h4, s);

    const Eigen::VectorXcd lhs = mm.a2 * h2;
    for (int slot = 0; slot < k; ++slot) {
        const Eigen::VectorXcd per_slot = h4 * (h2.cwiseProduct(s.omega2_bar.col(slot)));
        CHECK((lhs.segment(slot * m, m) - per_slot).norm() / per_slot.norm() < 1e-12);
    }
}

TEST_CASE("noiseless_mean structure") {
    Rng rng(19);
    const int k = 8, m = 3, n = 4;
    const PhaseSchedule s = random_design(n, k, 3);
    const Eigen::MatrixXcd h4 = random_complex(m, n, rng);
    const MeasurementMatrices mm = build_measurement_matrices(h4, s);
    const PowerConfig pc = PowerConfig::from_split(0.6, 0.8);
    const Eigen::VectorXcd h1 = random_complex(m, 1, rng);
    const Eigen::VectorXcd h2 = random_complex(n, 1, rng);
    const Eigen::VectorXcd h3 = random_complex(n, 1, rng);

    // single-term collapse
    const Eigen::VectorXcd only1 = noiseless_mean(
        mm, h1, Eigen::VectorXcd::Zero(n), Eigen::VectorXcd::Zero(n), pc);
    CHECK((only1 - pc.eta1 * (mm.a1 * h1)).norm() < 1e-13);

    // linearity
    const Eigen::VectorXcd mu = noiseless_mean(mm, h1, h2, h3, pc);
    const Eigen::VectorXcd mu2 = noiseless_mean(mm, 2.0 * h1, 2.0 * h2, 2.0 * h3, pc);
    CHECK((mu2 - 2.0 * mu).norm() / mu.norm() < 1e-13);

    // vectorized model equals slot-by-slot stacking
    const Eigen::VectorXcd stacked = slot_by_slot(h4, s, h1, h2, h3, pc);
    CHECK((std::sqrt(pc.p) * mu - stacked).norm() / stacked.norm() < 1e-12);

    // linearity in H4: doubling H4 doubles the A2/A3 terms
    const MeasurementMatrices mm_scaled = build_measurement_matrices(2.0 * h4, s);
    CHECK((mm_scaled.a2 - 2.0 * mm.a2).norm() < 1e-12);
    CHECK((mm_scaled.a3 - 2.0 * mm.a3).norm() < 1e-12);
}

TEST_CASE("vectorized model equivalence on random configurations") {
    Rng rng(29);
    for (int rep = 0; rep < 25; ++rep) {
        const int m = 1 + int(rng.uniform(0, 4));
        const int n = 1 + int(rng.uniform(0, 4));
        const int k = 1 + int(rng.uniform(0, 10));
        const PhaseSchedule s = random_design(n, k, 100 + rep);
        const Eigen::MatrixXcd h4 = random_complex(m, n, rng);
        const PowerConfig pc =
            PowerConfig::from_split(rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9),
                                    rng.uniform(0.5, 4.0));
        const Eigen::VectorXcd h1 = random_complex(m, 1, rng);
        const Eigen::VectorXcd h2 = random_complex(n, 1, rng);
        const Eigen::VectorXcd h3 = random_complex(n, 1, rng);
        const MeasurementMatrices mm = build_measurement_matrices(h4, s);
        const Eigen::VectorXcd vec = std::sqrt(pc.p) * noiseless_mean(mm, h1, h2, h3, pc);
        const Eigen::VectorXcd stacked = slot_by_slot(h4, s, h1, h2, h3, pc);
        CHECK((vec - stacked).norm() / stacked.norm() < 1e-12);
    }
}

TEST_CASE("synthesize_observation noise statistics and determinism") {
    Rng rng(31);
    const int k = 5, m = 2, n = 3;
    const PhaseSchedule s = random_design(n, k, 4);
    const Eigen::MatrixXcd h4 = random_complex(m, n, rng);
    const MeasurementMatrices mm = build_measurement_matrices(h4, s);
    const PowerConfig pc = PowerConfig::from_split(0.7, 0.7);
    const Eigen::VectorXcd h1 = random_complex(m, 1, rng);
    const Eigen::VectorXcd h2 = random_complex(n, 1, rng);
    const Eigen::VectorXcd h3 = random_complex(n, 1, rng);
    const Eigen::VectorXcd mu = noiseless_mean(mm, h1, h2, h3, pc);

    // near-noiseless limit
    const ObservationBundle quiet =
        synthesize_observation(mm, h1, h2, h3, pc, 1e-30, 9);
    CHECK((quiet.y - std::sqrt(pc.p) * mu).norm() / mu.norm() < 1e-12);

    // determinism
    const ObservationBundle a = synthesize_observation(mm, h1, h2, h3, pc, 0.5, 77);
    const ObservationBundle b = synthesize_observation(mm, h1, h2, h3, pc, 0.5, 77);
    CHECK((a.y - b.y).norm() == 0.0);

    // per-element variance within 2% over many draws, and
    // E||y - sqrt(P) mu||^2 = KM sigma^2
    const double sigma2 = 0.8;
    double acc = 0.0;
    const int reps = 2000;
    for (int rep = 0; rep < reps; ++rep) {
        const ObservationBundle obs =
            synthesize_observation(mm, h1, h2, h3, pc, sigma2, 1000 + rep);
        acc += (obs.y - std::sqrt(pc.p) * mu).squaredNorm();
    }
    const double mean_sq = acc / reps;
    CHECK(mean_sq == doctest::Approx(k * m * sigma2).epsilon(0.02));
}

TEST_CASE("perturb_h4") {
    const LinkGeometry link4{0.8, -0.81, std::sqrt(17.0)};

    // zero half-widths: identity
    const LinkGeometry same = perturb_h4(link4, {0.0, 0.0}, 5);
    CHECK(same.theta == link4.theta);
    CHECK(same.phi == link4.phi);
    CHECK(same.d == link4.d);

    // study case i parameters
    const H4Perturbation case_i{0.5, 0.2};
    double mean_dd = 0.0;
    const int reps = 100000;
    for (int rep = 0; rep < reps; ++rep) {
        const LinkGeometry p = perturb_h4(link4, case_i, rep);
        const double dd = p.d - link4.d;
        CHECK(std::abs(dd) <= 0.5);
        CHECK(std::abs(p.theta - link4.theta) <= 0.2);
        CHECK(std::abs(p.phi - link4.phi) <= 0.2);
        mean_dd += dd;
    }
    mean_dd /= reps;
    CHECK(std::abs(mean_dd) < 0.01 * 0.5);

    // nonpositive perturbed distance is rejected
    const LinkGeometry short_link{0.0, 0.0, 0.01};
    CHECK_THROWS_AS(
        [&] {
            for (int rep = 0; rep < 200; ++rep) {
                (void)perturb_h4(short_link, {1.0, 0.0}, rep);
            }
        }(),
        DegenerateGeometryError);
}
