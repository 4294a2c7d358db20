// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "doctest.h"
#include "starloc/star_ris.hpp"

using namespace starloc;

TEST_CASE("dft_design orthogonality at N=36, K=100") {
    const PhaseSchedule s = dft_design(36, 100);
    REQUIRE(s.n() == 36);
    REQUIRE(s.k() == 100);
    const OrthogonalityResidual r = verify_orthogonality(s);
    CHECK(r.ones < 1e-10);
    CHECK(r.cross < 1e-10);

    for (int row = 0; row < s.n(); ++row) {
        for (int col = 0; col < s.k(); ++col) {
            CHECK(std::abs(std::abs(s.omega1_bar(row, col)) - 1.0) < 1e-14);
            CHECK(std::abs(std::abs(s.omega2_bar(row, col)) - 1.0) < 1e-14);
        }
    }
}

TEST_CASE("dft_design rows of the 3-point DFT for n=1") {
    const PhaseSchedule s = dft_design(1, 3);
    for (int c = 0; c < 3; ++c) {
        CHECK(std::abs(s.omega1_bar(0, c) - std::polar(1.0, -2.0 * pi * c / 3.0)) < 1e-14);
        CHECK(std::abs(s.omega2_bar(0, c) - std::polar(1.0, -4.0 * pi * c / 3.0)) < 1e-14);
    }
    const OrthogonalityResidual r = verify_orthogonality(s);
    CHECK(r.ones < 1e-14);
    CHECK(r.cross < 1e-14);
}

TEST_CASE("dft_design rejects insufficient overhead") {
    CHECK_THROWS_AS(dft_design(36, 72), InsufficientOverheadError);
    CHECK_NOTHROW(dft_design(36, 73));
}

TEST_CASE("dft_design columns are pairwise distinct") {
    const PhaseSchedule s = dft_design(36, 100);
    for (int a = 0; a < s.k(); ++a) {
        for (int b = a + 1; b < s.k(); ++b) {
            CHECK((s.omega1_bar.col(a) - s.omega1_bar.col(b)).norm() > 1e-8);
        }
    }
}

TEST_CASE("random_design determinism and residuals") {
    const PhaseSchedule a = random_design(36, 100, 42);
    const PhaseSchedule b = random_design(36, 100, 42);
    CHECK((a.omega1_bar - b.omega1_bar).norm() == 0.0);
    CHECK((a.omega2_bar - b.omega2_bar).norm() == 0.0);

    const PhaseSchedule c = random_design(36, 100, 43);
    CHECK((a.omega1_bar - c.omega1_bar).norm() > 0.0);

    for (int row = 0; row < a.n(); ++row) {
        for (int col = 0; col < a.k(); ++col) {
            CHECK(std::abs(std::abs(a.omega1_bar(row, col)) - 1.0) < 1e-14);
        }
    }

    // no orthogonality: residuals on the order of sqrt(K) per row
    const OrthogonalityResidual r = verify_orthogonality(a);
    CHECK(r.ones > 0.1 * std::sqrt(100.0));
    CHECK(r.cross > 0.0);
}

TEST_CASE("verify_orthogonality on the all-ones schedule") {
    PhaseSchedule s;
    s.omega1_bar = Eigen::MatrixXcd::Ones(36, 100);
    s.omega2_bar = Eigen::MatrixXcd::Ones(36, 100);
    const OrthogonalityResidual r = verify_orthogonality(s);
    CHECK(r.cross == doctest::Approx(36.0 * 100.0).epsilon(1e-12));
}

TEST_CASE("power config") {
    const PowerConfig pc = PowerConfig::from_split(std::sqrt(0.9), std::sqrt(0.5), 2.0);
    CHECK(pc.eps1 * pc.eps1 + pc.eps2 * pc.eps2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pc.eta1 * pc.eta1 + pc.eta2 * pc.eta2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pc.gamma1() == doctest::Approx(std::sqrt(2.0) * pc.eta1));
    CHECK(pc.gamma2() == doctest::Approx(std::sqrt(2.0) * pc.eta1 * pc.eps2));
    CHECK(pc.gamma3() == doctest::Approx(std::sqrt(2.0) * pc.eta2 * pc.eps1));
    CHECK_THROWS_AS(PowerConfig::from_split(1.0, 0.5), ConfigError);
    CHECK_THROWS_AS(PowerConfig::from_split(0.5, 0.5, -1.0), ConfigError);
}
