// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "doctest.h"
#include "starloc/geometry.hpp"
#include "starloc/rng.hpp"

using namespace starloc;

namespace {

// finite-difference oracle for the link partials, step 1e-6
Eigen::Matrix3d fd_link_jacobian(const Position3D& anchor, const Position3D& target) {
    constexpr double step = 1e-6;
    Eigen::Matrix3d jac;
    for (int coord = 0; coord < 3; ++coord) {
        Position3D hi = target, lo = target;
        hi(coord) += step;
        lo(coord) -= step;
        const LinkGeometry lhi = link_from_positions(anchor, hi);
        const LinkGeometry llo = link_from_positions(anchor, lo);
        jac(coord, 0) = (lhi.theta - llo.theta) / (2 * step);
        jac(coord, 1) = (lhi.phi - llo.phi) / (2 * step);
        jac(coord, 2) = (lhi.d - llo.d) / (2 * step);
    }
    return jac;
}

const Position3D kPb(0, 0, 8), kPr(2, 2, 5), kPu1(5, 1, 2), kPu2(1, 5, 2);

}  // namespace

TEST_CASE("direction_vector axis cases and unit norm") {
    CHECK(direction_vector({0.0, 0.0, 1.0}).isApprox(Eigen::Vector3d(1, 0, 0), 1e-15));
    CHECK(direction_vector({pi / 2, 0.0, 1.0}).isApprox(Eigen::Vector3d(0, 1, 0), 1e-15));

    // direction of p_U1 - p_B in the benchmark setup
    const LinkGeometry link{std::atan2(1.0, 5.0), std::asin(-6.0 / std::sqrt(62.0)), 1.0};
    const Eigen::Vector3d expected = Eigen::Vector3d(5, 1, -6) / std::sqrt(62.0);
    CHECK(direction_vector(link).isApprox(expected, 1e-14));

    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const LinkGeometry random_link{rng.uniform(-pi, pi), rng.uniform(-pi / 2, pi / 2),
                                       1.0};
        CHECK(std::abs(direction_vector(random_link).norm() - 1.0) < 1e-14);
    }
}

TEST_CASE("link_from_positions distances of the benchmark scenario") {
    CHECK(link_from_positions(kPb, kPu1).d == doctest::Approx(std::sqrt(62.0)).epsilon(1e-14));
    CHECK(link_from_positions(kPb, kPr).d == doctest::Approx(std::sqrt(17.0)).epsilon(1e-14));
    CHECK(link_from_positions(kPr, kPu2).d == doctest::Approx(std::sqrt(19.0)).epsilon(1e-14));
    CHECK_THROWS_AS(link_from_positions(kPb, kPb), DegenerateGeometryError);
}

TEST_CASE("link round trip for random geometries") {
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        const Position3D anchor(rng.uniform(-10, 10), rng.uniform(-10, 10),
                                rng.uniform(-10, 10));
        const Position3D target(rng.uniform(-10, 10), rng.uniform(-10, 10),
                                rng.uniform(-10, 10));
        if ((target - anchor).norm() < 1e-6) continue;
        const LinkGeometry link = link_from_positions(anchor, target);
        const Position3D rebuilt = anchor + link.d * direction_vector(link);
        CHECK((rebuilt - target).norm() < 1e-12);
    }
}

TEST_CASE("map_indoor") {
    const LinkGeometry link3 = link_from_positions(kPr, kPu2);
    CHECK((map_indoor(kPr, link3) - kPu2).norm() < 1e-12);

    CHECK_THROWS_AS(map_indoor(kPr, LinkGeometry{0.0, 0.0, 0.0}), DegenerateGeometryError);
    CHECK(map_indoor(Position3D::Zero(), {0.0, 0.0, 1.0})
              .isApprox(Position3D(1, 0, 0), 1e-15));
}

TEST_CASE("map_outdoor_weighted") {
    const LinkGeometry link1 = link_from_positions(kPb, kPu1);
    const LinkGeometry link2 = link_from_positions(kPr, kPu1);
    CHECK((map_outdoor_weighted(kPb, kPr, link1, link2) - kPu1).norm() < 1e-12);

    // equal distances: arithmetic mean of the two branches
    const LinkGeometry la{0.2, 0.1, 3.0};
    const LinkGeometry lb{1.1, -0.4, 3.0};
    const Position3D mean = 0.5 * (kPb + la.d * direction_vector(la)) +
                            0.5 * (kPr + lb.d * direction_vector(lb));
    CHECK((map_outdoor_weighted(kPb, kPr, la, lb) - mean).norm() < 1e-12);

    // d2 -> 0 collapses onto branch 2
    const LinkGeometry tiny{1.1, -0.4, 1e-9};
    const Position3D branch2 = kPr + tiny.d * direction_vector(tiny);
    CHECK((map_outdoor_weighted(kPb, kPr, la, tiny) - branch2).norm() < 1e-12);
}

TEST_CASE("jacobian_T matches finite differences on the benchmark scenario") {
    const JacobianT t = jacobian_T(kPb, kPr, kPu1, kPu2);

    // distance rows equal the unit directions
    const LinkGeometry link1 = link_from_positions(kPb, kPu1);
    CHECK((t.t.block<3, 1>(0, 2) - direction_vector(link1)).norm() < 1e-12);

    const Eigen::Matrix3d fd1 = fd_link_jacobian(kPb, kPu1);
    const Eigen::Matrix3d fd2 = fd_link_jacobian(kPr, kPu1);
    const Eigen::Matrix3d fd3 = fd_link_jacobian(kPr, kPu2);
    CHECK((t.t.block<3, 3>(0, 0) - fd1).norm() / fd1.norm() < 1e-6);
    CHECK((t.t.block<3, 3>(0, 3) - fd2).norm() / fd2.norm() < 1e-6);
    CHECK((t.t.block<3, 3>(3, 6) - fd3).norm() / fd3.norm() < 1e-6);

    // off-diagonal blocks exactly zero
    CHECK(t.t.block<3, 3>(0, 6).isZero(0.0));
    CHECK(t.t.block<3, 3>(3, 0).isZero(0.0));
    CHECK(t.t.block<3, 3>(3, 3).isZero(0.0));

    // T2 equals the partials of the isolated RIS -> indoor link
    CHECK((t.t2() - link_position_jacobian(link_from_positions(kPr, kPu2))).norm() <
          1e-14);
}

TEST_CASE("jacobian_T on random geometries vs finite differences") {
    Rng rng(23);
    for (int i = 0; i < 50; ++i) {
        const Position3D anchor(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5));
        LinkGeometry link{rng.uniform(-pi, pi), rng.uniform(-1.3, 1.3),
                          rng.uniform(0.5, 10.0)};
        const Position3D target = anchor + link.d * direction_vector(link);
        const Eigen::Matrix3d analytic = link_position_jacobian(link);
        const Eigen::Matrix3d fd = fd_link_jacobian(anchor, target);
        CHECK((analytic - fd).norm() / fd.norm() < 1e-6);
    }
}

TEST_CASE("gimbal singularity is rejected") {
    CHECK_THROWS_AS(link_position_jacobian({0.3, pi / 2, 2.0}), GimbalSingularityError);
    CHECK_THROWS_AS(jacobian_T(kPb, kPr, Position3D(0, 0, 12), kPu2),
                    GimbalSingularityError);
}
