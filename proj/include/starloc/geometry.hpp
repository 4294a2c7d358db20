// SPDX-License-Identifier: Apache-2.0
#ifndef STARLOC_GEOMETRY_HPP
#define STARLOC_GEOMETRY_HPP

#include <Eigen/Core>

#include "starloc/common.hpp"

namespace starloc {

using Position3D = Eigen::Vector3d;

// One propagation link described by azimuth, elevation and range. The
// direction vector is xi = [cos(theta)cos(phi), sin(theta)cos(phi), sin(phi)],
// so target = anchor + d * xi.
//
// Azimuth is stored over the full (-pi, pi] range; a planar array only
// identifies theta up to sign (front/back ambiguity), and the estimator's
// canonical atom range [0, pi] together with a side hint covers that.
struct LinkGeometry {
    double theta = 0.0;  // azimuth, rad
    double phi = 0.0;    // elevation, rad in [-pi/2, pi/2]
    double d = 0.0;      // range, m

    bool valid() const {
        return std::isfinite(theta) && std::isfinite(phi) && std::isfinite(d) &&
               d > 0.0 && theta >= -pi && theta <= pi && phi >= -pi / 2 &&
               phi <= pi / 2;
    }
};

// unit direction vector xi(theta, phi); ||xi|| = 1
Eigen::Vector3d direction_vector(const LinkGeometry& link);

// recover (theta, phi, d) such that target = anchor + d * xi
// throws DegenerateGeometryError for coincident points
LinkGeometry link_from_positions(const Position3D& anchor, const Position3D& target);

// p_U2 = p_R + d3 * xi3
Position3D map_indoor(const Position3D& p_r, const LinkGeometry& link3);

// weighted fusion of the two outdoor branches,
// w1 = d2^2 / (d1^2 + d2^2) (weight inversely proportional to path loss)
Position3D map_outdoor_weighted(const Position3D& p_b, const Position3D& p_r,
                                const LinkGeometry& link1, const LinkGeometry& link2);

// 3x3 block of partials for a single link: entry (i, j) = d(param_j)/d(coord_i)
// with params ordered (theta, phi, d) and coords (x, y, z) of the target.
// throws GimbalSingularityError at phi = +-pi/2
Eigen::Matrix3d link_position_jacobian(const LinkGeometry& link);

// Jacobian T with [T]_ij = d(nu_j)/d(kappa_i), where
// nu = [theta1, phi1, d1, theta2, phi2, d2, theta3, phi3, d3] and
// kappa = [p_U1; p_U2]. Block-diagonal: T1 (3x6) for the outdoor MS,
// T2 (3x3) for the indoor MS; off-diagonal blocks are exactly zero.
struct JacobianT {
    Eigen::Matrix<double, 6, 9> t = Eigen::Matrix<double, 6, 9>::Zero();

    Eigen::Matrix<double, 3, 6> t1() const { return t.block<3, 6>(0, 0); }
    Eigen::Matrix3d t2() const { return t.block<3, 3>(3, 6); }
    // split T1 = [T1_tilde, T1_bar] used by the schedule-design objective
    Eigen::Matrix3d t1_tilde() const { return t.block<3, 3>(0, 0); }
    Eigen::Matrix3d t1_bar() const { return t.block<3, 3>(0, 3); }
};

JacobianT jacobian_T(const Position3D& p_b, const Position3D& p_r,
                     const Position3D& p_u1, const Position3D& p_u2);

}  // namespace starloc

#endif
