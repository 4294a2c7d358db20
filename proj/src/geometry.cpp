// SPDX-License-Identifier: Apache-2.0
#include "starloc/geometry.hpp"

#include <cmath>

namespace starloc {

Eigen::Vector3d direction_vector(const LinkGeometry& link) {
    const double ct = std::cos(link.theta), st = std::sin(link.theta);
    const double cp = std::cos(link.phi), sp = std::sin(link.phi);
    return {ct * cp, st * cp, sp};
}

LinkGeometry link_from_positions(const Position3D& anchor, const Position3D& target) {
    const Eigen::Vector3d delta = target - anchor;
    const double d = delta.norm();
    if (!(d > 0.0)) {
        throw DegenerateGeometryError("link_from_positions: anchor and target coincide");
    }
    const Eigen::Vector3d xi = delta / d;
    LinkGeometry link;
    link.d = d;
    link.phi = std::asin(std::clamp(xi.z(), -1.0, 1.0));
    link.theta = std::atan2(xi.y(), xi.x());
    return link;
}

Position3D map_indoor(const Position3D& p_r, const LinkGeometry& link3) {
    if (!link3.valid()) throw DegenerateGeometryError("map_indoor: invalid link");
    return p_r + link3.d * direction_vector(link3);
}

Position3D map_outdoor_weighted(const Position3D& p_b, const Position3D& p_r,
                                const LinkGeometry& link1, const LinkGeometry& link2) {
    if (!link1.valid() || !link2.valid()) {
        throw DegenerateGeometryError("map_outdoor_weighted: invalid link");
    }
    const double d1sq = link1.d * link1.d;
    const double d2sq = link2.d * link2.d;
    const double w1 = d2sq / (d1sq + d2sq);
    const Position3D branch1 = p_b + link1.d * direction_vector(link1);
    const Position3D branch2 = p_r + link2.d * direction_vector(link2);
    return w1 * branch1 + (1.0 - w1) * branch2;
}

Eigen::Matrix3d link_position_jacobian(const LinkGeometry& link) {
    if (!(link.d > 0.0)) {
        throw DegenerateGeometryError("link_position_jacobian: zero-length link");
    }
    const double cp = std::cos(link.phi);
    if (std::abs(cp) < 1e-12) {
        throw GimbalSingularityError(
            "link_position_jacobian: elevation at +-pi/2, azimuth undefined");
    }
    const double ct = std::cos(link.theta), st = std::sin(link.theta);
    const double sp = std::sin(link.phi);
    const double d = link.d;

    Eigen::Matrix3d jac;
    // column 0: dtheta/dp = (-sin t, cos t, 0) / (d cos phi)
    jac.col(0) = Eigen::Vector3d(-st, ct, 0.0) / (d * cp);
    // column 1: dphi/dp = (-cos t sin phi, -sin t sin phi, cos phi) / d
    jac.col(1) = Eigen::Vector3d(-ct * sp, -st * sp, cp) / d;
    // column 2: dd/dp = xi
    jac.col(2) = direction_vector(link);
    return jac;
}

JacobianT jacobian_T(const Position3D& p_b, const Position3D& p_r,
                     const Position3D& p_u1, const Position3D& p_u2) {
    const LinkGeometry link1 = link_from_positions(p_b, p_u1);
    const LinkGeometry link2 = link_from_positions(p_r, p_u1);
    const LinkGeometry link3 = link_from_positions(p_r, p_u2);

    JacobianT out;
    out.t.block<3, 3>(0, 0) = link_position_jacobian(link1);
    out.t.block<3, 3>(0, 3) = link_position_jacobian(link2);
    out.t.block<3, 3>(3, 6) = link_position_jacobian(link3);
    return out;
}

}  // namespace starloc
