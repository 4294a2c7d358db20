// SPDX-License-Identifier: Apache-2.0
#ifndef STARLOC_SCENARIO_HPP
#define STARLOC_SCENARIO_HPP

#include "starloc/channel.hpp"
#include "starloc/geometry.hpp"

namespace starloc {

// everything the BS knows a priori: anchor positions, array layouts,
// path-loss model and carrier wavelength
struct SystemModel {
    Position3D p_b = Position3D::Zero();
    Position3D p_r = Position3D::Zero();
    ArrayGeometry bs;
    ArrayGeometry ris;
    PathLossModel pathloss = PathLossModel::squared_distance();
    double lambda = 0.0;  // m

    LinkGeometry link4() const { return link_from_positions(p_b, p_r); }
};

// system plus the (ground-truth) MS positions; simulation-side state
struct Scenario {
    SystemModel sys;
    Position3D p_u1 = Position3D::Zero();  // outdoor MS
    Position3D p_u2 = Position3D::Zero();  // indoor MS

    LinkGeometry link1() const { return link_from_positions(sys.p_b, p_u1); }
    LinkGeometry link2() const { return link_from_positions(sys.p_r, p_u1); }
    LinkGeometry link3() const { return link_from_positions(sys.p_r, p_u2); }
    LinkGeometry link4() const { return sys.link4(); }

    JacobianT jacobian() const { return jacobian_T(sys.p_b, sys.p_r, p_u1, p_u2); }
};

// default wavelength: 28 GHz carrier
inline double default_lambda() { return speed_of_light / 28.0e9; }

// benchmark scenario: BS (0,0,8), RIS (2,2,5), outdoor MS (5,1,2),
// indoor MS (1,5,2); square UPAs with half-wavelength spacing
Scenario benchmark_scenario(int m, int n, double lambda = default_lambda(),
                            PathLossModel plm = PathLossModel::squared_distance());

// factor an element count into the squarest nx * nz = total grid
std::pair<int, int> square_factor(int total);

}  // namespace starloc

#endif
