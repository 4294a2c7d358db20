// SPDX-License-Identifier: Apache-2.0
#ifndef STARLOC_CHANNEL_HPP
#define STARLOC_CHANNEL_HPP

#include <span>
#include <vector>

#include <Eigen/Core>

#include "starloc/geometry.hpp"

namespace starloc {

// uniform planar array in the x-z plane, element (m, n) at
// (m - (nx-1)/2) * spacing_x along x and (n - (nz-1)/2) * spacing_z along z
struct ArrayGeometry {
    int nx = 1;
    int nz = 1;
    double spacing_x = 0.0;  // m
    double spacing_z = 0.0;  // m

    int size() const { return nx * nz; }

    static ArrayGeometry half_wavelength(int nx, int nz, double lambda) {
        return {nx, nz, lambda / 2.0, lambda / 2.0};
    }
};

class PathLossModel {
  public:
    enum class Kind { SquaredDistance, FreeSpace, Umi3gpp };

    static PathLossModel squared_distance() { return {Kind::SquaredDistance, 0.0}; }
    static PathLossModel free_space(double fc_khz);
    static PathLossModel umi_3gpp(double fc_ghz);

    // path loss rho(d), strictly increasing in d
    double rho(double d) const;
    double drho_dd(double d) const;
    // solve rho(d) = target by monotone bisection
    double invert(double target) const;

    Kind kind() const { return kind_; }

  private:
    PathLossModel(Kind k, double fc) : kind_(k), fc_(fc) {}
    Kind kind_;
    double fc_;  // kHz for FreeSpace, GHz for Umi3gpp
};

using ChannelVector = Eigen::VectorXcd;  // ||h||^2 = T / rho(d) for a LoS channel
using RisBsChannel = Eigen::MatrixXcd;   // rank-1 M x N

// a single NLoS component, parameterized relative to the LoS link
struct MpcComponent {
    double distance_scale = 1.0;  // > 1, component range = scale * d
    double theta_offset = 0.0;    // rad
    double phi_offset = 0.0;      // rad
};

// UPA response alpha_x(theta, phi) (x) alpha_z(phi) with unit-modulus entries
// and symmetric phase centering. Spatial frequencies follow the direction
// cosines of xi: u_x = cos(theta)cos(phi), u_z = sin(phi).
Eigen::VectorXcd array_response(const ArrayGeometry& geom, const LinkGeometry& link,
                                double lambda);

// h = e^{-j 2 pi d / lambda} / sqrt(rho(d)) * array_response
ChannelVector los_channel(const ArrayGeometry& geom, const LinkGeometry& link,
                          const PathLossModel& plm, double lambda);

// H4 = pref * a_bs(theta4, phi4) a_ris(theta4, phi4)^H  (rank one; the BS and
// RIS arrays are parallel, so one angle pair serves both sides)
RisBsChannel ris_bs_channel(const ArrayGeometry& bs_geom, const ArrayGeometry& ris_geom,
                            const LinkGeometry& link4, const PathLossModel& plm,
                            double lambda);

// h plus one LoS-shaped term per component, built from
// (scale * d, theta + dtheta, phi + dphi); throws if a perturbed angle
// leaves the valid range
ChannelVector add_mpc(const ChannelVector& h, const LinkGeometry& link,
                      std::span<const MpcComponent> comps, const ArrayGeometry& geom,
                      const PathLossModel& plm, double lambda);

// T x 3 matrix of partials [dh/dtheta, dh/dphi, dh/dd] of the LoS channel;
// these are the per-channel factors of the mean Jacobian
Eigen::MatrixXcd los_channel_jacobian(const ArrayGeometry& geom, const LinkGeometry& link,
                                      const PathLossModel& plm, double lambda);

}  // namespace starloc

#endif
