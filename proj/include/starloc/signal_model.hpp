// SPDX-License-Identifier: Apache-2.0
#ifndef STARLOC_SIGNAL_MODEL_HPP
#define STARLOC_SIGNAL_MODEL_HPP

#include <cstdint>

#include <Eigen/Core>

#include "starloc/channel.hpp"
#include "starloc/star_ris.hpp"

namespace starloc {

// Known measurement matrices of the vectorized uplink model
//   y = sqrt(P) eta1 A1 h1 + sqrt(P) eta1 eps2 A2 h2 + sqrt(P) eta2 eps1 A3 h3 + n
struct MeasurementMatrices {
    Eigen::MatrixXcd a1;  // KM x M, stacked identities
    Eigen::MatrixXcd a2;  // KM x N, block k equals H4 diag(omega_{2,k})
    Eigen::MatrixXcd a3;  // KM x N, block k equals H4 diag(omega_{1,k})
    int k = 0;
    int m = 0;
    int n = 0;
};

MeasurementMatrices build_measurement_matrices(const RisBsChannel& h4,
                                               const PhaseSchedule& s);

// mu(nu) = eta1 A1 h1 + eta1 eps2 A2 h2 + eta2 eps1 A3 h3; the sqrt(P) factor
// enters the observation and the Fisher prefactor, not mu
Eigen::VectorXcd noiseless_mean(const MeasurementMatrices& mm, const ChannelVector& h1,
                                const ChannelVector& h2, const ChannelVector& h3,
                                const PowerConfig& pc);

struct ObservationBundle {
    Eigen::VectorXcd y;  // KM
    MeasurementMatrices matrices;
    PowerConfig power;
    double sigma2 = 0.0;  // total complex noise variance per element
};

// y = sqrt(P) mu + n with n ~ CN(0, sigma2 I); reproducible from the seed
ObservationBundle synthesize_observation(const MeasurementMatrices& mm,
                                         const ChannelVector& h1, const ChannelVector& h2,
                                         const ChannelVector& h3, const PowerConfig& pc,
                                         double sigma2, std::uint64_t seed);

// uniform half-widths of the RIS-BS channel parameter uncertainty
struct H4Perturbation {
    double d_hat = 0.0;    // m
    double phi_hat = 0.0;  // rad, applies to both theta4 and phi4
};

// (d4 + U[-d_hat, d_hat], theta4 + U[-phi_hat, phi_hat], phi4 + U[-phi_hat, phi_hat])
LinkGeometry perturb_h4(const LinkGeometry& link4, const H4Perturbation& p,
                        std::uint64_t seed);

}  // namespace starloc

#endif
