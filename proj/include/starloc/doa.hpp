// SPDX-License-Identifier: Apache-2.0
#ifndef STARLOC_DOA_HPP
#define STARLOC_DOA_HPP

#include <Eigen/Core>

#include "starloc/channel.hpp"

namespace starloc {

struct AngleEstimate {
    double theta = 0.0;            // rad, canonical range [0, pi]
    double phi = 0.0;              // rad, [-pi/2, pi/2]
    double mismatch_ratio = 0.0;   // sigma2/sigma1 of the reshaped channel
    bool mismatch_warning = false; // ratio > 0.5: rank-1 model violated
};

// Spatial frequency omega of the dominant complex sinusoid x[k] ~ e^{j omega k}
// via root-MUSIC on the forward-backward averaged rank-1 covariance: the root
// of the MUSIC polynomial inside the closed unit disk with largest modulus.
// Returns 0 for a single-element axis.
double root_music_frequency(const Eigen::VectorXcd& axis);

// Reshape h_hat onto the nz x nx grid, factor it rank-1 by SVD, run per-axis
// root-MUSIC, and invert the direction-cosine map u_x = cos(theta)cos(phi),
// u_z = sin(phi). Throws InvalidFrequencyError when a recovered frequency
// leaves the valid range by more than the 1e-6 clamping tolerance.
AngleEstimate extract_angles(const Eigen::VectorXcd& h_hat, const ArrayGeometry& geom,
                             double lambda);

}  // namespace starloc

#endif
