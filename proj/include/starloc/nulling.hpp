// SPDX-License-Identifier: Apache-2.0
#ifndef STARLOC_NULLING_HPP
#define STARLOC_NULLING_HPP

#include <Eigen/Core>

#include "starloc/signal_model.hpp"

namespace starloc {

// rows form an orthonormal basis of the left null space of the two
// interference matrices; U y = gamma_i U A_i h_i + U n with U n still white
struct NullingOperator {
    Eigen::MatrixXcd u;  // R x KM

    Eigen::Index retained() const { return u.rows(); }
};

// target in {1, 2, 3}; nulls the combined matrix of the other two
// (singular values below 1e-10 * sigma_max are treated as zero).
// Throws InsufficientOverheadError when the left null space is empty.
NullingOperator nulling_operator(int target, const MeasurementMatrices& mm);

}  // namespace starloc

#endif
