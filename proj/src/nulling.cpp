// SPDX-License-Identifier: Apache-2.0
#include "starloc/nulling.hpp"

#include <Eigen/Dense>

namespace starloc {

NullingOperator nulling_operator(int target, const MeasurementMatrices& mm) {
    if (target < 1 || target > 3) throw ConfigError("nulling_operator: target must be 1..3");

    Eigen::MatrixXcd combined(mm.a1.rows(),
                              (target == 1 ? mm.a2.cols() + mm.a3.cols()
                               : target == 2 ? mm.a1.cols() + mm.a3.cols()
                                             : mm.a1.cols() + mm.a2.cols()));
    switch (target) {
        case 1:
            combined << mm.a2, mm.a3;
            break;
        case 2:
            combined << mm.a1, mm.a3;
            break;
        default:
            combined << mm.a1, mm.a2;
            break;
    }

    const Eigen::Index km = combined.rows();
    if (km <= combined.cols()) {
        throw InsufficientOverheadError(
            "nulling_operator: KM must exceed the interference column count");
    }

    // thin SVD fixes the numerical rank and an exact orthonormal basis of the
    // column space; completing that basis gives the left null space
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(combined, Eigen::ComputeThinU);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double tol = 1e-10 * sv(0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > tol) ++rank;
    if (km - rank <= 0) {
        throw InsufficientOverheadError("nulling_operator:"
                                        " interference spans the whole observation space");
    }

    const Eigen::MatrixXcd range_basis = svd.matrixU().leftCols(rank);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(range_basis);
    Eigen::MatrixXcd q_full = qr.householderQ() * Eigen::MatrixXcd::Identity(km, km);

    NullingOperator op;
    op.u = q_full.rightCols(km - rank).adjoint();
    return op;
}

}  // namespace starloc
