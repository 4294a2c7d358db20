// SPDX-License-Identifier: Apache-2.0
#ifndef STARLOC_FISHER_HPP
#define STARLOC_FISHER_HPP

#include <array>

#include <Eigen/Core>

#include "starloc/scenario.hpp"
#include "starloc/signal_model.hpp"

namespace starloc {

// nu = [theta1, phi1, d1, theta2, phi2, d2, theta3, phi3, d3]
using ChannelParamVector = Eigen::Matrix<double, 9, 1>;
using Matrix9d = Eigen::Matrix<double, 9, 9>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;

ChannelParamVector nu_from_scenario(const Scenario& sc);
std::array<LinkGeometry, 3> links_from_params(const ChannelParamVector& nu);

// mu(nu) with the channels rebuilt from nu (links 1..3); the RIS-BS channel
// is fixed inside the measurement matrices
Eigen::VectorXcd mean_from_params(const ChannelParamVector& nu,
                                  const MeasurementMatrices& mm, const PowerConfig& pc,
                                  const SystemModel& sys);

// KM x 9 matrix of analytic partials dmu/dnu_j
Eigen::MatrixXcd mean_jacobian(const ChannelParamVector& nu, const MeasurementMatrices& mm,
                               const PowerConfig& pc, const SystemModel& sys);

// [J(nu)]_ij = (P / sigma^2) Re{ dmu^H/dnu_i dmu/dnu_j }
Matrix9d fisher_nu(const Eigen::MatrixXcd& jac, double p, double sigma2);

// J(kappa) = T J(nu) T^T
Matrix6d position_fim(const Matrix9d& j_nu, const JacobianT& t);

struct FisherMatrices {
    Matrix9d j_nu;
    Matrix6d j_kappa;
};

struct CrlbReport {
    double rmse_u1 = 0.0;  // m, lower bound for the outdoor MS
    double rmse_u2 = 0.0;  // m, lower bound for the indoor MS
    // sqrt of the diagonal of J^{-1}(nu); NaN when built from J(kappa) alone
    ChannelParamVector param_bounds;
};

// RMSE bounds from the 6x6 position FIM:
// sqrt(tr([J^{-1}]_{1:3,1:3})) and sqrt(tr([J^{-1}]_{4:6,4:6})).
// Throws UnidentifiableConfigurationError for singular / ill-conditioned J,
// naming the near-null direction.
CrlbReport crlb_rmse(const Matrix6d& j_kappa);

// full report including the nine per-parameter bounds from J^{-1}(nu)
CrlbReport crlb_report(const Matrix9d& j_nu, const JacobianT& t);

// symmetric-eigendecomposition inverse with a condition-number guard
Eigen::MatrixXd invert_psd(const Eigen::MatrixXd& a, double cond_limit = 1e12);

// alternative route to the diagonal blocks of J^{-1}(kappa) via the Schur
// complement; cross-checks the direct inverse
std::pair<Eigen::Matrix3d, Eigen::Matrix3d> position_crlb_blocks_schur(
    const Matrix6d& j_kappa);

struct PrincipalAngleParts {
    Eigen::MatrixXcd g1;      // KM x 6
    Eigen::MatrixXcd g2;      // KM x 3
    Eigen::MatrixXcd g1_hat;  // KM x 3
    Eigen::MatrixXcd g2_hat;  // KM x 3
    double objective = 0.0;   // || g2_hat^H g1_hat ||_F
    double relative = 0.0;    // objective / (||g1_hat|| ||g2_hat||)
};

// schedule-design objective || Ghat2^H Ghat1 ||_F; zero iff the subspaces of
// the two MSs' position information are orthogonal (principal angle pi/2)
double principal_angle_objective(const Scenario& sc, const MeasurementMatrices& mm,
                                 const PowerConfig& pc,
                                 PrincipalAngleParts* parts = nullptr);

}  // namespace starloc

#endif
