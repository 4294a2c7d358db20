// SPDX-License-Identifier: Apache-2.0
#include "starloc/fisher.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

namespace starloc {

ChannelParamVector nu_from_scenario(const Scenario& sc) {
    ChannelParamVector nu;
    const LinkGeometry l1 = sc.link1(), l2 = sc.link2(), l3 = sc.link3();
    nu << l1.theta, l1.phi, l1.d, l2.theta, l2.phi, l2.d, l3.theta, l3.phi, l3.d;
    return nu;
}

std::array<LinkGeometry, 3> links_from_params(const ChannelParamVector& nu) {
    std::array<LinkGeometry, 3> links;
    for (int i = 0; i < 3; ++i) {
        links[i].theta = nu(3 * i);
        links[i].phi = nu(3 * i + 1);
        links[i].d = nu(3 * i + 2);
    }
    return links;
}

Eigen::VectorXcd mean_from_params(const ChannelParamVector& nu,
                                  const MeasurementMatrices& mm, const PowerConfig& pc,
                                  const SystemModel& sys) {
    const auto links = links_from_params(nu);
    const ChannelVector h1 = los_channel(sys.bs, links[0], sys.pathloss, sys.lambda);
    const ChannelVector h2 = los_channel(sys.ris, links[1], sys.pathloss, sys.lambda);
    const ChannelVector h3 = los_channel(sys.ris, links[2], sys.pathloss, sys.lambda);
    return noiseless_mean(mm, h1, h2, h3, pc);
}

Eigen::MatrixXcd mean_jacobian(const ChannelParamVector& nu, const MeasurementMatrices& mm,
                               const PowerConfig& pc, const SystemModel& sys) {
    const auto links = links_from_params(nu);
    for (const auto& link : links) {
        if (!link.valid()) throw DegenerateGeometryError("mean_jacobian: invalid link");
    }
    const Eigen::MatrixXcd q1 =
        los_channel_jacobian(sys.bs, links[0], sys.pathloss, sys.lambda);
    const Eigen::MatrixXcd q2 =
        los_channel_jacobian(sys.ris, links[1], sys.pathloss, sys.lambda);
    const Eigen::MatrixXcd q3 =
        los_channel_jacobian(sys.ris, links[2], sys.pathloss, sys.lambda);

    Eigen::MatrixXcd jac(mm.a1.rows(), 9);
    jac.block(0, 0, jac.rows(), 3) = pc.eta1 * (mm.a1 * q1);
    jac.block(0, 3, jac.rows(), 3) = pc.eta1 * pc.eps2 * (mm.a2 * q2);
    jac.block(0, 6, jac.rows(), 3) = pc.eta2 * pc.eps1 * (mm.a3 * q3);
    return jac;
}

Matrix9d fisher_nu(const Eigen::MatrixXcd& jac, double p, double sigma2) {
    if (!(p > 0.0) || !(sigma2 > 0.0)) {
        throw ConfigError("fisher_nu: p and sigma2 must be positive");
    }
    const Eigen::MatrixXcd gram = jac.adjoint() * jac;
    Matrix9d j = (p / sigma2) * gram.real();
    // enforce exact symmetry against rounding
    j = 0.5 * (j + j.transpose()).eval();
    return j;
}

Matrix6d position_fim(const Matrix9d& j_nu, const JacobianT& t) {
    Matrix6d j = t.t * j_nu * t.t.transpose();
    j = 0.5 * (j + j.transpose()).eval();
    return j;
}

Eigen::MatrixXd invert_psd(const Eigen::MatrixXd& a, double cond_limit) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
    if (eig.info() != Eigen::Success) {
        throw UnidentifiableConfigurationError("invert_psd: eigendecomposition failed");
    }
    const Eigen::VectorXd& evals = eig.eigenvalues();
    const double lam_max = evals.maxCoeff();
    const double lam_min = evals.minCoeff();
    if (!(lam_max > 0.0) || lam_min <= 0.0 || lam_max / lam_min > cond_limit) {
        std::ostringstream msg;
        msg << "invert_psd: singular or ill-conditioned matrix (min eigenvalue "
            << lam_min << ", max " << lam_max << "); near-null direction [";
        const Eigen::VectorXd dir = eig.eigenvectors().col(0);
        for (Eigen::Index i = 0; i < dir.size(); ++i) {
            msg << (i ? ", " : "") << dir(i);
        }
        msg << "]";
        throw UnidentifiableConfigurationError(msg.str());
    }
    return eig.eigenvectors() * evals.cwiseInverse().asDiagonal() *
           eig.eigenvectors().transpose();
}

CrlbReport crlb_rmse(const Matrix6d& j_kappa) {
    const Eigen::MatrixXd inv = invert_psd(j_kappa);
    CrlbReport report;
    report.rmse_u1 = std::sqrt(inv.block<3, 3>(0, 0).trace());
    report.rmse_u2 = std::sqrt(inv.block<3, 3>(3, 3).trace());
    report.param_bounds.setConstant(std::numeric_limits<double>::quiet_NaN());
    return report;
}

CrlbReport crlb_report(const Matrix9d& j_nu, const JacobianT& t) {
    CrlbReport report = crlb_rmse(position_fim(j_nu, t));
    const Eigen::MatrixXd inv_nu = invert_psd(j_nu);
    report.param_bounds = inv_nu.diagonal().cwiseSqrt();
    return report;
}

std::pair<Eigen::Matrix3d, Eigen::Matrix3d> position_crlb_blocks_schur(
    const Matrix6d& j_kappa) {
    const Eigen::Matrix3d a = j_kappa.block<3, 3>(0, 0);
    const Eigen::Matrix3d b = j_kappa.block<3, 3>(0, 3);
    const Eigen::Matrix3d c = j_kappa.block<3, 3>(3, 3);
    const Eigen::Matrix3d c_inv = invert_psd(c);
    const Eigen::Matrix3d a_inv = invert_psd(a);
    const Eigen::Matrix3d block1 = invert_psd(a - b * c_inv * b.transpose());
    const Eigen::Matrix3d block2 = invert_psd(c - b.transpose() * a_inv * b);
    return {block1, block2};
}

double principal_angle_objective(const Scenario& sc, const MeasurementMatrices& mm,
                                 const PowerConfig& pc, PrincipalAngleParts* parts) {
    const Eigen::MatrixXcd q1 =
        los_channel_jacobian(sc.sys.bs, sc.link1(), sc.sys.pathloss, sc.sys.lambda);
    const Eigen::MatrixXcd q2 =
        los_channel_jacobian(sc.sys.ris, sc.link2(), sc.sys.pathloss, sc.sys.lambda);
    const Eigen::MatrixXcd q3 =
        los_channel_jacobian(sc.sys.ris, sc.link3(), sc.sys.pathloss, sc.sys.lambda);

    Eigen::MatrixXcd g1(mm.a1.rows(), 6);
    g1.leftCols(3) = pc.eta1 * (mm.a1 * q1);
    g1.rightCols(3) = pc.eta1 * pc.eps2 * (mm.a2 * q2);
    const Eigen::MatrixXcd g2 = pc.eta2 * pc.eps1 * (mm.a3 * q3);

    const JacobianT t = sc.jacobian();
    const Eigen::MatrixXcd g1_hat = g1 * t.t1().transpose().cast<cplx>();
    const Eigen::MatrixXcd g2_hat = g2 * t.t2().transpose().cast<cplx>();

    const double objective = (g2_hat.adjoint() * g1_hat).norm();
    const double scale = g1_hat.norm() * g2_hat.norm();
    if (parts) {
        parts->g1 = std::move(g1);
        parts->g2 = g2;
        parts->g1_hat = g1_hat;
        parts->g2_hat = g2_hat;
        parts->objective = objective;
        parts->relative = scale > 0.0 ? objective / scale : 0.0;
    }
    return objective;
}

}  // namespace starloc
