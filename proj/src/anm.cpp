// SPDX-License-Identifier: Apache-2.0
#include "starloc/anm.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace starloc {

double anm_mu(double sigma, int t_dim, double mu_scale) {
    if (t_dim < 1) throw ConfigError("anm_mu: dimension must be positive");
    if (t_dim == 1) return mu_scale * sigma;  // log(1) = 0 would disable the penalty
    return mu_scale * sigma * std::sqrt(t_dim * std::log(static_cast<double>(t_dim)));
}

Eigen::MatrixXcd TwoLevelToeplitzMap::toeplitz(const Eigen::MatrixXcd& u) const {
    const int t = dim();
    Eigen::MatrixXcd out(t, t);
    for (int i = 0; i < t; ++i) {
        const int mi = i / nz_, ni = i % nz_;
        for (int j = 0; j < t; ++j) {
            const int mj = j / nz_, nj = j % nz_;
            out(i, j) = u(mi - mj + nx_ - 1, ni - nj + nz_ - 1);
        }
    }
    return out;
}

Eigen::MatrixXcd TwoLevelToeplitzMap::average_lags(const Eigen::MatrixXcd& mat) const {
    const int t = dim();
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(2 * nx_ - 1, 2 * nz_ - 1);
    Eigen::MatrixXd count = Eigen::MatrixXd::Zero(2 * nx_ - 1, 2 * nz_ - 1);
    for (int i = 0; i < t; ++i) {
        const int mi = i / nz_, ni = i % nz_;
        for (int j = 0; j < t; ++j) {
            const int mj = j / nz_, nj = j % nz_;
            sum(mi - mj + nx_ - 1, ni - nj + nz_ - 1) += mat(i, j);
            count(mi - mj + nx_ - 1, ni - nj + nz_ - 1) += 1.0;
        }
    }
    return sum.cwiseQuotient(count.cast<cplx>());
}

Eigen::MatrixXcd ToeplitzCertificate::assemble(const Eigen::VectorXcd& h) const {
    const TwoLevelToeplitzMap map(nx, nz);
    const int t_dim = map.dim();
    if (h.size() != t_dim) throw DimensionMismatchError("ToeplitzCertificate: size mismatch");
    Eigen::MatrixXcd block(t_dim + 1, t_dim + 1);
    block.topLeftCorner(t_dim, t_dim) = map.toeplitz(u2);
    block.block(0, t_dim, t_dim, 1) = h;
    block.block(t_dim, 0, 1, t_dim) = h.adjoint();
    block(t_dim, t_dim) = t;
    return block;
}

namespace {

Eigen::MatrixXcd project_psd(const Eigen::MatrixXcd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(a);
    const Eigen::VectorXd clamped = eig.eigenvalues().cwiseMax(0.0);
    return eig.eigenvectors() * clamped.asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace

AnmResult anm_denoise(const Eigen::VectorXcd& y_proj, const Eigen::MatrixXcd& a_proj,
                      double gamma, double mu, const AnmConfig& cfg, int nx, int nz) {
    const TwoLevelToeplitzMap map(nx, nz);
    const int t_dim = map.dim();
    if (a_proj.cols() != t_dim) {
        throw DimensionMismatchError("anm_denoise: a_proj columns must equal nx*nz");
    }
    if (a_proj.rows() != y_proj.size()) {
        throw DimensionMismatchError("anm_denoise: y_proj/a_proj sizes disagree");
    }
    if (!(gamma > 0.0)) throw ConfigError("anm_denoise: gamma must be positive");
    if (!(mu >= 0.0)) throw ConfigError("anm_denoise: mu must be nonnegative");

    const Eigen::MatrixXcd gram = gamma * gamma * (a_proj.adjoint() * a_proj);
    const Eigen::VectorXcd atb = gamma * (a_proj.adjoint() * y_proj);

    double rho = cfg.step * std::max({gram.real().trace() / t_dim, mu, 1e-12});
    Eigen::LLT<Eigen::MatrixXcd> llt(
        gram + 2.0 * rho * Eigen::MatrixXcd::Identity(t_dim, t_dim));

    // warm start from the ridge-regularized least-squares fit
    Eigen::VectorXcd h = llt.solve(atb + Eigen::VectorXcd::Zero(t_dim));
    Eigen::MatrixXcd u = map.average_lags(h * h.adjoint());
    double t_scalar = h.squaredNorm();

    const int dim = t_dim + 1;
    auto assemble = [&](const Eigen::MatrixXcd& lag, const Eigen::VectorXcd& hh,
                        double tt) {
        Eigen::MatrixXcd s(dim, dim);
        s.topLeftCorner(t_dim, t_dim) = map.toeplitz(lag);
        s.block(0, t_dim, t_dim, 1) = hh;
        s.block(t_dim, 0, 1, t_dim) = hh.adjoint();
        s(t_dim, t_dim) = tt;
        return s;
    };

    Eigen::MatrixXcd s_mat = assemble(u, h, t_scalar);
    Eigen::MatrixXcd z = project_psd(s_mat);
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(dim, dim);

    AnmResult result;
    double primal = 0.0, dual = 0.0;
    int iter = 0;
    for (; iter < cfg.max_iters; ++iter) {
        // structured-block update against V = Z + W
        Eigen::MatrixXcd v = z + w;
        v = 0.5 * (v + v.adjoint()).eval();

        t_scalar = v(t_dim, t_dim).real() - mu / (2.0 * rho);
        h = llt.solve(atb + 2.0 * rho * v.block(0, t_dim, t_dim, 1));
        u = map.average_lags(v.topLeftCorner(t_dim, t_dim));
        u(nx - 1, nz - 1) = u(nx - 1, nz - 1).real() - mu / (2.0 * rho * t_dim);

        const Eigen::MatrixXcd s_prev = std::move(s_mat);
        s_mat = assemble(u, h, t_scalar);

        z = project_psd(s_mat - w);
        w += z - s_mat;

        const double scale = std::max({1.0, s_mat.norm(), z.norm()});
        primal = (z - s_mat).norm() / scale;
        dual = rho * (s_mat - s_prev).norm() / scale;
        if (primal < cfg.solver_tol && dual < cfg.solver_tol) {
            ++iter;
            result.converged = true;
            break;
        }

        // residual balancing (scaled-dual form: W carries 1/rho)
        if ((iter + 1) % 25 == 0) {
            if (primal > 10.0 * dual) {
                rho *= 2.0;
                w *= 0.5;
                llt.compute(gram + 2.0 * rho * Eigen::MatrixXcd::Identity(t_dim, t_dim));
            } else if (dual > 10.0 * primal) {
                rho *= 0.5;
                w *= 2.0;
                llt.compute(gram + 2.0 * rho * Eigen::MatrixXcd::Identity(t_dim, t_dim));
            }
        }
    }

    result.h_hat = h;
    result.certificate.u2 = u;
    result.certificate.t = t_scalar;
    result.certificate.nx = nx;
    result.certificate.nz = nz;
    result.iterations = iter;
    result.primal_residual = primal;
    result.dual_residual = dual;
    return result;
}

}  // namespace starloc
