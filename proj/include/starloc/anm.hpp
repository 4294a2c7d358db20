// SPDX-License-Identifier: Apache-2.0
#ifndef STARLOC_ANM_HPP
#define STARLOC_ANM_HPP

#include <Eigen/Core>

#include "starloc/common.hpp"

namespace starloc {

struct AnmConfig {
    double mu_scale = 0.5;    // mu = mu_scale * sigma * sqrt(T log T)
    double solver_tol = 1e-7; // relative primal/dual residual target
    int max_iters = 20000;
    double step = 1.0;        // initial ADMM penalty scale
};

// regularization weight of the atomic-norm penalty
double anm_mu(double sigma, int t_dim, double mu_scale);

// lag bookkeeping for vectors on an nx x nz grid (x-major, index = m*nz + n);
// outer products of grid atoms are 2-level Toeplitz in the lag pair (p, q)
class TwoLevelToeplitzMap {
  public:
    TwoLevelToeplitzMap(int nx, int nz) : nx_(nx), nz_(nz) {}

    int dim() const { return nx_ * nz_; }
    int nx() const { return nx_; }
    int nz() const { return nz_; }

    // T x T matrix with entry ((m,n),(m',n')) = u(m - m', n - n');
    // u is (2nx-1) x (2nz-1) with lag (p, q) stored at (p + nx - 1, q + nz - 1)
    Eigen::MatrixXcd toeplitz(const Eigen::MatrixXcd& u) const;

    // least-squares fit of lag parameters to a T x T matrix: the mean of the
    // entries along each 2-level diagonal
    Eigen::MatrixXcd average_lags(const Eigen::MatrixXcd& mat) const;

  private:
    int nx_;
    int nz_;
};

// dual certificate of the atomic-norm SDP: the PSD block is
// [[Toep(u2), h], [h^H, t]]
struct ToeplitzCertificate {
    Eigen::MatrixXcd u2;  // (2nx-1) x (2nz-1) lag parameters
    double t = 0.0;
    int nx = 0;
    int nz = 0;

    Eigen::MatrixXcd assemble(const Eigen::VectorXcd& h) const;
};

struct AnmResult {
    Eigen::VectorXcd h_hat;
    ToeplitzCertificate certificate;
    bool converged = false;
    int iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
};

// Solves the regularized atomic-norm denoising problem
//   min_h  mu ||h||_A + 1/2 || y_proj - gamma a_proj h ||_2^2
// through its SDP characterization
//   ||h||_A = inf { Tr(Toep(u))/(2T) + t/2 :  [[Toep(u), h],[h^H, t]] >= 0 }
// with an ADMM operator-splitting scheme: closed-form updates for the
// structured block, PSD-cone projection via eigendecomposition, and a cached
// factorization for the least-squares term. Returns the best iterate flagged
// non-converged when the iteration limit is reached.
AnmResult anm_denoise(const Eigen::VectorXcd& y_proj, const Eigen::MatrixXcd& a_proj,
                      double gamma, double mu, const AnmConfig& cfg, int nx, int nz);

}  // namespace starloc

#endif
