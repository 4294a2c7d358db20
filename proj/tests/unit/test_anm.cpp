// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include <Eigen/Dense>

#include "doctest.h"
#include "grid_oracle.hpp"
#include "starloc/anm.hpp"
#include "starloc/channel.hpp"
#include "starloc/rng.hpp"

using namespace starloc;

namespace {

const double kLambda = 0.01;

Eigen::VectorXcd grid_atom(int nx, int nz, double x1, double x2, double lambda) {
    const ArrayGeometry geom = ArrayGeometry::half_wavelength(nx, nz, lambda);
    return array_response(geom, {x1, x2, 1.0}, lambda);
}

}  // namespace

TEST_CASE("two-level Toeplitz map round trip") {
    const TwoLevelToeplitzMap map(3, 2);
    Rng rng(3);
    // build a Hermitian-consistent lag array from a random vector's outer product
    Eigen::VectorXcd v(map.dim());
    for (int i = 0; i < map.dim(); ++i) v(i) = rng.complex_normal(1.0);
    const Eigen::MatrixXcd lags = map.average_lags(v * v.adjoint());
    const Eigen::MatrixXcd toep = map.toeplitz(lags);
    CHECK((toep - toep.adjoint()).norm() < 1e-12);
    // averaging a Toeplitz matrix returns its own lags
    CHECK((map.average_lags(toep) - lags).norm() < 1e-12);

    // the outer product of a grid atom is exactly 2-level Toeplitz
    const Eigen::VectorXcd atom = grid_atom(3, 2, 0.7, -0.25, kLambda);
    const Eigen::MatrixXcd outer = atom * atom.adjoint();
    const Eigen::MatrixXcd fitted = map.toeplitz(map.average_lags(outer));
    CHECK((fitted - outer).norm() < 1e-10);
}

TEST_CASE("anm zero observation yields the zero solution") {
    const int nx = 2, nz = 2;
    const Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(4, 4);
    AnmConfig cfg;
    cfg.solver_tol = 1e-9;
    const AnmResult res =
        anm_denoise(Eigen::VectorXcd::Zero(4), a, 1.0, 0.3, cfg, nx, nz);
    CHECK(res.converged);
    CHECK(res.h_hat.norm() < 1e-8);
}

TEST_CASE("anm recovers a noiseless sparsity-one channel (grid oracle)") {
    const int nx = 2, nz = 2;
    const double x1 = 1.9, x2 = -0.42;
    const cplx amp = std::polar(0.8, 1.1);
    const Eigen::VectorXcd h = amp * grid_atom(nx, nz, x1, x2, kLambda);

    const Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(4, 4);
    const double gamma = 1.7;
    const Eigen::VectorXcd b = gamma * h;

    AnmConfig cfg;
    cfg.solver_tol = 1e-9;
    cfg.max_iters = 50000;
    const AnmResult res = anm_denoise(b, a, gamma, 1e-6, cfg, nx, nz);
    REQUIRE(res.converged);
    CHECK((res.h_hat - h).norm() / h.norm() < 1e-3);

    // independent oracle: dense grid search at 1e-3 resolution finds the atom
    const auto oracle = starloc_tests::grid_search_atom(b, a, gamma, nx, nz, 1e-3);
    CHECK(std::abs(oracle.x1 - x1) < 2e-3);
    CHECK(std::abs(oracle.x2 - x2) < 2e-3);

    // PSD certificate feasibility
    const Eigen::MatrixXcd block = res.certificate.assemble(res.h_hat);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(block);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-8 * std::abs(block.trace()));
}

TEST_CASE("anm denoises through a wide projected operator") {
    // taller randomized operator, noise present: the solution should stay
    // closer to the truth than the raw least-squares fit
    const int nx = 3, nz = 3, t_dim = 9, rows = 40;
    Rng rng(17);
    Eigen::MatrixXcd a(rows, t_dim);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < t_dim; ++c) a(r, c) = rng.complex_normal(1.0 / rows);
    }
    const Eigen::VectorXcd h = std::polar(1.0, 0.3) * grid_atom(nx, nz, 0.9, 0.2, kLambda);
    const double gamma = 2.0;
    const double sigma = 0.15;
    Eigen::VectorXcd b = gamma * (a * h);
    for (int r = 0; r < rows; ++r) b(r) += rng.complex_normal(sigma * sigma);

    AnmConfig cfg;
    const double mu = anm_mu(sigma, t_dim, 0.5);
    const AnmResult res = anm_denoise(b, a, gamma, mu, cfg, nx, nz);
    REQUIRE(res.converged);

    const Eigen::MatrixXcd gram = gamma * gamma * (a.adjoint() * a);
    const Eigen::VectorXcd ls =
        gram.ldlt().solve(gamma * (a.adjoint() * b));
    CHECK((res.h_hat - h).norm() < (ls - h).norm());

    const Eigen::MatrixXcd block = res.certificate.assemble(res.h_hat);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(block);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-6 * std::abs(block.trace()));
}
