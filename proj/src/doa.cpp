// SPDX-License-Identifier: Apache-2.0
#include "starloc/doa.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace starloc {

namespace {

// eigenvalues of the companion matrix of sum_i coeffs[i] z^i
Eigen::VectorXcd polynomial_roots(const Eigen::VectorXcd& coeffs) {
    Eigen::Index degree = coeffs.size() - 1;
    while (degree > 0 && std::abs(coeffs(degree)) < 1e-14 * coeffs.norm()) --degree;
    if (degree < 1) return {};
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
    companion.block(1, 0, degree - 1, degree - 1) =
        Eigen::MatrixXcd::Identity(degree - 1, degree - 1);
    companion.col(degree - 1) = -coeffs.head(degree) / coeffs(degree);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(companion, false);
    return eig.eigenvalues();
}

}  // namespace

double root_music_frequency(const Eigen::VectorXcd& axis) {
    const Eigen::Index n = axis.size();
    if (n < 2) return 0.0;
    if (!(axis.norm() > 0.0)) throw Error("root_music_frequency: zero input");

    Eigen::MatrixXcd r = axis * axis.adjoint() / axis.squaredNorm();
    // forward-backward averaging
    Eigen::MatrixXcd flipped = r.conjugate();
    flipped = flipped.rowwise().reverse().eval();
    flipped = flipped.colwise().reverse().eval();
    r = 0.5 * (r + flipped);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(r);
    const Eigen::VectorXcd signal = eig.eigenvectors().col(n - 1);
    const Eigen::MatrixXcd noise_proj =
        Eigen::MatrixXcd::Identity(n, n) - signal * signal.adjoint();

    // MUSIC polynomial sum_m c_m z^{m+n-1} with c_m the m-th diagonal sum
    Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(2 * n - 1);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = 0; l < n; ++l) {
            coeffs((l - k) + n - 1) += noise_proj(k, l);
        }
    }

    const Eigen::VectorXcd roots = polynomial_roots(coeffs);
    double best_mod = -1.0;
    cplx best_root = 0.0;
    for (Eigen::Index i = 0; i < roots.size(); ++i) {
        const double mod = std::abs(roots(i));
        if (mod <= 1.0 + 1e-9 && mod > best_mod) {
            best_mod = mod;
            best_root = roots(i);
        }
    }
    if (best_mod < 0.0) throw Error("root_music_frequency: no root inside the unit disk");
    double omega = std::arg(best_root);

    // Newton polish of the null-spectrum g(w) = a(w)^H P a(w) on the unit
    // circle; the companion-matrix roots carry ~1e-8 error, two steps reach
    // machine precision
    for (int step = 0; step < 3; ++step) {
        double g1 = 0.0, g2 = 0.0;
        for (Eigen::Index m = 1; m < n; ++m) {
            const cplx term =
                coeffs(m + n - 1) * std::polar(1.0, omega * static_cast<double>(m));
            g1 -= 2.0 * m * term.imag();
            g2 -= 2.0 * m * m * term.real();
        }
        if (!(std::abs(g2) > 1e-300)) break;
        const double delta = g1 / g2;
        if (!std::isfinite(delta) || std::abs(delta) > 0.1) break;
        omega -= delta;
    }
    return omega;
}

AngleEstimate extract_angles(const Eigen::VectorXcd& h_hat, const ArrayGeometry& geom,
                             double lambda) {
    if (h_hat.size() != geom.size()) {
        throw DimensionMismatchError("extract_angles: channel/array size mismatch");
    }
    if (!(h_hat.norm() > 0.0)) throw Error("extract_angles: zero channel vector");

    // index m*nz + n maps to column m, row n of a column-major nz x nx view
    const Eigen::Map<const Eigen::MatrixXcd> grid(h_hat.data(), geom.nz, geom.nx);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(grid, Eigen::ComputeThinU | Eigen::ComputeThinV);

    AngleEstimate est;
    if (std::min(geom.nx, geom.nz) > 1) {
        est.mismatch_ratio = svd.singularValues()(1) / svd.singularValues()(0);
        est.mismatch_warning = est.mismatch_ratio > 0.5;
    }

    // grid = a_z a_x^T => left vector ~ a_z, right vector ~ conj(a_x)
    const double omega_z = root_music_frequency(svd.matrixU().col(0));
    const double omega_x = root_music_frequency(svd.matrixV().col(0).conjugate());

    const double ux = omega_x * lambda / (2.0 * pi * geom.spacing_x);
    const double uz = omega_z * lambda / (2.0 * pi * geom.spacing_z);

    constexpr double clamp_tol = 1e-6;
    if (std::abs(uz) > 1.0 + clamp_tol) {
        throw InvalidFrequencyError("extract_angles: |u_z| exceeds 1");
    }
    est.phi = std::asin(std::clamp(uz, -1.0, 1.0));
    const double cos_phi = std::cos(est.phi);
    const double ct = cos_phi > 0.0 ? ux / cos_phi : 0.0;
    if (std::abs(ct) > 1.0 + clamp_tol) {
        throw InvalidFrequencyError("extract_angles: |u_x / cos(phi)| exceeds 1");
    }
    est.theta = std::acos(std::clamp(ct, -1.0, 1.0));
    return est;
}

}  // namespace starloc
