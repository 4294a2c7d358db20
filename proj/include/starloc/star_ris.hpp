// SPDX-License-Identifier: Apache-2.0
#ifndef STARLOC_STAR_RIS_HPP
#define STARLOC_STAR_RIS_HPP

#include <cstdint>

#include <Eigen/Core>

#include "starloc/common.hpp"

namespace starloc {

// per-slot refraction/reflection phase profiles, one column per time slot;
// every entry is unit modulus
struct PhaseSchedule {
    Eigen::MatrixXcd omega1_bar;  // N x K, refraction
    Eigen::MatrixXcd omega2_bar;  // N x K, reflection

    int n() const { return static_cast<int>(omega1_bar.rows()); }
    int k() const { return static_cast<int>(omega1_bar.cols()); }
};

// STAR-RIS power split (eps) and user power allocation (eta);
// eps1^2 + eps2^2 = 1, eta1^2 + eta2^2 = 1
struct PowerConfig {
    double eps1 = 0.0;  // refraction
    double eps2 = 0.0;  // reflection
    double eta1 = 0.0;  // outdoor MS
    double eta2 = 0.0;  // indoor MS
    double p = 1.0;     // total per-slot transmit power

    static PowerConfig from_split(double eps1, double eta1, double p = 1.0);

    // per-channel coefficients of the vectorized model
    double gamma1() const { return std::sqrt(p) * eta1; }
    double gamma2() const { return std::sqrt(p) * eta1 * eps2; }
    double gamma3() const { return std::sqrt(p) * eta2 * eps1; }
};

// Optimal schedule for k >= 2n+1: rows 2..n+1 and n+2..2n+1 (1-based) of the
// transposed k-point DFT matrix (entries e^{-j 2 pi r c / k}, unnormalized so
// the unit-modulus constraint holds). Guarantees conj(omega1)*1 = 0 and
// conj(omega1)*omega2^T = 0.
PhaseSchedule dft_design(int n, int k);

// i.i.d. phases uniform on [0, 2pi), reproducible from the seed
PhaseSchedule random_design(int n, int k, std::uint64_t seed);

struct OrthogonalityResidual {
    double ones;   // || conj(omega1) * 1 ||_2
    double cross;  // || conj(omega1) * omega2^T ||_F
};

OrthogonalityResidual verify_orthogonality(const PhaseSchedule& s);

}  // namespace starloc

#endif
