// SPDX-License-Identifier: Apache-2.0
#include "starloc/signal_model.hpp"

#include <cmath>

#include "starloc/rng.hpp"

namespace starloc {

MeasurementMatrices build_measurement_matrices(const RisBsChannel& h4,
                                               const PhaseSchedule& s) {
    const int m = static_cast<int>(h4.rows());
    const int n = static_cast<int>(h4.cols());
    const int k = s.k();
    if (s.n() != n) {
        throw DimensionMismatchError("build_measurement_matrices: schedule/H4 size mismatch");
    }

    MeasurementMatrices mm;
    mm.k = k;
    mm.m = m;
    mm.n = n;
    mm.a1.resize(static_cast<Eigen::Index>(k) * m, m);
    mm.a2.resize(static_cast<Eigen::Index>(k) * m, n);
    mm.a3.resize(static_cast<Eigen::Index>(k) * m, n);
    for (int slot = 0; slot < k; ++slot) {
        mm.a1.block(static_cast<Eigen::Index>(slot) * m, 0, m, m) =
            Eigen::MatrixXcd::Identity(m, m);
        // (omega^T kron I_M)(I_N khatri-rao H4): block k is H4 diag(omega_{.,k})
        mm.a2.block(static_cast<Eigen::Index>(slot) * m, 0, m, n) =
            h4 * s.omega2_bar.col(slot).asDiagonal();
        mm.a3.block(static_cast<Eigen::Index>(slot) * m, 0, m, n) =
            h4 * s.omega1_bar.col(slot).asDiagonal();
    }
    return mm;
}

Eigen::VectorXcd noiseless_mean(const MeasurementMatrices& mm, const ChannelVector& h1,
                                const ChannelVector& h2, const ChannelVector& h3,
                                const PowerConfig& pc) {
    if (h1.size() != mm.m || h2.size() != mm.n || h3.size() != mm.n) {
        throw DimensionMismatchError("noiseless_mean: channel dimensions disagree");
    }
    return pc.eta1 * (mm.a1 * h1) + pc.eta1 * pc.eps2 * (mm.a2 * h2) +
           pc.eta2 * pc.eps1 * (mm.a3 * h3);
}

ObservationBundle synthesize_observation(const MeasurementMatrices& mm,
                                         const ChannelVector& h1, const ChannelVector& h2,
                                         const ChannelVector& h3, const PowerConfig& pc,
                                         double sigma2, std::uint64_t seed) {
    if (!(sigma2 > 0.0)) throw ConfigError("synthesize_observation: sigma2 must be positive");
    ObservationBundle obs;
    obs.matrices = mm;
    obs.power = pc;
    obs.sigma2 = sigma2;
    obs.y = std::sqrt(pc.p) * noiseless_mean(mm, h1, h2, h3, pc);
    Rng rng(seed);
    for (Eigen::Index i = 0; i < obs.y.size(); ++i) {
        obs.y(i) += rng.complex_normal(sigma2);
    }
    return obs;
}

LinkGeometry perturb_h4(const LinkGeometry& link4, const H4Perturbation& p,
                        std::uint64_t seed) {
    if (p.d_hat < 0.0 || p.phi_hat < 0.0) {
        throw ConfigError("perturb_h4: half-widths must be nonnegative");
    }
    Rng rng(seed);
    LinkGeometry out = link4;
    out.d += rng.uniform(-p.d_hat, p.d_hat);
    out.theta += rng.uniform(-p.phi_hat, p.phi_hat);
    out.phi += rng.uniform(-p.phi_hat, p.phi_hat);
    if (!(out.d > 0.0)) {
        throw DegenerateGeometryError("perturb_h4: perturbed distance is nonpositive");
    }
    return out;
}

}  // namespace starloc
