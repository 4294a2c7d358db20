// SPDX-License-Identifier: Apache-2.0
#include "starloc/estimator.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace starloc {

double estimate_distance(const Eigen::VectorXcd& h_hat, int t_dim,
                         const PathLossModel& plm) {
    const double energy = h_hat.squaredNorm();
    if (!(energy > 0.0)) throw Error("estimate_distance: zero channel vector");
    const double rho = t_dim / energy;
    if (plm.kind() == PathLossModel::Kind::SquaredDistance) {
        return std::sqrt(rho);
    }
    return plm.invert(rho);
}

SideHints SideHints::from_anchors(const Position3D& p_b, const Position3D& p_r) {
    SideHints hints;
    // the RIS surface splits space at y = y_R; the BS (and with it the
    // outdoor MS) sits on one side, the indoor MS on the other
    hints.s2 = p_b.y() < p_r.y() ? -1.0 : 1.0;
    hints.s3 = -hints.s2;
    // the BS array faces the half-space that contains the surface
    hints.s1 = p_r.y() >= p_b.y() ? 1.0 : -1.0;
    return hints;
}

LocalizerPipeline::LocalizerPipeline(const SystemModel& sys, const RisBsChannel& h4_assumed,
                                     const PhaseSchedule& schedule, const PowerConfig& pc,
                                     const AnmConfig& cfg)
    : LocalizerPipeline(sys, h4_assumed, schedule, pc, cfg,
                        SideHints::from_anchors(sys.p_b, sys.p_r)) {}

LocalizerPipeline::LocalizerPipeline(const SystemModel& sys, const RisBsChannel& h4_assumed,
                                     const PhaseSchedule& schedule, const PowerConfig& pc,
                                     const AnmConfig& cfg, const SideHints& hints)
    : sys_(sys), cfg_(cfg) {
    const MeasurementMatrices mm = build_measurement_matrices(h4_assumed, schedule);
    const std::array<const Eigen::MatrixXcd*, 3> mats = {&mm.a1, &mm.a2, &mm.a3};
    const std::array<double, 3> gammas = {pc.gamma1(), pc.gamma2(), pc.gamma3()};
    const std::array<double, 3> sides = {hints.s1, hints.s2, hints.s3};
    for (int i = 0; i < 3; ++i) {
        const NullingOperator op = nulling_operator(i + 1, mm);
        fe_[i].u = op.u;
        fe_[i].a_proj = op.u * (*mats[i]);
        fe_[i].gamma = gammas[i];
        fe_[i].geom = (i == 0) ? sys.bs : sys.ris;
        fe_[i].side = sides[i];
    }
}

LocalizationResult LocalizerPipeline::run(const Eigen::VectorXcd& y, double sigma2) const {
    LocalizationResult result;
    const double sigma = std::sqrt(std::max(sigma2, 0.0));

    for (int i = 0; i < 3; ++i) {
        const FrontEnd& fe = fe_[i];
        ChannelDiagnostics& diag = result.channels[i];
        const int t_dim = fe.geom.size();
        const Eigen::VectorXcd b = fe.u * y;
        try {
            const double mu = anm_mu(sigma, t_dim, cfg_.mu_scale);
            const AnmResult anm =
                anm_denoise(b, fe.a_proj, fe.gamma, mu, cfg_, fe.geom.nx, fe.geom.nz);
            diag.converged = anm.converged;
            diag.anm_iterations = anm.iterations;
            // a solution that explains none of the projected observation means
            // the penalty thresholded this channel away
            const double fit = (fe.gamma * (fe.a_proj * anm.h_hat)).norm();
            if (!(fit > 1e-3 * b.norm())) {
                diag.error = "atomic norm solution collapsed to zero";
                continue;
            }

            AngleEstimate angles = extract_angles(anm.h_hat, fe.geom, sys_.lambda);
            diag.mismatch_ratio = angles.mismatch_ratio;
            diag.mismatch_warning = angles.mismatch_warning;
            if (fe.side < 0.0) angles.theta = -angles.theta;

            // LS amplitude on the recovered atom; removes the shrinkage of the
            // regularized fit before the distance is read off the norm
            LinkGeometry direction{angles.theta, angles.phi, 1.0};
            const Eigen::VectorXcd atom = array_response(fe.geom, direction, sys_.lambda);
            const Eigen::VectorXcd atom_proj = fe.gamma * (fe.a_proj * atom);
            const double atom_energy = atom_proj.squaredNorm();
            if (!(atom_energy > 0.0)) {
                diag.error = "recovered atom lies in the nulled subspace";
                continue;
            }
            const cplx coeff = atom_proj.dot(b) / atom_energy;
            const Eigen::VectorXcd h_refit = coeff * atom;

            LinkGeometry link =
                direction;
            link.d = estimate_distance(h_refit, t_dim, sys_.pathloss);
            if (!link.valid()) {
                diag.error = "estimated link parameters out of range";
                continue;
            }
            diag.residual = (b - fe.gamma * (fe.a_proj * h_refit)).norm();
            result.estimates[i].h_hat = h_refit;
            result.estimates[i].link_hat = link;
            diag.ok = true;
        } catch (const Error& err) {
            diag.error = err.what();
        }
    }

    const bool c1 = result.channels[0].ok;
    const bool c2 = result.channels[1].ok;
    if (c1 && c2) {
        const LinkGeometry& l1 = result.estimates[0].link_hat;
        const LinkGeometry& l2 = result.estimates[1].link_hat;
        result.w1 = (l2.d * l2.d) / (l1.d * l1.d + l2.d * l2.d);
        result.p_u1 = map_outdoor_weighted(sys_.p_b, sys_.p_r, l1, l2);
        result.u1_ok = true;
    } else if (c1 || c2) {
        result.u1_collapsed = true;
        result.w1 = c1 ? 1.0 : 0.0;
        result.p_u1 = c1 ? Position3D(sys_.p_b +
                                      result.estimates[0].link_hat.d *
                                          direction_vector(result.estimates[0].link_hat))
                         : Position3D(sys_.p_r +
                                      result.estimates[1].link_hat.d *
                                          direction_vector(result.estimates[1].link_hat));
        result.u1_ok = true;
    }
    if (result.channels[2].ok) {
        result.p_u2 = map_indoor(sys_.p_r, result.estimates[2].link_hat);
        result.u2_ok = true;
    }
    return result;
}

LocalizationResult localize(const ObservationBundle& obs, const SystemModel& sys,
                            const RisBsChannel& h4_assumed, const PhaseSchedule& schedule,
                            const AnmConfig& cfg) {
    const LocalizerPipeline pipeline(sys, h4_assumed, schedule, obs.power, cfg);
    return pipeline.run(obs.y, obs.sigma2);
}

}  // namespace starloc
