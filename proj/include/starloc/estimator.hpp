// SPDX-License-Identifier: Apache-2.0
#ifndef STARLOC_ESTIMATOR_HPP
#define STARLOC_ESTIMATOR_HPP

#include <array>
#include <string>

#include "starloc/anm.hpp"
#include "starloc/doa.hpp"
#include "starloc/nulling.hpp"
#include "starloc/scenario.hpp"

namespace starloc {

// d such that rho(d) = T / ||h||^2; closed form sqrt(T/||h||^2) for the
// squared-distance model, monotone bisection otherwise
double estimate_distance(const Eigen::VectorXcd& h_hat, int t_dim,
                         const PathLossModel& plm);

// Sign of the y-component of each link direction. A UPA in the x-z plane only
// identifies the azimuth up to sign; which half-space each MS occupies is
// fixed by the deployment (the outdoor MS shares the BS side of the surface,
// the indoor MS the opposite side) and resolves the ambiguity.
struct SideHints {
    double s1 = 1.0;
    double s2 = -1.0;
    double s3 = 1.0;

    static SideHints from_anchors(const Position3D& p_b, const Position3D& p_r);
};

struct ChannelEstimate {
    Eigen::VectorXcd h_hat;
    LinkGeometry link_hat;
};

struct ChannelDiagnostics {
    bool ok = false;         // usable (theta, phi, d) estimate produced
    bool converged = false;  // ANM met its tolerance within the iteration cap
    int anm_iterations = 0;
    double residual = 0.0;   // || U y - gamma U A h_hat || after the fit
    double mismatch_ratio = 0.0;
    bool mismatch_warning = false;
    std::string error;
};

struct LocalizationResult {
    Position3D p_u1 = Position3D::Zero();
    Position3D p_u2 = Position3D::Zero();
    bool u1_ok = false;
    bool u2_ok = false;
    bool u1_collapsed = false;  // one outdoor branch failed; weight collapsed
    double w1 = 0.0;
    std::array<ChannelEstimate, 3> estimates;
    std::array<ChannelDiagnostics, 3> channels;

    bool all_converged() const {
        return channels[0].converged && channels[1].converged && channels[2].converged;
    }
};

// Precomputed estimation front end for a fixed assumed RIS-BS channel and
// schedule: nulling operators, projected measurement matrices and the
// per-channel ANM inputs. const and thread-safe once built, so Monte-Carlo
// trials that share the assumed channel reuse one instance.
class LocalizerPipeline {
  public:
    LocalizerPipeline(const SystemModel& sys, const RisBsChannel& h4_assumed,
                      const PhaseSchedule& schedule, const PowerConfig& pc,
                      const AnmConfig& cfg);
    LocalizerPipeline(const SystemModel& sys, const RisBsChannel& h4_assumed,
                      const PhaseSchedule& schedule, const PowerConfig& pc,
                      const AnmConfig& cfg, const SideHints& hints);

    LocalizationResult run(const Eigen::VectorXcd& y, double sigma2) const;

  private:
    struct FrontEnd {
        Eigen::MatrixXcd u;       // nulling operator rows
        Eigen::MatrixXcd a_proj;  // U * A_i
        double gamma = 0.0;
        ArrayGeometry geom;
        double side = 1.0;
    };

    SystemModel sys_;
    AnmConfig cfg_;
    std::array<FrontEnd, 3> fe_;
};

// Two-step localizer: interference nulling, ANM channel recovery, root-MUSIC
// angles, LS distances, then the geometric maps. A failed channel 1 or 2
// still yields the outdoor position from the surviving branch (flagged).
LocalizationResult localize(const ObservationBundle& obs, const SystemModel& sys,
                            const RisBsChannel& h4_assumed, const PhaseSchedule& schedule,
                            const AnmConfig& cfg);

}  // namespace starloc

#endif
