// SPDX-License-Identifier: Apache-2.0
#ifndef STARLOC_EXPERIMENTS_HPP
#define STARLOC_EXPERIMENTS_HPP

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "starloc/config.hpp"
#include "starloc/estimator.hpp"
#include "starloc/fisher.hpp"

namespace starloc {

struct SweepRow {
    double snr_db = 0.0;
    // NaN when the FIM is singular at this point (row flagged)
    double crlb_rmse_u1 = std::numeric_limits<double>::quiet_NaN();
    double crlb_rmse_u2 = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> est_rmse_u1;
    std::optional<double> est_rmse_u2;
    int trials_ok = 0;
    std::string config_hash;
    bool flagged = false;  // singular FIM or no converged trial at this point
};

// theoretical bounds only; deterministic, one row per SNR point
std::vector<SweepRow> run_crlb_sweep(const ExperimentConfig& cfg);

// bounds plus the practical ANM localizer evaluated over `trials` noise
// realizations per SNR point, with per-trial seed = seed ^ trial index.
// threads <= 0 selects the hardware concurrency; the aggregation is
// order-independent, so results do not depend on the pool size.
std::vector<SweepRow> run_monte_carlo(const ExperimentConfig& cfg, int threads = 0);

struct StudySweep {
    std::string label;
    std::vector<SweepRow> rows;
    // schedule-design objective of this sweep's schedule (design study only)
    std::optional<double> principal_angle;
};

// dft vs random schedule, identical seeds
std::vector<StudySweep> run_design_study(const ExperimentConfig& cfg, int threads = 0);

// perfect-H4 baseline plus uncertainty cases (0.5 m, 0.2 rad) and (1 m, 0.4 rad)
std::vector<StudySweep> run_imperfect_h4_study(const ExperimentConfig& cfg,
                                               int threads = 0);

// LoS-only, two multipath components at distance scale 10, and at scale 5
std::vector<StudySweep> run_mpc_study(const ExperimentConfig& cfg, int threads = 0);

std::string csv_string(const std::vector<SweepRow>& rows);
void write_csv(const std::string& path, const std::vector<SweepRow>& rows);

// multipath components used by the MPC study for a given case (1 or 2)
std::vector<MpcComponent> mpc_components(int mpc_case);

bool all_rows_flagged(const std::vector<SweepRow>& rows);

}  // namespace starloc

#endif
