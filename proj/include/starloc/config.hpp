// SPDX-License-Identifier: Apache-2.0
#ifndef STARLOC_CONFIG_HPP
#define STARLOC_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "starloc/scenario.hpp"
#include "starloc/star_ris.hpp"

namespace starloc {

// flat key = value experiment configuration; profiles provide the defaults,
// a config file and CLI flags override
struct ExperimentConfig {
    int m = 16;
    int n = 16;
    int k = 33;
    std::vector<double> snr_db_list;
    double eps1 = 0.0;
    double eta1 = 0.0;
    std::string schedule = "dft";  // dft | random
    int trials = 50;
    std::uint64_t seed = 1;
    std::string pathloss = "squared";  // squared | freespace | umi
    double fc_ghz = 28.0;
    Position3D p_b = Position3D(0.0, 0.0, 8.0);
    Position3D p_r = Position3D(2.0, 2.0, 5.0);
    Position3D p_u1 = Position3D(5.0, 1.0, 2.0);
    Position3D p_u2 = Position3D(1.0, 5.0, 2.0);
    double d_hat = 0.0;
    double phi_hat = 0.0;
    int mpc_case = 0;  // 0 none, 1 scale-10 pair, 2 scale-5 pair

    // desk: M=16, N=16, K=33, balanced split; paper: M=16, N=36, K=100,
    // eps1 = sqrt(0.9)
    static ExperimentConfig profile(const std::string& name);

    // parse `key = value` lines ('#' comments); unknown keys are errors
    void apply_file(const std::string& path);
    void apply_text(const std::string& text);

    void validate() const;

    std::string canonical() const;
    std::string hash() const;  // 16 hex digits over the canonical form

    double wavelength() const;
    PathLossModel path_loss_model() const;
    Scenario scenario() const;
    PowerConfig power() const;
    PhaseSchedule make_schedule() const;
};

// shortest decimal string that parses back to exactly v
std::string format_double(double v);

}  // namespace starloc

#endif
