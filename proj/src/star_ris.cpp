// SPDX-License-Identifier: Apache-2.0
#include "starloc/star_ris.hpp"

#include <cmath>

#include "starloc/rng.hpp"

namespace starloc {

PowerConfig PowerConfig::from_split(double eps1, double eta1, double p) {
    if (!(eps1 > 0.0 && eps1 < 1.0) || !(eta1 > 0.0 && eta1 < 1.0)) {
        throw ConfigError("PowerConfig: eps1 and eta1 must lie in (0, 1)");
    }
    if (!(p > 0.0)) throw ConfigError("PowerConfig: total power must be positive");
    PowerConfig pc;
    pc.eps1 = eps1;
    pc.eps2 = std::sqrt(1.0 - eps1 * eps1);
    pc.eta1 = eta1;
    pc.eta2 = std::sqrt(1.0 - eta1 * eta1);
    pc.p = p;
    return pc;
}

PhaseSchedule dft_design(int n, int k) {
    if (n < 1 || k < 1) throw ConfigError("dft_design: n, k must be positive");
    if (k < 2 * n + 1) {
        throw InsufficientOverheadError("dft_design: requires k >= 2n+1");
    }
    PhaseSchedule s;
    s.omega1_bar.resize(n, k);
    s.omega2_bar.resize(n, k);
    // 1-based paper rows 2..n+1 and n+2..2n+1 map to 0-based DFT rows
    // 1..n and n+1..2n; the DFT matrix is symmetric, so its transpose has
    // the same entries
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < k; ++c) {
            const double base = -2.0 * pi * static_cast<double>(c) / k;
            s.omega1_bar(r, c) = std::polar(1.0, base * (r + 1));
            s.omega2_bar(r, c) = std::polar(1.0, base * (n + r + 1));
        }
    }
    return s;
}

PhaseSchedule random_design(int n, int k, std::uint64_t seed) {
    if (n < 1 || k < 1) throw ConfigError("random_design: n, k must be positive");
    Rng rng(seed);
    PhaseSchedule s;
    s.omega1_bar.resize(n, k);
    s.omega2_bar.resize(n, k);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < k; ++c) {
            s.omega1_bar(r, c) = std::polar(1.0, rng.uniform(0.0, 2.0 * pi));
        }
    }
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < k; ++c) {
            s.omega2_bar(r, c) = std::polar(1.0, rng.uniform(0.0, 2.0 * pi));
        }
    }
    return s;
}

OrthogonalityResidual verify_orthogonality(const PhaseSchedule& s) {
    const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(s.k());
    OrthogonalityResidual r;
    r.ones = (s.omega1_bar.conjugate() * ones).norm();
    r.cross = (s.omega1_bar.conjugate() * s.omega2_bar.transpose()).norm();
    return r;
}

}  // namespace starloc
