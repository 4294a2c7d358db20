// SPDX-License-Identifier: Apache-2.0
#include "starloc/scenario.hpp"

#include <cmath>

namespace starloc {

std::pair<int, int> square_factor(int total) {
    if (total < 1) throw ConfigError("square_factor: element count must be positive");
    int nx = static_cast<int>(std::sqrt(static_cast<double>(total)));
    while (nx > 1 && total % nx != 0) --nx;
    return {nx, total / nx};
}

Scenario benchmark_scenario(int m, int n, double lambda, PathLossModel plm) {
    const auto [mx, mz] = square_factor(m);
    const auto [nx, nz] = square_factor(n);
    Scenario sc;
    sc.sys.p_b = Position3D(0.0, 0.0, 8.0);
    sc.sys.p_r = Position3D(2.0, 2.0, 5.0);
    sc.p_u1 = Position3D(5.0, 1.0, 2.0);
    sc.p_u2 = Position3D(1.0, 5.0, 2.0);
    sc.sys.bs = ArrayGeometry::half_wavelength(mx, mz, lambda);
    sc.sys.ris = ArrayGeometry::half_wavelength(nx, nz, lambda);
    sc.sys.pathloss = plm;
    sc.sys.lambda = lambda;
    return sc;
}

}  // namespace starloc
