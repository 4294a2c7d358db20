// SPDX-License-Identifier: Apache-2.0
#include "starloc/channel.hpp"

#include <cmath>

namespace starloc {

PathLossModel PathLossModel::free_space(double fc_khz) {
    if (!(fc_khz > 0.0)) throw ConfigError("free_space: fc must be positive");
    return {Kind::FreeSpace, fc_khz};
}

PathLossModel PathLossModel::umi_3gpp(double fc_ghz) {
    if (!(fc_ghz > 0.0)) throw ConfigError("umi_3gpp: fc must be positive");
    return {Kind::Umi3gpp, fc_ghz};
}

double PathLossModel::rho(double d) const {
    switch (kind_) {
        case Kind::SquaredDistance:
            return d * d;
        case Kind::FreeSpace:
            // rho = d^2 fc^2 / 10^8.755, fc in kHz
            return d * d * fc_ * fc_ / std::pow(10.0, 8.755);
        case Kind::Umi3gpp:
            // rho = 10^2.27 d^3.67 fc^2.6, fc in GHz
            return std::pow(10.0, 2.27) * std::pow(d, 3.67) * std::pow(fc_, 2.6);
    }
    return 0.0;
}

double PathLossModel::drho_dd(double d) const {
    switch (kind_) {
        case Kind::SquaredDistance:
            return 2.0 * d;
        case Kind::FreeSpace:
            return 2.0 * d * fc_ * fc_ / std::pow(10.0, 8.755);
        case Kind::Umi3gpp:
            return std::pow(10.0, 2.27) * 3.67 * std::pow(d, 2.67) * std::pow(fc_, 2.6);
    }
    return 0.0;
}

double PathLossModel::invert(double target) const {
    if (!(target > 0.0)) throw Error("PathLossModel::invert: target must be positive");
    double lo = 1e-9, hi = 1.0;
    while (rho(hi) < target && hi < 1e12) hi *= 2.0;
    while (rho(lo) > target && lo > 1e-15) lo *= 0.5;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (rho(mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

// per-element phase coefficients c_m = (2 pi s / lambda)(m - (n-1)/2)
Eigen::VectorXd phase_coeffs(int n, double spacing, double lambda) {
    Eigen::VectorXd c(n);
    const double scale = 2.0 * pi * spacing / lambda;
    for (int m = 0; m < n; ++m) {
        c(m) = scale * (m - 0.5 * (n - 1));
    }
    return c;
}

Eigen::VectorXcd steering_axis(const Eigen::VectorXd& coeffs, double u) {
    Eigen::VectorXcd a(coeffs.size());
    for (Eigen::Index m = 0; m < coeffs.size(); ++m) {
        a(m) = std::polar(1.0, coeffs(m) * u);
    }
    return a;
}

Eigen::VectorXcd kron_vec(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    Eigen::VectorXcd out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

}  // namespace

Eigen::VectorXcd array_response(const ArrayGeometry& geom, const LinkGeometry& link,
                                double lambda) {
    const double ux = std::cos(link.theta) * std::cos(link.phi);
    const double uz = std::sin(link.phi);
    const Eigen::VectorXcd ax =
        steering_axis(phase_coeffs(geom.nx, geom.spacing_x, lambda), ux);
    const Eigen::VectorXcd az =
        steering_axis(phase_coeffs(geom.nz, geom.spacing_z, lambda), uz);
    return kron_vec(ax, az);
}

ChannelVector los_channel(const ArrayGeometry& geom, const LinkGeometry& link,
                          const PathLossModel& plm, double lambda) {
    if (!(link.d > 0.0)) throw DegenerateGeometryError("los_channel: d must be positive");
    const cplx pref = std::polar(1.0, -2.0 * pi * link.d / lambda) /
                      std::sqrt(plm.rho(link.d));
    return pref * array_response(geom, link, lambda);
}

RisBsChannel ris_bs_channel(const ArrayGeometry& bs_geom, const ArrayGeometry& ris_geom,
                            const LinkGeometry& link4, const PathLossModel& plm,
                            double lambda) {
    if (!(link4.d > 0.0)) throw DegenerateGeometryError("ris_bs_channel: d must be positive");
    const cplx pref = std::polar(1.0, -2.0 * pi * link4.d / lambda) /
                      std::sqrt(plm.rho(link4.d));
    const Eigen::VectorXcd a_bs = array_response(bs_geom, link4, lambda);
    const Eigen::VectorXcd a_ris = array_response(ris_geom, link4, lambda);
    return pref * a_bs * a_ris.adjoint();
}

ChannelVector add_mpc(const ChannelVector& h, const LinkGeometry& link,
                      std::span<const MpcComponent> comps, const ArrayGeometry& geom,
                      const PathLossModel& plm, double lambda) {
    ChannelVector out = h;
    for (const auto& comp : comps) {
        LinkGeometry nlos;
        nlos.d = comp.distance_scale * link.d;
        nlos.theta = link.theta + comp.theta_offset;
        nlos.phi = link.phi + comp.phi_offset;
        if (!nlos.valid()) {
            throw DegenerateGeometryError("add_mpc: perturbed angles out of range");
        }
        out += los_channel(geom, nlos, plm, lambda);
    }
    return out;
}

Eigen::MatrixXcd los_channel_jacobian(const ArrayGeometry& geom, const LinkGeometry& link,
                                      const PathLossModel& plm, double lambda) {
    if (!(link.d > 0.0)) {
        throw DegenerateGeometryError("los_channel_jacobian: d must be positive");
    }
    const double ct = std::cos(link.theta), st = std::sin(link.theta);
    const double cp = std::cos(link.phi), sp = std::sin(link.phi);
    const double ux = ct * cp;
    const double uz = sp;

    const Eigen::VectorXd cx = phase_coeffs(geom.nx, geom.spacing_x, lambda);
    const Eigen::VectorXd cz = phase_coeffs(geom.nz, geom.spacing_z, lambda);
    const Eigen::VectorXcd ax = steering_axis(cx, ux);
    const Eigen::VectorXcd az = steering_axis(cz, uz);
    const Eigen::VectorXcd a = kron_vec(ax, az);
    // entrywise phase-slope vectors: (C_x a) and (C_z a)
    const Eigen::VectorXcd cxa = kron_vec(cx.cast<cplx>().cwiseProduct(ax), az);
    const Eigen::VectorXcd cza = kron_vec(ax, cz.cast<cplx>().cwiseProduct(az));

    const double rho = plm.rho(link.d);
    const cplx pref = std::polar(1.0, -2.0 * pi * link.d / lambda) / std::sqrt(rho);
    // d/dd [e^{-j2pi d/lambda} rho^{-1/2}]
    const cplx dpref = pref * (-j1i * 2.0 * pi / lambda - 0.5 * plm.drho_dd(link.d) / rho);

    const double dux_dtheta = -st * cp;
    const double dux_dphi = -ct * sp;
    const double duz_dphi = cp;

    Eigen::MatrixXcd jac(geom.size(), 3);
    jac.col(0) = pref * (j1i * dux_dtheta) * cxa;
    jac.col(1) = pref * (j1i * dux_dphi * cxa + j1i * duz_dphi * cza);
    jac.col(2) = dpref * a;
    return jac;
}

}  // namespace starloc
