// SPDX-License-Identifier: Apache-2.0
#ifndef STARLOC_COMMON_HPP
#define STARLOC_COMMON_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace starloc {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx j1i{0.0, 1.0};

// speed of light, m/s
inline constexpr double speed_of_light = 299792458.0;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// anchor and target coincide, or a link has zero length
struct DegenerateGeometryError : Error {
    using Error::Error;
};

// elevation at +-pi/2, azimuth derivatives undefined
struct GimbalSingularityError : Error {
    using Error::Error;
};

// training overhead K too small for the requested design / nulling
struct InsufficientOverheadError : Error {
    using Error::Error;
};

// Fisher matrix (numerically) singular
struct UnidentifiableConfigurationError : Error {
    using Error::Error;
};

// recovered spatial frequency outside the valid direction-cosine range
struct InvalidFrequencyError : Error {
    using Error::Error;
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace starloc

#endif
