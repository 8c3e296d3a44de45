#pragma once

#include <cmath>
#include <numbers>

namespace hdual {

/// 1/Gamma(alpha), entire in alpha; the poles of Gamma at 0, -1, -2, ... map
/// to exact zeros.
inline double reciprocal_gamma(double alpha) {
    if (alpha == std::floor(alpha) && alpha <= 0.0) return 0.0;
    return 1.0 / std::tgamma(alpha);
}

/// 1/Gamma(1/2 - r) through the reflection identity
///   Gamma(1/2 - r) = (-1)^r pi / Gamma(1/2 + r),
/// with Gamma(1/2 + r) accumulated from Gamma(1/2) = sqrt(pi).
inline double reciprocal_gamma_half_minus(int r) {
    double g = std::sqrt(std::numbers::pi);
    for (int j = 0; j < r; ++j) g *= (j + 0.5);
    const double sign = (r % 2 == 0) ? 1.0 : -1.0;
    return sign * g / std::numbers::pi;
}

/// Same quantity from ln-Gamma directly; kept as an independent path.
inline double reciprocal_gamma_half_minus_lgamma(int r) {
    const double sign = (r % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(-std::lgamma(0.5 - r));
}

} // namespace hdual
