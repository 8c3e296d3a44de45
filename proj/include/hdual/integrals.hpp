#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "gamma.hpp"
#include "jet.hpp"
#include "functions.hpp"
#include "special.hpp"

namespace hdual {

/// Closed form of a truncated parameter integral, kept together with its
/// graded series terms: value is the plain sum of terms.
struct dual_integral_result {
    double value = 0.0;
    int order = 0;
    std::vector<double> terms;
};

namespace detail {

inline dual_integral_result collect(int k, std::vector<double> terms) {
    dual_integral_result r;
    r.order = k;
    r.terms = std::move(terms);
    for (const double t : r.terms) r.value += t;
    return r;
}

} // namespace detail

/// \int exp(-alpha x^2 + (a + e b) x) dx, truncated at order k:
///   sqrt(pi/alpha) exp(a^2/4alpha) sum_{r<=k} H_r(ab/2alpha, b^2/4alpha)/r!.
inline dual_integral_result dual_shifted_gaussian_integral(double alpha, double a, double b, int k) {
    if (!(alpha > 0)) throw nonpositive_width("dual_shifted_gaussian_integral: alpha must be positive");
    if (k < 0) throw std::invalid_argument("dual_shifted_gaussian_integral: negative order");
    const double pref = std::sqrt(std::numbers::pi / alpha) * std::exp(a * a / (4.0 * alpha));
    const auto h = hermite_seq(k, a * b / (2.0 * alpha), b * b / (4.0 * alpha));
    std::vector<double> terms(static_cast<std::size_t>(k) + 1);
    double coef = 1.0;
    for (int r = 0; r <= k; ++r) {
        if (r) coef /= r;
        terms[static_cast<std::size_t>(r)] = pref * coef * h[static_cast<std::size_t>(r)];
    }
    return detail::collect(k, std::move(terms));
}

/// \int exp(-(a + e b) x^2) dx, truncated at order k: the finite binomial
/// series sqrt(pi/a) sum_{r<=k} C(-1/2, r) (b/a)^r. The same numbers fall out
/// of sqrt(pi) * umbral_eval(pow(variable(a,b,k), -1/2)); the two routes are
/// cross-checked in the test suite.
inline dual_integral_result dual_gaussian_integral(double a, double b, int k) {
    if (!(a > 0)) throw nonpositive_width("dual_gaussian_integral: a must be positive");
    if (k < 0) throw std::invalid_argument("dual_gaussian_integral: negative order");
    const double pref = std::sqrt(std::numbers::pi / a);
    const double ratio = b / a;
    std::vector<double> terms(static_cast<std::size_t>(k) + 1);
    double binom = 1.0, rp = 1.0;
    for (int r = 0; r <= k; ++r) {
        if (r) {
            binom *= (-0.5 - (r - 1)) / r;
            rp *= ratio;
        }
        terms[static_cast<std::size_t>(r)] = pref * binom * rp;
    }
    return detail::collect(k, std::move(terms));
}

/// Truncated geometric expansion of 1/(1 + (a + e b) x^2):
///   (1/(1+a x^2)) sum_{r<=k} (-b x^2/(1+a x^2))^r.
inline double phi_expansion(double x, double a, double b, int k) {
    if (k < 0) throw std::invalid_argument("phi_expansion: negative order");
    const double den = 1.0 + a * x * x;
    if (std::abs(den) <= detail::singular_tol) throw singular_denominator("phi_expansion: 1 + a x^2 vanishes");
    const double q = -b * x * x / den;
    double sum = 0.0, qp = 1.0;
    for (int r = 0; r <= k; ++r) {
        sum += qp;
        qp *= q;
    }
    return sum / den;
}

/// \int dx / (1 + (a + e b) x^2) = pi / sqrt(a + e b), truncated at order k.
inline dual_integral_result phi_integral(double a, double b, int k) {
    if (!(a > 0)) throw nonpositive_width("phi_integral: a must be positive");
    if (k < 0) throw std::invalid_argument("phi_integral: negative order");
    const jet<double> zhalf = pow(variable(a, b, k), -0.5);
    std::vector<double> terms(static_cast<std::size_t>(k) + 1);
    for (int r = 0; r <= k; ++r) terms[static_cast<std::size_t>(r)] = std::numbers::pi * zhalf[static_cast<std::size_t>(r)];
    return detail::collect(k, std::move(terms));
}

/// Formal integration operator on a formal power: v^alpha -> 1/Gamma(alpha).
/// Gamma poles map to exact zeros.
inline double formal_integration(double alpha) {
    return reciprocal_gamma(alpha);
}

/// Image of the phi integral under the formal integration operator:
///   sqrt(pi/a) sum_{r<=k} (b/a)^r / (Gamma(1/2 - r) (r!)^2),
/// with 1/Gamma(1/2 - r) taken through the reflection identity.
inline dual_integral_result umbral_image_integral(double a, double b, int k) {
    if (!(a > 0)) throw nonpositive_width("umbral_image_integral: a must be positive");
    if (k < 0) throw std::invalid_argument("umbral_image_integral: negative order");
    const double pref = std::sqrt(std::numbers::pi / a);
    const double ratio = b / a;
    std::vector<double> terms(static_cast<std::size_t>(k) + 1);
    double rp = 1.0, rfact = 1.0;
    for (int r = 0; r <= k; ++r) {
        if (r) {
            rp *= ratio;
            rfact *= r;
        }
        terms[static_cast<std::size_t>(r)] =
            pref * rp * reciprocal_gamma_half_minus(r) / (rfact * rfact);
    }
    return detail::collect(k, std::move(terms));
}

} // namespace hdual
