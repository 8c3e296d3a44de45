#pragma once

#include <cmath>
#include <complex>

#include "functions.hpp"
#include "jet.hpp"
#include "special.hpp"

namespace hdual {

/// Heat semigroup acting on a Gaussian (Glaisher identity):
///   exp(tau d^2/dx^2) exp(-alpha x^2)
///     = (1 + 4 tau alpha)^{-1/2} exp(-alpha x^2 / (1 + 4 tau alpha)).
inline double glaisher(double alpha, double x, double tau) {
    const double g = 1.0 + 4.0 * tau * alpha;
    if (!(g > 0)) throw branch_violation("glaisher: 1 + 4*tau*alpha must be positive");
    return std::exp(-alpha * x * x / g) / std::sqrt(g);
}

/// Heat evolution of the dual Gaussian exp(-(a + e b) x^2), before the
/// projection: the Glaisher closed form evaluated in jet arithmetic with
/// z = a + e b. This is the authoritative path; the Hermite series below is
/// the cross-check.
inline jet<double> heat_dual_gaussian_jet(double a, double b, double x, double tau, int k) {
    if (!(1.0 + 4.0 * tau * a > 0)) throw branch_violation("heat_dual_gaussian: 1 + 4*tau*a must be positive");
    if (k < 0) throw std::invalid_argument("heat_dual_gaussian: negative order");
    const jet<double> z = variable(a, b, k);
    const jet<double> w = z * (4.0 * tau) + 1.0;
    return pow(w, -0.5) * exp(z * inv(w) * (-x * x));
}

inline double heat_dual_gaussian(double a, double b, double x, double tau, int k) {
    return umbral_eval(heat_dual_gaussian_jet(a, b, x, tau, k));
}

/// Compact Hermite-series form of the same solution, with gamma = 1 + 4 a tau:
///   (exp(-a x^2/gamma)/sqrt(gamma)) sum_{n<=k} (-b/gamma^2)^n H_{2n}(x, tau gamma)/n!.
/// The alternating sign matches the jet path; see the order-two checks in the
/// test suite.
inline double heat_dual_gaussian_series(double a, double b, double x, double tau, int k,
                                        double sign = -1.0) {
    const double g = 1.0 + 4.0 * a * tau;
    if (!(g > 0)) throw branch_violation("heat_dual_gaussian_series: 1 + 4*tau*a must be positive");
    if (k < 0) throw std::invalid_argument("heat_dual_gaussian_series: negative order");
    const auto h = hermite_seq(2 * k, x, tau * g);
    const double q = sign * b / (g * g);
    double sum = 0.0, coef = 1.0;
    for (int n = 0; n <= k; ++n) {
        if (n) coef *= q / n;
        sum += coef * h[static_cast<std::size_t>(2 * n)];
    }
    return sum * std::exp(-a * x * x / g) / std::sqrt(g);
}

/// Flat-top profile Y(x; alpha | m) = exp(-alpha x^2) e_m(x^2), the truncated
/// projection of the dual Gaussian with z = alpha - e.
inline double flattened_profile(double x, double alpha, int m) {
    if (!(alpha > 0)) throw nonpositive_width("flattened_profile: alpha must be positive");
    if (m < 0) throw std::invalid_argument("flattened_profile: negative order");
    return std::exp(-alpha * x * x) * trunc_exp(m, x * x);
}

/// Reference flat-top profile exp(-|x|^p).
inline double super_gaussian(double x, int p) {
    if (p < 1) throw std::invalid_argument("super_gaussian: p must be >= 1");
    return std::exp(-std::pow(std::abs(x), p));
}

/// Paraxial evolution of the flattened profile: the dual-Gaussian closed form
///   (1 + 4 i tau z)^{-1/2} exp(-z x^2 / (1 + 4 i tau z)),  z = alpha - e,
/// evaluated in complex jet arithmetic at order m and projected. The leading
/// scalar of the radicand is 1 + 4 i tau alpha with real part one, so the
/// principal square root never crosses the cut.
inline std::complex<double> schrodinger_flattened(double x, double tau, double alpha, int m) {
    using C = std::complex<double>;
    if (!(alpha > 0)) throw nonpositive_width("schrodinger_flattened: alpha must be positive");
    if (m < 0) throw std::invalid_argument("schrodinger_flattened: negative order");
    const jet<C> z = variable(C(alpha), C(-1.0), m);
    const jet<C> w = z * C(0.0, 4.0 * tau) + C(1.0);
    return umbral_eval(pow(w, -0.5) * exp(z * inv(w) * C(-x * x)));
}

/// Weyl-disentangled solution of d/dtau F = (gamma d/dx - z x) F, F(.,0) = f:
///   F(x, tau) = exp(-tau^2 gamma z / 2) exp(-z x tau) f(x + gamma tau),
/// kept jet-valued; z = a + e b.
template <class F>
jet<double> weyl_evolve_jet(F&& f, double gamma, double a, double b, double x, double tau, int k) {
    const jet<double> z = variable(a, b, k);
    return exp(z * (-0.5 * tau * tau * gamma)) * exp(z * (-x * tau)) * f(x + gamma * tau);
}

template <class F>
double weyl_evolve(F&& f, double gamma, double a, double b, double x, double tau, int k) {
    return umbral_eval(weyl_evolve_jet(f, gamma, a, b, x, tau, k));
}

/// Heat-type solution with dual-Gaussian initial data, packaged as a profile
/// evaluator.
struct heat_solution {
    double a;
    double b;
    int k;
    double tau;

    double operator()(double x) const { return heat_dual_gaussian(a, b, x, tau, k); }
};

/// Paraxial beam solution with flattened initial data.
struct beam_solution {
    double alpha;
    int m;
    double tau;

    std::complex<double> operator()(double x) const {
        return schrodinger_flattened(x, tau, alpha, m);
    }
};

} // namespace hdual
