#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "errors.hpp"

namespace hdual {

/// Uniformly sampled 1-D profile.
template <class T = double>
struct grid_function {
    double x0;
    double dx;
    std::vector<T> values;

    grid_function(double x0_, double dx_, std::vector<T> v)
        : x0(x0_), dx(dx_), values(std::move(v)) {
        if (!(dx > 0)) throw std::invalid_argument("grid_function: dx must be positive");
        if (values.empty()) throw std::invalid_argument("grid_function: empty sample");
    }

    template <class F>
    static grid_function sample(F&& f, double xmin, double xmax, int n) {
        if (n < 2 || !(xmax > xmin)) throw std::invalid_argument("grid_function: bad grid");
        const double step = (xmax - xmin) / (n - 1);
        std::vector<T> v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = f(xmin + i * step);
        return grid_function(xmin, step, std::move(v));
    }

    double x(int i) const { return x0 + i * dx; }
    int size() const { return static_cast<int>(values.size()); }
};

struct quadrature_spec {
    double abs_tol = 1e-10;
    int max_depth = 40;
};

/// Central difference stencils of second-order accuracy for derivatives of
/// order m = 1..4.
template <class F>
double finite_difference(F&& f, double x, int m, double h) {
    if (!(h > 0)) throw std::invalid_argument("finite_difference: step must be positive");
    switch (m) {
        case 1: return (f(x + h) - f(x - h)) / (2 * h);
        case 2: return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
        case 3: return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h * h * h);
        case 4:
            return (f(x + 2 * h) - 4 * f(x + h) + 6 * f(x) - 4 * f(x - h) + f(x - 2 * h)) /
                   (h * h * h * h);
        default: throw unsupported_order("finite_difference: order must be 1..4");
    }
}

/// Step defaulted to eps^{1/(m+2)} scaled by max(1, |x|), balancing stencil
/// truncation against round-off.
template <class F>
double finite_difference(F&& f, double x, int m) {
    if (m < 1 || m > 4) throw unsupported_order("finite_difference: order must be 1..4");
    const double h =
        std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (m + 2)) * std::max(1.0, std::abs(x));
    return finite_difference(f, x, m, h);
}

namespace detail {

template <class F>
double simpson_adapt(F& f, double a, double m, double b, double fa, double fm, double fb,
                     double whole, double tol, int depth, int max_depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth >= max_depth) throw max_depth_exceeded("integrate: max bisection depth reached");
    return simpson_adapt(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
           simpson_adapt(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

template <class F>
double simpson_panel(F& f, double a, double b, double tol, int max_depth) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_adapt(f, a, m, b, fa, fm, fb, whole, tol, 0, max_depth);
}

// Largest |f| over a handful of probe points; sets the scale the decay
// cutoff is relative to.
template <class F>
double probe_scale(F& f, double center) {
    double s = 0.0;
    for (const double d : {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0})
        s = std::max(s, std::abs(f(center + d)));
    return s;
}

// Half-width at which |f| has fallen below 1e-18 of its probed peak,
// found by doubling from 1.
template <class F>
double decay_width(F& f, double center, double cap) {
    const double scale = probe_scale(f, center);
    if (scale == 0.0) return 1.0;
    double w = 1.0;
    while (w < cap &&
           (std::abs(f(center + w)) > 1e-18 * scale || std::abs(f(center - w)) > 1e-18 * scale))
        w *= 2.0;
    return w;
}

} // namespace detail

/// Adaptive composite Simpson on [a, b] to the requested absolute tolerance.
/// The interval is pre-split into panels so narrow features cannot hide
/// between the initial sample points.
template <class F>
double integrate(F&& f, double a, double b, quadrature_spec spec = {}, int panels = 16) {
    if (a == b) return 0.0;
    double total = 0.0;
    const double step = (b - a) / panels;
    for (int p = 0; p < panels; ++p)
        total += detail::simpson_panel(f, a + p * step, a + (p + 1) * step, spec.abs_tol / panels,
                                       spec.max_depth);
    return total;
}

/// Integral over the real line of an integrand with exponential-class decay;
/// the domain is truncated where |f| falls below 1e-18 of its peak.
template <class F>
double integrate_real_line(F&& f, quadrature_spec spec = {}) {
    const double w = detail::decay_width(f, 0.0, 1.05e6);
    return integrate(f, -w, w, spec);
}

/// Integral over the real line of an algebraically decaying integrand via
/// the substitution x = tan(u).
template <class F>
double integrate_real_line_algebraic(F&& f, quadrature_spec spec = {}) {
    auto g = [&](double u) {
        const double c = std::cos(u);
        return f(std::tan(u)) / (c * c);
    };
    const double d = 1e-9;
    return integrate(g, -std::numbers::pi / 2 + d, std::numbers::pi / 2 - d, spec);
}

/// Heat-kernel convolution (4 pi tau)^{-1/2} \int exp(-(x-s)^2/(4 tau)) f0(s) ds.
/// The domain is |s - x| <= 8 sqrt(2 tau) plus the decay width of the initial
/// profile, with panels fine enough to resolve the kernel.
template <class F>
double heat_convolve(F&& f0, double x, double tau, quadrature_spec spec = {}) {
    if (!(tau > 0)) throw std::invalid_argument("heat_convolve: tau must be positive");
    const double r = 8.0 * std::sqrt(2.0 * tau);
    const double w = detail::decay_width(f0, 0.0, 257.0);
    const double half = r + w;
    auto g = [&](double s) {
        const double d = x - s;
        return std::exp(-d * d / (4.0 * tau)) * f0(s);
    };
    const int panels = std::max(16, static_cast<int>(std::ceil(2.0 * half / (0.5 * r))) & ~1);
    const double norm = 1.0 / std::sqrt(4.0 * std::numbers::pi * tau);
    return norm * integrate(g, x - half, x + half, spec, panels);
}

} // namespace hdual
