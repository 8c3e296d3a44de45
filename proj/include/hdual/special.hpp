#pragma once

#include <cmath>
#include <vector>

#include "functions.hpp"
#include "jet.hpp"

namespace hdual {

// Hard degree cap: factorial-sized coefficients stay comfortably inside
// double range up to here.
inline constexpr int max_hermite_degree = 64;

namespace detail {

// The special functions below are written against a minimal ring interface
// (add, multiply, scale by double) so the same code evaluates over plain
// scalars and over jets; feeding a jet for y is exactly how the modified
// Hermite polynomials arise.
template <class R>
struct ring {
    static R from(double c) { return R(c); }
};

template <jet_scalar T>
struct ring<jet<T>> {
    static jet<T> from(double c) { return jet<T>::constant(T(c)); }
};

template <class R>
R ring_pow(R base, int n) {
    R r = ring<R>::from(1.0);
    while (n > 0) {
        if (n & 1) r = r * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return r;
}

} // namespace detail

/// Truncated exponential polynomial e_n(x) = sum_{r<=n} x^r/r!, summed in
/// ascending order with compensated summation.
inline double trunc_exp(int n, double x) {
    if (n < 0) throw std::invalid_argument("trunc_exp: negative order");
    double sum = 0.0, comp = 0.0, term = 1.0;
    for (int r = 0; r <= n; ++r) {
        if (r) term *= x / r;
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

/// Two-variable Hermite polynomial as its finite sum
///   H_n(x, y) = n! sum_r x^{n-2r} y^r / ((n-2r)! r!),
/// over any ring R (scalars or jets).
template <class R>
R hermite(int n, const R& x, const R& y) {
    if (n < 0) throw std::invalid_argument("hermite: negative degree");
    if (n > max_hermite_degree) throw degree_too_large("hermite: degree exceeds 64");
    R acc = detail::ring<R>::from(0.0);
    double coef = 1.0; // n! / ((n-2r)! r!)
    for (int r = 0; r <= n / 2; ++r) {
        if (r > 0) coef *= double(n - 2 * r + 2) * double(n - 2 * r + 1) / double(r);
        acc = acc + detail::ring_pow(x, n - 2 * r) * detail::ring_pow(y, r) * coef;
    }
    return acc;
}

/// H_0..H_nmax at (x, y) through the three-term recurrence
/// H_{n+1} = x H_n + 2 n y H_{n-1}; no degree cap, the recurrence never
/// touches factorials.
template <class R>
std::vector<R> hermite_seq(int nmax, const R& x, const R& y) {
    std::vector<R> h;
    h.reserve(static_cast<std::size_t>(nmax) + 1);
    h.push_back(detail::ring<R>::from(1.0));
    if (nmax == 0) return h;
    h.push_back(x);
    for (int n = 1; n < nmax; ++n) h.push_back(x * h[n] + y * h[n - 1] * (2.0 * n));
    return h;
}

/// Partial sum sum_{n<=N} t^n H_n(x,y) / n! of the exponential generating
/// function; converges to exp(x t + y t^2).
inline double hermite_egf_partial(double t, double x, double y, int N) {
    if (N < 0) throw std::invalid_argument("hermite_egf_partial: negative cutoff");
    const auto h = hermite_seq(N, x, y);
    double sum = 0.0, coef = 1.0;
    for (int n = 0; n <= N; ++n) {
        if (n) coef *= t / n;
        sum += coef * h[static_cast<std::size_t>(n)];
    }
    return sum;
}

/// Hermite-based truncated exponential sum_{r<=k} H_r(x,y) / r!.
inline double hermite_trunc_exp(int k, double x, double y) {
    if (k < 0) throw std::invalid_argument("hermite_trunc_exp: negative order");
    const auto h = hermite_seq(k, x, y);
    double sum = 0.0, coef = 1.0;
    for (int r = 0; r <= k; ++r) {
        if (r) coef /= r;
        sum += coef * h[static_cast<std::size_t>(r)];
    }
    return sum;
}

/// Partial sum sum_{n<=N} lambda^n H_{2n}(x,y) / n! of the double lacunary
/// generating function; signs ride on lambda. Converges to the Glaisher
/// closed form for |4 lambda y| < 1.
inline double lacunary_h20_partial(double lambda, double x, double y, int N) {
    if (N < 0) throw std::invalid_argument("lacunary_h20_partial: negative cutoff");
    const auto h = hermite_seq(2 * N, x, y);
    double sum = 0.0, coef = 1.0;
    for (int n = 0; n <= N; ++n) {
        if (n) coef *= lambda / n;
        sum += coef * h[static_cast<std::size_t>(2 * n)];
    }
    return sum;
}

/// d^n/dx^n exp(alpha x^2) = H_n(2 alpha x, alpha) exp(alpha x^2).
inline double gaussian_derivative(int n, double alpha, double x) {
    return hermite(n, 2.0 * alpha * x, alpha) * std::exp(alpha * x * x);
}

/// d^n/dx^n exp(-z x^2) with z = a + e b, truncated at order k: the whole of
/// H_n(-2 z x, -z) exp(-z x^2) is evaluated in jet arithmetic and projected.
inline double dual_gaussian_derivative(int n, double a, double b, double x, int k) {
    const jet<double> z = variable(a, b, k);
    const jet<double> h = hermite(n, z * (-2.0 * x), -z);
    return umbral_eval(h * exp(z * (-x * x)));
}

/// Independent cross-check of dual_gaussian_derivative: the explicit double
/// sum over (r, s) with the truncated powers <z^p> expanded binomially.
/// The double sum cancels heavily for larger |x| and n, so its accuracy
/// degrades there; the jet route does not and stays authoritative.
inline double dual_gaussian_derivative_series(int n, double a, double b, double x, int k) {
    // <z^p> truncated at order k, and its cancellation-free counterpart used
    // to bound the tail (a term can vanish structurally, e.g. when a+b = 0,
    // so observed smallness of the terms themselves proves nothing).
    const auto zpow = [&](int p, bool absolute) {
        double s = 0.0, c = 1.0;
        const double aa = absolute ? std::abs(a) : a;
        const double bb = absolute ? std::abs(b) : b;
        const int mmax = p < k ? p : k;
        for (int m = 0; m <= mmax; ++m) {
            if (m) c *= double(p - m + 1) / m;
            s += c * std::pow(aa, p - m) * std::pow(bb, m);
        }
        return s;
    };
    double total = 0.0;
    const double nf = detail::factorial(n);
    for (int r = 0; r <= n / 2; ++r) {
        const double base =
            nf * std::pow(2.0, n - 2 * r) / (detail::factorial(n - 2 * r) * detail::factorial(r));
        double mag = base * std::pow(x, n - 2 * r); // base * x^{n-2r+2s} / s!
        int quiet = 0;
        for (int s = 0; s <= 300; ++s) {
            if (s) mag *= x * x / s;
            const int p = n - r + s;
            const double sgn = (p % 2 == 0) ? 1.0 : -1.0;
            total += sgn * mag * zpow(p, false);
            const double bound = std::abs(mag) * zpow(p, true);
            quiet = bound < 1e-18 * (std::abs(total) + 1.0) ? quiet + 1 : 0;
            if (s > 4 && quiet >= 3) break;
        }
    }
    return total;
}

/// Second-order truncation of H_n(x, a + e b):
///   H_n(x,a) + b dH_n/da + (b^2/2) d^2H_n/da^2,
/// with the derivatives reduced through dH_n/dy = n(n-1) H_{n-2}.
inline double modified_hermite_order2(int n, double x, double a, double b) {
    double v = hermite(n, x, a);
    if (n >= 2) {
        const double c2 = double(n) * (n - 1);
        v += b * c2 * hermite(n - 2, x, a);
        if (n >= 4) {
            const double c4 = c2 * (n - 2) * (n - 3);
            v += 0.5 * b * b * c4 * hermite(n - 4, x, a);
        }
    }
    return v;
}

} // namespace hdual
