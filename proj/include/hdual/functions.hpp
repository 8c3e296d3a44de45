#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>

#include "jet.hpp"

namespace hdual {

namespace detail {

inline double factorial(int n) {
    double f = 1.0;
    for (int j = 2; j <= n; ++j) f *= j;
    return f;
}

} // namespace detail

// Derivative sources: callables yielding f^{(m)}(x) for m = 0..k. They feed
// both the jet lift below and the matrix realization in matrix.hpp.

struct exp_derivatives {
    template <jet_scalar T>
    T operator()(const T& x, int) const {
        using std::exp;
        return exp(x);
    }
};

struct sin_derivatives {
    template <jet_scalar T>
    T operator()(const T& x, int m) const {
        using std::cos;
        using std::sin;
        switch (m & 3) {
            case 0: return sin(x);
            case 1: return cos(x);
            case 2: return -sin(x);
            default: return -cos(x);
        }
    }
};

struct cos_derivatives {
    template <jet_scalar T>
    T operator()(const T& x, int m) const {
        return sin_derivatives{}(x, m + 1);
    }
};

struct log_derivatives {
    template <jet_scalar T>
    T operator()(const T& x, int m) const {
        using std::log;
        if constexpr (is_complex_scalar_v<T>) {
            if (x == T{}) throw eval_domain_error("ln: zero argument");
        } else {
            if (!(x > 0)) throw eval_domain_error("ln: non-positive real argument");
        }
        if (m == 0) return log(x);
        // (-1)^{m-1} (m-1)! / x^m
        T r = T(1);
        for (int j = 0; j < m; ++j) r /= x;
        r *= T(detail::factorial(m - 1));
        return (m % 2 == 0) ? -r : r;
    }
};

/// Derivatives of t -> t^alpha: (alpha)_m falling factorial times x^{alpha-m}.
struct power_derivatives {
    double alpha;

    template <jet_scalar T>
    T operator()(const T& x, int m) const {
        using std::pow;
        double ff = 1.0;
        for (int j = 0; j < m; ++j) ff *= (alpha - j);
        if (ff == 0.0) return T{};
        return pow(x, T(alpha - m)) * T(ff);
    }
};

/// Like power_derivatives{0.5} but anchored at std::sqrt for the value
/// itself, so order-zero jets agree bitwise with scalar evaluation.
struct sqrt_derivatives {
    template <jet_scalar T>
    T operator()(const T& x, int m) const {
        using std::sqrt;
        if (m == 0) return sqrt(x);
        return power_derivatives{0.5}(x, m);
    }
};

/// Analytic lift of a function through its derivative source:
///   f(u) = sum_{m=0}^{k} f^{(m)}(c_0)/m! * (u - c_0)^m,
/// evaluated by Horner's scheme on the nilpotent part.
template <class Src, jet_scalar T>
jet<T> lift(Src&& derivs, const jet<T>& u) {
    const int k = u.order();
    const T c0 = u[0];
    const jet<T> h = u - c0;

    std::vector<T> taylor(static_cast<std::size_t>(k) + 1);
    double fact = 1.0;
    for (int m = 0; m <= k; ++m) {
        if (m > 1) fact *= m;
        taylor[m] = derivs(c0, m) / T(fact);
    }

    jet<T> acc = jet<T>::constant(taylor[k], k);
    for (int m = k - 1; m >= 0; --m) acc = acc * h + taylor[m];
    return acc;
}

template <jet_scalar T>
jet<T> exp(const jet<T>& u) {
    return lift(exp_derivatives{}, u);
}

template <jet_scalar T>
jet<T> log(const jet<T>& u) {
    return lift(log_derivatives{}, u);
}

template <jet_scalar T>
jet<T> sin(const jet<T>& u) {
    return lift(sin_derivatives{}, u);
}

template <jet_scalar T>
jet<T> cos(const jet<T>& u) {
    return lift(cos_derivatives{}, u);
}

namespace detail {

template <jet_scalar T>
jet<T> ipow(jet<T> base, long n) {
    jet<T> r = unit<T>(base.order());
    while (n > 0) {
        if (n & 1) r = r * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return r;
}

} // namespace detail

/// u^alpha. Integer exponents go through repeated squaring (valid for any
/// leading coefficient); fractional exponents are the analytic lift of
/// t -> t^alpha and require a leading coefficient away from zero, positive
/// when the scalars are real.
template <jet_scalar T>
jet<T> pow(const jet<T>& u, double alpha) {
    using std::abs;
    if (alpha == std::nearbyint(alpha) && abs(alpha) <= 1e9) {
        const long n = static_cast<long>(std::nearbyint(alpha));
        if (n >= 0) return detail::ipow(u, n);
        return inv(detail::ipow(u, -n));
    }
    if (abs(u[0]) <= detail::singular_tol)
        throw singular_leading_coefficient("pow: leading coefficient vanishes");
    if constexpr (!is_complex_scalar_v<T>) {
        if (u[0] < 0)
            throw negative_base_fractional_power("pow: negative real base with fractional exponent");
    }
    return lift(power_derivatives{alpha}, u);
}

template <jet_scalar T>
jet<T> sqrt(const jet<T>& u) {
    using std::abs;
    if (abs(u[0]) <= detail::singular_tol)
        throw singular_leading_coefficient("sqrt: leading coefficient vanishes");
    if constexpr (!is_complex_scalar_v<T>) {
        if (u[0] < 0) throw negative_base_fractional_power("sqrt: negative real base");
    }
    return lift(sqrt_derivatives{}, u);
}

/// sign(c_0) * u; differentiable branch of |.| away from c_0 = 0.
template <jet_scalar T>
jet<T> abs(const jet<T>& u) {
    if constexpr (is_complex_scalar_v<T>) {
        throw eval_domain_error("abs: not defined for complex jets");
    } else {
        if (u[0] == 0) throw non_differentiable_point("abs: jet anchored at zero");
        return u[0] < 0 ? -u : u;
    }
}

} // namespace hdual
