#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <type_traits>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace hdual {

namespace detail {
// Values below this are treated as a vanishing leading coefficient; anything
// above is accepted and may amplify, which is the caller's business.
inline constexpr double singular_tol = 1e-300;
} // namespace detail

/// Truncated power series c_0 + c_1 e + ... + c_k e^k in a nilpotent unit e
/// with e^{k+1} = 0. The truncation is structural: arithmetic simply never
/// produces coefficients beyond the stored order, so nilpotency is exact.
///
/// Values are immutable after construction and all operations are pure, so
/// jets can be shared freely across threads.
template <jet_scalar T>
class jet {
public:
    using scalar_type = T;

    jet() : c_(1, T{}) {}

    explicit jet(std::vector<T> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.assign(1, T{});
    }

    jet(std::initializer_list<T> coeffs) : c_(coeffs) {
        if (c_.empty()) c_.assign(1, T{});
    }

    /// Constant series: value in degree zero, zeros up to `order`.
    static jet constant(const T& value, int order = 0) {
        std::vector<T> c(static_cast<std::size_t>(std::max(order, 0)) + 1, T{});
        c[0] = value;
        return jet(std::move(c));
    }

    int order() const noexcept { return static_cast<int>(c_.size()) - 1; }

    const T& operator[](std::size_t m) const { return c_[m]; }
    const std::vector<T>& coeffs() const noexcept { return c_; }

    /// Degree-zero coefficient (the point the series is anchored at).
    const T& value() const noexcept { return c_[0]; }

    /// Same series embedded at order >= this->order(), zero padded.
    jet padded(int order) const {
        if (order <= this->order()) return *this;
        std::vector<T> c(static_cast<std::size_t>(order) + 1, T{});
        std::copy(c_.begin(), c_.end(), c.begin());
        return jet(std::move(c));
    }

    friend bool operator==(const jet& a, const jet& b) { return a.c_ == b.c_; }

private:
    std::vector<T> c_; // exactly order()+1 entries
};

template <jet_scalar T>
jet(std::vector<T>) -> jet<T>;

/// The seed x + e*y at truncation order k (y is dropped when k = 0).
template <jet_scalar T>
jet<T> variable(const T& x, const T& y, int k) {
    if (k < 0) throw std::invalid_argument("variable: negative truncation order");
    std::vector<T> c(static_cast<std::size_t>(k) + 1, T{});
    c[0] = x;
    if (k >= 1) c[1] = y;
    return jet<T>(std::move(c));
}

template <jet_scalar T>
jet<T> unit(int order = 0) {
    return jet<T>::constant(T(1), order);
}

template <jet_scalar U, jet_scalar T>
jet<U> jet_cast(const jet<T>& u) {
    std::vector<U> c(u.coeffs().size());
    for (std::size_t m = 0; m < c.size(); ++m) c[m] = static_cast<U>(u[m]);
    return jet<U>(std::move(c));
}

// ---- ring operations ------------------------------------------------------

template <jet_scalar T>
jet<T> operator+(const jet<T>& a, const jet<T>& b) {
    const int k = std::max(a.order(), b.order());
    std::vector<T> out(static_cast<std::size_t>(k) + 1, T{});
    for (int m = 0; m <= a.order(); ++m) out[m] = a[m];
    for (int m = 0; m <= b.order(); ++m) out[m] += b[m];
    return jet<T>(std::move(out));
}

template <jet_scalar T>
jet<T> operator-(const jet<T>& a, const jet<T>& b) {
    const int k = std::max(a.order(), b.order());
    std::vector<T> out(static_cast<std::size_t>(k) + 1, T{});
    for (int m = 0; m <= a.order(); ++m) out[m] = a[m];
    for (int m = 0; m <= b.order(); ++m) out[m] -= b[m];
    return jet<T>(std::move(out));
}

template <jet_scalar T>
jet<T> operator-(const jet<T>& a) {
    std::vector<T> out(a.coeffs());
    for (auto& c : out) c = -c;
    return jet<T>(std::move(out));
}

template <jet_scalar T>
jet<T> operator+(const jet<T>& a) {
    return a;
}

/// Truncated Cauchy product; coefficients above the larger input order are
/// never formed.
template <jet_scalar T>
jet<T> operator*(const jet<T>& a, const jet<T>& b) {
    const int k = std::max(a.order(), b.order());
    std::vector<T> out(static_cast<std::size_t>(k) + 1, T{});
    for (int i = 0; i <= a.order(); ++i) {
        const int jmax = std::min(b.order(), k - i);
        for (int j = 0; j <= jmax; ++j) out[i + j] += a[i] * b[j];
    }
    return jet<T>(std::move(out));
}

/// Multiplicative inverse by the triangular recursion
///   d_0 = 1/c_0,  d_m = -(1/c_0) * sum_{j=1}^m c_j d_{m-j}.
template <jet_scalar T>
jet<T> inv(const jet<T>& u) {
    using std::abs;
    if (abs(u[0]) <= detail::singular_tol)
        throw singular_leading_coefficient("inv: leading coefficient vanishes");
    const int k = u.order();
    std::vector<T> d(static_cast<std::size_t>(k) + 1);
    d[0] = T(1) / u[0];
    for (int m = 1; m <= k; ++m) {
        T s{};
        for (int j = 1; j <= m; ++j) s += u[j] * d[m - j];
        d[m] = -d[0] * s;
    }
    return jet<T>(std::move(d));
}

template <jet_scalar T>
jet<T> operator/(const jet<T>& a, const jet<T>& b) {
    return a * inv(b);
}

// ---- scalar mixed forms ----------------------------------------------------

template <jet_scalar T>
jet<T> operator+(const jet<T>& a, const std::type_identity_t<T>& s) {
    std::vector<T> out(a.coeffs());
    out[0] += s;
    return jet<T>(std::move(out));
}

template <jet_scalar T>
jet<T> operator+(const std::type_identity_t<T>& s, const jet<T>& a) {
    return a + s;
}

template <jet_scalar T>
jet<T> operator-(const jet<T>& a, const std::type_identity_t<T>& s) {
    std::vector<T> out(a.coeffs());
    out[0] -= s;
    return jet<T>(std::move(out));
}

template <jet_scalar T>
jet<T> operator-(const std::type_identity_t<T>& s, const jet<T>& a) {
    return (-a) + s;
}

template <jet_scalar T>
jet<T> operator*(const jet<T>& a, const std::type_identity_t<T>& s) {
    std::vector<T> out(a.coeffs());
    for (auto& c : out) c *= s;
    return jet<T>(std::move(out));
}

template <jet_scalar T>
jet<T> operator*(const std::type_identity_t<T>& s, const jet<T>& a) {
    return a * s;
}

template <jet_scalar T>
jet<T> operator/(const jet<T>& a, const std::type_identity_t<T>& s) {
    std::vector<T> out(a.coeffs());
    for (auto& c : out) c /= s;
    return jet<T>(std::move(out));
}

template <jet_scalar T>
jet<T> operator/(const std::type_identity_t<T>& s, const jet<T>& a) {
    return inv(a) * s;
}

// ---- mixed scalar kinds (real promotes to complex) -------------------------

template <jet_scalar T, jet_scalar U>
    requires(!std::is_same_v<T, U>)
auto operator+(const jet<T>& a, const jet<U>& b) {
    using R = promote_t<T, U>;
    return jet_cast<R>(a) + jet_cast<R>(b);
}

template <jet_scalar T, jet_scalar U>
    requires(!std::is_same_v<T, U>)
auto operator-(const jet<T>& a, const jet<U>& b) {
    using R = promote_t<T, U>;
    return jet_cast<R>(a) - jet_cast<R>(b);
}

template <jet_scalar T, jet_scalar U>
    requires(!std::is_same_v<T, U>)
auto operator*(const jet<T>& a, const jet<U>& b) {
    using R = promote_t<T, U>;
    return jet_cast<R>(a) * jet_cast<R>(b);
}

template <jet_scalar T, jet_scalar U>
    requires(!std::is_same_v<T, U>)
auto operator/(const jet<T>& a, const jet<U>& b) {
    using R = promote_t<T, U>;
    return jet_cast<R>(a) / jet_cast<R>(b);
}

// ---- evaluation ------------------------------------------------------------

/// Umbral evaluation: truncate at the stored order (structural) and then set
/// the nilpotent unit to one, i.e. sum the retained coefficients.
template <jet_scalar T>
T umbral_eval(const jet<T>& u) {
    T s{};
    for (int m = 0; m <= u.order(); ++m) s += u[m];
    return s;
}

/// m-th derivative carried by a jet seeded with variable(x, 1, k): m! * c_m.
template <jet_scalar T>
T derivative(const jet<T>& u, int m) {
    if (m < 0 || m > u.order()) throw index_out_of_range("derivative: index exceeds jet order");
    double f = 1.0;
    for (int j = 2; j <= m; ++j) f *= j;
    return u[m] * T(f);
}

template <jet_scalar T>
std::ostream& operator<<(std::ostream& os, const jet<T>& u) {
    os << '(';
    for (int m = 0; m <= u.order(); ++m) {
        if (m) os << ", ";
        os << u[m];
    }
    return os << ')';
}

} // namespace hdual
