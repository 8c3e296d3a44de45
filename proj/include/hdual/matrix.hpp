#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "errors.hpp"

namespace hdual {

/// Dense square matrix over doubles; just enough linear algebra to realize
/// polynomials in the nilpotent shift matrices. Kept dense on purpose, the
/// dimensions in play are small (policy cap 64).
class dn_matrix {
public:
    explicit dn_matrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim, 0.0) {
        if (dim < 1) throw dimension_too_small("dn_matrix: dimension must be >= 1");
    }

    static dn_matrix identity(int dim) {
        dn_matrix m(dim);
        for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
        return m;
    }

    int dim() const noexcept { return dim_; }

    double& at(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
    const double& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * dim_ + j]; }

    friend dn_matrix operator+(const dn_matrix& a, const dn_matrix& b) {
        dn_matrix out(a.dim_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) out.a_[i] = a.a_[i] + b.a_[i];
        return out;
    }

    friend dn_matrix operator*(const dn_matrix& a, double s) {
        dn_matrix out(a.dim_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) out.a_[i] = a.a_[i] * s;
        return out;
    }

    friend dn_matrix operator*(double s, const dn_matrix& a) { return a * s; }

    friend dn_matrix operator*(const dn_matrix& a, const dn_matrix& b) {
        const int n = a.dim_;
        dn_matrix out(n);
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) {
                const double v = a.at(i, l);
                if (v == 0.0) continue;
                for (int j = 0; j < n; ++j) out.at(i, j) += v * b.at(l, j);
            }
        return out;
    }

    friend bool operator==(const dn_matrix& a, const dn_matrix& b) {
        return a.dim_ == b.dim_ && a.a_ == b.a_;
    }

private:
    int dim_;
    std::vector<double> a_; // row major
};

enum class shift_sign { plus, minus };

/// The matrix (eps_k^±)^l with entries delta_{j, i±l}; the zero matrix once
/// l >= k, which makes the nilpotency (eps_k^±)^k = 0 exact.
inline dn_matrix eps_power(int k, shift_sign sign, int l) {
    if (k < 2) throw dimension_too_small("eps_power: dimension must be >= 2");
    if (l < 0) throw std::invalid_argument("eps_power: negative power");
    dn_matrix m(k);
    for (int i = 0; i < k; ++i) {
        const int j = sign == shift_sign::plus ? i + l : i - l;
        if (j >= 0 && j < k) m.at(i, j) = 1.0;
    }
    return m;
}

/// Component-wise action of f on x*1 + y*eps_k^+:
///   sum_{m=0}^{k-1} y^m f^{(m)}(x)/m! (eps_k^+)^m,
/// an upper triangular Toeplitz matrix.
template <class Src>
dn_matrix apply_fn(Src&& derivs, double x, double y, int k) {
    if (k < 2) throw dimension_too_small("apply_fn: dimension must be >= 2");
    dn_matrix m(k);
    double coef = 1.0; // y^m / m!
    for (int p = 0; p < k; ++p) {
        if (p > 0) coef *= y / p;
        const double v = coef * derivs(x, p);
        for (int i = 0; i + p < k; ++i) m.at(i, i + p) = v;
    }
    return m;
}

/// <e_1| M |1>: the sum of the first row.
inline double eval_bracket(const dn_matrix& m) {
    double s = 0.0;
    for (int j = 0; j < m.dim(); ++j) s += m.at(0, j);
    return s;
}

/// exp(eps_{n+1}^+ x) applied to the all-ones vector; component i holds the
/// truncated exponential polynomial e_{n-i}(x), so the first entry is e_n(x)
/// and the last is 1.
inline std::vector<double> trunc_exp_stack(int n, double x) {
    if (n < 0) throw std::invalid_argument("trunc_exp_stack: negative order");
    if (n == 0) return {1.0};
    const int dim = n + 1;
    dn_matrix m = dn_matrix::identity(dim);
    dn_matrix p = dn_matrix::identity(dim);
    const dn_matrix e = eps_power(dim, shift_sign::plus, 1);
    double coef = 1.0; // x^r / r!
    for (int r = 1; r <= n; ++r) {
        p = p * e;
        coef *= x / r;
        m = m + p * coef;
    }
    std::vector<double> stack(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        double s = 0.0;
        for (int j = 0; j < dim; ++j) s += m.at(i, j);
        stack[static_cast<std::size_t>(i)] = s;
    }
    return stack;
}

} // namespace hdual
