#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hdual.hpp"

namespace hdual::selfcheck {

struct result {
    std::string name;
    double max_err = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

struct options {
    std::uint64_t seed = 20260808;
    // Test hook: evaluate the Hermite-series side of the heat cross-check
    // with the wrong sign, which must make that check fail.
    bool mutate_heat_sign = false;
    std::string only; // prefix filter on check names
};

/// Fixed expression corpus with evaluation points kept away from zeros of the
/// low-order derivatives, so relative comparisons stay meaningful.
inline constexpr std::array<std::pair<const char*, double>, 10> derivative_corpus{{
    {"exp(-x^2)", 1.0},
    {"x*sin(x)", 0.7},
    {"1/(1+x^2)", 0.5},
    {"ln(1+x^2)", 0.8},
    {"sqrt(1+x^2)", 1.2},
    {"exp(x)*cos(x)", 0.4},
    {"x^3-2*x+1", 0.9},
    {"sin(x)/x", 1.3},
    {"cos(2*x)+x^3", 0.5},
    {"(1+x)^0.5", 0.5},
}};

namespace detail {

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max({std::abs(want), std::abs(got), 1e-30});
}

// Error of a jet against a reference jet, relative to the coefficient scale.
inline double jet_err(const jet<double>& got, const jet<double>& want) {
    double scale = 1.0;
    for (int m = 0; m <= want.order(); ++m) scale = std::max(scale, std::abs(want[m]));
    double e = 0.0;
    const int k = std::max(got.order(), want.order());
    for (int m = 0; m <= k; ++m) {
        const double g = m <= got.order() ? got[m] : 0.0;
        const double w = m <= want.order() ? want[m] : 0.0;
        e = std::max(e, std::abs(g - w) / scale);
    }
    return e;
}

// f^{(m)} of 1/(1+x^2) via the partial fractions 1/(x-i) - 1/(x+i).
struct rational_derivatives {
    double operator()(double x, int m) const {
        const std::complex<double> i(0.0, 1.0);
        const std::complex<double> v =
            std::pow(x - i, -(m + 1.0)) - std::pow(x + i, -(m + 1.0));
        const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
        return (sgn * hdual::detail::factorial(m) / (2.0 * i) * v).real();
    }
};

class runner {
public:
    explicit runner(const options& opt) : opt_(opt), rng_(opt.seed) {}

    template <class Fn>
    void run_check(const char* name, double tol, Fn&& fn) {
        if (!opt_.only.empty() && !std::string_view(name).starts_with(opt_.only)) return;
        result r;
        r.name = name;
        r.tolerance = tol;
        try {
            r.max_err = fn(*this);
            r.pass = r.max_err <= tol;
        } catch (const std::exception& e) {
            r.max_err = std::numeric_limits<double>::infinity();
            r.pass = false;
            r.note = e.what();
        }
        results_.push_back(std::move(r));
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }

    int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    jet<double> random_jet(int k, double lo = -2.0, double hi = 2.0) {
        std::vector<double> c(static_cast<std::size_t>(k) + 1);
        for (auto& v : c) v = uniform(lo, hi);
        return jet<double>(std::move(c));
    }

    const options& opt() const { return opt_; }
    std::vector<result> take() { return std::move(results_); }

private:
    options opt_;
    std::mt19937_64 rng_;
    std::vector<result> results_;
};

// ---- jet -------------------------------------------------------------------

inline double check_ring_laws(runner& r) {
    double err = 0.0;
    for (int c = 0; c < 400; ++c) {
        const int k = r.uniform_int(0, 8);
        const auto u = r.random_jet(k), v = r.random_jet(k), w = r.random_jet(k);
        err = std::max(err, jet_err(u * v, v * u));
        err = std::max(err, jet_err((u * v) * w, u * (v * w)));
        err = std::max(err, jet_err(u * (v + w), u * v + u * w));
    }
    return err;
}

inline double check_nilpotency(runner&) {
    for (int k = 0; k <= 8; ++k) {
        jet<double> eps = variable(0.0, 1.0, k);
        if (k == 0) eps = jet<double>{0.0};
        jet<double> p = unit<double>(k);
        for (int j = 0; j <= k; ++j) p = p * eps;
        for (int m = 0; m <= k; ++m)
            if (p[static_cast<std::size_t>(m)] != 0.0) return std::numeric_limits<double>::infinity();
    }
    return 0.0;
}

inline double check_inverse_law(runner& r) {
    double err = 0.0;
    for (int c = 0; c < 200; ++c) {
        const int k = r.uniform_int(0, 8);
        auto u = r.random_jet(k, -1.5, 1.5);
        // leading coefficient log-uniform in magnitude down to 1e-8
        const double mag = std::pow(10.0, r.uniform(-8.0, 0.3));
        std::vector<double> cs(u.coeffs());
        cs[0] = (r.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0) * mag;
        u = jet<double>(std::move(cs));
        const auto d = inv(u);
        const auto prod = u * d;
        for (int m = 0; m <= k; ++m) {
            double scale = 1.0;
            for (int j = 0; j <= m; ++j) scale += std::abs(u[j]) * std::abs(d[m - j]);
            const double want = m == 0 ? 1.0 : 0.0;
            err = std::max(err, std::abs(prod[m] - want) / scale);
        }
    }
    return err;
}

inline double check_lift_homomorphism(runner& r) {
    double err = 0.0;
    for (int c = 0; c < 200; ++c) {
        const int k = r.uniform_int(0, 8);
        const auto u = r.random_jet(k, -1.0, 1.0), v = r.random_jet(k, -1.0, 1.0);
        err = std::max(err, jet_err(exp(u + v), exp(u) * exp(v)));
    }
    return err;
}

inline double check_umbral_linearity(runner& r) {
    double err = 0.0;
    for (int c = 0; c < 200; ++c) {
        const int k = r.uniform_int(0, 8);
        std::vector<double> cu(static_cast<std::size_t>(k) + 1), cv(cu);
        for (auto& x : cu) x = r.uniform_int(-3, 3);
        for (auto& x : cv) x = r.uniform_int(-3, 3);
        const double alpha = r.uniform_int(-3, 3), beta = r.uniform_int(-3, 3);
        const jet<double> u(std::move(cu)), v(std::move(cv));
        const double lhs = umbral_eval(u * alpha + v * beta);
        const double rhs = alpha * umbral_eval(u) + beta * umbral_eval(v);
        err = std::max(err, std::abs(lhs - rhs));
    }
    return err;
}

// ---- matrix realization ----------------------------------------------------

inline double check_matrix_nilpotency(runner&) {
    for (int k = 2; k <= 12; ++k) {
        for (const auto sign : {shift_sign::plus, shift_sign::minus}) {
            const auto e = eps_power(k, sign, 1);
            dn_matrix p = dn_matrix::identity(k);
            for (int j = 0; j < k; ++j) p = p * e;
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    if (p.at(i, j) != 0.0) return std::numeric_limits<double>::infinity();
            if (!(p == eps_power(k, sign, k))) return std::numeric_limits<double>::infinity();
        }
    }
    return 0.0;
}

inline double check_representation_equivalence(runner& r) {
    double err = 0.0;
    for (int c = 0; c < 200; ++c) {
        const int k = r.uniform_int(1, 6);
        const double x = r.uniform(-2.0, 2.0), y = r.uniform(-1.0, 1.0);
        const auto u = variable(x, y, k);
        double bracket = 0.0, direct = 0.0;
        switch (c % 3) {
            case 0:
                bracket = eval_bracket(apply_fn(exp_derivatives{}, x, y, k + 1));
                direct = umbral_eval(exp(u));
                break;
            case 1:
                bracket = eval_bracket(apply_fn(sin_derivatives{}, x, y, k + 1));
                direct = umbral_eval(sin(u));
                break;
            default:
                bracket = eval_bracket(apply_fn(rational_derivatives{}, x, y, k + 1));
                direct = umbral_eval(inv(u * u + 1.0));
                break;
        }
        err = std::max(err, rel_err(direct, bracket));
    }
    return err;
}

inline double check_apply_fn_product(runner& r) {
    struct exp2_derivatives {
        double operator()(double x, int m) const { return std::pow(2.0, m) * std::exp(2.0 * x); }
    };
    double err = 0.0;
    for (int c = 0; c < 50; ++c) {
        const int k = r.uniform_int(2, 8);
        const double x = r.uniform(-1.0, 1.0), y = r.uniform(-1.0, 1.0);
        const auto lhs = apply_fn(exp2_derivatives{}, x, y, k);
        const auto ff = apply_fn(exp_derivatives{}, x, y, k);
        const auto rhs = ff * ff;
        double scale = 1.0;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) scale = std::max(scale, std::abs(lhs.at(i, j)));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                err = std::max(err, std::abs(lhs.at(i, j) - rhs.at(i, j)) / scale);
    }
    return err;
}

inline double check_trunc_exp_stack(runner&) {
    double err = 0.0;
    for (const double x : {-1.3, 0.7, 2.1}) {
        for (int n = 0; n <= 8; ++n) {
            const auto stack = trunc_exp_stack(n, x);
            for (int i = 0; i <= n; ++i)
                err = std::max(err, rel_err(stack[static_cast<std::size_t>(i)], trunc_exp(n - i, x)));
        }
    }
    return err;
}

// ---- special functions -----------------------------------------------------

inline double check_trunc_exp_derivative(runner& r) {
    double err = 0.0;
    const double h = 1e-4;
    for (int n = 1; n <= 10; ++n) {
        const double x = r.uniform(-2.0, 2.0);
        const double fd = (trunc_exp(n, x + h) - trunc_exp(n, x - h)) / (2.0 * h);
        err = std::max(err, std::abs(fd - trunc_exp(n - 1, x)));
    }
    return err;
}

inline double check_hermite_derivative_recurrence(runner& r) {
    double err = 0.0;
    for (int c = 0; c < 40; ++c) {
        const int n = r.uniform_int(1, 10);
        const double x = r.uniform(-2.0, 2.0), y = r.uniform(-1.0, 1.0);
        const double fd = finite_difference([&](double t) { return hermite(n, t, y); }, x, 1);
        const double want = n * hermite(n - 1, x, y);
        err = std::max(err, std::abs(fd - want) / std::max(1.0, std::abs(want)));
    }
    return err;
}

inline double check_hermite_recurrence(runner& r) {
    double err = 0.0;
    for (int c = 0; c < 100; ++c) {
        const int n = r.uniform_int(1, 20);
        const double x = r.uniform(-2.0, 2.0), y = r.uniform(-1.0, 1.0);
        const double lhs = hermite(n + 1, x, y);
        const double rhs = x * hermite(n, x, y) + 2.0 * y * n * hermite(n - 1, x, y);
        err = std::max(err, rel_err(lhs, rhs));
    }
    return err;
}

inline double check_hermite_heat_identity(runner& r) {
    double err = 0.0;
    for (int c = 0; c < 40; ++c) {
        const int n = r.uniform_int(2, 10);
        const double x = r.uniform(-2.0, 2.0), y = r.uniform(-1.0, 1.0);
        const double fd = finite_difference([&](double t) { return hermite(n, x, t); }, y, 1);
        const double want = double(n) * (n - 1) * hermite(n - 2, x, y);
        err = std::max(err, std::abs(fd - want) / std::max(1.0, std::abs(want)));
    }
    return err;
}

inline double check_hermite_ode(runner& r) {
    double err = 0.0;
    for (int c = 0; c < 100; ++c) {
        const int n = r.uniform_int(1, 20);
        const double x = r.uniform(-2.0, 2.0), y = r.uniform(-1.0, 1.0);
        // residual of 2y H_n'' + x H_n' = n H_n, relative to the largest term
        const double t3 = n * hermite(n, x, y);
        const double t2 = x * n * hermite(n - 1, x, y);
        const double t1 = n >= 2 ? 2.0 * y * double(n) * (n - 1) * hermite(n - 2, x, y) : 0.0;
        const double scale = std::max({1.0, std::abs(t1), std::abs(t2), std::abs(t3)});
        err = std::max(err, std::abs(t1 + t2 - t3) / scale);
        // same identity with y replaced by a jet, coefficient-wise
        if (c % 10 == 0) {
            const jet<double> yj = variable(y, 0.3, 2);
            const jet<double> xj = jet<double>::constant(x);
            const jet<double> t3j = hermite(n, xj, yj) * double(n);
            const jet<double> t2j = xj * double(n) * hermite(n - 1, xj, yj);
            jet<double> rj = t2j - t3j;
            double jscale = 1.0;
            for (int m = 0; m <= t3j.order(); ++m) jscale = std::max(jscale, std::abs(t3j[m]));
            if (n >= 2) {
                const jet<double> t1j = yj * (2.0 * n * (n - 1.0)) * hermite(n - 2, xj, yj);
                rj = rj + t1j;
                for (int m = 0; m <= t1j.order(); ++m) jscale = std::max(jscale, std::abs(t1j[m]));
            }
            for (int m = 0; m <= rj.order(); ++m)
                err = std::max(err, std::abs(rj[m]) / jscale);
        }
    }
    return err;
}

inline double check_hermite_egf(runner& r) {
    double err = 0.0;
    for (int c = 0; c < 60; ++c) {
        const double t = r.uniform(-0.4, 0.4), x = r.uniform(-0.6, 0.6), y = r.uniform(-0.6, 0.6);
        const double want = std::exp(x * t + y * t * t);
        err = std::max(err, rel_err(hermite_egf_partial(t, x, y, 30), want));
    }
    return err;
}

inline double check_lacunary_glaisher(runner& r) {
    double err = 0.0;
    err = rel_err(lacunary_h20_partial(-0.2, 0.5, 0.1, 40), glaisher(0.2, 0.5, 0.1));
    for (int c = 0; c < 30; ++c) {
        const double a = r.uniform(0.05, 0.3), x = r.uniform(-1.0, 1.0), tau = r.uniform(0.05, 0.25);
        if (!(std::abs(4.0 * a * tau) < 0.5)) continue; // stay inside the convergence disc
        err = std::max(err, rel_err(lacunary_h20_partial(-a, x, tau, 40), glaisher(a, x, tau)));
    }
    return err;
}

inline double check_gaussian_derivative_fd(runner&) {
    double err = 0.0;
    for (const auto& [n, alpha, x] :
         {std::tuple{3, -0.5, 0.4}, std::tuple{2, -0.8, 0.9}, std::tuple{3, 0.4, -0.6}}) {
        const double closed = gaussian_derivative(n, alpha, x);
        const double a = alpha;
        const double fd = finite_difference([a](double t) { return std::exp(a * t * t); }, x, n);
        err = std::max(err, std::abs(fd - closed) / std::max(1.0, std::abs(closed)));
    }
    return err;
}

inline double check_dual_gaussian_derivative_paths(runner& r) {
    double err = rel_err(dual_gaussian_derivative(2, 1.0, 0.3, 0.5, 2),
                         dual_gaussian_derivative_series(2, 1.0, 0.3, 0.5, 2));
    for (int c = 0; c < 30; ++c) {
        const int n = r.uniform_int(0, 5), k = r.uniform_int(0, 4);
        const double a = r.uniform(0.5, 1.5), b = r.uniform(-0.5, 0.5), x = r.uniform(-1.2, 1.2);
        const double jp = dual_gaussian_derivative(n, a, b, x, k);
        const double sp = dual_gaussian_derivative_series(n, a, b, x, k);
        err = std::max(err, std::abs(jp - sp) / std::max(1.0, std::abs(jp)));
    }
    // b = 0 degenerates to the plain Gaussian derivative
    err = std::max(err, rel_err(dual_gaussian_derivative(3, 0.7, 0.0, 0.4, 3),
                                gaussian_derivative(3, -0.7, 0.4)));
    return err;
}

inline double check_modified_hermite(runner& r) {
    double err = rel_err(modified_hermite_order2(4, 0.7, 0.2, 0.1),
                         umbral_eval(hermite(4, jet<double>::constant(0.7), variable(0.2, 0.1, 2))));
    for (int c = 0; c < 40; ++c) {
        const int n = r.uniform_int(0, 10);
        const double x = r.uniform(-1.5, 1.5), a = r.uniform(-0.8, 0.8), b = r.uniform(-0.5, 0.5);
        const double closed = modified_hermite_order2(n, x, a, b);
        const double viajet = umbral_eval(hermite(n, jet<double>::constant(x), variable(a, b, 2)));
        err = std::max(err, std::abs(closed - viajet) / std::max(1.0, std::abs(closed)));
    }
    return err;
}

inline double check_hermite_jet_coherence(runner& r) {
    for (int c = 0; c < 30; ++c) {
        const int n = r.uniform_int(0, 12);
        const double x = r.uniform(-2.0, 2.0), y = r.uniform(-1.0, 1.0);
        const auto j = hermite(n, jet<double>::constant(x), jet<double>::constant(y));
        if (j.order() != 0 || j[0] != hermite(n, x, y))
            return std::numeric_limits<double>::infinity();
    }
    return 0.0;
}

// ---- umbral integrals ------------------------------------------------------

inline double check_shifted_gaussian_quadrature(runner&) {
    double err = 0.0;
    for (const double alpha : {0.5, 1.0, 2.0})
        for (const double a : {0.0, 0.5})
            for (const double b : {0.1, 0.3})
                for (const int k : {1, 2, 3, 5}) {
                    const double closed = dual_shifted_gaussian_integral(alpha, a, b, k).value;
                    const double quad = integrate_real_line([=](double x) {
                        return std::exp(-alpha * x * x + a * x) * trunc_exp(k, b * x);
                    });
                    err = std::max(err, rel_err(closed, quad));
                }
    return err;
}

inline double check_gaussian_binomial_paths(runner& r) {
    double err = 0.0;
    for (int c = 0; c < 60; ++c) {
        const int k = r.uniform_int(0, 10);
        const double a = r.uniform(0.5, 2.0), b = r.uniform(-1.0, 1.0);
        const double series = dual_gaussian_integral(a, b, k).value;
        const double viajet =
            std::sqrt(std::numbers::pi) * umbral_eval(pow(variable(a, b, k), -0.5));
        err = std::max(err, rel_err(series, viajet));
    }
    return err;
}

inline double check_gaussian_quadrature(runner&) {
    double err = 0.0;
    for (const double a : {0.5, 1.0, 2.0})
        for (const double b : {0.1, 0.3})
            for (const int k : {1, 2, 3, 5}) {
                const double closed = dual_gaussian_integral(a, b, k).value;
                const double quad = integrate_real_line(
                    [=](double x) { return std::exp(-a * x * x) * trunc_exp(k, -b * x * x); });
                err = std::max(err, rel_err(closed, quad));
            }
    return err;
}

inline double check_phi_paths(runner& r) {
    double err = 0.0;
    for (int c = 0; c < 60; ++c) {
        const int k = r.uniform_int(0, 6);
        const double x = r.uniform(-2.0, 2.0), a = r.uniform(0.5, 2.0), b = r.uniform(-0.5, 0.5);
        const double direct = phi_expansion(x, a, b, k);
        const double viajet = umbral_eval(inv(variable(1.0 + a * x * x, b * x * x, k)));
        err = std::max(err, rel_err(direct, viajet));
    }
    return err;
}

inline double check_phi_integral_quadrature(runner&) {
    double err = 0.0;
    for (const auto& [a, b, k] : {std::tuple{1.0, 0.3, 2}, std::tuple{1.5, 0.2, 1},
                                  std::tuple{1.0, 0.2, 3}, std::tuple{0.8, -0.2, 2}}) {
        const double closed = phi_integral(a, b, k).value;
        const double aa = a, bb = b;
        const int kk = k;
        const double quad = integrate_real_line_algebraic(
            [=](double x) { return phi_expansion(x, aa, bb, kk); }, {1e-10, 60});
        err = std::max(err, rel_err(closed, quad));
    }
    return err;
}

inline double check_series_consistency(runner& r) {
    double err = 0.0;
    for (int c = 0; c < 40; ++c) {
        const int k = r.uniform_int(0, 8);
        const double alpha = r.uniform(0.5, 2.0), a = r.uniform(0.2, 1.5), b = r.uniform(-0.5, 0.5);
        for (const auto& res :
             {dual_shifted_gaussian_integral(alpha, a, b, k), dual_gaussian_integral(a + 0.1, b, k),
              phi_integral(a + 0.1, b, k), umbral_image_integral(a + 0.1, b, k)}) {
            double sum = 0.0;
            for (const double t : res.terms) sum += t;
            err = std::max(err, rel_err(res.value, sum));
        }
    }
    return err;
}

inline double check_gamma_reflection(runner&) {
    double err = 0.0;
    for (int r2 = 0; r2 <= 12; ++r2)
        err = std::max(err, rel_err(reciprocal_gamma_half_minus(r2),
                                    reciprocal_gamma_half_minus_lgamma(r2)));
    return err;
}

// ---- evolution -------------------------------------------------------------

inline double check_glaisher_convolution(runner&) {
    double err = 0.0;
    for (const auto& [alpha, x, tau] : {std::tuple{0.5, 0.8, 0.2}, std::tuple{1.0, 0.0, 0.1},
                                        std::tuple{0.8, -1.1, 0.4}}) {
        const double a = alpha;
        const double conv =
            heat_convolve([a](double s) { return std::exp(-a * s * s); }, x, tau, {1e-10, 60});
        err = std::max(err, rel_err(conv, glaisher(alpha, x, tau)));
    }
    return err;
}

inline double check_heat_series_agreement(runner& r) {
    const double sign = r.opt().mutate_heat_sign ? 1.0 : -1.0;
    double err = 0.0;
    for (const auto& [a, b] : {std::pair{1.0, 0.2}, std::pair{0.7, -0.3}})
        for (const double tau : {0.01, 0.1, 0.5})
            for (const double x : {0.0, 0.4, 1.1})
                for (int k = 0; k <= 4; ++k) {
                    const double jp = heat_dual_gaussian(a, b, x, tau, k);
                    const double sp = heat_dual_gaussian_series(a, b, x, tau, k, sign);
                    err = std::max(err, std::abs(jp - sp) / std::max(1.0, std::abs(jp)));
                }
    return err;
}

inline double check_heat_convolution_agreement(runner&) {
    double err = 0.0;
    for (const auto& [a, b] : {std::pair{1.0, 0.2}, std::pair{0.7, -0.3}})
        for (const double tau : {0.01, 0.1, 0.5})
            for (const double x : {0.0, 0.4, 1.1})
                for (int k = 0; k <= 4; ++k) {
                    const double jp = heat_dual_gaussian(a, b, x, tau, k);
                    const double aa = a, bb = b;
                    const int kk = k;
                    const double conv = heat_convolve(
                        [=](double s) { return std::exp(-aa * s * s) * trunc_exp(kk, -bb * s * s); }, x,
                        tau, {1e-10, 60});
                    err = std::max(err, std::abs(jp - conv) / std::max(1.0, std::abs(jp)));
                }
    return err;
}

inline double check_heat_order2_literal(runner& r) {
    auto literal = [](double a, double b, double x, double tau) {
        const double g = 1.0 + 4.0 * a * tau;
        const double h2 = hermite(2, x, tau * g);
        const double h4 = hermite(4, x, tau * g);
        return std::exp(-a * x * x / g) / std::sqrt(g) *
               (1.0 - b / (g * g) * h2 + b * b / (2.0 * g * g * g * g) * h4);
    };
    double err = rel_err(heat_dual_gaussian(1.0, 0.2, 0.5, 0.1, 2), literal(1.0, 0.2, 0.5, 0.1));
    for (int c = 0; c < 30; ++c) {
        const double a = r.uniform(0.3, 1.5), b = r.uniform(-0.5, 0.5);
        const double x = r.uniform(-1.5, 1.5), tau = r.uniform(0.01, 0.5);
        err = std::max(err, rel_err(heat_dual_gaussian(a, b, x, tau, 2), literal(a, b, x, tau)));
    }
    return err;
}

inline double check_initial_conditions(runner& r) {
    double err = 0.0;
    for (int c = 0; c < 30; ++c) {
        const double a = r.uniform(0.3, 1.5), b = r.uniform(-0.5, 0.5), x = r.uniform(-2.0, 2.0);
        const int k = r.uniform_int(0, 5);
        err = std::max(err, rel_err(heat_dual_gaussian(a, b, x, 0.0, k),
                                    std::exp(-a * x * x) * trunc_exp(k, -b * x * x)));
        // flattened profile: direct product vs projected dual Gaussian
        const double alpha = r.uniform(0.4, 1.2);
        const int m = r.uniform_int(0, 5);
        const double direct = flattened_profile(x, alpha, m);
        const double viajet = umbral_eval(exp(variable(alpha, -1.0, m) * (-x * x)));
        err = std::max(err, rel_err(direct, viajet));
        const auto psi = schrodinger_flattened(x, 0.0, alpha, m);
        err = std::max(err, std::abs(psi.real() - direct) / std::max(1.0, direct));
        err = std::max(err, std::abs(psi.imag()));
    }
    err = std::max(err, rel_err(flattened_profile(1.2, 0.6, 4),
                                umbral_eval(exp(variable(0.6, -1.0, 4) * (-1.2 * 1.2)))));
    return err;
}

inline double check_schrodinger_norm(runner&) {
    double err = 0.0;
    for (const auto& [alpha, m] : {std::pair{1.0, 2}, std::pair{0.8, 4}}) {
        const double a = alpha;
        const int mm = m;
        auto norm = [&](double tau) {
            return integrate_real_line(
                [=](double x) { return std::norm(schrodinger_flattened(x, tau, a, mm)); },
                {1e-10, 60});
        };
        const double n0 = norm(0.0);
        for (const double tau : {0.1, 0.5}) err = std::max(err, rel_err(norm(tau), n0));
    }
    return err;
}

inline double check_weyl_degenerations(runner& r) {
    auto f = [](double s) { return std::exp(-s * s); };
    double err = 0.0;
    for (int c = 0; c < 30; ++c) {
        const double gamma = r.uniform(0.5, 1.5), a = r.uniform(-0.8, 0.8), b = r.uniform(-0.5, 0.5);
        const double x = r.uniform(-1.5, 1.5), tau = r.uniform(0.0, 0.8);
        const int k = r.uniform_int(0, 4);
        err = std::max(err, rel_err(weyl_evolve(f, gamma, a, b, x, 0.0, k), f(x)));
        err = std::max(err, rel_err(weyl_evolve(f, gamma, 0.0, 0.0, x, tau, k), f(x + gamma * tau)));
    }
    return err;
}

inline double check_weyl_residual(runner&) {
    // d/dtau F = gamma dF/dx - z x F checked per epsilon coefficient on a grid
    auto f = [](double s) { return std::exp(-s * s); };
    const double gamma = 1.0, a = 0.5, b = 0.2, tau = 0.3;
    const int k = 2;
    const double h = 1e-4;
    double err = 0.0;
    for (int i = 0; i < 21; ++i) {
        const double x = -2.0 + 4.0 * i / 20.0;
        const auto fp = weyl_evolve_jet(f, gamma, a, b, x, tau + h, k);
        const auto fm = weyl_evolve_jet(f, gamma, a, b, x, tau - h, k);
        const auto gp = weyl_evolve_jet(f, gamma, a, b, x + h, tau, k);
        const auto gm = weyl_evolve_jet(f, gamma, a, b, x - h, tau, k);
        const auto fc = weyl_evolve_jet(f, gamma, a, b, x, tau, k);
        const auto dtau = (fp - fm) / (2.0 * h);
        const auto dx = (gp - gm) / (2.0 * h);
        const auto rhs = dx * gamma - variable(a, b, k) * fc * x;
        for (int m = 0; m <= k; ++m) err = std::max(err, std::abs(dtau[m] - rhs[m]));
    }
    return err;
}

// ---- oracles ---------------------------------------------------------------

inline double check_gaussian_oracle(runner&) {
    double err = rel_err(integrate_real_line([](double x) { return std::exp(-x * x); }),
                         std::sqrt(std::numbers::pi));
    err = std::max(err, std::abs(integrate_real_line([](double x) { return x * std::exp(-x * x); })));
    err = std::max(err, std::abs(integrate([](double) { return 1.0; }, 0.0, 1.0) - 1.0));
    return err;
}

inline double check_kernel_mass(runner&) {
    double err = 0.0;
    for (const double tau : {1e-3, 1e-2, 0.1, 1.0})
        err = std::max(err, std::abs(heat_convolve([](double) { return 1.0; }, 0.3, tau,
                                                   {1e-13, 60}) -
                                     1.0));
    return err;
}

inline double check_quadrature_convergence(runner&) {
    auto f = [](double x) { return std::exp(-x * x); };
    double worst = 0.0;
    for (const double tol : {1e-6, 1e-8, 1e-10}) {
        const double c1 = integrate(f, -8.0, 8.0, {tol, 50});
        const double c2 = integrate(f, -8.0, 8.0, {tol / 2.0, 50});
        worst = std::max(worst, std::abs(c1 - c2) / tol);
    }
    return worst;
}

inline double check_finite_difference(runner&) {
    double err = std::abs(finite_difference([](double x) { return x * x; }, 3.0, 2, 1e-3) - 2.0);
    err = std::max(err, std::abs(finite_difference([](double x) { return std::exp(x); }, 0.0, 1,
                                                   1e-5) -
                                 1.0));
    return err;
}

// ---- expression front-end ---------------------------------------------------

inline expr_ptr random_ast(runner& r, int depth) {
    const int pick = depth <= 0 ? r.uniform_int(0, 1) : r.uniform_int(0, 3);
    switch (pick) {
        // literals stay non-negative so negation always round-trips as a node
        case 0: return hdual::detail::make_literal(r.uniform_int(0, 9) * 0.5);
        case 1: return hdual::detail::make_var();
        case 2: {
            const auto ops = std::array{unary_fn::neg, unary_fn::exp, unary_fn::sin,
                                        unary_fn::cos};
            return hdual::detail::make_unary(ops[static_cast<std::size_t>(r.uniform_int(0, 3))],
                                      random_ast(r, depth - 1));
        }
        default: {
            const auto ops = std::array{binary_fn::add, binary_fn::sub, binary_fn::mul,
                                        binary_fn::div, binary_fn::pow};
            const auto op = ops[static_cast<std::size_t>(r.uniform_int(0, 4))];
            auto rhs = op == binary_fn::pow ? hdual::detail::make_literal(r.uniform_int(0, 3))
                                            : random_ast(r, depth - 1);
            return hdual::detail::make_binary(op, random_ast(r, depth - 1), std::move(rhs));
        }
    }
}

inline double check_expr_roundtrip(runner& r) {
    for (int c = 0; c < 200; ++c) {
        const expr e(random_ast(r, 4));
        if (!(parse(to_string(e)) == e)) return std::numeric_limits<double>::infinity();
    }
    return 0.0;
}

inline double check_expr_ring_coherence(runner& r) {
    for (const auto& [text, x0] : derivative_corpus) {
        const auto e = parse(text);
        const double x = x0 + r.uniform(-0.05, 0.05);
        const double scalar = eval(e, x);
        const auto j = eval(e, jet<double>::constant(x));
        if (j.order() != 0 || j[0] != scalar) return std::numeric_limits<double>::infinity();
    }
    return 0.0;
}

inline double check_expr_derivative_coherence(runner&) {
    double err = 0.0;
    for (const auto& [text, x] : derivative_corpus) {
        const auto e = parse(text);
        const auto j = eval(e, variable(x, 1.0, 3));
        for (int m = 1; m <= 3; ++m) {
            const double exact = derivative(j, m);
            const double fd = finite_difference([&](double t) { return eval(e, t); }, x, m);
            err = std::max(err, std::abs(fd - exact) /
                                    std::max({std::abs(exact), std::abs(fd), 1e-30}));
        }
    }
    return err;
}

} // namespace detail

/// Run the full invariant suite (optionally filtered to a name prefix) and
/// return one result per property.
inline std::vector<result> run(const options& opt = {}) {
    detail::runner r(opt);

    r.run_check("jet.ring_laws", 1e-12, detail::check_ring_laws);
    r.run_check("jet.nilpotency", 0.0, detail::check_nilpotency);
    r.run_check("jet.inverse_law", 1e-12, detail::check_inverse_law);
    r.run_check("jet.lift_exp_homomorphism", 1e-12, detail::check_lift_homomorphism);
    r.run_check("jet.umbral_linearity", 0.0, detail::check_umbral_linearity);

    r.run_check("matrix.nilpotency", 0.0, detail::check_matrix_nilpotency);
    r.run_check("matrix.representation_equivalence", 1e-12, detail::check_representation_equivalence);
    r.run_check("matrix.apply_fn_product", 1e-12, detail::check_apply_fn_product);
    r.run_check("matrix.trunc_exp_stack", 1e-10, detail::check_trunc_exp_stack);

    r.run_check("hermite.trunc_exp_derivative", 1e-6, detail::check_trunc_exp_derivative);
    r.run_check("hermite.derivative_recurrence", 1e-6, detail::check_hermite_derivative_recurrence);
    r.run_check("hermite.three_term_recurrence", 1e-10, detail::check_hermite_recurrence);
    r.run_check("hermite.heat_identity", 1e-6, detail::check_hermite_heat_identity);
    r.run_check("hermite.ode", 1e-10, detail::check_hermite_ode);
    r.run_check("hermite.egf", 1e-12, detail::check_hermite_egf);
    r.run_check("hermite.lacunary_glaisher", 1e-10, detail::check_lacunary_glaisher);
    r.run_check("hermite.gaussian_derivative_fd", 1e-4, detail::check_gaussian_derivative_fd);
    r.run_check("hermite.dual_gaussian_paths", 1e-12, detail::check_dual_gaussian_derivative_paths);
    r.run_check("hermite.modified_order2", 1e-12, detail::check_modified_hermite);
    r.run_check("hermite.scalar_jet_coherence", 0.0, detail::check_hermite_jet_coherence);

    r.run_check("umbral.shifted_gaussian_quadrature", 1e-8, detail::check_shifted_gaussian_quadrature);
    r.run_check("umbral.gaussian_binomial_paths", 1e-13, detail::check_gaussian_binomial_paths);
    r.run_check("umbral.gaussian_quadrature", 1e-8, detail::check_gaussian_quadrature);
    r.run_check("umbral.phi_paths", 1e-13, detail::check_phi_paths);
    r.run_check("umbral.phi_integral_quadrature", 1e-6, detail::check_phi_integral_quadrature);
    r.run_check("umbral.series_consistency", 1e-14, detail::check_series_consistency);
    r.run_check("umbral.gamma_reflection", 1e-12, detail::check_gamma_reflection);

    r.run_check("evolution.glaisher_convolution", 1e-8, detail::check_glaisher_convolution);
    r.run_check("evolution.heat_series_agreement", 1e-11, detail::check_heat_series_agreement);
    r.run_check("evolution.heat_convolution_agreement", 1e-7, detail::check_heat_convolution_agreement);
    r.run_check("evolution.heat_order2_literal", 1e-11, detail::check_heat_order2_literal);
    r.run_check("evolution.initial_conditions", 1e-13, detail::check_initial_conditions);
    r.run_check("evolution.schrodinger_norm", 1e-6, detail::check_schrodinger_norm);
    r.run_check("evolution.weyl_degenerations", 1e-13, detail::check_weyl_degenerations);
    r.run_check("evolution.weyl_residual", 1e-4, detail::check_weyl_residual);

    r.run_check("oracles.gaussian_integral", 1e-10, detail::check_gaussian_oracle);
    r.run_check("oracles.kernel_mass", 1e-12, detail::check_kernel_mass);
    r.run_check("oracles.quadrature_convergence", 1.0, detail::check_quadrature_convergence);
    r.run_check("oracles.finite_difference", 1e-9, detail::check_finite_difference);

    r.run_check("expr.roundtrip", 0.0, detail::check_expr_roundtrip);
    r.run_check("expr.ring_coherence", 0.0, detail::check_expr_ring_coherence);
    r.run_check("expr.derivative_coherence", 1e-5, detail::check_expr_derivative_coherence);

    return r.take();
}

} // namespace hdual::selfcheck
