#include <catch2/catch.hpp>

#include <hdual/jet.hpp>
#include <hdual/functions.hpp>

#include <complex>
#include <random>

using namespace hdual;

namespace {

jet<double> random_jet(std::mt19937_64& rng, int k, double lo = -2.0, double hi = 2.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> c(static_cast<std::size_t>(k) + 1);
    for (auto& v : c) v = dist(rng);
    return jet<double>(std::move(c));
}

void require_jet_equal(const jet<double>& got, const jet<double>& want, double tol) {
    REQUIRE(got.order() == want.order());
    for (int m = 0; m <= want.order(); ++m) REQUIRE(got[m] == Approx(want[m]).margin(tol));
}

} // namespace

TEST_CASE("variable seeds x + e y and drops y at order zero") {
    REQUIRE(variable(2.0, 3.0, 1) == jet<double>{2.0, 3.0});
    REQUIRE(variable(5.0, 7.0, 0) == jet<double>{5.0});
    const auto eps = variable(0.0, 1.0, 1);
    REQUIRE(eps * eps == jet<double>{0.0, 0.0}); // e^2 = 0 structurally
}

TEST_CASE("truncated product") {
    // (2+3e)(4+5e) = 8 + 22e at order one
    REQUIRE(variable(2.0, 3.0, 1) * variable(4.0, 5.0, 1) == jet<double>{8.0, 22.0});

    std::mt19937_64 rng(7);
    const auto u = random_jet(rng, 5);
    REQUIRE(u * unit<double>(5) == u);

    for (int k = 0; k <= 8; ++k) {
        auto p = unit<double>(k);
        const auto eps = k == 0 ? jet<double>{0.0} : variable(0.0, 1.0, k);
        for (int j = 0; j <= k; ++j) p = p * eps;
        for (int m = 0; m <= k; ++m) REQUIRE(p[m] == 0.0); // exact nilpotency
    }
}

TEST_CASE("order promotion zero-pads the lower order") {
    const auto low = variable(2.0, 1.0, 1);
    const auto high = variable(3.0, 0.5, 3);
    const auto s = low + high;
    REQUIRE(s.order() == 3);
    REQUIRE(s == jet<double>{5.0, 1.5, 0.0, 0.0});
    const auto p = low * unit<double>(3);
    REQUIRE(p == jet<double>{2.0, 1.0, 0.0, 0.0});
}

TEST_CASE("inverse") {
    REQUIRE(inv(variable(2.0, 4.0, 1)) == jet<double>{0.5, -1.0});
    REQUIRE(inv(unit<double>(4)) == unit<double>(4));
    REQUIRE_THROWS_AS(inv(jet<double>{0.0, 1.0}), singular_leading_coefficient);

    std::mt19937_64 rng(11);
    for (int c = 0; c < 100; ++c) {
        auto u = random_jet(rng, 1 + c % 8);
        std::vector<double> cs(u.coeffs());
        if (std::abs(cs[0]) < 0.1) cs[0] = 0.7;
        u = jet<double>(std::move(cs));
        const auto d = inv(u);
        const auto prod = u * d;
        // per-coefficient error relative to the accumulation scale; small
        // leading coefficients amplify legitimately
        for (int m = 0; m <= u.order(); ++m) {
            double scale = 1.0;
            for (int j = 0; j <= m; ++j) scale += std::abs(u[j]) * std::abs(d[m - j]);
            const double want = m == 0 ? 1.0 : 0.0;
            REQUIRE(std::abs(prod[m] - want) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("fractional and integer powers") {
    const double a = 2.0, b = 0.7;
    const auto p = pow(variable(a, b, 1), -0.5);
    REQUIRE(p[0] == Approx(std::pow(a, -0.5)).epsilon(1e-14));
    REQUIRE(p[1] == Approx(-0.5 * std::pow(a, -1.5) * b).epsilon(1e-14));

    // z^n = x^n (1 + n e y / x) at order one
    const double x = 1.3, y = 0.7;
    const auto q = pow(variable(x, y, 1), 5.0);
    REQUIRE(q[0] == Approx(std::pow(x, 5)).epsilon(1e-13));
    REQUIRE(q[1] == Approx(5.0 * std::pow(x, 4) * y).epsilon(1e-13));

    REQUIRE(pow(variable(0.4, -0.8, 3), 0.0) == unit<double>(3));
    REQUIRE(pow(variable(0.0, 1.0, 2), 2.0) == jet<double>{0.0, 0.0, 1.0});

    REQUIRE_THROWS_AS(pow(variable(-1.0, 1.0, 2), 0.5), negative_base_fractional_power);
    REQUIRE_THROWS_AS(pow(variable(0.0, 1.0, 2), -0.5), singular_leading_coefficient);
    REQUIRE_THROWS_AS(sqrt(variable(-2.0, 1.0, 2)), negative_base_fractional_power);

    // complex principal branch accepts negative real parts
    using C = std::complex<double>;
    const auto r = pow(variable(C(-1.0, 0.5), C(0.3), 2), 0.5);
    REQUIRE(std::abs(r[0] - std::pow(C(-1.0, 0.5), C(0.5))) < 1e-14);
}

TEST_CASE("analytic lift") {
    const auto e = lift(exp_derivatives{}, variable(0.0, 1.0, 4));
    REQUIRE(e[0] == Approx(1.0));
    REQUIRE(e[1] == Approx(1.0));
    REQUIRE(e[2] == Approx(0.5));
    REQUIRE(e[3] == Approx(1.0 / 6.0));
    REQUIRE(e[4] == Approx(1.0 / 24.0));

    const double x = 0.8, y = 1.7;
    const auto d = exp(variable(x, y, 1));
    REQUIRE(d[0] == Approx(std::exp(x)).epsilon(1e-14));
    REQUIRE(d[1] == Approx(y * std::exp(x)).epsilon(1e-14));

    std::mt19937_64 rng(23);
    for (int c = 0; c < 50; ++c) {
        auto u = random_jet(rng, 1 + c % 6, -0.9, 0.9);
        const auto round = log(exp(u));
        require_jet_equal(round, u, 1e-12);
    }

    REQUIRE_THROWS_AS(log(variable(-1.0, 1.0, 2)), eval_domain_error);
    REQUIRE_THROWS_AS(log(variable(0.0, 1.0, 2)), eval_domain_error);
}

TEST_CASE("lift of exp is a homomorphism") {
    std::mt19937_64 rng(31);
    for (int c = 0; c < 50; ++c) {
        const int k = c % 7;
        const auto u = random_jet(rng, k, -1.0, 1.0);
        const auto v = random_jet(rng, k, -1.0, 1.0);
        require_jet_equal(exp(u + v), exp(u) * exp(v), 1e-12);
    }
}

TEST_CASE("umbral evaluation sums the retained coefficients") {
    REQUIRE(umbral_eval(jet<double>{1.0, 1.0, 0.5}) == 2.5);
    REQUIRE(umbral_eval(unit<double>(6)) == 1.0);
    // exp seeded with the bare nilpotent unit projects onto e_k(1)
    for (int k = 0; k <= 6; ++k) {
        double ek = 0.0, f = 1.0;
        for (int r = 0; r <= k; ++r) {
            if (r) f *= r;
            ek += 1.0 / f;
        }
        REQUIRE(umbral_eval(exp(variable(0.0, 1.0, k))) == Approx(ek).epsilon(1e-14));
    }
}

TEST_CASE("umbral evaluation is linear (exact on integer data)") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> di(-3, 3);
    for (int c = 0; c < 100; ++c) {
        const int k = c % 9;
        std::vector<double> cu(static_cast<std::size_t>(k) + 1), cv(cu);
        for (auto& v : cu) v = di(rng);
        for (auto& v : cv) v = di(rng);
        const double alpha = di(rng), beta = di(rng);
        const jet<double> u(std::move(cu)), v(std::move(cv));
        REQUIRE(umbral_eval(u * alpha + v * beta) ==
                alpha * umbral_eval(u) + beta * umbral_eval(v));
    }
}

TEST_CASE("derivative extraction") {
    const auto j = exp(variable(1.0, 1.0, 4));
    for (int m = 0; m <= 4; ++m)
        REQUIRE(derivative(j, m) == Approx(std::exp(1.0)).epsilon(1e-13));

    REQUIRE(derivative(variable(5.0, 1.0, 2), 1) == 1.0);
    REQUIRE_THROWS_AS(derivative(variable(1.0, 1.0, 2), 3), index_out_of_range);
    REQUIRE_THROWS_AS(derivative(variable(1.0, 1.0, 2), -1), index_out_of_range);

    // coefficients are step-free: two independent evaluations are bitwise equal
    const auto j2 = exp(variable(1.0, 1.0, 4));
    REQUIRE(j == j2);
}

TEST_CASE("scalar kinds promote real to complex") {
    using C = std::complex<double>;
    STATIC_REQUIRE(scalar_kind_of<double> == scalar_kind::real);
    STATIC_REQUIRE(scalar_kind_of<C> == scalar_kind::complex);

    const auto r = variable(2.0, 1.0, 1);
    const auto c = variable(C(0.0, 1.0), C(1.0), 1);
    const auto p = r * c;
    STATIC_REQUIRE(std::is_same_v<decltype(p), const jet<C>>);
    REQUIRE(p[0] == C(0.0, 2.0));
    REQUIRE(p[1] == C(2.0, 1.0));

    const auto s = jet_cast<C>(r);
    REQUIRE(s[0] == C(2.0));
}

TEST_CASE("scalar mixed forms") {
    const auto u = variable(2.0, 0.5, 2);
    REQUIRE(u + 1.0 == jet<double>{3.0, 0.5, 0.0});
    REQUIRE(1.0 + u == jet<double>{3.0, 0.5, 0.0});
    REQUIRE(1.0 - u == jet<double>{-1.0, -0.5, 0.0});
    REQUIRE(u * 2.0 == jet<double>{4.0, 1.0, 0.0});
    REQUIRE(u / 2.0 == jet<double>{1.0, 0.25, 0.0});

    // scalar over jet routes through the inverse
    const auto q = 3.0 / variable(2.0, 4.0, 1);
    REQUIRE(q[0] == Approx(1.5).margin(1e-15));
    REQUIRE(q[1] == Approx(-3.0).margin(1e-14));

    // negative integer powers
    const auto p = pow(variable(2.0, 1.0, 1), -2.0);
    REQUIRE(p[0] == Approx(0.25).epsilon(1e-14));
    REQUIRE(p[1] == Approx(-2.0 * std::pow(2.0, -3.0)).epsilon(1e-14));
}

TEST_CASE("complex jets") {
    using C = std::complex<double>;
    const auto z = variable(C(0.3, 0.4), C(1.0), 2);
    const auto e = exp(z);
    REQUIRE(std::abs(e[0] - std::exp(C(0.3, 0.4))) < 1e-14);
    REQUIRE(std::abs(e[1] - std::exp(C(0.3, 0.4))) < 1e-14);
    const auto w = z * inv(z);
    REQUIRE(std::abs(w[0] - C(1.0)) < 1e-14);
    REQUIRE(std::abs(w[1]) < 1e-14);
    REQUIRE(std::abs(w[2]) < 1e-14);
}

TEST_CASE("ring laws on random jets") {
    std::mt19937_64 rng(53);
    for (int c = 0; c < 200; ++c) {
        const int k = c % 9;
        const auto u = random_jet(rng, k), v = random_jet(rng, k), w = random_jet(rng, k);
        require_jet_equal(u * v, v * u, 1e-12);
        require_jet_equal((u * v) * w, u * (v * w), 1e-12);
        require_jet_equal(u * (v + w), u * v + u * w, 1e-12);
    }
}
