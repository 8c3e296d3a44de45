// Seed a jet with x + e, push it through a few functions and read off exact
// derivatives from the coefficients.

#include <hdual/hdual.hpp>

#include <cstdio>

int main() {
    using namespace hdual;

    const auto e = parse("exp(-x^2)*sin(x)");
    const double x0 = 0.8;
    const auto j = eval(e, variable(x0, 1.0, 5));

    std::printf("f(x) = exp(-x^2)*sin(x) at x = %g\n", x0);
    for (int m = 0; m <= j.order(); ++m)
        std::printf("  f^(%d) = % .15g\n", m, derivative(j, m));

    // cross-check the first three orders against central differences
    for (int m = 1; m <= 3; ++m) {
        const double fd = finite_difference([&](double t) { return eval(e, t); }, x0, m);
        std::printf("  fd %d   = % .15g\n", m, fd);
    }
    return 0;
}
