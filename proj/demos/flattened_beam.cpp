// Flat-top beam profile versus the super-Gaussian it approximates, and its
// paraxial evolution at a few times. CSV on stdout.

#include <hdual/hdual.hpp>

#include <cstdio>

int main() {
    using namespace hdual;

    const double alpha = 0.8;
    const int m = 4;

    std::printf("x,super_gaussian_p6,profile,I_tau_0.1,I_tau_0.4\n");
    for (int i = 0; i <= 120; ++i) {
        const double x = -3.0 + 6.0 * i / 120.0;
        const double flat = flattened_profile(x, alpha, m);
        const double i1 = std::norm(schrodinger_flattened(x, 0.1, alpha, m));
        const double i2 = std::norm(schrodinger_flattened(x, 0.4, alpha, m));
        std::printf("%.17g,%.17g,%.17g,%.17g,%.17g\n", x, super_gaussian(x, 6), flat, i1, i2);
    }
    return 0;
}
