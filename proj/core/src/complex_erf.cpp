#include "xqpt/complex_erf.hpp"

#include <cmath>
#include <numbers>

namespace xqpt {
namespace {

constexpr double pi = std::numbers::pi;

// Laplace continued fraction for erfc(z), valid for Re(z) > 0 and fast for
// |z| well away from the imaginary axis. Evaluated with the modified Lentz
// algorithm: erfc(z) = exp(-z^2)/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + ...))).
std::complex<double> erfc_continued_fraction(std::complex<double> z) {
    const double tiny = 1e-300;
    std::complex<double> f = z;
    std::complex<double> C = z;
    std::complex<double> D = 0.0;
    for (int n = 1; n <= 300; ++n) {
        const double a = 0.5 * n;
        D = z + a * D;
        if (std::abs(D) < tiny) D = tiny;
        C = z + a / C;
        if (std::abs(C) < tiny) C = tiny;
        D = 1.0 / D;
        const std::complex<double> delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return std::exp(-z * z) / std::sqrt(pi) / f;
}

// A&S 7.1.29 trapezoidal series. Terms are regrouped so that every
// exponential is evaluated with a combined exponent; the raw cosh(n*y)
// factors would overflow long before the result does.
std::complex<double> erf_series(double x, double y) {
    const std::complex<double> i(0.0, 1.0);

    std::complex<double> first;
    if (std::abs(x) > 1e-8) {
        first = std::exp(-x * x) / (2.0 * pi * x) *
                std::complex<double>(1.0 - std::cos(2.0 * x * y), std::sin(2.0 * x * y));
    } else {
        // limit x -> 0: (x*y^2 + i*y)/pi
        first = std::exp(-x * x) * std::complex<double>(x * y * y, y) / pi;
    }

    const int n_max = std::max(32, 2 * static_cast<int>(std::ceil(std::abs(y))) + 14);
    const std::complex<double> phase = std::exp(-2.0 * i * x * y);
    std::complex<double> sum = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        const double u = 0.5 * n;
        const double base = std::exp(-u * u - x * x) / (n * n + 4.0 * x * x);
        // exp(-x^2 - n^2/4 +- n*y) written as exp(y^2 - x^2 - (n/2 -+ y)^2)
        const double ep = std::exp(y * y - x * x - (u - y) * (u - y));
        const double em = std::exp(y * y - x * x - (u + y) * (u + y));
        const std::complex<double> tail =
            ep / (2.0 * x + i * static_cast<double>(n)) +
            em / (2.0 * x - i * static_cast<double>(n));
        sum += 2.0 * x * base - 0.5 * phase * tail;
    }
    return std::erf(x) + first + (2.0 / pi) * sum;
}

} // namespace

std::complex<double> erf_complex(std::complex<double> z) {
    if (z.imag() == 0.0) {
        return {std::erf(z.real()), 0.0};
    }
    if (z.real() < 0.0) {
        return -erf_complex(-z);
    }
    if (z.real() >= 6.5) {
        return 1.0 - erfc_continued_fraction(z);
    }
    return erf_series(z.real(), z.imag());
}

} // namespace xqpt
