// complex_erf.hpp — error function of a complex argument.

#pragma once

#include <complex>

namespace xqpt {

// erf(z) for complex z. Series evaluation (Abramowitz & Stegun 7.1.29 with
// overflow-safe exponent grouping) for moderate arguments, Laplace continued
// fraction of erfc for large real parts. Absolute/relative accuracy better
// than 1e-12 for |z| <= 10; grows like exp(Im(z)^2) along the imaginary axis
// and overflows double near |Im(z)| ~ 26.
std::complex<double> erf_complex(std::complex<double> z);

} // namespace xqpt
