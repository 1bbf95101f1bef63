#pragma once

#include <complex>

namespace weyl::specfun {

using cplx = std::complex<double>;

enum class BranchConvention { sqrt_upper, principal_power };

/// Gamma function for real x, |x| <= 50, x not a non-positive integer.
/// Lanczos (g = 7, 9 terms) on x >= 0.5, reflection below.
double gamma(double x);

/// Bessel function of the first kind J_nu(z), real order |nu| < 1, complex
/// argument |z| <= 40, by the ascending power series.
cplx bessel_j(double nu, cplx z);

/// Square root with Im >= 0. On [0, inf) the non-negative real root.
cplx sqrt_upper(cplx z);

/// Principal power exp(beta * (ln|z| + i arg z)), arg in (-pi, pi].
cplx cpow(cplx z, double beta);

}  // namespace weyl::specfun
