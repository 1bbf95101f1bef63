#include "weyl/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "weyl/errors.hpp"

namespace weyl::specfun {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_gamma(double x) {
    // x >= 0.5
    const double xm = x - 1.0;
    double a = kLanczosCoef[0];
    const double t = xm + kLanczosG + 0.5;
    for (size_t i = 1; i < kLanczosCoef.size(); ++i) a += kLanczosCoef[i] / (xm + static_cast<double>(i));
    return std::sqrt(2.0 * std::numbers::pi) * std::exp((xm + 0.5) * std::log(t) - t) * a;
}

}  // namespace

double gamma(double x) {
    if (!std::isfinite(x) || std::abs(x) > 50.0) {
        std::ostringstream os;
        os << "gamma: argument " << x << " outside |x| <= 50";
        throw RangeError(os.str());
    }
    if (x <= 0.0 && x == std::floor(x)) {
        std::ostringstream os;
        os << "gamma: pole at " << x;
        throw PoleError(os.str(), x);
    }
    if (x < 0.5) {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
    }
    return lanczos_gamma(x);
}

cplx sqrt_upper(cplx z) {
    cplx s = std::sqrt(z);
    if (s.imag() < 0.0) s = -s;
    if (s.imag() == 0.0 && s.real() < 0.0) s = -s;
    return s;
}

cplx cpow(cplx z, double beta) {
    if (z == cplx{}) throw DomainError("cpow: zero base");
    double arg = std::atan2(z.imag(), z.real());
    if (arg <= -std::numbers::pi) arg = std::numbers::pi;
    const double lr = std::log(std::abs(z));
    return std::exp(cplx(beta * lr, beta * arg));
}

cplx bessel_j(double nu, cplx z) {
    if (!(nu > -1.0 && nu < 1.0)) throw RangeError("bessel_j: order must lie in (-1, 1)");
    if (!(std::abs(z) <= 40.0)) {
        std::ostringstream os;
        os << "bessel_j: |z| = " << std::abs(z) << " outside the power-series regime |z| <= 40";
        throw RangeError(os.str());
    }
    if (z == cplx{}) {
        if (nu == 0.0) return 1.0;
        if (nu > 0.0) return 0.0;
        throw DomainError("bessel_j: negative order is singular at z = 0");
    }
    using lcplx = std::complex<long double>;
    const lcplx w = -lcplx(z) * lcplx(z) / 4.0L;
    const long double half_abs2 = std::norm(z) / 4.0;
    lcplx term = 1.0L;
    lcplx sum = 1.0L;
    for (int k = 1; k < 2000; ++k) {
        term *= w / (static_cast<long double>(k) * (static_cast<long double>(nu) + k));
        sum += term;
        const bool decreasing = static_cast<long double>(k) * (k + nu) > half_abs2;
        if (decreasing && std::abs(term) < 1e-17L * std::abs(sum) + 1e-300L) break;
    }
    const cplx lead = cpow(z / 2.0, nu) / gamma(nu + 1.0);
    return lead * cplx(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
}

}  // namespace weyl::specfun
