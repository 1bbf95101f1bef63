#include "weyl/slsolve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "weyl/errors.hpp"
#include "weyl/specfun.hpp"

namespace weyl::sl {

namespace {

constexpr double kRescaleAbove = 1e100;
constexpr double kLn10 = 2.302585092994046;

// Dormand-Prince 5(4) tableau.
constexpr std::array<double, 7> kC = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr std::array<double, 7> kB5 = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr std::array<double, 7> kB4 = {5179.0 / 57600, 0.0,         7571.0 / 16695, 393.0 / 640,
                                       -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

struct Vec2 {
    cplx y, dy;
};

// One smooth piece [x0, x1] of the span, direction given by sign(x1 - x0).
void integrate_piece(const PotentialSpec& q, cplx z, Vec2& s, double& log_scale, double x0, double x1,
                     const IvpOptions& opts, long& steps) {
    const double lo = std::min(x0, x1), hi = std::max(x0, x1);
    const double span = hi - lo;
    if (span == 0.0) return;
    const double dir = x1 > x0 ? 1.0 : -1.0;
    const double guard = 1e-12 * (1.0 + std::abs(lo) + std::abs(hi));
    auto qq = [&](double x) { return q(std::clamp(x, lo + guard, std::max(lo + guard, hi - guard))); };
    auto rhs = [&](double x, const Vec2& v) { return Vec2{v.dy, (qq(x) - z) * v.y}; };

    double x = x0;
    double h = dir * std::min(span, 0.1 / (1.0 + std::sqrt(std::abs(z) + std::abs(qq(x0)))));
    std::array<Vec2, 7> k{};
    k[0] = rhs(x, s);
    while (dir * (x1 - x) > 0) {
        if (++steps > opts.max_steps) throw StiffnessError("integrate_ivp: step budget exhausted", x);
        if (dir * (x + h - x1) > 0) h = x1 - x;
        if (std::abs(h) < 1e-14 * (1.0 + std::abs(x))) {
            std::ostringstream os;
            os << "integrate_ivp: step size underflow at x = " << x;
            throw StiffnessError(os.str(), x);
        }
        for (int i = 1; i < 7; ++i) {
            Vec2 t = s;
            for (int j = 0; j < i; ++j) {
                t.y += h * kA[i][j] * k[j].y;
                t.dy += h * kA[i][j] * k[j].dy;
            }
            k[i] = rhs(x + kC[i] * h, t);
        }
        Vec2 y5 = s, err{};
        for (int i = 0; i < 7; ++i) {
            y5.y += h * kB5[i] * k[i].y;
            y5.dy += h * kB5[i] * k[i].dy;
            err.y += h * (kB5[i] - kB4[i]) * k[i].y;
            err.dy += h * (kB5[i] - kB4[i]) * k[i].dy;
        }
        const double sc_y = opts.atol + opts.rtol * std::max(std::abs(s.y), std::abs(y5.y));
        const double sc_dy = opts.atol + opts.rtol * std::max(std::abs(s.dy), std::abs(y5.dy));
        const double e = std::max(std::abs(err.y) / sc_y, std::abs(err.dy) / sc_dy);
        if (!std::isfinite(e) || !std::isfinite(std::abs(y5.y)) || !std::isfinite(std::abs(y5.dy))) {
            h *= 0.25;
            continue;
        }
        if (e <= 1.0) {
            x = (dir * (x1 - (x + h)) <= 0) ? x1 : x + h;
            s = y5;
            k[0] = k[6];  // FSAL
            const double mag = std::abs(s.y) + std::abs(s.dy);
            if (mag > kRescaleAbove) {
                s.y /= kRescaleAbove;
                s.dy /= kRescaleAbove;
                for (auto& kk : k) kk.y /= kRescaleAbove, kk.dy /= kRescaleAbove;
                log_scale += 100.0 * kLn10;
            }
        }
        const double fac = e == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
        h *= fac;
    }
}

}  // namespace

IvpState integrate_ivp(const PotentialSpec& q, cplx z, cplx y0, cplx dy0, double a, double b,
                       const IvpOptions& opts) {
    if (!std::isfinite(a) || !std::isfinite(b)) throw ContractError("integrate_ivp: span must be finite");
    const double lo = std::min(a, b), hi = std::max(a, b);
    std::vector<double> cuts{a};
    for (double p : q.breakpoints())
        if (p > lo && p < hi) cuts.push_back(p);
    if (b > a)
        std::sort(cuts.begin() + 1, cuts.end());
    else
        std::sort(cuts.begin() + 1, cuts.end(), std::greater<>());
    cuts.push_back(b);

    Vec2 s{y0, dy0};
    double log_scale = 0.0;
    long steps = 0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        integrate_piece(q, z, s, log_scale, cuts[i], cuts[i + 1], opts, steps);
    return {s.y, s.dy, log_scale};
}

FundamentalSystem fundamental_system(const PotentialSpec& q, double b, cplx z) {
    if (!(b > 0) || !std::isfinite(b)) throw ContractError("fundamental_system: b must be finite and positive");
    const auto u1 = integrate_ivp(q, z, 1.0, 0.0, 0.0, b);
    const auto u2 = integrate_ivp(q, z, 0.0, 1.0, 0.0, b);
    // Columns are rescaled by exp(-log_scale) consistently; M is invariant.
    const double s1 = std::exp(-u1.log_scale), s2 = std::exp(-u2.log_scale);
    FundamentalSystem fs{z, b, ComplexMatrix(2, 2), ComplexMatrix(2, 2)};
    fs.Y0(0, 0) = s1;
    fs.Y0(0, 1) = 0.0;
    fs.Y0(1, 0) = u1.y;
    fs.Y0(1, 1) = u2.y;
    fs.Y1(0, 0) = 0.0;
    fs.Y1(0, 1) = s2;
    fs.Y1(1, 0) = -u1.dy;
    fs.Y1(1, 1) = -u2.dy;
    return fs;
}

ComplexMatrix finite_interval_M(const PotentialSpec& q, double b, cplx z) {
    const auto fs = fundamental_system(q, b, z);
    // det Y0 = u2(b); relative to |(u2(b), u2'(b))| it measures the distance
    // to the Dirichlet spectrum.
    const double scale = std::hypot(std::abs(fs.Y0(1, 1)), std::abs(fs.Y1(1, 1)));
    const double nd = std::abs(det(fs.Y0)) / scale;
    if (!(nd > 1e-8)) {
        std::ostringstream os;
        os << "finite_interval_M: z = " << z << " is a Dirichlet eigenvalue of [0, " << b
           << "] (normalized det Y0 = " << nd << ")";
        throw PoleError(os.str(), z);
    }
    // M = Y1 Y0^{-1}  <=>  M^T = Y0^{-T} Y1^T
    return solve(fs.Y0.transpose(), fs.Y1.transpose()).transpose();
}

double auto_truncation(const PotentialSpec& q, cplx z, Truncation t) {
    const double tail = q.tail_value();
    const double start = q.tail_start();
    if (!q.support_end() && !(std::abs(q(start) - tail) <= 1e-13)) {
        std::ostringstream os;
        os << "potential has not reached its tail value by x = 200 (|q - q_inf| = " << std::abs(q(start) - tail)
           << ")";
        throw AccuracyError(os.str(), std::abs(q(start) - tail));
    }
    if (t == Truncation::radiation) return start;
    const double kappa = specfun::sqrt_upper(z - tail).imag();
    const double need = kappa > 0 ? std::log(1e12) / (2.0 * kappa) : PotentialSpec::kInfinity;
    const double L = std::max(40.0, start + need);
    if (L > 200.0) {
        const double bound = std::exp(-2.0 * kappa * std::max(0.0, 200.0 - start));
        std::ostringstream os;
        os << "Dirichlet truncation needs L = " << L << " > 200 at z = " << z << " (error bound " << bound << ")";
        throw AccuracyError(os.str(), bound);
    }
    return L;
}

cplx halfline_m_inf(const PotentialSpec& q, cplx z, const HalfLineOptions& opts) {
    if (std::isfinite(q.domain_end())) throw ContractError("halfline_m: potential must live on [0, inf)");
    const double tail = q.tail_value();
    if (z.imag() == 0.0) {
        const bool below = z.real() < tail;
        const bool threshold = opts.allow_threshold && z.real() == tail;
        if (!below && !threshold) {
            std::ostringstream os;
            os << "halfline_m: real z = " << z.real() << " lies on the essential spectrum [" << tail << ", inf)";
            throw DomainError(os.str());
        }
    }
    const cplx k = specfun::sqrt_upper(z - tail);
    double L;
    if (opts.L) {
        L = *opts.L;
        if (!(L >= 0)) throw ContractError("halfline_m: truncation L must be >= 0");
    } else {
        L = auto_truncation(q, z, opts.truncation);
    }
    cplx yL, dyL;
    if (opts.truncation == Truncation::radiation) {
        yL = 1.0;
        dyL = cplx(0, 1) * k;
    } else {
        yL = 0.0;
        dyL = 1.0;
    }
    const auto s = L > 0 ? integrate_ivp(q, z, yL, dyL, L, 0.0) : IvpState{yL, dyL, 0.0};
    if (!(std::abs(s.y) > 1e-13 * (std::abs(s.y) + std::abs(s.dy)))) {
        std::ostringstream os;
        os << "halfline_m: y(0) vanishes at z = " << z << " (eigenvalue of the Dirichlet problem)";
        throw PoleError(os.str(), z);
    }
    return s.dy / s.y;
}

cplx halfline_m(const PotentialSpec& q, const HTriplet& triplet, cplx z, const HalfLineOptions& opts) {
    const cplx m = halfline_m_inf(q, z, opts);
    if (!triplet.h) return m;
    const double h = *triplet.h;
    if (std::abs(m - h) < 1e-14 * (1 + std::abs(m))) throw PoleError("halfline_m: m_inf(z) = h", z);
    return (1.0 - h * m) / (m - h);
}

cplx halfline_weyl(const PotentialSpec& q, const HTriplet& triplet, cplx z, const HalfLineOptions& opts) {
    const cplx m = halfline_m_inf(q, z, opts);
    if (!triplet.h) return m;
    const double h = *triplet.h;
    if (std::abs(m - h) < 1e-14 * (1 + std::abs(m))) throw PoleError("halfline_weyl: m_inf(z) = h", z);
    return -(1.0 + h * m) / (m - h);
}

}  // namespace weyl::sl
