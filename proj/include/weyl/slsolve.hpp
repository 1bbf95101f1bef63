#pragma once

// Sturm-Liouville machinery for l[y] = -y'' + q y at complex spectral
// parameter z: solution transport, the finite-interval Weyl matrix built from
// a fundamental system, and half-line m-functions.

#include <complex>
#include <optional>

#include "weyl/linalg.hpp"
#include "weyl/potential.hpp"

namespace weyl::sl {

struct IvpOptions {
    double atol = 1e-10;
    double rtol = 1e-10;
    long max_steps = 5'000'000;
};

/// (y, y') at the end of the span. The true solution is exp(log_scale) times
/// the stored pair; rescaling happens whenever |y| + |y'| exceeds 1e100.
struct IvpState {
    cplx y;
    cplx dy;
    double log_scale = 0.0;
};

/// Integrates (y, y')' = (y', (q - z) y) from a to b (b < a allowed) with an
/// embedded Dormand-Prince 5(4) pair, splitting the span at breakpoints of q.
IvpState integrate_ivp(const PotentialSpec& q, cplx z, cplx y0, cplx dy0, double a, double b,
                       const IvpOptions& opts = {});

/// Boundary data of the basis u1 (u1(0)=1, u1'(0)=0), u2 (u2(0)=0, u2'(0)=1)
/// under Gamma0 y = (y(0), y(b)) and Gamma1 y = (y'(0), -y'(b)).
struct FundamentalSystem {
    cplx z;
    double b;
    ComplexMatrix Y0;
    ComplexMatrix Y1;
};

FundamentalSystem fundamental_system(const PotentialSpec& q, double b, cplx z);

/// M(z) = Y1 Y0^{-1}. Throws PoleError at Dirichlet eigenvalues of [0, b].
ComplexMatrix finite_interval_M(const PotentialSpec& q, double b, cplx z);

/// Terminal condition used when the half-line is cut at L.
enum class Truncation {
    radiation,  // y(L) = 1, y'(L) = i sqrt_upper(z - q_inf): exact once q is constant
    dirichlet,  // y(L) = 0, y'(L) = 1: error ~ exp(-2 Im sqrt_upper(z - q_inf) L)
};

struct HalfLineOptions {
    std::optional<double> L;  // auto when empty
    Truncation truncation = Truncation::radiation;
    /// Permit z == q_inf (threshold limit of the decaying solution).
    bool allow_threshold = false;
};

/// Boundary-triplet choice on the half-line. Empty h is the canonical triplet
/// Gamma0 y = y(0), Gamma1 y = y'(0); a finite h selects
/// Gamma0 y = (y'(0) - h y(0)) / sqrt(1+h^2), Gamma1 y = -(h y'(0) + y(0)) / sqrt(1+h^2).
struct HTriplet {
    std::optional<double> h;
    static HTriplet neumann_style() { return {}; }
    static HTriplet finite(double h) { return {h}; }
};

/// m_inf(z) = y'(0)/y(0) for the solution decaying at infinity.
cplx halfline_m_inf(const PotentialSpec& q, cplx z, const HalfLineOptions& opts = {});

/// m_inf for the canonical triplet; for finite h the classical relation
/// m_h = (1 - h m_inf) / (m_inf - h).
cplx halfline_m(const PotentialSpec& q, const HTriplet& triplet, cplx z, const HalfLineOptions& opts = {});

/// Weyl function of the triplet itself: m_inf, or -(1 + h m_inf)/(m_inf - h).
cplx halfline_weyl(const PotentialSpec& q, const HTriplet& triplet, cplx z, const HalfLineOptions& opts = {});

/// The truncation point halfline_m_inf would use at z.
double auto_truncation(const PotentialSpec& q, cplx z, Truncation t);

}  // namespace weyl::sl
