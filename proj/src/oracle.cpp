#include "weyl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "weyl/errors.hpp"
#include "weyl/specfun.hpp"

namespace weyl::oracle {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

void check_grid(double L, int n) {
    if (!(L > 0) || !std::isfinite(L)) throw ContractError("discretize: L must be finite and positive");
    if (n < 100) throw ContractError("discretize: n must be >= 100");
}

double gershgorin_lo(const DiscretizedOperator& opd) {
    double lo = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < opd.size(); ++i) {
        double r = 0;
        if (i > 0) r += std::abs(opd.offdiag[i - 1]);
        if (i + 1 < opd.size()) r += std::abs(opd.offdiag[i]);
        lo = std::min(lo, opd.diag[i] - r);
    }
    return lo + opd.shift;
}

double gershgorin_hi(const DiscretizedOperator& opd) {
    double hi = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < opd.size(); ++i) {
        double r = 0;
        if (i > 0) r += std::abs(opd.offdiag[i - 1]);
        if (i + 1 < opd.size()) r += std::abs(opd.offdiag[i]);
        hi = std::max(hi, opd.diag[i] + r);
    }
    return hi + opd.shift;
}

template <class Op>
std::vector<double> bisect_lowest(const Op& opd, int k, double lo, double hi) {
    if (k < 0 || k > 50) throw ContractError("lowest_eigenvalues: k must be in [0, 50]");
    std::vector<double> out;
    for (int j = 0; j < k; ++j) {
        // smallest lambda with count(lambda) >= j + 1
        double a = lo, b = hi;
        if (eigen_count_below(opd, b) < j + 1) break;
        while (b - a > 1e-10) {
            const double mid = 0.5 * (a + b);
            if (mid == a || mid == b) break;
            if (eigen_count_below(opd, mid) >= j + 1)
                b = mid;
            else
                a = mid;
        }
        out.push_back(0.5 * (a + b));
    }
    return out;
}

// q at a node, replaced by its cell average when a jump of q falls inside
// the cell; a jump sampled at a node would cost first-order accuracy.
double node_potential(const PotentialSpec& q, const std::vector<double>& breaks, double x, double dx) {
    const double a = std::max(0.0, x - 0.5 * dx), b = x + 0.5 * dx;
    std::vector<double> cuts{a};
    for (double t : breaks)
        if (t > a && t < b) cuts.push_back(t);
    if (cuts.size() == 1) return q(x);
    cuts.push_back(b);
    double sum = 0.0;
    for (size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double l = cuts[k], r = cuts[k + 1], h = r - l;
        // Simpson on each smooth piece, sampled just inside its ends
        const double e = 1e-12 * (1.0 + std::abs(r));
        sum += h / 6.0 * (q(l + e) + 4.0 * q(0.5 * (l + r)) + q(r - e));
    }
    return sum / (b - a);
}

}  // namespace

DiscretizedOperator discretize(const PotentialSpec& q, double L, int n, Boundary left, Boundary right) {
    check_grid(L, n);
    DiscretizedOperator opd;
    opd.L = L;
    opd.dx = L / (n - 1);
    opd.left = left;
    opd.right = right;
    const double dx = opd.dx, inv = 1.0 / (dx * dx);
    const int first = left.type == Boundary::Type::dirichlet ? 1 : 0;
    const int last = right.type == Boundary::Type::dirichlet ? n - 2 : n - 1;
    const auto breaks = q.breakpoints();
    for (int i = first; i <= last; ++i) {
        const double x = std::min(i * dx, L);
        opd.x.push_back(x);
        const double qx = node_potential(q, breaks, x, dx);
        double d = 2.0 * inv + qx;
        if (i == 0) d = 2.0 * (1.0 + dx * left.h) * inv + qx;
        if (i == n - 1) d = 2.0 * (1.0 - dx * right.h) * inv + qx;
        opd.diag.push_back(d);
        if (i < last) {
            const bool robin_edge = (i == 0) || (i + 1 == n - 1);
            opd.offdiag.push_back(robin_edge ? -kSqrt2 * inv : -inv);
        }
    }
    return opd;
}

long eigen_count_below(const DiscretizedOperator& opd, double mu) {
    const double m = mu - opd.shift;
    long count = 0;
    double d = 1.0;
    for (size_t i = 0; i < opd.size(); ++i) {
        d = opd.diag[i] - m - (i > 0 ? opd.offdiag[i - 1] * opd.offdiag[i - 1] / d : 0.0);
        if (d == 0.0) d = -1e-300;
        if (d < 0) ++count;
    }
    return count;
}

std::vector<double> lowest_eigenvalues(const DiscretizedOperator& opd, int k) {
    return bisect_lowest(opd, k, gershgorin_lo(opd), gershgorin_hi(opd));
}

std::vector<cplx> apply(const DiscretizedOperator& opd, cplx z, std::span<const cplx> v) {
    if (v.size() != opd.size()) throw DimensionError("oracle apply: vector length mismatch");
    std::vector<cplx> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        cplx s = (opd.diag[i] + opd.shift - z) * v[i];
        if (i > 0) s += opd.offdiag[i - 1] * v[i - 1];
        if (i + 1 < v.size()) s += opd.offdiag[i] * v[i + 1];
        out[i] = s;
    }
    return out;
}

std::vector<cplx> resolvent_apply(const DiscretizedOperator& opd, cplx z, std::span<const cplx> v) {
    const size_t n = opd.size();
    if (v.size() != n) throw DimensionError("resolvent_apply: vector length mismatch");
    double scale = 0;
    for (double d : opd.diag) scale = std::max(scale, std::abs(d));
    std::vector<cplx> c(n), y(n);
    cplx piv = opd.diag[0] + opd.shift - z;
    for (size_t i = 0; i < n; ++i) {
        if (i > 0) piv = opd.diag[i] + opd.shift - z - opd.offdiag[i - 1] * c[i - 1];
        if (!(std::abs(piv) > 1e-15 * (scale + std::abs(z)))) {
            std::ostringstream os;
            os << "resolvent_apply: z = " << z << " is (numerically) an eigenvalue (pivot " << std::abs(piv) << ")";
            throw PoleError(os.str(), z);
        }
        if (i + 1 < n) c[i] = opd.offdiag[i] / piv;
        y[i] = (v[i] - (i > 0 ? opd.offdiag[i - 1] * y[i - 1] : 0.0)) / piv;
    }
    for (size_t i = n - 1; i-- > 0;) y[i] -= c[i] * y[i + 1];
    return y;
}

std::vector<double> eigenvector(const DiscretizedOperator& opd, double lambda) {
    const size_t n = opd.size();
    std::vector<cplx> v(n, 1.0);
    const cplx z = lambda + 1e-7 * (1.0 + std::abs(lambda));
    for (int it = 0; it < 4; ++it) {
        v = resolvent_apply(opd, z, v);
        double nrm = 0;
        for (auto& e : v) nrm += std::norm(e);
        nrm = std::sqrt(nrm);
        for (auto& e : v) e /= nrm;
    }
    std::vector<double> out(n);
    for (size_t i = 0; i < n; ++i) out[i] = v[i].real();
    return out;
}

BlockOperator discretize_block(std::span<const PotentialSpec> q, const ComplexMatrix& S, double L, int n) {
    check_grid(L, n);
    const int m = static_cast<int>(q.size());
    if (m == 0 || S.rows() != m || S.cols() != m) throw DimensionError("discretize_block: S must be m x m");
    if (!is_hermitian(S, 1e-12)) throw ContractError("discretize_block: S must be Hermitian");
    BlockOperator opd;
    opd.L = L;
    opd.m = m;
    opd.dx = L / (n - 1);
    const double dx = opd.dx, inv = 1.0 / (dx * dx);
    std::vector<std::vector<double>> breaks;
    for (const auto& qj : q) breaks.push_back(qj.breakpoints());
    for (int i = 0; i <= n - 2; ++i) {
        const double x = i * dx;
        ComplexMatrix d(m, m);
        if (i == 0) d = (ComplexMatrix::identity(m) + cplx(dx) * S) * cplx(2.0 * inv);
        else d = ComplexMatrix::identity(m) * cplx(2.0 * inv);
        for (int j = 0; j < m; ++j) d(j, j) += node_potential(q[j], breaks[j], x, dx);
        opd.diag.push_back(std::move(d));
        if (i < n - 2) opd.offdiag.push_back(i == 0 ? -kSqrt2 * inv : -inv);
    }
    return opd;
}

long eigen_count_below(const BlockOperator& opd, double mu) {
    long count = 0;
    const int m = opd.m;
    ComplexMatrix dinv;
    for (size_t i = 0; i < opd.size(); ++i) {
        ComplexMatrix d = opd.diag[i] - ComplexMatrix::identity(m) * cplx(mu);
        if (i > 0) d -= dinv * cplx(opd.offdiag[i - 1] * opd.offdiag[i - 1]);
        auto es = hermitian_eigensystem(herm_part(d));
        std::vector<cplx> recip(m);
        for (int j = 0; j < m; ++j) {
            double lam = es.values[j];
            if (lam == 0.0) lam = -1e-300;
            if (lam < 0) ++count;
            recip[j] = 1.0 / lam;
        }
        dinv = es.vectors * ComplexMatrix::diagonal(recip) * es.vectors.adjoint();
    }
    return count;
}

std::vector<double> lowest_eigenvalues(const BlockOperator& opd, int k) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (size_t i = 0; i < opd.size(); ++i) {
        double r = 0;
        if (i > 0) r += std::abs(opd.offdiag[i - 1]);
        if (i + 1 < opd.size()) r += std::abs(opd.offdiag[i]);
        for (int a = 0; a < opd.m; ++a) {
            double row = 0;
            for (int b = 0; b < opd.m; ++b)
                if (b != a) row += std::abs(opd.diag[i](a, b));
            lo = std::min(lo, opd.diag[i](a, a).real() - row - r);
            hi = std::max(hi, opd.diag[i](a, a).real() + row + r);
        }
    }
    return bisect_lowest(opd, k, lo, hi);
}

std::vector<cplx> resolvent_apply(const BlockOperator& opd, cplx z, std::span<const cplx> v) {
    const int m = opd.m;
    const size_t n = opd.size();
    if (v.size() != n * m) throw DimensionError("resolvent_apply: vector length mismatch");
    std::vector<ComplexMatrix> pinv(n);
    std::vector<std::vector<cplx>> y(n);
    for (size_t i = 0; i < n; ++i) {
        ComplexMatrix p = opd.diag[i] - ComplexMatrix::identity(m) * z;
        std::vector<cplx> rhs(v.begin() + i * m, v.begin() + (i + 1) * m);
        if (i > 0) {
            const double b = opd.offdiag[i - 1];
            p -= pinv[i - 1] * cplx(b * b);
            const auto t = pinv[i - 1].apply(y[i - 1]);
            for (int j = 0; j < m; ++j) rhs[j] -= b * t[j];
        }
        try {
            pinv[i] = inverse(p);
        } catch (const SingularMatrixError&) {
            std::ostringstream os;
            os << "resolvent_apply: z = " << z << " is (numerically) an eigenvalue";
            throw PoleError(os.str(), z);
        }
        y[i] = std::move(rhs);
    }
    std::vector<cplx> out(n * m);
    std::vector<cplx> next;
    for (size_t i = n; i-- > 0;) {
        auto rhs = y[i];
        if (i + 1 < n)
            for (int j = 0; j < m; ++j) rhs[j] -= opd.offdiag[i] * next[j];
        next = pinv[i].apply(rhs);
        std::copy(next.begin(), next.end(), out.begin() + i * m);
    }
    return out;
}

std::vector<double> corner_dirichlet_eigenvalues(double beta, int k) {
    if (!(beta > 0.5 && beta < 1.0)) throw ContractError("corner_dirichlet_eigenvalues: beta must lie in (1/2, 1)");
    auto f = [beta](double t) { return specfun::bessel_j(beta, t).real(); };
    std::vector<double> out;
    double t0 = 0.05, f0 = f(t0);
    for (double t1 = 0.1; t1 <= 40.0 && static_cast<int>(out.size()) < k; t1 += 0.05) {
        const double f1 = f(t1);
        if ((f0 < 0) != (f1 < 0)) {
            double a = t0, b = t1, fa = f0;
            for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
                const double mid = 0.5 * (a + b), fm = f(mid);
                if ((fm < 0) == (fa < 0))
                    a = mid, fa = fm;
                else
                    b = mid;
            }
            const double t = 0.5 * (a + b);
            out.push_back(t * t);
        }
        t0 = t1;
        f0 = f1;
    }
    return out;
}

}  // namespace weyl::oracle
