#pragma once

// Finite-difference discretization of -y'' + q y on [0, L], used as an
// independent check on everything derived from Weyl functions.

#include <span>
#include <vector>

#include "weyl/linalg.hpp"
#include "weyl/potential.hpp"

namespace weyl::oracle {

/// Boundary condition at one end. Robin(h) means y' = h y in the direction
/// of increasing x; neumann is robin(0).
struct Boundary {
    enum class Type { dirichlet, neumann, robin };
    Type type = Type::dirichlet;
    double h = 0.0;

    static Boundary dirichlet() { return {Type::dirichlet, 0.0}; }
    static Boundary neumann() { return {Type::neumann, 0.0}; }
    static Boundary robin(double h) { return {Type::robin, h}; }
};

/// Symmetric tridiagonal matrix T approximating the operator. Robin ends keep
/// their node and are folded in through a ghost point; the half-weight row is
/// symmetrized by a diagonal similarity, so eigenvalues are unchanged.
struct DiscretizedOperator {
    double dx = 0.0;
    double L = 0.0;
    std::vector<double> x;        // node of each unknown
    std::vector<double> diag;
    std::vector<double> offdiag;  // size() - 1 entries
    Boundary left, right;
    double shift = 0.0;           // eigenvalues of T are reported as those of T + shift

    size_t size() const noexcept { return diag.size(); }
};

/// n grid points on [0, L] (dx = L / (n - 1)); n >= 100.
DiscretizedOperator discretize(const PotentialSpec& q, double L, int n, Boundary left, Boundary right);

/// Number of eigenvalues strictly below mu (Sturm count of the LDL^T pivots).
long eigen_count_below(const DiscretizedOperator& opd, double mu);

/// The k lowest eigenvalues by bisection on the count, to 1e-10 absolute.
std::vector<double> lowest_eigenvalues(const DiscretizedOperator& opd, int k);

/// Solves (T - z) u = v by the complex Thomas algorithm.
std::vector<cplx> resolvent_apply(const DiscretizedOperator& opd, cplx z, std::span<const cplx> v);

/// Unit eigenvector for an (isolated) eigenvalue, by inverse iteration.
std::vector<double> eigenvector(const DiscretizedOperator& opd, double lambda);

/// (T - z) v, for residual checks.
std::vector<cplx> apply(const DiscretizedOperator& opd, cplx z, std::span<const cplx> v);

/// Vector-valued variant: m channels with potentials q_j, coupled only by a
/// matrix Robin condition y'(0) = S y(0) (S Hermitian); Dirichlet at L.
struct BlockOperator {
    double dx = 0.0;
    double L = 0.0;
    int m = 0;
    std::vector<ComplexMatrix> diag;  // m x m blocks
    std::vector<double> offdiag;      // scalar multiples of the identity
    size_t size() const noexcept { return diag.size(); }
};

BlockOperator discretize_block(std::span<const PotentialSpec> q, const ComplexMatrix& S, double L, int n);

long eigen_count_below(const BlockOperator& opd, double mu);
std::vector<double> lowest_eigenvalues(const BlockOperator& opd, int k);
/// (T - z)^{-1} v with v stacked node-major (v[i*m + j]).
std::vector<cplx> resolvent_apply(const BlockOperator& opd, cplx z, std::span<const cplx> v);

/// Squared positive zeros of J_beta: the Dirichlet eigenvalues of the unit
/// circular sector with opening pi/beta. Restricted to sqrt(x) <= 40.
std::vector<double> corner_dirichlet_eigenvalues(double beta, int k);

}  // namespace weyl::oracle
