#include "weyl/charfun.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "weyl/errors.hpp"
#include "weyl/specfun.hpp"

namespace weyl {

namespace {

ComplexMatrix solve_or_spectral(const ComplexMatrix& a, const ComplexMatrix& b, const char* who) {
    try {
        return solve(a, b);
    } catch (const SingularMatrixError& e) {
        throw SingularMatrixError(std::string(who) + ": B* - M(z) is singular; z is an eigenvalue of A_{B*}",
                                  e.smallest_pivot());
    }
}

}  // namespace

Colligation factor_colligation(const ComplexMatrix& B, double tol) {
    if (!B.square()) throw DimensionError("factor_colligation: B must be square");
    const ComplexMatrix BI = imag_part(B);
    const auto es = hermitian_eigensystem(BI);
    const double cut = tol * (1.0 + BI.norm());
    std::vector<int> keep;
    for (int i = 0; i < static_cast<int>(es.values.size()); ++i)
        if (std::abs(es.values[i]) > cut) keep.push_back(i);
    if (keep.empty()) throw DegenerateColligationError("factor_colligation: Im B = 0, so W is identically I");
    const int n = B.rows(), r = static_cast<int>(keep.size());
    // positive signatures first
    std::stable_sort(keep.begin(), keep.end(), [&](int a, int b) { return es.values[a] > 0 && es.values[b] < 0; });
    Colligation col{B, ComplexMatrix(n, r), ComplexMatrix(r, r)};
    for (int k = 0; k < r; ++k) {
        const double lam = es.values[keep[k]];
        const double s = std::sqrt(std::abs(lam));
        for (int i = 0; i < n; ++i) col.K(i, k) = es.vectors(i, keep[k]) * s;
        col.J(k, k) = lam > 0 ? 1.0 : -1.0;
    }
    const double res = max_abs_diff(col.K * col.J * col.K.adjoint(), BI);
    if (res > 1e-10 * (1.0 + BI.norm())) {
        std::ostringstream os;
        os << "factor_colligation: K J K* reproduces Im B only to " << res;
        throw AccuracyError(os.str(), res);
    }
    return col;
}

ComplexMatrix char_function_direct(const ComplexMatrix& B, const ComplexMatrix& M) {
    return solve_or_spectral(B.adjoint() - M, B - M, "char_function");
}

ComplexMatrix char_function_colligation(const Colligation& col, const ComplexMatrix& M) {
    const ComplexMatrix X = solve_or_spectral(col.B.adjoint() - M, col.K * col.J, "char_function");
    return ComplexMatrix::identity(col.rank()) + cplx(0, 2) * (col.K.adjoint() * X);
}

ComplexMatrix char_function(const ExtensionSpec& spec, cplx z) {
    const Colligation col = factor_colligation(spec.B);
    const ComplexMatrix M = spec.model.evaluate(z);
    const ComplexMatrix Wc = char_function_colligation(col, M);
    if (col.rank() < spec.B.rows()) return Wc;
    const ComplexMatrix Wd = char_function_direct(spec.B, M);
    const ComplexMatrix lhs = col.K.adjoint() * Wd, rhs = Wc * col.K.adjoint();
    const double res = max_abs_diff(lhs, rhs) / (1.0 + lhs.max_abs());
    if (res > 1e-8) {
        std::ostringstream os;
        os << "char_function: direct and colligation forms disagree by " << res << " at z = " << z;
        throw AccuracyError(os.str(), res);
    }
    return Wd;
}

ComplexMatrix v_function(const Colligation& col, const ComplexMatrix& M) {
    try {
        return col.K.adjoint() * solve(herm_part(col.B) - M, col.K);
    } catch (const SingularMatrixError& e) {
        throw SingularMatrixError("v_function: Re B - M(z) is singular", e.smallest_pivot());
    }
}

double cayley_check(const Colligation& col, const ComplexMatrix& W, const ComplexMatrix& V) {
    const int r = col.rank();
    if (W.rows() != r || V.rows() != r) throw DimensionError("cayley_check: W and V must be r x r");
    const ComplexMatrix I = ComplexMatrix::identity(r);
    ComplexMatrix T;
    try {
        // (W - I)(W + I)^{-1} = ((W + I)^{-T} (W - I)^T)^T
        T = solve((W + I).transpose(), (W - I).transpose()).transpose();
    } catch (const SingularMatrixError& e) {
        throw SingularMatrixError("cayley_check: W + I is singular", e.smallest_pivot());
    }
    return (V + cplx(0, 1) * (T * col.J)).norm() / (1.0 + V.norm());
}

double j_contractivity_margin(const ComplexMatrix& J, const ComplexMatrix& W) {
    return lambda_min(herm_part(J - W.adjoint() * J * W));
}

cplx theta_sector(cplx z, double beta, cplx h) {
    const cplx p = specfun::cpow(z, beta);
    return (p + h) / (p + std::conj(h));
}

}  // namespace weyl
