#pragma once

// Characteristic function of a non-self-adjoint extension A_B and the
// colligation Im B = K J K* behind it.

#include "weyl/extensions.hpp"
#include "weyl/linalg.hpp"

namespace weyl {

struct Colligation {
    ComplexMatrix B;
    ComplexMatrix K;  // n x r, r = rank Im B
    ComplexMatrix J;  // r x r, diagonal +-1
    int rank() const noexcept { return K.cols(); }
};

/// Eigendecomposition of Im B; eigenvalues with |lambda| <= tol (1 + ||Im B||)
/// are dropped. Throws DegenerateColligationError when nothing is left.
Colligation factor_colligation(const ComplexMatrix& B, double tol = 1e-12);

/// (B* - M)^{-1} (B - M), n x n.
ComplexMatrix char_function_direct(const ComplexMatrix& B, const ComplexMatrix& M);
/// I + 2i K* (B* - M)^{-1} K J, r x r.
ComplexMatrix char_function_colligation(const Colligation& col, const ComplexMatrix& M);

/// W(z): the direct form when Im B is invertible, otherwise the colligation
/// form on ran K. When both apply they are checked against each other through
/// K* W_direct = W_colligation K*.
ComplexMatrix char_function(const ExtensionSpec& spec, cplx z);

/// K* (Re B - M)^{-1} K.
ComplexMatrix v_function(const Colligation& col, const ComplexMatrix& M);

/// ||V + i (W - I)(W + I)^{-1} J|| / (1 + ||V||) for the colligation form W.
double cayley_check(const Colligation& col, const ComplexMatrix& W, const ComplexMatrix& V);

/// lambda_min(J - W* J W).
double j_contractivity_margin(const ComplexMatrix& J, const ComplexMatrix& W);

/// (z^beta + h) / (z^beta + conj(h)), principal z^beta.
cplx theta_sector(cplx z, double beta, cplx h);

}  // namespace weyl
