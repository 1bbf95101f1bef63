#pragma once

// Change of boundary triplet: a unitary U and a J-unitary block matrix X
// acting on (Gamma1, Gamma0). Both M and the boundary operator B transform by
// the same Moebius action  T . A = U (X11 A + X12)(X21 A + X22)^{-1} U*.

#include <random>

#include "weyl/linalg.hpp"
#include "weyl/models.hpp"

namespace weyl {

class TripletTransform {
public:
    const ComplexMatrix& U() const noexcept { return U_; }
    const ComplexMatrix& X11() const noexcept { return X11_; }
    const ComplexMatrix& X12() const noexcept { return X12_; }
    const ComplexMatrix& X21() const noexcept { return X21_; }
    const ComplexMatrix& X22() const noexcept { return X22_; }
    int dimension() const noexcept { return U_.rows(); }

    /// Blocks of the inverse transform (U*, X^{-1} conjugated by U).
    TripletTransform inverse() const;

private:
    friend TripletTransform make_transform(ComplexMatrix, ComplexMatrix, ComplexMatrix, ComplexMatrix,
                                           ComplexMatrix);
    ComplexMatrix U_, X11_, X12_, X21_, X22_;
};

/// Validates U*U = I and the six J-unitarity relations to 1e-8 (relative to
/// the block sizes); a violation throws ConstraintError naming each failed
/// relation and its residual.
TripletTransform make_transform(ComplexMatrix U, ComplexMatrix X11, ComplexMatrix X12, ComplexMatrix X21,
                                ComplexMatrix X22);

TripletTransform identity_transform(int n);
/// X11 = X22 = I, X12 = K (Hermitian), X21 = 0: Gamma1 -> Gamma1 + K Gamma0.
TripletTransform k_shift(const ComplexMatrix& K);
/// X21 = K: M -> M (K M + I)^{-1}, i.e. M^{-1} -> M^{-1} + K.
TripletTransform inverse_k_shift(const ComplexMatrix& K);
/// M -> C M C* + D (C invertible, D Hermitian).
TripletTransform congruence(const ComplexMatrix& C, const ComplexMatrix& D);

/// T2 after T1.
TripletTransform compose(const TripletTransform& t2, const TripletTransform& t1);

ComplexMatrix transform_weyl(const TripletTransform& t, const ComplexMatrix& M);
ComplexMatrix transform_boundary_operator(const TripletTransform& t, const ComplexMatrix& B);

/// The model z -> transform_weyl(t, model.evaluate(z)).
WeylModel transformed_model(const WeylModel& model, const TripletTransform& t);

/// Random valid transform built from unitary, K-shift, inverse-shift and
/// congruence factors with moderate norms.
TripletTransform random_transform(int n, std::mt19937_64& rng);

}  // namespace weyl
