#include "weyl/triplets.hpp"

#include <cmath>
#include <sstream>

#include "weyl/errors.hpp"

namespace weyl {

namespace {

ComplexMatrix mobius(const TripletTransform& t, const ComplexMatrix& a, const char* who) {
    if (!a.square() || a.rows() != t.dimension()) {
        std::ostringstream os;
        os << who << ": expected a " << t.dimension() << "x" << t.dimension() << " matrix";
        throw DimensionError(os.str());
    }
    const ComplexMatrix num = t.X11() * a + t.X12();
    const ComplexMatrix den = t.X21() * a + t.X22();
    ComplexMatrix r;
    try {
        // num * den^{-1} = (den^{-T} num^T)^T
        r = solve(den.transpose(), num.transpose()).transpose();
    } catch (const SingularMatrixError& e) {
        std::ostringstream os;
        os << who << ": X21 A + X22 is singular (smallest pivot " << e.smallest_pivot()
           << "); the argument is not transversal to the new Gamma0";
        throw SingularMatrixError(os.str(), e.smallest_pivot());
    }
    return t.U() * r * t.U().adjoint();
}

ComplexMatrix random_matrix(int n, std::mt19937_64& rng, double scale) {
    std::normal_distribution<double> g(0.0, scale);
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
    return m;
}

ComplexMatrix random_unitary(int n, std::mt19937_64& rng) {
    ComplexMatrix a = random_matrix(n, rng, 1.0);
    // modified Gram-Schmidt on the columns
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < j; ++k) {
            cplx d = 0;
            for (int i = 0; i < n; ++i) d += std::conj(a(i, k)) * a(i, j);
            for (int i = 0; i < n; ++i) a(i, j) -= d * a(i, k);
        }
        double nrm = 0;
        for (int i = 0; i < n; ++i) nrm += std::norm(a(i, j));
        nrm = std::sqrt(nrm);
        for (int i = 0; i < n; ++i) a(i, j) /= nrm;
    }
    return a;
}

}  // namespace

TripletTransform make_transform(ComplexMatrix U, ComplexMatrix X11, ComplexMatrix X12, ComplexMatrix X21,
                                ComplexMatrix X22) {
    const int n = U.rows();
    for (const auto* m : {&U, &X11, &X12, &X21, &X22})
        if (m->rows() != n || m->cols() != n) throw DimensionError("make_transform: all blocks must be n x n");
    const ComplexMatrix I = ComplexMatrix::identity(n);
    const double scale = 1.0 + std::max({X11.norm(), X12.norm(), X21.norm(), X22.norm()});
    const double tol = 1e-8 * scale * scale;
    struct Check {
        const char* name;
        double residual;
    };
    const Check checks[] = {
        {"U*U = I", max_abs_diff(U.adjoint() * U, I) / 1.0},
        {"X11*X21 = X21*X11", max_abs_diff(X11.adjoint() * X21, X21.adjoint() * X11)},
        {"X12*X22 = X22*X12", max_abs_diff(X12.adjoint() * X22, X22.adjoint() * X12)},
        {"X11*X22 - X21*X12 = I", max_abs_diff(X11.adjoint() * X22 - X21.adjoint() * X12, I)},
        {"X11 X12* = X12 X11*", max_abs_diff(X11 * X12.adjoint(), X12 * X11.adjoint())},
        {"X21 X22* = X22 X21*", max_abs_diff(X21 * X22.adjoint(), X22 * X21.adjoint())},
        {"X11 X22* - X12 X21* = I", max_abs_diff(X11 * X22.adjoint() - X12 * X21.adjoint(), I)},
    };
    std::ostringstream os;
    bool ok = true;
    for (const auto& c : checks) {
        const double t = std::string(c.name) == "U*U = I" ? 1e-10 * n : tol;
        if (!(c.residual <= t)) {
            os << (ok ? "" : "; ") << c.name << " violated by " << c.residual;
            ok = false;
        }
    }
    if (!ok) throw ConstraintError("make_transform: " + os.str());
    TripletTransform t;
    t.U_ = std::move(U);
    t.X11_ = std::move(X11);
    t.X12_ = std::move(X12);
    t.X21_ = std::move(X21);
    t.X22_ = std::move(X22);
    return t;
}

TripletTransform TripletTransform::inverse() const {
    // X^{-1} = [[X22*, -X12*], [-X21*, X11*]]; conjugate by U so that the
    // result acts on U-rotated coordinates.
    const ComplexMatrix& u = U_;
    const ComplexMatrix ua = u.adjoint();
    return make_transform(ua, u * X22_.adjoint() * ua, -(u * X12_.adjoint() * ua), -(u * X21_.adjoint() * ua),
                          u * X11_.adjoint() * ua);
}

TripletTransform identity_transform(int n) {
    const auto I = ComplexMatrix::identity(n);
    return make_transform(I, I, ComplexMatrix::zeros(n, n), ComplexMatrix::zeros(n, n), I);
}

TripletTransform k_shift(const ComplexMatrix& K) {
    const int n = K.rows();
    const auto I = ComplexMatrix::identity(n);
    return make_transform(I, I, K, ComplexMatrix::zeros(n, n), I);
}

TripletTransform inverse_k_shift(const ComplexMatrix& K) {
    const int n = K.rows();
    const auto I = ComplexMatrix::identity(n);
    return make_transform(I, I, ComplexMatrix::zeros(n, n), K, I);
}

TripletTransform congruence(const ComplexMatrix& C, const ComplexMatrix& D) {
    const int n = C.rows();
    const ComplexMatrix cinv_adj = inverse(C).adjoint();
    return make_transform(ComplexMatrix::identity(n), C, D * cinv_adj, ComplexMatrix::zeros(n, n), cinv_adj);
}

TripletTransform compose(const TripletTransform& t2, const TripletTransform& t1) {
    if (t1.dimension() != t2.dimension()) throw DimensionError("compose: dimension mismatch");
    // T2 . (U1 Mob_X1(A) U1*) = U2 U1 Mob_{(U1* X2 U1) X1}(A) U1* U2*
    const ComplexMatrix& u1 = t1.U();
    const ComplexMatrix u1a = u1.adjoint();
    const ComplexMatrix a11 = u1a * t2.X11() * u1, a12 = u1a * t2.X12() * u1;
    const ComplexMatrix a21 = u1a * t2.X21() * u1, a22 = u1a * t2.X22() * u1;
    return make_transform(t2.U() * u1, a11 * t1.X11() + a12 * t1.X21(), a11 * t1.X12() + a12 * t1.X22(),
                          a21 * t1.X11() + a22 * t1.X21(), a21 * t1.X12() + a22 * t1.X22());
}

ComplexMatrix transform_weyl(const TripletTransform& t, const ComplexMatrix& M) {
    return mobius(t, M, "transform_weyl");
}

ComplexMatrix transform_boundary_operator(const TripletTransform& t, const ComplexMatrix& B) {
    return mobius(t, B, "transform_boundary_operator");
}

WeylModel transformed_model(const WeylModel& model, const TripletTransform& t) {
    if (model.dimension() != t.dimension()) throw DimensionError("transformed_model: dimension mismatch");
    return WeylModel::custom("transformed " + model.name(), model.dimension(), model.ess_floor(),
                             [model, t](cplx z) { return transform_weyl(t, model.evaluate(z)); });
}

TripletTransform random_transform(int n, std::mt19937_64& rng) {
    auto hermitian = [&](double scale) { return herm_part(random_matrix(n, rng, scale)); };
    TripletTransform t = make_transform(random_unitary(n, rng), ComplexMatrix::identity(n),
                                        ComplexMatrix::zeros(n, n), ComplexMatrix::zeros(n, n),
                                        ComplexMatrix::identity(n));
    t = compose(k_shift(hermitian(0.7)), t);
    t = compose(inverse_k_shift(hermitian(0.3)), t);
    // well-conditioned C = I + small perturbation
    ComplexMatrix C = ComplexMatrix::identity(n) + random_matrix(n, rng, 0.25);
    t = compose(congruence(C, hermitian(0.5)), t);
    return t;
}

}  // namespace weyl
