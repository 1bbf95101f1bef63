#include <doctest.h>

#include <cmath>
#include <random>

#include "weyl/errors.hpp"
#include "weyl/triplets.hpp"

using namespace weyl;

TEST_SUITE("triplets") {

TEST_CASE("identity and shifts") {
    const ComplexMatrix M{{cplx(1, 2), 0.5}, {0.5, cplx(-1, 1)}};
    CHECK(max_abs_diff(transform_weyl(identity_transform(2), M), M) < 1e-15);
    const ComplexMatrix K{{1, cplx(0, 1)}, {cplx(0, -1), 2}};
    CHECK(max_abs_diff(transform_weyl(k_shift(K), M), M + K) < 1e-14);
    const auto back = transform_weyl(inverse_k_shift(K), M);
    CHECK(max_abs_diff(inverse(back), inverse(M) + K) < 1e-12);
}

TEST_CASE("inverse and composition") {
    std::mt19937_64 rng(3);
    const ComplexMatrix M{{cplx(0.3, 1.2), cplx(0.1, 0.2)}, {cplx(0.1, 0.2), cplx(-2, 0.7)}};
    for (int k = 0; k < 10; ++k) {
        const auto t = random_transform(2, rng), s = random_transform(2, rng);
        CHECK(max_abs_diff(transform_weyl(t.inverse(), transform_weyl(t, M)), M) < 1e-10);
        CHECK(max_abs_diff(transform_weyl(compose(s, t), M), transform_weyl(s, transform_weyl(t, M))) < 1e-10);
    }
}

TEST_CASE("transforms preserve the Herglotz property") {
    std::mt19937_64 rng(11);
    const auto model = WeylModel::operator_potential_halfline({2, 3});
    for (int k = 0; k < 10; ++k) {
        const auto tm = transformed_model(model, random_transform(2, rng));
        const auto v = tm.evaluate(cplx(0.5 * k - 2, 0.8));
        CHECK(lambda_min(imag_part(v)) > 0);
    }
}

TEST_CASE("validation names the failed relation") {
    const auto I = ComplexMatrix::identity(1);
    const auto Z = ComplexMatrix::zeros(1, 1);
    try {
        make_transform(I, I * cplx(2), Z, Z, I);
        FAIL("expected ConstraintError");
    } catch (const ConstraintError& e) {
        CHECK(std::string(e.what()).find("X11*X22 - X21*X12 = I") != std::string::npos);
    }
    // a non-Hermitian shift
    CHECK_THROWS_AS(k_shift(ComplexMatrix{{cplx(0, 1)}}), ConstraintError);
    CHECK_THROWS_AS(make_transform(I, I, Z, Z, ComplexMatrix::identity(2)), DimensionError);
}

TEST_CASE("quarter rotation") {
    // M -> -M^{-1}
    const auto Z = ComplexMatrix::zeros(1, 1), I = ComplexMatrix::identity(1);
    const auto t = make_transform(I, Z, I, -I, Z);
    CHECK(std::abs(transform_weyl(t, ComplexMatrix{{cplx(0, 2)}})(0, 0) - cplx(0, 0.5)) < 1e-15);
    CHECK_THROWS_AS(transform_weyl(t, Z), SingularMatrixError);
}

}
