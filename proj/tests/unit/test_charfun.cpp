#include <doctest.h>

#include <cmath>
#include <random>

#include "weyl/charfun.hpp"
#include "weyl/errors.hpp"

using namespace weyl;

TEST_SUITE("charfun") {

TEST_CASE("scalar half-line value") {
    // h = i: W(i) = (conj(h) - m)^{-1} (h - m) with m = i sqrt(i)
    const ExtensionSpec spec(WeylModel::half_line(PotentialSpec::zero()), ComplexMatrix::scalar(cplx(0, 1)));
    const auto W = char_function(spec, cplx(0, 1));
    CHECK(std::abs(W(0, 0) - cplx(0, 0.41421356237309503)) < 1e-9);
}

TEST_CASE("colligation factor") {
    const ComplexMatrix B{{cplx(1, 1), cplx(0, 0.5)}, {cplx(0, 0.5), cplx(-1, -2)}};
    const auto col = factor_colligation(B);
    CHECK(col.rank() == 2);
    CHECK(col.J(0, 0).real() == 1);
    CHECK(col.J(1, 1).real() == -1);
    CHECK(max_abs_diff(col.K * col.J * col.K.adjoint(), imag_part(B)) < 1e-12);
    CHECK_THROWS_AS(factor_colligation(ComplexMatrix{{1, 2}, {2, 1}}), DegenerateColligationError);

    const ComplexMatrix low{{cplx(0, 1), 0}, {0, 3}};
    CHECK(factor_colligation(low).rank() == 1);
}

TEST_CASE("direct and colligation forms are intertwined by K*") {
    const auto model = WeylModel::operator_potential_halfline({2, 3});
    const ComplexMatrix B{{cplx(-1, 0.7), 0.3}, {0.3, cplx(0.5, 1.1)}};
    const auto col = factor_colligation(B);
    for (cplx z : {cplx(0.5, 1), cplx(-2, 0.4), cplx(3, 2)}) {
        const auto M = model.evaluate(z);
        const auto wd = char_function_direct(B, M), wc = char_function_colligation(col, M);
        CHECK(max_abs_diff(col.K.adjoint() * wd, wc * col.K.adjoint()) < 1e-10);
        CHECK(cayley_check(col, wc, v_function(col, M)) < 1e-10);
        CHECK(j_contractivity_margin(col.J, wc) >= -1e-10);
    }
}

TEST_CASE("rank-one colligation") {
    const auto model = WeylModel::operator_potential_halfline({2, 3});
    const ComplexMatrix B{{cplx(-1, 0.7), 0.3}, {0.3, 0.5}};
    const ExtensionSpec spec(model, B);
    const auto W = char_function(spec, cplx(0.1, 1));
    CHECK(W.rows() == 1);
    CHECK(std::abs(W(0, 0)) <= 1 + 1e-12);
}

TEST_CASE("sector theta") {
    CHECK(std::abs(theta_sector(1.0, 0.75, cplx(0, 1)) - cplx(0, 1)) < 1e-15);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> re(-5, 5), im(0.1, 5);
    for (int k = 0; k < 20; ++k) {
        const cplx z(re(rng), im(rng));
        CHECK(std::abs(theta_sector(z, 0.75, cplx(0.3, 0.8))) >= 1 - 1e-12);
    }
}

}
