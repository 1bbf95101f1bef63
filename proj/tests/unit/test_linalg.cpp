#include <doctest.h>

#include <random>

#include "weyl/errors.hpp"
#include "weyl/linalg.hpp"

using namespace weyl;

namespace {

ComplexMatrix random_matrix(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
    return m;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("hermitian and imaginary parts") {
    const cplx i(0, 1);
    CHECK(imag_part(ComplexMatrix::scalar(i))(0, 0) == cplx(1));
    CHECK(herm_part(ComplexMatrix::scalar(cplx(1, 2)))(0, 0) == cplx(1));
    const ComplexMatrix h{{1, cplx(2, 3)}, {cplx(2, -3), 4}};
    CHECK(imag_part(h).max_abs() == 0.0);
    CHECK_THROWS_AS(herm_part(ComplexMatrix(2, 3)), DimensionError);

    std::mt19937_64 rng(3);
    const ComplexMatrix m = random_matrix(4, rng);
    CHECK(max_abs_diff(herm_part(m) + imag_part(m) * i, m) <= 1e-14);
}

TEST_CASE("solve, det and inverse") {
    std::mt19937_64 rng(5);
    const ComplexMatrix b = random_matrix(3, rng);
    CHECK(max_abs_diff(solve(ComplexMatrix::identity(3), b), b) == 0.0);
    const std::vector<cplx> d{2, cplx(0, 3)};
    CHECK(std::abs(det(ComplexMatrix::diagonal(d)) - cplx(0, 6)) < 1e-15);
    const ComplexMatrix swap{{0, 1}, {1, 0}};
    CHECK(max_abs_diff(inverse(swap), swap) == 0.0);

    for (int n = 1; n <= 6; ++n) {
        const ComplexMatrix a = random_matrix(n, rng) + ComplexMatrix::identity(n) * cplx(3);
        CHECK(max_abs_diff(a * inverse(a), ComplexMatrix::identity(n)) <= 1e-9 * n);
    }
}

TEST_CASE("singular matrices report the pivot") {
    const ComplexMatrix s{{1, 2}, {2, 4}};
    try {
        inverse(s);
        FAIL("expected SingularMatrixError");
    } catch (const SingularMatrixError& e) {
        CHECK(e.smallest_pivot() < 1e-12);
    }
}

TEST_CASE("hermitian eigenvalues and inertia") {
    const std::vector<double> d{-2, 0, 3};
    const auto in = inertia(ComplexMatrix::diagonal(d), 1e-9);
    CHECK(in.n_neg == 1);
    CHECK(in.n_zero == 1);
    CHECK(in.n_pos == 1);

    const auto ev = hermitian_eigen(ComplexMatrix{{0, 1}, {1, 0}});
    REQUIRE(ev.size() == 2);
    CHECK(ev[0] == doctest::Approx(-1).epsilon(1e-14));
    CHECK(ev[1] == doctest::Approx(1).epsilon(1e-14));

    CHECK(inertia(ComplexMatrix::scalar(-2.0), 1e-9).n_neg == 1);
    CHECK_THROWS_AS(hermitian_eigen(ComplexMatrix{{0, 1}, {0, 0}}), ContractError);
}

TEST_CASE("eigenvalues sum to the trace and inertia survives congruence") {
    std::mt19937_64 rng(11);
    for (int n = 2; n <= 6; ++n) {
        const ComplexMatrix h = herm_part(random_matrix(n, rng));
        const auto ev = hermitian_eigen(h);
        double sum = 0;
        for (double v : ev) sum += v;
        CHECK(std::abs(sum - h.trace().real()) <= 1e-10 * h.norm());

        const ComplexMatrix t = random_matrix(n, rng) + ComplexMatrix::identity(n) * cplx(2);
        const auto a = inertia(h, 1e-9), b = inertia(herm_part(t.adjoint() * h * t), 1e-9);
        CHECK(a.n_neg == b.n_neg);
        CHECK(a.n_pos == b.n_pos);
    }
}

TEST_CASE("numeric rank") {
    const std::vector<cplx> u{1, cplx(0, 2), -1}, v{cplx(3, 1), 1, 0};
    CHECK(numeric_rank(outer(u, v), 1e-8) == 1);
    CHECK(numeric_rank(ComplexMatrix::identity(4), 1e-8) == 4);
    CHECK(numeric_rank(ComplexMatrix::zeros(3, 3), 1e-8) == 0);
    const auto sv = singular_values(ComplexMatrix{{3, 0}, {0, cplx(0, -4)}});
    REQUIRE(sv.size() == 2);
    CHECK(sv[0] == doctest::Approx(4));
    CHECK(sv[1] == doctest::Approx(3));
}

}
