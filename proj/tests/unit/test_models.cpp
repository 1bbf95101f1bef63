#include <doctest.h>

#include <cmath>
#include <random>

#include "weyl/errors.hpp"
#include "weyl/models.hpp"
#include "weyl/specfun.hpp"

using namespace weyl;

namespace {

constexpr double pi = 3.141592653589793;

std::vector<cplx> upper_points(unsigned seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-20, 20), im(0.3, 20);
    std::vector<cplx> out;
    for (int k = 0; k < count; ++k) out.emplace_back(re(rng), im(rng));
    return out;
}

std::vector<WeylModel> every_kind() {
    return {WeylModel::half_line(PotentialSpec::square_well(-1, 1)),
            WeylModel::finite_interval(PotentialSpec::expression("1/(1+x^2)"), 2.0),
            WeylModel::operator_potential_halfline({2, 5}),
            WeylModel::strip({2, 5}),
            WeylModel::corner(0.75),
            WeylModel::sector(0.75),
            WeylModel::multi_corner({0.6, 0.75, 0.9}),
            WeylModel::radial_schrodinger(PotentialSpec::expression("-0.5*exp(-x)"))};
}

}  // namespace

TEST_SUITE("models") {

TEST_CASE("Herglotz and conjugate symmetry") {
    const auto pts = upper_points(21, 30);
    for (const auto& m : every_kind()) {
        CAPTURE(m.name());
        for (cplx z : pts) {
            const auto v = m.evaluate(z);
            REQUIRE(lambda_min(imag_part(v)) >= -1e-9 * (1 + v.norm()));
            REQUIRE(max_abs_diff(m.evaluate(std::conj(z)), v.adjoint()) <= 1e-9 * (1 + v.norm()));
        }
    }
}

TEST_CASE("operator potential closed form") {
    const auto m = WeylModel::operator_potential_halfline({2, 5});
    const cplx z(1.5, 2);
    const auto v = m.evaluate(z);
    for (int j = 0; j < 2; ++j) {
        const double a = j == 0 ? 2 : 5;
        const cplx expect = std::sqrt(a) * (std::sqrt(a) - std::sqrt(cplx(a - 1) - z));
        CHECK(std::abs(v(j, j) - expect) < 1e-12);
    }
    CHECK(std::abs(v(0, 1)) == 0.0);
    const auto m0 = m_at_zero(m);
    CHECK(m0.method == MZeroMethod::closed_form);
    CHECK(m0.value(0, 0).real() == doctest::Approx(2 - std::sqrt(2.0)));
    CHECK(m0.value(1, 1).real() == doctest::Approx(5 - std::sqrt(20.0)));
    CHECK_THROWS_AS(m.evaluate(1.5), DomainError);
    CHECK_THROWS_AS(WeylModel::operator_potential_halfline({0.5}), ContractError);
}

TEST_CASE("sector constant") {
    const auto m = WeylModel::sector(0.75);
    // M(-1) = -|C_beta|
    CHECK(m.evaluate(-1.0)(0, 0).real() == doctest::Approx(-1.3947328267374688).epsilon(1e-12));
    CHECK(m.evaluate(-16.0)(0, 0).real() == doctest::Approx(-1.3947328267374688 * 8).epsilon(1e-12));
    CHECK(std::abs(m_at_zero(m).value(0, 0)) == 0.0);
    CHECK_THROWS_AS(m.evaluate(2.0), DomainError);
    CHECK_THROWS_AS(WeylModel::sector(1.0), ContractError);
}

TEST_CASE("corner anchors") {
    const auto m = WeylModel::corner(0.75);
    CHECK(m.evaluate(0.0)(0, 0).real() == -1.0);
    const auto m0 = m_at_zero(m);
    CHECK(m0.method == MZeroMethod::extrapolated);
    CHECK(std::abs(m0.value(0, 0) + 1.0) < 1e-6);
    // poles sit at the squared zeros of J_beta
    const double x = m.evaluate(-0.5)(0, 0).real();
    CHECK(x < -1.0);
}

TEST_CASE("finite interval M(0) for q = 0") {
    const auto m0 = m_at_zero(WeylModel::finite_interval(PotentialSpec::zero(), 2.0));
    // [[-1/b, 1/b], [1/b, -1/b]]
    CHECK(m0.value(0, 0).real() == doctest::Approx(-0.5));
    CHECK(m0.value(0, 1).real() == doctest::Approx(0.5));
    CHECK_THROWS_AS(m_at_zero(WeylModel::finite_interval(PotentialSpec::expression("-3"), pi)), ContractError);
}

TEST_CASE("half-line M(0) at the threshold") {
    const auto m0 = m_at_zero(WeylModel::half_line(PotentialSpec::square_well(1, 1)));
    // zero-energy solution: cosh(x-1)-sinh(x-1) matched to the constant outside
    CHECK(m0.value(0, 0).real() == doctest::Approx(-std::tanh(1.0)).epsilon(1e-7));
}

TEST_CASE("strip is symmetric in its ends") {
    const auto v = WeylModel::strip({1, 2}).evaluate(cplx(-0.5, 0.3));
    CHECK(std::abs(v(0, 0) - v(2, 2)) < 1e-14);
    CHECK(std::abs(v(0, 2) - v(2, 0)) < 1e-14);
    CHECK(std::abs(v(0, 1)) == 0.0);
}

TEST_CASE("R-class and Stieltjes classification") {
    const auto pts = upper_points(5, 20);
    const auto rep = classify_R_class(WeylModel::operator_potential_halfline({2}), pts);
    CHECK(rep.herglotz);
    CHECK(rep.sublinear);
    CHECK(rep.unbounded_imag);

    std::vector<double> xs;
    for (int k = 0; k < 40; ++k) xs.push_back(-10 + 0.24 * k);
    CHECK(classify_stieltjes(WeylModel::sector(0.75), xs).monotone);
    const auto bad = WeylModel::constant(ComplexMatrix::scalar(cplx(1, 0)));
    CHECK_THROWS_AS(classify_R_class(bad, {cplx(1, 0)}), ContractError);
}

TEST_CASE("contract checks") {
    CHECK_THROWS_AS(WeylModel::corner(0.4), ContractError);
    CHECK_THROWS_AS(WeylModel::multi_corner({}), ContractError);
    CHECK_THROWS_AS(WeylModel::sector(0.75).evaluate(cplx(NAN, 1)), ContractError);
}

}
