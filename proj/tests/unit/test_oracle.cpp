#include <doctest.h>

#include <cmath>

#include "weyl/errors.hpp"
#include "weyl/oracle.hpp"
#include "weyl/specfun.hpp"

using namespace weyl;
using namespace weyl::oracle;

namespace {
constexpr double pi = 3.141592653589793;
}

TEST_SUITE("oracle") {

TEST_CASE("Dirichlet benchmark") {
    const auto op = discretize(PotentialSpec::zero(), pi, 2000, Boundary::dirichlet(), Boundary::dirichlet());
    const auto ev = lowest_eigenvalues(op, 3);
    CHECK(std::abs(ev[0] - 1) <= 5e-6);
    CHECK(std::abs(ev[1] - 4) <= 5e-6 * 4);
    CHECK(eigen_count_below(op, 10.0) == 3);
    CHECK(eigen_count_below(op, -1.0) == 0);
}

TEST_CASE("second-order convergence") {
    auto err = [](int n) {
        const auto op = discretize(PotentialSpec::zero(), pi, n, Boundary::dirichlet(), Boundary::dirichlet());
        return std::abs(lowest_eigenvalues(op, 1)[0] - 1.0);
    };
    const double ratio = err(1000) / err(2000);
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
}

TEST_CASE("Neumann and mixed ends") {
    const auto nd = discretize(PotentialSpec::zero(), pi, 2000, Boundary::neumann(), Boundary::dirichlet());
    CHECK(lowest_eigenvalues(nd, 1)[0] == doctest::Approx(0.25).epsilon(1e-5));
    const auto nn = discretize(PotentialSpec::zero(), pi, 2000, Boundary::neumann(), Boundary::neumann());
    const auto ev = lowest_eigenvalues(nn, 4);
    CHECK(std::abs(ev[0]) < 1e-9);
    CHECK(ev[3] == doctest::Approx(9).epsilon(1e-5));
}

TEST_CASE("Robin bound states") {
    const auto r1 = discretize(PotentialSpec::zero(), 40, 4000, Boundary::robin(-1), Boundary::dirichlet());
    CHECK(std::abs(lowest_eigenvalues(r1, 1)[0] + 1) < 1e-4);
    const auto r2 = discretize(PotentialSpec::zero(), 40, 4000, Boundary::robin(-2), Boundary::dirichlet());
    CHECK(eigen_count_below(r2, 0.0) == 1);
    CHECK(std::abs(lowest_eigenvalues(r2, 1)[0] + 4) < 1e-3);
}

TEST_CASE("Sturm count matches bisection") {
    const auto op = discretize(PotentialSpec::expression("-8*exp(-x)"), 30, 1500, Boundary::robin(0.3),
                               Boundary::dirichlet());
    const auto ev = lowest_eigenvalues(op, 8);
    for (double mu : {-6.0, -2.0, -0.5, 0.01, 0.05}) {
        long below = 0;
        for (double e : ev) below += e < mu;
        if (below < 8) CHECK(eigen_count_below(op, mu) == below);
    }
}

TEST_CASE("deep bound states are local") {
    auto lowest = [](double L) {
        const auto op = discretize(PotentialSpec::square_well(-20, 1), L, int(L * 100) + 1, Boundary::neumann(),
                                   Boundary::dirichlet());
        return lowest_eigenvalues(op, 1)[0];
    };
    CHECK(std::abs(lowest(20) - lowest(30)) < 1e-8);
}

TEST_CASE("resolvent") {
    const auto op = discretize(PotentialSpec::zero(), pi, 500, Boundary::dirichlet(), Boundary::dirichlet());
    const double lam = lowest_eigenvalues(op, 1)[0];
    const auto v = eigenvector(op, lam);
    std::vector<cplx> vc(v.begin(), v.end());
    const auto u = resolvent_apply(op, lam - 2.0, vc);
    double err = 0;
    for (size_t i = 0; i < v.size(); ++i) err = std::max(err, std::abs(u[i] - v[i] / 2.0));
    CHECK(err < 1e-10);

    std::vector<cplx> w(op.size());
    for (size_t i = 0; i < w.size(); ++i) w[i] = cplx(std::sin(0.1 * i), std::cos(0.03 * i));
    const cplx z(3.3, 0.2);
    const auto back = apply(op, z, resolvent_apply(op, z, w));
    double res = 0, nw = 0;
    for (size_t i = 0; i < w.size(); ++i) {
        res = std::max(res, std::abs(back[i] - w[i]));
        nw = std::max(nw, std::abs(w[i]));
    }
    CHECK(res <= 1e-10 * nw);
}

TEST_CASE("block operator with diagonal coupling reduces to scalar problems") {
    const std::vector<PotentialSpec> q{PotentialSpec::sampled_table({0.0}, {1.0}),
                                       PotentialSpec::sampled_table({0.0}, {4.0})};
    const ComplexMatrix S{{-2, 0}, {0, -3}};
    const auto block = discretize_block(q, S, 40, 4000);
    const auto a = discretize(q[0], 40, 4000, Boundary::robin(-2), Boundary::dirichlet());
    const auto b = discretize(q[1], 40, 4000, Boundary::robin(-3), Boundary::dirichlet());
    const auto eb = lowest_eigenvalues(block, 2);
    CHECK(eb[0] == doctest::Approx(lowest_eigenvalues(b, 1)[0]).epsilon(1e-9));
    CHECK(eb[1] == doctest::Approx(lowest_eigenvalues(a, 1)[0]).epsilon(1e-9));
    CHECK(eigen_count_below(block, 0.0) == 2);
}

TEST_CASE("corner Dirichlet eigenvalues are squared Bessel zeros") {
    const auto ev = corner_dirichlet_eigenvalues(0.75, 4);
    REQUIRE(ev.size() == 4);
    for (size_t k = 0; k < ev.size(); ++k) {
        CHECK(std::abs(specfun::bessel_j(0.75, std::sqrt(ev[k])).real()) < 1e-10);
        if (k > 0) CHECK(ev[k] > ev[k - 1]);
    }
    CHECK_THROWS_AS(corner_dirichlet_eigenvalues(0.5, 3), ContractError);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(discretize(PotentialSpec::zero(), 1.0, 50, Boundary::dirichlet(), Boundary::dirichlet()),
                    ContractError);
}

}
