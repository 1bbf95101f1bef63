#include "weyl/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "weyl/charfun.hpp"
#include "weyl/errors.hpp"
#include "weyl/expr.hpp"
#include "weyl/extensions.hpp"
#include "weyl/oracle.hpp"
#include "weyl/problem.hpp"
#include "weyl/slsolve.hpp"
#include "weyl/specfun.hpp"
#include "weyl/triplets.hpp"

namespace weyl {

namespace {

constexpr double kPi = 3.141592653589793;

class Recorder {
public:
    explicit Recorder(SuiteResult& r) : r_(r) {}

    void check(const std::string& name, bool ok, const std::string& detail = {}) {
        r_.assertions.push_back({name, ok, detail});
    }
    void close(const std::string& name, double value, double expected, double tol) {
        std::ostringstream os;
        os.precision(17);
        os << "value " << value << ", expected " << expected << ", tol " << tol;
        check(name, std::abs(value - expected) <= tol, os.str());
    }
    void at_most(const std::string& name, double value, double bound) {
        std::ostringstream os;
        os.precision(17);
        os << "value " << value << ", bound " << bound;
        check(name, value <= bound, os.str());
    }
    // Runs f; a library error counts as a failed assertion rather than
    // aborting the suite.
    void guard(const std::string& name, const std::function<void()>& f) {
        try {
            f();
        } catch (const std::exception& e) {
            check(name, false, std::string("error: ") + e.what());
        }
    }

private:
    SuiteResult& r_;
};

ComplexMatrix random_hermitian(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
    return herm_part(m);
}

void suite_linalg(Recorder& t, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int n : {1, 2, 3, 5, 8}) {
        const ComplexMatrix H = random_hermitian(n, rng);
        const auto es = hermitian_eigensystem(H);
        const auto V = es.vectors;
        const double rec = max_abs_diff(V * ComplexMatrix::diagonal(std::span<const double>(es.values)) * V.adjoint(), H);
        t.at_most("eigensystem reconstructs H, n=" + std::to_string(n), rec, 1e-10 * (1 + H.norm()));
        int neg = 0;
        for (double v : es.values) neg += v < 0;
        t.check("inertia matches eigenvalue signs, n=" + std::to_string(n), inertia(H, 0.0).n_neg == neg);
        const ComplexMatrix A = H + ComplexMatrix::identity(n) * cplx(0, 1.5);
        t.at_most("A inverse(A) = I, n=" + std::to_string(n), max_abs_diff(A * inverse(A), ComplexMatrix::identity(n)),
                  1e-10);
        cplx prod = 1;
        for (double v : es.values) prod *= cplx(v, 1.5);
        t.at_most("det equals product of eigenvalues, n=" + std::to_string(n), std::abs(det(A) - prod),
                  1e-9 * (1 + std::abs(prod)));
    }
    const ComplexMatrix r1 = outer(std::vector<cplx>{1, 2, cplx(0, 1)}, std::vector<cplx>{1, -1, 3});
    t.check("rank of an outer product is 1", numeric_rank(r1, 1e-8) == 1);
}

void suite_specfun(Recorder& t, std::uint64_t seed) {
    t.close("Gamma(1/2) = sqrt(pi)", specfun::gamma(0.5), std::sqrt(kPi), 1e-13);
    t.close("Gamma(5) = 24", specfun::gamma(5.0), 24.0, 1e-11);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.1, 20.0);
    for (int k = 0; k < 10; ++k) {
        const double x = u(rng);
        const double ref = std::sqrt(2 / (kPi * x)) * std::sin(x);
        t.at_most("J_1/2 closed form at x=" + format_double(x),
                  std::abs(specfun::bessel_j(0.5, x) - ref), 1e-10 * (1 + std::abs(ref)));
    }
    std::normal_distribution<double> g(0, 5);
    bool upper = true;
    for (int k = 0; k < 200; ++k) {
        const cplx z(g(rng), g(rng));
        const cplx s = specfun::sqrt_upper(z);
        upper = upper && s.imag() >= 0 && std::abs(s * s - z) <= 1e-12 * (1 + std::abs(z));
    }
    t.check("sqrt_upper squares back with Im >= 0", upper);
}

void suite_expr(Recorder& t, std::uint64_t) {
    t.close("-2*exp(-x) at 0", PotentialExpr::parse("-2*exp(-x)")(0.0), -2.0, 0.0);
    t.close("1/(1+x^2) at 1", PotentialExpr::parse("1/(1+x^2)")(1.0), 0.5, 0.0);
    t.close("2^3^2 is right associative", PotentialExpr::parse("2^3^2")(0.0), 512.0, 0.0);
    t.close("-2^2 binds the power first", PotentialExpr::parse("-2^2")(0.0), -4.0, 0.0);
    int column = -1;
    try {
        PotentialExpr::parse("2*-");
    } catch (const ParseError& e) {
        column = e.column();
    }
    t.check("'2*-' fails at column 3", column == 3, "column " + std::to_string(column));
}

void suite_slsolve(Recorder& t, std::uint64_t seed) {
    const auto q = PotentialSpec::zero();
    sl::HalfLineOptions opts;
    opts.L = 40.0;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-10, 10), im(0.5, 10);
    for (int k = 0; k < 5; ++k) {
        const cplx z(re(rng), im(rng));
        t.guard("m_inf closed form", [&] {
            t.at_most("m_inf(z) = i sqrt(z)", std::abs(sl::halfline_m_inf(q, z, opts) - cplx(0, 1) * specfun::sqrt_upper(z)),
                      1e-8);
        });
    }
    for (double h : {-2.0, 0.5, 3.0}) {
        const cplx z(1.0, 2.0);
        t.guard("m_h relation", [&] {
            const cplx mi = sl::halfline_m_inf(q, z, opts);
            const cplx mh = sl::halfline_m(q, sl::HTriplet::finite(h), z, opts);
            t.at_most("m_h (m_inf - h) = 1 - h m_inf, h=" + format_double(h), std::abs(mh * (mi - h) - (1.0 - h * mi)),
                      1e-8);
        });
    }
    t.guard("finite interval cot/csc", [&] {
        const cplx z(2.0, 1.0);
        const cplx k = specfun::sqrt_upper(z);
        const ComplexMatrix M = sl::finite_interval_M(q, kPi, z);
        t.at_most("M11 = -k cot(k pi)", std::abs(M(0, 0) + k * std::cos(k * kPi) / std::sin(k * kPi)), 1e-7);
        t.at_most("M12 = k / sin(k pi)", std::abs(M(0, 1) - k / std::sin(k * kPi)), 1e-7);
    });
}

void suite_herglotz(Recorder& t, std::uint64_t seed) {
    const auto pts = random_upper_points(seed, 25);
    for (const auto& [label, m] : catalog_models()) {
        t.guard("Herglotz " + label, [&] {
            double worst = 0;
            for (cplx z : pts) {
                const ComplexMatrix M = m.evaluate(z);
                worst = std::min(worst, lambda_min(imag_part(M)) / (1 + M.norm()));
            }
            t.check("lambda_min(Im M) >= 0 on C+: " + label, worst >= -1e-9, "worst " + format_double(worst));
        });
    }
}

void suite_kernel(Recorder& t, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    for (const auto& [label, m] : catalog_models()) {
        t.guard("kernel " + label, [&] {
            const int n = m.dimension();
            double worst = 0;
            for (int trial = 0; trial < 3; ++trial) {
                const auto z = random_upper_points(rng(), 5);
                std::vector<ComplexMatrix> Ms;
                std::vector<std::vector<cplx>> h(5, std::vector<cplx>(n));
                for (int i = 0; i < 5; ++i) {
                    Ms.push_back(m.evaluate(z[i]));
                    for (auto& e : h[i]) e = cplx(g(rng), g(rng));
                }
                ComplexMatrix G(5, 5);
                for (int i = 0; i < 5; ++i)
                    for (int j = 0; j < 5; ++j) {
                        const ComplexMatrix K = (Ms[i] - Ms[j].adjoint()) * (1.0 / (z[i] - std::conj(z[j])));
                        const auto Kh = K.apply(h[i]);
                        cplx s = 0;
                        for (int r = 0; r < n; ++r) s += std::conj(h[j][r]) * Kh[r];
                        G(j, i) = s;
                    }
                worst = std::min(worst, lambda_min(herm_part(G)) / (1 + G.norm()));
            }
            t.check("Nevanlinna kernel PSD: " + label, worst >= -1e-8, "worst " + format_double(worst));
        });
    }
}

void suite_symmetry(Recorder& t, std::uint64_t seed) {
    const auto pts = random_upper_points(seed, 10);
    for (const auto& [label, m] : catalog_models()) {
        t.guard("symmetry " + label, [&] {
            double worst = 0;
            for (cplx z : pts) {
                const ComplexMatrix a = m.evaluate(std::conj(z)), b = m.evaluate(z).adjoint();
                worst = std::max(worst, max_abs_diff(a, b) / (1 + b.max_abs()));
            }
            t.at_most("M(conj z) = M(z)*: " + label, worst, 1e-9);
        });
    }
}

void suite_m_zero(Recorder& t, std::uint64_t) {
    t.guard("op potential", [&] {
        const auto r = m_at_zero(WeylModel::operator_potential_halfline({2.0}));
        t.close("operator potential M(0) = sqrt2 (sqrt2 - 1)", r.value(0, 0).real(), std::sqrt(2.0) * (std::sqrt(2.0) - 1),
                1e-12);
    });
    t.guard("half line", [&] {
        t.close("half_line q=0: M(0) = 0", std::abs(m_at_zero(WeylModel::half_line(PotentialSpec::zero())).value(0, 0)),
                0.0, 1e-10);
    });
    t.guard("sector", [&] {
        const auto r = m_at_zero(WeylModel::sector(0.75));
        t.check("sector M(0) = 0 exactly, closed form", r.value(0, 0) == cplx(0) && r.method == MZeroMethod::closed_form);
    });
    t.guard("corner", [&] {
        const auto r = m_at_zero(WeylModel::corner(0.75));
        t.close("corner M(0) = -1 by extrapolation", r.value(0, 0).real(), -1.0, 1e-4);
    });
    t.guard("stieltjes", [&] {
        std::vector<double> xs;
        for (int k = 0; k < 20; ++k) xs.push_back(-4.0 + 0.2 * k);
        t.check("half_line q=0 consistent with the shifted Stieltjes class",
                classify_stieltjes(WeylModel::half_line(PotentialSpec::zero()), xs).consistent);
    });
}

void suite_triplets(Recorder& t, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto pts = random_upper_points(seed + 1, 4);
    for (int n : {1, 2, 3}) {
        t.guard("transform n=" + std::to_string(n), [&] {
            const auto tr = random_transform(n, rng);
            const auto inv = tr.inverse();
            const ComplexMatrix A = random_hermitian(n, rng) + ComplexMatrix::identity(n) * cplx(0, 1);
            t.at_most("inverse undoes the transform, n=" + std::to_string(n),
                      max_abs_diff(transform_weyl(inv, transform_weyl(tr, A)), A), 1e-9 * (1 + A.norm()));
            const auto tr2 = random_transform(n, rng);
            t.at_most("composition matches sequential action, n=" + std::to_string(n),
                      max_abs_diff(transform_weyl(compose(tr2, tr), A), transform_weyl(tr2, transform_weyl(tr, A))),
                      1e-8 * (1 + A.norm()));
        });
    }
    t.guard("transformed model stays Herglotz", [&] {
        const auto model = transformed_model(WeylModel::operator_potential_halfline({2.0, 5.0}), random_transform(2, rng));
        double worst = 0;
        for (cplx z : pts) worst = std::min(worst, lambda_min(imag_part(model.evaluate(z))));
        t.check("transformed operator-potential model is Herglotz", worst >= -1e-9);
    });
    bool rejected = false;
    try {
        const auto I = ComplexMatrix::identity(1);
        make_transform(I, I * cplx(2), I, ComplexMatrix::zeros(1, 1), I);
    } catch (const ConstraintError&) {
        rejected = true;
    }
    t.check("non J-unitary blocks are rejected", rejected);
}

void suite_spectrum(Recorder& t, std::uint64_t) {
    t.guard("robin", [&] {
        const ExtensionSpec s(WeylModel::half_line(PotentialSpec::zero()), ComplexMatrix::scalar(-1.0));
        const auto r = point_spectrum_real(s, -2.0, -0.1);
        t.check("Robin h=-1 has one eigenvalue in [-2,-0.1]", r.eigenvalues.size() == 1);
        if (r.eigenvalues.size() == 1) t.close("located at -1", r.eigenvalues[0].location.real(), -1.0, 1e-6);
    });
    t.guard("robin positive", [&] {
        const ExtensionSpec s(WeylModel::half_line(PotentialSpec::zero()), ComplexMatrix::scalar(1.0));
        t.check("Robin h=+1 has no eigenvalue below 0", point_spectrum_real(s, -5.0, -0.01).eigenvalues.empty());
    });
    t.guard("neumann interval", [&] {
        const ExtensionSpec s(WeylModel::finite_interval(PotentialSpec::zero(), kPi), ComplexMatrix::zeros(2, 2));
        const auto r = point_spectrum_real(s, 0.5, 9.5);
        t.check("Neumann-Neumann has three eigenvalues in [0.5,9.5]", r.eigenvalues.size() == 3);
        for (size_t k = 0; k < r.eigenvalues.size() && k < 3; ++k) {
            const double want = double((k + 1) * (k + 1));
            t.close("eigenvalue " + format_double(want), r.eigenvalues[k].location.real(), want, 5e-6 * want);
        }
    });
    t.guard("hermitian complex count", [&] {
        const ExtensionSpec s(WeylModel::half_line(PotentialSpec::zero()), ComplexMatrix::scalar(-1.0));
        t.check("self-adjoint extension has no eigenvalue in C+", count_complex_eigenvalues(s, {-3, 3, 0.2, 3}) == 0);
    });
    t.guard("dissipative count", [&] {
        // m = i sqrt(z) = -1 + 0.5i at z = -0.75 + i
        const ExtensionSpec s(WeylModel::half_line(PotentialSpec::zero()), ComplexMatrix::scalar(cplx(-1, 0.5)));
        t.check("B = -1 + 0.5i: one eigenvalue in C+", count_complex_eigenvalues(s, {-3, 3, 0.2, 3}) == 1);
    });
}

void suite_negcount(Recorder& t, std::uint64_t) {
    for (double h : {-3.0, -2.0, -0.5, 0.0, 0.5}) {
        t.guard("negcount h=" + format_double(h), [&] {
            const auto c = negative_count(ExtensionSpec(WeylModel::half_line(PotentialSpec::zero()), ComplexMatrix::scalar(h)));
            t.check("kappa_M = kappa_oracle, h=" + format_double(h), c.kappa_oracle && c.kappa_M == *c.kappa_oracle,
                    "kappa_M " + std::to_string(c.kappa_M) + ", kappa_oracle " +
                        (c.kappa_oracle ? std::to_string(*c.kappa_oracle) : "none"));
        });
    }
    t.guard("krein", [&] {
        const auto k = krein_extension(WeylModel::operator_potential_halfline({2.0, 5.0}));
        const auto S = operator_potential_robin({2.0, 5.0}, k.B);
        t.at_most("Krein B gives y'(0) = -diag(1,2) y(0)", max_abs_diff(S, ComplexMatrix{{-1, 0}, {0, -2}}), 1e-12);
        t.check("Krein extension has no negative eigenvalue", negative_count(k).kappa_M == 0);
    });
}

void suite_rank(Recorder& t, std::uint64_t) {
    const auto hl = WeylModel::half_line(PotentialSpec::zero());
    const auto fi = WeylModel::finite_interval(PotentialSpec::zero(), kPi);
    struct Case {
        ExtensionSpec a, b;
        int rank;
    };
    const std::vector<Case> cases = {
        {{hl, ComplexMatrix::scalar(-1.0)}, {hl, ComplexMatrix::scalar(-1.0)}, 0},
        {{hl, ComplexMatrix::scalar(-1.0)}, {hl, ComplexMatrix::scalar(1.0)}, 1},
        {{fi, ComplexMatrix{{1, 0}, {0, 0}}}, {fi, ComplexMatrix::zeros(2, 2)}, 1},
        {{fi, ComplexMatrix{{1, 0}, {0, 2}}}, {fi, ComplexMatrix{{-1, 0}, {0, 0.5}}}, 2},
    };
    for (size_t k = 0; k < cases.size(); ++k) {
        t.guard("rank case " + std::to_string(k), [&] {
            const auto r = resolvent_rank_law(cases[k].a, cases[k].b, cplx(0.3, 1.0), cplx(0.2, 0.7));
            t.check("rank law case " + std::to_string(k) + " (rank " + std::to_string(cases[k].rank) + ")",
                    r.agree && r.rank_difference == cases[k].rank && r.rank_oracle.has_value());
        });
    }
}

void suite_charfun(Recorder& t, std::uint64_t seed) {
    const auto pts = random_upper_points(seed, 10);
    t.guard("scalar", [&] {
        const ExtensionSpec s(WeylModel::half_line(PotentialSpec::zero()), ComplexMatrix::scalar(cplx(0, 1)));
        const auto col = factor_colligation(s.B);
        double cay = 0, margin = 1;
        for (cplx z : pts) {
            const ComplexMatrix M = s.model.evaluate(z);
            const auto W = char_function_colligation(col, M);
            cay = std::max(cay, cayley_check(col, W, v_function(col, M)));
            margin = std::min(margin, j_contractivity_margin(col.J, W));
        }
        t.at_most("Cayley identity, scalar h=i", cay, 1e-10);
        t.check("J-contractive, scalar h=i", margin >= -1e-8);
        t.close("|W(i)| = sqrt2 - 1", std::abs(char_function(s, cplx(0, 1))(0, 0)), std::sqrt(2.0) - 1, 1e-8);
    });
    t.guard("matrix", [&] {
        const ComplexMatrix B{{cplx(1, 0.5), cplx(0.2, 0.1)}, {cplx(0.2, 0.3), cplx(-1, 1)}};
        const ExtensionSpec s(WeylModel::operator_potential_halfline({2.0, 5.0}), B);
        const auto col = factor_colligation(B);
        double cay = 0, margin = 1, sim = 0;
        for (cplx z : pts) {
            const ComplexMatrix M = s.model.evaluate(z);
            const auto W = char_function_colligation(col, M);
            const auto Wd = char_function_direct(B, M);
            cay = std::max(cay, cayley_check(col, W, v_function(col, M)));
            margin = std::min(margin, j_contractivity_margin(col.J, W));
            sim = std::max(sim, max_abs_diff(col.K.adjoint() * Wd, W * col.K.adjoint()));
        }
        t.at_most("Cayley identity, 2x2", cay, 1e-10);
        t.check("J-contractive, 2x2", margin >= -1e-8);
        t.at_most("direct and colligation forms related by K*", sim, 1e-10);
    });
    bool degenerate = false;
    try {
        factor_colligation(ComplexMatrix::scalar(2.0));
    } catch (const DegenerateColligationError&) {
        degenerate = true;
    }
    t.check("Hermitian B has a degenerate colligation", degenerate);
}

void suite_oracle(Recorder& t, std::uint64_t) {
    const auto q = PotentialSpec::zero();
    auto err = [&](int n) {
        const auto op = oracle::discretize(q, kPi, n, oracle::Boundary::dirichlet(), oracle::Boundary::dirichlet());
        return std::abs(oracle::lowest_eigenvalues(op, 1)[0] - 1.0);
    };
    const double ratio = err(500) / err(1000);
    t.check("second-order convergence on the Dirichlet benchmark", ratio >= 3.5 && ratio <= 4.5,
            "ratio " + format_double(ratio));
    const auto op = oracle::discretize(q, kPi, 2000, oracle::Boundary::neumann(), oracle::Boundary::neumann());
    t.check("Sturm count of Neumann eigenvalues below 10 is 4", oracle::eigen_count_below(op, 10.0) == 4);
    t.check("Sturm count below 0.5 is 1", oracle::eigen_count_below(op, 0.5) == 1);
}

void suite_problem(Recorder& t, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-3, 3);
    const char* docs[] = {
        R"j({"model":{"kind":"half_line","potential":{"kind":"square_well","depth":-1,"width":1},"h":0.5},"boundary":-2})j",
        R"j({"model":{"kind":"finite_interval","potential":{"kind":"expression","source":"1/(1+x^2)"},"b":2},"boundary":[[1,[0,0.5]],[[0,-0.5],2]]})j",
        R"j({"model":{"kind":"sector","beta":0.75},"boundary":[0.1,0.2],"task":{"grid":{"re":[-5,5,41],"im":[0.1,5,20]}}})j",
        R"j({"model":{"kind":"operator_potential_halfline","a":[2,5]},"task":{"window":[-8,0.5],"grid_n":200}})j",
    };
    for (const char* d : docs) {
        t.guard("round trip", [&] {
            ProblemFile p = parse_problem_text(d);
            if (p.boundary) (*p.boundary)(0, 0) += cplx(u(rng), 0);
            const ProblemFile back = parse_problem_text(serialize_problem(p));
            t.check("serialize then parse is the identity: " + p.model.kind, back == p);
            t.check("hash is stable: " + p.model.kind, problem_hash(back) == problem_hash(p));
        });
    }
    std::string path;
    try {
        parse_problem_text(R"({"model":{"kind":"corner","beta":1.5}})");
    } catch (const SchemaError& e) {
        path = e.path();
    }
    t.check("schema errors carry a path", path == "/model/beta", path);
}

using SuiteFn = void (*)(Recorder&, std::uint64_t);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> r = {
        {"linalg", suite_linalg},       {"specfun", suite_specfun},   {"expr", suite_expr},
        {"slsolve", suite_slsolve},     {"herglotz", suite_herglotz}, {"kernel", suite_kernel},
        {"symmetry", suite_symmetry},   {"m_zero", suite_m_zero},     {"triplets", suite_triplets},
        {"spectrum", suite_spectrum},   {"negcount", suite_negcount}, {"rank_law", suite_rank},
        {"charfun", suite_charfun},     {"oracle", suite_oracle},     {"problem", suite_problem},
    };
    return r;
}

}  // namespace

bool SuiteResult::passed() const {
    return !assertions.empty() &&
           std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

std::vector<std::pair<std::string, WeylModel>> catalog_models() {
    return {
        {"half_line", WeylModel::half_line(PotentialSpec::square_well(-1.0, 1.0))},
        {"finite_interval", WeylModel::finite_interval(PotentialSpec::expression("1/(1+x^2)"), 2.0)},
        {"operator_potential_halfline", WeylModel::operator_potential_halfline({2.0, 5.0})},
        {"strip", WeylModel::strip({2.0, 5.0})},
        {"corner", WeylModel::corner(0.75)},
        {"sector", WeylModel::sector(0.75)},
        {"multi_corner", WeylModel::multi_corner({0.6, 0.75, 0.9})},
        {"radial_schrodinger", WeylModel::radial_schrodinger(PotentialSpec::expression("-0.5*exp(-x)"))},
    };
}

std::vector<cplx> random_upper_points(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-20.0, 20.0), im(0.3, 20.0);
    std::vector<cplx> pts;
    for (int k = 0; k < count; ++k) {
        const double x = re(rng);
        pts.emplace_back(x, im(rng));
    }
    return pts;
}

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [n, f] : registry()) names.push_back(n);
    return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
    for (const auto& [n, f] : registry()) {
        if (n != name) continue;
        SuiteResult r;
        r.name = n;
        Recorder rec(r);
        const auto t0 = std::chrono::steady_clock::now();
        rec.guard(n, [&] { f(rec, seed); });
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    }
    throw ContractError("unknown suite '" + name + "'");
}

std::vector<SuiteResult> run_suites(const std::string& which, std::uint64_t seed, int jobs) {
    const std::vector<std::string> names = which == "all" ? suite_names() : std::vector<std::string>{which};
    if (which != "all") run_suite(which, seed);  // validates the name before spawning
    std::vector<SuiteResult> out(names.size());
    if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next++) < names.size();) out[i] = run_suite(names[i], seed);
    };
    std::vector<std::thread> pool;
    for (int k = 0; k < std::min<int>(jobs, static_cast<int>(names.size())); ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return out;
}

ojson suites_to_json(const std::vector<SuiteResult>& results) {
    ojson suites = ojson::array();
    int passed = 0;
    for (const auto& r : results) {
        ojson s;
        s["name"] = r.name;
        s["passed"] = r.passed();
        ojson as = ojson::array();
        for (const auto& a : r.assertions) {
            ojson x;
            x["name"] = a.name;
            x["passed"] = a.passed;
            if (!a.detail.empty()) x["detail"] = a.detail;
            as.push_back(std::move(x));
        }
        s["assertions"] = std::move(as);
        suites.push_back(std::move(s));
        passed += r.passed();
    }
    ojson j;
    j["suites_passed"] = passed;
    j["suites_total"] = static_cast<int>(results.size());
    j["suites"] = std::move(suites);
    return j;
}

}  // namespace weyl
