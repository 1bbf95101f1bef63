// Acceptance criteria. `acceptance` runs all of them, `acceptance N` only the
// N-th; one [PASS]/[FAIL] line per criterion, exit code 1 on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "weyl/charfun.hpp"
#include "weyl/errors.hpp"
#include "weyl/extensions.hpp"
#include "weyl/models.hpp"
#include "weyl/oracle.hpp"
#include "weyl/slsolve.hpp"
#include "weyl/specfun.hpp"
#include "weyl/triplets.hpp"
#include "weyl/verify.hpp"

using namespace weyl;

namespace {

constexpr double pi = 3.141592653589793;
const cplx I(0, 1);

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// Keeps the worst value of a residual and the overall verdict.
struct Tally {
    bool pass = true;
    std::vector<std::string> notes;
    void need(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
    Outcome done(const std::string& summary) const {
        std::string d = summary;
        for (size_t k = 0; k < notes.size() && k < 4; ++k) d += "; " + notes[k];
        if (notes.size() > 4) d += "; +" + std::to_string(notes.size() - 4) + " more";
        return {pass, d};
    }
};

std::vector<cplx> upper(std::uint64_t seed, int count, double im_min, double re_max = 20, double im_max = 20) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-re_max, re_max), im(im_min, im_max);
    std::vector<cplx> out;
    for (int k = 0; k < count; ++k) out.emplace_back(re(rng), im(rng));
    return out;
}

Outcome herglotz() {
    Tally t;
    double worst = 0;
    for (const auto& [label, m] : catalog_models()) {
        for (cplx z : upper(101, 200, 0.3)) {
            const auto v = m.evaluate(z);
            const double lm = lambda_min(imag_part(v));
            worst = std::min(worst, lm / std::max(v.norm(), 1e-300));
            if (lm < -1e-9 * v.norm()) {
                t.need(false, label + " at " + sci(z.real()) + "+" + sci(z.imag()) + "i");
                break;
            }
        }
    }
    return t.done("8 kinds x 200 points, worst normalized lambda_min " + sci(worst));
}

Outcome kernel() {
    Tally t;
    std::mt19937_64 rng(202);
    std::normal_distribution<double> g;
    double worst = 0;
    for (const auto& [label, m] : catalog_models()) {
        const int n = m.dimension();
        for (int trial = 0; trial < 50; ++trial) {
            const auto z = upper(rng(), 5, 0.3);
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
            const double lm = lambda_min(herm_part(G));
            worst = std::min(worst, lm / G.norm());
            if (lm < -1e-8 * G.norm()) {
                t.need(false, label + " trial " + std::to_string(trial));
                break;
            }
        }
    }
    return t.done("8 kinds x 50 Gram matrices, worst lambda_min/||G|| " + sci(worst));
}

Outcome m_h_relation() {
    Tally t;
    const auto q = PotentialSpec::square_well(-1, 1);
    double worst = 0;
    const auto pts = upper(303, 100, 0.3);
    for (double h : {-2.0, -0.5, 1.0, 3.0}) {
        for (cplx z : pts) {
            const cplx mi = sl::halfline_m_inf(q, z);
            const cplx mh = sl::halfline_m(q, sl::HTriplet::finite(h), z);
            const double r = std::abs(mh * (mi - h) - (1.0 - h * mi));
            worst = std::max(worst, r);
        }
        t.need(worst <= 1e-8, "h = " + sci(h) + " residual " + sci(worst));
    }
    return t.done("4 h x 100 points, max residual " + sci(worst));
}

Outcome m_inf_closed_form() {
    sl::HalfLineOptions opts;
    opts.L = 40.0;
    double worst = 0;
    for (cplx z : upper(404, 200, 0.5))
        worst = std::max(worst, std::abs(sl::halfline_m_inf(PotentialSpec::zero(), z, opts) - I * specfun::sqrt_upper(z)));
    return {worst <= 1e-8, "200 points, L = 40, max |m - i sqrt z| " + sci(worst)};
}

Outcome finite_interval() {
    auto points = upper(505, 40, 0.3);
    for (double x : {-30.0, -7.5, -2.0, -0.3, 0.5, 2.5, 6.2, 12.0, 20.5, 30.0}) points.emplace_back(x, 0.0);
    double worst = 0;
    for (cplx z : points) {
        const cplx k = specfun::sqrt_upper(z);
        // M = k / sin(k b) [[-cos(k b), 1], [1, -cos(k b)]]; cot and csch on the imaginary axis
        const cplx s = std::sin(k * pi), c = std::cos(k * pi);
        const ComplexMatrix ref{{-k * c / s, k / s}, {k / s, -k * c / s}};
        const auto M = sl::finite_interval_M(PotentialSpec::zero(), pi, z);
        worst = std::max(worst, max_abs_diff(M, ref));
    }
    return {worst <= 1e-7, "50 points, max entrywise error " + sci(worst)};
}

Outcome eigen_correspondence() {
    Tally t;
    const ExtensionSpec robin(WeylModel::half_line(PotentialSpec::zero()), ComplexMatrix::scalar(-1.0));
    const auto r = point_spectrum_real(robin, -5, -0.05);
    double dm = INFINITY, doracle = INFINITY;
    if (r.eigenvalues.size() == 1) dm = std::abs(r.eigenvalues[0].location.real() + 1);
    if (r.oracle_eigenvalues && r.oracle_eigenvalues->size() == 1) doracle = std::abs((*r.oracle_eigenvalues)[0] + 1);
    t.need(dm <= 1e-6, "Robin M-route error " + sci(dm));
    t.need(doracle <= 1e-3, "Robin oracle error " + sci(doracle));

    const ExtensionSpec nn(WeylModel::finite_interval(PotentialSpec::zero(), pi), ComplexMatrix::zeros(2, 2));
    const auto s = point_spectrum_real(nn, 0.5, 9.5);
    double worst = INFINITY;
    if (s.eigenvalues.size() == 3 && s.oracle_eigenvalues && s.oracle_eigenvalues->size() == 3) {
        worst = 0;
        for (int k = 0; k < 3; ++k) {
            const double lam = s.eigenvalues[k].location.real();
            worst = std::max(worst, std::abs(lam - (*s.oracle_eigenvalues)[k]) / lam);
            t.need(std::abs(lam - (k + 1.0) * (k + 1.0)) <= 1e-6 * lam, "NN eigenvalue " + sci(lam));
        }
    }
    t.need(worst <= 5e-6, "NN oracle relative gap " + sci(worst));
    return t.done("Robin |lambda+1| " + sci(dm) + " (oracle " + sci(doracle) + "), NN relative gap " + sci(worst));
}

Outcome negative_count_eq() {
    Tally t;
    const auto zero = WeylModel::half_line(PotentialSpec::zero());
    const auto w1 = WeylModel::half_line(PotentialSpec::square_well(-1, 1));
    const auto w5 = WeylModel::half_line(PotentialSpec::square_well(-5, 0.5));
    const std::vector<double> a{2, 5};
    struct Case {
        std::string label;
        ExtensionSpec spec;
    };
    const std::vector<Case> cases = {
        {"h=-3", {zero, ComplexMatrix::scalar(-3.0)}},
        {"h=-2", {zero, ComplexMatrix::scalar(-2.0)}},
        {"h=-0.5", {zero, ComplexMatrix::scalar(-0.5)}},
        {"well -1 B=-1", {w1, ComplexMatrix::scalar(-1.0)}},
        {"well -1 B=1", {w1, ComplexMatrix::scalar(1.0)}},
        {"well -5 B=-1", {w5, ComplexMatrix::scalar(-1.0)}},
        {"well -5 B=0.5", {w5, ComplexMatrix::scalar(0.5)}},
        {"2x2 S=[[-2,.5],[.5,-3]]",
         {WeylModel::operator_potential_halfline(a), operator_potential_boundary(a, ComplexMatrix{{-2, 0.5}, {0.5, -3}})}},
        {"2x2 S=diag(-2,0.5)",
         {WeylModel::operator_potential_halfline(a), operator_potential_boundary(a, ComplexMatrix{{-2, 0}, {0, 0.5}})}},
    };
    std::string counts;
    for (const auto& c : cases) {
        const auto n = negative_count(c.spec);
        const std::string o = n.kappa_oracle ? std::to_string(*n.kappa_oracle) : "none";
        counts += (counts.empty() ? "" : " ") + std::to_string(n.kappa_M) + "/" + o;
        t.need(n.kappa_oracle && *n.kappa_oracle == n.kappa_M, c.label + " kappa " + std::to_string(n.kappa_M) + " vs " + o);
    }
    return t.done(std::to_string(cases.size()) + " scenarios, kappa_M/kappa_oracle: " + counts);
}

Outcome krein() {
    Tally t;
    const std::vector<std::pair<std::string, WeylModel>> models = {
        {"free half-line", WeylModel::half_line(PotentialSpec::zero())},
        {"barrier half-line", WeylModel::half_line(PotentialSpec::square_well(2, 1))},
        {"operator potential", WeylModel::operator_potential_halfline({2, 5})},
    };
    double lowest = INFINITY;
    for (const auto& [label, m] : models) {
        const auto k = krein_extension(m);
        const auto lo = oracle_min_eigenvalue(k);
        t.need(lo.has_value(), label + ": no oracle");
        if (!lo) continue;
        lowest = std::min(lowest, *lo);
        t.need(*lo >= -1e-5, label + " min eigenvalue " + sci(*lo));
    }
    const auto S = operator_potential_robin({2, 5}, krein_extension(WeylModel::operator_potential_halfline({2, 5})).B);
    const double err = max_abs_diff(S, ComplexMatrix{{-1, 0}, {0, -2}});
    t.need(err <= 1e-12, "S = -(A - I)^{1/2} off by " + sci(err));
    return t.done("min oracle eigenvalue " + sci(lowest) + ", |S + diag(1,2)| " + sci(err));
}

Outcome transform_invariance() {
    Tally t;
    const std::vector<double> a{2, 5};
    struct Base {
        ExtensionSpec spec;
        double lo, hi;
    };
    const std::vector<Base> bases = {
        {{WeylModel::half_line(PotentialSpec::square_well(-5, 0.5)), ComplexMatrix::scalar(-1.0)}, -8, -0.01},
        {{WeylModel::operator_potential_halfline(a), operator_potential_boundary(a, ComplexMatrix{{-2, 0.5}, {0.5, -3}})},
         -8,
         0.9},
    };
    std::vector<std::vector<double>> ref;
    for (const auto& b : bases) {
        std::vector<double> ev;
        for (const auto& e : point_spectrum_real(b.spec, b.lo, b.hi).eigenvalues) ev.push_back(e.location.real());
        ref.push_back(ev);
    }
    std::mt19937_64 rng(909);
    double worst = 0;
    for (int k = 0; k < 20; ++k) {
        const auto& b = bases[k % 2];
        const auto tr = random_transform(b.spec.model.dimension(), rng);
        const ExtensionSpec moved(transformed_model(b.spec.model, tr), transform_boundary_operator(tr, b.spec.B));
        const auto rep = point_spectrum_real(moved, b.lo, b.hi);
        const auto& want = ref[k % 2];
        if (rep.eigenvalues.size() != want.size()) {
            t.need(false, "transform " + std::to_string(k) + ": " + std::to_string(rep.eigenvalues.size()) +
                              " eigenvalues instead of " + std::to_string(want.size()));
            continue;
        }
        for (size_t i = 0; i < want.size(); ++i) {
            const double d = std::abs(rep.eigenvalues[i].location.real() - want[i]);
            worst = std::max(worst, d);
            t.need(d <= 1e-8, "transform " + std::to_string(k) + " eigenvalue " + sci(want[i]) + " moved " + sci(d));
        }
    }
    return t.done("20 transforms, max eigenvalue shift " + sci(worst));
}

Outcome charfun() {
    Tally t;
    const auto op = WeylModel::operator_potential_halfline({2, 5});
    struct Case {
        std::string label;
        WeylModel model;
        ComplexMatrix B;
    };
    const std::vector<Case> cases = {
        {"definite 2x2", op, ComplexMatrix{{cplx(-1, 0.7), 0.3}, {0.3, cplx(0.5, 1.1)}}},
        {"indefinite 2x2", op, ComplexMatrix{{cplx(-1, 0.9), cplx(0, 0.2)}, {cplx(0, 0.2), cplx(0.5, -0.6)}}},
        {"rank-one 2x2", op, ComplexMatrix{{cplx(-1, 0.7), 0.3}, {0.3, 0.5}}},
        {"scalar half-line", WeylModel::half_line(PotentialSpec::square_well(-1, 1)), ComplexMatrix::scalar(cplx(-1, 0.5))},
    };
    const auto pts = upper(1010, 25, 0.3);
    double cayley = 0, margin = INFINITY, same = 0;
    int matched = 0;
    for (const auto& c : cases) {
        const auto col = factor_colligation(c.B);
        const bool definite = col.rank() == c.B.rows() && [&] {
            for (int i = 0; i < col.rank(); ++i)
                if (col.J(i, i).real() != col.J(0, 0).real()) return false;
            return true;
        }();
        for (cplx z : pts) {
            const auto M = c.model.evaluate(z);
            const auto W = char_function_colligation(col, M);
            const double res = cayley_check(col, W, v_function(col, M));
            cayley = std::max(cayley, res);
            ++matched;
            margin = std::min(margin, j_contractivity_margin(col.J, W));
            if (definite) {
                const auto Wd = char_function_direct(c.B, M);
                double d = max_abs_diff(col.K.adjoint() * Wd, W * col.K.adjoint()) / (1 + W.norm());
                if (c.B.rows() == 1) d = std::max(d, max_abs_diff(Wd, W));
                same = std::max(same, d);
            }
        }
    }
    t.need(cayley <= 1e-10, "Cayley residual " + sci(cayley));
    t.need(margin >= -1e-8, "J-contractivity margin " + sci(margin));
    t.need(same <= 1e-10, "direct vs colligation form " + sci(same));

    // sector: B = |C_beta| h against Theta = (z^beta + h)/(z^beta + conj h)
    const double beta = 0.75, cmod = -WeylModel::sector(beta).evaluate(-1.0)(0, 0).real();
    const cplx h(0.3, 0.8);
    const auto sec = WeylModel::sector(beta);
    double sector_gap = 0;
    for (cplx z : upper(1111, 20, 0.3, 5, 5)) {
        const auto W = char_function_direct(ComplexMatrix::scalar(cmod * h), sec.evaluate(z));
        sector_gap = std::max(sector_gap, std::abs(std::abs(W(0, 0)) - std::abs(theta_sector(z, beta, h))));
    }
    t.need(sector_gap <= 1e-9, "sector ||W| - |Theta|| " + sci(sector_gap));
    return t.done(std::to_string(matched) + " matched points: Cayley " + sci(cayley) + ", J-margin " + sci(margin) +
                  ", direct vs colligation " + sci(same) + ", sector |W|-|Theta| " + sci(sector_gap));
}

Outcome rank_law() {
    Tally t;
    const auto hl = WeylModel::half_line(PotentialSpec::zero());
    const auto well = WeylModel::half_line(PotentialSpec::square_well(-1, 1));
    const auto fi = WeylModel::finite_interval(PotentialSpec::zero(), pi);
    const auto op = WeylModel::operator_potential_halfline({2, 3});
    struct Case {
        ExtensionSpec a, b;
        int rank;
        cplx z, zeta;
    };
    const std::vector<Case> cases = {
        {{hl, ComplexMatrix::scalar(-1.0)}, {hl, ComplexMatrix::scalar(-1.0)}, 0, cplx(0.3, 1), cplx(0.2, 0.7)},
        {{hl, ComplexMatrix::scalar(-1.0)}, {hl, ComplexMatrix::scalar(1.0)}, 1, cplx(0.3, 1), cplx(0.2, 0.7)},
        {{well, ComplexMatrix::scalar(0.5)}, {well, ComplexMatrix::scalar(-2.0)}, 1, cplx(-1, 0.5), cplx(1, 2)},
        {{fi, ComplexMatrix{{1, 0}, {0, 0}}}, {fi, ComplexMatrix::zeros(2, 2)}, 1, cplx(0.3, 1), cplx(0.2, 0.7)},
        {{fi, ComplexMatrix{{1, 0}, {0, 2}}}, {fi, ComplexMatrix{{-1, 0}, {0, 0.5}}}, 2, cplx(2, 0.5), cplx(0, 1)},
        {{fi, ComplexMatrix{{0.5, 0}, {0, 0.5}}}, {fi, ComplexMatrix{{0.5, 0}, {0, 0.5}}}, 0, cplx(5, 1), cplx(1, 1)},
        {{op, ComplexMatrix{{-1, 0}, {0, -1}}}, {op, ComplexMatrix{{-1, 0}, {0, 1}}}, 1, cplx(0.5, 1), cplx(0, 1)},
        {{op, ComplexMatrix{{-1, 0.3}, {0.3, -1}}}, {op, ComplexMatrix{{0.5, 0}, {0, 1}}}, 2, cplx(-3, 0.4), cplx(0, 2)},
        {{op, ComplexMatrix{{-1, 0.3}, {0.3, -1}}}, {op, ComplexMatrix{{-1, 0.3}, {0.3, -1}}}, 0, cplx(1, 1), cplx(0, 1)},
        {{op, ComplexMatrix{{1, 1}, {1, 1}}}, {op, ComplexMatrix::zeros(2, 2)}, 1, cplx(0.2, 3), cplx(0.5, 0.5)},
    };
    std::string ranks;
    for (size_t k = 0; k < cases.size(); ++k) {
        const auto& c = cases[k];
        const auto r = resolvent_rank_law(c.a, c.b, c.z, c.zeta);
        const int ro = r.rank_oracle ? *r.rank_oracle : -1;
        ranks += (ranks.empty() ? "" : " ") + std::to_string(r.rank_weyl) + std::to_string(r.rank_boundary) +
                 std::to_string(r.rank_difference) + (ro < 0 ? std::string("-") : std::to_string(ro));
        const bool ok = r.rank_weyl == c.rank && r.rank_boundary == c.rank && r.rank_difference == c.rank && ro == c.rank;
        t.need(ok, "case " + std::to_string(k) + " expected rank " + std::to_string(c.rank));
    }
    return t.done("10 scenarios, ranks (weyl boundary difference oracle): " + ranks);
}

Outcome corner_sector() {
    Tally t;
    const auto c0 = m_at_zero(WeylModel::corner(0.75));
    const double corner_err = std::abs(c0.value(0, 0) + 1.0);
    t.need(corner_err <= 1e-4, "corner M(0) off by " + sci(corner_err));
    const auto sec = WeylModel::sector(0.75);
    const cplx s0 = m_at_zero(sec).value(0, 0);
    t.need(s0 == cplx(0, 0), "sector M(0) = " + sci(s0.real()));
    double gap = 0, most_negative = 0;
    for (int k = 1; k <= 40; ++k) {
        const double x = -0.25 * k;
        const double m = sec.evaluate(x)(0, 0).real();
        gap = std::max(gap, std::abs(m - std::pow(std::abs(x), 0.75)));
        most_negative = std::min(most_negative, m);
    }
    t.need(gap <= 1e-10 && most_negative >= 0,
           "sector M(x) vs |x|^beta gap " + sci(gap) + ", min M(x) " + sci(most_negative));
    return t.done("corner M(0) error " + sci(corner_err) + " (" + to_string(c0.method) + "), sector M(0) " +
                  sci(s0.real()) + ", sector M(x) - |x|^beta up to " + sci(gap));
}

Outcome oracle_consistency() {
    Tally t;
    auto err = [](int n) {
        const auto op = oracle::discretize(PotentialSpec::zero(), pi, n, oracle::Boundary::dirichlet(),
                                           oracle::Boundary::dirichlet());
        return std::abs(oracle::lowest_eigenvalues(op, 1)[0] - 1.0);
    };
    const double ratio = err(1000) / err(2000);
    t.need(ratio >= 3.5 && ratio <= 4.5, "convergence factor " + sci(ratio));

    // discrete Dirichlet Laplacian: (4/dx^2) sin^2(k pi / (2(n-1))), k = 1..n-2
    int checked = 0;
    for (int n : {101, 400, 1000}) {
        const auto op = oracle::discretize(PotentialSpec::zero(), pi, n, oracle::Boundary::dirichlet(),
                                           oracle::Boundary::dirichlet());
        const double dx = pi / (n - 1);
        auto lam = [&](int k) { return 4 / (dx * dx) * std::pow(std::sin(k * pi / (2.0 * (n - 1))), 2); };
        for (int k = 0; k <= n - 2; k += std::max(1, (n - 2) / 37)) {
            const double mu = k == 0 ? lam(1) / 2 : k == n - 2 ? lam(k) + 1 : 0.5 * (lam(k) + lam(k + 1));
            const long got = oracle::eigen_count_below(op, mu);
            ++checked;
            t.need(got == k, "n = " + std::to_string(n) + " count below " + sci(mu) + ": " + std::to_string(got) +
                                 " vs " + std::to_string(k));
        }
    }
    return t.done("convergence factor " + sci(ratio) + ", " + std::to_string(checked) + " Sturm counts");
}

struct Criterion {
    const char* name;
    Outcome (*fn)();
};

const Criterion criteria[] = {
    {"herglotz", herglotz},
    {"kernel", kernel},
    {"m_h_relation", m_h_relation},
    {"m_inf_closed_form", m_inf_closed_form},
    {"finite_interval", finite_interval},
    {"eigen_correspondence", eigen_correspondence},
    {"negative_count", negative_count_eq},
    {"krein", krein},
    {"transform_invariance", transform_invariance},
    {"charfun", charfun},
    {"rank_law", rank_law},
    {"corner_sector", corner_sector},
    {"oracle", oracle_consistency},
};
constexpr int count = sizeof criteria / sizeof criteria[0];

}  // namespace

int main(int argc, char** argv) {
    int first = 1, last = count;
    if (argc > 1) {
        const int k = std::atoi(argv[1]);
        if (k < 1 || k > count) {
            std::fprintf(stderr, "usage: acceptance [1..%d]\n", count);
            return 2;
        }
        first = last = k;
    }
    int failed = 0;
    for (int k = first; k <= last; ++k) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k - 1].fn();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", k, criteria[k - 1].name, o.detail.c_str(), s);
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
